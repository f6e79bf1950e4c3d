#pragma once

#include <array>
#include <cmath>
#include <optional>
#include <stdexcept>

namespace calib {

struct Vec3 {
    double x = 0.0, y = 0.0, z = 0.0;

    Vec3() = default;
    Vec3(double x_, double y_, double z_) : x(x_), y(y_), z(z_) {}

    Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
    Vec3 operator/(double s) const { return {x / s, y / s, z / s}; }
    Vec3 operator-() const { return {-x, -y, -z}; }
    Vec3& operator+=(const Vec3& o) { x += o.x; y += o.y; z += o.z; return *this; }

    double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
    Vec3 cross(const Vec3& o) const {
        return {y * o.z - z * o.y, z * o.x - x * o.z, x * o.y - y * o.x};
    }
    double norm() const { return std::sqrt(dot(*this)); }
    Vec3 normalized() const {
        double n = norm();
        if (n == 0.0) throw std::domain_error("cannot normalize zero vector");
        return *this / n;
    }
    bool finite() const {
        return std::isfinite(x) && std::isfinite(y) && std::isfinite(z);
    }
};

inline Vec3 operator*(double s, const Vec3& v) { return v * s; }

// Row-major 3x3.
struct Mat3 {
    std::array<double, 9> m{0, 0, 0, 0, 0, 0, 0, 0, 0};

    Mat3() = default;
    Mat3(double a, double b, double c, double d, double e, double f, double g,
         double h, double i)
        : m{a, b, c, d, e, f, g, h, i} {}

    static Mat3 identity() { return {1, 0, 0, 0, 1, 0, 0, 0, 1}; }
    static Mat3 from_rows(const Vec3& r0, const Vec3& r1, const Vec3& r2) {
        return {r0.x, r0.y, r0.z, r1.x, r1.y, r1.z, r2.x, r2.y, r2.z};
    }
    static Mat3 diag(double a, double b, double c) {
        return {a, 0, 0, 0, b, 0, 0, 0, c};
    }

    double operator()(int r, int c) const { return m[3 * r + c]; }
    double& operator()(int r, int c) { return m[3 * r + c]; }

    Vec3 row(int r) const { return {m[3 * r], m[3 * r + 1], m[3 * r + 2]}; }
    Vec3 col(int c) const { return {m[c], m[3 + c], m[6 + c]}; }

    Vec3 operator*(const Vec3& v) const {
        return {m[0] * v.x + m[1] * v.y + m[2] * v.z,
                m[3] * v.x + m[4] * v.y + m[5] * v.z,
                m[6] * v.x + m[7] * v.y + m[8] * v.z};
    }
    Mat3 operator*(const Mat3& o) const;
    Mat3 operator*(double s) const;
    Mat3 operator+(const Mat3& o) const;
    Mat3 transpose() const {
        return {m[0], m[3], m[6], m[1], m[4], m[7], m[2], m[5], m[8]};
    }
    double det() const;
    bool finite() const;
};

double frobenius_norm(const Mat3& m);

// Inverse via adjugate; nullopt when |det| <= 1e-12 * ||m||_F^3.
std::optional<Mat3> invert3(const Mat3& m);

struct Quaternion {
    double w = 1.0, x = 0.0, y = 0.0, z = 0.0;
};

// Intrinsic Z-Y-X (yaw-pitch-roll), radians.
struct EulerZyx {
    double roll = 0.0, pitch = 0.0, yaw = 0.0;
};

// Proper rotation. Any raw matrix fed in is projected to the nearest
// orthonormal matrix with det +1.
class Rotation {
  public:
    Rotation() : mat_(Mat3::identity()) {}

    static Rotation from_matrix(const Mat3& m);           // projects
    static Rotation from_quaternion(const Quaternion& q); // normalizes
    static Rotation from_euler_zyx(const EulerZyx& e);
    static Rotation from_axis_angle(const Vec3& axis, double angle_rad);

    const Mat3& matrix() const { return mat_; }
    Quaternion quaternion() const; // w >= 0 canonical form
    EulerZyx euler_zyx() const;

    Vec3 operator*(const Vec3& v) const { return mat_ * v; }
    Rotation operator*(const Rotation& o) const;
    Rotation inverse() const;

    // Geodesic distance to another rotation, radians.
    double angle_to(const Rotation& o) const;

  private:
    explicit Rotation(const Mat3& orthonormal) : mat_(orthonormal) {}
    Mat3 mat_;
};

// Convention: p_lidar = rotation * p_camera + translation.
struct RigidTransform {
    Rotation rotation;
    Vec3 translation;

    Vec3 apply(const Vec3& p_camera) const {
        return rotation * p_camera + translation;
    }
    Vec3 apply_inverse(const Vec3& p_lidar) const {
        return rotation.inverse() * (p_lidar - translation);
    }
    RigidTransform inverse() const {
        Rotation rinv = rotation.inverse();
        return {rinv, -(rinv * translation)};
    }
    // this ∘ other: apply `other` first.
    RigidTransform compose(const RigidTransform& other) const {
        return {rotation * other.rotation,
                rotation * other.translation + translation};
    }
};

struct CameraIntrinsics {
    double fx = 0.0, fy = 0.0; // pixels
    double cx = 0.0, cy = 0.0; // pixels
    // radial k1,k2,k3; tangential p1,p2
    std::array<double, 5> distortion{0, 0, 0, 0, 0};

    void validate() const {
        if (!(fx > 0.0) || !(fy > 0.0))
            throw std::invalid_argument("intrinsics require fx > 0 and fy > 0");
    }
};

struct Polar {
    double range = 0.0;     // metres
    double azimuth = 0.0;   // rad, atan2(y, x)
    double elevation = 0.0; // rad, asin(z / range)
};

Polar to_polar(const Vec3& p);
Vec3 from_polar(const Polar& p);
Vec3 from_polar(double range, double azimuth, double elevation);

struct Pixel {
    double u = 0.0, v = 0.0;
};

// Normalized camera coordinates -> distorted normalized coordinates.
Pixel distort_normalized(double xn, double yn, const CameraIntrinsics& k);

// Projects a lidar-frame point through the inverse of `t` and the pinhole +
// distortion model. nullopt when the camera-frame depth is <= 0.
std::optional<Pixel> project_to_pixel(const RigidTransform& t,
                                      const CameraIntrinsics& k,
                                      const Vec3& p_lidar);

// Camera-frame point -> pixel (no extrinsic). nullopt when z <= 0.
std::optional<Pixel> project_camera_point(const CameraIntrinsics& k,
                                          const Vec3& p_camera);

constexpr double kPi = 3.14159265358979323846;
inline double deg2rad(double d) { return d * kPi / 180.0; }
inline double rad2deg(double r) { return r * 180.0 / kPi; }

} // namespace calib
