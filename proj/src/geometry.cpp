#include "calib/geometry.hpp"

#include <Eigen/Dense>

namespace calib {

namespace {

Eigen::Matrix3d to_eigen(const Mat3& m) {
    Eigen::Matrix3d e;
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) e(r, c) = m(r, c);
    return e;
}

Mat3 from_eigen(const Eigen::Matrix3d& e) {
    Mat3 m;
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) m(r, c) = e(r, c);
    return m;
}

} // namespace

Mat3 Mat3::operator*(const Mat3& o) const {
    Mat3 r;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            double s = 0.0;
            for (int k = 0; k < 3; ++k) s += (*this)(i, k) * o(k, j);
            r(i, j) = s;
        }
    return r;
}

Mat3 Mat3::operator*(double s) const {
    Mat3 r;
    for (int i = 0; i < 9; ++i) r.m[i] = m[i] * s;
    return r;
}

Mat3 Mat3::operator+(const Mat3& o) const {
    Mat3 r;
    for (int i = 0; i < 9; ++i) r.m[i] = m[i] + o.m[i];
    return r;
}

double Mat3::det() const {
    return m[0] * (m[4] * m[8] - m[5] * m[7]) -
           m[1] * (m[3] * m[8] - m[5] * m[6]) +
           m[2] * (m[3] * m[7] - m[4] * m[6]);
}

bool Mat3::finite() const {
    for (double v : m)
        if (!std::isfinite(v)) return false;
    return true;
}

double frobenius_norm(const Mat3& m) {
    double s = 0.0;
    for (double v : m.m) s += v * v;
    return std::sqrt(s);
}

std::optional<Mat3> invert3(const Mat3& m) {
    double d = m.det();
    double nf = frobenius_norm(m);
    if (std::abs(d) <= 1e-12 * nf * nf * nf) return std::nullopt;
    const auto& a = m.m;
    Mat3 inv{a[4] * a[8] - a[5] * a[7], a[2] * a[7] - a[1] * a[8],
             a[1] * a[5] - a[2] * a[4], a[5] * a[6] - a[3] * a[8],
             a[0] * a[8] - a[2] * a[6], a[2] * a[3] - a[0] * a[5],
             a[3] * a[7] - a[4] * a[6], a[1] * a[6] - a[0] * a[7],
             a[0] * a[4] - a[1] * a[3]};
    return inv * (1.0 / d);
}

// Nearest rotation in the Frobenius sense, with det sign correction.
Rotation Rotation::from_matrix(const Mat3& m) {
    if (!m.finite()) throw std::invalid_argument("rotation matrix has non-finite entries");
    Eigen::JacobiSVD<Eigen::Matrix3d> svd(to_eigen(m), Eigen::ComputeFullU | Eigen::ComputeFullV);
    Eigen::Matrix3d u = svd.matrixU();
    Eigen::Matrix3d v = svd.matrixV();
    Eigen::Matrix3d r = u * v.transpose();
    if (r.determinant() < 0.0) {
        u.col(2) *= -1.0;
        r = u * v.transpose();
    }
    return Rotation(from_eigen(r));
}

Rotation Rotation::from_quaternion(const Quaternion& q) {
    double n = std::sqrt(q.w * q.w + q.x * q.x + q.y * q.y + q.z * q.z);
    if (n == 0.0) throw std::invalid_argument("zero quaternion");
    double w = q.w / n, x = q.x / n, y = q.y / n, z = q.z / n;
    Mat3 m{1 - 2 * (y * y + z * z), 2 * (x * y - w * z), 2 * (x * z + w * y),
           2 * (x * y + w * z), 1 - 2 * (x * x + z * z), 2 * (y * z - w * x),
           2 * (x * z - w * y), 2 * (y * z + w * x), 1 - 2 * (x * x + y * y)};
    return Rotation(m);
}

Rotation Rotation::from_euler_zyx(const EulerZyx& e) {
    double ca = std::cos(e.roll), sa = std::sin(e.roll);
    double cb = std::cos(e.pitch), sb = std::sin(e.pitch);
    double cc = std::cos(e.yaw), sc = std::sin(e.yaw);
    // Rz(yaw) * Ry(pitch) * Rx(roll)
    Mat3 m{cb * cc, cc * sa * sb - ca * sc, sa * sc + ca * cc * sb,
           cb * sc, ca * cc + sa * sb * sc, ca * sb * sc - cc * sa,
           -sb, cb * sa, ca * cb};
    return Rotation(m);
}

Rotation Rotation::from_axis_angle(const Vec3& axis, double angle_rad) {
    Vec3 a = axis.normalized();
    double c = std::cos(angle_rad), s = std::sin(angle_rad), t = 1.0 - c;
    Mat3 m{t * a.x * a.x + c, t * a.x * a.y - s * a.z, t * a.x * a.z + s * a.y,
           t * a.x * a.y + s * a.z, t * a.y * a.y + c, t * a.y * a.z - s * a.x,
           t * a.x * a.z - s * a.y, t * a.y * a.z + s * a.x, t * a.z * a.z + c};
    return Rotation(m);
}

Quaternion Rotation::quaternion() const {
    const Mat3& m = mat_;
    Quaternion q;
    double tr = m(0, 0) + m(1, 1) + m(2, 2);
    if (tr > 0.0) {
        double s = std::sqrt(tr + 1.0) * 2.0;
        q.w = 0.25 * s;
        q.x = (m(2, 1) - m(1, 2)) / s;
        q.y = (m(0, 2) - m(2, 0)) / s;
        q.z = (m(1, 0) - m(0, 1)) / s;
    } else if (m(0, 0) > m(1, 1) && m(0, 0) > m(2, 2)) {
        double s = std::sqrt(1.0 + m(0, 0) - m(1, 1) - m(2, 2)) * 2.0;
        q.w = (m(2, 1) - m(1, 2)) / s;
        q.x = 0.25 * s;
        q.y = (m(0, 1) + m(1, 0)) / s;
        q.z = (m(0, 2) + m(2, 0)) / s;
    } else if (m(1, 1) > m(2, 2)) {
        double s = std::sqrt(1.0 + m(1, 1) - m(0, 0) - m(2, 2)) * 2.0;
        q.w = (m(0, 2) - m(2, 0)) / s;
        q.x = (m(0, 1) + m(1, 0)) / s;
        q.y = 0.25 * s;
        q.z = (m(1, 2) + m(2, 1)) / s;
    } else {
        double s = std::sqrt(1.0 + m(2, 2) - m(0, 0) - m(1, 1)) * 2.0;
        q.w = (m(1, 0) - m(0, 1)) / s;
        q.x = (m(0, 2) + m(2, 0)) / s;
        q.y = (m(1, 2) + m(2, 1)) / s;
        q.z = 0.25 * s;
    }
    if (q.w < 0.0) {
        q.w = -q.w; q.x = -q.x; q.y = -q.y; q.z = -q.z;
    }
    return q;
}

EulerZyx Rotation::euler_zyx() const {
    const Mat3& m = mat_;
    EulerZyx e;
    double sb = -m(2, 0);
    sb = std::clamp(sb, -1.0, 1.0);
    e.pitch = std::asin(sb);
    if (std::abs(sb) < 1.0 - 1e-12) {
        e.roll = std::atan2(m(2, 1), m(2, 2));
        e.yaw = std::atan2(m(1, 0), m(0, 0));
    } else {
        // Gimbal lock: yaw set to 0, roll carries the remaining angle.
        e.yaw = 0.0;
        e.roll = std::atan2(-m(0, 1), m(1, 1));
    }
    return e;
}

Rotation Rotation::operator*(const Rotation& o) const {
    return Rotation::from_matrix(mat_ * o.mat_);
}

Rotation Rotation::inverse() const { return Rotation(mat_.transpose()); }

double Rotation::angle_to(const Rotation& o) const {
    Mat3 rel = mat_.transpose() * o.mat_;
    double c = (rel(0, 0) + rel(1, 1) + rel(2, 2) - 1.0) * 0.5;
    return std::acos(std::clamp(c, -1.0, 1.0));
}

Polar to_polar(const Vec3& p) {
    double r = p.norm();
    if (r == 0.0) throw std::domain_error("degenerate point");
    Polar out;
    out.range = r;
    out.azimuth = (p.x == 0.0 && p.y == 0.0) ? 0.0 : std::atan2(p.y, p.x);
    out.elevation = std::asin(std::clamp(p.z / r, -1.0, 1.0));
    return out;
}

Vec3 from_polar(const Polar& p) {
    return from_polar(p.range, p.azimuth, p.elevation);
}

Vec3 from_polar(double range, double azimuth, double elevation) {
    if (!(range > 0.0)) throw std::domain_error("range must be positive");
    double ce = std::cos(elevation);
    return {range * ce * std::cos(azimuth), range * ce * std::sin(azimuth),
            range * std::sin(elevation)};
}

Pixel distort_normalized(double xn, double yn, const CameraIntrinsics& k) {
    double k1 = k.distortion[0], k2 = k.distortion[1], k3 = k.distortion[2];
    double p1 = k.distortion[3], p2 = k.distortion[4];
    double r2 = xn * xn + yn * yn;
    double radial = 1.0 + r2 * (k1 + r2 * (k2 + r2 * k3));
    double xd = xn * radial + 2.0 * p1 * xn * yn + p2 * (r2 + 2.0 * xn * xn);
    double yd = yn * radial + p1 * (r2 + 2.0 * yn * yn) + 2.0 * p2 * xn * yn;
    return {xd, yd};
}

std::optional<Pixel> project_camera_point(const CameraIntrinsics& k,
                                          const Vec3& p_camera) {
    if (!(p_camera.z > 0.0)) return std::nullopt;
    Pixel d = distort_normalized(p_camera.x / p_camera.z, p_camera.y / p_camera.z, k);
    return Pixel{k.fx * d.u + k.cx, k.fy * d.v + k.cy};
}

std::optional<Pixel> project_to_pixel(const RigidTransform& t,
                                      const CameraIntrinsics& k,
                                      const Vec3& p_lidar) {
    return project_camera_point(k, t.apply_inverse(p_lidar));
}

} // namespace calib
