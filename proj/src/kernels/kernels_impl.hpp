#pragma once

// Per-point cores shared by the scalar kernels and the vector kernels' tail
// loops. Any arithmetic change here must be mirrored in kernels_avx2.cpp to
// keep the two paths bit-identical.

#include <cmath>
#include <cstddef>
#include <cstdint>

#include "calib/geometry.hpp"
#include "calib/kernels.hpp"

namespace calib::kernels::detail {

struct KernelTable {
    void (*range_offset)(const double*, std::size_t, double, double*, std::uint8_t*);
    std::size_t (*plane_inlier_count)(const double*, std::size_t, const Vec3&, double, double);
    void (*plane_inlier_mask)(const double*, std::size_t, const Vec3&, double, double, std::uint8_t*);
    void (*box_mask)(const double*, std::size_t, const Vec3&, const Vec3&, std::uint8_t*);
    void (*project_points)(const double*, std::size_t, const Mat3&, const Vec3&,
                           const CameraIntrinsics&, double*, double*, std::uint8_t*);
};

const KernelTable& scalar_table();
#if defined(CALIB_HAVE_AVX2)
const KernelTable& avx2_table();
#endif

inline void range_offset_one(double x, double y, double z, double offset,
                             double* out, std::uint8_t* keep) {
    double r = std::sqrt(x * x + y * y + z * z);
    double shifted = r + offset;
    if (r > 0.0 && shifted > 0.0) {
        double s = shifted / r;
        out[0] = x * s;
        out[1] = y * s;
        out[2] = z * s;
        *keep = 1;
    } else {
        out[0] = out[1] = out[2] = 0.0;
        *keep = 0;
    }
}

inline bool plane_inlier_one(double x, double y, double z, const Vec3& n,
                             double d, double tol) {
    double dist = n.x * x + n.y * y + n.z * z + d;
    return std::abs(dist) <= tol;
}

inline bool box_contains_one(double x, double y, double z, const Vec3& lo,
                             const Vec3& hi) {
    return x >= lo.x && x <= hi.x && y >= lo.y && y <= hi.y && z >= lo.z &&
           z <= hi.z;
}

inline void project_one(double x, double y, double z, const Mat3& rot_lc,
                        const Vec3& t_lc, const CameraIntrinsics& k,
                        double* uv, double* depth, std::uint8_t* valid) {
    const auto& m = rot_lc.m;
    double cx = m[0] * x + m[1] * y + m[2] * z + t_lc.x;
    double cy = m[3] * x + m[4] * y + m[5] * z + t_lc.y;
    double cz = m[6] * x + m[7] * y + m[8] * z + t_lc.z;
    if (!(cz > 0.0)) {
        uv[0] = uv[1] = 0.0;
        *depth = 0.0;
        *valid = 0;
        return;
    }
    double xn = cx / cz, yn = cy / cz;
    double k1 = k.distortion[0], k2 = k.distortion[1], k3 = k.distortion[2];
    double p1 = k.distortion[3], p2 = k.distortion[4];
    double r2 = xn * xn + yn * yn;
    double radial = 1.0 + r2 * (k1 + r2 * (k2 + r2 * k3));
    double xd = xn * radial + 2.0 * p1 * xn * yn + p2 * (r2 + 2.0 * xn * xn);
    double yd = yn * radial + p1 * (r2 + 2.0 * yn * yn) + 2.0 * p2 * xn * yn;
    uv[0] = k.fx * xd + k.cx;
    uv[1] = k.fy * yd + k.cy;
    *depth = cz;
    *valid = 1;
}

} // namespace calib::kernels::detail
