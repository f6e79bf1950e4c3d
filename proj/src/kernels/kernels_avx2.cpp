#include <immintrin.h>

#include "kernels_impl.hpp"

// AVX2 variants, 4 points per iteration. Arithmetic mirrors the scalar cores
// op-for-op (no fma) so outputs are bit-identical; tails fall through to the
// shared per-point cores.

namespace calib::kernels::detail {

namespace {

struct Soa4 {
    __m256d x, y, z;
};

// 12 interleaved doubles -> SoA lanes for 4 points.
inline Soa4 load4(const double* p) {
    __m128d l0 = _mm_loadu_pd(p + 0);  // x0 y0
    __m128d l1 = _mm_loadu_pd(p + 2);  // z0 x1
    __m128d l2 = _mm_loadu_pd(p + 4);  // y1 z1
    __m128d l3 = _mm_loadu_pd(p + 6);  // x2 y2
    __m128d l4 = _mm_loadu_pd(p + 8);  // z2 x3
    __m128d l5 = _mm_loadu_pd(p + 10); // y3 z3
    __m256d a = _mm256_set_m128d(l3, l0); // x0 y0 x2 y2
    __m256d b = _mm256_set_m128d(l4, l1); // z0 x1 z2 x3
    __m256d c = _mm256_set_m128d(l5, l2); // y1 z1 y3 z3
    Soa4 s;
    s.x = _mm256_shuffle_pd(a, b, 0b1010);
    s.y = _mm256_shuffle_pd(a, c, 0b0101);
    s.z = _mm256_shuffle_pd(b, c, 0b1010);
    return s;
}

inline void store4(double* p, __m256d x, __m256d y, __m256d z) {
    __m256d a = _mm256_shuffle_pd(x, y, 0b0000);
    __m256d b = _mm256_shuffle_pd(z, x, 0b1010);
    __m256d c = _mm256_shuffle_pd(y, z, 0b1111);
    _mm_storeu_pd(p + 0, _mm256_castpd256_pd128(a));
    _mm_storeu_pd(p + 2, _mm256_castpd256_pd128(b));
    _mm_storeu_pd(p + 4, _mm256_castpd256_pd128(c));
    _mm_storeu_pd(p + 6, _mm256_extractf128_pd(a, 1));
    _mm_storeu_pd(p + 8, _mm256_extractf128_pd(b, 1));
    _mm_storeu_pd(p + 10, _mm256_extractf128_pd(c, 1));
}

inline void store_mask_bits(int bits, std::uint8_t* mask) {
    mask[0] = bits & 1;
    mask[1] = (bits >> 1) & 1;
    mask[2] = (bits >> 2) & 1;
    mask[3] = (bits >> 3) & 1;
}

inline __m256d abs_pd(__m256d v) {
    return _mm256_andnot_pd(_mm256_set1_pd(-0.0), v);
}

void range_offset_avx2(const double* xyz, std::size_t n, double offset,
                       double* out, std::uint8_t* keep) {
    const __m256d voff = _mm256_set1_pd(offset);
    const __m256d zero = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        Soa4 s = load4(xyz + 3 * i);
        __m256d r2 = _mm256_add_pd(
            _mm256_add_pd(_mm256_mul_pd(s.x, s.x), _mm256_mul_pd(s.y, s.y)),
            _mm256_mul_pd(s.z, s.z));
        __m256d r = _mm256_sqrt_pd(r2);
        __m256d shifted = _mm256_add_pd(r, voff);
        __m256d ok = _mm256_and_pd(_mm256_cmp_pd(r, zero, _CMP_GT_OQ),
                                   _mm256_cmp_pd(shifted, zero, _CMP_GT_OQ));
        __m256d scale = _mm256_div_pd(shifted, r);
        __m256d ox = _mm256_and_pd(ok, _mm256_mul_pd(s.x, scale));
        __m256d oy = _mm256_and_pd(ok, _mm256_mul_pd(s.y, scale));
        __m256d oz = _mm256_and_pd(ok, _mm256_mul_pd(s.z, scale));
        store4(out + 3 * i, ox, oy, oz);
        store_mask_bits(_mm256_movemask_pd(ok), keep + i);
    }
    for (; i < n; ++i)
        range_offset_one(xyz[3 * i], xyz[3 * i + 1], xyz[3 * i + 2], offset,
                         out + 3 * i, keep + i);
}

// r2 computed as x*x + y*y + z*z with the same association as the scalar core.
inline __m256d plane_dist_abs(const Soa4& s, const Vec3& nrm, double d) {
    __m256d dist = _mm256_add_pd(
        _mm256_add_pd(
            _mm256_add_pd(_mm256_mul_pd(_mm256_set1_pd(nrm.x), s.x),
                          _mm256_mul_pd(_mm256_set1_pd(nrm.y), s.y)),
            _mm256_mul_pd(_mm256_set1_pd(nrm.z), s.z)),
        _mm256_set1_pd(d));
    return abs_pd(dist);
}

std::size_t plane_inlier_count_avx2(const double* xyz, std::size_t n,
                                    const Vec3& normal, double d, double tol) {
    const __m256d vtol = _mm256_set1_pd(tol);
    std::size_t count = 0;
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        Soa4 s = load4(xyz + 3 * i);
        __m256d ok = _mm256_cmp_pd(plane_dist_abs(s, normal, d), vtol, _CMP_LE_OQ);
        count += __builtin_popcount(_mm256_movemask_pd(ok));
    }
    for (; i < n; ++i)
        count += plane_inlier_one(xyz[3 * i], xyz[3 * i + 1], xyz[3 * i + 2],
                                  normal, d, tol);
    return count;
}

void plane_inlier_mask_avx2(const double* xyz, std::size_t n,
                            const Vec3& normal, double d, double tol,
                            std::uint8_t* mask) {
    const __m256d vtol = _mm256_set1_pd(tol);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        Soa4 s = load4(xyz + 3 * i);
        __m256d ok = _mm256_cmp_pd(plane_dist_abs(s, normal, d), vtol, _CMP_LE_OQ);
        store_mask_bits(_mm256_movemask_pd(ok), mask + i);
    }
    for (; i < n; ++i)
        mask[i] = plane_inlier_one(xyz[3 * i], xyz[3 * i + 1], xyz[3 * i + 2],
                                   normal, d, tol);
}

void box_mask_avx2(const double* xyz, std::size_t n, const Vec3& lo,
                   const Vec3& hi, std::uint8_t* mask) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        Soa4 s = load4(xyz + 3 * i);
        __m256d ok = _mm256_and_pd(
            _mm256_cmp_pd(s.x, _mm256_set1_pd(lo.x), _CMP_GE_OQ),
            _mm256_cmp_pd(s.x, _mm256_set1_pd(hi.x), _CMP_LE_OQ));
        ok = _mm256_and_pd(ok, _mm256_cmp_pd(s.y, _mm256_set1_pd(lo.y), _CMP_GE_OQ));
        ok = _mm256_and_pd(ok, _mm256_cmp_pd(s.y, _mm256_set1_pd(hi.y), _CMP_LE_OQ));
        ok = _mm256_and_pd(ok, _mm256_cmp_pd(s.z, _mm256_set1_pd(lo.z), _CMP_GE_OQ));
        ok = _mm256_and_pd(ok, _mm256_cmp_pd(s.z, _mm256_set1_pd(hi.z), _CMP_LE_OQ));
        store_mask_bits(_mm256_movemask_pd(ok), mask + i);
    }
    for (; i < n; ++i)
        mask[i] = box_contains_one(xyz[3 * i], xyz[3 * i + 1], xyz[3 * i + 2],
                                   lo, hi);
}

void project_points_avx2(const double* xyz, std::size_t n, const Mat3& rot_lc,
                         const Vec3& t_lc, const CameraIntrinsics& k,
                         double* uv, double* depth, std::uint8_t* valid) {
    const __m256d m00 = _mm256_set1_pd(rot_lc.m[0]), m01 = _mm256_set1_pd(rot_lc.m[1]),
                  m02 = _mm256_set1_pd(rot_lc.m[2]), m10 = _mm256_set1_pd(rot_lc.m[3]),
                  m11 = _mm256_set1_pd(rot_lc.m[4]), m12 = _mm256_set1_pd(rot_lc.m[5]),
                  m20 = _mm256_set1_pd(rot_lc.m[6]), m21 = _mm256_set1_pd(rot_lc.m[7]),
                  m22 = _mm256_set1_pd(rot_lc.m[8]);
    const __m256d tx = _mm256_set1_pd(t_lc.x), ty = _mm256_set1_pd(t_lc.y),
                  tz = _mm256_set1_pd(t_lc.z);
    const __m256d k1 = _mm256_set1_pd(k.distortion[0]),
                  k2 = _mm256_set1_pd(k.distortion[1]),
                  k3 = _mm256_set1_pd(k.distortion[2]),
                  p1 = _mm256_set1_pd(k.distortion[3]),
                  p2 = _mm256_set1_pd(k.distortion[4]);
    const __m256d fx = _mm256_set1_pd(k.fx), fy = _mm256_set1_pd(k.fy),
                  cxp = _mm256_set1_pd(k.cx), cyp = _mm256_set1_pd(k.cy);
    const __m256d one = _mm256_set1_pd(1.0), two = _mm256_set1_pd(2.0),
                  zero = _mm256_setzero_pd();

    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        Soa4 s = load4(xyz + 3 * i);
        // cx = m00*x + m01*y + m02*z + tx, matching project_one's order
        __m256d cx = _mm256_add_pd(
            _mm256_add_pd(_mm256_add_pd(_mm256_mul_pd(m00, s.x), _mm256_mul_pd(m01, s.y)),
                          _mm256_mul_pd(m02, s.z)),
            tx);
        __m256d cy = _mm256_add_pd(
            _mm256_add_pd(_mm256_add_pd(_mm256_mul_pd(m10, s.x), _mm256_mul_pd(m11, s.y)),
                          _mm256_mul_pd(m12, s.z)),
            ty);
        __m256d cz = _mm256_add_pd(
            _mm256_add_pd(_mm256_add_pd(_mm256_mul_pd(m20, s.x), _mm256_mul_pd(m21, s.y)),
                          _mm256_mul_pd(m22, s.z)),
            tz);
        __m256d ok = _mm256_cmp_pd(cz, zero, _CMP_GT_OQ);

        __m256d xn = _mm256_div_pd(cx, cz);
        __m256d yn = _mm256_div_pd(cy, cz);
        __m256d r2 = _mm256_add_pd(_mm256_mul_pd(xn, xn), _mm256_mul_pd(yn, yn));
        // radial = 1 + r2*(k1 + r2*(k2 + r2*k3))
        __m256d radial = _mm256_add_pd(
            one, _mm256_mul_pd(r2, _mm256_add_pd(k1, _mm256_mul_pd(r2, _mm256_add_pd(k2, _mm256_mul_pd(r2, k3))))));
        __m256d xy = _mm256_mul_pd(xn, yn);
        // xd = xn*radial + 2*p1*xn*yn + p2*(r2 + 2*xn*xn)
        __m256d xd = _mm256_add_pd(
            _mm256_add_pd(_mm256_mul_pd(xn, radial),
                          _mm256_mul_pd(_mm256_mul_pd(two, p1), xy)),
            _mm256_mul_pd(p2, _mm256_add_pd(r2, _mm256_mul_pd(two, _mm256_mul_pd(xn, xn)))));
        __m256d yd = _mm256_add_pd(
            _mm256_add_pd(_mm256_mul_pd(yn, radial),
                          _mm256_mul_pd(p1, _mm256_add_pd(r2, _mm256_mul_pd(two, _mm256_mul_pd(yn, yn))))),
            _mm256_mul_pd(_mm256_mul_pd(two, p2), xy));
        __m256d u = _mm256_add_pd(_mm256_mul_pd(fx, xd), cxp);
        __m256d v = _mm256_add_pd(_mm256_mul_pd(fy, yd), cyp);

        u = _mm256_and_pd(ok, u);
        v = _mm256_and_pd(ok, v);
        __m256d dep = _mm256_and_pd(ok, cz);

        __m256d uv01 = _mm256_unpacklo_pd(u, v); // u0 v0 u2 v2
        __m256d uv23 = _mm256_unpackhi_pd(u, v); // u1 v1 u3 v3
        _mm_storeu_pd(uv + 2 * i + 0, _mm256_castpd256_pd128(uv01));
        _mm_storeu_pd(uv + 2 * i + 2, _mm256_castpd256_pd128(uv23));
        _mm_storeu_pd(uv + 2 * i + 4, _mm256_extractf128_pd(uv01, 1));
        _mm_storeu_pd(uv + 2 * i + 6, _mm256_extractf128_pd(uv23, 1));
        _mm256_storeu_pd(depth + i, dep);
        store_mask_bits(_mm256_movemask_pd(ok), valid + i);
    }
    for (; i < n; ++i)
        project_one(xyz[3 * i], xyz[3 * i + 1], xyz[3 * i + 2], rot_lc, t_lc, k,
                    uv + 2 * i, depth + i, valid + i);
}

} // namespace

const KernelTable& avx2_table() {
    static const KernelTable table{range_offset_avx2, plane_inlier_count_avx2,
                                   plane_inlier_mask_avx2, box_mask_avx2,
                                   project_points_avx2};
    return table;
}

} // namespace calib::kernels::detail
