#include "kernels_impl.hpp"

namespace calib::kernels::detail {

namespace {

void range_offset_scalar(const double* xyz, std::size_t n, double offset,
                         double* out, std::uint8_t* keep) {
    for (std::size_t i = 0; i < n; ++i)
        range_offset_one(xyz[3 * i], xyz[3 * i + 1], xyz[3 * i + 2], offset,
                         out + 3 * i, keep + i);
}

std::size_t plane_inlier_count_scalar(const double* xyz, std::size_t n,
                                      const Vec3& normal, double d, double tol) {
    std::size_t count = 0;
    for (std::size_t i = 0; i < n; ++i)
        count += plane_inlier_one(xyz[3 * i], xyz[3 * i + 1], xyz[3 * i + 2],
                                  normal, d, tol);
    return count;
}

void plane_inlier_mask_scalar(const double* xyz, std::size_t n,
                              const Vec3& normal, double d, double tol,
                              std::uint8_t* mask) {
    for (std::size_t i = 0; i < n; ++i)
        mask[i] = plane_inlier_one(xyz[3 * i], xyz[3 * i + 1], xyz[3 * i + 2],
                                   normal, d, tol);
}

void box_mask_scalar(const double* xyz, std::size_t n, const Vec3& lo,
                     const Vec3& hi, std::uint8_t* mask) {
    for (std::size_t i = 0; i < n; ++i)
        mask[i] = box_contains_one(xyz[3 * i], xyz[3 * i + 1], xyz[3 * i + 2],
                                   lo, hi);
}

void project_points_scalar(const double* xyz, std::size_t n, const Mat3& rot_lc,
                           const Vec3& t_lc, const CameraIntrinsics& k,
                           double* uv, double* depth, std::uint8_t* valid) {
    for (std::size_t i = 0; i < n; ++i)
        project_one(xyz[3 * i], xyz[3 * i + 1], xyz[3 * i + 2], rot_lc, t_lc, k,
                    uv + 2 * i, depth + i, valid + i);
}

} // namespace

const KernelTable& scalar_table() {
    static const KernelTable table{range_offset_scalar, plane_inlier_count_scalar,
                                   plane_inlier_mask_scalar, box_mask_scalar,
                                   project_points_scalar};
    return table;
}

} // namespace calib::kernels::detail
