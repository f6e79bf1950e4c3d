#pragma once

#include <cstddef>
#include <cstdint>

#include "calib/geometry.hpp"

namespace calib::kernels {

// Data-parallel inner loops over interleaved xyz point buffers. Each function
// has a scalar reference implementation and an AVX2 variant; the active one
// is chosen at runtime from cpu features. Both paths perform the same
// per-element arithmetic (no fma, same operation order), so their outputs are
// bit-identical and the equivalence tests assert exact equality.

enum class Isa { scalar, avx2 };

Isa detect_best_isa() noexcept;
Isa active_isa() noexcept;
void set_active_isa(Isa isa); // throws if the isa is unavailable on this cpu
const char* isa_name(Isa isa) noexcept;

// Shift every point's polar range by `offset`, keeping its direction.
// keep[i] = 0 for zero-length points and points whose shifted range is <= 0;
// out_xyz for dropped points is zero-filled.
void range_offset(const double* xyz, std::size_t n, double offset,
                  double* out_xyz, std::uint8_t* keep);

// |normal . p + d| <= tol
std::size_t plane_inlier_count(const double* xyz, std::size_t n,
                               const Vec3& normal, double d, double tol);
void plane_inlier_mask(const double* xyz, std::size_t n, const Vec3& normal,
                       double d, double tol, std::uint8_t* mask);

// Axis-aligned box containment, inclusive bounds.
void box_mask(const double* xyz, std::size_t n, const Vec3& lo, const Vec3& hi,
              std::uint8_t* mask);

// Rigid lidar->camera transform (rot_lc row-major, t_lc) followed by the
// pinhole + radial-tangential model. uv has 2n entries, depth n entries;
// valid[i] = 0 when the camera-frame depth is <= 0 (uv/depth zero-filled).
void project_points(const double* xyz, std::size_t n, const Mat3& rot_lc,
                    const Vec3& t_lc, const CameraIntrinsics& k, double* uv,
                    double* depth, std::uint8_t* valid);

} // namespace calib::kernels
