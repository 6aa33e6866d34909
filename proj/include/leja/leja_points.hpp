#pragma once

#include "leja/common.hpp"

#include <iosfwd>
#include <span>
#include <vector>

namespace leja {

/// Ordered Leja points on the reference interval [-2,2] (real kind) or
/// i[-2,2] (conjugate kind). Immutable once generated.
struct LejaSequence {
  PointKind kind = PointKind::real;
  std::vector<cplx> reference_points;
  double reference_halfwidth = 2.0;

  std::size_t size() const noexcept { return reference_points.size(); }
  std::span<const cplx> first(std::size_t n) const;
};

/// Default candidate mesh: 10^7 points on the reference interval.
inline constexpr std::size_t kDefaultMeshSize = 10'000'000;
/// Smallest accepted mesh (spacing below 1e-5 on [-2,2]).
inline constexpr std::size_t kMinMeshSize = 400'001;

/// Greedy real Leja points on [-2,2], starting -2, 2, 0. Each new point is the
/// argmax of the running product over a uniform mesh, then refined inside the
/// neighbouring mesh cells by bisection on the logarithmic derivative of the
/// product. Ties go to the rightmost peak, so the fourth point is +2/sqrt(3).
LejaSequence generate_real_leja(std::size_t count, std::size_t mesh_size = kDefaultMeshSize);

/// Conjugate Leja points on i[-2,2]: 0 first, then pairs (xi, -xi) where xi is
/// the argmax with the largest imaginary part. Odd counts give complete pairs;
/// an even count ends on the first point of a pair.
LejaSequence generate_conjugate_leja(std::size_t count, std::size_t mesh_size = kDefaultMeshSize);

/// Points mapped to [-c,c] (or i[-c,c]); c = 0 collapses everything to zero.
std::vector<cplx> scale(const LejaSequence& seq, double c);
std::vector<cplx> scale(std::span<const cplx> reference_points, double c);

/// Text dump: header `leja <kind> <count>` followed by `re im` lines.
void write_leja(std::ostream& os, const LejaSequence& seq);
/// Reads the block written by write_leja.
LejaSequence read_leja(std::istream& is);

} // namespace leja
