#pragma once

#include "leja/common.hpp"
#include "leja/leja_points.hpp"
#include "leja/table_types.hpp"

#include <map>
#include <span>
#include <vector>

namespace leja {

/// Newton coefficients of exp at a scaled Leja sequence.
struct DividedDiffTable {
  PointKind kind = PointKind::real;
  double interval_halfwidth = 0.0;
  std::vector<cplx> points;
  std::vector<cplx> coefficients;
};

/// Number of coefficients stored per interval (degree up to kMaxDegree).
inline constexpr std::size_t kStoredCoefficients = kMaxDegree + 1;

/// exp[z_0..z_j] for j = 0..n-1 as the first column of exp(Z), Z lower
/// bidiagonal with the points on the diagonal and ones below it. exp(Z) is
/// formed by a Taylor series of the scaled matrix and repeated squaring.
/// Kind and half-width are inferred from the points.
DividedDiffTable dd_exp(std::span<const cplx> points);

/// Newton form evaluated at a scalar using the first `terms` coefficients.
cplx newton_eval(const DividedDiffTable& table, cplx z, std::size_t terms);

/// One table per stored interval theta_m (key m) plus the Taylor limit c = 0
/// (key 0). Each holds kStoredCoefficients coefficients.
std::map<int, DividedDiffTable> precompute_all(const ThetaTable& theta, const LejaSequence& seq);

} // namespace leja
