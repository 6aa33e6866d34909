#pragma once

#include "leja/common.hpp"

#include <map>
#include <optional>
#include <vector>

namespace leja {

/// theta_m per degree for one (tolerance, point kind). Real tables hold
/// m = 2..120; conjugate tables hold even m only.
struct ThetaTable {
  Tolerance tol;
  PointKind kind = PointKind::real;
  std::map<int, double> values;

  bool has(int m) const { return values.count(m) != 0; }
  /// Throws TableError when m is not stored.
  double at(int m) const;
  /// Smallest stored m >= 2 whose theta is >= c, restricted to m <= max_m.
  std::optional<int> smallest_index_at_least(double c, int max_m) const;
};

/// One member of a confocal ellipse family: focal interval [-theta_j, theta_j]
/// and capacity gamma; semi-axes a = gamma + theta_j^2/(4 gamma), b = gamma - theta_j^2/(4 gamma).
struct EllipseRecord {
  int j = 0;
  double focal = 0.0;
  double gamma = 0.0;
  double a = 0.0;
  double b = 0.0;
};

/// Largest circle |z| = theta_k (interpolation interval theta_k) that is valid for degree m.
struct CircleRecord {
  int k = 0;
  double radius = 0.0;
};

struct EllipseFamily {
  Tolerance tol;
  PointKind kind = PointKind::real;
  std::map<int, std::vector<EllipseRecord>> ellipses;
  std::map<int, CircleRecord> circles;
};

/// Semi-axes from capacity and focal half-width.
inline EllipseRecord make_ellipse(int j, double focal, double gamma) {
  const double q = focal * focal / (4.0 * gamma);
  return {j, focal, gamma, gamma + q, gamma - q};
}

} // namespace leja
