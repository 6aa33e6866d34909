#pragma once

#include "leja/be_tables.hpp"
#include "leja/matrix.hpp"
#include "leja/spectral.hpp"

#include <string>
#include <vector>

namespace leja {

/// Alg.1 (norm and theta_m) or Alg.2 (rectangle and ellipse families).
enum class Algorithm { circle, ellipse };
enum class AlgorithmChoice { circle, ellipse, automatic };

std::string_view to_string(Algorithm alg);
/// "1", "2" or "auto".
AlgorithmChoice algorithm_choice_from_string(std::string_view name);

/// Containment shape behind an ellipse plan.
enum class Shape { none, ellipse, circle };

struct Plan {
  Algorithm algorithm = Algorithm::circle;
  PointKind kind = PointKind::real;
  int m_star = 2;
  long long s_star = 1;
  /// Interpolation half-width: theta_{c_index}, or 0 when c_index == 0.
  double c_star = 0.0;
  int c_index = 0;
  Shape shape = Shape::none;
  cplx shift;
  long long predicted_cost = 0;
  NormKind norm_used = NormKind::one;
  double norm_value = 0.0;
  bool hump_reduced = false;
  std::vector<std::string> warnings;
};

/// Conjugate points iff the box is taller than wide; ties give real points.
PointKind select_point_type(const SpectralBox& box);

/// Largest degree considered by the planner.
inline constexpr int kPlanMaxDegree = kMaxDegree;

/// argmin_m m*ceil(norm/theta_m) over the stored m <= max_m (ties: smallest m),
/// s = max(1, ceil(norm/theta_m)), c = theta_m.
Plan plan_circle(double norm, const ThetaTable& theta, int max_m = kPlanMaxDegree);

/// Scaling steps for an ellipse with semi-axes (a, b) along the interpolation
/// axis and across it to contain the origin-centered box extended by epsilon.
/// Infinite when b == 0 (a segment cannot contain a box of positive height).
double ellipse_scaling(const SpectralBox& centered, PointKind kind, double a, double b, double epsilon);

/// Alg.2 over the stored ellipse families and circles. With circles_only the
/// ellipses are ignored. Returns a plan with shape == none if nothing is stored.
Plan plan_ellipse(const SpectralBox& centered, const EllipseFamily& families, const ThetaTable& theta,
                  double epsilon = 1.0 / 50.0, bool circles_only = false, int max_m = kPlanMaxDegree);

/// Shrinks the interpolation interval when d_p drops by more than 10% below
/// d_1: c becomes the smallest stored theta_k >= min(d_p)/s with k <= m, or 0
/// when min(d_p)/s is below theta_2. Ellipse plans are first re-planned on the
/// stored circles. m and s are never changed by the reduction itself.
Plan hump_reduce(const Plan& plan, const std::vector<double>& dps, const ThetaTable& theta,
                 const EllipseFamily& families, const SpectralBox& centered, double epsilon = 1.0 / 50.0);

/// Cheaper of plan_circle and plan_ellipse by predicted cost; ties go to the ellipse plan.
Plan plan_auto(double norm, const SpectralBox& centered, const ThetaTable& theta,
               const EllipseFamily& families, double epsilon = 1.0 / 50.0);

/// key=value lines.
std::string format_plan(const Plan& plan);
/// Single-line JSON record.
std::string plan_json(const Plan& plan);

} // namespace leja
