#include "leja/planner.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace leja {

namespace {

// Scaling counts beyond this are rejected rather than overflowing m*s.
constexpr double kMaxScalingSteps = 1e15;

long long ceil_steps(double ratio) {
  if (!std::isfinite(ratio) || ratio > kMaxScalingSteps)
    throw NumericError("scaling count " + format_double(ratio) + " out of range");
  return std::max<long long>(1, static_cast<long long>(std::ceil(ratio)));
}

std::string_view to_string(Shape shape) {
  switch (shape) {
  case Shape::none:
    return "none";
  case Shape::ellipse:
    return "ellipse";
  case Shape::circle:
    return "circle";
  }
  return "?";
}

} // namespace

std::string_view to_string(Algorithm alg) { return alg == Algorithm::circle ? "circle" : "ellipse"; }

AlgorithmChoice algorithm_choice_from_string(std::string_view name) {
  if (name == "1" || name == "circle")
    return AlgorithmChoice::circle;
  if (name == "2" || name == "ellipse")
    return AlgorithmChoice::ellipse;
  if (name == "auto")
    return AlgorithmChoice::automatic;
  throw ParameterError("unknown algorithm '" + std::string(name) + "' (expected 1, 2 or auto)");
}

PointKind select_point_type(const SpectralBox& box) {
  return box.height() > box.width() ? PointKind::conjugate : PointKind::real;
}

Plan plan_circle(double norm, const ThetaTable& theta, int max_m) {
  if (!(norm >= 0.0) || !std::isfinite(norm))
    throw NumericError("plan_circle: matrix norm " + format_double(norm) + " is not finite");
  Plan best;
  best.algorithm = Algorithm::circle;
  best.kind = theta.kind;
  best.norm_value = norm;
  best.predicted_cost = std::numeric_limits<long long>::max();
  for (const auto& [m, th] : theta.values) {
    if (m < 2 || m > max_m)
      continue;
    const long long s = ceil_steps(norm / th);
    const long long cost = static_cast<long long>(m) * s;
    if (cost < best.predicted_cost) {
      best.m_star = m;
      best.s_star = s;
      best.c_star = th;
      best.c_index = m;
      best.predicted_cost = cost;
    }
  }
  if (best.predicted_cost == std::numeric_limits<long long>::max())
    throw TableError("theta table holds no degree in 2.." + std::to_string(max_m));
  return best;
}

double ellipse_scaling(const SpectralBox& centered, PointKind kind, double a, double b, double epsilon) {
  // Extent along the interpolation axis and across it.
  double along = centered.half_width() + epsilon;
  double across = centered.half_height() + epsilon;
  if (kind == PointKind::conjugate)
    std::swap(along, across);
  if (!(b > 0.0))
    return std::numeric_limits<double>::infinity();
  return std::hypot(along / a, across / b);
}

Plan plan_ellipse(const SpectralBox& centered, const EllipseFamily& families, const ThetaTable& theta,
                  double epsilon, bool circles_only, int max_m) {
  Plan best;
  best.algorithm = Algorithm::ellipse;
  best.kind = families.kind;
  best.predicted_cost = std::numeric_limits<long long>::max();

  struct Candidate {
    int index;
    double c;
    double a;
    double b;
    Shape shape;
  };
  std::vector<Candidate> cands;
  for (int m = 2; m <= max_m; ++m) {
    cands.clear();
    if (!circles_only)
      if (auto it = families.ellipses.find(m); it != families.ellipses.end())
        for (const EllipseRecord& r : it->second)
          cands.push_back({r.j, r.focal, r.a, r.b, Shape::ellipse});
    if (auto it = families.circles.find(m); it != families.circles.end())
      cands.push_back({it->second.k, it->second.radius, it->second.radius, it->second.radius, Shape::circle});
    if (cands.empty())
      continue;

    const Candidate* pick = nullptr;
    long long pick_s = 0;
    for (const Candidate& c : cands) {
      const double scaling = ellipse_scaling(centered, families.kind, c.a, c.b, epsilon);
      if (!std::isfinite(scaling))
        continue;
      const long long s = ceil_steps(scaling);
      if (!pick || s < pick_s || (s == pick_s && c.c < pick->c)) {
        pick = &c;
        pick_s = s;
      }
    }
    if (!pick)
      continue;
    const long long cost = static_cast<long long>(m) * pick_s;
    if (cost < best.predicted_cost) {
      best.m_star = m;
      best.s_star = pick_s;
      best.c_index = pick->index;
      best.c_star = theta.has(pick->index) ? theta.at(pick->index) : pick->c;
      best.shape = pick->shape;
      best.predicted_cost = cost;
    }
  }
  if (best.shape == Shape::none)
    best.predicted_cost = 0;
  return best;
}

Plan hump_reduce(const Plan& plan, const std::vector<double>& dps, const ThetaTable& theta,
                 const EllipseFamily& families, const SpectralBox& centered, double epsilon) {
  if (dps.empty())
    return plan;
  const double dmin = *std::min_element(dps.begin(), dps.end());
  if (!(dmin < 0.9 * dps.front()))
    return plan;

  Plan out = plan;
  if (plan.algorithm == Algorithm::ellipse && plan.shape == Shape::ellipse) {
    Plan circles = plan_ellipse(centered, families, theta, epsilon, true);
    if (circles.shape == Shape::none) {
      out.warnings.push_back("hump test skipped: no circle records stored");
      return out;
    }
    circles.shift = plan.shift;
    circles.norm_used = plan.norm_used;
    circles.norm_value = plan.norm_value;
    circles.warnings = plan.warnings;
    out = std::move(circles);
  }

  const double target = dmin / static_cast<double>(out.s_star);
  int index = 0;
  double c = 0.0;
  if (target >= theta.at(2)) {
    const auto k = theta.smallest_index_at_least(target, out.m_star);
    if (!k)
      return out;
    index = *k;
    c = theta.at(index);
  }
  if (c < out.c_star) {
    out.c_star = c;
    out.c_index = index;
    out.hump_reduced = true;
  }
  return out;
}

Plan plan_auto(double norm, const SpectralBox& centered, const ThetaTable& theta,
               const EllipseFamily& families, double epsilon) {
  Plan circle = plan_circle(norm, theta);
  Plan ellipse = plan_ellipse(centered, families, theta, epsilon);
  if (ellipse.shape != Shape::none && ellipse.predicted_cost <= circle.predicted_cost) {
    ellipse.norm_value = norm;
    return ellipse;
  }
  return circle;
}

std::string format_plan(const Plan& p) {
  std::ostringstream os;
  os << "algorithm=" << to_string(p.algorithm) << '\n'
     << "kind=" << to_string(p.kind) << '\n'
     << "m_star=" << p.m_star << '\n'
     << "s_star=" << p.s_star << '\n'
     << "c_star=" << format_double(p.c_star) << '\n'
     << "c_index=" << p.c_index << '\n'
     << "shape=" << to_string(p.shape) << '\n'
     << "shift=" << format_double(p.shift.real()) << ',' << format_double(p.shift.imag()) << '\n'
     << "predicted_cost=" << p.predicted_cost << '\n'
     << "norm=" << to_string(p.norm_used) << '\n'
     << "norm_value=" << format_double(p.norm_value) << '\n'
     << "hump_reduced=" << (p.hump_reduced ? "true" : "false") << '\n';
  for (const std::string& w : p.warnings)
    os << "warning=" << w << '\n';
  return os.str();
}

std::string plan_json(const Plan& p) {
  nlohmann::ordered_json j;
  j["algorithm"] = to_string(p.algorithm);
  j["kind"] = to_string(p.kind);
  j["m_star"] = p.m_star;
  j["s_star"] = p.s_star;
  j["c_star"] = p.c_star;
  j["c_index"] = p.c_index;
  j["shape"] = to_string(p.shape);
  j["shift"] = {p.shift.real(), p.shift.imag()};
  j["predicted_cost"] = p.predicted_cost;
  j["norm"] = to_string(p.norm_used);
  j["norm_value"] = p.norm_value;
  j["hump_reduced"] = p.hump_reduced;
  j["warnings"] = p.warnings;
  return j.dump();
}

} // namespace leja
