#include "leja/be_tables.hpp"

#include <boost/math/special_functions/ellint_2.hpp>
#include <boost/math/tools/toms748_solve.hpp>

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <numbers>
#include <sstream>
#include <thread>

namespace leja {

namespace {

using mp::Complex;
using mp::Real;

constexpr double kInnerAccuracy = 1e-20;
constexpr double kOuterAccuracy = 1e-18;
constexpr double kTruncationRatio = 1e-5;
constexpr double kScanFactor = 1.05;
constexpr int kMaxOuterIterations = 200;

std::vector<Complex> newton_coefficients(const std::vector<Complex>& points, const Real& c) {
  if (c == 0) {
    std::vector<Complex> dd;
    dd.reserve(points.size());
    Real f = 1;
    for (std::size_t j = 0; j < points.size(); ++j) {
      if (j > 0)
        f /= static_cast<unsigned>(j);
      dd.emplace_back(f);
    }
    return dd;
  }
  return mp::divided_differences_exp(points);
}

// Taylor coefficients of log(e^{-x} T_m(x)) up to degree big_m, T_m the
// degree-m Taylor polynomial of exp.
std::vector<Real> taylor_remainder_series(int m, int big_m) {
  std::vector<Real> em(big_m + 1), poly(m + 1);
  em[0] = 1;
  for (int k = 1; k <= big_m; ++k)
    em[k] = -em[k - 1] / static_cast<unsigned>(k);
  for (int k = 0; k <= m; ++k)
    poly[k] = boost::multiprecision::abs(em[k]);

  std::vector<Real> f(big_m + 1);
  for (int k = 0; k <= big_m; ++k) {
    Real acc = 0;
    for (int i = 0; i <= std::min(k, m); ++i)
      acc += poly[i] * em[k - i];
    f[k] = acc;
  }
  // h = log f via f h' = f', f_0 = 1.
  std::vector<Real> h(big_m + 1);
  for (int k = 1; k <= big_m; ++k) {
    Real acc = 0;
    for (int j = 1; j < k; ++j)
      acc += h[j] * f[k - j] * static_cast<unsigned>(j);
    h[k] = f[k] - acc / static_cast<unsigned>(k);
  }
  return h;
}

void check_degree(const LejaSequence& seq, int m) {
  if (m < 1 || static_cast<std::size_t>(m) + 1 > seq.size())
    throw ParameterError("degree " + std::to_string(m) + " needs " + std::to_string(m + 1) +
                         " Leja points, sequence has " + std::to_string(seq.size()));
}

// sum_k |a_k| theta^{k-1} and its theta-derivative times theta.
void series_value(const SeriesCoeffs& s, const Real& theta, Real& value, Real& theta_deriv) {
  value = 0;
  theta_deriv = 0;
  Real power = 1;
  for (std::size_t k = 0; k < s.magnitudes.size(); ++k) {
    const Real term = s.magnitudes[k] * power;
    value += term;
    theta_deriv += term * static_cast<unsigned>(k);
    power *= theta;
  }
}

bool truncation_suspicious(const SeriesCoeffs& s, const Real& theta) {
  Real power = 1, largest = 0, last = 0;
  for (const Real& a : s.magnitudes) {
    last = a * power;
    largest = std::max(largest, last);
    power *= theta;
  }
  return largest > 0 && last > largest * Real(kTruncationRatio);
}

// Truncates to 16 significant decimal digits.
double truncate16(const Real& x) {
  if (x == 0)
    return 0.0;
  std::string s = x.str(40, std::ios_base::scientific);
  const auto e = s.find('e');
  std::string mant = s.substr(0, e);
  const std::string expo = s.substr(e);
  const auto dot = mant.find('.');
  mant = mant.substr(0, dot + 16);
  return std::strtod((mant + expo).c_str(), nullptr);
}

std::optional<Real> theta_at(const LejaSequence& seq, int m, const Real& c, const Real& tol) {
  return theta_root(htilde_coeffs(seq, m, c), tol, Real(kInnerAccuracy));
}

Real fixed_point_impl(const LejaSequence& seq, int m, const Real& tol) {
  const auto theta0 = theta_at(seq, m, Real(0), tol);
  if (!theta0)
    throw NumericError("degree " + std::to_string(m) + " infeasible even for the Taylor limit");

  // G(c) = theta_{m,c} - c; an infeasible c counts as G < 0.
  auto g = [&](const Real& c) -> std::optional<Real> {
    auto t = theta_at(seq, m, c, tol);
    if (!t)
      return std::nullopt;
    return *t - c;
  };

  // Scan geometrically from theta_{m,0} toward the crossing. Evaluations stay
  // near the fixed point, where the series needs the fewest guard digits.
  Real lo, glo, hi;
  std::optional<Real> ghi;
  const Real start = *theta0;
  if (const auto g0 = g(start); g0 && *g0 > 0) {
    lo = start;
    glo = *g0;
    hi = start;
    for (;;) {
      hi *= Real(kScanFactor);
      if (hi > 1e4)
        throw NumericError("no fixed point theta_m found for degree " + std::to_string(m));
      ghi = g(hi);
      if (!ghi || *ghi <= 0)
        break;
      lo = hi;
      glo = *ghi;
    }
  } else {
    hi = start;
    lo = start;
    for (;;) {
      lo /= Real(kScanFactor);
      if (lo < start * 1e-6)
        throw NumericError("no fixed point theta_m found for degree " + std::to_string(m));
      const auto gl = g(lo);
      if (gl && *gl > 0) {
        glo = *gl;
        break;
      }
      hi = lo;
    }
  }

  const Real delta_rel = boost::multiprecision::pow(Real(10), -static_cast<int>(mp::current_digits() / 4));
  Real c = lo;
  std::optional<Real> gc = glo;
  bool force_bisection = false;
  for (int it = 0; it < kMaxOuterIterations; ++it) {
    Real next;
    bool newton = false;
    if (!force_bisection && c > 0 && gc) {
      const Real h = c * delta_rel;
      const auto gp = g(c + h);
      if (gp) {
        const Real deriv = (*gp - *gc) / h;
        if (deriv != 0) {
          next = c - *gc / deriv;
          newton = next > lo && next < hi;
        }
      }
    }
    if (!newton)
      next = (lo + hi) / 2;
    const auto gn = g(next);
    const Real step = boost::multiprecision::abs(next - c);
    // A Newton step that does not halve the residual hands over to bisection.
    force_bisection = newton && (!gn || !gc || boost::multiprecision::abs(*gn) > boost::multiprecision::abs(*gc) / 2);
    if (gn && *gn == 0)
      return next;
    if (gn && *gn > 0) {
      lo = next;
      glo = *gn;
    } else {
      hi = next;
    }
    c = next;
    gc = gn;
    if ((gn && step <= Real(kOuterAccuracy) * next) || hi - lo <= Real(kOuterAccuracy) * hi)
      return gn ? next : lo;
  }
  throw NumericError("fixed-point iteration for theta_" + std::to_string(m) + " did not converge");
}

// Evaluates |h(z)/z| on the contour for one (degree, interpolation interval).
class ContourEvaluator {
public:
  ContourEvaluator(const LejaSequence& seq, int m, double interval)
      : kind_(seq.kind), points_(mp::scale_points(seq.first(m + 1), Real(interval) / 2)),
        dd_(newton_coefficients(points_, Real(interval))) {}

  double bound(double focal, double gamma, const ContourOptions& opts) const {
    const double q = focal * focal / (4.0 * gamma);
    const double a = gamma + q;
    const double b = std::max(gamma - q, 0.0);
    const int n = std::max(opts.samples, 4);
    double largest = 0.0;
    // Half-offset samples on the upper half: symmetric under conjugation and
    // never hitting z = 0 on a degenerate ellipse.
    for (int k = 0; k < n / 2; ++k) {
      const double phi = 2.0 * std::numbers::pi * (k + 0.5) / n;
      cplx z{a * std::cos(phi), b * std::sin(phi)};
      if (kind_ == PointKind::conjugate)
        z = cplx(0.0, 1.0) * z;
      largest = std::max(largest, g_abs(z));
      if (!std::isfinite(largest))
        return largest;
    }
    return ellipse_perimeter(a, b) / (2.0 * std::numbers::pi * opts.epsilon) * largest;
  }

private:
  double g_abs(cplx zd) const {
    const Complex z(zd);
    const Complex r = mp::exp(-z) * mp::newton_eval(points_, dd_, z) - Complex(Real(1));
    const cplx rd = r.to_double();
    cplx h;
    if (std::abs(rd) < 1e-3) {
      // log(1+r) by its series: relative error below |r|^5.
      const cplx r2 = rd * rd;
      h = rd - r2 / 2.0 + r2 * rd / 3.0 - r2 * r2 / 4.0 + r2 * r2 * rd / 5.0;
    } else {
      h = std::log(1.0 + rd);
    }
    return std::abs(h) / std::abs(zd);
  }

  PointKind kind_;
  std::vector<Complex> points_;
  std::vector<Complex> dd_;
};

std::optional<double> gamma_search_impl(const ContourEvaluator& eval, double focal, double tol,
                                        const ContourOptions& opts) {
  const double lo = std::max(focal / 2.0 * (1.0 + 1e-9), 1e-300);
  const double hi = focal / 2.0 + opts.bracket_width;
  auto f = [&](double gamma) {
    const double b = eval.bound(focal, gamma, opts);
    if (!std::isfinite(b))
      return 1e3;
    return std::log(b / tol);
  };
  const double flo = f(lo);
  if (flo > 0.0)
    return std::nullopt;
  const double fhi = f(hi);
  if (fhi <= 0.0)
    return hi;
  const double rel = opts.rel_accuracy;
  auto stop = [rel](double x, double y) { return std::abs(y - x) <= rel * std::min(x, y); };
  std::uintmax_t iters = 200;
  const auto bracket = boost::math::tools::toms748_solve(f, lo, hi, flo, fhi, stop, iters);
  return bracket.first;
}

std::optional<CircleRecord> circle_search_impl(const LejaSequence& seq, int m, const ThetaTable& theta,
                                               double tol, const ContourOptions& opts) {
  for (int k = m; k >= 2; --k) {
    if (!theta.has(k))
      continue;
    const double r = theta.at(k);
    const ContourEvaluator eval(seq, m, r);
    if (eval.bound(0.0, r, opts) <= tol)
      return CircleRecord{k, r};
  }
  return std::nullopt;
}

std::vector<EllipseRecord> family_impl(const LejaSequence& seq, int m, const ThetaTable& theta, double tol,
                                       const ContourOptions& opts, int max_extra) {
  std::vector<EllipseRecord> out;
  const int step = seq.kind == PointKind::conjugate ? 2 : 1;
  const int last = std::min(m + max_extra, kMaxInterval);
  for (int j = m; j <= last; j += step) {
    if (!theta.has(j))
      break;
    const double focal = theta.at(j);
    const ContourEvaluator eval(seq, m, focal);
    const auto gamma = gamma_search_impl(eval, focal, tol, opts);
    if (!gamma)
      break;
    out.push_back(make_ellipse(j, focal, *gamma));
  }
  return out;
}

// Runs fn(i) for i in [0, n) on a pool of threads; rethrows the first failure.
template <class Fn>
void parallel_for(std::size_t n, unsigned threads, Fn fn) {
  if (threads == 0)
    threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(n, 1)));
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= n)
        return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error)
          error = std::current_exception();
      }
    }
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t)
      pool.emplace_back(worker);
    for (auto& t : pool)
      t.join();
  }
  if (error)
    std::rethrow_exception(error);
}

} // namespace

SeriesCoeffs htilde_coeffs(const LejaSequence& seq, int m, const Real& c) {
  if (m < 1 || seq.size() < static_cast<std::size_t>(3 * m + 1))
    throw ParameterError("degree " + std::to_string(m) + " needs " + std::to_string(3 * m + 1) +
                         " Leja points, sequence has " + std::to_string(seq.size()));
  if (c < 0)
    throw ParameterError("interval half-width must be nonnegative");
  const int big_m = 3 * m;
  std::vector<Real> poly;
  if (c == 0) {
    poly = taylor_remainder_series(m, big_m);
  } else {
    // Newton interpolant of h at xi_0..xi_M, rewritten in the monomial basis.
    const std::vector<Complex> points = mp::scale_points(seq.first(big_m + 1), c / 2);
    const std::span<const Complex> nodes(points.data(), m + 1);
    const std::vector<Complex> dd = mp::divided_differences_exp(nodes);
    std::vector<Complex> values(big_m + 1);
    for (int j = m + 1; j <= big_m; ++j) {
      const Complex& z = points[j];
      values[j] = mp::log(mp::exp(-z) * mp::newton_eval(nodes, dd, z));
    }
    for (int k = 1; k <= big_m; ++k)
      for (int i = big_m; i >= k; --i)
        values[i] = (values[i] - values[i - 1]) / (points[i] - points[i - k]);
    poly = mp::newton_to_monomial(points, values);
  }

  SeriesCoeffs out;
  out.m = m;
  out.c = c;
  out.kind = seq.kind;
  out.magnitudes.reserve(big_m);
  for (int k = 1; k <= big_m; ++k)
    out.magnitudes.push_back(boost::multiprecision::abs(poly[k]));
  return out;
}

std::optional<Real> theta_root(const SeriesCoeffs& coeffs, const Real& tol, const Real& accuracy) {
  if (coeffs.magnitudes.empty() || coeffs.magnitudes[0] >= tol)
    return std::nullopt;
  const Real log_tol = boost::multiprecision::log(tol);
  Real value, deriv;
  // Newton on u = log(theta) for G(u) = log(sum |a_k| e^{(k-1)u}) - log(tol),
  // convex and increasing: started right of the root it decreases monotonically.
  Real theta = 1;
  for (;;) {
    series_value(coeffs, theta, value, deriv);
    if (value > tol)
      break;
    theta *= 2;
    if (theta > 1e6)
      return std::nullopt;
  }
  for (int it = 0; it < 1000; ++it) {
    series_value(coeffs, theta, value, deriv);
    if (deriv <= 0)
      return std::nullopt;
    const Real step = (boost::multiprecision::log(value) - log_tol) * value / deriv;
    theta *= boost::multiprecision::exp(-step);
    if (boost::multiprecision::abs(step) <= accuracy)
      return theta;
  }
  throw NumericError("Newton iteration for theta_{m,c} did not converge");
}

double theta_mc(const LejaSequence& seq, int m, double c, Tolerance tol, unsigned digits) {
  mp::PrecisionScope scope(digits);
  const auto t = theta_at(seq, m, Real(c), Real(tol.value));
  if (!t)
    throw NumericError("interval too large: theta_{" + std::to_string(m) + ",c} has no root for c = " +
                       format_double(c));
  return static_cast<double>(*t);
}

double theta_fixed_point(const LejaSequence& seq, int m, Tolerance tol, unsigned digits) {
  check_degree(seq, m);
  if (m < 2)
    throw ParameterError("theta_m needs m >= 2");
  mp::PrecisionScope scope(digits);
  return truncate16(fixed_point_impl(seq, m, Real(tol.value)));
}

double ellipse_perimeter(double a, double b) {
  if (a < b)
    std::swap(a, b);
  if (a <= 0.0)
    return 0.0;
  const double k = std::sqrt(std::max(0.0, 1.0 - (b / a) * (b / a)));
  return 4.0 * a * boost::math::ellint_2(k);
}

double contour_bound(const LejaSequence& seq, int m, double interval, double focal, double gamma,
                     const ContourOptions& opts, unsigned digits) {
  check_degree(seq, m);
  mp::PrecisionScope scope(digits);
  return ContourEvaluator(seq, m, interval).bound(focal, gamma, opts);
}

std::optional<double> gamma_search(const LejaSequence& seq, int m, double focal, Tolerance tol,
                                   const ContourOptions& opts, unsigned digits) {
  check_degree(seq, m);
  mp::PrecisionScope scope(digits);
  return gamma_search_impl(ContourEvaluator(seq, m, focal), focal, tol.value, opts);
}

std::optional<CircleRecord> circle_search(const LejaSequence& seq, int m, const ThetaTable& theta,
                                          Tolerance tol, const ContourOptions& opts, unsigned digits) {
  check_degree(seq, m);
  mp::PrecisionScope scope(digits);
  return circle_search_impl(seq, m, theta, tol.value, opts);
}

std::vector<EllipseRecord> ellipse_family(const LejaSequence& seq, int m, const ThetaTable& theta,
                                          Tolerance tol, const ContourOptions& opts, unsigned digits,
                                          int max_extra) {
  check_degree(seq, m);
  mp::PrecisionScope scope(digits);
  return family_impl(seq, m, theta, tol.value, opts, max_extra);
}

bool degree_supported(PointKind kind, int m) {
  return m >= 2 && m <= kMaxInterval && (kind == PointKind::real || m % 2 == 0);
}

TableSet build_tables(Tolerance tol, PointKind kind, const BuildOptions& opts) {
  if (opts.max_m < 2 || opts.max_m > kMaxDegree)
    throw ParameterError("max_m must lie in [2, " + std::to_string(kMaxDegree) + "]");
  auto note = [&](const std::string& msg) {
    if (opts.progress)
      opts.progress(msg);
  };

  TableSet out;
  const int theta_max = opts.ellipses ? std::min(opts.max_m + 20, kMaxInterval) : opts.max_m;
  const std::size_t count = std::max<std::size_t>(3 * theta_max + 1, kMaxLejaPoints);
  out.seq = kind == PointKind::real ? generate_real_leja(count, opts.mesh_size)
                                    : generate_conjugate_leja(count, opts.mesh_size);
  out.theta.tol = tol;
  out.theta.kind = kind;
  out.families.tol = tol;
  out.families.kind = kind;
  note("leja points generated");

  std::vector<int> degrees;
  for (int m = theta_max; m >= 2; --m)
    if (degree_supported(kind, m))
      degrees.push_back(m);

  mp::PrecisionScope scope(opts.digits);
  const Real tol_mp(tol.value);
  std::mutex mutex;

  parallel_for(degrees.size(), opts.threads, [&](std::size_t i) {
    const int m = degrees[i];
    const Real theta = fixed_point_impl(out.seq, m, tol_mp);
    bool suspicious = false;
    if (const auto coeffs = htilde_coeffs(out.seq, m, theta); truncation_suspicious(coeffs, theta))
      suspicious = true;
    std::lock_guard lock(mutex);
    out.theta.values[m] = truncate16(theta);
    note("theta " + std::to_string(m) + " = " + format_double(out.theta.values[m]) +
         (suspicious ? " (warning: series truncation not negligible)" : ""));
  });

  if (opts.ellipses) {
    std::vector<int> plan_degrees;
    for (int m = opts.max_m; m >= 2; --m)
      if (degree_supported(kind, m))
        plan_degrees.push_back(m);
    parallel_for(plan_degrees.size(), opts.threads, [&](std::size_t i) {
      const int m = plan_degrees[i];
      auto family = family_impl(out.seq, m, out.theta, tol.value, opts.contour, kMaxInterval);
      auto circle = circle_search_impl(out.seq, m, out.theta, tol.value, opts.contour);
      std::lock_guard lock(mutex);
      note("ellipses " + std::to_string(m) + ": " + std::to_string(family.size()) + " records" +
           (circle ? ", circle k = " + std::to_string(circle->k) : ", no circle"));
      out.families.ellipses[m] = std::move(family);
      if (circle)
        out.families.circles[m] = *circle;
    });
  }

  out.dd = precompute_all(out.theta, out.seq);
  note("divided differences stored");
  return out;
}

} // namespace leja
