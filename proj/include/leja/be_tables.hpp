#pragma once

#include "leja/common.hpp"
#include "leja/divided_differences.hpp"
#include "leja/leja_points.hpp"
#include "leja/multiprecision.hpp"
#include "leja/table_types.hpp"

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace leja {

/// Default working precision for table generation (decimal digits).
inline constexpr unsigned kDefaultDigits = 300;

/// Coefficients a_k of h(x) = log(e^{-x} L_{m,c}(x)) = sum_k a_k x^k,
/// magnitudes only, k = 1..M with M = 3m. magnitudes[k-1] = |a_k|. The series
/// is the Newton interpolant of h at the first M + 1 Leja points in the
/// monomial basis; for c = 0 it is the Taylor series of h.
struct SeriesCoeffs {
  int m = 0;
  mp::Real c;
  PointKind kind = PointKind::real;
  std::vector<mp::Real> magnitudes;
  /// Set when the trailing coefficient is not negligible at the root.
  bool truncation_warning = false;
};

/// Series coefficients at the current MPFR precision. The sequence must hold
/// at least 3m + 1 points.
SeriesCoeffs htilde_coeffs(const LejaSequence& seq, int m, const mp::Real& c);

/// Root of sum_k |a_k| theta^{k-1} = tol, or nullopt when |a_1| >= tol.
/// Newton from the right, stopped at relative step `accuracy`.
std::optional<mp::Real> theta_root(const SeriesCoeffs& coeffs, const mp::Real& tol,
                                   const mp::Real& accuracy);

/// theta_{m,c}; throws NumericError("interval too large") when no root exists.
double theta_mc(const LejaSequence& seq, int m, double c, Tolerance tol, unsigned digits = kDefaultDigits);

/// theta_m = min{c : theta_{m,c} = c}, truncated to 16 significant digits.
/// Throws NumericError when no crossing exists.
double theta_fixed_point(const LejaSequence& seq, int m, Tolerance tol, unsigned digits = kDefaultDigits);

struct ContourOptions {
  double epsilon = 1.0 / 50.0;
  /// Equispaced parameter samples on |w| = 1.
  int samples = 2048;
  /// Relative accuracy of the capacity search.
  double rel_accuracy = 1e-6;
  /// Upper end of the capacity bracket is focal/2 + bracket_width.
  double bracket_width = 50.0;
};

/// Perimeter of an ellipse with semi-axes a >= b >= 0.
double ellipse_perimeter(double a, double b);

/// (L(Gamma) / (2 pi eps)) * max_Gamma |h(z)/z| for the ellipse of capacity
/// gamma around the focal interval of half-width `focal` (rotated onto the
/// imaginary axis for the conjugate kind), with interpolation interval `interval`.
double contour_bound(const LejaSequence& seq, int m, double interval, double focal, double gamma,
                     const ContourOptions& opts, unsigned digits = kDefaultDigits);

/// Largest capacity gamma >= focal/2 whose ellipse satisfies the validity
/// inequality, or nullopt if the degenerate ellipse already fails.
std::optional<double> gamma_search(const LejaSequence& seq, int m, double focal, Tolerance tol,
                                   const ContourOptions& opts = {}, unsigned digits = kDefaultDigits);

/// Largest k <= m such that the circle of radius theta_k with interpolation
/// interval theta_k is valid for degree m.
std::optional<CircleRecord> circle_search(const LejaSequence& seq, int m, const ThetaTable& theta,
                                          Tolerance tol, const ContourOptions& opts = {},
                                          unsigned digits = kDefaultDigits);

/// Ellipse family for degree m: j = m, m+1, ... (even j only for the conjugate
/// kind) up to min(m + max_extra, kMaxInterval), stopping at the first infeasible j.
std::vector<EllipseRecord> ellipse_family(const LejaSequence& seq, int m, const ThetaTable& theta,
                                          Tolerance tol, const ContourOptions& opts = {},
                                          unsigned digits = kDefaultDigits, int max_extra = kMaxInterval);

struct BuildOptions {
  unsigned digits = kDefaultDigits;
  /// Largest planning degree; theta is computed up to min(max_m + 20, 120).
  int max_m = kMaxDegree;
  bool ellipses = true;
  unsigned threads = 0;
  std::size_t mesh_size = kDefaultMeshSize;
  ContourOptions contour;
  std::function<void(const std::string&)> progress;
};

struct TableSet {
  LejaSequence seq;
  ThetaTable theta;
  EllipseFamily families;
  std::map<int, DividedDiffTable> dd;
};

/// Degrees for which theta is defined: all m >= 2 (real) or even m >= 2 (conjugate).
bool degree_supported(PointKind kind, int m);

/// Full offline pipeline: Leja sequence, theta_m, ellipse families, circles,
/// divided differences. Work is distributed over degrees.
TableSet build_tables(Tolerance tol, PointKind kind, const BuildOptions& opts = {});

} // namespace leja
