#include "leja/divided_differences.hpp"

#include <algorithm>

namespace leja {

namespace {

constexpr double kTaylorRelTol = 1e-18;

// Lower-triangular n x n matrix, row-major dense storage.
class LowerMatrix {
public:
  explicit LowerMatrix(std::size_t n) : n_(n), data_(n * n) {}

  std::size_t size() const noexcept { return n_; }
  cplx& operator()(std::size_t i, std::size_t j) noexcept { return data_[i * n_ + j]; }
  cplx operator()(std::size_t i, std::size_t j) const noexcept { return data_[i * n_ + j]; }

private:
  std::size_t n_;
  std::vector<cplx> data_;
};

bool all_finite(const LowerMatrix& m) {
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j <= i; ++j)
      if (!std::isfinite(m(i, j).real()) || !std::isfinite(m(i, j).imag()))
        return false;
  return true;
}

// exp of diag(z) + subdiag(1) for max |z| <= 1 by its Taylor series. Each term
// is a bidiagonal times lower-triangular product, O(n^2).
LowerMatrix taylor_bidiagonal(const std::vector<cplx>& z) {
  const std::size_t n = z.size();
  LowerMatrix sum(n), term(n);
  for (std::size_t i = 0; i < n; ++i) {
    sum(i, i) = 1.0;
    term(i, i) = 1.0;
  }
  const std::size_t max_terms = n + 120;
  for (std::size_t k = 1; k <= max_terms; ++k) {
    const double inv_k = 1.0 / static_cast<double>(k);
    bool converged = k + 1 >= n;
    for (std::size_t i = n; i-- > 0;) {
      for (std::size_t j = 0; j <= i; ++j) {
        cplx t = z[i] * term(i, j);
        if (i > j)
          t += term(i - 1, j);
        t *= inv_k;
        term(i, j) = t;
        sum(i, j) += t;
        if (std::abs(t) > kTaylorRelTol * std::abs(sum(i, j)))
          converged = false;
      }
    }
    if (converged)
      return sum;
  }
  return sum;
}

// G <- (G*G) scaled entrywise by 2^{-(i-j)}: one squaring step that moves the
// implicit subdiagonal scaling back to one.
void square_rescaled(LowerMatrix& g) {
  const std::size_t n = g.size();
  LowerMatrix out(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j <= i; ++j) {
      cplx acc = 0.0;
      for (std::size_t l = j; l <= i; ++l)
        acc += g(i, l) * g(l, j);
      out(i, j) = std::ldexp(1.0, -static_cast<int>(i - j)) * acc;
    }
  g = std::move(out);
}

} // namespace

DividedDiffTable dd_exp(std::span<const cplx> points) {
  if (points.empty())
    throw ParameterError("dd_exp needs at least one point");
  if (points.size() > kMaxLejaPoints)
    throw ParameterError("dd_exp supports at most " + std::to_string(kMaxLejaPoints) + " points");
  double radius = 0.0;
  bool real = true;
  for (const cplx& z : points) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
      throw ParameterError("dd_exp: nonfinite point");
    radius = std::max(radius, std::abs(z));
    real = real && z.imag() == 0.0;
  }

  int s = 0;
  while (std::ldexp(radius, -s) > 1.0)
    ++s;
  std::vector<cplx> scaled(points.begin(), points.end());
  for (cplx& z : scaled)
    z = {std::ldexp(z.real(), -s), std::ldexp(z.imag(), -s)};

  LowerMatrix g = taylor_bidiagonal(scaled);
  for (int k = 0; k < s; ++k) {
    square_rescaled(g);
    if (!all_finite(g))
      throw NumericError("dd_exp: overflow in squaring step " + std::to_string(k + 1) + " of " +
                         std::to_string(s) + " (scale 2^" + std::to_string(s) + ")");
  }

  DividedDiffTable table;
  table.kind = real ? PointKind::real : PointKind::conjugate;
  table.interval_halfwidth = radius;
  table.points.assign(points.begin(), points.end());
  table.coefficients.resize(points.size());
  for (std::size_t j = 0; j < points.size(); ++j)
    table.coefficients[j] = real ? cplx(g(j, 0).real(), 0.0) : g(j, 0);
  return table;
}

cplx newton_eval(const DividedDiffTable& table, cplx z, std::size_t terms) {
  terms = std::min(terms, table.coefficients.size());
  if (terms == 0)
    return 0.0;
  std::size_t j = terms - 1;
  cplx p = table.coefficients[j];
  while (j-- > 0)
    p = p * (z - table.points[j]) + table.coefficients[j];
  return p;
}

std::map<int, DividedDiffTable> precompute_all(const ThetaTable& theta, const LejaSequence& seq) {
  if (theta.kind != seq.kind)
    throw ParameterError("theta table and Leja sequence have different point kinds");
  if (seq.size() < kStoredCoefficients)
    throw ParameterError("Leja sequence too short for stored divided differences");
  const auto ref = seq.first(kStoredCoefficients);

  std::map<int, DividedDiffTable> out;
  DividedDiffTable taylor;
  taylor.kind = seq.kind;
  taylor.points.assign(kStoredCoefficients, 0.0);
  taylor.coefficients.resize(kStoredCoefficients);
  double f = 1.0;
  for (std::size_t j = 0; j < kStoredCoefficients; ++j) {
    if (j > 0)
      f /= static_cast<double>(j);
    taylor.coefficients[j] = f;
  }
  out.emplace(0, std::move(taylor));

  for (const auto& [m, c] : theta.values) {
    DividedDiffTable t = dd_exp(scale(ref, c));
    t.kind = seq.kind;
    t.interval_halfwidth = c;
    out.emplace(m, std::move(t));
  }
  return out;
}

double ThetaTable::at(int m) const {
  const auto it = values.find(m);
  if (it == values.end())
    throw TableError("theta_" + std::to_string(m) + " not stored for " + std::string(to_string(kind)) +
                     "/" + tol.name() + " tables");
  return it->second;
}

std::optional<int> ThetaTable::smallest_index_at_least(double c, int max_m) const {
  for (const auto& [m, v] : values)
    if (m <= max_m && v >= c)
      return m;
  return std::nullopt;
}

} // namespace leja
