#include "leja/multiprecision.hpp"

namespace leja::mp {

Complex& Complex::operator*=(const Complex& o) {
  Real r = re * o.re - im * o.im;
  im = re * o.im + im * o.re;
  re = std::move(r);
  return *this;
}

Complex operator+(Complex a, const Complex& b) { return a += b; }
Complex operator-(Complex a, const Complex& b) { return a -= b; }
Complex operator*(const Complex& a, const Complex& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
Complex operator*(const Complex& a, const Real& b) { return {a.re * b, a.im * b}; }
Complex operator/(const Complex& a, const Complex& b) {
  const Real d = b.re * b.re + b.im * b.im;
  return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
}
Complex operator/(const Complex& a, const Real& b) { return {a.re / b, a.im / b}; }
Complex operator-(const Complex& a) { return {-a.re, -a.im}; }

Real abs(const Complex& z) { return boost::multiprecision::hypot(z.re, z.im); }
Real norm(const Complex& z) { return z.re * z.re + z.im * z.im; }

Complex exp(const Complex& z) {
  const Real r = boost::multiprecision::exp(z.re);
  if (z.im == 0)
    return {r, Real(0)};
  return {r * boost::multiprecision::cos(z.im), r * boost::multiprecision::sin(z.im)};
}

Complex log(const Complex& z) {
  return {boost::multiprecision::log(abs(z)), boost::multiprecision::atan2(z.im, z.re)};
}

PrecisionScope::PrecisionScope(unsigned digits) : saved_(Real::default_precision()) {
  Real::default_precision(digits);
}

PrecisionScope::~PrecisionScope() { Real::default_precision(saved_); }

unsigned current_digits() { return Real::default_precision(); }

std::vector<Complex> to_mp(std::span<const cplx> z) {
  std::vector<Complex> out;
  out.reserve(z.size());
  for (const cplx& w : z)
    out.emplace_back(w);
  return out;
}

std::vector<Complex> scale_points(std::span<const cplx> reference, const Real& factor) {
  std::vector<Complex> out;
  out.reserve(reference.size());
  for (const cplx& w : reference)
    out.emplace_back(Real(w.real()) * factor, Real(w.imag()) * factor);
  return out;
}

std::vector<Complex> divided_differences_exp(std::span<const Complex> points) {
  const std::size_t n = points.size();
  std::vector<Complex> col;
  col.reserve(n);
  for (const Complex& p : points)
    col.push_back(exp(p));
  // In-place triangular recurrence; after pass k, col[k] holds exp[z_0..z_k].
  for (std::size_t k = 1; k < n; ++k)
    for (std::size_t i = n - 1; i >= k; --i)
      col[i] = (col[i] - col[i - 1]) / (points[i] - points[i - k]);
  return col;
}

Complex newton_eval(std::span<const Complex> points, std::span<const Complex> dd, const Complex& z) {
  if (dd.empty())
    return {};
  std::size_t j = dd.size() - 1;
  Complex p = dd[j];
  while (j-- > 0) {
    p *= z - points[j];
    p += dd[j];
  }
  return p;
}

std::vector<Real> newton_to_monomial(std::span<const Complex> points, std::span<const Complex> dd) {
  const std::size_t n = dd.size();
  if (n == 0)
    return {};
  // Horner on polynomials: P <- P * (x - z_j) + dd_j.
  std::vector<Complex> poly{dd[n - 1]};
  for (std::size_t j = n - 1; j-- > 0;) {
    std::vector<Complex> next(poly.size() + 1);
    for (std::size_t k = 0; k < poly.size(); ++k) {
      next[k + 1] += poly[k];
      next[k] -= poly[k] * points[j];
    }
    next[0] += dd[j];
    poly = std::move(next);
  }
  std::vector<Real> out;
  out.reserve(poly.size());
  for (Complex& c : poly)
    out.push_back(std::move(c.re));
  return out;
}

} // namespace leja::mp
