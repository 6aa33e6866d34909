#pragma once

#include "leja/common.hpp"

#include <boost/multiprecision/mpfr.hpp>

#include <span>
#include <vector>

namespace leja::mp {

using Real = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<0>,
                                           boost::multiprecision::et_off>;

/// Minimal complex type over Real; std::complex is unspecified for non-builtin types.
struct Complex {
  Real re;
  Real im;

  Complex() : re(0), im(0) {}
  Complex(Real r) : re(std::move(r)), im(0) {}
  Complex(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}
  explicit Complex(const cplx& z) : re(z.real()), im(z.imag()) {}

  Complex& operator+=(const Complex& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  Complex& operator-=(const Complex& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  Complex& operator*=(const Complex& o);

  cplx to_double() const { return {static_cast<double>(re), static_cast<double>(im)}; }
};

Complex operator+(Complex a, const Complex& b);
Complex operator-(Complex a, const Complex& b);
Complex operator*(const Complex& a, const Complex& b);
Complex operator*(const Complex& a, const Real& b);
Complex operator/(const Complex& a, const Complex& b);
Complex operator/(const Complex& a, const Real& b);
Complex operator-(const Complex& a);

Real abs(const Complex& z);
Real norm(const Complex& z);
Complex exp(const Complex& z);
/// Principal branch.
Complex log(const Complex& z);

/// Sets the process-wide default MPFR precision (decimal digits) for its
/// lifetime. Not thread-safe: install it before spawning workers.
class PrecisionScope {
public:
  explicit PrecisionScope(unsigned digits);
  ~PrecisionScope();
  PrecisionScope(const PrecisionScope&) = delete;
  PrecisionScope& operator=(const PrecisionScope&) = delete;

private:
  unsigned saved_;
};

unsigned current_digits();

std::vector<Complex> to_mp(std::span<const cplx> z);

/// Scaled copy of double-precision reference points: z * factor, exact in Real.
std::vector<Complex> scale_points(std::span<const cplx> reference, const Real& factor);

/// Divided differences exp[z_0..z_j], j = 0..n-1, by the classical recurrence
/// at the current precision. Points must be pairwise distinct.
std::vector<Complex> divided_differences_exp(std::span<const Complex> points);

/// Evaluates the Newton form sum_j dd_j prod_{i<j}(z - points_i) by nested
/// multiplication using the first `degree + 1` coefficients.
Complex newton_eval(std::span<const Complex> points, std::span<const Complex> dd, const Complex& z);

/// Monomial coefficients of the Newton form (real parts; imaginary parts
/// cancel for conjugation-closed node sets).
std::vector<Real> newton_to_monomial(std::span<const Complex> points, std::span<const Complex> dd);

} // namespace leja::mp
