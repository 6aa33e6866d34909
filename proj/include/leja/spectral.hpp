#pragma once

#include "leja/matrix.hpp"

#include <cstdint>
#include <map>
#include <vector>

namespace leja {

/// Rectangle [alpha, nu] + i[eta, beta] enclosing the field of values.
struct SpectralBox {
  double alpha = 0.0;
  double nu = 0.0;
  double eta = 0.0;
  double beta = 0.0;

  double width() const noexcept { return nu - alpha; }
  double height() const noexcept { return beta - eta; }
  /// The box scaled by a real factor t >= 0.
  SpectralBox scaled(double t) const noexcept { return {t * alpha, t * nu, t * eta, t * beta}; }
  /// The box translated by -mu.
  SpectralBox shifted(cplx mu) const noexcept {
    return {alpha - mu.real(), nu - mu.real(), eta - mu.imag(), beta - mu.imag()};
  }
  /// Half extents of the smallest origin-centered box containing this one.
  double half_width() const noexcept { return std::max(std::abs(alpha), std::abs(nu)); }
  double half_height() const noexcept { return std::max(std::abs(eta), std::abs(beta)); }
};

/// Gershgorin bounds for the spectra of the Hermitian part (A + A^*)/2 and the
/// skew-Hermitian part (A - A^*)/2. Rows of both parts are assembled on the fly
/// from A and its adjoint.
template <class S>
SpectralBox gershgorin_box(const SparseMatrix<S>& a);

/// Center of the box, mu = (alpha + nu)/2 + i (eta + beta)/2.
cplx shift_of(const SpectralBox& box);

/// 1- and infinity-norms are exact; the 2-norm is a power-iteration estimate
/// on A^*A (50 iterations or relative change below 1e-3).
template <class S>
double matrix_norm(const SparseMatrix<S>& a, NormKind kind, std::uint64_t seed = 0);

/// d_p = ||A^p||^{1/p} for p = 1..pmax, cut before the first p where the
/// sequence stops decreasing. Exact for n <= 400 (dense powers); otherwise
/// estimated from matrix-vector products.
template <class S>
std::vector<double> d_p_sequence(const SparseMatrix<S>& a, int pmax, NormKind kind, std::uint64_t seed = 0);

/// ||AA^* - A^*A||_1 / ||A||_1^2; zero for the zero matrix.
template <class S>
double kappa1(const SparseMatrix<S>& a);

/// Largest dimension for which d_p is computed from dense powers.
inline constexpr Eigen::Index kDenseDpLimit = 400;

struct SpectralInfo {
  SpectralBox box;
  cplx shift;
  std::map<NormKind, double> norms;
  std::vector<double> dps;
};

} // namespace leja
