#pragma once

#include "leja/matrix.hpp"
#include "leja/multiprecision.hpp"

#include <vector>

namespace leja {

/// Largest dimension accepted by the extended-precision oracle.
inline constexpr Eigen::Index kOracleMaxDim = 400;

/// e^{tA} v in extended precision: the matrix is shifted by its mean diagonal
/// entry, split into s steps with ||B||_inf <= 1/2 and each step summed as a
/// Taylor series until the term drops below 10^{-digits-5} relative to the
/// partial sum. Input entries are taken exactly. Calls are serialized since
/// they set the process-wide MPFR precision.
std::vector<mp::Complex> oracle_expmv_mp(const ComplexSparse& a, const std::vector<cplx>& v, double t,
                                         unsigned digits = 50);

/// The oracle result rounded to double.
template <class S>
Vector<S> oracle_expmv(const SparseMatrix<S>& a, const Vector<S>& v, double t, unsigned digits = 50);

} // namespace leja
