#pragma once

#include "leja/common.hpp"

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include <string_view>
#include <type_traits>

namespace leja {

template <class S>
using SparseMatrix = Eigen::SparseMatrix<S, Eigen::RowMajor>;
using RealSparse = SparseMatrix<double>;
using ComplexSparse = SparseMatrix<cplx>;

template <class S>
using Vector = Eigen::Matrix<S, Eigen::Dynamic, 1>;
template <class S>
using Block = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;

template <class S>
inline constexpr bool is_complex_v = !std::is_same_v<S, double>;

enum class NormKind { one, two, inf };

std::string_view to_string(NormKind kind);
/// "1", "2", "inf".
NormKind norm_kind_from_string(std::string_view name);

/// Vector norm paired with a matrix norm: max norm for the 1- and
/// infinity-norm families, Euclidean norm otherwise.
template <class Derived>
double vector_norm(const Eigen::MatrixBase<Derived>& x, NormKind kind) {
  if (x.size() == 0)
    return 0.0;
  if (kind == NormKind::two)
    return x.norm();
  return x.cwiseAbs().maxCoeff();
}

/// Maximum column norm of a block (the termination test for several columns).
template <class Derived>
double block_norm(const Eigen::MatrixBase<Derived>& x, NormKind kind) {
  double r = 0.0;
  for (Eigen::Index j = 0; j < x.cols(); ++j)
    r = std::max(r, vector_norm(x.col(j), kind));
  return r;
}

/// A with mu subtracted from the diagonal (structurally zero diagonal entries
/// are inserted when needed).
template <class S>
SparseMatrix<S> shifted_matrix(const SparseMatrix<S>& a, S mu);

/// Promotes a real matrix to complex storage.
ComplexSparse to_complex(const RealSparse& a);

} // namespace leja
