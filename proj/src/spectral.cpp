#include "leja/spectral.hpp"

#include <algorithm>
#include <random>

namespace leja {

std::string_view to_string(NormKind kind) {
  switch (kind) {
  case NormKind::one:
    return "1";
  case NormKind::two:
    return "2";
  case NormKind::inf:
    return "inf";
  }
  return "?";
}

NormKind norm_kind_from_string(std::string_view name) {
  if (name == "1" || name == "one")
    return NormKind::one;
  if (name == "2" || name == "two")
    return NormKind::two;
  if (name == "inf" || name == "Inf" || name == "infinity")
    return NormKind::inf;
  throw ParameterError("unknown norm '" + std::string(name) + "' (expected 1, 2 or inf)");
}

template <class S>
SparseMatrix<S> shifted_matrix(const SparseMatrix<S>& a, S mu) {
  if (a.rows() != a.cols())
    throw ParameterError("shift needs a square matrix");
  if (mu == S(0))
    return a;
  SparseMatrix<S> id(a.rows(), a.cols());
  id.setIdentity();
  SparseMatrix<S> out = a - mu * id;
  out.makeCompressed();
  return out;
}

ComplexSparse to_complex(const RealSparse& a) { return a.template cast<cplx>(); }

namespace {

template <class S>
void require_square(const SparseMatrix<S>& a, const char* what) {
  if (a.rows() != a.cols())
    throw ParameterError(std::string(what) + ": matrix is " + std::to_string(a.rows()) + "x" +
                         std::to_string(a.cols()) + ", expected square");
}

double imag_part(double) { return 0.0; }
double imag_part(const cplx& z) { return z.imag(); }
double real_part(double x) { return x; }
double real_part(const cplx& z) { return z.real(); }

template <class S>
Vector<S> random_vector(Eigen::Index n, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  Vector<S> x(n);
  for (Eigen::Index i = 0; i < n; ++i)
    x[i] = S(dist(gen));
  return x;
}

// Matrix powers B = A^p applied through A and A^*.
template <class S>
struct PowerOperator {
  const SparseMatrix<S>& a;
  const SparseMatrix<S>& adj;
  int p;

  Vector<S> apply(Vector<S> x) const {
    for (int k = 0; k < p; ++k)
      x = a * x;
    return x;
  }
  Vector<S> apply_adjoint(Vector<S> x) const {
    for (int k = 0; k < p; ++k)
      x = adj * x;
    return x;
  }
};

template <class S>
S unit_sign(S y) {
  if constexpr (is_complex_v<S>) {
    const double r = std::abs(y);
    return r == 0.0 ? S(1.0) : y / r;
  } else {
    return y >= 0.0 ? 1.0 : -1.0;
  }
}

// Hager's method with Higham's extra test vector; a lower bound for ||B||_1.
template <class S, class Apply, class ApplyAdjoint>
double onenorm_estimate(Eigen::Index n, Apply apply, ApplyAdjoint apply_adjoint) {
  if (n == 0)
    return 0.0;
  Vector<S> x = Vector<S>::Constant(n, S(1.0 / static_cast<double>(n)));
  double est = 0.0;
  Eigen::Index last_j = -1;
  Vector<S> xi_old;
  for (int iter = 0; iter < 5; ++iter) {
    const Vector<S> y = apply(x);
    const double new_est = y.cwiseAbs().sum();
    if (iter > 0 && new_est <= est)
      break;
    est = new_est;
    Vector<S> xi(n);
    for (Eigen::Index i = 0; i < n; ++i)
      xi[i] = unit_sign(y[i]);
    if constexpr (!is_complex_v<S>) {
      if (iter > 0 && xi == xi_old)
        break;
    }
    xi_old = xi;
    const Vector<S> z = apply_adjoint(xi);
    Eigen::Index j = 0;
    const double zmax = z.cwiseAbs().maxCoeff(&j);
    if (iter > 0 && (zmax <= real_part(S(z.dot(x))) || j == last_j))
      break;
    last_j = j;
    x.setZero();
    x[j] = S(1.0);
  }
  Vector<S> alt(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double mag = 1.0 + (n > 1 ? static_cast<double>(i) / static_cast<double>(n - 1) : 0.0);
    alt[i] = S(i % 2 == 0 ? mag : -mag);
  }
  const double alt_est = 2.0 * apply(alt).cwiseAbs().sum() / (3.0 * static_cast<double>(n));
  return std::max(est, alt_est);
}

template <class S, class Apply, class ApplyAdjoint>
double twonorm_estimate(Eigen::Index n, Apply apply, ApplyAdjoint apply_adjoint, std::uint64_t seed) {
  if (n == 0)
    return 0.0;
  Vector<S> x = random_vector<S>(n, seed);
  x.normalize();
  double sigma = 0.0;
  for (int iter = 0; iter < 50; ++iter) {
    const Vector<S> y = apply(x);
    const double ny = y.norm();
    if (ny == 0.0)
      return sigma;
    const Vector<S> z = apply_adjoint(y);
    const double nz = z.norm();
    const double next = std::sqrt(nz);
    if (nz == 0.0)
      return ny;
    x = z / nz;
    const bool done = iter > 0 && std::abs(next - sigma) <= 1e-3 * next;
    sigma = std::max(next, ny);
    if (done)
      break;
  }
  return sigma;
}

template <class S>
double dense_norm(const Block<S>& m, NormKind kind) {
  if (m.size() == 0)
    return 0.0;
  switch (kind) {
  case NormKind::one:
    return m.cwiseAbs().colwise().sum().maxCoeff();
  case NormKind::inf:
    return m.cwiseAbs().rowwise().sum().maxCoeff();
  case NormKind::two: {
    Eigen::BDCSVD<Block<S>> svd(m);
    return svd.singularValues().size() ? svd.singularValues()[0] : 0.0;
  }
  }
  return 0.0;
}

} // namespace

template <class S>
SpectralBox gershgorin_box(const SparseMatrix<S>& a) {
  require_square(a, "gershgorin_box");
  const Eigen::Index n = a.rows();
  if (n == 0)
    return {};
  SparseMatrix<S> adj = a.adjoint();
  adj.makeCompressed();

  SpectralBox box{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity(),
                  std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
  for (Eigen::Index i = 0; i < n; ++i) {
    typename SparseMatrix<S>::InnerIterator ia(a, i), ib(adj, i);
    double center_h = 0.0, center_k = 0.0, radius_h = 0.0, radius_k = 0.0;
    while (ia || ib) {
      Eigen::Index j;
      S x(0), y(0);
      if (ia && (!ib || ia.col() <= ib.col())) {
        j = ia.col();
        x = ia.value();
        ++ia;
        if (ib && ib.col() == j) {
          y = ib.value();
          ++ib;
        }
      } else {
        j = ib.col();
        y = ib.value();
        ++ib;
      }
      if (j == i) {
        center_h = real_part(x);
        center_k = imag_part(x);
      } else {
        radius_h += std::abs((x + y) / 2.0);
        radius_k += std::abs((x - y) / 2.0);
      }
    }
    box.alpha = std::min(box.alpha, center_h - radius_h);
    box.nu = std::max(box.nu, center_h + radius_h);
    box.eta = std::min(box.eta, center_k - radius_k);
    box.beta = std::max(box.beta, center_k + radius_k);
  }
  return box;
}

cplx shift_of(const SpectralBox& box) {
  return {(box.alpha + box.nu) / 2.0, (box.eta + box.beta) / 2.0};
}

template <class S>
double matrix_norm(const SparseMatrix<S>& a, NormKind kind, std::uint64_t seed) {
  require_square(a, "matrix_norm");
  const Eigen::Index n = a.rows();
  if (n == 0)
    return 0.0;
  switch (kind) {
  case NormKind::one: {
    std::vector<double> col(static_cast<std::size_t>(n), 0.0);
    for (Eigen::Index i = 0; i < n; ++i)
      for (typename SparseMatrix<S>::InnerIterator it(a, i); it; ++it)
        col[static_cast<std::size_t>(it.col())] += std::abs(it.value());
    return *std::max_element(col.begin(), col.end());
  }
  case NormKind::inf: {
    double r = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      double s = 0.0;
      for (typename SparseMatrix<S>::InnerIterator it(a, i); it; ++it)
        s += std::abs(it.value());
      r = std::max(r, s);
    }
    return r;
  }
  case NormKind::two: {
    SparseMatrix<S> adj = a.adjoint();
    return twonorm_estimate<S>(
        n, [&](const Vector<S>& x) { return Vector<S>(a * x); },
        [&](const Vector<S>& x) { return Vector<S>(adj * x); }, seed);
  }
  }
  return 0.0;
}

template <class S>
std::vector<double> d_p_sequence(const SparseMatrix<S>& a, int pmax, NormKind kind, std::uint64_t seed) {
  require_square(a, "d_p_sequence");
  if (pmax < 1)
    throw ParameterError("d_p_sequence: pmax must be >= 1");
  const Eigen::Index n = a.rows();
  std::vector<double> out;
  if (n == 0)
    return out;

  if (n <= kDenseDpLimit) {
    const Block<S> d = Block<S>(a);
    Block<S> power = d;
    for (int p = 1; p <= pmax; ++p) {
      if (p > 1)
        power = power * d;
      const double dp = std::pow(dense_norm(power, kind), 1.0 / p);
      if (!out.empty() && !(dp < out.back()))
        break;
      out.push_back(dp);
    }
    return out;
  }

  SparseMatrix<S> adj = a.adjoint();
  adj.makeCompressed();
  for (int p = 1; p <= pmax; ++p) {
    double norm;
    if (p == 1 && kind != NormKind::two) {
      norm = matrix_norm(a, kind);
    } else {
      const PowerOperator<S> op{a, adj, p};
      auto fwd = [&](const Vector<S>& x) { return op.apply(x); };
      auto bwd = [&](const Vector<S>& x) { return op.apply_adjoint(x); };
      if (kind == NormKind::one)
        norm = onenorm_estimate<S>(n, fwd, bwd);
      else if (kind == NormKind::inf)
        norm = onenorm_estimate<S>(n, bwd, fwd);
      else
        norm = twonorm_estimate<S>(n, fwd, bwd, seed + static_cast<std::uint64_t>(p));
    }
    const double dp = std::pow(norm, 1.0 / p);
    if (!out.empty() && !(dp < out.back()))
      break;
    out.push_back(dp);
  }
  return out;
}

template <class S>
double kappa1(const SparseMatrix<S>& a) {
  require_square(a, "kappa1");
  const double na = matrix_norm(a, NormKind::one);
  if (na == 0.0)
    return 0.0;
  SparseMatrix<S> adj = a.adjoint();
  const SparseMatrix<S> c = SparseMatrix<S>(a * adj) - SparseMatrix<S>(adj * a);
  return matrix_norm(c, NormKind::one) / (na * na);
}

template SparseMatrix<double> shifted_matrix(const SparseMatrix<double>&, double);
template SparseMatrix<cplx> shifted_matrix(const SparseMatrix<cplx>&, cplx);
template SpectralBox gershgorin_box(const RealSparse&);
template SpectralBox gershgorin_box(const ComplexSparse&);
template double matrix_norm(const RealSparse&, NormKind, std::uint64_t);
template double matrix_norm(const ComplexSparse&, NormKind, std::uint64_t);
template std::vector<double> d_p_sequence(const RealSparse&, int, NormKind, std::uint64_t);
template std::vector<double> d_p_sequence(const ComplexSparse&, int, NormKind, std::uint64_t);
template double kappa1(const RealSparse&);
template double kappa1(const ComplexSparse&);

} // namespace leja
