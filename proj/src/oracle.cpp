#include "leja/oracle.hpp"

#include <mutex>

namespace leja {

namespace {

std::mutex& oracle_mutex() {
  static std::mutex m;
  return m;
}

struct Entry {
  std::size_t col;
  mp::Complex value;
};

mp::Real max_abs(const std::vector<mp::Complex>& x) {
  mp::Real r = 0;
  for (const mp::Complex& z : x) {
    const mp::Real a = mp::abs(z);
    if (a > r)
      r = a;
  }
  return r;
}

} // namespace

std::vector<mp::Complex> oracle_expmv_mp(const ComplexSparse& a, const std::vector<cplx>& v, double t,
                                         unsigned digits) {
  if (a.rows() != a.cols())
    throw ParameterError("oracle: matrix must be square");
  if (a.rows() > kOracleMaxDim)
    throw ParameterError("oracle: dimension " + std::to_string(a.rows()) + " exceeds " +
                         std::to_string(kOracleMaxDim));
  if (static_cast<Eigen::Index>(v.size()) != a.rows())
    throw ParameterError("oracle: vector length does not match matrix");
  if (!std::isfinite(t))
    throw ParameterError("oracle: t must be finite");
  if (digits < 20)
    throw ParameterError("oracle: at least 20 digits required");

  std::lock_guard lock(oracle_mutex());
  mp::PrecisionScope scope(digits);
  const std::size_t n = v.size();

  // tA - mu I in extended precision, mu = mean diagonal entry.
  mp::Complex mu;
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    mu += mp::Complex(a.coeff(i, i)) * mp::Real(t);
  if (n > 0)
    mu = mu / mp::Real(static_cast<double>(n));
  std::vector<std::vector<Entry>> rows(n);
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    bool diag = false;
    for (ComplexSparse::InnerIterator it(a, i); it; ++it) {
      mp::Complex val = mp::Complex(it.value()) * mp::Real(t);
      if (it.col() == i) {
        val -= mu;
        diag = true;
      }
      rows[static_cast<std::size_t>(i)].push_back({static_cast<std::size_t>(it.col()), val});
    }
    if (!diag)
      rows[static_cast<std::size_t>(i)].push_back({static_cast<std::size_t>(i), -mu});
  }

  mp::Real norm = 0;
  for (const auto& row : rows) {
    mp::Real s = 0;
    for (const Entry& e : row)
      s += mp::abs(e.value);
    if (s > norm)
      norm = s;
  }
  // Steps with ||B||_inf <= 1/2.
  long long steps = 1;
  {
    const double nd = static_cast<double>(norm);
    if (nd > 0.5)
      steps = static_cast<long long>(std::ceil(nd / 0.5));
  }
  const mp::Real inv_steps = mp::Real(1) / mp::Real(steps);
  for (auto& row : rows)
    for (Entry& e : row)
      e.value = e.value * inv_steps;

  const mp::Real eps = boost::multiprecision::pow(mp::Real(10), -static_cast<int>(digits) - 5);
  std::vector<mp::Complex> x(n), term(n), next(n);
  for (std::size_t i = 0; i < n; ++i)
    x[i] = mp::Complex(v[i]);

  for (long long step = 0; step < steps; ++step) {
    std::vector<mp::Complex> sum = x;
    term = x;
    for (int k = 1; k < 100000; ++k) {
      const mp::Real inv_k = mp::Real(1) / mp::Real(k);
      for (std::size_t i = 0; i < n; ++i) {
        mp::Complex acc;
        for (const Entry& e : rows[i])
          acc += e.value * term[e.col];
        next[i] = acc * inv_k;
      }
      term.swap(next);
      for (std::size_t i = 0; i < n; ++i)
        sum[i] += term[i];
      const mp::Real tn = max_abs(term);
      if (tn == 0 || tn <= eps * max_abs(sum))
        break;
    }
    x.swap(sum);
  }
  const mp::Complex factor = mp::exp(mu);
  for (mp::Complex& z : x)
    z = z * factor;
  return x;
}

template <class S>
Vector<S> oracle_expmv(const SparseMatrix<S>& a, const Vector<S>& v, double t, unsigned digits) {
  ComplexSparse ac;
  if constexpr (is_complex_v<S>)
    ac = a;
  else
    ac = to_complex(a);
  std::vector<cplx> vc(static_cast<std::size_t>(v.size()));
  for (Eigen::Index i = 0; i < v.size(); ++i)
    vc[static_cast<std::size_t>(i)] = cplx(v[i]);
  const std::vector<mp::Complex> r = oracle_expmv_mp(ac, vc, t, digits);
  Vector<S> out(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if constexpr (is_complex_v<S>)
      out[i] = r[static_cast<std::size_t>(i)].to_double();
    else
      out[i] = static_cast<double>(r[static_cast<std::size_t>(i)].re);
  }
  return out;
}

template Vector<double> oracle_expmv(const RealSparse&, const Vector<double>&, double, unsigned);
template Vector<cplx> oracle_expmv(const ComplexSparse&, const Vector<cplx>&, double, unsigned);

} // namespace leja
