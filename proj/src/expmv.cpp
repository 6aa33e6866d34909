#include "leja/expmv.hpp"

#include "leja/table_file.hpp"

#include <cmath>

namespace leja {

namespace {

template <class S>
S coefficient(const cplx& z) {
  if constexpr (is_complex_v<S>)
    return z;
  else
    return z.real();
}

template <class S>
S scalar_from(const cplx& z, const char* what) {
  if constexpr (is_complex_v<S>) {
    return z;
  } else {
    if (z.imag() != 0.0)
      throw ParameterError(std::string(what) + " is complex but the matrix is real");
    return z.real();
  }
}

template <class S>
bool all_finite(const Block<S>& x) {
  return x.allFinite();
}

void check_tolerance(Tolerance tol) {
  if (!(tol.value > 0.0) || tol.value > Tolerance::half().value)
    throw ParameterError("tolerance " + format_double(tol.value) + " outside (0, 2^-10]");
}

} // namespace

template <class S>
int newton_step(const MatVec<S>& apply_a, Block<S>& v, S mu, long long s, int degree,
                const DividedDiffTable& dd, double tol, const NewtonOptions& opts, long long& matvecs) {
  if (s < 1)
    throw ParameterError("newton_step: s must be >= 1");
  if (dd.coefficients.empty())
    throw ParameterError("newton_step: empty divided-difference table");
  degree = std::min<int>(degree, static_cast<int>(dd.coefficients.size()) - 1);
  const double inv_s = 1.0 / static_cast<double>(s);
  const double threshold = tol * inv_s;
  const Eigen::Index rows = v.rows(), cols = v.cols();

  Block<S> scratch(rows, cols);
  auto apply_b = [&](const Block<S>& x, Block<S>& y, int node) {
    apply_a(x, y);
    ++matvecs;
    y = (y - mu * x) * inv_s;
    if (!all_finite(y))
      throw NumericError("overflow at Newton node " + std::to_string(node));
  };

  Block<S> p = coefficient<S>(dd.coefficients[0]) * v;
  double prev = block_norm(p, opts.norm);
  Block<S> u = v;
  int used = 0;

  if (dd.kind == PointKind::real) {
    for (int k = 1; k <= degree; ++k) {
      apply_b(u, scratch, k);
      scratch -= coefficient<S>(dd.points[static_cast<std::size_t>(k - 1)]) * u;
      u.swap(scratch);
      const Block<S> e = coefficient<S>(dd.coefficients[static_cast<std::size_t>(k)]) * u;
      p += e;
      used = k;
      const double cur = block_norm(e, opts.norm);
      if (opts.early_termination && cur + prev <= threshold * block_norm(p, opts.norm))
        break;
      if (u.isZero(0.0))
        break;
      prev = cur;
    }
  } else {
    if (degree % 2 != 0)
      --degree;
    if (degree >= 2) {
      apply_b(u, scratch, 1);
      u.swap(scratch);
      used = 1;
    }
    Block<S> q(rows, cols);
    double y_prev = 0.0;
    for (int k = 1; 2 * k <= degree && !u.isZero(0.0); ++k) {
      const std::size_t j = static_cast<std::size_t>(2 * k - 1);
      const double y = dd.points[j].imag();
      if (k > 1) {
        apply_b(q, scratch, 2 * k - 1);
        u = scratch + (y_prev * y_prev) * u;
      }
      apply_b(u, q, 2 * k);
      const double alpha = (dd.coefficients[j] - cplx(0.0, y) * dd.coefficients[j + 1]).real();
      const double beta = dd.coefficients[j + 1].real();
      const Block<S> e = S(alpha) * u + S(beta) * q;
      p += e;
      used = 2 * k;
      y_prev = y;
      const double cur = block_norm(e, opts.norm);
      if (opts.early_termination && cur + prev <= threshold * block_norm(p, opts.norm))
        break;
      prev = cur;
    }
  }
  if (!all_finite(p))
    throw NumericError("overflow in Newton sum after degree " + std::to_string(used));
  v = std::move(p);
  return used;
}

template <class S>
Block<S> apply_plan(const MatVec<S>& apply_a, const Block<S>& v, const Plan& plan, const DividedDiffTable& dd,
                    double tol, const NewtonOptions& opts, EvalReport* report) {
  const S mu = scalar_from<S>(plan.shift, "shift");
  const long long s = plan.s_star;
  const S factor = std::exp(mu / static_cast<double>(s));
  Block<S> x = v;
  EvalReport local;
  local.plan = plan;
  local.m_star = plan.m_star;
  local.warnings = plan.warnings;
  for (long long i = 1; i <= s; ++i) {
    int used = 0;
    try {
      used = newton_step(apply_a, x, mu, s, plan.m_star, dd, tol, opts, local.matvec_count);
    } catch (const NumericError& e) {
      throw NumericError(std::string(e.what()) + " in scaling step " + std::to_string(i) + " of " +
                         std::to_string(s) + "; retry without --no-shift or with a smaller t");
    }
    x *= factor;
    if (!x.allFinite())
      throw NumericError("overflow after scaling step " + std::to_string(i) + " of " + std::to_string(s));
    local.m_used.push_back(used);
    local.early_terminated.push_back(used < plan.m_star);
  }
  local.s_used = s;
  if (report)
    *report = std::move(local);
  return x;
}

namespace {

template <class S>
struct Prepared {
  SparseMatrix<S> ta;
  Plan plan;
  const TableSet* tables = nullptr;
};

template <class S>
Prepared<S> prepare(const SparseMatrix<S>& a, double t, const ExpmvOptions& opts, SpectralInfo* info) {
  check_tolerance(opts.tol);
  if (a.rows() != a.cols())
    throw ParameterError("matrix is " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                         ", expected square");
  if (!std::isfinite(t))
    throw ParameterError("t must be finite");

  Prepared<S> out;
  out.ta = t * a;
  out.ta.makeCompressed();
  const SpectralBox box = gershgorin_box(out.ta);
  cplx mu = opts.shift ? shift_of(box) : cplx(0.0);
  if constexpr (!is_complex_v<S>)
    mu = {mu.real(), 0.0};
  const SpectralBox centered = box.shifted(mu);
  const PointKind kind = opts.points.value_or(select_point_type(box));
  out.tables = &load_tables(resolve_table_dir(opts.table_dir), opts.tol, kind);

  const SparseMatrix<S> shifted = shifted_matrix(out.ta, scalar_from<S>(mu, "shift"));
  const double norm = matrix_norm(shifted, opts.norm, opts.seed);

  Plan plan;
  switch (opts.algorithm) {
  case AlgorithmChoice::circle:
    plan = plan_circle(norm, out.tables->theta);
    break;
  case AlgorithmChoice::ellipse:
    plan = plan_ellipse(centered, out.tables->families, out.tables->theta, opts.epsilon);
    if (plan.shape == Shape::none) {
      plan = plan_circle(norm, out.tables->theta);
      plan.warnings.push_back("no ellipse family fits the spectral box; using the norm-based plan");
    }
    break;
  case AlgorithmChoice::automatic:
    plan = plan_auto(norm, centered, out.tables->theta, out.tables->families, opts.epsilon);
    break;
  }
  plan.shift = mu;
  plan.norm_used = opts.norm;
  plan.norm_value = norm;

  std::vector<double> dps;
  if (opts.hump_test) {
    dps = d_p_sequence(shifted, opts.pmax, opts.norm, opts.seed);
    plan = hump_reduce(plan, dps, out.tables->theta, out.tables->families, centered, opts.epsilon);
  }
  out.plan = std::move(plan);
  if (info) {
    info->box = box;
    info->shift = mu;
    info->norms[opts.norm] = norm;
    info->dps = std::move(dps);
  }
  return out;
}

} // namespace

template <class S>
Plan plan_for(const SparseMatrix<S>& a, double t, const ExpmvOptions& opts, SpectralInfo* info) {
  return prepare(a, t, opts, info).plan;
}

template <class S>
Block<S> expmv_multi(const SparseMatrix<S>& a, const Block<S>& v, double t, const ExpmvOptions& opts,
                     EvalReport* report) {
  if (v.rows() != a.rows())
    throw ParameterError("vector length " + std::to_string(v.rows()) + " does not match matrix size " +
                         std::to_string(a.rows()));
  if (t == 0.0 || v.cols() == 0 || a.rows() == 0) {
    check_tolerance(opts.tol);
    if (a.rows() != a.cols())
      throw ParameterError("matrix must be square");
    if (report) {
      *report = EvalReport{};
      report->s_used = 1;
      report->m_used = {0};
      report->early_terminated = {true};
    }
    return v;
  }
  Prepared<S> prep = prepare(a, t, opts, nullptr);
  const auto it = prep.tables->dd.find(prep.plan.c_index);
  if (it == prep.tables->dd.end())
    throw TableError("no divided differences stored for interval index " + std::to_string(prep.plan.c_index));
  const SparseMatrix<S>& ta = prep.ta;
  const MatVec<S> apply = [&ta](const Block<S>& x, Block<S>& y) { y.noalias() = ta * x; };
  return apply_plan(apply, v, prep.plan, it->second, opts.tol.value,
                    NewtonOptions{opts.early_termination, opts.norm}, report);
}

template <class S>
Vector<S> expmv(const SparseMatrix<S>& a, const Vector<S>& v, double t, const ExpmvOptions& opts,
                EvalReport* report) {
  const Block<S> out = expmv_multi(a, Block<S>(v), t, opts, report);
  return out.col(0);
}

template <class S>
Vector<S> phi1(const SparseMatrix<S>& a, const Vector<S>& w, double t, const ExpmvOptions& opts,
               EvalReport* report) {
  if (a.rows() != a.cols())
    throw ParameterError("matrix must be square");
  if (w.size() != a.rows())
    throw ParameterError("vector length " + std::to_string(w.size()) + " does not match matrix size " +
                         std::to_string(a.rows()));
  if (!std::isfinite(t))
    throw ParameterError("t must be finite");
  const Eigen::Index n = a.rows();
  std::vector<Eigen::Triplet<S>> trip;
  trip.reserve(static_cast<std::size_t>(a.nonZeros() + n));
  for (Eigen::Index i = 0; i < n; ++i) {
    for (typename SparseMatrix<S>::InnerIterator it(a, i); it; ++it)
      trip.emplace_back(i, it.col(), t * it.value());
    if (w[i] != S(0))
      trip.emplace_back(i, n, w[i]);
  }
  SparseMatrix<S> aug(n + 1, n + 1);
  aug.setFromTriplets(trip.begin(), trip.end());
  Vector<S> e = Vector<S>::Zero(n + 1);
  e[n] = S(1.0);
  const Vector<S> r = expmv(aug, e, 1.0, opts, report);
  return r.head(n);
}

template int newton_step(const MatVec<double>&, Block<double>&, double, long long, int, const DividedDiffTable&,
                         double, const NewtonOptions&, long long&);
template int newton_step(const MatVec<cplx>&, Block<cplx>&, cplx, long long, int, const DividedDiffTable&,
                         double, const NewtonOptions&, long long&);
template Block<double> apply_plan(const MatVec<double>&, const Block<double>&, const Plan&,
                                  const DividedDiffTable&, double, const NewtonOptions&, EvalReport*);
template Block<cplx> apply_plan(const MatVec<cplx>&, const Block<cplx>&, const Plan&, const DividedDiffTable&,
                                double, const NewtonOptions&, EvalReport*);
template Plan plan_for(const RealSparse&, double, const ExpmvOptions&, SpectralInfo*);
template Plan plan_for(const ComplexSparse&, double, const ExpmvOptions&, SpectralInfo*);
template Block<double> expmv_multi(const RealSparse&, const Block<double>&, double, const ExpmvOptions&,
                                   EvalReport*);
template Block<cplx> expmv_multi(const ComplexSparse&, const Block<cplx>&, double, const ExpmvOptions&,
                                 EvalReport*);
template Vector<double> expmv(const RealSparse&, const Vector<double>&, double, const ExpmvOptions&, EvalReport*);
template Vector<cplx> expmv(const ComplexSparse&, const Vector<cplx>&, double, const ExpmvOptions&, EvalReport*);
template Vector<double> phi1(const RealSparse&, const Vector<double>&, double, const ExpmvOptions&, EvalReport*);
template Vector<cplx> phi1(const ComplexSparse&, const Vector<cplx>&, double, const ExpmvOptions&, EvalReport*);

} // namespace leja
