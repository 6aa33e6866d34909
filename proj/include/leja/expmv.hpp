#pragma once

#include "leja/divided_differences.hpp"
#include "leja/matrix.hpp"
#include "leja/planner.hpp"
#include "leja/spectral.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace leja {

struct ExpmvOptions {
  Tolerance tol;
  AlgorithmChoice algorithm = AlgorithmChoice::automatic;
  NormKind norm = NormKind::one;
  /// nullopt selects the point type from the spectral box.
  std::optional<PointKind> points;
  bool shift = true;
  bool early_termination = true;
  bool hump_test = true;
  /// Largest p for the d_p sequence.
  int pmax = 5;
  double epsilon = 1.0 / 50.0;
  /// Table directory; empty uses LEJA_TABLES or the compiled-in default.
  std::string table_dir;
  std::uint64_t seed = 0;
};

struct EvalReport {
  Plan plan;
  long long s_used = 0;
  int m_star = 0;
  std::vector<int> m_used;
  long long matvec_count = 0;
  std::vector<bool> early_terminated;
  std::vector<std::string> warnings;
};

/// Y <- A X for a block of columns.
template <class S>
using MatVec = std::function<void(const Block<S>& x, Block<S>& y)>;

struct NewtonOptions {
  bool early_termination = true;
  NormKind norm = NormKind::one;
};

/// One Newton sweep p = sum_j d_j prod_{i<j} (B - xi_i) v with
/// B = (A - mu I)/s, up to degree `degree`. Conjugate pairs are fused into the
/// real quadratic factor B^2 + |xi|^2, so real data stays real. With early
/// termination the sweep stops once the last two increments sum to at most
/// (tol/s)||p||; for conjugate points this is checked after completed pairs.
/// Returns the degree used; `matvecs` is incremented per operator application.
template <class S>
int newton_step(const MatVec<S>& apply_a, Block<S>& v, S mu, long long s, int degree,
                const DividedDiffTable& dd, double tol, const NewtonOptions& opts, long long& matvecs);

/// e^{tA} V by the Leja method; every column shares the plan.
template <class S>
Block<S> expmv_multi(const SparseMatrix<S>& a, const Block<S>& v, double t, const ExpmvOptions& opts,
                     EvalReport* report = nullptr);

template <class S>
Vector<S> expmv(const SparseMatrix<S>& a, const Vector<S>& v, double t, const ExpmvOptions& opts,
                EvalReport* report = nullptr);

/// phi_1(tA) w through the exponential of [[tA, w], [0, 0]] applied to e_{n+1}.
template <class S>
Vector<S> phi1(const SparseMatrix<S>& a, const Vector<S>& w, double t, const ExpmvOptions& opts,
               EvalReport* report = nullptr);

/// Spectral data and plan for e^{tA} without evaluating anything.
template <class S>
Plan plan_for(const SparseMatrix<S>& a, double t, const ExpmvOptions& opts, SpectralInfo* info = nullptr);

/// Applies a finished plan through an operator: [e^{mu/s} L(B)]^s V with the
/// interval of plan.c_index. Useful when A is only available as a product.
template <class S>
Block<S> apply_plan(const MatVec<S>& apply_a, const Block<S>& v, const Plan& plan, const DividedDiffTable& dd,
                    double tol, const NewtonOptions& opts, EvalReport* report = nullptr);

} // namespace leja
