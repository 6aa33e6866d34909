#include "leja/expmv.hpp"
#include "leja/gallery.hpp"
#include "leja/oracle.hpp"
#include "leja/table_file.hpp"

#include <doctest.h>

#include <cmath>

using namespace leja;

namespace {

const TableSet& real_double() { return load_tables(resolve_table_dir(), Tolerance::dbl(), PointKind::real); }

double rel(const Eigen::Ref<const Eigen::VectorXcd>& y, const Eigen::Ref<const Eigen::VectorXcd>& ref) {
  return (y - ref).norm() / ref.norm();
}

Vector<double> diag_exp(const RealSparse& a, const Vector<double>& v, double t) {
  Vector<double> y(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i)
    y[i] = std::exp(t * a.coeff(i, i)) * v[i];
  return y;
}

// -2I plus a scaled random matrix; well conditioned for exp and its inverse.
RealSparse well_conditioned(int n, std::uint64_t seed) {
  UniformSource rng(seed);
  std::vector<Eigen::Triplet<double>> trip;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      trip.emplace_back(i, j, rng.next(-1.0, 1.0) / std::sqrt(n) - (i == j ? 2.0 : 0.0));
  RealSparse a(n, n);
  a.setFromTriplets(trip.begin(), trip.end());
  return a;
}

MatVec<double> product(const RealSparse& a) {
  return [&a](const Block<double>& x, Block<double>& y) { y.noalias() = a * x; };
}

// Relative error of every partial Newton sum on a diagonal matrix.
std::vector<double> partial_errors(const Vector<double>& d, double c) {
  const auto dd = dd_exp(scale(real_double().seq, c));
  std::vector<double> err;
  Vector<double> p = Vector<double>::Zero(d.size());
  Vector<double> w = Vector<double>::Ones(d.size());
  Vector<double> exact = d.array().exp();
  for (std::size_t k = 0; k <= kMaxDegree; ++k) {
    p += dd.coefficients[k].real() * w;
    err.push_back((p - exact).norm() / exact.norm());
    w = w.cwiseProduct(d - Vector<double>::Constant(d.size(), dd.points[k].real()));
  }
  return err;
}

} // namespace

TEST_SUITE("expmv") {

TEST_CASE("t = 0 returns v") {
  const RealSparse a = lesp(6);
  const Vector<double> v = Vector<double>::LinSpaced(6, 1, 6);
  EvalReport rep;
  const Vector<double> y = expmv(a, v, 0.0, ExpmvOptions{}, &rep);
  CHECK(y == v);
  CHECK(rep.s_used == 1);
  CHECK(rep.matvec_count == 0);
}

TEST_CASE("A = 0 with the c = 0 table stops after the first term") {
  const RealSparse a(5, 5);
  Block<double> v = Block<double>::Random(5, 2);
  const Block<double> v0 = v;
  long long mv = 0;
  const int used = newton_step(product(a), v, 0.0, 1, 40, real_double().dd.at(0), 0x1p-53, NewtonOptions{}, mv);
  CHECK(v == v0);
  CHECK(used == 1);
  CHECK(mv == 1);
}

TEST_CASE("diag(linspace(-10,10,10)) at c = 10.6 converges without hump") {
  const RealSparse a = diag_linspace(-10, 10, 10);
  const Vector<double> v = Vector<double>::Ones(10);
  const auto dd = dd_exp(scale(real_double().seq, 10.6));
  Block<double> x = v;
  long long mv = 0;
  newton_step(product(a), x, 0.0, 1, kMaxDegree, dd, 0x1p-53, NewtonOptions{}, mv);
  const Vector<double> exact = diag_exp(a, v, 1.0);
  CHECK((x.col(0) - exact).norm() / exact.norm() <= 1e-13);

  const auto err = partial_errors(Vector<double>::LinSpaced(10, -10, 10), 10.6);
  CHECK(*std::max_element(err.begin(), err.end()) <= 10.0 * err.front());
}

TEST_CASE("the same matrix at c = 19.1 shows a hump") {
  const auto err = partial_errors(Vector<double>::LinSpaced(10, -10, 10), 19.1);
  const double peak = *std::max_element(err.begin(), err.end());
  const double final_err = err.back();
  CHECK(peak >= 1e6 * final_err);
  const auto good = partial_errors(Vector<double>::LinSpaced(10, -10, 10), 10.6);
  CHECK(final_err > 100.0 * good.back());
}

TEST_CASE("single column block equals expmv") {
  const RealSparse a = lesp(12);
  const Vector<double> v = Vector<double>::LinSpaced(12, 1, 12);
  const Vector<double> y = expmv(a, v, 2.0, ExpmvOptions{});
  const Block<double> yb = expmv_multi(a, Block<double>(v), 2.0, ExpmvOptions{});
  CHECK(yb.col(0) == y);
}

TEST_CASE("V = I gives the matrix exponential") {
  const RealSparse a = well_conditioned(8, 1);
  const Block<double> e = expmv_multi(a, Block<double>(Block<double>::Identity(8, 8)), 1.5, ExpmvOptions{});
  for (int j = 0; j < 8; ++j) {
    Vector<cplx> ej = Vector<cplx>::Zero(8);
    ej[j] = 1.0;
    const Vector<cplx> ref = oracle_expmv(to_complex(a), ej, 1.5);
    CHECK(rel(e.col(j).cast<cplx>(), ref) <= 100 * 0x1p-53);
  }
}

TEST_CASE("zero column stays zero") {
  const RealSparse a = lesp(8);
  Block<double> v = Block<double>::Zero(8, 2);
  v.col(0).setOnes();
  const Block<double> y = expmv_multi(a, v, 1.0, ExpmvOptions{});
  CHECK(y.col(1).isZero(0.0));
  CHECK(y.col(0).norm() > 0.0);
}

TEST_CASE("phi1") {
  const RealSparse z(4, 4);
  const Vector<double> w = Vector<double>::LinSpaced(4, 1, 4);
  CHECK((phi1(z, w, 1.0, ExpmvOptions{}) - w).norm() <= 1e-15 * w.norm());
  CHECK(phi1(lesp(4), Vector<double>(Vector<double>::Zero(4)), 1.0, ExpmvOptions{}).isZero(0.0));

  const RealSparse a = well_conditioned(10, 2);
  const Vector<double> w10 = Vector<double>::Ones(10);
  const Vector<double> y = phi1(a, w10, 1.0, ExpmvOptions{});
  const Vector<cplx> ew = oracle_expmv(to_complex(a), w10.cast<cplx>().eval(), 1.0);
  const Eigen::MatrixXd dense(a);
  const Vector<double> ref = dense.partialPivLu().solve(ew.real() - w10);
  CHECK((y - ref).norm() / ref.norm() <= 100 * 0x1p-53);
}

TEST_CASE("conjugate points keep real data exactly real") {
  const RealSparse a = trans1d(32);
  Vector<cplx> v(32);
  for (int i = 0; i < 32; ++i)
    v[i] = std::cos(i + 1.0);
  ExpmvOptions o;
  o.points = PointKind::conjugate;
  EvalReport rep;
  const Vector<cplx> y = expmv(to_complex(a), v, 0.3, o, &rep);
  CHECK(rep.plan.kind == PointKind::conjugate);
  for (const auto& z : y)
    CHECK(z.imag() == 0.0);
  const Vector<double> yr = expmv(a, Vector<double>(v.real()), 0.3, o);
  CHECK((yr - y.real()).norm() <= 1e-14 * yr.norm());
}

TEST_CASE("matvec accounting and degree caps") {
  const RealSparse a = ad2d(10, 0.3);
  const Vector<double> v = Vector<double>::Ones(100);
  ExpmvOptions o;
  const Plan plan = plan_for(a, 0.05, o);
  const RealSparse ta = 0.05 * a;
  long long calls = 0;
  const MatVec<double> counted = [&](const Block<double>& x, Block<double>& y) {
    ++calls;
    y.noalias() = ta * x;
  };
  EvalReport rep;
  apply_plan(counted, Block<double>(v), plan, real_double().dd.at(plan.c_index), o.tol.value, NewtonOptions{}, &rep);
  CHECK(rep.matvec_count == calls);
  long long sum = 0;
  for (int m : rep.m_used) {
    CHECK(m <= rep.m_star);
    sum += m;
  }
  CHECK(sum == calls);
  CHECK(rep.s_used == plan.s_star);
}

TEST_CASE("errors") {
  const RealSparse a = lesp(4);
  CHECK_THROWS_AS(expmv(a, Vector<double>(Vector<double>::Ones(3)), 1.0, ExpmvOptions{}), ParameterError);
  ExpmvOptions loose;
  loose.tol.value = 0.5;
  CHECK_THROWS_AS(expmv(a, Vector<double>(Vector<double>::Ones(4)), 1.0, loose), ParameterError);
  ExpmvOptions noshift;
  noshift.shift = false;
  CHECK_THROWS_AS(expmv(diag_linspace(800, 800, 2), Vector<double>(Vector<double>::Ones(2)), 1.0, noshift),
                  NumericError);
  ExpmvOptions missing;
  missing.table_dir = "/nonexistent";
  CHECK_THROWS_AS(expmv(a, Vector<double>(Vector<double>::Ones(4)), 1.0, missing), TableError);
}

}
