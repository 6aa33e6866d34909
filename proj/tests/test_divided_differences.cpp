#include "leja/divided_differences.hpp"
#include "leja/leja_points.hpp"
#include "leja/multiprecision.hpp"

#include <doctest.h>

#include <cmath>

using namespace leja;

TEST_SUITE("divided_differences") {

TEST_CASE("all points at zero give the Taylor coefficients") {
  const std::vector<cplx> z(20, cplx(0.0));
  const auto dd = dd_exp(z);
  double fact = 1.0;
  for (std::size_t j = 0; j < z.size(); ++j) {
    if (j > 0)
      fact *= static_cast<double>(j);
    CHECK(std::abs(dd.coefficients[j] - 1.0 / fact) <= 1e-15 / fact);
  }
}

TEST_CASE("agrees with the classical recurrence in extended precision") {
  const auto real_seq = generate_real_leja(60, kMinMeshSize);
  const auto conj_seq = generate_conjugate_leja(61, kMinMeshSize);
  for (const LejaSequence* seq : {&real_seq, &conj_seq})
    for (double c : {0.5, 3.0, 9.0}) {
      CAPTURE(c);
      const auto pts = scale(*seq, c);
      const auto dd = dd_exp(pts);
      mp::PrecisionScope prec(200);
      const auto mpts = mp::to_mp(pts);
      const auto ref = mp::divided_differences_exp(mpts);
      for (std::size_t j = 0; j < pts.size(); ++j) {
        const cplx r = ref[j].to_double();
        CHECK(std::abs(dd.coefficients[j] - r) <= 1e-12 * std::abs(r) + 1e-300);
      }
    }
}

TEST_CASE("Newton form reproduces exp at the nodes") {
  const auto seq = generate_real_leja(41, kMinMeshSize);
  const auto dd = dd_exp(scale(seq, 6.0));
  const double scale_max = std::exp(6.0);
  for (std::size_t k = 0; k < dd.points.size(); ++k) {
    const cplx z = dd.points[k];
    CHECK(std::abs(newton_eval(dd, z, dd.points.size()) - std::exp(z)) <= 1e-12 * scale_max);
  }
}

TEST_CASE("kind and half-width are inferred") {
  const auto seq = generate_conjugate_leja(7, kMinMeshSize);
  const auto dd = dd_exp(scale(seq, 2.5));
  CHECK(dd.kind == PointKind::conjugate);
  CHECK(dd.interval_halfwidth == doctest::Approx(2.5));
}

TEST_CASE("invalid input") {
  CHECK_THROWS_AS(dd_exp(std::vector<cplx>{}), ParameterError);
  CHECK_THROWS_AS(dd_exp(std::vector<cplx>{cplx(NAN)}), ParameterError);
}

}
