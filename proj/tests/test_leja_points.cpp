#include "leja/leja_points.hpp"

#include <doctest.h>

#include <cmath>
#include <sstream>

using namespace leja;

namespace {

double log_product(std::span<const cplx> pts, std::size_t k, cplx z) {
  double s = 0.0;
  for (std::size_t i = 0; i < k; ++i)
    s += std::log(std::abs(z - pts[i]));
  return s;
}

} // namespace

TEST_SUITE("leja_points") {

TEST_CASE("real sequence starts -2, 2, 0, 2/sqrt(3)") {
  const auto seq = generate_real_leja(6, kMinMeshSize);
  REQUIRE(seq.size() == 6);
  CHECK(seq.reference_points[0] == cplx(-2.0));
  CHECK(seq.reference_points[1] == cplx(2.0));
  CHECK(seq.reference_points[2] == cplx(0.0));
  CHECK(seq.reference_points[3].real() == doctest::Approx(2.0 / std::sqrt(3.0)).epsilon(1e-13));
  for (const auto& z : seq.reference_points)
    CHECK(z.imag() == 0.0);
}

TEST_CASE("conjugate sequence starts 0, 2i, -2i and comes in pairs") {
  const auto seq = generate_conjugate_leja(11, kMinMeshSize);
  REQUIRE(seq.size() == 11);
  CHECK(seq.reference_points[0] == cplx(0.0));
  CHECK(seq.reference_points[1] == cplx(0.0, 2.0));
  CHECK(seq.reference_points[2] == cplx(0.0, -2.0));
  for (std::size_t k = 1; k + 1 < seq.size(); k += 2) {
    CHECK(seq.reference_points[k].real() == 0.0);
    CHECK(seq.reference_points[k].imag() > 0.0);
    CHECK(seq.reference_points[k + 1] == std::conj(seq.reference_points[k]));
  }
}

TEST_CASE("each point maximizes the product of distances on a brute-force mesh") {
  const auto seq = generate_real_leja(25, kMinMeshSize);
  const std::span<const cplx> pts(seq.reference_points);
  const int mesh = 200001;
  for (std::size_t k = 1; k < seq.size(); ++k) {
    double best = -INFINITY;
    for (int i = 0; i < mesh; ++i) {
      const double x = -2.0 + 4.0 * i / (mesh - 1);
      best = std::max(best, log_product(pts, k, x));
    }
    CHECK(log_product(pts, k, pts[k]) >= best - 1e-9);
  }
}

TEST_CASE("scaling") {
  const auto seq = generate_real_leja(5, kMinMeshSize);
  const auto p = scale(seq, 3.0);
  CHECK(p[0] == cplx(-3.0));
  CHECK(p[1] == cplx(3.0));
  for (const auto& z : scale(seq, 0.0))
    CHECK(z == cplx(0.0));
}

TEST_CASE("text round trip is exact") {
  const auto seq = generate_conjugate_leja(9, kMinMeshSize);
  std::stringstream ss;
  write_leja(ss, seq);
  const auto back = read_leja(ss);
  CHECK(back.kind == PointKind::conjugate);
  REQUIRE(back.size() == seq.size());
  for (std::size_t i = 0; i < seq.size(); ++i)
    CHECK(back.reference_points[i] == seq.reference_points[i]);
}

TEST_CASE("invalid requests") {
  CHECK_THROWS_AS(generate_real_leja(5, 1000), ParameterError);
  std::stringstream bad("leja real 3\n0 0\n1 x\n");
  CHECK_THROWS_AS(read_leja(bad), ParseError);
}

}
