#pragma once

#include "leja/matrix.hpp"
#include "leja/matrix_market.hpp"
#include "leja/vector_io.hpp"

#include <cstdint>
#include <map>
#include <random>
#include <string>

namespace leja {

/// Name plus numeric parameters, written "name" or "name:key=value,key=value".
struct GallerySpec {
  std::string name;
  std::map<std::string, double> params;

  static GallerySpec parse(const std::string& text);
  double get(const std::string& key, double fallback) const;
  std::string to_string() const;
};

struct GalleryProblem {
  AnyMatrix matrix;
  AnyVector vector;
};

/// Builds the named matrix with its canonical start vector. Names: lesp,
/// triw_like, triu_random, onesided, ad2d, s3d, trans1d, diag_linspace.
GalleryProblem build_gallery(const GallerySpec& spec);

/// Tridiagonal, diagonal -(5, 7, ..., 2n+3), superdiagonal 2..n,
/// subdiagonal 1/2..1/n.
RealSparse lesp(int n);
/// Constant diagonal and constant strict upper triangle.
RealSparse triw_like(int n, double diag, double upper);
/// Upper triangle (diagonal included) uniform on [lo, hi].
RealSparse triu_random(int n, std::uint64_t seed, double lo = -0.5, double hi = 0.5);
/// Upper triangular: eigenvalue 10 first, the others uniform on [-10.1, -9.9],
/// strict upper triangle uniform on [-0.5, 0.5].
RealSparse onesided(int n, std::uint64_t seed);
/// Advection-diffusion a*Laplace(u) + b(u_x + u_y) on the unit square, Dirichlet
/// boundary, N^2 interior points, centered differences, a = 1 and grid Peclet
/// number pe = |b| h / 2.
RealSparse ad2d(int n, double pe);
/// i*(ls*Laplace - ps*(x^2 + y^2 + z^2)) on N^3 interior points of the unit cube.
ComplexSparse s3d(int n, double laplacian_scale = 0.5, double potential_scale = 0.5);
/// -d/dx with periodic centered differences on n points of [0, 1).
RealSparse trans1d(int n);
RealSparse diag_linspace(double lo, double hi, int n);

/// Uniform draws on [0, 1) from mt19937_64 using the top 53 bits, so the
/// stream is identical across standard libraries.
class UniformSource {
public:
  explicit UniformSource(std::uint64_t seed) : gen_(seed) {}
  double next() { return static_cast<double>(gen_() >> 11) * 0x1p-53; }
  double next(double lo, double hi) { return lo + (hi - lo) * next(); }

private:
  std::mt19937_64 gen_;
};

} // namespace leja
