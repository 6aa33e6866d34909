#include "leja/gallery.hpp"

#include <cmath>
#include <sstream>
#include <vector>

namespace leja {

GallerySpec GallerySpec::parse(const std::string& text) {
  GallerySpec spec;
  const auto colon = text.find(':');
  spec.name = text.substr(0, colon);
  if (spec.name.empty())
    throw ParameterError("empty gallery name in '" + text + "'");
  if (colon == std::string::npos)
    return spec;
  std::istringstream rest(text.substr(colon + 1));
  std::string item;
  while (std::getline(rest, item, ',')) {
    if (item.empty())
      continue;
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0)
      throw ParameterError("gallery parameter '" + item + "' is not key=value");
    const std::string key = item.substr(0, eq);
    const std::string val = item.substr(eq + 1);
    std::size_t used = 0;
    double x = 0.0;
    try {
      x = std::stod(val, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != val.size())
      throw ParameterError("gallery parameter '" + key + "' has non-numeric value '" + val + "'");
    spec.params[key] = x;
  }
  return spec;
}

double GallerySpec::get(const std::string& key, double fallback) const {
  const auto it = params.find(key);
  return it == params.end() ? fallback : it->second;
}

std::string GallerySpec::to_string() const {
  std::string out = name;
  char sep = ':';
  for (const auto& [k, v] : params) {
    out += sep + k + "=" + format_double(v);
    sep = ',';
  }
  return out;
}

namespace {

int positive_int(const GallerySpec& spec, const std::string& key, double fallback) {
  const double x = spec.get(key, fallback);
  if (!(x >= 1.0) || x != std::floor(x) || x > 1e8)
    throw ParameterError(spec.name + ": '" + key + "' must be a positive integer");
  return static_cast<int>(x);
}

std::uint64_t seed_of(const GallerySpec& spec) {
  const double x = spec.get("seed", 0.0);
  if (!(x >= 0.0) || x != std::floor(x))
    throw ParameterError(spec.name + ": seed must be a nonnegative integer");
  return static_cast<std::uint64_t>(x);
}

template <class S>
SparseMatrix<S> from_triplets(Eigen::Index n, std::vector<Eigen::Triplet<S>>& trip) {
  SparseMatrix<S> m(n, n);
  m.setFromTriplets(trip.begin(), trip.end());
  m.makeCompressed();
  return m;
}

Vector<double> cos_vector(Eigen::Index n) {
  Vector<double> v(n);
  for (Eigen::Index i = 0; i < n; ++i)
    v[i] = std::cos(static_cast<double>(i + 1));
  return v;
}

double bump(double x) { return x * x * (1.0 - x) * (1.0 - x); }

} // namespace

RealSparse lesp(int n) {
  if (n < 1)
    throw ParameterError("lesp: n must be >= 1");
  std::vector<Eigen::Triplet<double>> trip;
  for (int i = 0; i < n; ++i) {
    trip.emplace_back(i, i, -(2.0 * (i + 1) + 3.0));
    if (i + 1 < n) {
      trip.emplace_back(i, i + 1, static_cast<double>(i + 2));
      trip.emplace_back(i + 1, i, 1.0 / static_cast<double>(i + 2));
    }
  }
  return from_triplets<double>(n, trip);
}

RealSparse triw_like(int n, double diag, double upper) {
  if (n < 1)
    throw ParameterError("triw_like: n must be >= 1");
  std::vector<Eigen::Triplet<double>> trip;
  for (int i = 0; i < n; ++i) {
    trip.emplace_back(i, i, diag);
    if (upper != 0.0)
      for (int j = i + 1; j < n; ++j)
        trip.emplace_back(i, j, upper);
  }
  return from_triplets<double>(n, trip);
}

RealSparse triu_random(int n, std::uint64_t seed, double lo, double hi) {
  if (n < 1)
    throw ParameterError("triu_random: n must be >= 1");
  UniformSource rng(seed);
  std::vector<Eigen::Triplet<double>> trip;
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j)
      trip.emplace_back(i, j, rng.next(lo, hi));
  return from_triplets<double>(n, trip);
}

RealSparse onesided(int n, std::uint64_t seed) {
  if (n < 1)
    throw ParameterError("onesided: n must be >= 1");
  UniformSource rng(seed);
  std::vector<Eigen::Triplet<double>> trip;
  for (int i = 0; i < n; ++i) {
    trip.emplace_back(i, i, i == 0 ? 10.0 : rng.next(-10.1, -9.9));
    for (int j = i + 1; j < n; ++j)
      trip.emplace_back(i, j, rng.next(-0.5, 0.5));
  }
  return from_triplets<double>(n, trip);
}

RealSparse ad2d(int n, double pe) {
  if (n < 1)
    throw ParameterError("ad2d: N must be >= 1");
  if (!std::isfinite(pe))
    throw ParameterError("ad2d: Pe must be finite");
  const double h = 1.0 / (n + 1);
  const double d = 1.0 / (h * h);
  // b/(2h) with b = 2 Pe/h.
  const double adv = pe * d;
  std::vector<Eigen::Triplet<double>> trip;
  auto idx = [n](int i, int j) { return j * n + i; };
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      const int r = idx(i, j);
      trip.emplace_back(r, r, -4.0 * d);
      if (i + 1 < n)
        trip.emplace_back(r, idx(i + 1, j), d + adv);
      if (i > 0)
        trip.emplace_back(r, idx(i - 1, j), d - adv);
      if (j + 1 < n)
        trip.emplace_back(r, idx(i, j + 1), d + adv);
      if (j > 0)
        trip.emplace_back(r, idx(i, j - 1), d - adv);
    }
  return from_triplets<double>(static_cast<Eigen::Index>(n) * n, trip);
}

ComplexSparse s3d(int n, double laplacian_scale, double potential_scale) {
  if (n < 1)
    throw ParameterError("s3d: N must be >= 1");
  const double h = 1.0 / (n + 1);
  const double d = laplacian_scale / (h * h);
  const cplx i1(0.0, 1.0);
  std::vector<Eigen::Triplet<cplx>> trip;
  auto idx = [n](int i, int j, int k) { return (static_cast<Eigen::Index>(k) * n + j) * n + i; };
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) {
        const Eigen::Index r = idx(i, j, k);
        const double x = (i + 1) * h, y = (j + 1) * h, z = (k + 1) * h;
        const double pot = potential_scale * (x * x + y * y + z * z);
        trip.emplace_back(r, r, i1 * (-6.0 * d - pot));
        if (i > 0)
          trip.emplace_back(r, idx(i - 1, j, k), i1 * d);
        if (i + 1 < n)
          trip.emplace_back(r, idx(i + 1, j, k), i1 * d);
        if (j > 0)
          trip.emplace_back(r, idx(i, j - 1, k), i1 * d);
        if (j + 1 < n)
          trip.emplace_back(r, idx(i, j + 1, k), i1 * d);
        if (k > 0)
          trip.emplace_back(r, idx(i, j, k - 1), i1 * d);
        if (k + 1 < n)
          trip.emplace_back(r, idx(i, j, k + 1), i1 * d);
      }
  return from_triplets<cplx>(static_cast<Eigen::Index>(n) * n * n, trip);
}

RealSparse trans1d(int n) {
  if (n < 3)
    throw ParameterError("trans1d: n must be >= 3");
  const double c = n / 2.0;
  std::vector<Eigen::Triplet<double>> trip;
  for (int i = 0; i < n; ++i) {
    trip.emplace_back(i, (i + 1) % n, -c);
    trip.emplace_back(i, (i + n - 1) % n, c);
  }
  return from_triplets<double>(n, trip);
}

RealSparse diag_linspace(double lo, double hi, int n) {
  if (n < 1)
    throw ParameterError("diag_linspace: n must be >= 1");
  std::vector<Eigen::Triplet<double>> trip;
  for (int i = 0; i < n; ++i) {
    const double x = n == 1 ? lo : lo + (hi - lo) * i / (n - 1);
    trip.emplace_back(i, i, x);
  }
  return from_triplets<double>(n, trip);
}

GalleryProblem build_gallery(const GallerySpec& spec) {
  const std::string& name = spec.name;
  if (name == "lesp") {
    const int n = positive_int(spec, "n", 10);
    Vector<double> v(n);
    for (int i = 0; i < n; ++i)
      v[i] = i + 1.0;
    return {lesp(n), v};
  }
  if (name == "triw_like" || name == "triw") {
    const int n = positive_int(spec, "n", 20);
    return {triw_like(n, spec.get("diag", -0.5), spec.get("upper", -2.0)), cos_vector(n)};
  }
  if (name == "triu_random" || name == "triu") {
    const int n = positive_int(spec, "n", 2000);
    return {triu_random(n, seed_of(spec), spec.get("lo", -0.5), spec.get("hi", 0.5)), cos_vector(n)};
  }
  if (name == "onesided") {
    const int n = positive_int(spec, "n", 41);
    return {onesided(n, seed_of(spec)), cos_vector(n)};
  }
  if (name == "ad2d") {
    const int n = positive_int(spec, "N", 20);
    const double h = 1.0 / (n + 1);
    Vector<double> v(static_cast<Eigen::Index>(n) * n);
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i)
        v[j * n + i] = 256.0 * bump((i + 1) * h) * bump((j + 1) * h);
    return {ad2d(n, spec.get("Pe", 0.0)), v};
  }
  if (name == "s3d") {
    const int n = positive_int(spec, "N", 30);
    const double h = 1.0 / (n + 1);
    Vector<cplx> v(static_cast<Eigen::Index>(n) * n * n);
    for (int k = 0; k < n; ++k)
      for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i)
          v[(static_cast<Eigen::Index>(k) * n + j) * n + i] =
              4096.0 * bump((i + 1) * h) * bump((j + 1) * h) * bump((k + 1) * h);
    return {s3d(n, spec.get("ls", 0.5), spec.get("ps", 0.5)), v};
  }
  if (name == "trans1d") {
    const int n = positive_int(spec, "n", 1000);
    Vector<double> v(n);
    for (int i = 0; i < n; ++i) {
      const double x = static_cast<double>(i) / n - 0.5;
      v[i] = std::exp(-100.0 * x * x);
    }
    return {trans1d(n), v};
  }
  if (name == "diag_linspace") {
    const int n = positive_int(spec, "n", 10);
    return {diag_linspace(spec.get("lo", -10.0), spec.get("hi", 10.0), n), Vector<double>(Vector<double>::Ones(n))};
  }
  throw ParameterError("unknown gallery matrix '" + name +
                       "' (lesp, triw_like, triu_random, onesided, ad2d, s3d, trans1d, diag_linspace)");
}

} // namespace leja
