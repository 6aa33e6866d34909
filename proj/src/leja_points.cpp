#include "leja/leja_points.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>

namespace leja {

namespace {

// Uniform mesh on [-2,2] with an odd number of nodes; x(N-1-i) == -x(i) exactly
// and the midpoint is exactly zero.
class Mesh {
public:
  explicit Mesh(std::size_t n) : n_(n | 1u), denom_(static_cast<double>(n_ - 1)) {}

  std::size_t size() const noexcept { return n_; }
  double operator[](std::size_t i) const noexcept {
    return 2.0 * (2.0 * static_cast<double>(i) - denom_) / denom_;
  }

private:
  std::size_t n_;
  double denom_;
};

// Relative slack under which two mesh maxima count as a tie.
constexpr double kTieSlack = 1e-9;

// Index of the local maximum of the rightmost near-maximal peak.
std::size_t rightmost_peak(const std::vector<double>& prod) {
  const double best = *std::max_element(prod.begin(), prod.end());
  std::size_t i = prod.size() - 1;
  while (prod[i] < best * (1.0 - kTieSlack))
    --i;
  while (i > 0 && prod[i - 1] > prod[i])
    --i;
  return i;
}

// d/dx log prod_j |x - node_j| for real nodes.
double log_derivative(double x, const std::vector<double>& nodes) {
  double g = 0.0;
  for (double z : nodes)
    g += 1.0 / (x - z);
  return g;
}

// Refines a coarse interior maximum by bisection on the log-derivative within
// the two adjacent mesh cells. Boundary maxima stay on the boundary.
double refine(const Mesh& mesh, std::size_t i, const std::vector<double>& nodes) {
  if (i == 0 || i + 1 == mesh.size())
    return mesh[i];
  double lo = mesh[i - 1];
  double hi = mesh[i + 1];
  if (std::any_of(nodes.begin(), nodes.end(), [&](double z) { return z >= lo && z <= hi; }))
    return mesh[i];
  double glo = log_derivative(lo, nodes);
  const double ghi = log_derivative(hi, nodes);
  if (!(glo > 0.0 && ghi < 0.0))
    return mesh[i];
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi)
      break;
    const double gm = log_derivative(mid, nodes);
    if (gm == 0.0)
      return mid;
    if ((gm > 0.0) == (glo > 0.0)) {
      lo = mid;
      glo = gm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

void check_count(std::size_t count) {
  if (count == 0)
    throw ParameterError("Leja sequence needs at least one point");
  if (count > kMaxGeneratedPoints)
    throw ParameterError("Leja sequence capped at " + std::to_string(kMaxGeneratedPoints) +
                         " points, requested " + std::to_string(count));
}

void check_mesh(std::size_t mesh_size) {
  if (mesh_size < kMinMeshSize)
    throw ParameterError("candidate mesh too coarse: " + std::to_string(mesh_size) + " < " +
                         std::to_string(kMinMeshSize));
}

void multiply_distance(std::vector<double>& prod, const Mesh& mesh, double node) {
  for (std::size_t i = 0; i < prod.size(); ++i)
    prod[i] *= std::abs(mesh[i] - node);
}

void check_finite(const std::vector<double>& prod, std::size_t step) {
  const double best = *std::max_element(prod.begin(), prod.end());
  if (!std::isfinite(best))
    throw NumericError("Leja product overflowed at step " + std::to_string(step));
}

} // namespace

std::span<const cplx> LejaSequence::first(std::size_t n) const {
  if (n > reference_points.size())
    throw ParameterError("requested " + std::to_string(n) + " Leja points, sequence has " +
                         std::to_string(reference_points.size()));
  return std::span<const cplx>(reference_points).first(n);
}

LejaSequence generate_real_leja(std::size_t count, std::size_t mesh_size) {
  check_count(count);
  check_mesh(mesh_size);
  const Mesh mesh(mesh_size);

  std::vector<double> nodes{-2.0};
  std::vector<double> prod(mesh.size(), 1.0);
  multiply_distance(prod, mesh, -2.0);
  while (nodes.size() < count) {
    check_finite(prod, nodes.size());
    const double next = refine(mesh, rightmost_peak(prod), nodes);
    nodes.push_back(next);
    multiply_distance(prod, mesh, next);
  }

  LejaSequence seq;
  seq.kind = PointKind::real;
  seq.reference_points.assign(nodes.begin(), nodes.end());
  return seq;
}

LejaSequence generate_conjugate_leja(std::size_t count, std::size_t mesh_size) {
  check_count(count);
  check_mesh(mesh_size);
  const Mesh mesh(mesh_size);

  // |iy - i y_j| = |y - y_j|, so the search runs on the imaginary parts.
  std::vector<double> nodes{0.0};
  std::vector<double> prod(mesh.size(), 1.0);
  multiply_distance(prod, mesh, 0.0);
  while (nodes.size() < count) {
    check_finite(prod, nodes.size());
    const double next = refine(mesh, rightmost_peak(prod), nodes);
    nodes.push_back(next);
    nodes.push_back(-next);
    multiply_distance(prod, mesh, next);
    multiply_distance(prod, mesh, -next);
  }
  nodes.resize(count);

  LejaSequence seq;
  seq.kind = PointKind::conjugate;
  seq.reference_points.reserve(count);
  for (double y : nodes)
    seq.reference_points.emplace_back(0.0, y);
  return seq;
}

std::vector<cplx> scale(std::span<const cplx> reference_points, double c) {
  if (!(c >= 0.0) || !std::isfinite(c))
    throw ParameterError("interval half-width must be finite and nonnegative");
  std::vector<cplx> out;
  out.reserve(reference_points.size());
  const double factor = c / 2.0;
  for (const cplx& z : reference_points)
    out.emplace_back(z.real() * factor, z.imag() * factor);
  return out;
}

std::vector<cplx> scale(const LejaSequence& seq, double c) {
  return scale(std::span<const cplx>(seq.reference_points), c);
}

void write_leja(std::ostream& os, const LejaSequence& seq) {
  os << "leja " << to_string(seq.kind) << ' ' << seq.size() << '\n';
  for (const cplx& z : seq.reference_points)
    os << format_double(z.real()) << ' ' << format_double(z.imag()) << '\n';
}

LejaSequence read_leja(std::istream& is) {
  std::size_t line_no = 0;
  std::string line;
  auto next_line = [&]() -> std::string& {
    if (!std::getline(is, line))
      throw ParseError("unexpected end of Leja dump", line_no + 1);
    ++line_no;
    return line;
  };

  std::istringstream header(next_line());
  std::string tag, kind;
  std::size_t count = 0;
  if (!(header >> tag >> kind >> count) || tag != "leja")
    throw ParseError("expected 'leja <kind> <count>'", line_no);

  LejaSequence seq;
  try {
    seq.kind = point_kind_from_string(kind);
  } catch (const ParameterError& e) {
    throw ParseError(e.what(), line_no);
  }
  if (count > kMaxGeneratedPoints)
    throw ParseError("too many Leja points", line_no);
  for (std::size_t k = 0; k < count; ++k) {
    std::istringstream ls(next_line());
    double re = 0.0, im = 0.0;
    if (!(ls >> re >> im))
      throw ParseError("expected 're im'", line_no);
    seq.reference_points.emplace_back(re, im);
  }
  return seq;
}

} // namespace leja
