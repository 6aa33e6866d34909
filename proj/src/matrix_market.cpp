#include "leja/matrix_market.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace leja {

namespace {

enum class Field { real, integer, pattern, complex };
enum class Symmetry { general, symmetric, skew, hermitian };

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  return s;
}

struct Header {
  bool coordinate = true;
  Field field = Field::real;
  Symmetry symmetry = Symmetry::general;
};

Header parse_header(const std::string& line) {
  std::istringstream ls(line);
  std::string banner, object, format, field, symmetry;
  if (!(ls >> banner >> object >> format >> field >> symmetry) || banner != "%%MatrixMarket")
    throw ParseError("expected '%%MatrixMarket matrix <format> <field> <symmetry>'", 1);
  object = lower(object);
  format = lower(format);
  field = lower(field);
  symmetry = lower(symmetry);
  if (object != "matrix")
    throw ParseError("unsupported object '" + object + "'", 1);
  Header h;
  if (format == "coordinate")
    h.coordinate = true;
  else if (format == "array")
    h.coordinate = false;
  else
    throw ParseError("unsupported format '" + format + "'", 1);
  if (field == "real" || field == "double")
    h.field = Field::real;
  else if (field == "integer")
    h.field = Field::integer;
  else if (field == "pattern")
    h.field = Field::pattern;
  else if (field == "complex")
    h.field = Field::complex;
  else
    throw ParseError("unsupported field '" + field + "'", 1);
  if (symmetry == "general")
    h.symmetry = Symmetry::general;
  else if (symmetry == "symmetric")
    h.symmetry = Symmetry::symmetric;
  else if (symmetry == "skew-symmetric")
    h.symmetry = Symmetry::skew;
  else if (symmetry == "hermitian")
    h.symmetry = Symmetry::hermitian;
  else
    throw ParseError("unsupported symmetry '" + symmetry + "'", 1);
  if (h.field == Field::pattern && !h.coordinate)
    throw ParseError("pattern field requires coordinate format", 1);
  if (h.symmetry == Symmetry::hermitian && h.field != Field::complex)
    throw ParseError("hermitian storage requires the complex field", 1);
  return h;
}

bool next_data_line(std::istream& is, std::string& line, std::size_t& line_no) {
  while (std::getline(is, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '%')
      continue;
    return true;
  }
  return false;
}

cplx read_value(std::istringstream& ls, Field field, std::size_t line_no) {
  double re = 0.0, im = 0.0;
  switch (field) {
  case Field::pattern:
    return 1.0;
  case Field::real:
  case Field::integer:
    if (!(ls >> re))
      throw ParseError("missing value", line_no);
    return re;
  case Field::complex:
    if (!(ls >> re >> im))
      throw ParseError("missing real/imaginary pair", line_no);
    return {re, im};
  }
  return 0.0;
}

template <class S>
S convert(const cplx& z) {
  if constexpr (is_complex_v<S>)
    return z;
  else
    return z.real();
}

template <class S>
SparseMatrix<S> assemble(Eigen::Index rows, Eigen::Index cols, const std::vector<Eigen::Index>& ri,
                         const std::vector<Eigen::Index>& ci, const std::vector<cplx>& vals) {
  std::vector<Eigen::Triplet<S>> trip;
  trip.reserve(vals.size());
  for (std::size_t k = 0; k < vals.size(); ++k)
    trip.emplace_back(ri[k], ci[k], convert<S>(vals[k]));
  SparseMatrix<S> m(rows, cols);
  m.setFromTriplets(trip.begin(), trip.end());
  m.makeCompressed();
  return m;
}

} // namespace

AnyMatrix read_matrix_market(std::istream& is) {
  std::string line;
  std::size_t line_no = 0;
  if (!std::getline(is, line))
    throw ParseError("empty Matrix Market file", 1);
  ++line_no;
  const Header h = parse_header(line);

  if (!next_data_line(is, line, line_no))
    throw ParseError("missing size line", line_no + 1);
  long long rows = 0, cols = 0, entries = 0;
  {
    std::istringstream ls(line);
    if (h.coordinate) {
      if (!(ls >> rows >> cols >> entries))
        throw ParseError("expected 'rows cols entries'", line_no);
    } else {
      if (!(ls >> rows >> cols))
        throw ParseError("expected 'rows cols'", line_no);
    }
    if (rows < 0 || cols < 0 || entries < 0)
      throw ParseError("negative size", line_no);
    if (h.symmetry != Symmetry::general && rows != cols)
      throw ParseError("symmetric storage requires a square matrix", line_no);
  }

  std::vector<Eigen::Index> ri, ci;
  std::vector<cplx> vals;
  auto push = [&](long long i, long long j, cplx z) {
    ri.push_back(i);
    ci.push_back(j);
    vals.push_back(z);
    if (i != j) {
      switch (h.symmetry) {
      case Symmetry::general:
        break;
      case Symmetry::symmetric:
        ri.push_back(j), ci.push_back(i), vals.push_back(z);
        break;
      case Symmetry::skew:
        ri.push_back(j), ci.push_back(i), vals.push_back(-z);
        break;
      case Symmetry::hermitian:
        ri.push_back(j), ci.push_back(i), vals.push_back(std::conj(z));
        break;
      }
    }
  };

  if (h.coordinate) {
    for (long long k = 0; k < entries; ++k) {
      if (!next_data_line(is, line, line_no))
        throw ParseError("expected " + std::to_string(entries) + " entries, found " + std::to_string(k),
                         line_no + 1);
      std::istringstream ls(line);
      long long i = 0, j = 0;
      if (!(ls >> i >> j))
        throw ParseError("expected 'row col [value]'", line_no);
      if (i < 1 || i > rows || j < 1 || j > cols)
        throw ParseError("index (" + std::to_string(i) + ", " + std::to_string(j) + ") out of range", line_no);
      if (h.symmetry != Symmetry::general && j > i)
        throw ParseError("entry above the diagonal in symmetric storage", line_no);
      if (h.symmetry == Symmetry::skew && i == j)
        throw ParseError("diagonal entry in skew-symmetric storage", line_no);
      push(i - 1, j - 1, read_value(ls, h.field, line_no));
    }
  } else {
    for (long long j = 0; j < cols; ++j) {
      const long long first = h.symmetry == Symmetry::general ? 0 : (h.symmetry == Symmetry::skew ? j + 1 : j);
      for (long long i = first; i < rows; ++i) {
        if (!next_data_line(is, line, line_no))
          throw ParseError("array data ended early", line_no + 1);
        std::istringstream ls(line);
        const cplx z = read_value(ls, h.field, line_no);
        if (z != 0.0)
          push(i, j, z);
      }
    }
  }
  if (next_data_line(is, line, line_no))
    throw ParseError("trailing data after the declared entries", line_no);

  if (h.field == Field::complex)
    return assemble<cplx>(rows, cols, ri, ci, vals);
  return assemble<double>(rows, cols, ri, ci, vals);
}

AnyMatrix load_matrix(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in)
    throw ParameterError("cannot open matrix file " + path.string());
  return read_matrix_market(in);
}

template <class S>
void write_matrix_market(std::ostream& os, const SparseMatrix<S>& a) {
  os << "%%MatrixMarket matrix coordinate " << (is_complex_v<S> ? "complex" : "real") << " general\n";
  os << a.rows() << ' ' << a.cols() << ' ' << a.nonZeros() << '\n';
  for (Eigen::Index i = 0; i < a.outerSize(); ++i)
    for (typename SparseMatrix<S>::InnerIterator it(a, i); it; ++it) {
      os << it.row() + 1 << ' ' << it.col() + 1 << ' ';
      if constexpr (is_complex_v<S>)
        os << format_double(it.value().real()) << ' ' << format_double(it.value().imag()) << '\n';
      else
        os << format_double(it.value()) << '\n';
    }
}

bool is_complex(const AnyMatrix& m) { return std::holds_alternative<ComplexSparse>(m); }

template void write_matrix_market(std::ostream&, const RealSparse&);
template void write_matrix_market(std::ostream&, const ComplexSparse&);

} // namespace leja
