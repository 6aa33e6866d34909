#include "leja/vector_io.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace leja {

AnyVector read_vector(std::istream& is) {
  std::vector<cplx> values;
  bool complex = false;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#')
      continue;
    std::istringstream ls(line);
    double re = 0.0, im = 0.0;
    if (!(ls >> re))
      throw ParseError("expected 're' or 're im'", line_no);
    if (ls >> im)
      complex = true;
    else if (!ls.eof())
      throw ParseError("malformed imaginary part", line_no);
    std::string extra;
    ls.clear();
    if (ls >> extra)
      throw ParseError("trailing data '" + extra + "'", line_no);
    values.emplace_back(re, im);
  }
  const auto n = static_cast<Eigen::Index>(values.size());
  if (complex) {
    Vector<cplx> v(n);
    for (Eigen::Index i = 0; i < n; ++i)
      v[i] = values[static_cast<std::size_t>(i)];
    return v;
  }
  Vector<double> v(n);
  for (Eigen::Index i = 0; i < n; ++i)
    v[i] = values[static_cast<std::size_t>(i)].real();
  return v;
}

AnyVector load_vector(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in)
    throw ParameterError("cannot open vector file " + path.string());
  return read_vector(in);
}

template <class S>
void write_vector(std::ostream& os, const Vector<S>& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if constexpr (is_complex_v<S>)
      os << format_double(v[i].real()) << ' ' << format_double(v[i].imag()) << '\n';
    else
      os << format_double(v[i]) << '\n';
  }
}

template void write_vector(std::ostream&, const Vector<double>&);
template void write_vector(std::ostream&, const Vector<cplx>&);

} // namespace leja
