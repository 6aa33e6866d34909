#include "leja/table_file.hpp"

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <memory>
#include <mutex>
#include <optional>
#include <ostream>
#include <sstream>

#ifndef LEJA_DEFAULT_TABLE_DIR
#define LEJA_DEFAULT_TABLE_DIR "tables"
#endif

namespace leja {

namespace {

void write_complex(std::ostream& os, const cplx& z) {
  os << format_double(z.real()) << ' ' << format_double(z.imag()) << '\n';
}

class LineReader {
public:
  explicit LineReader(std::istream& is) : is_(is) {}

  // Next non-empty, non-comment line; false at end of input.
  bool next(std::string& line) {
    if (pushed_) {
      line = std::move(*pushed_);
      pushed_.reset();
      return true;
    }
    while (std::getline(is_, line)) {
      ++line_no_;
      const auto first = line.find_first_not_of(" \t\r");
      if (first == std::string::npos || line[first] == '#')
        continue;
      return true;
    }
    return false;
  }

  std::string require(const char* what) {
    std::string line;
    if (!next(line))
      throw ParseError(std::string("unexpected end of table file, expected ") + what, line_no_ + 1);
    return line;
  }

  void push_back(std::string line) { pushed_ = std::move(line); }

  std::size_t line_no() const noexcept { return line_no_; }

private:
  std::istream& is_;
  std::optional<std::string> pushed_;
  std::size_t line_no_ = 0;
};

cplx parse_complex(LineReader& in) {
  std::istringstream ls(in.require("'re im'"));
  double re = 0.0, im = 0.0;
  if (!(ls >> re >> im))
    throw ParseError("expected 're im'", in.line_no());
  return {re, im};
}

template <class... T>
void parse_fields(std::istringstream& ls, const LineReader& in, const char* what, T&... fields) {
  if (!((ls >> fields) && ...))
    throw ParseError(std::string("malformed ") + what + " record", in.line_no());
  std::string extra;
  if (ls >> extra)
    throw ParseError(std::string("trailing data in ") + what + " record", in.line_no());
}

PointKind parse_kind(const std::string& s, const LineReader& in) {
  try {
    return point_kind_from_string(s);
  } catch (const ParameterError& e) {
    throw ParseError(e.what(), in.line_no());
  }
}

} // namespace

void write_table(std::ostream& os, const TableSet& t, const std::string& comment) {
  os << "lejatab v1 " << to_string(t.theta.kind) << ' ' << t.theta.tol.name() << ' ' << t.theta.tol.hex()
     << '\n';
  if (!comment.empty()) {
    std::istringstream cs(comment);
    std::string line;
    while (std::getline(cs, line))
      os << "# " << line << '\n';
  }
  LejaSequence stored = t.seq;
  if (stored.reference_points.size() > kMaxLejaPoints)
    stored.reference_points.resize(kMaxLejaPoints);
  write_leja(os, stored);
  for (const auto& [m, v] : t.theta.values)
    os << "theta " << m << ' ' << format_double(v) << '\n';
  for (const auto& [m, fam] : t.families.ellipses)
    for (const EllipseRecord& r : fam)
      os << "ellipse " << m << ' ' << r.j << ' ' << format_double(r.a) << ' ' << format_double(r.b) << '\n';
  for (const auto& [m, c] : t.families.circles)
    os << "circle " << m << ' ' << c.k << ' ' << format_double(c.radius) << '\n';
  for (const auto& [m, dd] : t.dd) {
    os << "dd " << to_string(dd.kind) << ' ' << m << ' ' << format_double(dd.interval_halfwidth) << '\n';
    for (const cplx& z : dd.coefficients)
      write_complex(os, z);
  }
}

TableSet read_table(std::istream& is) {
  LineReader in(is);
  TableSet t;
  {
    std::istringstream hs(in.require("header"));
    std::string magic, version, kind, name, hex;
    if (!(hs >> magic >> version >> kind >> name >> hex) || magic != "lejatab")
      throw ParseError("expected 'lejatab v1 <kind> <tol-name> <tol-hex>'", in.line_no());
    if (version != "v1")
      throw ParseError("unsupported table version '" + version + "'", in.line_no());
    t.theta.kind = parse_kind(kind, in);
    char* end = nullptr;
    const double tol = std::strtod(hex.c_str(), &end);
    if (end == hex.c_str() || *end != '\0' || !(tol > 0.0))
      throw ParseError("bad tolerance '" + hex + "'", in.line_no());
    t.theta.tol = Tolerance{tol};
    t.families.tol = t.theta.tol;
    t.families.kind = t.theta.kind;
  }

  std::string line;
  std::map<int, std::vector<std::pair<double, double>>> raw_ellipses;
  std::map<int, std::vector<int>> raw_indices;
  while (in.next(line)) {
    std::istringstream ls(line);
    std::string tag;
    ls >> tag;
    if (tag == "leja") {
      std::string kind;
      std::size_t count = 0;
      parse_fields(ls, in, "leja", kind, count);
      t.seq.kind = parse_kind(kind, in);
      if (t.seq.kind != t.theta.kind)
        throw ParseError("Leja block kind differs from header", in.line_no());
      if (count > kMaxGeneratedPoints)
        throw ParseError("too many Leja points", in.line_no());
      t.seq.reference_points.clear();
      for (std::size_t k = 0; k < count; ++k)
        t.seq.reference_points.push_back(parse_complex(in));
    } else if (tag == "theta") {
      int m = 0;
      double v = 0.0;
      parse_fields(ls, in, "theta", m, v);
      if (!(v > 0.0))
        throw ParseError("theta must be positive", in.line_no());
      t.theta.values[m] = v;
    } else if (tag == "ellipse") {
      int m = 0, j = 0;
      double a = 0.0, b = 0.0;
      parse_fields(ls, in, "ellipse", m, j, a, b);
      if (!(a >= b && b >= 0.0))
        throw ParseError("ellipse needs a >= b >= 0", in.line_no());
      raw_ellipses[m].emplace_back(a, b);
      raw_indices[m].push_back(j);
    } else if (tag == "circle") {
      int m = 0, k = 0;
      double r = 0.0;
      parse_fields(ls, in, "circle", m, k, r);
      t.families.circles[m] = CircleRecord{k, r};
    } else if (tag == "dd") {
      std::string kind;
      int m = 0;
      double c = 0.0;
      parse_fields(ls, in, "dd", kind, m, c);
      DividedDiffTable dd;
      dd.kind = parse_kind(kind, in);
      dd.interval_halfwidth = c;
      // Coefficient lines run until the next tagged record.
      std::string row;
      while (in.next(row)) {
        const auto first = row.find_first_not_of(" \t");
        if (std::isalpha(static_cast<unsigned char>(row[first])) && row.compare(first, 3, "inf") != 0 &&
            row.compare(first, 3, "nan") != 0) {
          in.push_back(std::move(row));
          break;
        }
        std::istringstream rs(row);
        double re = 0.0, im = 0.0;
        if (!(rs >> re >> im))
          throw ParseError("expected 're im'", in.line_no());
        if (dd.coefficients.size() == kMaxLejaPoints)
          throw ParseError("too many divided differences", in.line_no());
        dd.coefficients.emplace_back(re, im);
      }
      if (dd.coefficients.empty())
        throw ParseError("dd record without coefficients", in.line_no());
      t.dd[m] = std::move(dd);
    } else {
      throw ParseError("unknown record '" + tag + "'", in.line_no());
    }
  }

  if (t.seq.reference_points.empty())
    throw ParseError("table file has no Leja block", in.line_no());
  for (auto& [m, dd] : t.dd)
    dd.points = scale(t.seq.first(std::min(dd.coefficients.size(), t.seq.size())), dd.interval_halfwidth);
  for (const auto& [m, ab] : raw_ellipses) {
    auto& fam = t.families.ellipses[m];
    for (std::size_t i = 0; i < ab.size(); ++i) {
      const auto [a, b] = ab[i];
      const double gamma = (a + b) / 2.0;
      const int j = raw_indices[m][i];
      const double focal = t.theta.has(j) ? t.theta.at(j) : std::sqrt(std::max(0.0, a * a - b * b));
      fam.push_back({j, focal, gamma, a, b});
    }
  }
  return t;
}

std::string table_file_name(Tolerance tol, PointKind kind) {
  const std::string name = tol.name() == "custom" ? tol.hex() : tol.name();
  return "lejatab_" + std::string(to_string(kind)) + "_" + name + ".txt";
}

std::filesystem::path resolve_table_dir(const std::string& explicit_dir) {
  if (!explicit_dir.empty())
    return explicit_dir;
  if (const char* env = std::getenv("LEJA_TABLES"); env && *env)
    return env;
  return LEJA_DEFAULT_TABLE_DIR;
}

const TableSet& load_tables(const std::filesystem::path& dir, Tolerance tol, PointKind kind) {
  static std::mutex mutex;
  static std::map<std::string, std::unique_ptr<TableSet>> cache;
  const std::filesystem::path path = dir / table_file_name(tol, kind);
  const std::string key = std::filesystem::absolute(path).string();

  std::lock_guard lock(mutex);
  if (auto it = cache.find(key); it != cache.end())
    return *it->second;
  std::ifstream in(path);
  if (!in)
    throw TableError("no interpolation table for " + std::string(to_string(kind)) + " points at tolerance " +
                     tol.hex() + " (looked for " + path.string() + "; run `lejaexp precompute`)");
  auto t = std::make_unique<TableSet>(read_table(in));
  if (t->theta.kind != kind || t->theta.tol.value != tol.value)
    throw TableError("table file " + path.string() + " does not match the requested kind/tolerance");
  return *cache.emplace(key, std::move(t)).first->second;
}

} // namespace leja
