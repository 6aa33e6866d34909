#include "leja/bench.hpp"

#include "leja/oracle.hpp"

#include <json.hpp>
#include <unsupported/Eigen/MatrixFunctions>

#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <ostream>
#include <sstream>
#include <thread>

namespace leja {

namespace {

using json = nlohmann::json;

std::string algorithm_tag(AlgorithmChoice a) {
  switch (a) {
  case AlgorithmChoice::circle:
    return "1";
  case AlgorithmChoice::ellipse:
    return "2";
  case AlgorithmChoice::automatic:
    return "auto";
  }
  return "?";
}

std::string tag_of(const json& j) {
  if (j.is_string())
    return j.get<std::string>();
  if (j.is_number_integer())
    return std::to_string(j.get<long long>());
  throw ParameterError("expected a string or integer tag, got " + j.dump());
}

std::map<std::string, long long> expected_map(const json& j, const std::string& what) {
  std::map<std::string, long long> out;
  if (!j.is_object())
    throw ParameterError(what + " must be an object keyed by algorithm");
  for (const auto& [k, v] : j.items()) {
    algorithm_choice_from_string(k);
    if (!v.is_number_integer())
      throw ParameterError(what + "[" + k + "] must be an integer");
    out[k] = v.get<long long>();
  }
  return out;
}

BenchCase parse_case(const json& j, std::size_t index) {
  if (!j.is_object())
    throw ParameterError("case " + std::to_string(index) + " is not an object");
  BenchCase c;
  c.id = j.value("id", "case" + std::to_string(index));
  if (!j.contains("matrix") || !j["matrix"].is_string())
    throw ParameterError("case '" + c.id + "' needs a \"matrix\" string");
  c.matrix = j["matrix"].get<std::string>();
  c.vector = j.value("vector", c.vector);
  if (j.contains("t")) {
    if (!j["t"].is_number())
      throw ParameterError("case '" + c.id + "': t must be a number");
    c.t = j["t"].get<double>();
  }
  if (j.contains("tol")) {
    const auto& tol = j["tol"];
    c.tol = tol.is_number() ? Tolerance::parse(format_double(tol.get<double>()))
                            : Tolerance::parse(tol.get<std::string>());
  }
  if (j.contains("algorithms")) {
    c.algorithms.clear();
    for (const auto& a : j["algorithms"])
      c.algorithms.push_back(algorithm_choice_from_string(tag_of(a)));
  }
  if (j.contains("norms")) {
    c.norms.clear();
    for (const auto& n : j["norms"])
      c.norms.push_back(norm_kind_from_string(tag_of(n)));
  }
  c.reference = j.value("reference", c.reference);
  if (j.contains("expected_s"))
    c.expected_s = expected_map(j["expected_s"], "expected_s");
  if (j.contains("expected_mv"))
    c.expected_mv = expected_map(j["expected_mv"], "expected_mv");
  return c;
}

bool is_gallery(const std::string& m) { return m.rfind("gallery:", 0) == 0; }

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& p) {
  const std::filesystem::path path(p);
  return path.is_absolute() || base.empty() ? path : base / path;
}

template <class S>
Vector<cplx> as_complex(const Vector<S>& v) {
  return v.template cast<cplx>();
}

Eigen::MatrixXd second_difference(int n, double scale) {
  Eigen::MatrixXd t = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    t(i, i) = -2.0 * scale;
    if (i + 1 < n)
      t(i, i + 1) = t(i + 1, i) = scale;
  }
  return t;
}

double rel_error(const Vector<cplx>& y, const Vector<cplx>& ref) {
  const double nr = ref.norm();
  const double d = (y - ref).norm();
  return nr == 0.0 ? d : d / nr;
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos)
    return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"')
      out += '"';
    out += ch == '\n' ? ' ' : ch;
  }
  return out + "\"";
}

std::string sci(double x) {
  if (std::isnan(x))
    return "nan";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return buf;
}

template <class S>
Vector<cplx> run_expmv(const SparseMatrix<S>& a, const Vector<cplx>& v, double t, const ExpmvOptions& opts,
                       EvalReport* report) {
  if constexpr (is_complex_v<S>) {
    return expmv(a, v, t, opts, report);
  } else {
    return expmv<double>(a, v.real(), t, opts, report).template cast<cplx>();
  }
}

/// Real data stays real unless the vector is complex.
Vector<cplx> evaluate(const GalleryProblem& p, double t, const ExpmvOptions& opts, EvalReport* report) {
  const bool complex_vector = std::holds_alternative<Vector<cplx>>(p.vector);
  const Vector<cplx> v = std::visit([](const auto& x) { return as_complex(x); }, p.vector);
  if (const auto* a = std::get_if<RealSparse>(&p.matrix)) {
    if (complex_vector)
      return run_expmv(to_complex(*a), v, t, opts, report);
    return run_expmv(*a, v, t, opts, report);
  }
  return run_expmv(std::get<ComplexSparse>(p.matrix), v, t, opts, report);
}

Eigen::Index dimension(const AnyMatrix& m) {
  return std::visit([](const auto& a) { return a.rows(); }, m);
}

} // namespace

BenchSuite parse_suite(const std::string& json_text, const std::filesystem::path& base_dir) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ParameterError(std::string("suite is not valid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("cases") || !doc["cases"].is_array())
    throw ParameterError("suite needs a \"cases\" array");
  BenchSuite suite;
  suite.base_dir = base_dir;
  std::size_t i = 0;
  for (const auto& c : doc["cases"])
    suite.cases.push_back(parse_case(c, i++));
  return suite;
}

BenchSuite load_suite(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in)
    throw ParameterError("cannot open suite file " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_suite(ss.str(), path.parent_path());
}

GalleryProblem load_case_problem(const BenchCase& c, const std::filesystem::path& base_dir) {
  GalleryProblem p;
  bool have_vector = false;
  if (is_gallery(c.matrix)) {
    p = build_gallery(GallerySpec::parse(c.matrix.substr(8)));
    have_vector = true;
  } else {
    p.matrix = load_matrix(resolve(base_dir, c.matrix));
  }
  const Eigen::Index n = dimension(p.matrix);
  if (c.vector == "canonical") {
    if (!have_vector)
      p.vector = Vector<double>(Vector<double>::Ones(n));
  } else if (c.vector == "ones") {
    p.vector = Vector<double>(Vector<double>::Ones(n));
  } else if (c.vector == "ends") {
    Vector<double> v = Vector<double>::Zero(n);
    if (n > 0)
      v[0] = v[n - 1] = 1.0;
    p.vector = v;
  } else {
    p.vector = load_vector(resolve(base_dir, c.vector));
  }
  const Eigen::Index nv = std::visit([](const auto& v) { return v.size(); }, p.vector);
  if (nv != n)
    throw ParameterError("case '" + c.id + "': vector length " + std::to_string(nv) + " does not match n = " +
                         std::to_string(n));
  return p;
}

Vector<double> ad2d_kron_reference(int n, double t, const Vector<double>& v) {
  const double h = 1.0 / (n + 1);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(second_difference(n, 1.0 / (h * h)));
  const Eigen::MatrixXd& q = es.eigenvectors();
  const Eigen::MatrixXd e = q * (t * es.eigenvalues()).array().exp().matrix().asDiagonal() * q.transpose();
  Eigen::Map<const Eigen::MatrixXd> vm(v.data(), n, n);
  const Eigen::MatrixXd y = e * vm * e.transpose();
  return Eigen::Map<const Vector<double>>(y.data(), static_cast<Eigen::Index>(n) * n);
}

Vector<cplx> s3d_kron_reference(int n, double laplacian_scale, double potential_scale, double t,
                                const Vector<cplx>& v) {
  const double h = 1.0 / (n + 1);
  Eigen::MatrixXd h1 = second_difference(n, laplacian_scale / (h * h));
  for (int i = 0; i < n; ++i)
    h1(i, i) -= potential_scale * ((i + 1) * h) * ((i + 1) * h);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h1);
  const Eigen::MatrixXcd q = es.eigenvectors().cast<cplx>();
  Vector<cplx> phase(n);
  for (int i = 0; i < n; ++i)
    phase[i] = std::exp(cplx(0.0, t * es.eigenvalues()[i]));
  const Eigen::MatrixXcd e = q * phase.asDiagonal() * q.transpose();
  const Eigen::MatrixXcd et = e.transpose();

  const Eigen::Index n1 = n, n2 = n1 * n1;
  Vector<cplx> y = v;
  {
    Eigen::Map<Eigen::MatrixXcd> m(y.data(), n1, n2);
    m = (e * m).eval();
  }
  for (Eigen::Index k = 0; k < n1; ++k) {
    Eigen::Map<Eigen::MatrixXcd> m(y.data() + k * n2, n1, n1);
    m = (m * et).eval();
  }
  {
    Eigen::Map<Eigen::MatrixXcd> m(y.data(), n2, n1);
    m = (m * et).eval();
  }
  return y;
}

Vector<cplx> trans1d_circulant_reference(int n, double t, const Vector<cplx>& v) {
  const double two_pi = 2.0 * std::numbers::pi;
  std::vector<cplx> w(static_cast<std::size_t>(n));
  for (int m = 0; m < n; ++m)
    w[static_cast<std::size_t>(m)] = std::polar(1.0, two_pi * m / n);
  Vector<cplx> hat = Vector<cplx>::Zero(n);
  for (int k = 0; k < n; ++k) {
    cplx acc = 0.0;
    for (int j = 0; j < n; ++j)
      acc += v[j] * std::conj(w[static_cast<std::size_t>((static_cast<long long>(j) * k) % n)]);
    // Eigenvalue -i n sin(2 pi k / n) of the centered periodic difference.
    hat[k] = acc * std::exp(cplx(0.0, -t * n * std::sin(two_pi * k / n)));
  }
  Vector<cplx> y(n);
  for (int i = 0; i < n; ++i) {
    cplx acc = 0.0;
    for (int k = 0; k < n; ++k)
      acc += hat[k] * w[static_cast<std::size_t>((static_cast<long long>(i) * k) % n)];
    y[i] = acc / static_cast<double>(n);
  }
  return y;
}

Reference compute_reference(const BenchCase& c, const GalleryProblem& problem, const ExpmvOptions& base) {
  const Eigen::Index n = dimension(problem.matrix);
  const Vector<cplx> v = std::visit([](const auto& x) { return as_complex(x); }, problem.vector);
  std::optional<GallerySpec> spec;
  if (is_gallery(c.matrix))
    spec = GallerySpec::parse(c.matrix.substr(8));

  std::string method = c.reference;
  if (method == "auto") {
    if (spec && spec->name == "ad2d" && spec->get("Pe", 0.0) == 0.0)
      method = "kron";
    else if (spec && spec->name == "s3d")
      method = "kron";
    else if (spec && spec->name == "trans1d")
      method = "circulant";
    else if (n <= kOracleMaxDim)
      method = "oracle";
    else if (n <= 3000)
      method = "dense";
    else
      method = "expmv";
  }

  if (method == "kron") {
    if (spec && spec->name == "ad2d" && spec->get("Pe", 0.0) == 0.0) {
      const int nn = static_cast<int>(spec->get("N", 20));
      return {ad2d_kron_reference(nn, c.t, v.real()).cast<cplx>(), "kron"};
    }
    if (spec && spec->name == "s3d") {
      const int nn = static_cast<int>(spec->get("N", 30));
      return {s3d_kron_reference(nn, spec->get("ls", 0.5), spec->get("ps", 0.5), c.t, v), "kron"};
    }
    throw ParameterError("kron reference needs gallery ad2d with Pe=0 or s3d");
  }
  if (method == "circulant") {
    if (!spec || spec->name != "trans1d")
      throw ParameterError("circulant reference needs gallery trans1d");
    return {trans1d_circulant_reference(static_cast<int>(spec->get("n", 1000)), c.t, v), "circulant"};
  }
  if (method == "oracle") {
    const ComplexSparse a = std::visit(
        [](const auto& m) -> ComplexSparse {
          if constexpr (std::is_same_v<std::decay_t<decltype(m)>, RealSparse>)
            return to_complex(m);
          else
            return m;
        },
        problem.matrix);
    return {oracle_expmv(a, v, c.t, 30), "oracle"};
  }
  if (method == "dense") {
    if (const auto* real = std::get_if<RealSparse>(&problem.matrix)) {
      const Eigen::MatrixXd e = (c.t * Eigen::MatrixXd(*real)).exp();
      return {e.cast<cplx>() * v, "dense"};
    }
    const Eigen::MatrixXcd e = (c.t * Eigen::MatrixXcd(std::get<ComplexSparse>(problem.matrix))).exp();
    return {e * v, "dense"};
  }
  if (method == "expmv") {
    ExpmvOptions o = base;
    o.tol = Tolerance::dbl();
    o.algorithm = AlgorithmChoice::circle;
    return {evaluate(problem, c.t, o, nullptr), "expmv(2^-53)"};
  }
  if (method == "none")
    return {Vector<cplx>(), "none"};
  throw ParameterError("unknown reference '" + c.reference + "'");
}

std::vector<BenchRow> run_bench(const BenchSuite& suite, const ExpmvOptions& base, unsigned threads) {
  const std::size_t count = suite.cases.size();
  std::vector<std::vector<BenchRow>> per_case(count);

  auto run_case = [&](std::size_t idx) {
    const BenchCase& c = suite.cases[idx];
    std::vector<BenchRow>& rows = per_case[idx];
    auto blank_row = [&](AlgorithmChoice alg, NormKind norm) {
      BenchRow r;
      r.case_id = c.id;
      r.t = c.t;
      r.tol = c.tol.name();
      r.alg = algorithm_tag(alg);
      r.norm = std::string(to_string(norm));
      if (auto it = c.expected_s.find(r.alg); it != c.expected_s.end())
        r.expected_s = it->second;
      if (auto it = c.expected_mv.find(r.alg); it != c.expected_mv.end())
        r.expected_mv = it->second;
      return r;
    };

    GalleryProblem problem;
    try {
      problem = load_case_problem(c, suite.base_dir);
    } catch (const std::exception& e) {
      for (auto alg : c.algorithms)
        for (auto norm : c.norms) {
          BenchRow r = blank_row(alg, norm);
          r.status = "error";
          r.rel_err = std::nan("");
          r.message = e.what();
          rows.push_back(r);
        }
      return;
    }

    Reference ref;
    std::string ref_error;
    try {
      ref = compute_reference(c, problem, base);
    } catch (const std::exception& e) {
      ref.method = "unavailable";
      ref_error = e.what();
    }

    for (auto alg : c.algorithms)
      for (auto norm : c.norms) {
        BenchRow r = blank_row(alg, norm);
        r.n = dimension(problem.matrix);
        r.reference = ref.method;
        r.message = ref_error;
        ExpmvOptions o = base;
        o.tol = c.tol;
        o.algorithm = alg;
        o.norm = norm;
        try {
          EvalReport rep;
          const Vector<cplx> y = evaluate(problem, c.t, o, &rep);
          r.s = rep.s_used;
          r.m_star = rep.m_star;
          r.c_star = rep.plan.c_star;
          r.matvecs = rep.matvec_count;
          r.rel_err = ref.value.size() == y.size() ? rel_error(y, ref.value) : std::nan("");
          if (r.expected_s && *r.expected_s != r.s)
            r.status = "s-mismatch";
        } catch (const std::exception& e) {
          r.status = "error";
          r.rel_err = std::nan("");
          r.message = e.what();
        }
        rows.push_back(r);
      }
  };

  if (threads == 0)
    threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(count, 1)));
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < threads; ++w)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++)
        run_case(i);
    });
  for (auto& th : pool)
    th.join();

  std::vector<BenchRow> out;
  for (auto& rows : per_case)
    out.insert(out.end(), rows.begin(), rows.end());
  return out;
}

std::string bench_csv_header() {
  return "case,t,tol,alg,norm,n,s,m_star,c_star,matvecs,rel_err,reference,expected_s,expected_mv,status,message";
}

void write_bench_csv(std::ostream& os, const std::vector<BenchRow>& rows) {
  os << bench_csv_header() << '\n';
  for (const auto& r : rows) {
    os << csv_escape(r.case_id) << ',' << format_double(r.t) << ',' << r.tol << ',' << r.alg << ',' << r.norm << ','
       << r.n << ',' << r.s << ',' << r.m_star << ',' << format_double(r.c_star) << ',' << r.matvecs << ','
       << sci(r.rel_err) << ',' << csv_escape(r.reference) << ','
       << (r.expected_s ? std::to_string(*r.expected_s) : "") << ','
       << (r.expected_mv ? std::to_string(*r.expected_mv) : "") << ',' << r.status << ','
       << csv_escape(r.message) << '\n';
  }
}

} // namespace leja
