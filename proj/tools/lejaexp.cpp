#include "leja/bench.hpp"
#include "leja/expmv.hpp"
#include "leja/gallery.hpp"
#include "leja/oracle.hpp"
#include "leja/table_file.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace leja;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ProblemFlags {
  std::string matrix;
  std::string vector;
  double t = 1.0;
  std::string tol = "double";
  std::string alg = "auto";
  std::string norm = "1";
  std::string points = "auto";
  bool no_shift = false;
  bool no_early_term = false;
  bool no_hump_test = false;
  std::string tables;
  std::string out;
  std::uint64_t seed = 0;
};

void add_io_flags(CLI::App* cmd, ProblemFlags& f, bool need_t) {
  cmd->add_option("--matrix", f.matrix, "Matrix Market file or gallery:<name>[:key=value,...]")->required();
  cmd->add_option("--vector", f.vector, "Vector file (default: gallery vector, or ones)");
  auto* t = cmd->add_option("--t", f.t, "Time step t");
  if (need_t)
    t->required();
  cmd->add_option("--out", f.out, "Output path (default: stdout)");
}

void add_method_flags(CLI::App* cmd, ProblemFlags& f) {
  cmd->add_option("--tol", f.tol, "half, single, double or a value in (0, 2^-10]");
  cmd->add_option("--alg", f.alg, "1, 2 or auto");
  cmd->add_option("--norm", f.norm, "1, 2 or inf");
  cmd->add_option("--points", f.points, "auto, real or conjugate");
  cmd->add_flag("--no-shift", f.no_shift, "Do not shift by the center of the spectral box");
  cmd->add_flag("--no-early-term", f.no_early_term, "Always run the full degree");
  cmd->add_flag("--no-hump-test", f.no_hump_test, "Skip the d_p interval reduction");
  cmd->add_option("--tables", f.tables, "Table directory");
  cmd->add_option("--seed", f.seed, "Seed for norm estimation");
}

template <class F>
auto flag_value(const std::string& flag, const std::string& value, F parse) {
  try {
    return parse(value);
  } catch (const ParameterError& e) {
    throw UsageError(flag + " " + value + ": " + e.what());
  }
}

ExpmvOptions method_options(const ProblemFlags& f) {
  ExpmvOptions o;
  o.tol = flag_value("--tol", f.tol, [](const std::string& s) { return Tolerance::parse(s); });
  o.algorithm = flag_value("--alg", f.alg, [](const std::string& s) { return algorithm_choice_from_string(s); });
  o.norm = flag_value("--norm", f.norm, [](const std::string& s) { return norm_kind_from_string(s); });
  if (f.points != "auto")
    o.points = flag_value("--points", f.points, [](const std::string& s) { return point_kind_from_string(s); });
  o.shift = !f.no_shift;
  o.early_termination = !f.no_early_term;
  o.hump_test = !f.no_hump_test;
  o.table_dir = f.tables;
  o.seed = f.seed;
  return o;
}

GalleryProblem load_problem(const ProblemFlags& f) {
  GalleryProblem p;
  bool have_vector = false;
  if (f.matrix.rfind("gallery:", 0) == 0) {
    p = flag_value("--matrix", f.matrix,
                   [](const std::string& s) { return build_gallery(GallerySpec::parse(s.substr(8))); });
    have_vector = true;
  } else {
    p.matrix = load_matrix(f.matrix);
  }
  const Eigen::Index n = std::visit([](const auto& a) { return a.rows(); }, p.matrix);
  if (std::visit([](const auto& a) { return a.rows() != a.cols(); }, p.matrix))
    throw UsageError("--matrix " + f.matrix + ": matrix is not square");
  if (!f.vector.empty())
    p.vector = load_vector(f.vector);
  else if (!have_vector)
    p.vector = Vector<double>(Vector<double>::Ones(n));
  const Eigen::Index nv = std::visit([](const auto& v) { return v.size(); }, p.vector);
  if (nv != n)
    throw UsageError("--vector: length " + std::to_string(nv) + " does not match matrix dimension " +
                     std::to_string(n));
  return p;
}

class Output {
public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_)
        throw UsageError("--out " + path + ": cannot open for writing");
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

private:
  std::ofstream file_;
};

void print_report(const EvalReport& r) {
  long long early = 0;
  for (bool b : r.early_terminated)
    early += b ? 1 : 0;
  std::cerr << "algorithm=" << to_string(r.plan.algorithm) << '\n'
            << "points=" << to_string(r.plan.kind) << '\n'
            << "s=" << r.s_used << '\n'
            << "m_star=" << r.m_star << '\n'
            << "c_star=" << format_double(r.plan.c_star) << '\n'
            << "matvecs=" << r.matvec_count << '\n'
            << "early_terminated_steps=" << early << '\n';
  for (const auto& w : r.warnings)
    std::cerr << "warning=" << w << '\n';
}

enum class Action { expmv, phi1 };

template <class S>
void run_action(Action action, const SparseMatrix<S>& a, const Vector<S>& v, double t, const ExpmvOptions& o,
                std::ostream& os) {
  EvalReport rep;
  const Vector<S> y = action == Action::expmv ? expmv(a, v, t, o, &rep) : phi1(a, v, t, o, &rep);
  write_vector(os, y);
  print_report(rep);
}

void dispatch(Action action, const GalleryProblem& p, double t, const ExpmvOptions& o, std::ostream& os) {
  if (const auto* a = std::get_if<RealSparse>(&p.matrix)) {
    if (const auto* v = std::get_if<Vector<double>>(&p.vector))
      return run_action(action, *a, *v, t, o, os);
    return run_action(action, to_complex(*a), std::get<Vector<cplx>>(p.vector), t, o, os);
  }
  const auto& a = std::get<ComplexSparse>(p.matrix);
  const Vector<cplx> v = std::visit([](const auto& x) { return Vector<cplx>(x.template cast<cplx>()); }, p.vector);
  run_action(action, a, v, t, o, os);
}

template <class S>
void print_plan(const SparseMatrix<S>& a, double t, const ExpmvOptions& o, std::ostream& os) {
  SpectralInfo info;
  const Plan plan = plan_for(a, t, o, &info);
  os << format_plan(plan);
  os << "box=" << format_double(info.box.alpha) << ',' << format_double(info.box.nu) << ','
     << format_double(info.box.eta) << ',' << format_double(info.box.beta) << '\n';
  for (const auto& [kind, value] : info.norms)
    os << "norm_" << to_string(kind) << '=' << format_double(value) << '\n';
  os << "d_p=";
  for (std::size_t i = 0; i < info.dps.size(); ++i)
    os << (i ? "," : "") << format_double(info.dps[i]);
  os << '\n' << plan_json(plan) << '\n';
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Leja interpolation for the action of the matrix exponential"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  ProblemFlags ef, pf, lf, of;

  auto* c_expmv = app.add_subcommand("expmv", "Compute exp(tA)v");
  add_io_flags(c_expmv, ef, true);
  add_method_flags(c_expmv, ef);

  auto* c_phi1 = app.add_subcommand("phi1", "Compute phi_1(tA)w");
  add_io_flags(c_phi1, pf, false);
  add_method_flags(c_phi1, pf);

  auto* c_plan = app.add_subcommand("plan", "Print the parameters expmv would use");
  add_io_flags(c_plan, lf, true);
  add_method_flags(c_plan, lf);

  std::string pc_tol = "double", pc_kind = "real", pc_out;
  unsigned pc_digits = kDefaultDigits, pc_threads = 0;
  int pc_max_m = kMaxDegree;
  bool pc_no_ellipses = false, pc_quiet = false;
  std::size_t pc_mesh = kDefaultMeshSize;
  auto* c_pre = app.add_subcommand("precompute", "Generate an interpolation table file");
  c_pre->add_option("--tol", pc_tol, "half, single, double or a value in (0, 2^-10]");
  c_pre->add_option("--kind", pc_kind, "real or conjugate");
  c_pre->add_option("--digits", pc_digits, "Working precision in decimal digits")->check(CLI::Range(20u, 2000u));
  c_pre->add_option("--max-m", pc_max_m, "Largest planning degree")->check(CLI::Range(2, kMaxDegree));
  c_pre->add_option("--threads", pc_threads, "Worker threads (0: all cores)");
  c_pre->add_option("--mesh-size", pc_mesh, "Candidate mesh for the Leja search");
  c_pre->add_flag("--no-ellipses", pc_no_ellipses, "Skip ellipse families and circles");
  c_pre->add_flag("--quiet", pc_quiet, "No progress messages");
  c_pre->add_option("--out", pc_out, "Table file (default: the table directory)");

  std::string bench_suite, bench_out;
  unsigned bench_threads = 0;
  bool bench_strict = false;
  ProblemFlags bf;
  auto* c_bench = app.add_subcommand("bench", "Run a benchmark suite and write CSV");
  c_bench->add_option("suite", bench_suite, "Suite JSON file")->required();
  c_bench->add_option("--out", bench_out, "CSV path (default: stdout)");
  c_bench->add_option("--threads", bench_threads, "Cases run in parallel (0: all cores)");
  c_bench->add_flag("--strict", bench_strict, "Exit 1 if any row failed or missed its expected s");
  c_bench->add_option("--tables", bf.tables, "Table directory");
  c_bench->add_option("--seed", bf.seed, "Seed for norm estimation");

  unsigned oracle_digits = 50;
  auto* c_oracle = app.add_subcommand("oracle", "exp(tA)v in extended precision (n <= 400)");
  add_io_flags(c_oracle, of, true);
  c_oracle->add_option("--digits", oracle_digits, "Decimal digits")->check(CLI::Range(20u, 1000u));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (*c_expmv || *c_phi1) {
      const ProblemFlags& f = *c_expmv ? ef : pf;
      const ExpmvOptions o = method_options(f);
      const GalleryProblem p = load_problem(f);
      Output out(f.out);
      dispatch(*c_expmv ? Action::expmv : Action::phi1, p, f.t, o, out.stream());
    } else if (*c_plan) {
      const ExpmvOptions o = method_options(lf);
      const GalleryProblem p = load_problem(lf);
      Output out(lf.out);
      std::visit([&](const auto& a) { print_plan(a, lf.t, o, out.stream()); }, p.matrix);
    } else if (*c_pre) {
      const Tolerance tol = flag_value("--tol", pc_tol, [](const std::string& s) { return Tolerance::parse(s); });
      const PointKind kind =
          flag_value("--kind", pc_kind, [](const std::string& s) { return point_kind_from_string(s); });
      BuildOptions bo;
      bo.digits = pc_digits;
      bo.max_m = pc_max_m;
      bo.threads = pc_threads;
      bo.ellipses = !pc_no_ellipses;
      bo.mesh_size = pc_mesh;
      const auto t0 = std::chrono::steady_clock::now();
      if (!pc_quiet)
        bo.progress = [&](const std::string& msg) {
          const double sec = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
          std::fprintf(stderr, "[%8.1fs] %s\n", sec, msg.c_str());
        };
      const TableSet tables = build_tables(tol, kind, bo);
      const std::filesystem::path path =
          pc_out.empty() ? resolve_table_dir() / table_file_name(tol, kind) : std::filesystem::path(pc_out);
      std::ofstream os(path);
      if (!os)
        throw UsageError("--out " + path.string() + ": cannot open for writing");
      write_table(os, tables, "digits " + std::to_string(pc_digits));
      for (const auto& [m, value] : tables.theta.values) {
        if (m > pc_max_m)
          break;
        std::printf("theta %d %.6e\n", m, value);
      }
      std::fprintf(stderr, "wrote %s\n", path.string().c_str());
    } else if (*c_bench) {
      const BenchSuite suite = load_suite(bench_suite);
      ExpmvOptions o;
      o.table_dir = bf.tables;
      o.seed = bf.seed;
      const auto rows = run_bench(suite, o, bench_threads);
      Output out(bench_out);
      write_bench_csv(out.stream(), rows);
      std::size_t flagged = 0;
      for (const auto& r : rows)
        flagged += r.status != "ok";
      std::fprintf(stderr, "%zu rows, %zu flagged\n", rows.size(), flagged);
      if (bench_strict && flagged)
        return 1;
    } else if (*c_oracle) {
      const GalleryProblem p = load_problem(of);
      const ComplexSparse a = std::visit(
          [](const auto& m) { return ComplexSparse(m.template cast<cplx>()); }, p.matrix);
      const Vector<cplx> v = std::visit([](const auto& x) { return Vector<cplx>(x.template cast<cplx>()); }, p.vector);
      const Vector<cplx> y = oracle_expmv(a, v, of.t, oracle_digits);
      Output out(of.out);
      if (!is_complex(p.matrix) && std::holds_alternative<Vector<double>>(p.vector))
        write_vector(out.stream(), Vector<double>(y.real()));
      else
        write_vector(out.stream(), y);
    }
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const ParameterError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const ParseError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
