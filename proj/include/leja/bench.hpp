#pragma once

#include "leja/expmv.hpp"
#include "leja/gallery.hpp"

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace leja {

/// One problem of a suite. `matrix` is "gallery:<spec>" or a Matrix Market
/// path; relative paths resolve against the suite file. `vector` is
/// "canonical" (the gallery vector, ones for files), "ones", "ends"
/// ([1, 0, ..., 0, 1]) or a vector file path.
struct BenchCase {
  std::string id;
  std::string matrix;
  std::string vector = "canonical";
  double t = 1.0;
  Tolerance tol = Tolerance::single();
  std::vector<AlgorithmChoice> algorithms{AlgorithmChoice::circle, AlgorithmChoice::ellipse};
  std::vector<NormKind> norms{NormKind::one};
  /// auto, oracle, dense, kron, circulant, expmv or none.
  std::string reference = "auto";
  /// Keyed by algorithm tag ("1", "2", "auto").
  std::map<std::string, long long> expected_s;
  std::map<std::string, long long> expected_mv;
};

struct BenchSuite {
  std::filesystem::path base_dir;
  std::vector<BenchCase> cases;
};

/// {"cases": [{"id": ..., "matrix": ..., "t": ..., "tol": ..., "algorithms": ["1", "2"],
///   "norms": ["1"], "reference": ..., "expected_s": {"1": 427}, "expected_mv": {...}}]}
BenchSuite parse_suite(const std::string& json_text, const std::filesystem::path& base_dir = {});
BenchSuite load_suite(const std::filesystem::path& path);

struct BenchRow {
  std::string case_id;
  double t = 0.0;
  std::string tol;
  std::string alg;
  std::string norm;
  long long n = 0;
  long long s = 0;
  int m_star = 0;
  double c_star = 0.0;
  long long matvecs = 0;
  double rel_err = 0.0;
  std::string reference;
  std::optional<long long> expected_s;
  std::optional<long long> expected_mv;
  /// "ok", "s-mismatch" or "error".
  std::string status = "ok";
  std::string message;
};

/// Reference solution of e^{tA}v and the name of the method used.
struct Reference {
  Vector<cplx> value;
  std::string method;
};

/// Loads the problem of a case (gallery or file) with its start vector.
GalleryProblem load_case_problem(const BenchCase& c, const std::filesystem::path& base_dir);

/// auto picks kron for ad2d with Pe = 0 and for s3d, circulant for trans1d,
/// the extended-precision oracle up to n = 400, dense double expm up to
/// n = 3000 and expmv at 2^-53 otherwise.
Reference compute_reference(const BenchCase& c, const GalleryProblem& problem, const ExpmvOptions& base);

/// e^{tA}v for ad2d(N, 0) from the eigendecomposition of the 1D factor.
Vector<double> ad2d_kron_reference(int n, double t, const Vector<double>& v);
/// e^{tA}v for s3d from exp(itH1) applied along each axis.
Vector<cplx> s3d_kron_reference(int n, double laplacian_scale, double potential_scale, double t,
                                const Vector<cplx>& v);
/// e^{tA}v for trans1d(n) by a direct discrete Fourier transform.
Vector<cplx> trans1d_circulant_reference(int n, double t, const Vector<cplx>& v);

/// Runs every case with every algorithm/norm pair. Cases run on `threads`
/// workers; rows come back in suite order. Failures become rows with
/// status "error".
std::vector<BenchRow> run_bench(const BenchSuite& suite, const ExpmvOptions& base, unsigned threads = 0);

/// Header line of the CSV format.
std::string bench_csv_header();
void write_bench_csv(std::ostream& os, const std::vector<BenchRow>& rows);

} // namespace leja
