#include "leja/be_tables.hpp"
#include "leja/bench.hpp"
#include "leja/divided_differences.hpp"
#include "leja/expmv.hpp"
#include "leja/gallery.hpp"
#include "leja/leja_points.hpp"
#include "leja/oracle.hpp"
#include "leja/spectral.hpp"
#include "leja/table_file.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <limits>
#include <set>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

using namespace leja;

namespace {

struct Outcome {
  bool pass = true;
  std::vector<std::string> lines;

  void note(const std::string& s) { lines.push_back(s); }
  void check(bool ok, const std::string& s) {
    lines.push_back((ok ? "ok   " : "FAIL ") + s);
    pass = pass && ok;
  }
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

std::string sig3(double x) { return fmt("%.2e", x); }

template <class V>
double rel_inf(const V& y, const V& ref) {
  return (y - ref).cwiseAbs().maxCoeff() / ref.cwiseAbs().maxCoeff();
}

const TableSet& stored(Tolerance tol, PointKind kind) { return load_tables(resolve_table_dir(), tol, kind); }

bool stored_available(Tolerance tol, PointKind kind) {
  return std::filesystem::exists(resolve_table_dir() / table_file_name(tol, kind));
}

// Theta samples for real and conjugate points, rounded to three digits.
struct ThetaRow {
  Tolerance tol;
  const char* name;
  std::vector<std::pair<int, const char*>> values;
};

const std::vector<ThetaRow> kRealTheta = {
    {Tolerance::half(), "half",
     {{5, "6.43e-01"}, {10, "2.12e+00"}, {15, "3.55e+00"}, {20, "5.00e+00"}, {25, "6.37e+00"}, {30, "7.51e+00"}}},
    {Tolerance::single(), "single",
     {{5, "9.62e-02"}, {10, "8.33e-01"}, {15, "1.96e+00"}, {20, "3.26e+00"}, {25, "4.69e+00"}, {30, "5.96e+00"}}},
    {Tolerance::dbl(), "double",
     {{5, "1.74e-03"}, {10, "1.14e-01"}, {15, "5.31e-01"}, {20, "1.23e+00"}, {25, "2.16e+00"}, {30, "3.18e+00"}}},
};

const std::vector<ThetaRow> kConjugateTheta = {
    {Tolerance::half(), "half", {{10, "1.94e+00"}, {20, "4.53e+00"}, {30, "7.11e+00"}}},
    {Tolerance::single(), "single", {{10, "8.11e-01"}, {20, "2.99e+00"}, {30, "5.41e+00"}}},
    {Tolerance::dbl(), "double", {{10, "1.16e-01"}, {20, "1.19e+00"}, {30, "2.98e+00"}}},
};

Outcome theta_tables() {
  Outcome out;
  const unsigned digits = 120;
  const auto real_seq = generate_real_leja(91);
  const auto conj_seq = generate_conjugate_leja(91);
  for (const auto& [rows, seq, kind] : {std::tuple{&kRealTheta, &real_seq, "real"},
                                        std::tuple{&kConjugateTheta, &conj_seq, "conjugate"}}) {
    for (const ThetaRow& row : *rows) {
      std::string got;
      bool ok = true;
      for (const auto& [m, expected] : row.values) {
        const std::string v = sig3(theta_fixed_point(*seq, m, row.tol, digits));
        ok = ok && v == expected;
        got += fmt(" %d:%s%s", m, v.c_str(), v == expected ? "" : (std::string("(want ") + expected + ")").c_str());
      }
      out.check(ok, fmt("%s %s%s", kind, row.name, got.c_str()));
    }
  }
  if (stored_available(Tolerance::dbl(), PointKind::real)) {
    const ThetaTable& t = stored(Tolerance::dbl(), PointKind::real).theta;
    out.check(sig3(t.at(50)) == "7.99e+00" && sig3(t.at(100)) == "2.13e+01",
              fmt("stored double real table: theta_50 %s theta_100 %s", sig3(t.at(50)).c_str(),
                  sig3(t.at(100)).c_str()));
  }
  return out;
}

Outcome ellipse_anchor() {
  Outcome out;
  const TableSet& t = stored(Tolerance::dbl(), PointKind::real);
  const unsigned digits = 100;
  const auto fam = ellipse_family(t.seq, 35, t.theta, Tolerance::dbl(), ContourOptions{}, digits);
  const auto circle = circle_search(t.seq, 35, t.theta, Tolerance::dbl(), ContourOptions{}, digits);
  const int first = fam.empty() ? 0 : fam.front().j;
  const int last = fam.empty() ? 0 : fam.back().j;
  out.check(first == 35 && last == 48, fmt("m=35 family at %u digits spans j = %d..%d (want 35..48)", digits, first, last));
  const double radius = circle ? circle->radius : 0.0;
  out.check(circle && std::abs(radius - 3.60) <= 0.01,
            fmt("largest circle k = %d radius %.4f (want 3.60 +- 0.01)", circle ? circle->k : 0, radius));
  if (auto it = t.families.ellipses.find(35); it != t.families.ellipses.end() && !it->second.empty())
    out.note(fmt("stored family (%u digits) spans j = %d..%d", kDefaultDigits, it->second.front().j,
                 it->second.back().j));
  return out;
}

Outcome planner_anchors() {
  Outcome out;
  const double pe[] = {0.0, 0.2, 0.4, 0.6, 0.8, 1.0};
  const int alg2_m[] = {40, 49, 55, 62, 67, 72};
  const double alg2_c[] = {8.96, 8.28, 9.24, 11.08, 11.34, 12.99};
  const double t = 5e-3;
  for (int i = 0; i < 6; ++i) {
    const GalleryProblem p = build_gallery(GallerySpec::parse(fmt("ad2d:N=20,Pe=%g", pe[i])));
    const RealSparse& a = std::get<RealSparse>(p.matrix);
    const Vector<double>& v = std::get<Vector<double>>(p.vector);
    const Vector<double> ref = oracle_expmv(a, v, t, 30);

    ExpmvOptions o;
    o.tol = Tolerance::dbl();
    o.algorithm = AlgorithmChoice::circle;
    EvalReport r1;
    const double e1 = rel_inf(expmv(a, v, t, o, &r1), ref);
    o.algorithm = AlgorithmChoice::ellipse;
    EvalReport r2;
    const double e2 = rel_inf(expmv(a, v, t, o, &r2), ref);

    const bool ok1 = r1.plan.m_star == 54 && sig3(r1.plan.c_star) == "8.96e+00";
    const bool ok2 = r2.plan.m_star == alg2_m[i] && std::abs(r2.plan.c_star - alg2_c[i]) <= 0.3;
    out.check(ok1 && ok2 && e1 <= 1e-13 && e2 <= 1e-13,
              fmt("Pe=%.1f Alg.1 m*=%d c=%.2f err=%.2e | Alg.2 m*=%d c=%.2f err=%.2e (want %d, %.2f)", pe[i],
                  r1.plan.m_star, r1.plan.c_star, e1, r2.plan.m_star, r2.plan.c_star, e2, alg2_m[i], alg2_c[i]));
  }
  return out;
}

std::filesystem::path bench_dir() { return LEJA_BENCH_DIR; }

Outcome multistep_anchors() {
  Outcome out;
  {
    const Vector<double> v8 = std::get<Vector<double>>(build_gallery(GallerySpec::parse("ad2d:N=8")).vector);
    const double e = rel_inf(ad2d_kron_reference(8, 0.25, v8), oracle_expmv(ad2d(8, 0.0), v8, 0.25, 30));
    const auto s = build_gallery(GallerySpec::parse("s3d:N=4"));
    const Vector<cplx>& vs = std::get<Vector<cplx>>(s.vector);
    const double es = rel_inf(s3d_kron_reference(4, 0.5, 0.5, 0.5, vs),
                              oracle_expmv(std::get<ComplexSparse>(s.matrix), vs, 0.5, 30));
    Vector<cplx> vt(50);
    for (int i = 0; i < 50; ++i)
      vt[i] = std::exp(-100.0 * std::pow(i / 50.0 - 0.5, 2));
    const double et = rel_inf(trans1d_circulant_reference(50, 2.0, vt), oracle_expmv(to_complex(trans1d(50)), vt, 2.0, 30));
    out.check(e <= 1e-12 && es <= 1e-12 && et <= 1e-12,
              fmt("reference calibration vs oracle: kron ad2d %.1e, kron s3d %.1e, circulant %.1e", e, es, et));
  }
  const BenchSuite suite = load_suite(bench_dir() / "table5.json");
  ExpmvOptions base;
  const auto rows = run_bench(suite, base, 0);
  for (const BenchRow& r : rows) {
    if (r.status == "error") {
      out.check(false, r.case_id + " alg " + r.alg + ": " + r.message);
      continue;
    }
    const bool s_ok = r.expected_s && r.s == *r.expected_s;
    const bool mv_ok = r.expected_mv && std::abs(static_cast<double>(r.matvecs - *r.expected_mv)) <= 0.1 * *r.expected_mv;
    out.check(s_ok && mv_ok && r.rel_err <= 1e-6,
              fmt("%-11s Alg.%s s=%lld (want %lld) mv=%lld (want %lld, %+.1f%%) err=%.1e [%s]", r.case_id.c_str(),
                  r.alg.c_str(), r.s, r.expected_s.value_or(-1), r.matvecs, r.expected_mv.value_or(-1),
                  r.expected_mv ? 100.0 * (r.matvecs - *r.expected_mv) / *r.expected_mv : 0.0, r.rel_err,
                  r.reference.c_str()));
  }
  // Alg.1 under "fewest steps first, then smallest degree" for comparison with the expected s.
  for (const BenchCase& bc : suite.cases) {
    if (!bc.expected_s.count("1") || bc.matrix.rfind("gallery:", 0) != 0)
      continue;
    ExpmvOptions o;
    o.tol = bc.tol;
    o.algorithm = AlgorithmChoice::circle;
    const GalleryProblem g = build_gallery(GallerySpec::parse(bc.matrix.substr(8)));
    const Plan p = std::visit([&](const auto& a) { return plan_for(a, bc.t, o); }, g.matrix);
    const ThetaTable& th = load_tables(resolve_table_dir(), bc.tol, p.kind).theta;
    const long long s_min = static_cast<long long>(std::ceil(p.norm_value / th.at(kPlanMaxDegree)));
    int m_min = kPlanMaxDegree;
    for (int m = kPlanMaxDegree; m >= 2; --m)
      if (th.values.count(m) && std::ceil(p.norm_value / th.at(m)) == s_min)
        m_min = m;
    out.note(fmt("%-11s Alg.1 norm=%.6g argmin m=%d s=%lld; fewest-steps rule s=%lld m=%d", bc.id.c_str(),
                 p.norm_value, p.m_star, p.s_star, s_min, m_min));
  }
  return out;
}

Outcome hump_regression() {
  Outcome out;
  const GalleryProblem p = build_gallery(GallerySpec::parse("triw_like:n=20"));
  const RealSparse& a = std::get<RealSparse>(p.matrix);
  const Vector<double>& v = std::get<Vector<double>>(p.vector);
  const Vector<double> ref = oracle_expmv(a, v, 1.0, 50);

  ExpmvOptions o;
  o.tol = Tolerance::dbl();
  o.algorithm = AlgorithmChoice::circle;
  o.early_termination = false;
  o.hump_test = false;
  SpectralInfo info;
  EvalReport plain;
  const double e_plain = (expmv(a, v, 1.0, o, &plain) - ref).norm() / ref.norm();
  plan_for(a, 1.0, o, &info);
  o.hump_test = true;
  EvalReport reduced;
  const double e_red = (expmv(a, v, 1.0, o, &reduced) - ref).norm() / ref.norm();
  std::vector<double> dps = info.dps;
  if (dps.empty()) {
    o.hump_test = true;
    plan_for(a, 1.0, o, &info);
    dps = info.dps;
  }

  out.check(plain.plan.m_star == 92 && std::abs(plain.plan.c_star - 19.10) < 0.005 && plain.plan.s_star == 2,
            fmt("initial plan m*=%d s=%lld c=%.4f (want 92, 2, 19.10)", plain.plan.m_star, plain.plan.s_star,
                plain.plan.c_star));
  std::string dp_text;
  std::vector<long> rounded;
  for (double d : dps) {
    dp_text += fmt(" %.3f", d);
    rounded.push_back(std::lround(d));
  }
  out.check(rounded == std::vector<long>{38, 26, 20, 16, 13}, "d_p =" + dp_text + " (want 38 26 20 16 13)");
  out.check(reduced.plan.hump_reduced && std::abs(reduced.plan.c_star - 6.67) < 0.005 && reduced.plan.c_index == 45,
            fmt("reduced plan c = theta_%d = %.4f (want theta_45 = 6.67)", reduced.plan.c_index, reduced.plan.c_star));
  out.check(e_plain >= 1e-10 && e_plain <= 1e-6 && e_red <= 1e-12,
            fmt("relative error without reduction %.2e (want ~1e-8), with reduction %.2e (want <= 1e-12)", e_plain,
                e_red));
  return out;
}

RealSparse random_matrix(int n, UniformSource& rng, double density) {
  std::vector<Eigen::Triplet<double>> trip;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i == j || rng.next() < density)
        trip.emplace_back(i, j, rng.next(-1.0, 1.0));
  RealSparse a(n, n);
  a.setFromTriplets(trip.begin(), trip.end());
  return a;
}

Vector<double> random_vector(int n, UniformSource& rng) {
  Vector<double> v(n);
  for (int i = 0; i < n; ++i)
    v[i] = rng.next(-1.0, 1.0);
  return v;
}

// Runs one sub-check; an exception fails that check only.
void guarded(Outcome& out, const char* tag, const std::function<void()>& f) {
  try {
    f();
  } catch (const std::exception& e) {
    out.check(false, std::string(tag) + " exception: " + e.what());
  }
}

Outcome properties() {
  Outcome out;
  long long runs = 0;
  long long m_violations = 0;
  const auto track = [&](const EvalReport& r) {
    ++runs;
    for (int m : r.m_used)
      m_violations += m > r.m_star;
  };
  const std::pair<Tolerance, const char*> tols[] = {
      {Tolerance::half(), "half"}, {Tolerance::single(), "single"}, {Tolerance::dbl(), "double"}};

  // (a) diagonal matrices
  guarded(out, "(a)", [&] {
    bool ok = true;
    std::string worst;
    for (const auto& [tol, name] : tols) {
      UniformSource rng(100);
      double worst_ratio = 0.0;
      for (int k = 0; k < 100; ++k) {
        const int n = 20;
        const double r = std::pow(10.0, rng.next(-1.0, 2.5));
        std::vector<Eigen::Triplet<double>> trip;
        Vector<double> exact(n);
        const Vector<double> v = random_vector(n, rng);
        double norm = 0.0;
        for (int i = 0; i < n; ++i) {
          const double d = rng.next(-r, r);
          trip.emplace_back(i, i, d);
          exact[i] = std::exp(d) * v[i];
          norm = std::max(norm, std::abs(d));
        }
        RealSparse a(n, n);
        a.setFromTriplets(trip.begin(), trip.end());
        ExpmvOptions o;
        o.tol = tol;
        EvalReport rep;
        const double err = (expmv(a, v, 1.0, o, &rep) - exact).norm() / exact.norm();
        track(rep);
        worst_ratio = std::max(worst_ratio, err / (10.0 * tol.value * std::max(1.0, norm)));
      }
      ok = ok && worst_ratio <= 1.0;
      worst += fmt(" %s %.2f", name, worst_ratio);
    }
    out.check(ok, "(a) 3 x 100 diagonal matrices, worst err / (10 tol max(1,|A|)):" + worst);
  });

  // (b) node exactness
  guarded(out, "(b)", [&] {
    bool ok = true;
    int tables = 0;
    std::string detail;
    for (PointKind kind : {PointKind::real, PointKind::conjugate})
      for (const auto& [tol, name] : tols) {
        if (!stored_available(tol, kind)) {
          ok = false;
          detail += fmt(" %s/%s missing", std::string(to_string(kind)).c_str(), name);
          continue;
        }
        ++tables;
        double worst = 0.0;
        for (const auto& [m, dd] : stored(tol, kind).dd) {
          double peak = 0.0;
          for (const cplx& z : dd.points)
            peak = std::max(peak, std::abs(std::exp(z)));
          for (std::size_t k = 0; k < dd.points.size(); ++k) {
            const cplx z = dd.points[k];
            worst = std::max(worst, std::abs(newton_eval(dd, z, dd.coefficients.size()) - std::exp(z)) / peak);
          }
        }
        ok = ok && worst <= 1e-12;
        detail += fmt(" %s/%s %.1e", std::string(to_string(kind)).c_str(), name, worst);
      }
    out.check(ok, fmt("(b) node exactness of %d stored tables, error / max |e^xi| over the nodes:", tables) + detail);
  });

  // (c) shift on and off
  guarded(out, "(c)", [&] {
    UniformSource rng(300);
    double worst = 0.0;
    double worst_on = 0.0;
    double worst_off = 0.0;
    for (int k = 0; k < 20; ++k) {
      RealSparse a = random_matrix(20, rng, 0.3);
      const double target = rng.next(1.0, 15.0);
      a *= target / matrix_norm(a, NormKind::one);
      const double offset = rng.next(-5.0, 5.0);
      for (int i = 0; i < 20; ++i)
        a.coeffRef(i, i) += offset;
      const Vector<double> v = random_vector(20, rng);
      const Vector<double> ref = oracle_expmv(a, v, 1.0, 40);
      for (const auto& [tol, name] : tols) {
        if (tol == Tolerance::half())
          continue;
        ExpmvOptions on;
        on.tol = tol;
        ExpmvOptions off = on;
        off.shift = false;
        EvalReport r_on, r_off;
        const Vector<double> y_on = expmv(a, v, 1.0, on, &r_on);
        const Vector<double> y_off = expmv(a, v, 1.0, off, &r_off);
        track(r_on);
        track(r_off);
        worst = std::max(worst, (y_on - y_off).norm() / y_on.norm() / (10.0 * tol.value));
        worst_on = std::max(worst_on, (y_on - ref).norm() / ref.norm() / tol.value);
        worst_off = std::max(worst_off, (y_off - ref).norm() / ref.norm() / tol.value);
      }
    }
    out.check(worst <= 1.0, fmt("(c) shift on/off on 20 matrices at single and double, worst diff / (10 tol) %.2f", worst));
    out.note(fmt("    worst error vs oracle / tol: shift on %.1f, shift off %.1f", worst_on, worst_off));
  });

  // (e) phi1 identity
  guarded(out, "(e)", [&] {
    UniformSource rng(500);
    double worst = 0.0;
    for (int k = 0; k < 50; ++k) {
      RealSparse a = random_matrix(20, rng, 0.5);
      a *= 1.0 / std::sqrt(20.0);
      for (int i = 0; i < 20; ++i)
        a.coeffRef(i, i) -= 2.0;
      const Vector<double> w = random_vector(20, rng);
      ExpmvOptions o;
      o.tol = Tolerance::dbl();
      EvalReport rep;
      const Vector<double> y = phi1(a, w, 1.0, o, &rep);
      track(rep);
      const Vector<double> ew = oracle_expmv(a, w, 1.0, 30);
      const Vector<double> ref = Eigen::MatrixXd(a).partialPivLu().solve(ew - w);
      worst = std::max(worst, (y - ref).norm() / ref.norm() / (100.0 * Tolerance::dbl().value));
    }
    out.check(worst <= 1.0, fmt("(e) phi1 vs A^-1 (e^A - I) w on 50 matrices, worst err / (100 tol) %.2f", worst));
  });

  // (f) conjugate points keep real data real
  guarded(out, "(f)", [&] {
    UniformSource rng(600);
    long long nonzero_imag = 0;
    for (int k = 0; k < 20; ++k) {
      const RealSparse a = random_matrix(20, rng, 0.3);
      const Vector<double> v = random_vector(20, rng);
      ExpmvOptions o;
      o.points = PointKind::conjugate;
      o.tol = k % 2 ? Tolerance::dbl() : Tolerance::single();
      EvalReport rep;
      const Vector<cplx> y = expmv(to_complex(a), Vector<cplx>(v.cast<cplx>()), rng.next(0.5, 5.0), o, &rep);
      track(rep);
      for (const cplx& z : y)
        nonzero_imag += z.imag() != 0.0;
    }
    out.check(nonzero_imag == 0, fmt("(f) conjugate kind on 20 real matrices, %lld nonzero imaginary parts", nonzero_imag));
  });

  // (d) m_used <= m_*
  out.check(m_violations == 0, fmt("(d) m_used <= m_* in all %lld runs above, %lld violations", runs, m_violations));

  // (g) planner brute force
  guarded(out, "(g)", [&] {
    const TableSet& t = stored(Tolerance::dbl(), PointKind::real);
    UniformSource rng(700);
    int mismatches = 0;
    for (int k = 0; k < 20; ++k) {
      const double norm = std::pow(10.0, rng.next(-2.0, 4.0));
      const Plan p = plan_circle(norm, t.theta);
      long long best = std::numeric_limits<long long>::max();
      for (int m = 2; m <= kPlanMaxDegree; ++m)
        if (t.theta.has(m))
          best = std::min(best, m * static_cast<long long>(std::max(1.0, std::ceil(norm / t.theta.at(m)))));
      mismatches += p.predicted_cost != best;

      const double w = norm * rng.next(0.1, 1.0);
      const double h = norm * rng.next(0.0, 0.5);
      const SpectralBox box{-w, w, -h, h};
      const Plan q = plan_ellipse(box, t.families, t.theta);
      long long best2 = std::numeric_limits<long long>::max();
      for (int m = 2; m <= kPlanMaxDegree; ++m) {
        std::vector<std::pair<double, double>> shapes;
        if (auto it = t.families.ellipses.find(m); it != t.families.ellipses.end())
          for (const EllipseRecord& r : it->second)
            shapes.emplace_back(r.a, r.b);
        if (auto it = t.families.circles.find(m); it != t.families.circles.end())
          shapes.emplace_back(it->second.radius, it->second.radius);
        for (const auto& [sa, sb] : shapes) {
          const double sc = ellipse_scaling(box, PointKind::real, sa, sb, 1.0 / 50.0);
          if (std::isfinite(sc))
            best2 = std::min(best2, m * static_cast<long long>(std::max(1.0, std::ceil(sc))));
        }
      }
      mismatches += q.predicted_cost != best2;
    }
    out.check(mismatches == 0, fmt("(g) Alg.1 and Alg.2 vs brute force on 20 seeded norms, %d mismatches", mismatches));
  });
  return out;
}

Outcome not_reproducible() {
  Outcome out;
  const char* ext = std::getenv("LEJA_EXTERNAL_DIR");
  const std::filesystem::path dir = ext ? ext : (bench_dir() / ".." / "external").string();
  const bool have = std::filesystem::exists(dir / "orani676.mtx") && std::filesystem::exists(dir / "bcspwr10.mtx");
  if (have) {
    BenchSuite suite = load_suite(bench_dir() / "external.json");
    suite.base_dir = bench_dir();
    for (BenchCase& c : suite.cases)
      c.matrix = (dir / std::filesystem::path(c.matrix).filename()).string();
    for (const BenchRow& r : run_bench(suite, ExpmvOptions{}, 0))
      out.check(r.status != "error" && r.rel_err <= 1e-6,
                fmt("%s Alg.%s s=%lld mv=%lld err=%.1e (reported s=%lld mv=%lld)", r.case_id.c_str(), r.alg.c_str(),
                    r.s, r.matvecs, r.rel_err, r.expected_s.value_or(-1), r.expected_mv.value_or(-1)));
  } else {
    out.note("orani676 and bcspwr10 rows: not reproduced, the matrix files were not supplied (" + dir.string() + ")");
  }
  out.note("triu and onesided rows: the original random draws are unrecoverable; seeded stand-ins are checked for "
           "stability only");
  BenchSuite seeded = load_suite(bench_dir() / "seeded.json");
  std::erase_if(seeded.cases, [](const BenchCase& c) { return c.id.rfind("triw", 0) == 0; });
  for (const BenchRow& r : run_bench(seeded, ExpmvOptions{}, 0))
    out.check(r.status != "error" && r.rel_err <= 1e-6,
              fmt("%s Alg.%s s=%lld mv=%lld err=%.1e [%s]", r.case_id.c_str(), r.alg.c_str(), r.s, r.matvecs,
                  r.rel_err, r.reference.c_str()));
  out.note("lesp condition-number line: not reproduced, the exponential condition number is out of scope");
  return out;
}

struct Criterion {
  int id;
  const char* title;
  std::function<Outcome()> run;
};

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance checks"};
  std::vector<int> only;
  bool strict = false;
  app.add_option("--only", only, "run only these criteria")->check(CLI::Range(1, 7));
  app.add_flag("--strict", strict, "exit 1 when a criterion fails");
  CLI11_PARSE(app, argc, argv);

  const std::vector<Criterion> criteria = {
      {1, "theta tables at 120 digits", theta_tables},
      {2, "ellipse family anchor m=35 double real", ellipse_anchor},
      {3, "planner anchors ad2d N=20 t=5e-3", planner_anchors},
      {4, "multi-step anchors tol 2^-24", multistep_anchors},
      {5, "hump regression shifted triw", hump_regression},
      {6, "property suite", properties},
      {7, "results not reproducible at desk scale", not_reproducible},
  };

  int failed = 0;
  for (const Criterion& c : criteria) {
    if (!only.empty() && std::find(only.begin(), only.end(), c.id) == only.end())
      continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.check(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    for (const auto& l : o.lines)
      std::printf("    %s\n", l.c_str());
    std::printf("criterion %d %s: %s (%.0f s)\n", c.id, o.pass ? "PASS" : "FAIL", c.title, secs);
    std::fflush(stdout);
    failed += !o.pass;
  }
  std::printf("%d criteria failed\n", failed);
  return strict && failed ? 1 : 0;
}
