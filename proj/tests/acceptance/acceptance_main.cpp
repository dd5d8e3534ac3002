// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "tlc/cli.hpp"
#include "tlc/linalg.hpp"
#include "tlc/problems.hpp"
#include "tlc/relaxation.hpp"
#include "tlc/twolevel.hpp"

using namespace tlc;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Verdict {
  bool pass = true;
  std::string detail;
};

int failures = 0;

void report(int id, const char* name, const std::function<Verdict()>& body) {
  Verdict v;
  try {
    v = body();
  } catch (const std::exception& e) {
    v = {false, std::string("exception: ") + e.what()};
  }
  if (!v.pass) ++failures;
  std::printf("%s %2d %s: %s\n", v.pass ? "PASS" : "FAIL", id, name, v.detail.c_str());
  std::fflush(stdout);
}

std::string fmt(const char* f, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) {
    std::vector<std::string> f;
    std::stringstream ls(line);
    for (std::string cell; std::getline(ls, cell, ',');) f.push_back(cell);
    if (!line.empty() && line.back() == ',') f.emplace_back();
    rows.push_back(std::move(f));
  }
  return rows;
}

Vector random_rhs(std::size_t n, std::uint64_t seed) {
  problems::NormalSource g(seed);
  Vector v(n);
  for (auto& z : v) {
    const double re = g.next();
    z = Complex(re, g.next());
  }
  return v;
}

// 1. Two-value spectrum on seeded random block systems.
Verdict theorem_clustering() {
  const auto t0 = Clock::now();
  double worst_double = 0.0, worst = 0.0;
  int fallbacks = 0;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto sys = problems::random_block_system({24, 16, seed});
    const auto comp = twolevel::exact_components(sys);
    for (std::size_t m = 1; m <= 3; ++m) {
      const twolevel::CycleConfig cfg{relaxation::theorem_schedule(m)};
      double dev = twolevel::preconditioned_spectrum(sys, comp, cfg).max_deviation;
      worst_double = std::max(worst_double, dev);
      if (!(dev <= 1e-8)) {
        dev = twolevel::preconditioned_spectrum_extended(sys, cfg).max_deviation;
        ++fallbacks;
      }
      worst = std::max(worst, dev);
    }
  }
  const double secs = seconds_since(t0);
  return {worst <= 1e-8 && secs < 5.0,
          "max deviation " + fmt("%.3g", worst) + " (double alone " + fmt("%.3g", worst_double) + ", " +
              std::to_string(fallbacks) + " of 30 cases re-evaluated in long double), " + fmt("%.2f", secs) +
              " s"};
}

// 2. Preconditioned GMRES terminates after two steps. Rounding in the
// smoothing sweeps grows with ||E_m||, so the worst case reports it.
Verdict gmres_two_steps() {
  double worst = 0.0, worst_em = 0.0;
  std::size_t max_iters = 0, passed = 0, worst_m = 0;
  std::uint64_t worst_seed = 0;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto sys = problems::random_block_system({24, 16, seed});
    const auto comp = twolevel::exact_components(sys);
    const DenseMatrix& a = sys.assembled();
    const Vector b = random_rhs(sys.size(), 1000 + seed);
    for (std::size_t m = 1; m <= 3; ++m) {
      const twolevel::CycleConfig cfg{relaxation::theorem_schedule(m)};
      const auto out = gmres([&](const Vector& x) { return a * x; },
                             [&](const Vector& x) { return twolevel::vcycle_apply(sys, comp, cfg, x); }, b,
                             1e-14, 2);
      const double res = norm2(sub(b, a * out.solution)) / norm2(b);
      max_iters = std::max(max_iters, out.iterations);
      if (res <= 1e-10) ++passed;
      if (res > worst) {
        worst = res;
        worst_seed = seed;
        worst_m = m;
        worst_em = twolevel::error_operator(sys, comp, cfg).norm_fro();
      }
    }
  }
  return {passed == 30 && max_iters <= 2,
          std::to_string(passed) + " of 30 cases reach 1e-10 within " + std::to_string(max_iters) +
              " iterations; worst seed " + std::to_string(worst_seed) + " m=" + std::to_string(worst_m) + ": " +
              fmt("%.3g", worst) + " with ||E_m||_F = " + fmt("%.3g", worst_em)};
}

// 3. Scalar response constancy and closed form vs 2x2 oracle.
Verdict response_constancy() {
  problems::SplitMix64 rng(31337);
  const auto disc = [&] {
    const double r = 4.0 * std::sqrt(rng.uniform());
    return std::polar(r, 2.0 * std::numbers::pi * rng.uniform());
  };
  double worst_const = 0.0;
  for (std::size_t m = 1; m <= 6; ++m) {
    const auto s = relaxation::theorem_schedule(m);
    const double want = 1.0 / ((2.0 * m + 1.0) * (2.0 * m + 1.0));
    for (int k = 0; k < 100; ++k) {
      worst_const = std::max(worst_const, std::abs(relaxation::scalar_response_closed(s, disc()).value - want));
    }
  }
  double worst_oracle = 0.0;
  for (int k = 0; k < 300; ++k) {
    const std::size_t m = 1 + rng.next() % 6;
    std::vector<double> alphas(m);
    for (auto& a : alphas) a = 0.1 + 1.9 * rng.uniform();
    const auto s = relaxation::explicit_schedule(alphas);
    const Complex lambda = disc();
    const Complex c = relaxation::scalar_response_closed(s, lambda).value;
    const Complex o = relaxation::scalar_response_oracle(s, lambda).value;
    worst_oracle = std::max(worst_oracle, std::abs(c - o) / std::max(1.0, std::abs(o)));
  }
  return {worst_const <= 1e-12 && worst_oracle <= 1e-12,
          "constancy " + fmt("%.3g", worst_const) + ", closed vs oracle " + fmt("%.3g", worst_oracle)};
}

// 4. One pass of the two-block scheme is a direct solve.
Verdict two_block_identity() {
  struct Size {
    std::size_t n1, n2;
  };
  double worst_res = 0.0, worst_lu = 0.0;
  std::uint64_t seed = 500;
  for (Size sz : {Size{24, 16}, Size{32, 32}, Size{10, 5}, Size{7, 40}, Size{1, 3}}) {
    for (int rep = 0; rep < 4; ++rep, ++seed) {
      const auto sys = problems::random_block_system({sz.n1, sz.n2, seed});
      const Vector f = random_rhs(sys.size(), seed + 77);
      const Vector u = twolevel::two_block_inverse_apply(sys, f);
      const Vector ref = lu_solve(sys.assembled(), f);
      worst_res = std::max(worst_res, norm2(sub(f, sys.assembled() * u)) / norm2(f));
      worst_lu = std::max(worst_lu, norm2(sub(u, ref)) / norm2(ref));
    }
  }
  return {worst_res <= 1e-10 && worst_lu <= 1e-9,
          "relative residual " + fmt("%.3g", worst_res) + ", distance to LU " + fmt("%.3g", worst_lu)};
}

// 5. Both cosine product identities and the defect product.
Verdict trig_identities() {
  problems::NormalSource g(2718);
  double worst = 0.0, worst_defect = 0.0;
  for (std::size_t m = 1; m <= 10; ++m) {
    for (int k = 0; k < 20; ++k) {
      const double re = g.next();
      const Complex x(re, g.next());
      for (auto sign : {relaxation::TrigSign::plus, relaxation::TrigSign::minus}) {
        const auto r = relaxation::trig_identity_check(m, x, sign);
        worst = std::max(worst, std::abs(r.lhs - r.rhs) / std::max(1.0, std::abs(r.lhs)));
      }
    }
    const double want = std::pow((2.0 * m + 1.0) / std::ldexp(1.0, static_cast<int>(m)), 2);
    worst_defect = std::max(worst_defect, std::abs(relaxation::cosine_defect_product(m) - want) / want);
  }
  return {worst <= 1e-12 && worst_defect <= 1e-12,
          "identities " + fmt("%.3g", worst) + ", defect product " + fmt("%.3g", worst_defect)};
}

// 6. E_s and E_c map span{v1, v2} into itself for every eigenpair of T.
Verdict invariant_subspaces() {
  double worst = 0.0;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto sys = problems::random_block_system({24, 16, seed});
    const auto analysis = twolevel::coupling_analysis(sys);
    for (double alpha : {0.0, 2.0 / 3.0, 1.0, 1.4472135954999579}) {
      worst = std::max(worst, twolevel::invariant_check(sys, analysis, alpha));
    }
  }
  return {worst <= 1e-8, "worst scaled residual " + fmt("%.3g", worst)};
}

// 7. rho(E_m) sweep on the 16x16 grid, through the CLI.
Verdict fd_sweep() {
  const auto t0 = Clock::now();
  std::ostringstream out, err;
  const int code = cli::run({"sweep-rho", "--problem", "fd2d", "--N", "16", "--m", "6"}, out, err);
  const double secs = seconds_since(t0);
  if (code != cli::kOk) return {false, "sweep-rho exited " + std::to_string(code) + ": " + err.str()};
  const auto rows = csv_rows(out.str());
  std::vector<double> theorem(7, -1.0), classical(7, -1.0);
  std::vector<std::string> constants;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto& r = rows[i];
    const std::size_t m = std::stoul(r[2]);
    if (r[0] == "theorem") theorem[m] = std::stod(r[3]);
    if (r[0] == "classical") classical[m] = std::stod(r[3]);
    if (r[0] == "constant" && std::find(constants.begin(), constants.end(), r[1]) == constants.end()) {
      constants.push_back(r[1]);
    }
  }
  bool ordered = true;
  std::string curve;
  for (std::size_t m = 1; m <= 6; ++m) {
    ordered = ordered && theorem[m] >= 0.0 && classical[m] >= 0.0 && theorem[m] <= classical[m] + 1e-12;
    curve += (m > 1 ? " " : "") + fmt("%.4g", theorem[m]) + "/" + fmt("%.4g", classical[m]);
  }
  const bool equal_m1 = std::abs(theorem[1] - classical[1]) <= 1e-12;
  const bool complete = rows.size() == 1 + 12 * 6 && constants.size() == 10;
  return {ordered && equal_m1 && complete && secs < 60.0,
          "theorem/classical rho for m=1..6: " + curve + "; " + std::to_string(constants.size()) +
              " constant weights, " + fmt("%.1f", secs) + " s"};
}

// 8. Printed DG stencils and the SIPG collapse.
Verdict dg_stencils() {
  double worst_stencil = 0.0;
  for (double d : {0.75, 1.0, 2.0, 10.0}) {
    const double a = d / (4 * d - 2), b = (d - 1) / (4 * d - 2);
    const DenseMatrix el{{a, b, 0, 0}, {b, a, 0, 0}, {1, 0, 0, 0}, {0, 1, 0, 0},
                         {a, b, a, b}, {b, a, b, a}, {0, 0, 1, 0}, {0, 0, 0, 1}};
    const double p = (d - 1) / d, q = 1 / (2 * d);
    const DenseMatrix in{{p, q, 0, 0}, {1, 0, 0, 0}, {0, 1, 0, 0}, {q, p, q, 0},
                         {0, q, p, q}, {0, 0, 1, 0}, {0, 0, 0, 1}, {0, 0, q, p}};
    const DenseMatrix sel{{d / (2 * d - 1), (d - 1) / (2 * d - 1)}, {(d - 1) / (2 * d - 1), d / (2 * d - 1)}};
    const DenseMatrix sin{{1 / d, 0}, {0, 1 / d}};
    using problems::DgKind;
    for (auto [got, want] : {std::pair{problems::dg_local_prolongation(DgKind::element_wise, d), el},
                             std::pair{problems::dg_local_prolongation(DgKind::interface_wise, d), in},
                             std::pair{problems::dg_local_smoother(DgKind::element_wise, d), sel},
                             std::pair{problems::dg_local_smoother(DgKind::interface_wise, d), sin}}) {
      worst_stencil = std::max(worst_stencil, (got - want).norm_fro());
    }
  }
  const auto sipg = problems::sipg_1d_matrix(8, 2.0);
  const auto sys = twolevel::split(sipg.matrix, problems::dg_element_red(8));
  const auto comp = twolevel::exact_components(sys);
  double worst = 0.0;
  for (std::size_t m = 1; m <= 2; ++m) {
    worst = std::max(worst,
                     twolevel::preconditioned_spectrum(sys, comp, {relaxation::theorem_schedule(m)}).max_deviation);
  }
  return {worst_stencil <= 1e-14 && worst <= 1e-8 && sipg.positive_definite,
          "stencil mismatch " + fmt("%.3g", worst_stencil) + ", SIPG deviation " + fmt("%.3g", worst)};
}

// 9. Nonnormal study: collapse, FOV enclosure, E_m baselines.
Verdict nonnormal_study() {
  const problems::RandomNonnormalSpec spec{};
  const DenseMatrix b = problems::random_nonnormal(spec);
  std::vector<std::size_t> leading(spec.n / 2);
  for (std::size_t i = 0; i < leading.size(); ++i) leading[i] = i;
  const auto sys = twolevel::split(b, leading);
  const auto direct = twolevel::exact_components(sys);

  bool two_clusters = true;
  double worst_double = 0.0, worst = 0.0;
  for (std::size_t m = 1; m <= 3; ++m) {
    const twolevel::CycleConfig cfg{relaxation::theorem_schedule(m)};
    auto rep = twolevel::preconditioned_spectrum(sys, direct, cfg);
    worst_double = std::max(worst_double, rep.max_deviation);
    if (!(rep.max_deviation <= 1e-7)) rep = twolevel::preconditioned_spectrum_extended(sys, cfg);
    worst = std::max(worst, rep.max_deviation);
    two_clusters = two_clusters && rep.cluster_centers.size() == 2 &&
                   rep.multiplicity_per_center[0] == sys.n2() && rep.multiplicity_per_center[1] == sys.n1();
  }

  const std::size_t angles = 256;
  const auto fov_b = fov_boundary(b, angles);
  const auto hull = convex_hull(fov_b.points());
  bool enclosed = true;
  for (Complex z : eigenvalues(b)) enclosed = enclosed && hull_contains(hull, z, 1e-6);

  // Frozen from the first run: recursive coarse policy, 256 angles.
  const double baseline_b = 7.354625215042827;
  const double baseline_em[3] = {34.69061087083412, 529.5405160364959, 10166.35053750631};
  const auto recursive = twolevel::exact_components(sys, twolevel::CoarsePolicy::recursive());
  double drift = std::abs(fov_b.numerical_radius() - baseline_b) / baseline_b;
  std::string radii;
  for (std::size_t m = 1; m <= 3; ++m) {
    const DenseMatrix em = twolevel::error_operator(sys, recursive, {relaxation::theorem_schedule(m)});
    const double r = fov_boundary(em, angles).numerical_radius();
    drift = std::max(drift, std::abs(r - baseline_em[m - 1]) / baseline_em[m - 1]);
    radii += (m > 1 ? " " : "") + fmt("%.6g", r);
  }
  return {two_clusters && worst <= 1e-7 && enclosed && drift <= 1e-6,
          "deviation " + fmt("%.3g", worst) + " (double alone " + fmt("%.3g", worst_double) + "), " +
              (enclosed ? "spectrum of B inside its FOV" : "eigenvalue of B outside its FOV") +
              ", E_m numerical radii " + radii + " (baseline drift " + fmt("%.3g", drift) + ")"};
}

// 10. Kernel sanity.
Verdict kernel_sanity() {
  problems::NormalSource g(404);
  const DenseMatrix a = problems::random_complex_matrix(20, 20, g);
  Complex sum{}, prod{1.0};
  for (Complex z : eigenvalues(a)) {
    sum += z;
    prod *= z;
  }
  Complex trace{};
  for (std::size_t i = 0; i < 20; ++i) trace += a(i, i);
  const Complex det = lu_factor(a).determinant();
  const double trace_err = std::abs(sum - trace) / std::max(1.0, std::abs(trace));
  const double det_err = std::abs(prod - det) / std::abs(det);

  const auto fov = fov_boundary(DenseMatrix{{0.0, 1.0}, {0.0, 0.0}}, 256);
  double disc_err = 0.0;
  for (Complex p : fov.points()) disc_err = std::max(disc_err, std::abs(std::abs(p) - 0.5));

  const DenseMatrix w = problems::random_complex_matrix(3, 4, g), x = problems::random_complex_matrix(4, 2, g);
  const DenseMatrix y = problems::random_complex_matrix(2, 5, g), z = problems::random_complex_matrix(5, 3, g);
  const double kron_err = (kron(w, y) * kron(x, z) - kron(w * x, y * z)).norm_fro();

  return {trace_err <= 1e-10 && det_err <= 1e-10 && disc_err <= 1e-6 && kron_err <= 1e-12,
          "trace " + fmt("%.3g", trace_err) + ", det " + fmt("%.3g", det_err) + ", nilpotent disc " +
              fmt("%.3g", disc_err) + ", Kronecker " + fmt("%.3g", kron_err)};
}

}  // namespace

int main() {
  report(1, "theorem clustering", theorem_clustering);
  report(2, "GMRES in two iterations", gmres_two_steps);
  report(3, "scalar response", response_constancy);
  report(4, "two-block identity", two_block_identity);
  report(5, "trigonometric identities", trig_identities);
  report(6, "invariant subspaces", invariant_subspaces);
  report(7, "FD sweep", fd_sweep);
  report(8, "DG stencils and SIPG", dg_stencils);
  report(9, "nonnormal study", nonnormal_study);
  report(10, "kernel sanity", kernel_sanity);
  std::printf("%d of 10 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
