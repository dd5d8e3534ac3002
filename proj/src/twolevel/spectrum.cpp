#include <algorithm>
#include <cmath>

#include "tlc/twolevel.hpp"

namespace tlc::twolevel {

SpectralReport cluster_spectrum(std::vector<Complex> eigenvalues, const std::vector<Complex>* centers,
                                double gap) {
  std::sort(eigenvalues.begin(), eigenvalues.end(), [](Complex x, Complex y) {
    return x.real() != y.real() ? x.real() < y.real() : x.imag() < y.imag();
  });
  SpectralReport report;
  report.eigenvalues = eigenvalues;
  std::vector<std::size_t> assignment(eigenvalues.size());

  if (centers != nullptr && !centers->empty()) {
    report.cluster_centers = *centers;
    report.multiplicity_per_center.assign(centers->size(), 0);
    for (std::size_t i = 0; i < eigenvalues.size(); ++i) {
      std::size_t best = 0;
      for (std::size_t c = 1; c < centers->size(); ++c) {
        if (std::abs(eigenvalues[i] - (*centers)[c]) < std::abs(eigenvalues[i] - (*centers)[best])) best = c;
      }
      assignment[i] = best;
      ++report.multiplicity_per_center[best];
    }
  } else {
    std::vector<Complex> sums;
    for (std::size_t i = 0; i < eigenvalues.size(); ++i) {
      std::size_t found = sums.size();
      for (std::size_t c = 0; c < sums.size(); ++c) {
        if (std::abs(eigenvalues[i] - report.cluster_centers[c]) <= gap) {
          found = c;
          break;
        }
      }
      if (found == sums.size()) {
        sums.push_back(0.0);
        report.cluster_centers.push_back(eigenvalues[i]);
        report.multiplicity_per_center.push_back(0);
      }
      sums[found] += eigenvalues[i];
      ++report.multiplicity_per_center[found];
      report.cluster_centers[found] = sums[found] / static_cast<double>(report.multiplicity_per_center[found]);
      assignment[i] = found;
    }
  }

  for (std::size_t i = 0; i < eigenvalues.size(); ++i) {
    report.max_deviation =
        std::max(report.max_deviation, std::abs(eigenvalues[i] - report.cluster_centers[assignment[i]]));
  }
  return report;
}

namespace {

SpectralReport cluster_for(const std::vector<Complex>& eigs, const CycleConfig& cfg, const Tolerances& tol) {
  if (cfg.schedule.source == relaxation::ScheduleSource::theorem && cfg.schedule.m > 0) {
    const std::vector<Complex> centers{1.0, relaxation::clustered_eigenvalue(cfg.schedule.m)};
    return cluster_spectrum(eigs, &centers, tol.cluster_gap);
  }
  return cluster_spectrum(eigs, nullptr, tol.cluster_gap);
}

}  // namespace

SpectralReport preconditioned_spectrum(const DenseMatrix& a_tilde, const TwoLevelComponents& comp,
                                       const CycleConfig& cfg, const Tolerances& tol) {
  if (a_tilde.rows() > 1024) {
    throw Error(ErrorKind::DimensionTooLarge, "preconditioned spectrum limited to dimension 1024");
  }
  return cluster_for(eigenvalues(preconditioned_operator(a_tilde, comp, cfg), tol), cfg, tol);
}

SpectralReport preconditioned_spectrum(const BlockSystem& sys, const TwoLevelComponents& comp,
                                       const CycleConfig& cfg, const Tolerances& tol) {
  return preconditioned_spectrum(sys.assembled(), comp, cfg, tol);
}

SpectralReport preconditioned_spectrum_extended(const BlockSystem& sys, const CycleConfig& cfg,
                                                const Tolerances& tol) {
  const std::size_t n = sys.size();
  const std::size_t n1 = sys.n1();
  const std::size_t n2 = sys.n2();
  if (n > 1024) throw Error(ErrorKind::DimensionTooLarge, "preconditioned spectrum limited to dimension 1024");
  const ExtMatrix at(sys.assembled());
  const ExtMatrix a(sys.a());
  const ExtMatrix d(sys.d());

  // S^-1 A~ one block row at a time.
  ExtMatrix s_inv_at(n, n);
  s_inv_at.set_block(0, 0, refined_solve(a, sys.a_lu(), at.block(0, 0, n1, n)));
  s_inv_at.set_block(n1, 0, refined_solve(d, sys.d_lu(), at.block(n1, 0, n2, n)));

  ExtMatrix p(n, n2);
  p.set_block(0, 0, -1.0L * refined_solve(a, sys.a_lu(), ExtMatrix(sys.b())));
  p.set_block(n1, 0, ExtMatrix::identity(n2));
  const LuFactors at_lu = lu_factor(sys.a().transpose(), tol);
  ExtMatrix r(n2, n);
  r.set_block(0, 0, -1.0L * refined_solve(a.transpose(), at_lu, ExtMatrix(sys.c().transpose())).transpose());
  r.set_block(0, n1, ExtMatrix::identity(n2));

  const ExtMatrix r_at = r * at;
  const ExtMatrix m0 = r_at * p;
  const LuFactors m0_lu = lu_factor(m0.rounded(), tol);
  const ExtMatrix id = ExtMatrix::identity(n);
  const ExtMatrix e_c = id - p * refined_solve(m0, m0_lu, r_at);

  ExtMatrix smooth = id;
  for (const double alpha : cfg.schedule.alphas) smooth = (id - static_cast<long double>(alpha) * s_inv_at) * smooth;
  const ExtMatrix e_m = smooth * (e_c * smooth);
  return cluster_for(eigenvalues_extended(id - e_m, tol), cfg, tol);
}

}  // namespace tlc::twolevel
