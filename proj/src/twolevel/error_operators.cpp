#include <stdexcept>

#include "detail.hpp"
#include "tlc/twolevel.hpp"

namespace tlc::twolevel {

namespace {

DenseMatrix identity_minus(const DenseMatrix& x, Complex scale) {
  DenseMatrix out = -scale * x;
  for (std::size_t i = 0; i < out.rows(); ++i) out(i, i) += 1.0;
  return out;
}

void check_exact_coarse_error(const BlockSystem& sys, const TwoLevelComponents& comp,
                              const DenseMatrix& ec, const Tolerances& tol) {
  const std::size_t n1 = sys.n1();
  const std::size_t n2 = sys.n2();

  const DenseMatrix r_a = comp.R * sys.assembled();
  DenseMatrix expected_ra(n2, n1 + n2);
  expected_ra.set_block(0, n1, comp.M0);
  const double ra_scale = std::max(1.0, comp.R.norm_fro() * sys.assembled().norm_fro());
  if ((r_a - expected_ra).norm_fro() > 1e-12 * ra_scale) {
    throw std::logic_error("R A~ differs from [0, M0]");
  }

  DenseMatrix expected = DenseMatrix::identity(n1 + n2);
  expected.set_block(0, n1, sys.a_lu().solve(sys.b()));
  expected.set_block(n1, n1, DenseMatrix(n2, n2));
  const double scale = std::max(1.0, expected.norm_fro());
  if ((ec - expected).norm_fro() > tol.coarse_error_relative * scale) {
    throw std::logic_error("E_c differs from [[I, A^-1 B], [0, 0]]");
  }
  if ((ec * ec - ec).norm_fro() > tol.coarse_error_relative * scale * scale) {
    throw std::logic_error("E_c is not idempotent");
  }
}

}  // namespace

DenseMatrix smoothed_operator(const DenseMatrix& a_tilde, const TwoLevelComponents& comp) {
  const std::size_t n = a_tilde.rows();
  DenseMatrix out(n, n);
  for (std::size_t j = 0; j < n; ++j) out.set_column(j, comp.smoother_inverse(a_tilde.column(j)));
  return out;
}

DenseMatrix smoother_error(const DenseMatrix& a_tilde, const TwoLevelComponents& comp, double alpha) {
  return identity_minus(smoothed_operator(a_tilde, comp), alpha);
}

DenseMatrix smoother_error(const BlockSystem& sys, const TwoLevelComponents& comp, double alpha) {
  return smoother_error(sys.assembled(), comp, alpha);
}

DenseMatrix coarse_error(const DenseMatrix& a_tilde, const TwoLevelComponents& comp) {
  const DenseMatrix r_a = comp.R * a_tilde;
  const DenseMatrix corr =
      comp.m0_lu ? comp.m0_lu->solve(r_a) : lu_factor(comp.M0).solve(r_a);
  return identity_minus(comp.P * corr, 1.0);
}

DenseMatrix coarse_error(const DenseMatrix& a_tilde, const TwoLevelComponents& comp,
                         const CycleConfig& cfg) {
  if (comp.m0_lu) return coarse_error(a_tilde, comp);
  const DenseMatrix r_a = comp.R * a_tilde;
  DenseMatrix corr(comp.M0.rows(), a_tilde.cols());
  for (std::size_t j = 0; j < a_tilde.cols(); ++j) {
    corr.set_column(j, detail::coarse_solve(comp, cfg, r_a.column(j)));
  }
  return identity_minus(comp.P * corr, 1.0);
}

DenseMatrix coarse_error(const BlockSystem& sys, const TwoLevelComponents& comp, const Tolerances& tol) {
  DenseMatrix ec = coarse_error(sys.assembled(), comp);
  if (comp.exact) check_exact_coarse_error(sys, comp, ec, tol);
  return ec;
}

DenseMatrix error_operator(const DenseMatrix& smoothed, const DenseMatrix& coarse_err,
                           const RelaxationSchedule& schedule) {
  const auto& alphas = schedule.alphas;
  const std::size_t m = alphas.size();
  if (m == 0) return coarse_err;
  // Right factor E_s(a_1) ... E_s(a_m), built from the right so every product
  // has a smoother factor on the left.
  DenseMatrix right = identity_minus(smoothed, alphas[m - 1]);
  for (std::size_t i = m - 1; i-- > 0;) right = identity_minus(smoothed, alphas[i]) * right;
  DenseMatrix out = coarse_err * right;
  // Left factor E_s(a_m) ... E_s(a_1), applied a_1 first.
  for (std::size_t i = 0; i < m; ++i) out = identity_minus(smoothed, alphas[i]) * out;
  return out;
}

DenseMatrix error_operator(const DenseMatrix& a_tilde, const TwoLevelComponents& comp,
                           const CycleConfig& cfg) {
  return error_operator(smoothed_operator(a_tilde, comp), coarse_error(a_tilde, comp, cfg), cfg.schedule);
}

DenseMatrix error_operator(const BlockSystem& sys, const TwoLevelComponents& comp, const CycleConfig& cfg) {
  return error_operator(sys.assembled(), comp, cfg);
}

DenseMatrix preconditioned_operator(const DenseMatrix& a_tilde, const TwoLevelComponents& comp,
                                    const CycleConfig& cfg) {
  const std::size_t n = a_tilde.rows();
  DenseMatrix out(n, n);
  for (std::size_t j = 0; j < n; ++j) out.set_column(j, vcycle_apply(a_tilde, comp, cfg, a_tilde.column(j)));
  return out;
}

}  // namespace tlc::twolevel
