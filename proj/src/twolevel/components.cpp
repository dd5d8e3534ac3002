#include <numeric>
#include <stdexcept>

#include "detail.hpp"
#include "tlc/twolevel.hpp"

namespace tlc::twolevel {

namespace {

TwoLevelComponents exact_components_at(const BlockSystem& sys, CoarsePolicy policy,
                                       const Tolerances& tol, std::size_t depth);

// Direct LU of M0, or the two-level method applied to M0's leading-half
// block partition.
void attach_coarse_solver(TwoLevelComponents& comp, const Tolerances& tol, std::size_t depth) {
  const std::size_t nc = comp.M0.rows();
  const bool direct = comp.coarse_policy.kind == CoarsePolicy::Kind::direct ||
                      nc <= std::max<std::size_t>(comp.coarse_policy.direct_threshold, 1);
  if (direct) {
    comp.m0_lu = std::make_shared<const LuFactors>(lu_factor(comp.M0, tol));
    return;
  }
  if (depth + 1 >= tol.max_recursion_depth) {
    throw Error(ErrorKind::RecursionDepthExceeded,
                "recursive coarse solve deeper than " + std::to_string(tol.max_recursion_depth));
  }
  std::vector<std::size_t> leading((nc + 1) / 2);
  std::iota(leading.begin(), leading.end(), std::size_t{0});
  BlockSystem sub = split(comp.M0, leading);
  TwoLevelComponents sub_comp = exact_components_at(sub, comp.coarse_policy, tol, depth + 1);
  comp.next_level = std::make_shared<const CoarseLevel>(CoarseLevel{std::move(sub), std::move(sub_comp)});
}

TwoLevelComponents exact_components_at(const BlockSystem& sys, CoarsePolicy policy,
                                       const Tolerances& tol, std::size_t depth) {
  const std::size_t n1 = sys.n1();
  const std::size_t n2 = sys.n2();
  const DenseMatrix a_inv = sys.a_lu().inverse();
  const DenseMatrix a_inv_b = a_inv * sys.b();
  const DenseMatrix c_a_inv = sys.c() * a_inv;

  TwoLevelComponents comp;
  comp.exact = true;
  comp.coarse_policy = policy;
  comp.P = DenseMatrix(n1 + n2, n2);
  comp.P.set_block(0, 0, -1.0 * a_inv_b);
  comp.P.set_block(n1, 0, DenseMatrix::identity(n2));
  comp.R = DenseMatrix(n2, n1 + n2);
  comp.R.set_block(0, 0, -1.0 * c_a_inv);
  comp.R.set_block(0, n1, DenseMatrix::identity(n2));
  comp.M0 = comp.R * (sys.assembled() * comp.P);

  const DenseMatrix schur = sys.d() - sys.c() * a_inv_b;
  const double scale = comp.R.norm_fro() * sys.assembled().norm_fro() * comp.P.norm_fro();
  if ((comp.M0 - schur).norm_fro() > tol.schur_identity_relative * scale) {
    throw std::logic_error("R A P differs from the Schur complement D - C A^-1 B");
  }

  auto a_lu = sys.shared_a_lu();
  auto d_lu = sys.shared_d_lu();
  comp.smoother_inverse = [a_lu, d_lu, n1, n2](const Vector& f) {
    const std::span<const Complex> fs(f);
    Vector top = a_lu->solve(fs.subspan(0, n1));
    const Vector bottom = d_lu->solve(fs.subspan(n1, n2));
    top.insert(top.end(), bottom.begin(), bottom.end());
    return top;
  };
  attach_coarse_solver(comp, tol, depth);
  return comp;
}

Vector coarse_solve_at(const TwoLevelComponents& comp, const CycleConfig& cfg,
                       std::span<const Complex> g, std::size_t depth);

Vector vcycle_at(const DenseMatrix& a_tilde, const TwoLevelComponents& comp, const CycleConfig& cfg,
                 std::span<const Complex> f, std::size_t depth) {
  if (depth >= kTolerances.max_recursion_depth) {
    throw Error(ErrorKind::RecursionDepthExceeded, "V-cycle recursion too deep");
  }
  const std::size_t n = a_tilde.rows();
  if (f.size() != n) throw Error(ErrorKind::SizeMismatch, "vcycle_apply right-hand side length");
  Vector x(n);
  const auto smooth = [&](double alpha) {
    const Vector r = sub(f, a_tilde * x);
    axpy(alpha, comp.smoother_inverse(r), x);
  };
  for (double alpha : cfg.schedule.alphas) smooth(alpha);
  {
    const Vector r = sub(f, a_tilde * x);
    const Vector correction = comp.P * coarse_solve_at(comp, cfg, comp.R * r, depth);
    axpy(1.0, correction, x);
  }
  for (double alpha : cfg.schedule.alphas) smooth(alpha);
  return x;
}

Vector coarse_solve_at(const TwoLevelComponents& comp, const CycleConfig& cfg,
                       std::span<const Complex> g, std::size_t depth) {
  if (comp.m0_lu) return comp.m0_lu->solve(g);
  if (!comp.next_level) throw std::logic_error("components carry no coarse solver");
  const CoarseLevel& level = *comp.next_level;
  const auto apply_m0 = [&comp](const Vector& v) { return comp.M0 * v; };
  const auto precondition = [&level, &cfg, depth](const Vector& v) {
    const Vector blocked = level.system.to_block_order(v);
    const Vector u = vcycle_at(level.system.assembled(), level.components, cfg, blocked, depth + 1);
    return level.system.to_original_order(u);
  };
  // A fixed number of inner iterations; the tolerance only stops early on an
  // exact solve.
  const GmresOutcome inner =
      gmres(apply_m0, precondition, Vector(g.begin(), g.end()), 1e-15, comp.coarse_policy.inner_iterations);
  return inner.solution;
}

}  // namespace

Vector detail::coarse_solve(const TwoLevelComponents& comp, const CycleConfig& cfg,
                            std::span<const Complex> g) {
  return coarse_solve_at(comp, cfg, g, 0);
}

TwoLevelComponents exact_components(const BlockSystem& sys, CoarsePolicy policy, const Tolerances& tol) {
  return exact_components_at(sys, policy, tol, 0);
}

TwoLevelComponents make_components(const DenseMatrix& a_tilde, LinearOperator smoother_inverse,
                                   DenseMatrix P, DenseMatrix R, CoarsePolicy policy,
                                   const Tolerances& tol) {
  if (P.rows() != a_tilde.rows() || R.cols() != a_tilde.cols() || R.rows() != P.cols()) {
    throw Error(ErrorKind::SizeMismatch, "transfer operator shapes do not match the fine matrix");
  }
  TwoLevelComponents comp;
  comp.smoother_inverse = std::move(smoother_inverse);
  comp.M0 = R * (a_tilde * P);
  comp.P = std::move(P);
  comp.R = std::move(R);
  comp.coarse_policy = policy;
  attach_coarse_solver(comp, tol, 0);
  return comp;
}

Vector vcycle_apply(const DenseMatrix& a_tilde, const TwoLevelComponents& comp,
                    const CycleConfig& cfg, std::span<const Complex> f) {
  return vcycle_at(a_tilde, comp, cfg, f, 0);
}

Vector vcycle_apply(const BlockSystem& sys, const TwoLevelComponents& comp, const CycleConfig& cfg,
                    std::span<const Complex> f) {
  return vcycle_at(sys.assembled(), comp, cfg, f, 0);
}

Vector two_block_inverse_apply(const BlockSystem& sys, std::span<const Complex> f) {
  const std::size_t n1 = sys.n1();
  const std::size_t n2 = sys.n2();
  if (f.size() != sys.size()) throw Error(ErrorKind::SizeMismatch, "two_block_inverse_apply length");
  const DenseMatrix& a_tilde = sys.assembled();
  const DenseMatrix a_inv_b = sys.a_lu().solve(sys.b());

  LuFactors schur_lu = [&] {
    try {
      return lu_factor(sys.d() - sys.c() * a_inv_b);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::SingularMatrix) throw;
      throw Error(ErrorKind::SingularBlock, std::string("Schur complement: ") + e.what());
    }
  }();

  // x <- x + S~^-1 (f - A~ x) with x = 0 and S~^-1 = blockdiag(A^-1, 0).
  Vector x = sys.a_lu().solve(f.subspan(0, n1));
  x.resize(n1 + n2);

  // x <- x + P M~0^-1 R~ (f - A~ x) with R~ = [0, I].
  const Vector r = sub(f, a_tilde * x);
  const Vector y = schur_lu.solve(std::span<const Complex>(r).subspan(n1, n2));
  const Vector top = a_inv_b * y;
  for (std::size_t i = 0; i < n1; ++i) x[i] -= top[i];
  for (std::size_t i = 0; i < n2; ++i) x[n1 + i] += y[i];
  return x;
}

}  // namespace tlc::twolevel
