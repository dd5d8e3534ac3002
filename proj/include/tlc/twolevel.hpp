#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tlc/linalg.hpp"
#include "tlc/relaxation.hpp"

namespace tlc::twolevel {

using relaxation::RelaxationSchedule;

/// 2x2 block partition [[A, B], [C, D]] of an invertible matrix, with A and D
/// factored once at construction. Vectors handed to the two-level operations
/// live in block order; `permutation()[k]` is the original index stored at
/// block position k.
class BlockSystem {
 public:
  /// Identity permutation. Throws SingularBlock if A or D is singular.
  static BlockSystem from_blocks(DenseMatrix a, DenseMatrix b, DenseMatrix c, DenseMatrix d);

  const DenseMatrix& a() const noexcept { return a_; }
  const DenseMatrix& b() const noexcept { return b_; }
  const DenseMatrix& c() const noexcept { return c_; }
  const DenseMatrix& d() const noexcept { return d_; }
  const LuFactors& a_lu() const noexcept { return *a_lu_; }
  const LuFactors& d_lu() const noexcept { return *d_lu_; }
  std::shared_ptr<const LuFactors> shared_a_lu() const noexcept { return a_lu_; }
  std::shared_ptr<const LuFactors> shared_d_lu() const noexcept { return d_lu_; }
  const std::vector<std::size_t>& permutation() const noexcept { return perm_; }

  std::size_t n1() const noexcept { return a_.rows(); }
  std::size_t n2() const noexcept { return d_.rows(); }
  std::size_t size() const noexcept { return n1() + n2(); }

  /// The assembled matrix in block order.
  const DenseMatrix& assembled() const noexcept { return assembled_; }

  Vector to_block_order(std::span<const Complex> original) const;
  Vector to_original_order(std::span<const Complex> blocked) const;

 private:
  friend BlockSystem split(const DenseMatrix&, std::span<const std::size_t>);
  BlockSystem(DenseMatrix a, DenseMatrix b, DenseMatrix c, DenseMatrix d,
              std::vector<std::size_t> perm);

  DenseMatrix a_, b_, c_, d_;
  std::vector<std::size_t> perm_;
  DenseMatrix assembled_;
  std::shared_ptr<const LuFactors> a_lu_;
  std::shared_ptr<const LuFactors> d_lu_;
};

/// Permutes so that `first_block_indices` (in the given order) form the first
/// block and the remaining indices, ascending, form the second. Throws
/// InvalidPartition on duplicates / out-of-range, SingularBlock on singular A or D.
BlockSystem split(const DenseMatrix& matrix, std::span<const std::size_t> first_block_indices);

/// The original matrix, with the permutation undone.
DenseMatrix unsplit(const BlockSystem& sys);

struct CoarsePolicy {
  enum class Kind { direct, recursive };
  Kind kind = Kind::direct;
  std::size_t inner_iterations = 2;
  std::size_t direct_threshold = kTolerances.default_direct_threshold;

  static CoarsePolicy direct() { return {}; }
  static CoarsePolicy recursive(std::size_t inner_iterations = 2,
                                std::size_t direct_threshold = kTolerances.default_direct_threshold) {
    return {Kind::recursive, inner_iterations, direct_threshold};
  }
};

struct CoarseLevel;

/// Smoother, transfers and coarse operator of one two-level method.
struct TwoLevelComponents {
  LinearOperator smoother_inverse;
  DenseMatrix P;   // fine x coarse
  DenseMatrix R;   // coarse x fine
  DenseMatrix M0;  // R A P
  CoarsePolicy coarse_policy;
  bool exact = false;  // built by exact_components()

  std::shared_ptr<const LuFactors> m0_lu;          // set for direct coarse solves
  std::shared_ptr<const CoarseLevel> next_level;   // set for recursive coarse solves
};

/// The two-level method applied to M0 itself, used for recursive coarse solves.
struct CoarseLevel {
  BlockSystem system;
  TwoLevelComponents components;
};

/// S^-1 = blockdiag(A^-1, D^-1), P = [-A^-1 B; I], R = [-C A^-1, I], M0 = R A P.
/// Checks M0 against the Schur complement D - C A^-1 B.
TwoLevelComponents exact_components(const BlockSystem& sys,
                                    CoarsePolicy policy = CoarsePolicy::direct(),
                                    const Tolerances& tol = kTolerances);

/// Components from user-supplied smoother and transfers; M0 = R A P.
TwoLevelComponents make_components(const DenseMatrix& a_tilde, LinearOperator smoother_inverse,
                                   DenseMatrix P, DenseMatrix R,
                                   CoarsePolicy policy = CoarsePolicy::direct(),
                                   const Tolerances& tol = kTolerances);

struct CycleConfig {
  RelaxationSchedule schedule;
};

/// u <- M^-1 f by the symmetric V-cycle: m smoothing steps, coarse
/// correction, m smoothing steps, weights in the order alpha_1..alpha_m both
/// times.
Vector vcycle_apply(const DenseMatrix& a_tilde, const TwoLevelComponents& comp,
                    const CycleConfig& cfg, std::span<const Complex> f);
Vector vcycle_apply(const BlockSystem& sys, const TwoLevelComponents& comp, const CycleConfig& cfg,
                    std::span<const Complex> f);

/// One pass of the non-symmetric scheme with S^-1 = blockdiag(A^-1, 0),
/// R = [0, I] and M0 = D - C A^-1 B; equals A~^-1 f in exact arithmetic.
Vector two_block_inverse_apply(const BlockSystem& sys, std::span<const Complex> f);

/// S^-1 A~, materialized.
DenseMatrix smoothed_operator(const DenseMatrix& a_tilde, const TwoLevelComponents& comp);

/// E_s(alpha) = I - alpha S^-1 A~.
DenseMatrix smoother_error(const BlockSystem& sys, const TwoLevelComponents& comp, double alpha);
DenseMatrix smoother_error(const DenseMatrix& a_tilde, const TwoLevelComponents& comp, double alpha);

/// E_c = I - P M0^-1 R A~. For exact components also checks the block form
/// [[I, A^-1 B], [0, 0]] and idempotence.
DenseMatrix coarse_error(const BlockSystem& sys, const TwoLevelComponents& comp,
                         const Tolerances& tol = kTolerances);
/// With an exact M0^-1 (LU), whatever the coarse policy.
DenseMatrix coarse_error(const DenseMatrix& a_tilde, const TwoLevelComponents& comp);
/// With M0^-1 replaced by the policy's coarse solve (recursive levels use cfg).
DenseMatrix coarse_error(const DenseMatrix& a_tilde, const TwoLevelComponents& comp,
                         const CycleConfig& cfg);

/// E_m = (prod_{i=m..1} E_s(alpha_i)) E_c (prod_{i=1..m} E_s(alpha_i)).
DenseMatrix error_operator(const BlockSystem& sys, const TwoLevelComponents& comp,
                           const CycleConfig& cfg);
DenseMatrix error_operator(const DenseMatrix& a_tilde, const TwoLevelComponents& comp,
                           const CycleConfig& cfg);
/// Same product from precomputed S^-1 A~ and E_c, for sweeps over schedules.
DenseMatrix error_operator(const DenseMatrix& smoothed, const DenseMatrix& coarse_err,
                           const RelaxationSchedule& schedule);

/// M^-1 A~ assembled column by column through vcycle_apply.
DenseMatrix preconditioned_operator(const DenseMatrix& a_tilde, const TwoLevelComponents& comp,
                                    const CycleConfig& cfg);

struct CouplingEigenpair {
  Complex lambda;
  Vector w;   // unit eigenvector of T
  Vector v1;  // (w; 0)
  Vector v2;  // (0; D^-1 C w)
};

struct CouplingAnalysis {
  DenseMatrix T;  // A^-1 B D^-1 C
  std::vector<CouplingEigenpair> pairs;
  double eigvec_condition = 0.0;  // 1-norm condition number of [w_1 ... w_n1]
  std::vector<std::string> warnings;  // "DiagnosabilityWarning: ..." when T looks defective
};

CouplingAnalysis coupling_analysis(const BlockSystem& sys, const Tolerances& tol = kTolerances);

/// Largest residual of the four invariant-subspace mapping identities
/// (E_s v1, E_s v2, E_c v1, E_c v2) over all eigenpairs, each residual
/// divided by (1 + |lambda|) (|v1| + |v2|).
double invariant_check(const BlockSystem& sys, const CouplingAnalysis& analysis, double alpha);

/// Nonzero eigenvalue of E_m restricted to span{v1, v2}: projects E_m onto
/// the pair by least squares and returns the larger-magnitude eigenvalue of
/// the 2x2 restriction.
Complex restricted_response(const DenseMatrix& error_op, const CouplingEigenpair& pair);

struct SpectralReport {
  std::vector<Complex> eigenvalues;
  std::vector<Complex> cluster_centers;
  std::vector<std::size_t> multiplicity_per_center;
  double max_deviation = 0.0;
};

/// Nearest-center assignment when `centers` is given, otherwise greedy
/// grouping with gap `gap` (centers are member means).
SpectralReport cluster_spectrum(std::vector<Complex> eigenvalues,
                                const std::vector<Complex>* centers, double gap);

/// Eigenvalues of M^-1 A~, clustered to {1, 1 - 1/(2m+1)^2} for theorem
/// schedules and by the gap heuristic otherwise.
SpectralReport preconditioned_spectrum(const DenseMatrix& a_tilde, const TwoLevelComponents& comp,
                                       const CycleConfig& cfg, const Tolerances& tol = kTolerances);
SpectralReport preconditioned_spectrum(const BlockSystem& sys, const TwoLevelComponents& comp,
                                       const CycleConfig& cfg, const Tolerances& tol = kTolerances);

/// Same report for the exact components with a direct coarse solve, but
/// I - E_m is formed in long double (block solves refined against the double
/// factors) and its eigenvalues are computed in long double. When the
/// invariant 2x2 blocks of M^-1 A~ are badly conditioned the double result
/// loses digits to cancellation; this one keeps about three more.
SpectralReport preconditioned_spectrum_extended(const BlockSystem& sys, const CycleConfig& cfg,
                                                const Tolerances& tol = kTolerances);

}  // namespace tlc::twolevel
