#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "tlc/linalg/dense_matrix.hpp"

namespace tlc::relaxation {

enum class ScheduleSource { theorem, constant, explicit_list };

/// m pre/post relaxation weights alpha_1..alpha_m.
struct RelaxationSchedule {
  std::size_t m = 0;
  std::vector<double> alphas;
  ScheduleSource source = ScheduleSource::explicit_list;
  double constant_alpha = 0.0;  // meaningful for source == constant
};

/// alpha_j = 1 / (1 - cos(2 pi j / (2m + 1))), j = 1..m. Throws InvalidM for m = 0.
RelaxationSchedule theorem_schedule(std::size_t m);
RelaxationSchedule constant_schedule(std::size_t m, double alpha);
/// Any finite, nonzero weights; an empty list is the m = 0 schedule.
RelaxationSchedule explicit_schedule(std::vector<double> alphas);

/// 1 - 1/(2m+1)^2, the nontrivial eigenvalue of the preconditioned operator
/// under a theorem schedule.
double clustered_eigenvalue(std::size_t m);
/// 1/(2m+1)^2, the matching nonzero eigenvalue of the error operator.
double clustered_error(std::size_t m);

struct ResponseSample {
  Complex lambda;
  Complex tau;    // principal square root of lambda
  Complex value;  // r_m(lambda)
};

/// r_m(lambda) = 1/2 (1+tau) prod((1-a_i) - a_i tau)^2 + 1/2 (1-tau) prod((1-a_i) + a_i tau)^2.
/// Evaluated in long double; theorem schedules use weights recomputed from m.
ResponseSample scalar_response_closed(const RelaxationSchedule& schedule, Complex lambda);

/// The same quantity by explicit 2x2 products: v(lambda)^T (prod E_s)^2 u.
ResponseSample scalar_response_oracle(const RelaxationSchedule& schedule, Complex lambda);

using Matrix2 = std::array<std::array<Complex, 2>, 2>;

/// Scaled smoother block [[1-a, -a tau], [-a tau, 1-a]] on one invariant subspace.
Matrix2 scaled_smoother_block(double alpha, Complex tau);
Matrix2 multiply(const Matrix2& x, const Matrix2& y);

enum class TrigSign { plus, minus };

struct TrigIdentity {
  Complex lhs;  // prod_i (cos theta_i +- t), t = (x + 1/x)/2
  Complex rhs;  // (+-1)^m (x^{2m+1} +- 1) / (2^m x^m (x +- 1))
};

/// Both sides of the cosine product identity for the requested sign. Throws
/// DegenerateX for x = 0 or x within 1e-12 of -1 (plus) / +1 (minus).
TrigIdentity trig_identity_check(std::size_t m, Complex x, TrigSign sign);

/// prod_i (1 - cos theta_i)^2, evaluated directly.
double cosine_defect_product(std::size_t m);

}  // namespace tlc::relaxation
