#pragma once

#include <cstddef>

namespace tlc {

// Every numerical threshold used by the library lives here.
struct Tolerances {
  // linalg
  double lu_pivot_relative = 1e-14;           // pivot < this * ||A||_inf => singular
  std::size_t qr_sweeps_per_dimension = 30;    // NoConvergence after 30 n sweeps
  std::size_t qr_exceptional_shift_every = 10;
  double jacobi_offdiag_relative = 1e-12;
  double hermitian_check_relative = 1e-12;
  double gmres_breakdown = 1e-14;

  // twolevel
  double schur_identity_relative = 1e-10;      // M0 == D - C A^-1 B
  double coarse_error_relative = 1e-10;        // E_c block form and idempotence
  double inverse_iteration = 1e-10;
  double diagonalizability_warning = 1e8;      // eigenvector condition number
  double cluster_library = 1e-8;
  double cluster_gap = 1e-6;                   // gap heuristic for non-theorem schedules
  std::size_t max_recursion_depth = 64;
  std::size_t default_direct_threshold = 8;

  // cli
  double cluster_cli = 1e-7;
};

inline constexpr Tolerances kTolerances{};

}  // namespace tlc
