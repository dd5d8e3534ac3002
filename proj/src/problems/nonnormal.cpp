#include "tlc/problems.hpp"

namespace tlc::problems {

DenseMatrix random_nonnormal(const RandomNonnormalSpec& spec) {
  if (spec.n < 2) throw Error(ErrorKind::InvalidArgument, "nonnormal dimension must be >= 2");
  if (!(spec.eta > 0.0)) throw Error(ErrorKind::InvalidArgument, "eta must be positive");
  NormalSource normals(spec.seed);
  const DenseMatrix w = random_complex_matrix(spec.n, spec.n, normals);
  const DenseMatrix x = random_complex_matrix(spec.n, spec.n, normals);
  DenseMatrix h = w.adjoint() * w;
  for (std::size_t i = 0; i < spec.n; ++i) h(i, i) += spec.eta;
  const DenseMatrix k = 0.5 * (x - x.adjoint());
  return (1.0 / 1000.0) * h + spec.gamma * k;
}

}  // namespace tlc::problems
