#include <cmath>
#include <numbers>

#include "tlc/problems.hpp"

namespace tlc::problems {

std::uint64_t SplitMix64::next() {
  state_ += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state_;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double SplitMix64::uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

double NormalSource::next() {
  if (spare_) {
    const double v = *spare_;
    spare_.reset();
    return v;
  }
  const double u1 = 1.0 - rng_.uniform();
  const double u2 = rng_.uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double phi = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(phi);
  return r * std::cos(phi);
}

DenseMatrix random_complex_matrix(std::size_t rows, std::size_t cols, NormalSource& normals) {
  DenseMatrix out(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      const double re = normals.next();
      const double im = normals.next();
      out(i, j) = {re, im};
    }
  }
  return out;
}

twolevel::BlockSystem random_block_system(const RandomBlockSpec& spec) {
  if (spec.n1 == 0 || spec.n2 == 0) throw Error(ErrorKind::InvalidPartition, "both blocks must be nonempty");
  NormalSource normals(spec.seed);
  const double s = 1.0 / std::sqrt(static_cast<double>(spec.n1 + spec.n2));
  DenseMatrix a = s * random_complex_matrix(spec.n1, spec.n1, normals);
  DenseMatrix b = s * random_complex_matrix(spec.n1, spec.n2, normals);
  DenseMatrix c = s * random_complex_matrix(spec.n2, spec.n1, normals);
  DenseMatrix d = s * random_complex_matrix(spec.n2, spec.n2, normals);
  for (std::size_t i = 0; i < spec.n1; ++i) a(i, i) += 1.0;
  for (std::size_t i = 0; i < spec.n2; ++i) d(i, i) += 1.0;
  return twolevel::BlockSystem::from_blocks(std::move(a), std::move(b), std::move(c), std::move(d));
}

}  // namespace tlc::problems
