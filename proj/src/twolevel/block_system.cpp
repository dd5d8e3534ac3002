#include <numeric>

#include "tlc/twolevel.hpp"

namespace tlc::twolevel {

namespace {

std::shared_ptr<const LuFactors> factor_block(const DenseMatrix& m, const char* name) {
  try {
    return std::make_shared<const LuFactors>(lu_factor(m));
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::SingularMatrix || e.kind() == ErrorKind::InvalidArgument) {
      throw Error(ErrorKind::SingularBlock, std::string("block ") + name + " is not invertible (" + e.what() + ")");
    }
    throw;
  }
}

}  // namespace

BlockSystem::BlockSystem(DenseMatrix a, DenseMatrix b, DenseMatrix c, DenseMatrix d,
                         std::vector<std::size_t> perm)
    : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), d_(std::move(d)), perm_(std::move(perm)) {
  if (!a_.square() || !d_.square() || b_.rows() != a_.rows() || b_.cols() != d_.cols() ||
      c_.rows() != d_.rows() || c_.cols() != a_.cols()) {
    throw Error(ErrorKind::SizeMismatch, "inconsistent block shapes");
  }
  if (a_.rows() == 0 || d_.rows() == 0) {
    throw Error(ErrorKind::InvalidPartition, "both blocks must be nonempty");
  }
  assembled_ = DenseMatrix(size(), size());
  assembled_.set_block(0, 0, a_);
  assembled_.set_block(0, n1(), b_);
  assembled_.set_block(n1(), 0, c_);
  assembled_.set_block(n1(), n1(), d_);
  a_lu_ = factor_block(a_, "A");
  d_lu_ = factor_block(d_, "D");
}

BlockSystem BlockSystem::from_blocks(DenseMatrix a, DenseMatrix b, DenseMatrix c, DenseMatrix d) {
  std::vector<std::size_t> perm(a.rows() + d.rows());
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  return BlockSystem(std::move(a), std::move(b), std::move(c), std::move(d), std::move(perm));
}

Vector BlockSystem::to_block_order(std::span<const Complex> original) const {
  if (original.size() != size()) throw Error(ErrorKind::SizeMismatch, "to_block_order length");
  Vector out(size());
  for (std::size_t k = 0; k < size(); ++k) out[k] = original[perm_[k]];
  return out;
}

Vector BlockSystem::to_original_order(std::span<const Complex> blocked) const {
  if (blocked.size() != size()) throw Error(ErrorKind::SizeMismatch, "to_original_order length");
  Vector out(size());
  for (std::size_t k = 0; k < size(); ++k) out[perm_[k]] = blocked[k];
  return out;
}

BlockSystem split(const DenseMatrix& matrix, std::span<const std::size_t> first_block_indices) {
  if (!matrix.square()) throw Error(ErrorKind::InvalidArgument, "split needs a square matrix");
  const std::size_t n = matrix.rows();
  std::vector<bool> taken(n, false);
  std::vector<std::size_t> perm;
  perm.reserve(n);
  for (std::size_t idx : first_block_indices) {
    if (idx >= n) throw Error(ErrorKind::InvalidPartition, "index " + std::to_string(idx) + " out of range");
    if (taken[idx]) throw Error(ErrorKind::InvalidPartition, "duplicate index " + std::to_string(idx));
    taken[idx] = true;
    perm.push_back(idx);
  }
  const std::size_t n1 = perm.size();
  for (std::size_t i = 0; i < n; ++i)
    if (!taken[i]) perm.push_back(i);
  if (n1 == 0 || n1 == n) throw Error(ErrorKind::InvalidPartition, "both blocks must be nonempty");

  DenseMatrix permuted(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) permuted(i, j) = matrix(perm[i], perm[j]);
  const std::size_t n2 = n - n1;
  return BlockSystem(permuted.block(0, 0, n1, n1), permuted.block(0, n1, n1, n2),
                     permuted.block(n1, 0, n2, n1), permuted.block(n1, n1, n2, n2), std::move(perm));
}

DenseMatrix unsplit(const BlockSystem& sys) {
  const std::size_t n = sys.size();
  const auto& perm = sys.permutation();
  DenseMatrix out(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out(perm[i], perm[j]) = sys.assembled()(i, j);
  return out;
}

}  // namespace tlc::twolevel
