#ifndef NILDER_NILALGEBRA_HPP
#define NILDER_NILALGEBRA_HPP

#include <cstddef>
#include <memory>
#include <optional>
#include <vector>

#include "nilder/field.hpp"
#include "nilder/matrix.hpp"

namespace nilder {

/// E^{ij}_{pq}, all indices 1-based.
struct BasisLabel {
  std::size_t i, j, p, q;
  friend bool operator==(const BasisLabel&, const BasisLabel&) = default;
};

/// Coordinate form of [e_u, e_v]: the bracket of two standard basis elements is either zero
/// or ±e_index.
struct BracketTerm {
  std::size_t index;
  Scalar coefficient;
};

struct CenterBasis {
  std::vector<std::size_t> indices;
  /// Set for t = 1, where N = {0} and the center is the whole (zero) algebra.
  bool trivial_algebra = false;
};

/// The Lie algebra N of strictly block upper triangular matrices for a fixed field and partition.
///
/// Basis order: blocks (i, j), i < j, lexicographically; entries (p, q) row-major within a block.
/// Every coordinate-level object (endomorphism matrices, file formats) uses this order.
class NilAlgebra {
 public:
  NilAlgebra(Field field, Partition partition);

  Field field() const { return field_; }
  const Partition& partition() const { return partition_; }
  std::size_t blocks() const { return partition_.blocks(); }
  std::size_t matrix_size() const { return partition_.dimension(); }
  std::size_t dimension() const { return labels_.size(); }

  const std::vector<BasisLabel>& basis() const { return labels_; }
  const BasisLabel& label(std::size_t k) const { return labels_.at(k); }

  /// 0-based coordinate of E^{ij}_{pq}; throws for i >= j or out-of-range entries.
  std::size_t index_of(std::size_t i, std::size_t j, std::size_t p, std::size_t q) const;
  /// First coordinate of block (i, j); the block occupies n_i n_j consecutive coordinates.
  std::size_t block_start(std::size_t i, std::size_t j) const;
  std::vector<std::size_t> block_indices(std::size_t i, std::size_t j) const;

  Mat standard_basis_elem(std::size_t i, std::size_t j, std::size_t p, std::size_t q) const;
  Mat basis_matrix(std::size_t k) const;

  /// Throws std::invalid_argument when the matrix is not in N.
  Vec to_coordinates(const Mat& a) const;
  Mat from_coordinates(const Vec& coords) const;

  /// [e_u, e_v] in coordinates (precomputed structure constants).
  const std::optional<BracketTerm>& basis_bracket(std::size_t u, std::size_t v) const {
    return structure_[u * labels_.size() + v];
  }

  /// Indices of E^{ij}_{pq} with j > i + 1, i.e. a basis of [N, N].
  std::vector<std::size_t> derived_algebra_basis() const;
  /// Indices of E^{1t}_{pq}, i.e. a basis of the center N^{1t}.
  CenterBasis center_basis() const;

 private:
  Field field_;
  Partition partition_;
  std::vector<BasisLabel> labels_;
  std::vector<std::size_t> block_starts_;  // t*t table, meaningful for i < j
  std::vector<std::optional<BracketTerm>> structure_;
};

/// [X, Y] = XY - YX.
Mat bracket(const Mat& x, const Mat& y);

}  // namespace nilder

#endif  // NILDER_NILALGEBRA_HPP
