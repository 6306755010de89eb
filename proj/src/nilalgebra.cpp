#include "nilder/nilalgebra.hpp"

#include <stdexcept>
#include <string>

namespace nilder {

NilAlgebra::NilAlgebra(Field field, Partition partition)
    : field_(field), partition_(std::move(partition)) {
  const std::size_t t = partition_.blocks();
  block_starts_.assign(t * t, 0);
  for (std::size_t i = 1; i <= t; ++i) {
    for (std::size_t j = i + 1; j <= t; ++j) {
      block_starts_[(i - 1) * t + (j - 1)] = labels_.size();
      for (std::size_t p = 1; p <= partition_.size(i); ++p)
        for (std::size_t q = 1; q <= partition_.size(j); ++q) labels_.push_back({i, j, p, q});
    }
  }

  // E_{ab} E_{cd} = δ_{bc} E_{ad}; for two elements of N at most one of the two products in
  // the commutator survives.
  const std::size_t d = labels_.size();
  structure_.assign(d * d, std::nullopt);
  for (std::size_t u = 0; u < d; ++u) {
    const auto& a = labels_[u];
    for (std::size_t v = 0; v < d; ++v) {
      const auto& b = labels_[v];
      if (a.j == b.i && a.q == b.p) {
        structure_[u * d + v] = BracketTerm{index_of(a.i, b.j, a.p, b.q), field_.one()};
      } else if (b.j == a.i && b.q == a.p) {
        structure_[u * d + v] = BracketTerm{index_of(b.i, a.j, b.p, a.q), -field_.one()};
      }
    }
  }
}

std::size_t NilAlgebra::block_start(std::size_t i, std::size_t j) const {
  const std::size_t t = partition_.blocks();
  if (i < 1 || j > t || i >= j) {
    throw std::out_of_range("block (" + std::to_string(i) + "," + std::to_string(j) +
                            ") is not a block of N");
  }
  return block_starts_[(i - 1) * t + (j - 1)];
}

std::size_t NilAlgebra::index_of(std::size_t i, std::size_t j, std::size_t p,
                                 std::size_t q) const {
  auto start = block_start(i, j);
  if (p < 1 || p > partition_.size(i) || q < 1 || q > partition_.size(j)) {
    throw std::out_of_range("entry (" + std::to_string(p) + "," + std::to_string(q) +
                            ") outside block (" + std::to_string(i) + "," + std::to_string(j) +
                            ")");
  }
  return start + (p - 1) * partition_.size(j) + (q - 1);
}

std::vector<std::size_t> NilAlgebra::block_indices(std::size_t i, std::size_t j) const {
  auto start = block_start(i, j);
  std::vector<std::size_t> out(partition_.size(i) * partition_.size(j));
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = start + k;
  return out;
}

Mat NilAlgebra::standard_basis_elem(std::size_t i, std::size_t j, std::size_t p,
                                    std::size_t q) const {
  index_of(i, j, p, q);
  return embed_block(unit_matrix(field_, partition_.size(i), partition_.size(j), p, q), i, j,
                     partition_);
}

Mat NilAlgebra::basis_matrix(std::size_t k) const {
  const auto& l = label(k);
  return standard_basis_elem(l.i, l.j, l.p, l.q);
}

Vec NilAlgebra::to_coordinates(const Mat& a) const {
  if (!is_strict_block_upper(a, partition_)) {
    throw std::invalid_argument("matrix is not strictly block upper triangular");
  }
  if (a.field() != field_) throw std::invalid_argument("matrix over the wrong field");
  Vec coords;
  coords.reserve(labels_.size());
  for (const auto& l : labels_) {
    coords.push_back(a(partition_.offset(l.i) + l.p - 1, partition_.offset(l.j) + l.q - 1));
  }
  return coords;
}

Mat NilAlgebra::from_coordinates(const Vec& coords) const {
  if (coords.size() != labels_.size()) {
    throw std::invalid_argument("expected " + std::to_string(labels_.size()) + " coordinates");
  }
  Mat a(field_, matrix_size(), matrix_size());
  for (std::size_t k = 0; k < coords.size(); ++k) {
    const auto& l = labels_[k];
    a(partition_.offset(l.i) + l.p - 1, partition_.offset(l.j) + l.q - 1) = coords[k];
  }
  return a;
}

std::vector<std::size_t> NilAlgebra::derived_algebra_basis() const {
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < labels_.size(); ++k) {
    if (labels_[k].j > labels_[k].i + 1) out.push_back(k);
  }
  return out;
}

CenterBasis NilAlgebra::center_basis() const {
  const std::size_t t = partition_.blocks();
  if (t == 1) return {{}, true};
  return {block_indices(1, t), false};
}

Mat bracket(const Mat& x, const Mat& y) {
  if (x.rows() != x.cols() || y.rows() != y.cols() || x.rows() != y.rows()) {
    throw std::invalid_argument("bracket needs two square matrices of the same size");
  }
  return x * y - y * x;
}

}  // namespace nilder
