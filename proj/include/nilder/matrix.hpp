#ifndef NILDER_MATRIX_HPP
#define NILDER_MATRIX_HPP

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "nilder/field.hpp"

namespace nilder {

using Vec = std::vector<Scalar>;

/// Ordered block sizes (n_1, ..., n_t). Block indices in the public interface are 1-based.
class Partition {
 public:
  /// Throws std::invalid_argument on an empty list or a zero block size.
  explicit Partition(std::vector<std::size_t> sizes);

  std::size_t blocks() const { return sizes_.size(); }
  std::size_t dimension() const { return offsets_.back(); }
  std::size_t size(std::size_t i) const;
  /// 0-based row/column where block i starts.
  std::size_t offset(std::size_t i) const;
  /// 1-based block containing the 0-based row or column `index`.
  std::size_t block_containing(std::size_t index) const;
  const std::vector<std::size_t>& sizes() const { return sizes_; }

  std::string to_string() const;

  friend bool operator==(const Partition& a, const Partition& b) { return a.sizes_ == b.sizes_; }

 private:
  std::vector<std::size_t> sizes_;
  std::vector<std::size_t> offsets_;
};

/// Dense row-major matrix over a runtime field. Entry access is 0-based.
class Mat {
 public:
  Mat(Field field, std::size_t rows, std::size_t cols);
  static Mat identity(Field field, std::size_t n);
  static Mat column(const Vec& entries);
  static Mat row(const Vec& entries);

  Field field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  const Scalar& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  Scalar& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }

  Vec row_vector(std::size_t r) const;
  Vec column_vector(std::size_t c) const;
  /// Row-major flattening.
  const Vec& entries() const { return data_; }

  bool is_zero() const;
  Mat transpose() const;

  Mat& operator+=(const Mat& other);
  Mat& operator-=(const Mat& other);
  Mat& operator*=(const Scalar& s);
  Mat operator-() const;

  friend Mat operator+(Mat a, const Mat& b) { return a += b; }
  friend Mat operator-(Mat a, const Mat& b) { return a -= b; }
  friend Mat operator*(Mat a, const Scalar& s) { return a *= s; }
  friend Mat operator*(const Scalar& s, Mat a) { return a *= s; }
  friend Mat operator*(const Mat& a, const Mat& b);
  friend bool operator==(const Mat& a, const Mat& b);

  std::string to_string() const;

 private:
  Field field_;
  std::size_t rows_;
  std::size_t cols_;
  Vec data_;
};

/// E_{pq}^{(mn)}: the m×n matrix with a single 1 at the 1-based position (p, q).
Mat unit_matrix(Field field, std::size_t m, std::size_t n, std::size_t p, std::size_t q);

/// A_{ij}: the n_i × n_j block (i, j) of an n×n matrix (1-based block indices).
Mat block_of(const Mat& a, std::size_t i, std::size_t j, const Partition& partition);

/// B^{ij}: the n×n matrix that is B on block (i, j) and zero elsewhere.
Mat embed_block(const Mat& b, std::size_t i, std::size_t j, const Partition& partition);

/// Membership in B (blocks below the diagonal vanish).
bool is_block_upper(const Mat& a, const Partition& partition);
/// Membership in N (blocks on and below the diagonal vanish).
bool is_strict_block_upper(const Mat& a, const Partition& partition);

/// Incremental row echelon form. Rows are kept normalized (leading 1) and keyed by pivot column.
class RowEchelon {
 public:
  RowEchelon(Field field, std::size_t cols);

  /// Returns true when the row is independent of the rows inserted so far.
  bool insert(Vec row);
  bool contains(const Vec& row) const;

  std::size_t rank() const { return rows_.size(); }
  std::size_t cols() const { return cols_; }
  std::vector<std::size_t> pivots() const;
  /// Reduced row echelon basis, ordered by pivot column.
  std::vector<Vec> reduced_rows() const;

 private:
  Vec reduce(Vec row) const;

  Field field_;
  std::size_t cols_;
  std::map<std::size_t, Vec> rows_;
};

std::size_t rank(const Mat& a);

/// Basis of {x : A x = 0} as column vectors. Each basis vector carries a 1 at its own free
/// column and 0 at every other free column; vectors are ordered by free column.
std::vector<Mat> nullspace(const Mat& a);

/// Some x with A x = b, or nullopt when the system is inconsistent.
std::optional<Vec> solve(const Mat& a, const Vec& b);

}  // namespace nilder

#endif  // NILDER_MATRIX_HPP
