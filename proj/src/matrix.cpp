#include "nilder/matrix.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace nilder {

Partition::Partition(std::vector<std::size_t> sizes) : sizes_(std::move(sizes)) {
  if (sizes_.empty()) throw std::invalid_argument("partition needs at least one block");
  offsets_.reserve(sizes_.size() + 1);
  offsets_.push_back(0);
  for (auto s : sizes_) {
    if (s == 0) throw std::invalid_argument("partition block sizes must be positive");
    offsets_.push_back(offsets_.back() + s);
  }
}

std::size_t Partition::size(std::size_t i) const {
  if (i < 1 || i > sizes_.size()) {
    throw std::out_of_range("block index " + std::to_string(i) + " outside 1.." +
                            std::to_string(sizes_.size()));
  }
  return sizes_[i - 1];
}

std::size_t Partition::offset(std::size_t i) const {
  size(i);
  return offsets_[i - 1];
}

std::size_t Partition::block_containing(std::size_t index) const {
  if (index >= dimension()) throw std::out_of_range("index outside the partitioned range");
  auto it = std::upper_bound(offsets_.begin(), offsets_.end(), index);
  return static_cast<std::size_t>(it - offsets_.begin());
}

std::string Partition::to_string() const {
  std::string out;
  for (std::size_t k = 0; k < sizes_.size(); ++k) {
    if (k > 0) out += ",";
    out += std::to_string(sizes_[k]);
  }
  return out;
}

Mat::Mat(Field field, std::size_t rows, std::size_t cols)
    : field_(field), rows_(rows), cols_(cols), data_(rows * cols, field.zero()) {}

Mat Mat::identity(Field field, std::size_t n) {
  Mat m(field, n, n);
  for (std::size_t k = 0; k < n; ++k) m(k, k) = field.one();
  return m;
}

Mat Mat::column(const Vec& entries) {
  if (entries.empty()) throw std::invalid_argument("empty column vector");
  Mat m(entries.front().field(), entries.size(), 1);
  m.data_ = entries;
  return m;
}

Mat Mat::row(const Vec& entries) {
  if (entries.empty()) throw std::invalid_argument("empty row vector");
  Mat m(entries.front().field(), 1, entries.size());
  m.data_ = entries;
  return m;
}

Vec Mat::row_vector(std::size_t r) const {
  return Vec(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
             data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
}

Vec Mat::column_vector(std::size_t c) const {
  Vec out;
  out.reserve(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out.push_back((*this)(r, c));
  return out;
}

bool Mat::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const Scalar& s) { return s.is_zero(); });
}

Mat Mat::transpose() const {
  Mat t(field_, cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

namespace {
void require_same_shape(const Mat& a, const Mat& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw std::invalid_argument("matrix shape mismatch: " + std::to_string(a.rows()) + "x" +
                                std::to_string(a.cols()) + " vs " + std::to_string(b.rows()) +
                                "x" + std::to_string(b.cols()));
  }
  if (a.field() != b.field()) throw std::invalid_argument("matrices over different fields");
}
}  // namespace

Mat& Mat::operator+=(const Mat& other) {
  require_same_shape(*this, other);
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += other.data_[k];
  return *this;
}

Mat& Mat::operator-=(const Mat& other) {
  require_same_shape(*this, other);
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= other.data_[k];
  return *this;
}

Mat& Mat::operator*=(const Scalar& s) {
  for (auto& x : data_) x *= s;
  return *this;
}

Mat Mat::operator-() const {
  Mat out = *this;
  for (auto& x : out.data_) x = -x;
  return out;
}

Mat operator*(const Mat& a, const Mat& b) {
  if (a.cols_ != b.rows_) {
    throw std::invalid_argument("cannot multiply " + std::to_string(a.rows_) + "x" +
                                std::to_string(a.cols_) + " by " + std::to_string(b.rows_) +
                                "x" + std::to_string(b.cols_));
  }
  if (a.field_ != b.field_) throw std::invalid_argument("matrices over different fields");
  Mat out(a.field_, a.rows_, b.cols_);
  for (std::size_t r = 0; r < a.rows_; ++r) {
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Scalar& x = a(r, k);
      if (x.is_zero()) continue;
      for (std::size_t c = 0; c < b.cols_; ++c) {
        if (!b(k, c).is_zero()) out(r, c) += x * b(k, c);
      }
    }
  }
  return out;
}

bool operator==(const Mat& a, const Mat& b) {
  return a.field_ == b.field_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

std::string Mat::to_string() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t r = 0; r < rows_; ++r) {
    os << (r ? ", [" : "[");
    for (std::size_t c = 0; c < cols_; ++c) os << (c ? ", " : "") << (*this)(r, c).to_string();
    os << "]";
  }
  os << "]";
  return os.str();
}

Mat unit_matrix(Field field, std::size_t m, std::size_t n, std::size_t p, std::size_t q) {
  if (p < 1 || p > m || q < 1 || q > n) {
    throw std::out_of_range("unit position (" + std::to_string(p) + "," + std::to_string(q) +
                            ") outside " + std::to_string(m) + "x" + std::to_string(n));
  }
  Mat e(field, m, n);
  e(p - 1, q - 1) = field.one();
  return e;
}

namespace {
void require_square_partitioned(const Mat& a, const Partition& partition) {
  auto n = partition.dimension();
  if (a.rows() != n || a.cols() != n) {
    throw std::invalid_argument("expected a " + std::to_string(n) + "x" + std::to_string(n) +
                                " matrix for partition (" + partition.to_string() + ")");
  }
}
}  // namespace

Mat block_of(const Mat& a, std::size_t i, std::size_t j, const Partition& partition) {
  require_square_partitioned(a, partition);
  auto ni = partition.size(i);
  auto nj = partition.size(j);
  auto r0 = partition.offset(i);
  auto c0 = partition.offset(j);
  Mat out(a.field(), ni, nj);
  for (std::size_t r = 0; r < ni; ++r)
    for (std::size_t c = 0; c < nj; ++c) out(r, c) = a(r0 + r, c0 + c);
  return out;
}

Mat embed_block(const Mat& b, std::size_t i, std::size_t j, const Partition& partition) {
  auto ni = partition.size(i);
  auto nj = partition.size(j);
  if (b.rows() != ni || b.cols() != nj) {
    throw std::invalid_argument("block (" + std::to_string(i) + "," + std::to_string(j) +
                                ") has shape " + std::to_string(ni) + "x" + std::to_string(nj));
  }
  auto n = partition.dimension();
  Mat out(b.field(), n, n);
  auto r0 = partition.offset(i);
  auto c0 = partition.offset(j);
  for (std::size_t r = 0; r < ni; ++r)
    for (std::size_t c = 0; c < nj; ++c) out(r0 + r, c0 + c) = b(r, c);
  return out;
}

namespace {
bool lower_blocks_vanish(const Mat& a, const Partition& partition, bool strict) {
  require_square_partitioned(a, partition);
  for (std::size_t r = 0; r < a.rows(); ++r) {
    auto br = partition.block_containing(r);
    for (std::size_t c = 0; c < a.cols(); ++c) {
      auto bc = partition.block_containing(c);
      bool must_vanish = strict ? br >= bc : br > bc;
      if (must_vanish && !a(r, c).is_zero()) return false;
    }
  }
  return true;
}
}  // namespace

bool is_block_upper(const Mat& a, const Partition& partition) {
  return lower_blocks_vanish(a, partition, false);
}

bool is_strict_block_upper(const Mat& a, const Partition& partition) {
  return lower_blocks_vanish(a, partition, true);
}

RowEchelon::RowEchelon(Field field, std::size_t cols) : field_(field), cols_(cols) {}

Vec RowEchelon::reduce(Vec row) const {
  if (row.size() != cols_) throw std::invalid_argument("row length does not match echelon width");
  for (const auto& [pivot, prow] : rows_) {
    if (row[pivot].is_zero()) continue;
    Scalar factor = row[pivot];
    for (std::size_t c = pivot; c < cols_; ++c) {
      if (!prow[c].is_zero()) row[c] -= factor * prow[c];
    }
  }
  return row;
}

bool RowEchelon::insert(Vec row) {
  row = reduce(std::move(row));
  auto lead = std::find_if(row.begin(), row.end(), [](const Scalar& s) { return !s.is_zero(); });
  if (lead == row.end()) return false;
  auto pivot = static_cast<std::size_t>(lead - row.begin());
  Scalar inv = row[pivot].inverse();
  for (std::size_t c = pivot; c < cols_; ++c) row[c] *= inv;
  rows_.emplace(pivot, std::move(row));
  return true;
}

bool RowEchelon::contains(const Vec& row) const {
  auto r = reduce(row);
  return std::all_of(r.begin(), r.end(), [](const Scalar& s) { return s.is_zero(); });
}

std::vector<std::size_t> RowEchelon::pivots() const {
  std::vector<std::size_t> out;
  for (const auto& [pivot, _] : rows_) out.push_back(pivot);
  return out;
}

std::vector<Vec> RowEchelon::reduced_rows() const {
  std::vector<std::size_t> piv = pivots();
  std::vector<Vec> out;
  for (const auto& [_, row] : rows_) out.push_back(row);
  // Back substitution: clear every pivot column above its pivot row.
  for (std::size_t k = piv.size(); k-- > 0;) {
    for (std::size_t above = 0; above < k; ++above) {
      Scalar factor = out[above][piv[k]];
      if (factor.is_zero()) continue;
      for (std::size_t c = piv[k]; c < cols_; ++c) {
        if (!out[k][c].is_zero()) out[above][c] -= factor * out[k][c];
      }
    }
  }
  return out;
}

namespace {
RowEchelon echelon_of(const Mat& a) {
  RowEchelon ech(a.field(), a.cols());
  for (std::size_t r = 0; r < a.rows(); ++r) ech.insert(a.row_vector(r));
  return ech;
}
}  // namespace

std::size_t rank(const Mat& a) { return echelon_of(a).rank(); }

std::vector<Mat> nullspace(const Mat& a) {
  auto ech = echelon_of(a);
  auto rref = ech.reduced_rows();
  auto piv = ech.pivots();
  std::vector<bool> is_pivot(a.cols(), false);
  for (auto p : piv) is_pivot[p] = true;
  std::vector<Mat> basis;
  for (std::size_t free = 0; free < a.cols(); ++free) {
    if (is_pivot[free]) continue;
    Mat x(a.field(), a.cols(), 1);
    x(free, 0) = a.field().one();
    for (std::size_t k = 0; k < piv.size(); ++k) x(piv[k], 0) = -rref[k][free];
    basis.push_back(std::move(x));
  }
  return basis;
}

std::optional<Vec> solve(const Mat& a, const Vec& b) {
  if (b.size() != a.rows()) throw std::invalid_argument("right-hand side length mismatch");
  // Eliminate the augmented matrix [A | b]; inconsistent iff a pivot lands in the last column.
  RowEchelon ech(a.field(), a.cols() + 1);
  for (std::size_t r = 0; r < a.rows(); ++r) {
    Vec row = a.row_vector(r);
    row.push_back(b[r]);
    ech.insert(std::move(row));
  }
  auto piv = ech.pivots();
  if (!piv.empty() && piv.back() == a.cols()) return std::nullopt;
  auto rref = ech.reduced_rows();
  Vec x(a.cols(), a.field().zero());
  for (std::size_t k = 0; k < piv.size(); ++k) x[piv[k]] = rref[k][a.cols()];
  return x;
}

}  // namespace nilder
