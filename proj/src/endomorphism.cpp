#include "nilder/endomorphism.hpp"

#include <numeric>
#include <stdexcept>

namespace nilder {

AlgebraPtr make_algebra(Field field, Partition partition) {
  return std::make_shared<const NilAlgebra>(field, std::move(partition));
}

Endo::Endo(AlgebraPtr algebra, Mat matrix) : algebra_(std::move(algebra)), matrix_(std::move(matrix)) {
  if (!algebra_) throw std::invalid_argument("endomorphism without an algebra");
  const auto d = algebra_->dimension();
  if (matrix_.rows() != d || matrix_.cols() != d) {
    throw std::invalid_argument("endomorphism matrix must be " + std::to_string(d) + "x" +
                                std::to_string(d));
  }
  if (matrix_.field() != algebra_->field()) {
    throw std::invalid_argument("endomorphism matrix over the wrong field");
  }
}

Endo Endo::zero(AlgebraPtr algebra) {
  auto d = algebra->dimension();
  Field f = algebra->field();
  return Endo(std::move(algebra), Mat(f, d, d));
}

Endo Endo::from_vectorized(AlgebraPtr algebra, const Vec& entries) {
  const auto d = algebra->dimension();
  if (entries.size() != d * d) throw std::invalid_argument("vectorized endomorphism has wrong length");
  Mat m(algebra->field(), d, d);
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = 0; b < d; ++b) m(a, b) = entries[a * d + b];
  return Endo(std::move(algebra), std::move(m));
}

Vec Endo::apply(const Vec& coords) const {
  if (coords.size() != dimension()) throw std::invalid_argument("coordinate vector has wrong length");
  Vec out(dimension(), algebra_->field().zero());
  for (std::size_t b = 0; b < dimension(); ++b) {
    if (coords[b].is_zero()) continue;
    for (std::size_t a = 0; a < dimension(); ++a) {
      if (!matrix_(a, b).is_zero()) out[a] += matrix_(a, b) * coords[b];
    }
  }
  return out;
}

Mat Endo::apply(const Mat& element) const {
  return algebra_->from_coordinates(apply(algebra_->to_coordinates(element)));
}

Mat Endo::image_block(std::size_t k, std::size_t a, std::size_t b) const {
  const auto& part = algebra_->partition();
  Mat out(algebra_->field(), part.size(a), part.size(b));
  auto start = algebra_->block_start(a, b);
  for (std::size_t r = 0; r < out.rows(); ++r)
    for (std::size_t c = 0; c < out.cols(); ++c) out(r, c) = matrix_(start + r * out.cols() + c, k);
  return out;
}

void Endo::require_same_algebra(const Endo& other) const {
  if (algebra_ != other.algebra_ &&
      (algebra_->field() != other.algebra_->field() ||
       !(algebra_->partition() == other.algebra_->partition()))) {
    throw std::invalid_argument("endomorphisms of different algebras");
  }
}

Endo& Endo::operator+=(const Endo& other) {
  require_same_algebra(other);
  matrix_ += other.matrix_;
  return *this;
}

Endo& Endo::operator-=(const Endo& other) {
  require_same_algebra(other);
  matrix_ -= other.matrix_;
  return *this;
}

Endo operator*(const Scalar& s, Endo a) {
  a.matrix_ *= s;
  return a;
}

Endo operator*(const Endo& f, const Endo& g) {
  f.require_same_algebra(g);
  return Endo(f.algebra_, f.matrix_ * g.matrix_);
}

bool operator==(const Endo& a, const Endo& b) {
  return a.algebra_->field() == b.algebra_->field() &&
         a.algebra_->partition() == b.algebra_->partition() && a.matrix_ == b.matrix_;
}

Endo commutator(const Endo& f, const Endo& g) { return f * g - g * f; }

namespace {

// coords(f([e_u, e_v]) - [f(e_u), e_v] - [e_u, f(e_v)])
Vec leibniz_defect(const Endo& f, std::size_t u, std::size_t v) {
  const auto& alg = f.algebra();
  const auto d = alg.dimension();
  const auto& m = f.matrix();
  Vec defect(d, alg.field().zero());
  if (const auto& uv = alg.basis_bracket(u, v)) {
    for (std::size_t a = 0; a < d; ++a) {
      if (!m(a, uv->index).is_zero()) defect[a] += uv->coefficient * m(a, uv->index);
    }
  }
  for (std::size_t b = 0; b < d; ++b) {
    if (!m(b, u).is_zero()) {
      if (const auto& bv = alg.basis_bracket(b, v)) defect[bv->index] -= m(b, u) * bv->coefficient;
    }
    if (!m(b, v).is_zero()) {
      if (const auto& ub = alg.basis_bracket(u, b)) defect[ub->index] -= m(b, v) * ub->coefficient;
    }
  }
  return defect;
}

bool all_zero(const Vec& v) {
  for (const auto& x : v)
    if (!x.is_zero()) return false;
  return true;
}

}  // namespace

std::optional<LeibnizViolation> find_leibniz_violation(const Endo& f) {
  const auto d = f.dimension();
  for (std::size_t u = 0; u < d; ++u) {
    for (std::size_t v = 0; v < d; ++v) {
      auto defect = leibniz_defect(f, u, v);
      if (!all_zero(defect)) return LeibnizViolation{u, v, std::move(defect)};
    }
  }
  return std::nullopt;
}

bool is_derivation(const Endo& f) { return !find_leibniz_violation(f).has_value(); }

Endo ad_endo(const AlgebraPtr& algebra, const Mat& x) {
  const auto& part = algebra->partition();
  if (x.rows() != part.dimension() || x.cols() != part.dimension()) {
    throw std::invalid_argument("ad X needs an n×n matrix");
  }
  if (!is_block_upper(x, part)) {
    throw std::invalid_argument("ad X needs X block upper triangular, otherwise [X, N] leaves N");
  }
  const auto d = algebra->dimension();
  Mat m(algebra->field(), d, d);
  for (std::size_t k = 0; k < d; ++k) {
    auto image = algebra->to_coordinates(bracket(x, algebra->basis_matrix(k)));
    for (std::size_t a = 0; a < d; ++a) m(a, k) = image[a];
  }
  return Endo(algebra, std::move(m));
}

bool DerBasis::contains(const Endo& f) const {
  const auto d = algebra->dimension();
  RowEchelon ech(algebra->field(), d * d);
  for (const auto& g : generators) ech.insert(g.vectorized());
  return ech.contains(f.vectorized());
}

DerBasis make_der_basis(const AlgebraPtr& algebra, const std::vector<Endo>& maps) {
  const auto d = algebra->dimension();
  RowEchelon ech(algebra->field(), d * d);
  for (const auto& f : maps) ech.insert(f.vectorized());
  DerBasis out{algebra, {}};
  for (auto& row : ech.reduced_rows()) out.generators.push_back(Endo::from_vectorized(algebra, row));
  return out;
}

bool spans_equal(const DerBasis& a, const DerBasis& b) {
  if (a.dimension() != b.dimension()) return false;
  const auto d = a.algebra->dimension();
  RowEchelon ea(a.algebra->field(), d * d);
  RowEchelon eb(b.algebra->field(), d * d);
  for (const auto& g : a.generators) ea.insert(g.vectorized());
  for (const auto& g : b.generators) eb.insert(g.vectorized());
  for (const auto& g : a.generators)
    if (!eb.contains(g.vectorized())) return false;
  for (const auto& g : b.generators)
    if (!ea.contains(g.vectorized())) return false;
  return true;
}

namespace {

// Unknown F(a, b) sits in column a*d + b. For every ordered pair (u, v) and every output
// coordinate a, adds the row of coords(f([u,v]) - [f(u),v] - [u,f(v)])_a = 0.
RowEchelon leibniz_system(const NilAlgebra& alg, std::span<const std::size_t> order) {
  const auto d = alg.dimension();
  std::vector<std::size_t> position(d);  // old index -> new index
  for (std::size_t k = 0; k < d; ++k) position[order[k]] = k;

  auto bracket_new = [&](std::size_t u, std::size_t v) -> std::optional<BracketTerm> {
    const auto& term = alg.basis_bracket(order[u], order[v]);
    if (!term) return std::nullopt;
    return BracketTerm{position[term->index], term->coefficient};
  };

  RowEchelon ech(alg.field(), d * d);
  const Scalar zero = alg.field().zero();
  for (std::size_t u = 0; u < d; ++u) {
    for (std::size_t v = 0; v < d; ++v) {
      auto uv = bracket_new(u, v);
      std::vector<Vec> rows(d, Vec(d * d, zero));
      std::vector<bool> touched(d, false);
      if (uv) {
        for (std::size_t a = 0; a < d; ++a) {
          rows[a][a * d + uv->index] += uv->coefficient;
          touched[a] = true;
        }
      }
      for (std::size_t b = 0; b < d; ++b) {
        if (auto bv = bracket_new(b, v)) {
          rows[bv->index][b * d + u] -= bv->coefficient;
          touched[bv->index] = true;
        }
        if (auto ub = bracket_new(u, b)) {
          rows[ub->index][b * d + v] -= ub->coefficient;
          touched[ub->index] = true;
        }
      }
      for (std::size_t a = 0; a < d; ++a) {
        if (touched[a]) ech.insert(std::move(rows[a]));
      }
    }
  }
  return ech;
}

}  // namespace

DerBasis derivation_space_bruteforce(const AlgebraPtr& algebra) {
  const auto d = algebra->dimension();
  std::vector<std::size_t> order(d);
  std::iota(order.begin(), order.end(), 0);
  auto ech = leibniz_system(*algebra, order);
  Mat system(algebra->field(), ech.rank(), d * d);
  auto rows = ech.reduced_rows();
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < d * d; ++c) system(r, c) = rows[r][c];
  std::vector<Endo> maps;
  for (const auto& x : nullspace(system)) maps.push_back(Endo::from_vectorized(algebra, x.column_vector(0)));
  return make_der_basis(algebra, maps);
}

std::size_t derivation_dimension_in_order(const NilAlgebra& algebra,
                                          std::span<const std::size_t> order) {
  const auto d = algebra.dimension();
  if (order.size() != d) throw std::invalid_argument("basis order has wrong length");
  std::vector<bool> seen(d, false);
  for (auto k : order) {
    if (k >= d || seen[k]) throw std::invalid_argument("basis order is not a permutation");
    seen[k] = true;
  }
  return d * d - leibniz_system(algebra, order).rank();
}

bool support_allowed(std::size_t t, bool char_two, std::size_t i, std::size_t j, std::size_t a,
                     std::size_t b) {
  if (t <= 2) return true;
  const bool relaxed = char_two && t >= 4;
  if (j == i + 1) {
    if (i == 1) {
      // f(N^{12}) lies on the first block row plus N^{2t} (and N^{3t} in characteristic 2).
      return a == 1 || (a == 2 && b == t) || (relaxed && a == 3 && b == t);
    }
    if (j == t) {
      return b == t || (a == 1 && b == t - 1) || (relaxed && a == 1 && b == t - 2);
    }
    // 1 < k < t-1: k-th block row, (k+1)-th block column, center.
    return (b == j && a < i) || (a == i && b >= j) || (a == 1 && b == t);
  }
  // j > i + 1: the i-th block row from column j on, and the j-th block column above row i.
  if ((b == j && a < i) || (a == i && b >= j)) return true;
  if (relaxed && i == 1 && j == 3 && a == 2 && b == t) return true;
  if (relaxed && i == t - 2 && j == t && a == 1 && b == t - 1) return true;
  return false;
}

SupportReport check_support_lemmas(const Endo& f, std::size_t generator_index) {
  SupportReport report;
  report.generators = 1;
  const auto& alg = f.algebra();
  const std::size_t t = alg.blocks();
  const auto& part = alg.partition();
  const bool char_two = alg.field().characteristic() == 2;
  auto violate = [&](std::size_t si, std::size_t sj, std::size_t ti, std::size_t tj, std::string rule) {
    report.violations.push_back({generator_index, si, sj, ti, tj, std::move(rule)});
  };
  auto block_nonzero = [&](std::size_t si, std::size_t sj, std::size_t ti, std::size_t tj) {
    for (auto k : alg.block_indices(si, sj))
      if (!f.image_block(k, ti, tj).is_zero()) return true;
    return false;
  };

  // Support sets, block by block.
  if (t >= 3) {
    for (std::size_t i = 1; i <= t; ++i)
      for (std::size_t j = i + 1; j <= t; ++j)
        for (std::size_t a = 1; a <= t; ++a)
          for (std::size_t b = a + 1; b <= t; ++b) {
            ++report.checks;
            if (!support_allowed(t, char_two, i, j, a, b) && block_nonzero(i, j, a, b))
              violate(i, j, a, b, "support");
          }
  }

  // Derivations preserve the center N^{1t}.
  if (t >= 2) {
    for (std::size_t a = 1; a <= t; ++a)
      for (std::size_t b = a + 1; b <= t; ++b) {
        if (a == 1 && b == t) continue;
        ++report.checks;
        if (block_nonzero(1, t, a, b)) violate(1, t, a, b, "center");
      }
  }

  if (t >= 3) {
    // f(N^{12})_{2t}: zero when block (1,2) has several rows; otherwise row i of
    // f(E^{12}_{1j})_{2t} equals row j of f(E^{12}_{1i})_{2t}.
    ++report.checks;
    if (part.size(1) >= 2) {
      if (block_nonzero(1, 2, 2, t)) violate(1, 2, 2, t, "corner-12-multirow");
    } else {
      for (std::size_t i = 1; i <= part.size(2); ++i)
        for (std::size_t j = 1; j <= part.size(2); ++j) {
          auto mj = f.image_block(alg.index_of(1, 2, 1, j), 2, t);
          auto mi = f.image_block(alg.index_of(1, 2, 1, i), 2, t);
          if (mj.row_vector(i - 1) != mi.row_vector(j - 1)) violate(1, 2, 2, t, "corner-12-rows");
        }
    }
    // Mirror statement for f(N^{t-1,t})_{1,t-1}, columns instead of rows.
    ++report.checks;
    if (part.size(t) >= 2) {
      if (block_nonzero(t - 1, t, 1, t - 1)) violate(t - 1, t, 1, t - 1, "corner-t-multicol");
    } else {
      for (std::size_t i = 1; i <= part.size(t - 1); ++i)
        for (std::size_t j = 1; j <= part.size(t - 1); ++j) {
          auto mj = f.image_block(alg.index_of(t - 1, t, j, 1), 1, t - 1);
          auto mi = f.image_block(alg.index_of(t - 1, t, i, 1), 1, t - 1);
          if (mj.column_vector(i - 1) != mi.column_vector(j - 1))
            violate(t - 1, t, 1, t - 1, "corner-t-columns");
        }
    }
  }

  if (t >= 4 && !char_two) {
    report.corner_zero_checks += 2;
    if (block_nonzero(1, 2, 3, t)) violate(1, 2, 3, t, "char-not-2-corner");
    if (block_nonzero(t - 1, t, 1, t - 2)) violate(t - 1, t, 1, t - 2, "char-not-2-corner");
  }

  if (t >= 4 && char_two) {
    // f(N^{12})_{3t} and f(N^{13})_{2t}: both zero when the first block row has several rows,
    // otherwise row i of f(E^{13}_{1j})_{2t} equals row j of f(E^{12}_{1i})_{3t}.
    ++report.checks;
    if (part.size(1) >= 2) {
      if (block_nonzero(1, 2, 3, t)) violate(1, 2, 3, t, "psi-12-multirow");
      if (block_nonzero(1, 3, 2, t)) violate(1, 3, 2, t, "psi-12-multirow");
    } else {
      for (std::size_t i = 1; i <= part.size(2); ++i)
        for (std::size_t j = 1; j <= part.size(3); ++j) {
          auto k13 = f.image_block(alg.index_of(1, 3, 1, j), 2, t);
          auto m12 = f.image_block(alg.index_of(1, 2, 1, i), 3, t);
          if (k13.row_vector(i - 1) != m12.row_vector(j - 1)) violate(1, 3, 2, t, "psi-12-rows");
        }
    }
    ++report.checks;
    if (part.size(t) >= 2) {
      if (block_nonzero(t - 1, t, 1, t - 2)) violate(t - 1, t, 1, t - 2, "psi-t-multicol");
      if (block_nonzero(t - 2, t, 1, t - 1)) violate(t - 2, t, 1, t - 1, "psi-t-multicol");
    } else {
      for (std::size_t i = 1; i <= part.size(t - 1); ++i)
        for (std::size_t j = 1; j <= part.size(t - 2); ++j) {
          auto k = f.image_block(alg.index_of(t - 2, t, j, 1), 1, t - 1);
          auto m = f.image_block(alg.index_of(t - 1, t, i, 1), 1, t - 2);
          if (k.column_vector(i - 1) != m.column_vector(j - 1)) violate(t - 2, t, 1, t - 1, "psi-t-columns");
        }
    }
  }
  return report;
}

SupportReport check_support_lemmas(const DerBasis& basis) {
  SupportReport total;
  for (std::size_t g = 0; g < basis.generators.size(); ++g) {
    auto r = check_support_lemmas(basis.generators[g], g);
    total.generators += 1;
    total.checks += r.checks;
    total.corner_zero_checks += r.corner_zero_checks;
    total.violations.insert(total.violations.end(), r.violations.begin(), r.violations.end());
  }
  return total;
}

}  // namespace nilder
