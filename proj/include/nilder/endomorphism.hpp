#ifndef NILDER_ENDOMORPHISM_HPP
#define NILDER_ENDOMORPHISM_HPP

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "nilder/matrix.hpp"
#include "nilder/nilalgebra.hpp"

namespace nilder {

using AlgebraPtr = std::shared_ptr<const NilAlgebra>;

AlgebraPtr make_algebra(Field field, Partition partition);

/// A linear endomorphism of N in coordinates: column k of the d×d matrix holds the
/// coordinates of the image of basis element k.
class Endo {
 public:
  Endo(AlgebraPtr algebra, Mat matrix);
  static Endo zero(AlgebraPtr algebra);
  /// Inverse of vectorized(): entry (a, b) sits at position a*d + b.
  static Endo from_vectorized(AlgebraPtr algebra, const Vec& entries);

  const NilAlgebra& algebra() const { return *algebra_; }
  const AlgebraPtr& algebra_ptr() const { return algebra_; }
  const Mat& matrix() const { return matrix_; }
  std::size_t dimension() const { return matrix_.rows(); }

  Vec image(std::size_t k) const { return matrix_.column_vector(k); }
  Vec apply(const Vec& coords) const;
  /// Applies the map to an element of N given as an n×n matrix.
  Mat apply(const Mat& element) const;
  /// Block (a, b) of f(e_k) as an n_a × n_b matrix.
  Mat image_block(std::size_t k, std::size_t a, std::size_t b) const;

  bool is_zero() const { return matrix_.is_zero(); }
  Vec vectorized() const { return matrix_.entries(); }

  Endo& operator+=(const Endo& other);
  Endo& operator-=(const Endo& other);
  friend Endo operator+(Endo a, const Endo& b) { return a += b; }
  friend Endo operator-(Endo a, const Endo& b) { return a -= b; }
  friend Endo operator*(const Scalar& s, Endo a);
  /// Composition: (f * g)(x) = f(g(x)).
  friend Endo operator*(const Endo& f, const Endo& g);
  friend bool operator==(const Endo& a, const Endo& b);

 private:
  void require_same_algebra(const Endo& other) const;

  AlgebraPtr algebra_;
  Mat matrix_;
};

Endo commutator(const Endo& f, const Endo& g);

/// An ordered basis pair (u, v) on which f([u,v]) = [f(u),v] + [u,f(v)] fails, with the
/// coordinates of f([u,v]) - [f(u),v] - [u,f(v)].
struct LeibnizViolation {
  std::size_t u;
  std::size_t v;
  Vec defect;
};

std::optional<LeibnizViolation> find_leibniz_violation(const Endo& f);
bool is_derivation(const Endo& f);

/// ad X : Y ↦ [X, Y] restricted to N. Throws std::invalid_argument unless X is block upper
/// triangular.
Endo ad_endo(const AlgebraPtr& algebra, const Mat& x);

/// A basis of a subspace of End(N), kept in reduced row echelon form of the vectorized maps.
struct DerBasis {
  AlgebraPtr algebra;
  std::vector<Endo> generators;

  std::size_t dimension() const { return generators.size(); }
  bool contains(const Endo& f) const;
};

/// Echelon-normalizes the span of `maps`; dependent inputs are dropped.
DerBasis make_der_basis(const AlgebraPtr& algebra, const std::vector<Endo>& maps);

/// Same dimension and each generator lies in the span of the other basis.
bool spans_equal(const DerBasis& a, const DerBasis& b);

/// Der(N) as the nullspace of the Leibniz system over all ordered basis pairs
/// (d^2 unknowns, one block of d equations per pair).
DerBasis derivation_space_bruteforce(const AlgebraPtr& algebra);

/// dim Der(N) computed with the basis of N relabelled: new basis element k is old element
/// order[k]. Used to check that the oracle does not depend on the basis order.
std::size_t derivation_dimension_in_order(const NilAlgebra& algebra,
                                          std::span<const std::size_t> order);

/// Block-support constraints a derivation satisfies, by source block (i, j) and target
/// block (a, b). `char_two` selects the relaxed characteristic-2 variant. Every block is
/// allowed for t <= 2.
bool support_allowed(std::size_t t, bool char_two, std::size_t i, std::size_t j, std::size_t a,
                     std::size_t b);

struct SupportViolation {
  std::size_t generator;
  std::size_t source_i, source_j;
  std::size_t target_i, target_j;
  std::string rule;
};

struct SupportReport {
  std::size_t generators = 0;
  std::size_t checks = 0;
  /// Checks of the (3,t) block of f(N^{12}) and the (1,t-2) block of f(N^{t-1,t}) in
  /// characteristic != 2, t >= 4.
  std::size_t corner_zero_checks = 0;
  std::vector<SupportViolation> violations;

  bool passed() const { return violations.empty(); }
};

SupportReport check_support_lemmas(const DerBasis& basis);
SupportReport check_support_lemmas(const Endo& f, std::size_t generator_index = 0);

}  // namespace nilder

#endif  // NILDER_ENDOMORPHISM_HPP
