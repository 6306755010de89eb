#ifndef NILDER_DECOMPOSITION_HPP
#define NILDER_DECOMPOSITION_HPP

#include <cstddef>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "nilder/endomorphism.hpp"

namespace nilder {

/// Off-diagonal block positions (p, q), p < q, whose X-blocks are read directly from a
/// derivation: all pairs except (1,t-1), (1,t) and (2,t).
struct OmegaSet {
  std::set<std::pair<std::size_t, std::size_t>> pairs;

  bool contains(std::size_t p, std::size_t q) const { return pairs.count({p, q}) > 0; }
  std::size_t size() const { return pairs.size(); }
};

OmegaSet omega(std::size_t t);

/// The input map is not a derivation; carries the first violating ordered basis pair.
class NotADerivationError : public std::invalid_argument {
 public:
  explicit NotADerivationError(LeibnizViolation violation);
  const LeibnizViolation& violation() const { return violation_; }

 private:
  LeibnizViolation violation_;
};

/// A pipeline invariant failed. These indicate a bug, not bad input.
class DecompositionError : public std::logic_error {
 public:
  DecompositionError(std::string stage, const std::string& detail);
  const std::string& stage() const { return stage_; }

 private:
  std::string stage_;
};

/// f = ad X + varphi_1t + phi^{12}_{2t} + phi^{t-1,t}_{1,t-1} (+ the two psi maps in
/// characteristic 2). The psi components are absent outside characteristic 2.
struct DerivationDecomposition {
  Mat x;
  Endo varphi_1t;
  Endo phi_12_2t;
  Endo phi_t1t_1t1;
  std::optional<Endo> psi_12_13;
  std::optional<Endo> psi_t1_t2;
};

/// X_0 = Σ_{(p,q) ∈ Ω} X^{pq}. For q < t the block X_{pq} is read from f(E^{q,q+1}_{rs})_{p,q+1}
/// (column s equals column r of X_{pq}); for q = t from f(E^{1p}_{rs})_{1t} (row r equals
/// minus row s of X_{pt}). Every redundant probe is cross-checked.
Mat extract_offdiag(const Endo& f);

struct CornerPhis {
  Endo phi_12_2t;
  Endo phi_t1t_1t1;
};

/// phi^{12}_{2t}(E^{12}_{pq}) = f(E^{12}_{pq})_{2t} and phi^{t-1,t}_{1,t-1}(E^{t-1,t}_{pq}) =
/// f(E^{t-1,t}_{pq})_{1,t-1}, zero on all other basis elements. Both vanish for t <= 2.
CornerPhis extract_corner_phis(const Endo& f);

struct Psis {
  Endo psi_12_13;
  Endo psi_t1_t2;
};

/// Characteristic 2 only. psi^{12;13}: N^{12} -> N^{3t}, N^{13} -> N^{2t};
/// psi^{t-1,t;t-2,t}: N^{t-1,t} -> N^{1,t-2}, N^{t-2,t} -> N^{1,t-1}. Both vanish for t < 4.
Psis extract_psis(const Endo& f);

/// Superdiagonal basis elements go to the (1,t) block of their images, everything else to 0.
Endo extract_varphi_1t(const Endo& f);

/// For a derivation preserving every block N^{ij}: a block diagonal X with f2 = ad X.
/// For t = 2 the diagonal X is found by a linear solve when f2 is in the ad-image, else 0.
Mat extract_diagonal(const Endo& f2);

DerivationDecomposition decompose(const Endo& f);
Endo synthesize(const DerivationDecomposition& decomposition);

/// Generator families spanning Der(N), before echelon reduction.
struct StructuralGenerators {
  std::vector<Endo> ad;
  std::vector<Endo> varphi_1t;
  std::vector<Endo> phi_12_2t;
  std::vector<Endo> phi_t1t_1t1;
  std::vector<Endo> psi_12_13;
  std::vector<Endo> psi_t1_t2;

  std::vector<Endo> all() const;
};

StructuralGenerators structural_generators(const AlgebraPtr& algebra);
DerBasis derivation_space_structural(const AlgebraPtr& algebra);

}  // namespace nilder

#endif  // NILDER_DECOMPOSITION_HPP
