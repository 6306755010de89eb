#include "nilder/decomposition.hpp"

#include "nilder/factor_solvers.hpp"

namespace nilder {

OmegaSet omega(std::size_t t) {
  if (t == 0) throw std::invalid_argument("omega needs at least one block");
  OmegaSet out;
  for (std::size_t p = 1; p <= t; ++p)
    for (std::size_t q = p + 1; q <= t; ++q) {
      if (p == 1 && (q == t - 1 || q == t)) continue;
      if (p == 2 && q == t) continue;
      out.pairs.insert({p, q});
    }
  return out;
}

NotADerivationError::NotADerivationError(LeibnizViolation violation)
    : std::invalid_argument("map is not a derivation: Leibniz rule fails on basis pair (" +
                            std::to_string(violation.u) + ", " + std::to_string(violation.v) + ")"),
      violation_(std::move(violation)) {}

DecompositionError::DecompositionError(std::string stage, const std::string& detail)
    : std::logic_error("decomposition stage '" + stage + "': " + detail), stage_(std::move(stage)) {}

namespace {

std::string block_name(std::size_t i, std::size_t j) {
  return "N^{" + std::to_string(i) + "," + std::to_string(j) + "}";
}

bool block_image_nonzero(const Endo& f, std::size_t i, std::size_t j, std::size_t a, std::size_t b) {
  for (auto k : f.algebra().block_indices(i, j))
    if (!f.image_block(k, a, b).is_zero()) return true;
  return false;
}

// Copies the (a, b) block of f(N^{ij}) for each listed (i, j, a, b); everything else is 0.
struct Route {
  std::size_t i, j, a, b;
};

Endo route_blocks(const Endo& f, const std::vector<Route>& routes) {
  const auto& alg = f.algebra();
  Mat m(alg.field(), alg.dimension(), alg.dimension());
  for (const auto& r : routes) {
    const auto rows = alg.block_indices(r.a, r.b);
    for (auto k : alg.block_indices(r.i, r.j))
      for (auto w : rows) m(w, k) = f.matrix()(w, k);
  }
  return Endo(f.algebra_ptr(), std::move(m));
}

// The restriction N^{ij} -> N^{ij} of f as a map on n_i × n_j matrices.
BlockLinMap restrict_to_block(const Endo& f, std::size_t i, std::size_t j) {
  const auto& alg = f.algebra();
  const auto idx = alg.block_indices(i, j);
  Mat action(alg.field(), idx.size(), idx.size());
  for (std::size_t c = 0; c < idx.size(); ++c)
    for (std::size_t r = 0; r < idx.size(); ++r) action(r, c) = f.matrix()(idx[r], idx[c]);
  Shape shape{alg.partition().size(i), alg.partition().size(j)};
  return BlockLinMap(shape, shape, std::move(action));
}

bool preserves_blocks(const Endo& f, bool allow_center_on_superdiagonal) {
  const std::size_t t = f.algebra().blocks();
  for (std::size_t i = 1; i <= t; ++i)
    for (std::size_t j = i + 1; j <= t; ++j)
      for (std::size_t a = 1; a <= t; ++a)
        for (std::size_t b = a + 1; b <= t; ++b) {
          if (a == i && b == j) continue;
          if (allow_center_on_superdiagonal && j == i + 1 && a == 1 && b == t) continue;
          if (block_image_nonzero(f, i, j, a, b)) return false;
        }
  return true;
}

// Blocks that f0 = f - ad X_0 may still reach from N^{ij}.
bool f0_target_allowed(std::size_t t, bool char_two, std::size_t i, std::size_t j, std::size_t a,
                       std::size_t b) {
  if (a == i && b == j) return true;
  if (j == i + 1 && a == 1 && b == t) return true;
  if (i == 1 && j == 2 && a == 2 && b == t) return true;
  if (i == t - 1 && j == t && a == 1 && b == t - 1) return true;
  if (char_two && t >= 4) {
    if (i == 1 && j == 2 && a == 3 && b == t) return true;
    if (i == 1 && j == 3 && a == 2 && b == t) return true;
    if (i == t - 1 && j == t && a == 1 && b == t - 2) return true;
    if (i == t - 2 && j == t && a == 1 && b == t - 1) return true;
  }
  return false;
}

void check_f0(const Endo& f0) {
  const auto& alg = f0.algebra();
  const std::size_t t = alg.blocks();
  const bool char_two = alg.field().characteristic() == 2;
  for (const auto& [p, q] : omega(t).pairs) {
    for (std::size_t i = 1; i < p; ++i)
      if (block_image_nonzero(f0, i, p, i, q))
        throw DecompositionError("offdiag", "f0(" + block_name(i, p) + ") reaches block (" +
                                                std::to_string(i) + "," + std::to_string(q) + ")");
    for (std::size_t j = q + 1; j <= t; ++j)
      if (block_image_nonzero(f0, q, j, p, j))
        throw DecompositionError("offdiag", "f0(" + block_name(q, j) + ") reaches block (" +
                                                std::to_string(p) + "," + std::to_string(j) + ")");
  }
  if (t < 3) return;
  for (std::size_t i = 1; i <= t; ++i)
    for (std::size_t j = i + 1; j <= t; ++j)
      for (std::size_t a = 1; a <= t; ++a)
        for (std::size_t b = a + 1; b <= t; ++b)
          if (!f0_target_allowed(t, char_two, i, j, a, b) && block_image_nonzero(f0, i, j, a, b))
            throw DecompositionError("offdiag", "f0(" + block_name(i, j) + ") has support in block (" +
                                                    std::to_string(a) + "," + std::to_string(b) + ")");
}

Mat unit(const Partition& part, Field field, std::size_t i, std::size_t j, std::size_t p,
         std::size_t q) {
  return unit_matrix(field, part.size(i), part.size(j), p, q);
}

}  // namespace

Mat extract_offdiag(const Endo& f) {
  const auto& alg = f.algebra();
  const auto& part = alg.partition();
  const Field field = alg.field();
  const std::size_t t = alg.blocks();
  Mat x0(field, part.dimension(), part.dimension());
  for (const auto& [p, q] : omega(t).pairs) {
    Mat x(field, part.size(p), part.size(q));
    if (q < t) {
      // f(E^{q,q+1}_{r1})_{p,q+1} = X E_{r1}: its first column is column r of X.
      for (std::size_t r = 1; r <= part.size(q); ++r) {
        auto img = f.image_block(alg.index_of(q, q + 1, r, 1), p, q + 1);
        for (std::size_t a = 0; a < x.rows(); ++a) x(a, r - 1) = img(a, 0);
      }
      for (std::size_t r = 1; r <= part.size(q); ++r)
        for (std::size_t s = 1; s <= part.size(q + 1); ++s) {
          auto img = f.image_block(alg.index_of(q, q + 1, r, s), p, q + 1);
          if (!(img == x * unit(part, field, q, q + 1, r, s)))
            throw DecompositionError("offdiag", "probes of X_{" + std::to_string(p) + "," +
                                                    std::to_string(q) + "} disagree");
        }
    } else {
      // f(E^{1p}_{1s})_{1t} = -E_{1s} X: its first row is minus row s of X.
      for (std::size_t s = 1; s <= part.size(p); ++s) {
        auto img = f.image_block(alg.index_of(1, p, 1, s), 1, t);
        for (std::size_t c = 0; c < x.cols(); ++c) x(s - 1, c) = -img(0, c);
      }
      for (std::size_t r = 1; r <= part.size(1); ++r)
        for (std::size_t s = 1; s <= part.size(p); ++s) {
          auto img = f.image_block(alg.index_of(1, p, r, s), 1, t);
          if (!(img == -(unit(part, field, 1, p, r, s) * x)))
            throw DecompositionError("offdiag", "probes of X_{" + std::to_string(p) + "," +
                                                    std::to_string(t) + "} disagree");
        }
    }
    x0 += embed_block(x, p, q, part);
  }
  return x0;
}

CornerPhis extract_corner_phis(const Endo& f) {
  const std::size_t t = f.algebra().blocks();
  if (t < 3) return {Endo::zero(f.algebra_ptr()), Endo::zero(f.algebra_ptr())};
  CornerPhis out{route_blocks(f, {{1, 2, 2, t}}), route_blocks(f, {{t - 1, t, 1, t - 1}})};
  if (!is_derivation(out.phi_12_2t) || !is_derivation(out.phi_t1t_1t1))
    throw DecompositionError("corner-phi", "an extracted corner map is not a derivation");
  return out;
}

Psis extract_psis(const Endo& f) {
  const auto& alg = f.algebra();
  if (alg.field().characteristic() != 2)
    throw std::invalid_argument("psi components exist only in characteristic 2");
  const std::size_t t = alg.blocks();
  if (t < 4) return {Endo::zero(f.algebra_ptr()), Endo::zero(f.algebra_ptr())};
  Psis out{route_blocks(f, {{1, 2, 3, t}, {1, 3, 2, t}}),
           route_blocks(f, {{t - 1, t, 1, t - 2}, {t - 2, t, 1, t - 1}})};
  if (!is_derivation(out.psi_12_13) || !is_derivation(out.psi_t1_t2))
    throw DecompositionError("psi", "an extracted psi map is not a derivation");
  return out;
}

Endo extract_varphi_1t(const Endo& f) {
  const std::size_t t = f.algebra().blocks();
  std::vector<Route> routes;
  for (std::size_t i = 1; i < t; ++i) routes.push_back({i, i + 1, 1, t});
  return route_blocks(f, routes);
}

Mat extract_diagonal(const Endo& f2) {
  const auto& alg = f2.algebra();
  const auto& part = alg.partition();
  const Field field = alg.field();
  const std::size_t t = alg.blocks();
  const std::size_t n = part.dimension();
  if (!preserves_blocks(f2, false))
    throw std::invalid_argument("extract_diagonal needs a map preserving every block N^{ij}");
  if (t == 1) return Mat(field, n, n);

  if (t == 2) {
    std::vector<Mat> units;
    for (std::size_t i = 1; i <= 2; ++i)
      for (std::size_t p = 1; p <= part.size(i); ++p)
        for (std::size_t q = 1; q <= part.size(i); ++q)
          units.push_back(embed_block(unit(part, field, i, i, p, q), i, i, part));
    const auto d = alg.dimension();
    Mat system(field, d * d, units.size());
    for (std::size_t c = 0; c < units.size(); ++c) {
      auto v = ad_endo(f2.algebra_ptr(), units[c]).vectorized();
      for (std::size_t r = 0; r < v.size(); ++r) system(r, c) = v[r];
    }
    Mat x(field, n, n);
    if (auto sol = solve(system, f2.vectorized())) {
      for (std::size_t c = 0; c < units.size(); ++c) x += units[c] * (*sol)[c];
    }
    return x;
  }

  Mat x(field, n, n);
  Endo current = f2;
  try {
    auto sw = solve_sandwich(restrict_to_block(f2, 1, 3), restrict_to_block(f2, 1, 2),
                             restrict_to_block(f2, 2, 3));
    Mat first = embed_block(sw.x, 1, 1, part) - embed_block(sw.z, 2, 2, part);
    x += first;
    current -= ad_endo(f2.algebra_ptr(), first);
    if (block_image_nonzero(current, 1, 2, 1, 2))
      throw DecompositionError("diagonal", "ad X^{11} - ad Z^{22} does not reproduce f on N^{1,2}");

    for (std::size_t l = 2; l < t; ++l) {
      Mat xr = solve_right_factor(restrict_to_block(current, 1, l + 1), restrict_to_block(current, l, l + 1));
      Mat step = -embed_block(xr, l + 1, l + 1, part);
      x += step;
      current -= ad_endo(f2.algebra_ptr(), step);
      for (std::size_t p = 1; p <= l; ++p)
        if (block_image_nonzero(current, p, l + 1, p, l + 1))
          throw DecompositionError("diagonal", "residual survives on " + block_name(p, l + 1));
    }
  } catch (const HypothesisViolation& e) {
    throw DecompositionError("diagonal", e.what());
  } catch (const InternalConsistencyError& e) {
    throw DecompositionError("diagonal", e.what());
  }
  if (!current.is_zero()) throw DecompositionError("diagonal", "f2 - ad X is not zero");
  return x;
}

DerivationDecomposition decompose(const Endo& f) {
  if (auto violation = find_leibniz_violation(f)) throw NotADerivationError(std::move(*violation));
  const auto& alg = f.algebra();
  const auto algebra = f.algebra_ptr();
  const bool char_two = alg.field().characteristic() == 2;

  Mat x0 = extract_offdiag(f);
  Endo f0 = f - ad_endo(algebra, x0);
  check_f0(f0);

  auto corners = extract_corner_phis(f);
  {
    auto again = extract_corner_phis(f0);
    if (!(again.phi_12_2t == corners.phi_12_2t) || !(again.phi_t1t_1t1 == corners.phi_t1t_1t1))
      throw DecompositionError("corner-phi", "ad X_0 touches a corner block");
  }
  Endo f1 = f0 - corners.phi_12_2t - corners.phi_t1t_1t1;

  std::optional<Psis> psis;
  if (char_two) {
    psis = extract_psis(f);
    auto again = extract_psis(f0);
    if (!(again.psi_12_13 == psis->psi_12_13) || !(again.psi_t1_t2 == psis->psi_t1_t2))
      throw DecompositionError("psi", "ad X_0 touches a psi block");
    f1 -= psis->psi_12_13;
    f1 -= psis->psi_t1_t2;
  }
  if (!preserves_blocks(f1, true))
    throw DecompositionError("f1", "f1 leaves N^{ij} + N^{1t} on some block");

  Endo varphi = extract_varphi_1t(f);
  if (!(extract_varphi_1t(f1) == varphi))
    throw DecompositionError("varphi", "earlier components reach the center");
  Endo f2 = f1 - varphi;
  if (!preserves_blocks(f2, false)) throw DecompositionError("f2", "f2 does not preserve every block");

  Mat x = x0 + extract_diagonal(f2);

  DerivationDecomposition out{x, varphi, corners.phi_12_2t, corners.phi_t1t_1t1, std::nullopt,
                              std::nullopt};
  if (psis) {
    out.psi_12_13 = psis->psi_12_13;
    out.psi_t1_t2 = psis->psi_t1_t2;
  }
  if (!(synthesize(out) == f)) throw DecompositionError("synthesis", "components do not sum to f");
  return out;
}

namespace {

// Columns outside the listed source blocks and rows outside the listed target blocks vanish.
bool confined_to(const Endo& g, const std::vector<Route>& routes) {
  const auto& alg = g.algebra();
  const auto d = alg.dimension();
  std::vector<std::vector<bool>> allowed(d, std::vector<bool>(d, false));
  for (const auto& r : routes) {
    const auto rows = alg.block_indices(r.a, r.b);
    for (auto k : alg.block_indices(r.i, r.j))
      for (auto w : rows) allowed[w][k] = true;
  }
  for (std::size_t w = 0; w < d; ++w)
    for (std::size_t k = 0; k < d; ++k)
      if (!allowed[w][k] && !g.matrix()(w, k).is_zero()) return false;
  return true;
}

}  // namespace

Endo synthesize(const DerivationDecomposition& dec) {
  const auto& algebra = dec.varphi_1t.algebra_ptr();
  const auto& alg = *algebra;
  const std::size_t t = alg.blocks();
  const bool char_two = alg.field().characteristic() == 2;
  auto check = [](bool ok, const std::string& what) {
    if (!ok) throw std::invalid_argument("invalid decomposition component: " + what);
  };

  std::vector<Route> superdiag;
  for (std::size_t i = 1; i < t; ++i) superdiag.push_back({i, i + 1, 1, t});
  check(confined_to(dec.varphi_1t, superdiag), "varphi_1t must map the superdiagonal into N^{1t}");
  if (t >= 3) {
    check(confined_to(dec.phi_12_2t, {{1, 2, 2, t}}), "phi_12_2t must map N^{12} into N^{2t}");
    check(confined_to(dec.phi_t1t_1t1, {{t - 1, t, 1, t - 1}}),
          "phi_t1t_1t1 must map N^{t-1,t} into N^{1,t-1}");
  } else {
    check(dec.phi_12_2t.is_zero() && dec.phi_t1t_1t1.is_zero(), "corner maps vanish for t <= 2");
  }
  check(dec.psi_12_13.has_value() == char_two && dec.psi_t1_t2.has_value() == char_two,
        "psi components are present exactly in characteristic 2");

  Endo out = ad_endo(algebra, dec.x) + dec.varphi_1t + dec.phi_12_2t + dec.phi_t1t_1t1;
  if (char_two) {
    if (t >= 4) {
      check(confined_to(*dec.psi_12_13, {{1, 2, 3, t}, {1, 3, 2, t}}), "psi_12_13 support");
      check(confined_to(*dec.psi_t1_t2, {{t - 1, t, 1, t - 2}, {t - 2, t, 1, t - 1}}),
            "psi_t1_t2 support");
    } else {
      check(dec.psi_12_13->is_zero() && dec.psi_t1_t2->is_zero(), "psi maps vanish for t < 4");
    }
    out += *dec.psi_12_13;
    out += *dec.psi_t1_t2;
  }
  return out;
}

std::vector<Endo> StructuralGenerators::all() const {
  std::vector<Endo> out;
  for (const auto* family : {&ad, &varphi_1t, &phi_12_2t, &phi_t1t_1t1, &psi_12_13, &psi_t1_t2})
    out.insert(out.end(), family->begin(), family->end());
  return out;
}

namespace {

// The endomorphism sending each listed basis element to the listed basis element, 0 elsewhere.
Endo basis_map(const AlgebraPtr& algebra, const std::vector<std::pair<std::size_t, std::size_t>>& arrows) {
  Endo g = Endo::zero(algebra);
  Mat m = g.matrix();
  for (const auto& [from, to] : arrows) m(to, from) = m(to, from) + algebra->field().one();
  return Endo(algebra, std::move(m));
}

}  // namespace

StructuralGenerators structural_generators(const AlgebraPtr& algebra) {
  const auto& alg = *algebra;
  const auto& part = alg.partition();
  const Field field = alg.field();
  const std::size_t t = alg.blocks();
  const std::size_t n = part.dimension();
  StructuralGenerators out;
  if (alg.dimension() == 0) return out;

  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      if (part.block_containing(a) > part.block_containing(b)) continue;
      Mat e(field, n, n);
      e(a, b) = field.one();
      out.ad.push_back(ad_endo(algebra, e));
    }

  const auto center = alg.block_indices(1, t);
  for (std::size_t i = 1; i < t; ++i)
    for (auto src : alg.block_indices(i, i + 1))
      for (auto dst : center) out.varphi_1t.push_back(basis_map(algebra, {{src, dst}}));

  if (t >= 3 && part.size(1) == 1) {
    const auto n2 = part.size(2);
    for (std::size_t i = 1; i <= n2; ++i)
      for (std::size_t j = i; j <= n2; ++j)
        for (std::size_t c = 1; c <= part.size(t); ++c) {
          std::vector<std::pair<std::size_t, std::size_t>> arrows{
              {alg.index_of(1, 2, 1, j), alg.index_of(2, t, i, c)}};
          if (i != j) arrows.push_back({alg.index_of(1, 2, 1, i), alg.index_of(2, t, j, c)});
          out.phi_12_2t.push_back(basis_map(algebra, arrows));
        }
  }
  if (t >= 3 && part.size(t) == 1) {
    const auto m = part.size(t - 1);
    for (std::size_t i = 1; i <= m; ++i)
      for (std::size_t j = i; j <= m; ++j)
        for (std::size_t r = 1; r <= part.size(1); ++r) {
          std::vector<std::pair<std::size_t, std::size_t>> arrows{
              {alg.index_of(t - 1, t, j, 1), alg.index_of(1, t - 1, r, i)}};
          if (i != j) arrows.push_back({alg.index_of(t - 1, t, i, 1), alg.index_of(1, t - 1, r, j)});
          out.phi_t1t_1t1.push_back(basis_map(algebra, arrows));
        }
  }

  if (field.characteristic() == 2 && t >= 4) {
    if (part.size(1) == 1 && part.size(2) == 1) {
      for (std::size_t j = 1; j <= part.size(3); ++j)
        for (std::size_t c = 1; c <= part.size(t); ++c)
          out.psi_12_13.push_back(basis_map(algebra, {{alg.index_of(1, 2, 1, 1), alg.index_of(3, t, j, c)},
                                                      {alg.index_of(1, 3, 1, j), alg.index_of(2, t, 1, c)}}));
    }
    if (part.size(t) == 1 && part.size(t - 1) == 1) {
      for (std::size_t j = 1; j <= part.size(t - 2); ++j)
        for (std::size_t r = 1; r <= part.size(1); ++r)
          out.psi_t1_t2.push_back(
              basis_map(algebra, {{alg.index_of(t - 1, t, 1, 1), alg.index_of(1, t - 2, r, j)},
                                  {alg.index_of(t - 2, t, j, 1), alg.index_of(1, t - 1, r, 1)}}));
    }
  }
  return out;
}

DerBasis derivation_space_structural(const AlgebraPtr& algebra) {
  return make_der_basis(algebra, structural_generators(algebra).all());
}

}  // namespace nilder
