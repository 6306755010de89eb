#include <doctest.h>

#include "generators.hpp"
#include "nilder/decomposition.hpp"

using namespace nilder;

namespace {

Endo example_map(Field field) {
  auto algebra = make_algebra(field, Partition({1, 1, 1, 1}));
  auto e = [&](std::size_t i, std::size_t j) { return algebra->index_of(i, j, 1, 1); };
  Mat m(field, 6, 6);
  m(e(3, 4), e(1, 2)) = -field.one();
  m(e(2, 4), e(1, 3)) = field.one();
  return Endo(algebra, m);
}

Mat unit_in(const AlgebraPtr& algebra, std::size_t i, std::size_t j, std::size_t p, std::size_t q) {
  const auto& part = algebra->partition();
  return embed_block(unit_matrix(algebra->field(), part.size(i), part.size(j), p, q), i, j, part);
}

bool all_components_are_derivations(const DerivationDecomposition& d) {
  bool ok = is_derivation(d.varphi_1t) && is_derivation(d.phi_12_2t) && is_derivation(d.phi_t1t_1t1);
  if (d.psi_12_13) ok = ok && is_derivation(*d.psi_12_13);
  if (d.psi_t1_t2) ok = ok && is_derivation(*d.psi_t1_t2);
  return ok;
}

}  // namespace

TEST_CASE("omega index sets") {
  CHECK(omega(1).size() == 0);
  CHECK(omega(2).size() == 0);
  CHECK(omega(3).size() == 0);
  auto o4 = omega(4);
  CHECK(o4.size() == 3);
  CHECK(o4.contains(1, 2));
  CHECK(o4.contains(2, 3));
  CHECK(o4.contains(3, 4));
  auto o5 = omega(5);
  CHECK(o5.size() == 7);
  CHECK_FALSE(o5.contains(1, 4));
  CHECK_FALSE(o5.contains(1, 5));
  CHECK_FALSE(o5.contains(2, 5));
  CHECK(o5.contains(3, 5));
  CHECK_THROWS_AS(omega(0), std::invalid_argument);
}

TEST_CASE("off-diagonal extraction") {
  auto algebra = make_algebra(Field::make(3), Partition({1, 1, 1, 1}));
  auto x0 = extract_offdiag(ad_endo(algebra, unit_in(algebra, 2, 3, 1, 1)));
  CHECK(x0 == unit_in(algebra, 2, 3, 1, 1));
  CHECK(extract_offdiag(Endo::zero(algebra)).is_zero());
  CHECK(extract_offdiag(example_map(Field::make(2))).is_zero());
}

TEST_CASE("off-diagonal extraction reads the omega blocks of X for f = ad X") {
  testgen::Rng rng(51);
  for (auto field : testgen::test_fields()) {
    for (auto sizes : std::vector<std::vector<std::size_t>>{{1, 2, 1, 1, 1}, {2, 1, 1, 2}, {1, 1, 1, 1, 1, 1}}) {
      auto algebra = make_algebra(field, Partition(sizes));
      const auto& part = algebra->partition();
      auto x = testgen::block_upper(rng, field, part, false);
      Mat expected(field, part.dimension(), part.dimension());
      for (const auto& [p, q] : omega(part.blocks()).pairs) expected += embed_block(block_of(x, p, q, part), p, q, part);
      CHECK(extract_offdiag(ad_endo(algebra, x)) == expected);
    }
  }
}

TEST_CASE("corner maps") {
  testgen::Rng rng(53);
  // Block (1,2) with two rows: the corner vanishes for every derivation.
  auto algebra = make_algebra(Field::make(5), Partition({2, 1, 1}));
  auto der = derivation_space_bruteforce(algebra);
  for (int trial = 0; trial < 5; ++trial) {
    auto corners = extract_corner_phis(testgen::combination(rng, algebra, der.generators));
    CHECK(corners.phi_12_2t.is_zero());
  }
  // Structural corner generators are extracted back unchanged.
  for (auto field : testgen::test_fields()) {
    auto alg = make_algebra(field, Partition({1, 2, 2, 1}));
    auto gens = structural_generators(alg);
    REQUIRE_FALSE(gens.phi_12_2t.empty());
    REQUIRE_FALSE(gens.phi_t1t_1t1.empty());
    for (const auto& g : gens.phi_12_2t) {
      auto c = extract_corner_phis(g);
      CHECK(c.phi_12_2t == g);
      CHECK(c.phi_t1t_1t1.is_zero());
    }
    for (const auto& g : gens.phi_t1t_1t1) CHECK(extract_corner_phis(g).phi_t1t_1t1 == g);
  }
  auto zero = extract_corner_phis(Endo::zero(algebra));
  CHECK(zero.phi_12_2t.is_zero());
  CHECK(zero.phi_t1t_1t1.is_zero());
}

TEST_CASE("psi extraction") {
  auto f = example_map(Field::make(2));
  auto psis = extract_psis(f);
  CHECK(psis.psi_12_13 == f);
  CHECK(psis.psi_t1_t2.is_zero());
  CHECK_THROWS_AS(extract_psis(Endo::zero(make_algebra(Field::make(3), Partition({1, 1, 1, 1})))),
                  std::invalid_argument);
  // First block row with two rows: psi^{12;13} vanishes.
  testgen::Rng rng(55);
  auto algebra = make_algebra(Field::make(2), Partition({2, 1, 1, 1}));
  auto der = derivation_space_bruteforce(algebra);
  for (int trial = 0; trial < 5; ++trial)
    CHECK(extract_psis(testgen::combination(rng, algebra, der.generators)).psi_12_13.is_zero());
}

TEST_CASE("maps into the center") {
  for (auto sizes : std::vector<std::vector<std::size_t>>{{1, 1, 1, 1}, {2, 1, 1}, {1, 2, 1, 2}}) {
    auto algebra = make_algebra(Field::make(3), Partition(sizes));
    const auto t = sizes.size();
    auto f = ad_endo(algebra, unit_in(algebra, 1, t - 1, 1, 1));
    CHECK(extract_varphi_1t(f) == f);
  }
  auto abelian = make_algebra(Field::make(5), Partition({2, 1}));
  testgen::Rng rng(57);
  Endo any(abelian, testgen::matrix(rng, abelian->field(), 2, 2));
  CHECK(extract_varphi_1t(any) == any);
}

TEST_CASE("diagonal peeling") {
  auto field = Field::make(3);
  auto algebra = make_algebra(field, Partition({1, 1, 1}));
  CHECK(extract_diagonal(Endo::zero(algebra)).is_zero());

  Mat d(field, 3, 3);
  d(0, 0) = field.one();
  auto f2 = ad_endo(algebra, d);
  auto x = extract_diagonal(f2);
  auto adx = ad_endo(algebra, x);
  CHECK(adx == f2);
  CHECK(adx.image(algebra->index_of(1, 2, 1, 1)) == algebra->to_coordinates(algebra->standard_basis_elem(1, 2, 1, 1)));
  CHECK(adx.image(algebra->index_of(1, 3, 1, 1)) == algebra->to_coordinates(algebra->standard_basis_elem(1, 3, 1, 1)));
  CHECK(adx.image(algebra->index_of(2, 3, 1, 1)) == Vec(3, field.zero()));

  testgen::Rng rng(59);
  for (auto fld : testgen::test_fields()) {
    for (auto sizes : std::vector<std::vector<std::size_t>>{{2, 1, 2}, {1, 2, 1, 1}, {2, 2}, {1, 1, 1, 1, 1}}) {
      auto alg = make_algebra(fld, Partition(sizes));
      const auto& part = alg->partition();
      Mat diag(fld, part.dimension(), part.dimension());
      for (std::size_t i = 1; i <= part.blocks(); ++i)
        diag += embed_block(testgen::matrix(rng, fld, part.size(i), part.size(i)), i, i, part);
      auto g = ad_endo(alg, diag);
      auto xd = extract_diagonal(g);
      CHECK(ad_endo(alg, xd) == g);
    }
  }
  // Maps leaving their block are outside the precondition.
  CHECK_THROWS_AS(extract_diagonal(ad_endo(algebra, unit_in(algebra, 1, 2, 1, 1))), std::invalid_argument);
}

TEST_CASE("decomposing the characteristic 2 example") {
  auto f = example_map(Field::make(2));
  auto d = decompose(f);
  CHECK(ad_endo(f.algebra_ptr(), d.x).is_zero());
  CHECK(d.varphi_1t.is_zero());
  CHECK(d.phi_12_2t.is_zero());
  CHECK(d.phi_t1t_1t1.is_zero());
  REQUIRE(d.psi_12_13.has_value());
  CHECK(*d.psi_12_13 == f);
  CHECK(d.psi_t1_t2->is_zero());
  CHECK(synthesize(d) == f);

  try {
    decompose(example_map(Field::make(3)));
    FAIL("expected NotADerivationError");
  } catch (const NotADerivationError& e) {
    CHECK(e.violation().u == 0);
    CHECK(e.violation().v == 1);
  }
}

TEST_CASE("degenerate block counts") {
  auto one = make_algebra(Field::make(2), Partition({3}));
  auto d1 = decompose(Endo::zero(one));
  CHECK(d1.x.is_zero());
  CHECK(d1.x.rows() == 3);

  testgen::Rng rng(61);
  auto two = make_algebra(Field::rationals(), Partition({2, 1}));
  Endo f(two, testgen::matrix(rng, two->field(), 2, 2));
  auto d2 = decompose(f);
  CHECK(d2.x.is_zero());
  CHECK(d2.varphi_1t == f);
  CHECK(d2.phi_12_2t.is_zero());
  CHECK_FALSE(d2.psi_12_13.has_value());

  auto three = make_algebra(Field::make(2), Partition({1, 1, 1}));
  auto der = derivation_space_bruteforce(three);
  for (const auto& g : der.generators) {
    auto d3 = decompose(g);
    CHECK(d3.psi_12_13->is_zero());
    CHECK(d3.psi_t1_t2->is_zero());
  }
}

TEST_CASE("round trip on oracle generators and random derivations") {
  testgen::Rng rng(63);
  for (auto field : testgen::test_fields()) {
    CAPTURE(field.name());
    for (auto sizes : std::vector<std::vector<std::size_t>>{
             {1, 1, 1, 1}, {1, 2, 1}, {2, 1, 1, 2}, {1, 1, 2, 1, 1}, {1, 1, 1, 1, 1, 1}, {3, 1, 2}}) {
      auto algebra = make_algebra(field, Partition(sizes));
      CAPTURE(algebra->partition().to_string());
      auto der = derivation_space_bruteforce(algebra);
      for (const auto& g : der.generators) {
        auto d = decompose(g);
        CHECK(synthesize(d) == g);
        CHECK(all_components_are_derivations(d));
        CHECK(d.psi_12_13.has_value() == (field.characteristic() == 2));
      }
      auto f = testgen::combination(rng, algebra, der.generators);
      CHECK(synthesize(decompose(f)) == f);
      auto adx = ad_endo(algebra, testgen::block_upper(rng, field, algebra->partition(), false));
      CHECK(synthesize(decompose(adx)) == adx);
    }
  }
}

TEST_CASE("gauge: scalar matrices and central X blocks change nothing") {
  testgen::Rng rng(67);
  auto field = Field::make(5);
  auto algebra = make_algebra(field, Partition({1, 2, 1, 1}));
  auto der = derivation_space_bruteforce(algebra);
  auto f = testgen::combination(rng, algebra, der.generators);
  auto shifted = f + ad_endo(algebra, field.from_int(3) * Mat::identity(field, 5));
  auto a = decompose(f), b = decompose(shifted);
  CHECK(a.x == b.x);
  CHECK(a.varphi_1t == b.varphi_1t);
  CHECK(a.phi_12_2t == b.phi_12_2t);
  CHECK(a.phi_t1t_1t1 == b.phi_t1t_1t1);

  auto moved = a;
  moved.x += unit_in(algebra, 1, 4, 1, 1);
  CHECK(synthesize(moved) == synthesize(a));
}

TEST_CASE("synthesis") {
  auto field = Field::make(3);
  auto algebra = make_algebra(field, Partition({1, 1, 1, 1}));
  auto zero = Endo::zero(algebra);
  DerivationDecomposition d{Mat(field, 4, 4), zero, zero, zero, std::nullopt, std::nullopt};
  CHECK(synthesize(d).is_zero());
  d.x = unit_in(algebra, 1, 2, 1, 1);
  CHECK(synthesize(d) == ad_endo(algebra, d.x));

  auto bad = d;
  bad.psi_12_13 = zero;
  bad.psi_t1_t2 = zero;
  CHECK_THROWS_AS(synthesize(bad), std::invalid_argument);
  bad = d;
  bad.varphi_1t = ad_endo(algebra, unit_in(algebra, 1, 2, 1, 1));
  CHECK_THROWS_AS(synthesize(bad), std::invalid_argument);
  bad = d;
  bad.x = unit_in(algebra, 2, 1, 1, 1);
  CHECK_THROWS_AS(synthesize(bad), std::invalid_argument);
}

TEST_CASE("structural generators span Der(N)") {
  auto abelian = make_algebra(Field::make(2), Partition({1, 1}));
  auto s = derivation_space_structural(abelian);
  CHECK(s.dimension() == 1);

  auto heis = make_algebra(Field::make(5), Partition({1, 1, 1}));
  CHECK(derivation_space_structural(heis).dimension() == 6);
  CHECK(spans_equal(derivation_space_structural(heis), derivation_space_bruteforce(heis)));

  auto gf2 = make_algebra(Field::make(2), Partition({1, 1, 1, 1}));
  auto gf3 = make_algebra(Field::make(3), Partition({1, 1, 1, 1}));
  auto s2 = derivation_space_structural(gf2), s3 = derivation_space_structural(gf3);
  CHECK(s2.dimension() == s3.dimension() + 2);
  CHECK(spans_equal(s2, derivation_space_bruteforce(gf2)));
  auto gens = structural_generators(gf2);
  CHECK(gens.psi_12_13.size() == 1);
  CHECK(gens.psi_t1_t2.size() == 1);
  CHECK(structural_generators(gf3).psi_12_13.empty());

  auto trivial = make_algebra(Field::make(3), Partition({2}));
  CHECK(derivation_space_structural(trivial).dimension() == 0);
}

TEST_CASE("varphi class has dimension dim Hom(N/[N,N], Z(N))") {
  for (auto sizes : std::vector<std::vector<std::size_t>>{{1, 1, 1}, {2, 1, 3}, {1, 2, 2, 1}, {2, 1, 1, 1, 1}}) {
    auto algebra = make_algebra(Field::make(3), Partition(sizes));
    const auto t = sizes.size();
    std::size_t top = 0;
    for (std::size_t i = 0; i + 1 < t; ++i) top += sizes[i] * sizes[i + 1];
    auto varphi = structural_generators(algebra).varphi_1t;
    CHECK(varphi.size() == top * sizes.front() * sizes.back());
    CHECK(make_der_basis(algebra, varphi).dimension() == varphi.size());
  }
}
