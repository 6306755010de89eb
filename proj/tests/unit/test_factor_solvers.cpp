#include <doctest.h>

#include "solver_witness.hpp"

using namespace nilder;
using testgen::uniform;

namespace {

// A hypothesis violation names a unit pair inside the two factor shapes.
void check_pair_in_range(const HypothesisViolation& e, Shape first, Shape second) {
  CHECK(e.first_row() >= 1);
  CHECK(e.first_row() <= first.rows);
  CHECK(e.first_col() >= 1);
  CHECK(e.first_col() <= first.cols);
  CHECK(e.second_row() >= 1);
  CHECK(e.second_row() <= second.rows);
  CHECK(e.second_col() >= 1);
  CHECK(e.second_col() <= second.cols);
}

}  // namespace

TEST_CASE("block maps act on units in row-major order") {
  auto f = Field::make(5);
  Mat x(f, 2, 2);
  x(0, 1) = f.one();
  auto map = testgen::right_mult(f, {1, 2}, x);
  // E_{11} X = first row of X.
  CHECK(map.unit_image(1, 1) == unit_matrix(f, 1, 2, 1, 2));
  CHECK(map.unit_image(1, 2).is_zero());
  CHECK(map.action()(1, 0) == f.one());
  CHECK_THROWS_AS(BlockLinMap({1, 2}, {1, 2}, Mat(f, 3, 2)), std::invalid_argument);
  CHECK_THROWS_AS(map(Mat(f, 2, 2)), std::invalid_argument);
}

TEST_CASE("1x1 sandwich with scalar maps") {
  // f = (a+b)·, g = a·, h = b· satisfy f(AB) = g(A)B + Ah(B).
  auto q = Field::rationals();
  auto a = q.from_fraction(3, 2), b = q.from_int(-5);
  auto scale = [&](Scalar s) {
    Mat action(q, 1, 1);
    action(0, 0) = s;
    return BlockLinMap({1, 1}, {1, 1}, action);
  };
  auto sol = solve_sandwich(scale(a + b), scale(a), scale(b));
  CHECK(sol.x(0, 0).is_zero());
  CHECK(sol.y(0, 0) == a + b);
  CHECK(sol.z(0, 0) == a);
}

TEST_CASE("right factor recovered from a 2x2 example") {
  auto f = Field::make(3);
  Mat x(f, 2, 2);
  x(0, 0) = f.one();
  x(1, 0) = f.from_int(2);
  auto phi = testgen::right_mult(f, {1, 2}, x);
  auto varphi = testgen::right_mult(f, {3, 2}, x);
  CHECK(solve_right_factor(phi, varphi) == x);
}

TEST_CASE("solvers recover the factors of witness-built maps") {
  testgen::Rng rng(31);
  for (auto field : testgen::test_fields()) {
    CAPTURE(field.name());
    for (int trial = 0; trial < 25; ++trial) {
      auto m = uniform(rng, 1, 4), n = uniform(rng, 1, 4), p = uniform(rng, 1, 4), q = uniform(rng, 1, 4);
      auto rc = testgen::right_case(rng, field, m, n, p, q);
      CHECK(solve_right_factor(rc.phi, rc.varphi) == rc.x);
      auto lc = testgen::left_case(rng, field, m, n, p, q);
      CHECK(solve_left_factor(lc.phi, lc.varphi) == lc.x);
      auto bc = testgen::balanced_case(rng, field, m, n, p, q);
      CHECK(solve_balanced(bc.phi, bc.varphi) == bc.x);

      auto sc = testgen::sandwich_case(rng, field, p, q, n);
      auto sol = solve_sandwich(sc.f, sc.g, sc.h);
      CHECK(testgen::same_map(testgen::two_sided(field, {p, n}, sol.x, sol.y), sc.f));
      CHECK(testgen::same_map(testgen::two_sided(field, {p, q}, sol.x, sol.z), sc.g));
      CHECK(testgen::same_map(testgen::two_sided(field, {q, n}, -sol.z, sol.y), sc.h));
      CHECK(sol.x(0, 0).is_zero());
    }
  }
}

TEST_CASE("sandwich solutions differ from the witness by a scalar gauge") {
  testgen::Rng rng(37);
  for (auto field : testgen::test_fields()) {
    for (int trial = 0; trial < 10; ++trial) {
      auto p = uniform(rng, 1, 3), q = uniform(rng, 1, 3), r = uniform(rng, 1, 3);
      auto sc = testgen::sandwich_case(rng, field, p, q, r);
      auto sol = solve_sandwich(sc.f, sc.g, sc.h);
      auto lambda = sc.x(0, 0);
      CHECK(sol.x == sc.x - lambda * Mat::identity(field, p));
      CHECK(sol.y == sc.y + lambda * Mat::identity(field, r));
      CHECK(sol.z == sc.z + lambda * Mat::identity(field, q));
    }
  }
}

TEST_CASE("perturbed maps are rejected with a named unit pair") {
  testgen::Rng rng(41);
  for (auto field : testgen::test_fields()) {
    CAPTURE(field.name());
    for (int trial = 0; trial < 20; ++trial) {
      auto m = uniform(rng, 1, 4), n = uniform(rng, 1, 4), p = uniform(rng, 1, 4), q = uniform(rng, 1, 4);
      bool first = uniform(rng, 0, 1) == 0;

      auto rc = testgen::right_case(rng, field, m, n, p, q);
      try {
        solve_right_factor(first ? testgen::perturb(rng, rc.phi) : rc.phi,
                           first ? rc.varphi : testgen::perturb(rng, rc.varphi));
        FAIL("right factor accepted a perturbed map");
      } catch (const HypothesisViolation& e) {
        check_pair_in_range(e, {m, n}, {n, p});
      }

      auto lc = testgen::left_case(rng, field, m, n, p, q);
      try {
        solve_left_factor(first ? testgen::perturb(rng, lc.phi) : lc.phi,
                          first ? lc.varphi : testgen::perturb(rng, lc.varphi));
        FAIL("left factor accepted a perturbed map");
      } catch (const HypothesisViolation& e) {
        check_pair_in_range(e, {m, q}, {q, p});
      }

      auto bc = testgen::balanced_case(rng, field, m, n, p, q);
      try {
        solve_balanced(first ? testgen::perturb(rng, bc.phi) : bc.phi,
                       first ? bc.varphi : testgen::perturb(rng, bc.varphi));
        FAIL("balanced solver accepted a perturbed map");
      } catch (const HypothesisViolation& e) {
        check_pair_in_range(e, {m, p}, {q, n});
      }

      auto sc = testgen::sandwich_case(rng, field, p, q, n);
      auto which = uniform(rng, 0, 2);
      try {
        solve_sandwich(which == 0 ? testgen::perturb(rng, sc.f) : sc.f,
                       which == 1 ? testgen::perturb(rng, sc.g) : sc.g,
                       which == 2 ? testgen::perturb(rng, sc.h) : sc.h);
        FAIL("sandwich solver accepted a perturbed map");
      } catch (const HypothesisViolation& e) {
        check_pair_in_range(e, {p, q}, {q, n});
      }
    }
  }
}

TEST_CASE("shape mismatches are usage errors, not hypothesis violations") {
  auto f = Field::make(2);
  auto phi = testgen::right_mult(f, {2, 2}, Mat(f, 2, 3));
  auto varphi = testgen::right_mult(f, {1, 3}, Mat(f, 3, 3));
  try {
    solve_right_factor(phi, varphi);
    FAIL("expected a shape error");
  } catch (const HypothesisViolation&) {
    FAIL("shape mismatch reported as a hypothesis violation");
  } catch (const std::invalid_argument&) {
  }
}
