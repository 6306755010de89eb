#include <doctest.h>

#include <limits>

#include "generators.hpp"
#include "nilder/field.hpp"

using namespace nilder;

TEST_CASE("field construction") {
  CHECK(Field::make(2).characteristic() == 2);
  CHECK(Field::make(0).is_rational());
  CHECK(Field::make(5).name() == "GF(5)");
  CHECK(Field::rationals().name() == "Q");
  CHECK(Field::make(2147483647).characteristic() == 2147483647u);

  CHECK_THROWS_AS(Field::make(4), FieldError);
  CHECK_THROWS_AS(Field::make(1), FieldError);
  CHECK_THROWS_AS(Field::make(-3), FieldError);
  CHECK_THROWS_AS(Field::make(4294967311LL), FieldError);
}

TEST_CASE("GF(5) arithmetic") {
  auto f = Field::make(5);
  CHECK(f.from_int(3).inverse() == f.from_int(2));
  CHECK(f.from_int(-1) == f.from_int(4));
  CHECK((f.from_int(4) * f.from_int(4)).to_string() == "1");
  CHECK(f.parse("7") == f.from_int(2));
  CHECK(f.parse("1/2") == f.from_int(3));
  CHECK_THROWS_AS(f.zero().inverse(), std::domain_error);
  CHECK_THROWS_AS(f.parse("1/5"), std::domain_error);
}

TEST_CASE("rational arithmetic") {
  auto q = Field::rationals();
  auto half = q.from_fraction(1, 2);
  auto third = q.from_fraction(1, 3);
  CHECK((half + third).to_string() == "5/6");
  CHECK((half - half).is_zero());
  CHECK(q.from_fraction(4, -6).to_string() == "-2/3");
  CHECK(q.parse("-2/7").numerator() == -2);
  CHECK(q.parse("-2/7").denominator() == 7);
  CHECK(q.parse("12").to_string() == "12");
  CHECK_THROWS_AS(q.parse("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(q.parse("x"), std::invalid_argument);
  CHECK_THROWS_AS(q.parse(""), std::invalid_argument);
}

TEST_CASE("rational overflow is reported, not wrapped") {
  auto q = Field::rationals();
  auto big = q.from_int(std::numeric_limits<std::int64_t>::max() / 2);
  CHECK_THROWS_AS(big * big, std::overflow_error);
  CHECK_THROWS_AS(big.pow(3), std::overflow_error);
}

TEST_CASE("elements of different fields do not mix") {
  CHECK_THROWS_AS(Field::make(2).one() + Field::make(3).one(), std::invalid_argument);
  CHECK_THROWS_AS(Field::make(3).one() * Field::rationals().one(), std::invalid_argument);
}

TEST_CASE("field axioms on random elements") {
  testgen::Rng rng(11);
  for (auto field : testgen::test_fields()) {
    CAPTURE(field.name());
    for (int trial = 0; trial < 300; ++trial) {
      auto a = testgen::scalar(rng, field);
      auto b = testgen::scalar(rng, field);
      auto c = testgen::scalar(rng, field);
      CHECK(a + b == b + a);
      CHECK(a * b == b * a);
      CHECK((a + b) + c == a + (b + c));
      CHECK((a * b) * c == a * (b * c));
      CHECK(a * (b + c) == a * b + a * c);
      CHECK(a + field.zero() == a);
      CHECK(a * field.one() == a);
      CHECK((a + (-a)).is_zero());
      CHECK(a - b == a + (-b));
      if (!a.is_zero()) {
        CHECK(a * a.inverse() == field.one());
        CHECK((b / a) * a == b);
      }
      CHECK(field.parse(a.to_string()) == a);
    }
  }
}

TEST_CASE("Fermat: a^(p-1) = 1 for nonzero a in GF(p)") {
  for (std::int64_t p : {2, 3, 5, 7, 65521}) {
    auto field = Field::make(p);
    for (std::int64_t a = 1; a < std::min<std::int64_t>(p, 200); ++a) {
      CHECK(field.from_int(a).pow(static_cast<std::uint64_t>(p - 1)) == field.one());
    }
  }
}

TEST_CASE("pow does not overflow past the last needed square") {
  auto q = Field::rationals();
  auto big = q.from_int(std::int64_t{1} << 40);
  CHECK(big.pow(1) == big);
  CHECK(big.pow(0) == q.one());
  CHECK(q.from_fraction(-1, 2).pow(5) == q.from_fraction(-1, 32));
}
