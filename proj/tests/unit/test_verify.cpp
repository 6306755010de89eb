#include <doctest.h>

#include "nilder/verify.hpp"

using namespace nilder;

TEST_CASE("compositions") {
  CHECK(compositions(0).empty());
  for (std::size_t n = 1; n <= 7; ++n) CHECK(compositions(n).size() == (std::size_t{1} << (n - 1)));
  auto c3 = compositions(3);
  CHECK(c3.front() == Partition({1, 1, 1}));
  CHECK(c3.back() == Partition({3}));
  CHECK(compositions_up_to(6).size() == 63);
}

TEST_CASE("single cases") {
  auto r = verify_case(Partition({1, 1, 1, 1}), Field::make(2));
  CHECK(r.passed());
  CHECK(r.dim_n == 6);
  CHECK(r.dim_oracle == 13);
  CHECK(r.dim_structural == 13);
  CHECK(r.roundtrips == 13);
  CHECK(r.counts.psi_12_13 == 1);
  CHECK(r.counts.psi_t1_t2 == 1);
  REQUIRE(r.varphi_expected.has_value());
  CHECK(*r.varphi_expected == 3);

  auto two = verify_case(Partition({2, 1}), Field::rationals());
  CHECK(two.passed());
  CHECK_FALSE(two.varphi_expected.has_value());
}

TEST_CASE("small sweep passes and reports deterministically") {
  VerifyConfig config;
  config.max_n = 4;
  config.fields = {2, 3, 0};
  config.threads = 3;
  auto report = run_verify(config);
  CHECK(report.cases.size() == 15 * 3);
  CHECK(report.passed());
  config.threads = 1;
  CHECK(to_json(run_verify(config)) == to_json(report));

  auto j = to_json(report);
  CHECK(j["status"] == "PASS");
  CHECK(j["cases"][0]["partition"] == Json::array({1}));
}

TEST_CASE("invalid configurations") {
  VerifyConfig config;
  config.fields = {4};
  CHECK_THROWS_AS(run_verify(config), FieldError);
  config.fields = {2};
  config.max_n = 0;
  CHECK_THROWS_AS(run_verify(config), std::invalid_argument);
}
