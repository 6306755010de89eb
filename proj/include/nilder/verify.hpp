#ifndef NILDER_VERIFY_HPP
#define NILDER_VERIFY_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nilder/decomposition.hpp"
#include "nilder/serialization.hpp"

namespace nilder {

/// All ordered tuples of positive integers summing to n, in lexicographic order.
std::vector<Partition> compositions(std::size_t n);
/// compositions(1), ..., compositions(max_n) concatenated.
std::vector<Partition> compositions_up_to(std::size_t max_n);

struct VerifyConfig {
  std::size_t max_n = 6;
  std::vector<std::int64_t> fields{2, 3, 5, 0};
  /// Explicit partitions; when empty every composition of n <= max_n is used.
  std::vector<Partition> partitions;
  /// 0 picks the hardware concurrency.
  unsigned threads = 0;
};

struct ClassCounts {
  std::size_t ad = 0;
  std::size_t varphi_1t = 0;
  std::size_t phi_12_2t = 0;
  std::size_t phi_t1t_1t1 = 0;
  std::size_t psi_12_13 = 0;
  std::size_t psi_t1_t2 = 0;
};

struct CaseResult {
  CaseResult(Partition p, Field f) : partition(std::move(p)), field(f) {}

  Partition partition;
  Field field;
  std::size_t dim_n = 0;
  std::size_t dim_oracle = 0;
  std::size_t dim_structural = 0;
  bool span_equal = false;

  std::size_t roundtrips = 0;
  std::vector<std::string> roundtrip_failures;

  std::size_t support_checks = 0;
  std::size_t corner_zero_checks = 0;
  std::vector<std::string> support_failures;

  ClassCounts counts;
  /// (Σ n_i n_{i+1}) · n_1 n_t, meaningful for t >= 3.
  std::optional<std::size_t> varphi_expected;

  bool varphi_count_ok() const { return !varphi_expected || *varphi_expected == counts.varphi_1t; }
  bool passed() const {
    return span_equal && roundtrip_failures.empty() && support_failures.empty() && varphi_count_ok();
  }
};

struct VerifyReport {
  std::vector<CaseResult> cases;

  std::size_t failures() const;
  bool passed() const { return failures() == 0; }
};

CaseResult verify_case(const Partition& partition, Field field);
/// Cases are processed by a pool of workers; the report keeps the (partition, field) order.
VerifyReport run_verify(const VerifyConfig& config);

Json to_json(const CaseResult& result);
Json to_json(const VerifyReport& report);

}  // namespace nilder

#endif  // NILDER_VERIFY_HPP
