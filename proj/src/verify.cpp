#include "nilder/verify.hpp"

#include <atomic>
#include <functional>
#include <thread>

namespace nilder {

std::vector<Partition> compositions(std::size_t n) {
  std::vector<Partition> out;
  std::vector<std::size_t> current;
  std::function<void(std::size_t)> extend = [&](std::size_t remaining) {
    if (remaining == 0) {
      out.emplace_back(current);
      return;
    }
    for (std::size_t k = 1; k <= remaining; ++k) {
      current.push_back(k);
      extend(remaining - k);
      current.pop_back();
    }
  };
  if (n > 0) extend(n);
  return out;
}

std::vector<Partition> compositions_up_to(std::size_t max_n) {
  std::vector<Partition> out;
  for (std::size_t n = 1; n <= max_n; ++n) {
    auto c = compositions(n);
    out.insert(out.end(), c.begin(), c.end());
  }
  return out;
}

namespace {

std::string check_roundtrip(const Endo& f) {
  try {
    auto dec = decompose(f);
    std::vector<std::pair<const char*, Endo>> parts{{"ad X", ad_endo(f.algebra_ptr(), dec.x)},
                                                    {"varphi_1t", dec.varphi_1t},
                                                    {"phi_12_2t", dec.phi_12_2t},
                                                    {"phi_t1t_1t1", dec.phi_t1t_1t1}};
    if (dec.psi_12_13) parts.emplace_back("psi_12_13", *dec.psi_12_13);
    if (dec.psi_t1_t2) parts.emplace_back("psi_t1_t2", *dec.psi_t1_t2);
    for (const auto& [name, g] : parts)
      if (!is_derivation(g)) return std::string(name) + " is not a derivation";
    if (!(synthesize(dec) == f)) return "synthesis differs from the generator";
    if (f.algebra().field().characteristic() != 2 && (dec.psi_12_13 || dec.psi_t1_t2))
      return "psi components outside characteristic 2";
  } catch (const std::exception& e) {
    return e.what();
  }
  return {};
}

}  // namespace

CaseResult verify_case(const Partition& partition, Field field) {
  CaseResult r(partition, field);
  auto algebra = make_algebra(field, partition);
  const std::size_t t = partition.blocks();
  r.dim_n = algebra->dimension();

  auto oracle = derivation_space_bruteforce(algebra);
  auto generators = structural_generators(algebra);
  auto structural = make_der_basis(algebra, generators.all());
  r.dim_oracle = oracle.dimension();
  r.dim_structural = structural.dimension();
  r.span_equal = spans_equal(oracle, structural);

  r.counts = {generators.ad.size(),          generators.varphi_1t.size(), generators.phi_12_2t.size(),
              generators.phi_t1t_1t1.size(), generators.psi_12_13.size(), generators.psi_t1_t2.size()};
  if (t >= 3) {
    std::size_t top = 0;
    for (std::size_t i = 1; i < t; ++i) top += partition.size(i) * partition.size(i + 1);
    r.varphi_expected = top * partition.size(1) * partition.size(t);
  }

  for (std::size_t g = 0; g < oracle.generators.size(); ++g) {
    ++r.roundtrips;
    auto failure = check_roundtrip(oracle.generators[g]);
    if (!failure.empty()) r.roundtrip_failures.push_back("generator " + std::to_string(g) + ": " + failure);
  }

  auto support = check_support_lemmas(oracle);
  r.support_checks = support.checks;
  r.corner_zero_checks = support.corner_zero_checks;
  for (const auto& v : support.violations) {
    r.support_failures.push_back("generator " + std::to_string(v.generator) + ": " + v.rule + " N^{" +
                                 std::to_string(v.source_i) + "," + std::to_string(v.source_j) + "} -> (" +
                                 std::to_string(v.target_i) + "," + std::to_string(v.target_j) + ")");
  }
  return r;
}

std::size_t VerifyReport::failures() const {
  std::size_t n = 0;
  for (const auto& c : cases)
    if (!c.passed()) ++n;
  return n;
}

VerifyReport run_verify(const VerifyConfig& config) {
  if (config.max_n == 0 && config.partitions.empty()) throw std::invalid_argument("max_n must be at least 1");
  std::vector<Field> fields;
  for (auto c : config.fields) fields.push_back(Field::make(c));
  auto partitions = config.partitions.empty() ? compositions_up_to(config.max_n) : config.partitions;

  std::vector<std::pair<Partition, Field>> jobs;
  for (const auto& p : partitions)
    for (auto f : fields) jobs.emplace_back(p, f);

  std::vector<std::optional<CaseResult>> results(jobs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < jobs.size(); k = next++) results[k] = verify_case(jobs[k].first, jobs[k].second);
  };
  unsigned threads = config.threads ? config.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(jobs.size(), 1)));
  std::vector<std::jthread> pool;
  for (unsigned i = 1; i < threads; ++i) pool.emplace_back(worker);
  worker();
  pool.clear();

  VerifyReport report;
  for (auto& r : results) report.cases.push_back(std::move(*r));
  return report;
}

Json to_json(const CaseResult& r) {
  Json counts = {{"ad", r.counts.ad},
                 {"varphi_1t", r.counts.varphi_1t},
                 {"phi_12_2t", r.counts.phi_12_2t},
                 {"phi_t1t_1t1", r.counts.phi_t1t_1t1},
                 {"psi_12_13", r.counts.psi_12_13},
                 {"psi_t1_t2", r.counts.psi_t1_t2}};
  return {{"partition", r.partition.sizes()},
          {"field", r.field.characteristic()},
          {"status", r.passed() ? "PASS" : "FAIL"},
          {"dim_n", r.dim_n},
          {"dim_der_oracle", r.dim_oracle},
          {"dim_der_structural", r.dim_structural},
          {"span_equal", r.span_equal},
          {"roundtrips", r.roundtrips},
          {"roundtrip_failures", r.roundtrip_failures},
          {"support_checks", r.support_checks},
          {"corner_zero_checks", r.corner_zero_checks},
          {"support_failures", r.support_failures},
          {"generator_counts", counts},
          {"varphi_1t_expected", r.varphi_expected ? Json(*r.varphi_expected) : Json(nullptr)}};
}

Json to_json(const VerifyReport& report) {
  Json cases = Json::array();
  for (const auto& c : report.cases) cases.push_back(to_json(c));
  return {{"cases", std::move(cases)},
          {"total", report.cases.size()},
          {"failures", report.failures()},
          {"status", report.passed() ? "PASS" : "FAIL"}};
}

}  // namespace nilder
