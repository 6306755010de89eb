#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "nilder/decomposition.hpp"
#include "nilder/serialization.hpp"
#include "nilder/verify.hpp"

namespace {

using namespace nilder;

constexpr int kOk = 0;
constexpr int kUsage = 1;
constexpr int kNotDerivation = 2;
constexpr int kVerifyFailed = 3;

std::string basis_name(const NilAlgebra& alg, std::size_t k) {
  const auto& l = alg.label(k);
  bool scalar_blocks = alg.blocks() < 10;
  for (auto s : alg.partition().sizes()) scalar_blocks = scalar_blocks && s == 1;
  if (scalar_blocks) return "E" + std::to_string(l.i) + std::to_string(l.j);
  return "E^{" + std::to_string(l.i) + "," + std::to_string(l.j) + "}_{" + std::to_string(l.p) + "," +
         std::to_string(l.q) + "}";
}

std::string element_string(const NilAlgebra& alg, const Vec& coords) {
  std::string out;
  for (std::size_t k = 0; k < coords.size(); ++k) {
    if (coords[k].is_zero()) continue;
    if (!out.empty()) out += " + ";
    if (!coords[k].is_one()) out += coords[k].to_string() + "*";
    out += basis_name(alg, k);
  }
  return out.empty() ? "0" : out;
}

void print_endo(std::ostream& os, const std::string& title, const Endo& f) {
  os << title << ":";
  if (f.is_zero()) {
    os << " 0\n";
    return;
  }
  os << "\n";
  for (std::size_t k = 0; k < f.dimension(); ++k) {
    auto img = f.image(k);
    bool nonzero = false;
    for (const auto& x : img) nonzero = nonzero || !x.is_zero();
    if (nonzero) os << "  " << basis_name(f.algebra(), k) << " -> " << element_string(f.algebra(), img) << "\n";
  }
}

void print_decomposition(std::ostream& os, const DerivationDecomposition& d) {
  os << "X:\n" << d.x.to_string() << "\n";
  print_endo(os, "varphi_1t", d.varphi_1t);
  print_endo(os, "phi_12_2t", d.phi_12_2t);
  print_endo(os, "phi_t1t_1t1", d.phi_t1t_1t1);
  if (d.psi_12_13) print_endo(os, "psi_12_13", *d.psi_12_13);
  if (d.psi_t1_t2) print_endo(os, "psi_t1_t2", *d.psi_t1_t2);
}

void report_violation(const NilAlgebra& alg, const LeibnizViolation& v) {
  std::cerr << "not a derivation: Leibniz rule fails on (" << basis_name(alg, v.u) << ", " << basis_name(alg, v.v)
            << "), f([u,v]) - [f(u),v] - [u,f(v)] = " << element_string(alg, v.defect) << "\n";
}

int cmd_dim(std::int64_t characteristic, const std::vector<std::size_t>& sizes) {
  auto algebra = make_algebra(Field::make(characteristic), Partition(sizes));
  auto oracle = derivation_space_bruteforce(algebra);
  auto structural = derivation_space_structural(algebra);
  const bool ok = spans_equal(oracle, structural);
  std::cout << "field: " << algebra->field().name() << "\n"
            << "partition: " << algebra->partition().to_string() << "\n"
            << "dim N = " << algebra->dimension() << "\n"
            << "dim Der(N) (oracle) = " << oracle.dimension() << "\n"
            << "dim Der(N) (structural) = " << structural.dimension() << "\n"
            << (ok ? "PASS" : "FAIL") << "\n";
  return ok ? kOk : kVerifyFailed;
}

int cmd_decompose(const std::string& input, const std::string& output) {
  std::optional<Endo> f;
  try {
    std::ifstream in(input);
    if (!in) throw FormatError("cannot open " + input);
    f = endo_from_json(Json::parse(in));
  } catch (const Json::exception& e) {
    std::cerr << "malformed input: " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "malformed input: " << e.what() << "\n";
    return kUsage;
  }

  DerivationDecomposition dec = [&] {
    try {
      return decompose(*f);
    } catch (const NotADerivationError& e) {
      report_violation(f->algebra(), e.violation());
      throw;
    }
  }();
  auto text = to_json(dec).dump(2);
  if (output.empty()) {
    std::cout << text << "\n";
  } else {
    std::ofstream out(output);
    out << text << "\n";
    if (!out) {
      std::cerr << "cannot write " << output << "\n";
      return kUsage;
    }
  }
  const bool ok = synthesize(dec) == *f;
  std::cerr << "residual: " << (ok ? "zero" : "NONZERO") << "\n";
  return ok ? kOk : kVerifyFailed;
}

int cmd_example41(std::int64_t characteristic) {
  auto algebra = make_algebra(Field::make(characteristic), Partition({1, 1, 1, 1}));
  const auto& alg = *algebra;
  const Field field = alg.field();
  auto e = [&](std::size_t i, std::size_t j) { return alg.index_of(i, j, 1, 1); };

  Mat m(field, alg.dimension(), alg.dimension());
  m(e(3, 4), e(1, 2)) = -field.one();
  m(e(2, 4), e(1, 3)) = field.one();
  Endo f(algebra, m);

  std::cout << "N: strictly upper triangular 4x4 matrices over " << field.name() << "\n";
  print_endo(std::cout, "f", f);

  auto check_pair = [&](std::size_t u, std::size_t v) {
    Mat eu = alg.basis_matrix(u), ev = alg.basis_matrix(v);
    auto lhs = alg.to_coordinates(f.apply(bracket(eu, ev)));
    auto rhs = alg.to_coordinates(bracket(f.apply(eu), ev) + bracket(eu, f.apply(ev)));
    std::cout << "  f([" << basis_name(alg, u) << "," << basis_name(alg, v) << "]) = " << element_string(alg, lhs)
              << ", [f(" << basis_name(alg, u) << ")," << basis_name(alg, v) << "] + [" << basis_name(alg, u)
              << ",f(" << basis_name(alg, v) << ")] = " << element_string(alg, rhs) << "\n";
  };
  std::cout << "bracket cases:\n";
  check_pair(e(1, 2), e(2, 3));
  check_pair(e(1, 2), e(1, 3));

  if (auto violation = find_leibniz_violation(f)) {
    std::cout << "f is NOT a derivation over " << field.name() << "\n";
    report_violation(alg, *violation);
    return kNotDerivation;
  }
  std::cout << "f is a derivation over " << field.name() << "\n";
  auto dec = decompose(f);
  print_decomposition(std::cout, dec);
  const bool ok = synthesize(dec) == f;
  std::cout << "re-synthesis: " << (ok ? "equal" : "DIFFERENT") << "\n" << (ok ? "PASS" : "FAIL") << "\n";
  return ok ? kOk : kVerifyFailed;
}

int cmd_verify(VerifyConfig config, const std::string& report_path) {
  auto report = run_verify(config);
  for (const auto& c : report.cases) {
    std::cout << (c.passed() ? "PASS" : "FAIL") << "  " << c.field.name() << "  (" << c.partition.to_string()
              << ")  dim N = " << c.dim_n << ", dim Der = " << c.dim_oracle << "\n";
    for (const auto& msg : c.roundtrip_failures) std::cout << "    roundtrip: " << msg << "\n";
    for (const auto& msg : c.support_failures) std::cout << "    support: " << msg << "\n";
    if (!c.span_equal) std::cout << "    structural span differs (dim " << c.dim_structural << ")\n";
    if (!c.varphi_count_ok()) std::cout << "    varphi_1t generator count " << c.counts.varphi_1t << "\n";
  }
  std::cout << report.cases.size() - report.failures() << "/" << report.cases.size() << " cases passed\n";
  if (!report_path.empty()) {
    std::ofstream out(report_path);
    out << to_json(report).dump(2) << "\n";
    if (!out) {
      std::cerr << "cannot write " << report_path << "\n";
      return kUsage;
    }
  }
  return report.passed() ? kOk : kVerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Derivations of strictly block upper triangular matrix Lie algebras"};
  app.require_subcommand(1);

  std::int64_t field = 2;
  std::vector<std::size_t> sizes;
  std::string input, output, report;
  VerifyConfig config;

  auto* dim = app.add_subcommand("dim", "dim N and dim Der(N) by the oracle and by the structural generators");
  dim->add_option("--field", field, "characteristic: a prime, or 0 for the rationals")->required();
  dim->add_option("--partition", sizes, "block sizes n1,n2,...")->required()->delimiter(',');

  auto* dec = app.add_subcommand("decompose", "decompose a derivation read from a JSON file");
  dec->add_option("--input", input, "Endo JSON file")->required();
  dec->add_option("--output", output, "write the decomposition here instead of stdout");

  auto* ex = app.add_subcommand("example41", "walk through the characteristic 2 counterexample on 4x4 matrices");
  ex->add_option("--field", field, "characteristic")->capture_default_str();

  std::vector<std::int64_t> fields = config.fields;
  auto* ver = app.add_subcommand("verify", "sweep compositions and fields, checking every property");
  ver->add_option("--max-n", config.max_n, "largest matrix size")->capture_default_str()->check(CLI::PositiveNumber);
  ver->add_option("--fields", fields, "characteristics c1,c2,...")->delimiter(',');
  ver->add_option("--partition", sizes, "verify a single partition instead of all compositions")->delimiter(',');
  ver->add_option("--report", report, "JSON report path");
  ver->add_option("--threads", config.threads, "worker threads (0 = all cores)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*dim) return cmd_dim(field, sizes);
    if (*dec) return cmd_decompose(input, output);
    if (*ex) return cmd_example41(field);
    config.fields = fields;
    if (!sizes.empty()) config.partitions.emplace_back(sizes);
    return cmd_verify(config, report);
  } catch (const NotADerivationError&) {
    return kNotDerivation;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kVerifyFailed;
  }
}
