#include "cli.hpp"

#include <cstdint>
#include <iostream>
#include <string>
#include <variant>
#include <vector>

#include <CLI11.hpp>

#include "monobox/consistency.hpp"
#include "monobox/exact_oracle.hpp"
#include "monobox/generators.hpp"
#include "monobox/io.hpp"
#include "monobox/pipelines.hpp"
#include "monobox/selftest.hpp"

namespace monobox {
namespace {

constexpr int kFound = 0;
constexpr int kNotFound = 1;
constexpr int kInvalid = 2;
constexpr int kBudget = 3;

struct GenArgs {
  std::string kind;
  int d = 2;
  int side = 3;
  int colours = 2;
  std::uint64_t seed = 0;
  std::string out;
};

struct SearchArgs {
  std::string kind;
  int n = 2;
  std::string strategy = "pipeline";
  std::uint64_t seed = 0;
  bool seed_given = false;
  std::uint64_t budget = 50'000'000;
  std::string in;
  std::string cert_out;
  std::string trace_out;
};

struct VerifyArgs {
  std::string in;
  std::string cert;
};

struct NumberArgs {
  std::string family;
  int d = 1;
  int n = 2;
  int colours = 2;
  int max_side = 6;
  std::uint64_t budget = 200'000'000;
  std::string witness_out;
};

int run_gen(const GenArgs& a) {
  std::variant<BoxColouring, NumericArray> instance =
      a.kind == "colouring"
          ? std::variant<BoxColouring, NumericArray>(
                gen_random_colouring(a.d, a.side, a.colours, Seed{a.seed}))
          : std::variant<BoxColouring, NumericArray>(gen_random_array(
                std::vector<int>(static_cast<std::size_t>(a.d), a.side), Seed{a.seed}));
  const InstanceFile file{std::move(instance), Seed{a.seed}};
  write_instance(a.out, file);
  std::cout << a.out << "\n";
  return kFound;
}

// Emits the certificate (when a path was given) and reports one result
// line; centralizes the found/not-found/budget exit logic.
class SearchReporter {
 public:
  SearchReporter(const InstanceFile& file, const SearchArgs& args)
      : digest_(instance_digest(file)), args_(args) {}

  template <class Cert>
  int found(const Cert& cert) const {
    if (!args_.cert_out.empty()) {
      write_certificate(args_.cert_out, CertificateFile{digest_, cert});
      std::cout << args_.cert_out << "\n";
    } else {
      std::cout << "found\n";
    }
    return kFound;
  }

  int missed(const std::string& stage, bool budget_exhausted, bool guarantee_void) const {
    if (budget_exhausted) {
      std::cerr << "budget exhausted at stage " << stage << "\n";
      return kBudget;
    }
    std::cerr << "not found; deepest stage " << stage
              << (guarantee_void ? " (completeness guarantee void at this size)" : "") << "\n";
    return kNotFound;
  }

 private:
  std::uint64_t digest_;
  const SearchArgs& args_;
};

int run_search(const SearchArgs& a) {
  const InstanceFile file = read_instance(a.in);
  const auto* col = std::get_if<BoxColouring>(&file.instance);
  const auto* arr = std::get_if<NumericArray>(&file.instance);
  const SearchReporter report(file, a);

  // sampling happens only in the extraction stage, which only a
  // d >= 2, n >= 2 pipeline run can reach
  const int dims = col != nullptr ? col->dims() : arr->dims();
  const bool randomized =
      a.strategy == "pipeline" && dims >= 2 && a.n >= 2 &&
      (a.kind == "mono-box" || a.kind == "monotone");
  if (randomized && !a.seed_given) {
    std::cerr << "--seed is required for a sampling search\n";
    return kInvalid;
  }

  if (a.kind == "mono-box") {
    if (col == nullptr) {
      std::cerr << "mono-box needs a colouring instance\n";
      return kInvalid;
    }
    if (a.strategy == "exact") {
      auto dec = decide_R_instance(*col, a.n, a.budget);
      if (dec.certificate) return report.found(*dec.certificate);
      return report.missed("exact-scan", dec.indeterminate, false);
    }
    MonoBoxSearch out;
    if (a.strategy == "pipeline2d") {
      out = find_mono_box_2d(*col, a.n);
    } else {
      PipelineParams p = make_colouring_pipeline_params(col->dims(), col->colours(), a.n);
      p.seed = Seed{a.seed};
      p.budget = a.budget;
      out = find_mono_box(*col, a.n, p);
    }
    if (!a.trace_out.empty()) write_text_file(a.trace_out, trace_to_json(out.trace));
    if (out.certificate) return report.found(*out.certificate);
    return report.missed(out.stage, out.budget_exhausted, out.guarantee_void);
  }

  if (a.kind == "monotone") {
    if (arr == nullptr) {
      std::cerr << "monotone needs an array instance\n";
      return kInvalid;
    }
    if (a.strategy == "pipeline2d") {
      std::cerr << "strategy pipeline2d applies to mono-box only\n";
      return kInvalid;
    }
    if (a.strategy == "exact") {
      auto dec = decide_M_instance(*arr, a.n, a.budget);
      if (dec.certificate) return report.found(*dec.certificate);
      return report.missed("exact-scan", dec.indeterminate, false);
    }
    PipelineParams p = make_array_pipeline_params(arr->dims(), a.n);
    p.seed = Seed{a.seed};
    p.budget = a.budget;
    MonotoneSearch out = find_monotone_subarray(*arr, a.n, p);
    if (!a.trace_out.empty()) write_text_file(a.trace_out, trace_to_json(out.trace));
    if (out.certificate) return report.found(*out.certificate);
    return report.missed(out.stage, out.budget_exhausted, out.guarantee_void);
  }

  if (a.kind == "lex-monotone") {
    if (arr == nullptr) {
      std::cerr << "lex-monotone needs an array instance\n";
      return kInvalid;
    }
    if (a.strategy == "pipeline2d") {
      std::cerr << "strategy pipeline2d applies to mono-box only\n";
      return kInvalid;
    }
    if (a.strategy == "exact") {
      auto dec = decide_L_instance(*arr, a.n, a.budget);
      if (dec.certificate) return report.found(*dec.certificate);
      return report.missed("exact-scan", dec.indeterminate, false);
    }
    auto cert = find_lex_monotone(*arr, a.n);
    if (cert) return report.found(*cert);
    return report.missed("order-scan", false, false);
  }

  // consistent
  if (a.strategy == "pipeline2d") {
    std::cerr << "strategy pipeline2d applies to mono-box only\n";
    return kInvalid;
  }
  if (a.strategy == "exact") {
    auto witness = col != nullptr ? find_consistent_box_exhaustive(*col, a.n)
                                  : find_consistent_array_exhaustive(*arr, a.n);
    if (witness) return report.found(to_certificate(*witness));
    return report.missed("exhaustive-scan", false, false);
  }
  ConsistencyParams cp;
  cp.budget = a.budget;
  ConsistencySearch cs =
      col != nullptr ? find_consistent_box(*col, a.n, cp) : find_consistent_array(*arr, a.n, cp);
  if (cs.witness) return report.found(to_certificate(*cs.witness));
  if (cs.budget_exhausted) return report.missed("slice-search", true, false);
  std::cerr << "not found: " << (cs.failure.empty() ? "no consistent sub-box" : cs.failure)
            << "\n";
  return kNotFound;
}

int run_verify(const VerifyArgs& a) {
  const InstanceFile file = read_instance(a.in);
  const CertificateFile cert = read_certificate(a.cert);
  if (cert.instance_digest != instance_digest(file)) {
    std::cerr << "certificate references a different instance\n";
    return kInvalid;
  }
  const bool ok = verify_certificate(file, cert);
  std::cout << (ok ? "valid" : "INVALID") << "\n";
  return ok ? kFound : kNotFound;
}

int run_number(const NumberArgs& a) {
  NumberQuery q;
  q.family = a.family == "R"   ? NumberFamily::R
             : a.family == "M" ? NumberFamily::M
                               : NumberFamily::L;
  q.colours = a.colours;
  q.d = a.d;
  q.n = a.n;
  q.side_cap = a.max_side;
  q.node_budget = a.budget;
  const NumberResult res = compute_number(q);

  auto write_witness = [&]() -> bool {
    if (a.witness_out.empty()) return false;
    if (const auto* col = std::get_if<BoxColouring>(&res.witness)) {
      write_instance(a.witness_out, InstanceFile{*col, std::nullopt});
      return true;
    }
    if (const auto* arr = std::get_if<NumericArray>(&res.witness)) {
      write_instance(a.witness_out, InstanceFile{*arr, std::nullopt});
      return true;
    }
    return false;
  };

  switch (res.kind) {
    case NumberResult::Kind::value:
      std::cout << res.value << "\n";
      write_witness();
      return kFound;
    case NumberResult::Kind::lower_bound_witness:
      if (write_witness()) std::cout << a.witness_out << "\n";
      std::cerr << "no value up to side " << a.max_side << "; an instance at side "
                << res.witness_side << " avoids the target\n";
      return kNotFound;
    case NumberResult::Kind::indeterminate:
    default:
      std::cerr << "indeterminate within budget";
      if (res.instance_count > 0) std::cerr << " (enumeration size " << res.instance_count << ")";
      std::cerr << "\n";
      return kBudget;
  }
}

} // namespace

int cli_dispatch(int argc, const char* const* argv) {
  CLI::App app{"searches, oracles, and file plumbing for coloured boxes and ranked arrays"};
  app.require_subcommand(1);

  GenArgs gen_args;
  auto* gen = app.add_subcommand("gen", "write a seeded random instance file");
  gen->add_option("kind", gen_args.kind, "colouring|array")
      ->required()
      ->check(CLI::IsMember({"colouring", "array"}));
  gen->add_option("--d", gen_args.d, "dimensions")->required();
  gen->add_option("--side", gen_args.side, "per-axis side length")->required();
  gen->add_option("--colours", gen_args.colours, "colour count (colouring only)");
  gen->add_option("--seed", gen_args.seed, "generation seed")->required();
  gen->add_option("--out", gen_args.out, "output path")->required();

  SearchArgs search_args;
  auto* search = app.add_subcommand("search", "hunt a target structure in an instance file");
  search->add_option("kind", search_args.kind, "mono-box|monotone|lex-monotone|consistent")
      ->required()
      ->check(CLI::IsMember({"mono-box", "monotone", "lex-monotone", "consistent"}));
  search->add_option("--n", search_args.n, "target side")->required();
  search->add_option("--strategy", search_args.strategy, "pipeline|pipeline2d|exact")
      ->check(CLI::IsMember({"pipeline", "pipeline2d", "exact"}));
  auto* seed_opt = search->add_option("--seed", search_args.seed, "sampling seed");
  search->add_option("--budget", search_args.budget, "per-stage node budget");
  search->add_option("--in", search_args.in, "instance file")->required();
  search->add_option("--cert-out", search_args.cert_out, "certificate output path");
  search->add_option("--trace-out", search_args.trace_out, "extraction trace JSON path");

  VerifyArgs verify_args;
  auto* verify = app.add_subcommand("verify", "check a certificate against its instance");
  verify->add_option("--in", verify_args.in, "instance file")->required();
  verify->add_option("--cert", verify_args.cert, "certificate file")->required();

  NumberArgs number_args;
  auto* number = app.add_subcommand("number", "exact least side forcing the target");
  number->add_option("family", number_args.family, "R|M|L")
      ->required()
      ->check(CLI::IsMember({"R", "M", "L"}));
  number->add_option("--d", number_args.d, "dimensions")->required();
  number->add_option("--n", number_args.n, "target side")->required();
  number->add_option("--colours", number_args.colours, "colour count (family R)");
  number->add_option("--max-side", number_args.max_side, "give up above this side");
  number->add_option("--budget", number_args.budget, "node budget");
  number->add_option("--witness-out", number_args.witness_out, "write the avoiding instance here");

  auto* selftest = app.add_subcommand("selftest", "run the acceptance criteria");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kFound : kInvalid;
  }

  search_args.seed_given = seed_opt->count() > 0;

  try {
    if (gen->parsed()) return run_gen(gen_args);
    if (search->parsed()) return run_search(search_args);
    if (verify->parsed()) return run_verify(verify_args);
    if (number->parsed()) return run_number(number_args);
    if (selftest->parsed()) return run_selftest(std::cout) ? kFound : kNotFound;
  } catch (const std::exception& e) {
    std::cerr << "invalid: " << e.what() << "\n";
    return kInvalid;
  }
  return kInvalid;
}

} // namespace monobox
