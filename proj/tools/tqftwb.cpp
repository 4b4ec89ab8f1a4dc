// tqftwb: command-line front end.
//
//   tqftwb cob normalize --term T
//   tqftwb tqft eval --model M --term T [--expect id|genus0]
//   tqftwb frobenius check --model M [--seed S]
//   tqftwb lie <sln|sl2-semidirect|sl3-centralizer> [--n N] [--trials K] [--seed S]
//
// Exit status: 0 when every check passes, 1 when a check fails, 2 on usage
// or input errors. Reports go to stdout, or to --json PATH.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "json.hpp"
#include "tqftwb/cob2.hpp"
#include "tqftwb/frobenius.hpp"
#include "tqftwb/lie.hpp"

using namespace tqftwb;
using nlohmann::ordered_json;

namespace {

struct Common {
  std::string json_path;
  std::optional<std::uint64_t> seed;
  bool serial = false;
};

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag) {
  if (flag) return *flag;
  const char* env = std::getenv("TQFTWB_SEED");
  if (env == nullptr || *env == '\0') return 0;
  std::uint64_t v = 0;
  for (const char* p = env; *p; ++p) {
    if (*p < '0' || *p > '9') throw InputError(std::string("TQFTWB_SEED is not a nonnegative integer: '") + env + "'");
    v = v * 10 + static_cast<std::uint64_t>(*p - '0');
  }
  return v;
}

ordered_json envelope(const std::string& command, ordered_json options) {
  ordered_json j;
  j["tool"] = "tqftwb";
  j["version"] = kVersion;
  j["command"] = command;
  j["options"] = std::move(options);
  return j;
}

void emit(const ordered_json& report, const Common& common, bool pass) {
  const std::string text = report.dump(2) + "\n";
  if (common.json_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(common.json_path, std::ios::binary);
  if (!out) throw InputError("cannot write '" + common.json_path + "'");
  out << text;
  std::cout << report.value("command", std::string()) << ": " << (pass ? "pass" : "FAIL") << " -> "
            << common.json_path << "\n";
}

Execution exec_of(const Common& c) { return c.serial ? Execution::serial : Execution::parallel; }

int run_cob_normalize(const std::string& text, const Common& common) {
  const auto term = cob::parse(text);
  const auto nf = cob::normalize(term);
  ordered_json comps = ordered_json::array();
  int euler = 0;
  for (const auto& c : nf.components) {
    comps.push_back({{"in", c.in}, {"out", c.out}, {"genus", c.genus}});
    euler += 2 - 2 * c.genus - static_cast<int>(c.in.size() + c.out.size());
  }
  auto j = envelope("cob normalize", {{"term", text}});
  j["term"] = cob::render(term);
  j["signature"] = {nf.m, nf.n};
  j["generators"] = term.generator_count();
  j["euler_characteristic"] = euler;
  j["components"] = std::move(comps);
  j["normal_form"] = nf.serialize();
  emit(j, common, true);
  return 0;
}

int run_tqft_eval(const std::string& model_path, const std::string& text, const std::string& expect,
                  const Common& common) {
  const auto model = gpd::AbelianModel::load(model_path);
  const auto term = cob::parse(text);
  const auto sig = term.signature();
  const auto nf = cob::normalize(term);

  // Without --expect, compare against whichever closed form the normal form
  // names: the identity, or the connected genus-0 span.
  std::string target = expect;
  if (target.empty()) {
    if (sig.dom == sig.cod && nf == cob::normalize(cob::Term::identity(sig.dom))) {
      target = "id";
    } else if (nf.is_connected_genus0() && sig.dom + sig.cod > 0) {
      target = "genus0";
    }
  }
  const auto exec = exec_of(common);
  const auto span = frob::evaluate(model, term);
  const auto fp = gpd::fingerprint(span, exec);

  auto j = envelope("tqft eval", {{"model", model_path}, {"term", text}, {"expect", expect}});
  j["model"] = ordered_json::parse(model.to_json());
  j["term"] = cob::render(term);
  j["signature"] = {sig.dom, sig.cod};
  j["normal_form"] = nf.serialize();
  j["fingerprint_digest"] = fp.digest();
  j["fingerprint"] = fp.records;
  if (sig.dom == 0 && sig.cod == 0) j["invariant"] = to_string(gpd::cardinality(*span.apex));

  bool pass = true;
  if (target.empty()) {
    j["verdict"] = "evaluated";
  } else {
    gpd::Span reference;
    std::string label;
    if (target == "id") {
      if (sig.dom != sig.cod) throw InputError("--expect id needs a term with equal domain and codomain");
      reference = frob::identity_span(model, sig.dom);
      label = "id(" + std::to_string(sig.dom) + ")";
    } else {
      reference = frob::genus0_span(model, sig.dom, sig.cod);
      label = "genus0(" + std::to_string(sig.dom) + "," + std::to_string(sig.cod) + ")";
    }
    const auto ref_fp = gpd::fingerprint(reference, exec);
    pass = ref_fp == fp;
    j["expected_digest"] = ref_fp.digest();
    j["verdict"] = std::string(pass ? "fingerprint-equal: " : "fingerprint-differs: ") + label;
  }
  j["pass"] = pass;
  emit(j, common, pass);
  return pass ? 0 : 1;
}

int run_frobenius_check(const std::string& model_path, std::uint64_t budget, int pairs, const Common& common) {
  const auto model = gpd::AbelianModel::load(model_path);
  frob::CheckOptions opts;
  opts.seed = resolve_seed(common.seed);
  opts.exec = exec_of(common);
  opts.functor_budget = budget;
  opts.random_pairs = pairs;
  const auto report = frob::check_axioms(model, opts);
  auto j = envelope("frobenius check", {{"model", model_path},
                                        {"seed", opts.seed},
                                        {"functor_budget", budget},
                                        {"random_pairs", pairs}});
  j["seed"] = opts.seed;
  j["report"] = report.to_json();
  emit(j, common, report.all_pass());
  return report.all_pass() ? 0 : 1;
}

int run_lie(const std::string& family_text, int n, int trials, const Common& common) {
  const auto family = lie::parse_family(family_text);
  if (trials < 1) throw InputError("--trials must be >= 1");
  lie::TrialOptions opts;
  opts.trials = trials;
  opts.seed = resolve_seed(common.seed);
  opts.exec = exec_of(common);
  const auto report = lie::run_suite(family, n, opts);
  ordered_json options = {{"family", family_text}};
  if (family == lie::Family::sln) options["n"] = n;
  options["trials"] = trials;
  options["seed"] = opts.seed;
  auto j = envelope("lie " + family_text, std::move(options));
  j["seed"] = opts.seed;
  j["report"] = report.to_json();
  emit(j, common, report.all_pass());
  return report.all_pass() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Verification workbench for abelian-groupoid TQFTs and exact Lie slices", "tqftwb"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  Common common;
  auto add_common = [&](CLI::App* sub, bool with_seed) {
    sub->add_option("--json", common.json_path, "Write the report to this path instead of stdout");
    sub->add_flag("--serial", common.serial, "Run the serial reference path");
    if (with_seed) sub->add_option("--seed", common.seed, "Master seed (default: $TQFTWB_SEED, else 0)");
  };

  std::string term, model, expect, family;
  int n = 3, trials = 50, pairs = 4;
  std::uint64_t budget = 20'000;

  auto* cob = app.add_subcommand("cob", "Cobordism terms");
  cob->require_subcommand(1);
  auto* normalize = cob->add_subcommand("normalize", "Print the topological normal form of a term");
  normalize->add_option("--term", term, "Term in the cobordism DSL")->required();
  add_common(normalize, false);

  auto* tqft = app.add_subcommand("tqft", "Span-valued TQFT");
  tqft->require_subcommand(1);
  auto* eval = tqft->add_subcommand("eval", "Evaluate a term on a model");
  eval->add_option("--model", model, "Model JSON file")->required();
  eval->add_option("--term", term, "Term in the cobordism DSL")->required();
  eval->add_option("--expect", expect, "Compare against id or genus0")->check(CLI::IsMember({"id", "genus0"}));
  add_common(eval, false);

  auto* frobenius = app.add_subcommand("frobenius", "Frobenius relations");
  frobenius->require_subcommand(1);
  auto* check = frobenius->add_subcommand("check", "Run the relation suite on a model");
  check->add_option("--model", model, "Model JSON file")->required();
  check->add_option("--functor-budget", budget, "Exhaustive functor checks up to this size")
      ->check(CLI::PositiveNumber);
  check->add_option("--random-pairs", pairs, "Extra random equal-normal-form pairs")->check(CLI::NonNegativeNumber);
  add_common(check, true);

  auto* lie_cmd = app.add_subcommand("lie", "Exact Lie-theoretic checks");
  lie_cmd->add_option("family", family, "sln | sl2-semidirect | sl3-centralizer")->required();
  lie_cmd->add_option("--n", n, "Matrix size for sln")->check(CLI::Range(2, 12));
  lie_cmd->add_option("--trials", trials, "Samples per randomized check")->check(CLI::Range(1, 100000));
  add_common(lie_cmd, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*normalize) return run_cob_normalize(term, common);
    if (*eval) return run_tqft_eval(model, term, expect, common);
    if (*check) return run_frobenius_check(model, budget, pairs, common);
    if (*lie_cmd) return run_lie(family, n, trials, common);
  } catch (const Error& e) {
    std::cerr << "tqftwb: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "tqftwb: internal error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
