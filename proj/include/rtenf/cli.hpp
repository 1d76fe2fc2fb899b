#pragma once

// Command-line front end: classify, enforce, verify, corpus.
// Exit codes: 0 ok, 1 disagreement, 2 parse/usage error, 3 not enforceable,
// 4 resource budget exceeded.

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "rtenf/classifier.hpp"
#include "rtenf/enforcer.hpp"
#include "rtenf/errors.hpp"
#include "rtenf/oracle.hpp"
#include "rtenf/policy.hpp"

#ifndef RTENF_POLICY_DIR
#define RTENF_POLICY_DIR "policies"
#endif

namespace rtenf::cli {

enum ExitCode : int { kOk = 0, kDisagreement = 1, kParseError = 2, kNotEnforceable = 3, kBudget = 4 };

inline Bounds parse_bounds(const std::string& text) {
  std::vector<std::size_t> v;
  std::stringstream ss(text);
  for (std::string part; std::getline(ss, part, ',');) {
    if (part.empty() || part.find_first_not_of("0123456789") != std::string::npos)
      throw ParseError(0, "bounds must be three comma-separated counts, got '" + text + "'");
    v.push_back(std::stoul(part));
  }
  if (v.size() != 3) throw ParseError(0, "bounds must be three comma-separated counts, got '" + text + "'");
  if (v[2] == 0) throw ParseError(0, "maximum loop length must be at least 1");
  return Bounds{v[0], v[1], v[2]};
}

inline Strategy parse_strategy(const std::string& s) {
  if (s == "edit") return Strategy::kEdit;
  if (s == "truncate") return Strategy::kTruncate;
  if (s == "insert") return Strategy::kInsert;
  if (s == "suppress") return Strategy::kSuppress;
  throw ParseError(0, "unknown strategy '" + s + "'");
}

inline EquivalenceKind parse_equivalence(const std::string& s) {
  if (s == "syntactic") return EquivalenceKind::kSyntactic;
  if (s == "insert") return EquivalenceKind::kSubwordInsert;
  if (s == "suppress") return EquivalenceKind::kSubwordSuppress;
  throw ParseError(0, "unknown equivalence '" + s + "'");
}

struct RunConfig {
  std::string policy_path;
  std::string strategy = "edit";
  std::string eq;
  std::string input;
  std::string bounds = "7,3,3";
  std::string possible;
  std::string policies_dir = RTENF_POLICY_DIR;
  bool machine = false;
  bool stationary = false;
  bool inject_fault = false;
  std::size_t budget = GameOptions{}.budget;
};

inline Policy load_with_overrides(const RunConfig& cfg) {
  Policy pol = load_policy(cfg.policy_path);
  if (!cfg.possible.empty()) {
    pol.possible_path = cfg.possible;
    pol.possible = std::make_shared<PropertyAutomaton>(parse_possible(read_file(cfg.possible), pol.alphabet));
  }
  return pol;
}

inline std::string verdict_value(const Verdict& v) {
  if (!v.decided) return "undecided";
  return v.value ? "true" : "false";
}

inline int cmd_classify(const RunConfig& cfg, std::ostream& out) {
  const Policy pol = load_with_overrides(cfg);
  const Bounds b = parse_bounds(cfg.bounds);
  const auto& p = pol.property;
  std::vector<std::pair<std::string, Verdict>> rows;
  rows.emplace_back("safety", is_safety(p));
  rows.emplace_back("liveness", is_liveness(p));
  rows.emplace_back("renewal", is_renewal(p));
  rows.emplace_back("l_safety", is_l_safety(p, pol.lattice));
  rows.emplace_back("l_renewal", is_l_renewal(p, pol.lattice, b));
  const bool all_eq = cfg.eq.empty();
  if (all_eq || cfg.eq == "syntactic") {
    rows.emplace_back("enforceable_syntactic", is_enforceable_eq(p, pol.lattice, b));
    if (pol.possible) rows.emplace_back("enforceable_nonuniform", is_enforceable_eq_nonuniform(pol, b));
  }
  if (all_eq || cfg.eq == "insert")
    rows.emplace_back("enforceable_insert", is_enforceable_insert(p, pol.lattice, cfg.stationary));
  if (all_eq || cfg.eq == "suppress")
    rows.emplace_back("enforceable_suppress", is_enforceable_suppress(p, pol.lattice));
  if (!all_eq) parse_equivalence(cfg.eq);

  out << "safety=" << verdict_value(rows[0].second) << " liveness=" << verdict_value(rows[1].second)
      << " renewal=" << verdict_value(rows[2].second) << " reasonable=" << (is_reasonable(p) ? "true" : "false");
  for (std::size_t i = 3; i < rows.size(); ++i) out << ' ' << rows[i].first << '=' << verdict_value(rows[i].second);
  out << " lattice=" << pol.lattice.spec() << '\n';
  if (!cfg.machine) {
    for (const auto& [key, v] : rows) {
      if (v.witness) out << "  " << key << " witness: " << format(*v.witness, pol.alphabet) << '\n';
      if (!v.reason.empty()) out << "  " << key << " note: " << v.reason << '\n';
    }
  }
  return kOk;
}

inline int cmd_enforce(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const Policy pol = load_with_overrides(cfg);
  const Strategy st = parse_strategy(cfg.strategy);
  const EquivalenceKind eq = cfg.eq.empty() ? default_equivalence(st) : parse_equivalence(cfg.eq);
  const Trace input = parse_trace(cfg.input, pol.alphabet);
  SessionOptions opt;
  opt.stationary = cfg.stationary;
  opt.use_possible = pol.possible != nullptr;
  const EnforcementResult r = run(pol, st, eq, input, opt);
  out << format(r.output, pol.alphabet) << '\n';
  for (const auto& e : r.log) out << format(e, pol.alphabet) << '\n';
  if (!cfg.machine)
    out << "# sound=" << (r.sound ? "true" : "false") << " transparent=" << (r.transparent ? "true" : "false")
        << " compliant=" << (r.compliant ? "true" : "false") << '\n';
  for (const auto& d : r.diagnostics) err << d << '\n';
  if (r.ignored_after_abort) err << r.ignored_after_abort << " input action(s) ignored after abort\n";
  return r.sound && r.compliant ? kOk : kNotEnforceable;
}

inline int report_exit(const CheckReport& report, std::ostream& out) {
  out << report.format();
  return report.disagreements() == 0 ? kOk : kDisagreement;
}

inline ClassifierOverride fault_stub(bool on) {
  if (!on) return nullptr;
  return [](const CorpusEntry&) -> std::optional<bool> { return true; };
}

inline int cmd_verify(const RunConfig& cfg, std::ostream& out) {
  CorpusSpec spec{{load_with_overrides(cfg)}, parse_bounds(cfg.bounds)};
  GameOptions g;
  g.budget = cfg.budget;
  return report_exit(cross_check(spec, fault_stub(cfg.inject_fault), g), out);
}

inline int cmd_corpus(const RunConfig& cfg, std::ostream& out) {
  CorpusSpec spec{load_policies(cfg.policies_dir), parse_bounds(cfg.bounds)};
  GameOptions g;
  g.budget = cfg.budget;
  return report_exit(cross_check(spec, fault_stub(cfg.inject_fault), g), out);
}

/// Entry point shared by the executable and the tests.
inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"rtenf: enforceability analysis and enforcement for finite-state policies"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--bounds", cfg.bounds, "F,S,L: max finite length, max stem, max loop");
    sub->add_flag("--machine", cfg.machine, "single-line key=value output");
  };
  auto* classify = app.add_subcommand("classify", "report property classes and enforceability");
  classify->add_option("policy", cfg.policy_path)->required();
  classify->add_option("--eq", cfg.eq, "syntactic|insert|suppress");
  classify->add_option("--possible", cfg.possible, "policy file recognizing the possible executions");
  classify->add_flag("--stationary", cfg.stationary, "insertion only after the current action");
  add_common(classify);

  auto* enforce = app.add_subcommand("enforce", "run an enforcer on one input");
  enforce->add_option("policy", cfg.policy_path)->required();
  enforce->add_option("--strategy", cfg.strategy, "edit|truncate|insert|suppress");
  enforce->add_option("--eq", cfg.eq, "syntactic|insert|suppress");
  enforce->add_option("--input", cfg.input, "trace literal, e.g. \"a b a\" or -")->required();
  enforce->add_option("--possible", cfg.possible, "policy file recognizing the possible executions");
  enforce->add_flag("--stationary", cfg.stationary, "insertion only after the current action");
  add_common(enforce);

  auto* verify = app.add_subcommand("verify", "cross-check one policy across the corpus lattices");
  verify->add_option("policy", cfg.policy_path)->required();
  verify->add_option("--possible", cfg.possible, "policy file recognizing the possible executions");
  verify->add_flag("--inject-fault", cfg.inject_fault, "replace the classifier by an always-true stub");
  verify->add_option("--budget", cfg.budget, "game memo-table cap");
  add_common(verify);

  auto* corpus = app.add_subcommand("corpus", "cross-check the default corpus");
  corpus->add_option("--policies", cfg.policies_dir, "directory with the shipped policy files");
  corpus->add_flag("--inject-fault", cfg.inject_fault, "replace the classifier by an always-true stub");
  corpus->add_option("--budget", cfg.budget, "game memo-table cap");
  add_common(corpus);

  std::vector<std::string> storage{"rtenf"};
  storage.insert(storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : storage) argv.push_back(s.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kParseError;
  }

  try {
    if (*classify) return cmd_classify(cfg, out);
    if (*enforce) return cmd_enforce(cfg, out, err);
    if (*verify) return cmd_verify(cfg, out);
    if (*corpus) return cmd_corpus(cfg, out);
  } catch (const BudgetExceeded& e) {
    err << "error: " << e.what() << '\n';
    return kBudget;
  } catch (const IncompatibleSessionError& e) {
    err << "error: " << e.what() << '\n';
    return kNotEnforceable;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kParseError;
  }
  return kParseError;
}

}  // namespace rtenf::cli
