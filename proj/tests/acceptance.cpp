// Acceptance run: one PASS/FAIL line per criterion.
//   acceptance                      run every criterion
//   acceptance --write-divergences  regenerate the logged characterization divergences

#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>

#include "rtenf/rtenf.hpp"

using namespace rtenf;
namespace fs = std::filesystem;

namespace {

const Bounds kBounds{};
const fs::path kPolicies = RTENF_POLICY_DIR;
const fs::path kDivergences = fs::path(RTENF_TEST_DATA) / "characterization_divergences.txt";

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::vector<Policy> corpus() { return load_policies(kPolicies); }

Policy with_lattice(Policy pol, ActionLattice l) {
  pol.lattice = std::move(l);
  return pol;
}

// Every assignment of capabilities to the actions of a policy.
std::vector<ActionLattice> all_lattices(std::size_t n) {
  std::vector<ActionLattice> out;
  std::size_t total = 1;
  for (std::size_t i = 0; i < n; ++i) total *= 4;
  for (std::size_t code = 0; code < total; ++code) {
    std::string pat;
    for (std::size_t i = 0, c = code; i < n; ++i, c /= 4) pat += to_char(kAllCapabilities[c % 4]);
    out.push_back(ActionLattice::from_pattern(n, pat));
  }
  return out;
}

// Whether a valid prefix recurs along the lasso, read off a long unrolling.
bool valid_infinitely_often(const PropertyAutomaton& p, const Lasso& w) {
  const std::size_t start = w.stem().size() + p.num_states() * w.loop().size() * 2;
  State q = p.run(p.initial, w.unroll(start));
  for (std::size_t i = start; i < start + p.num_states() * w.loop().size(); ++i) {
    if (p.accept_finite[q]) return true;
    q = p.step(q, w.at(i));
  }
  return false;
}

bool in_possible(const Policy& pol, const Trace& t) {
  return !pol.possible || pol.possible->accept_finite[pol.possible->run(pol.possible->initial, t)];
}

Verdict enforceable(const Policy& pol) {
  return pol.possible ? is_enforceable_eq_nonuniform(pol, kBounds) : is_enforceable_eq(pol, kBounds);
}

// --- 1 ---------------------------------------------------------------------
Outcome all_d_is_safety() {
  Outcome o;
  std::size_t n = 0;
  for (const auto& base : corpus()) {
    const auto pol = with_lattice(base, ActionLattice::uniform(base.alphabet.size(), Capability::D));
    const bool e = is_enforceable_eq(pol, kBounds).value, s = is_safety(pol.property).value;
    ++n;
    if (e != s) {
      o.pass = false;
      o.detail += " mismatch:" + pol.name;
    }
  }
  o.detail = std::to_string(n) + " policies" + o.detail;
  return o;
}

// --- 2 ---------------------------------------------------------------------
// Finite executions always satisfy the closure; lassos must be valid exactly
// when valid prefixes recur or the corner case applies.
bool corner_closure(const PropertyAutomaton& p, const ActionLattice& c) {
  for (const auto& w : enumerate_lassos(p.num_actions(), kBounds.max_stem_len, kBounds.max_loop_len))
    if (evaluate_infinite(p, w) != (valid_infinitely_often(p, w) || corner_case_cc(p, c, w))) return false;
  return true;
}

Outcome all_c_is_renewal_or_corner() {
  Outcome o;
  std::size_t n = 0;
  for (const auto& base : corpus()) {
    if (!is_reasonable(base.property)) continue;
    const auto c = ActionLattice::uniform(base.alphabet.size(), Capability::C);
    const bool e = is_enforceable_eq(base.property, c, kBounds).value;
    const bool rhs = is_renewal(base.property).value || corner_closure(base.property, c);
    ++n;
    if (e != rhs) {
      o.pass = false;
      o.detail += " mismatch:" + base.name;
    }
  }
  o.detail = std::to_string(n) + " reasonable policies" + o.detail;
  return o;
}

// --- 3 ---------------------------------------------------------------------
struct Divergence {
  std::string policy, lattice, witness;
  bool characterization, formula;
  std::size_t count;

  std::string line() const {
    return "policy=" + policy + " lattice=" + lattice + " witness=" + witness +
           " characterization=" + (characterization ? "t" : "f") + " formula=" + (formula ? "t" : "f") +
           " count=" + std::to_string(count);
  }
};

std::vector<Divergence> characterization_divergences() {
  std::vector<Divergence> out;
  for (const auto& pol : corpus()) {
    const auto& p = pol.property;
    const auto finite = enumerate_finite(p.num_actions(), kBounds.max_finite_len);
    const auto lassos = enumerate_lassos(p.num_actions(), kBounds.max_stem_len, kBounds.max_loop_len);
    for (const auto& l : corpus_lattices(pol.alphabet.size())) {
      std::optional<Divergence> first;
      std::size_t count = 0;
      auto visit = [&](const Word& w) {
        const bool a = satisfies_characterization(p, l, w), b = ltl_check(p, l, w);
        if (a == b) return;
        if (!count++) first = Divergence{pol.name, l.spec(), format(w, pol.alphabet), a, b, 0};
      };
      for (const auto& t : finite) visit(t);
      for (const auto& w : lassos) visit(w);
      if (first) {
        first->count = count;
        out.push_back(*first);
      }
    }
  }
  return out;
}

std::string divergence_file(const std::vector<Divergence>& d) {
  std::ostringstream s;
  s << "# Executions on which the enforceability characterization and the temporal formula disagree.\n"
    << "# One line per (policy, lattice): shortlex-first witness and number of diverging executions\n"
    << "# at bounds " << kBounds.max_finite_len << ',' << kBounds.max_stem_len << ',' << kBounds.max_loop_len
    << ". Regenerate with: acceptance --write-divergences\n";
  for (const auto& x : d) s << x.line() << '\n';
  return s.str();
}

Outcome characterization_matches_formula() {
  Outcome o;
  const auto d = characterization_divergences();
  std::set<std::string> logged;
  std::ifstream in(kDivergences);
  for (std::string line; std::getline(in, line);)
    if (!line.empty() && line[0] != '#') logged.insert(line);
  std::size_t unlogged = 0, total = 0;
  for (const auto& x : d) {
    total += x.count;
    if (!logged.count(x.line())) ++unlogged;
  }
  o.pass = unlogged == 0;
  o.detail = std::to_string(total) + " diverging executions in " + std::to_string(d.size()) +
             " (policy, lattice) pairs, " + std::to_string(unlogged) + " unlogged";
  return o;
}

// --- 4 ---------------------------------------------------------------------
Outcome promotion_monotone() {
  Outcome o;
  const std::pair<Capability, Capability> edges[] = {
      {Capability::O, Capability::D}, {Capability::O, Capability::I},
      {Capability::D, Capability::C}, {Capability::I, Capability::C}};
  std::size_t checked = 0, violations = 0;
  for (const auto& base : corpus()) {
    std::map<std::string, bool> verdict;
    auto get = [&](const ActionLattice& l) {
      auto it = verdict.find(l.spec());
      if (it != verdict.end()) return it->second;
      return verdict[l.spec()] = enforceable(with_lattice(base, l)).value;
    };
    for (const auto& l : all_lattices(base.alphabet.size())) {
      if (!get(l)) continue;
      for (Action a : base.alphabet.actions())
        for (const auto& [from, to] : edges) {
          if (l.class_of(a) != from) continue;
          ++checked;
          if (!get(l.promote(a, from, to))) {
            ++violations;
            o.detail += " " + base.name + ":" + l.spec();
          }
        }
    }
  }
  o.pass = violations == 0;
  o.detail = std::to_string(checked) + " promotions, " + std::to_string(violations) + " violations" + o.detail;
  return o;
}

// --- 5 ---------------------------------------------------------------------
// Uniform context: possible-sets are ignored. The game only plays finite
// inputs, so it is held to "every finite input is valid" instead.
Outcome all_o_only_inviolable() {
  Outcome o;
  std::vector<std::string> by_classifier, by_game, finitely_inviolable;
  for (const auto& base : corpus()) {
    const auto& p = base.property;
    const auto o_lat = ActionLattice::uniform(base.alphabet.size(), Capability::O);
    if (is_enforceable_eq(p, o_lat, kBounds).value) by_classifier.push_back(base.name);
    if (game_enforceable(p, o_lat, EquivalenceKind::kSyntactic, kBounds.max_finite_len, nullptr).value)
      by_game.push_back(base.name);
    bool all_valid = true;
    for (const auto& t : enumerate_finite(p.num_actions(), kBounds.max_finite_len))
      all_valid = all_valid && evaluate_finite(p, t);
    if (all_valid) finitely_inviolable.push_back(base.name);
  }
  auto join = [](const std::vector<std::string>& v) {
    std::string s;
    for (const auto& n : v) s += (s.empty() ? "" : ",") + n;
    return s.empty() ? std::string("none") : s;
  };
  o.pass = by_classifier == std::vector<std::string>{"all"} && by_game == finitely_inviolable;
  o.detail = "classifier: " + join(by_classifier) + "; game: " + join(by_game) +
             "; every finite input valid: " + join(finitely_inviolable);
  return o;
}

// --- 6 ---------------------------------------------------------------------
Outcome triple_agreement() {
  const auto report = cross_check(CorpusSpec{corpus(), kBounds});
  Outcome o;
  o.pass = report.disagreements() == 0;
  o.detail = std::to_string(report.lines.size()) + " entries, " + std::to_string(report.disagreements()) +
             " disagreements";
  if (!o.pass) std::cerr << report.format();
  return o;
}

// --- 7 ---------------------------------------------------------------------
Outcome edit_invariants() {
  Outcome o;
  std::size_t pairs = 0, runs = 0, failures = 0;
  for (const auto& e : corpus_entries(CorpusSpec{corpus(), kBounds})) {
    if (e.eq != EquivalenceKind::kSyntactic || !classify_entry(e, kBounds).value) continue;
    ++pairs;
    const auto& pol = e.policy;
    const auto& p = pol.property;
    SessionOptions opt;
    opt.semantics = Semantics::kFiniteOnly;
    opt.use_possible = true;
    for (const auto& in : enumerate_finite(pol.alphabet.size(), kBounds.max_finite_len)) {
      if (!in_possible(pol, in)) continue;
      ++runs;
      EnforcerSession s(pol, Strategy::kEdit, EquivalenceKind::kSyntactic, opt);
      bool ok = true;
      for (Action a : in) {
        s.step(a);
        ok = ok && evaluate_finite(p, s.output_so_far());
        if (!pol.possible && !s.aborted() && !gamma(p, pol.lattice, s.input_so_far(), Semantics::kFiniteOnly))
          ok = ok && concat(s.output_so_far(), s.suppressed()) == s.input_so_far();
      }
      const auto r = s.finish();
      ok = ok && audit_log(r.log, pol.lattice) && r.compliant && r.sound;
      if (evaluate_finite(p, in)) ok = ok && r.output == in;
      if (!ok) {
        if (!failures) o.detail += " first failure: " + pol.name + " " + pol.lattice.spec() + " '" + format(in, pol.alphabet) + "'";
        ++failures;
      }
    }
  }
  o.pass = failures == 0;
  o.detail = std::to_string(pairs) + " enforceable pairs, " + std::to_string(runs) + " runs, " +
             std::to_string(failures) + " failures" + o.detail;
  return o;
}

// --- 8 ---------------------------------------------------------------------
Outcome suppression_all_d() {
  Outcome o;
  std::size_t policies = 0, runs = 0, failures = 0;
  for (const auto& base : corpus()) {
    if (!is_reasonable(base.property)) continue;
    ++policies;
    const auto pol = with_lattice(base, ActionLattice::uniform(base.alphabet.size(), Capability::D));
    if (!is_enforceable_suppress(pol.property, pol.lattice).value) {
      ++failures;
      o.detail += " not enforceable: " + pol.name;
    }
    for (const auto& in : enumerate_finite(pol.alphabet.size(), kBounds.max_finite_len)) {
      ++runs;
      const auto r = run(pol, Strategy::kSuppress, EquivalenceKind::kSubwordSuppress, in);
      if (!r.sound || !is_subword(r.output, r.input)) {
        if (!failures) o.detail += " unsound: " + pol.name + " '" + format(in, pol.alphabet) + "'";
        ++failures;
      }
    }
  }
  o.pass = failures == 0;
  o.detail = std::to_string(policies) + " reasonable policies, " + std::to_string(runs) + " runs" + o.detail;
  return o;
}

// --- 9 ---------------------------------------------------------------------
Outcome insertion_replay() {
  Outcome o;
  std::size_t fixed_point_positives = 0, runs = 0;
  for (const auto& base : corpus()) {
    if (!is_reasonable(base.property) || base.possible) continue;
    const auto d = ActionLattice::uniform(base.alphabet.size(), Capability::D);
    const bool safety = is_safety(base.property, Semantics::kFiniteOnly).value;
    const bool by_class = is_enforceable_insert(base.property, d, false).value;
    const bool by_game = game_enforceable(base.property, d, EquivalenceKind::kSubwordInsert, kBounds.max_finite_len,
                                          nullptr).value;
    if (by_class != safety || by_game != safety) {
      o.pass = false;
      o.detail += " all-D mismatch: " + base.name;
    }
    const auto i = ActionLattice::uniform(base.alphabet.size(), Capability::I);
    for (bool stationary : {true, false}) {
      if (!insert_region(base.property, i, stationary)[base.property.initial]) continue;
      ++fixed_point_positives;
      SessionOptions opt;
      opt.stationary = stationary;
      const auto pol = with_lattice(base, i);
      for (const auto& in : enumerate_finite(pol.alphabet.size(), kBounds.max_finite_len)) {
        ++runs;
        const auto r = run(pol, Strategy::kInsert, EquivalenceKind::kSubwordInsert, in, opt);
        if (!r.ok() || !is_subword(r.input, r.output)) {
          o.pass = false;
          o.detail += " insert run failed: " + pol.name + " '" + format(in, pol.alphabet) + "'";
          break;
        }
      }
    }
  }
  const auto pnaa = load_policy(kPolicies / "pnaa.pol").property;
  const auto pos = load_policy(kPolicies / "pos.pol").property;
  if (!insert_region(pnaa, ActionLattice::uniform(2, Capability::I), true)[pnaa.initial]) {
    o.pass = false;
    o.detail += " pnaa outside the stationary fixed point";
  }
  if (!insert_region(pos, ActionLattice::uniform(4, Capability::I), false)[pos.initial]) {
    o.pass = false;
    o.detail += " pos outside the residual fixed point";
  }
  o.detail = std::to_string(fixed_point_positives) + " fixed-point positives, " + std::to_string(runs) +
             " insert runs" + o.detail;
  return o;
}

// --- 10 --------------------------------------------------------------------
Outcome micro_examples() {
  Outcome o;
  const Alphabet s({"a", "b", "c", "d"});
  const Trace got = left_cancel(parse_trace("a b c a d a", s), parse_trace("d a a", s));
  if (got != parse_trace("b c a", s)) {
    o.pass = false;
    o.detail += " left_cancel gave '" + format(got, s) + "'";
  }
  if (!left_cancel(Trace{}, s("a")).empty()) {
    o.pass = false;
    o.detail += " cancelling from the empty trace is not empty";
  }
  std::size_t files = 0;
  for (const auto& entry : fs::directory_iterator(kPolicies)) {
    if (entry.path().extension() != ".pol") continue;
    ++files;
    const std::string text = read_file(entry.path());
    if (serialize(parse_policy(text, entry.path().parent_path())) != text) {
      o.pass = false;
      o.detail += " round trip differs: " + entry.path().filename().string();
    }
  }
  o.detail = std::to_string(files) + " policy files round-tripped" + o.detail;
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc > 1 && std::string(argv[1]) == "--write-divergences") {
    const auto d = characterization_divergences();
    fs::create_directories(kDivergences.parent_path());
    std::ofstream(kDivergences) << divergence_file(d);
    std::cout << "wrote " << d.size() << " lines to " << kDivergences.string() << '\n';
    return 0;
  }
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"all-D syntactic enforceability equals safety", all_d_is_safety},
      {"all-C syntactic enforceability equals renewal or corner closure", all_c_is_renewal_or_corner},
      {"characterization agrees with the temporal formula or divergence is logged",
       characterization_matches_formula},
      {"single-action promotions preserve enforceability", promotion_monotone},
      {"under all-O only the inviolable policy is enforceable", all_o_only_inviolable},
      {"classifier, game and enforcer agree on the default corpus", triple_agreement},
      {"edit sessions keep their invariants on enforceable pairs", edit_invariants},
      {"all-D suppression enforces every reasonable policy", suppression_all_d},
      {"insertion replay: all-D equals safety, fixed points match enforcer runs", insertion_replay},
      {"worked micro-examples and policy round trip", micro_examples},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const auto ms =
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count();
    std::cout << (o.pass ? "PASS" : "FAIL") << " [" << i + 1 << "] " << criteria[i].first << " (" << o.detail
              << "; " << ms << " ms)" << std::endl;
    failed += !o.pass;
  }
  return failed ? 1 : 0;
}
