// Acceptance run: one PASS/FAIL line per criterion on standard output,
// progress on standard error. With no arguments every criterion runs; naming
// criterion numbers runs just those (8 pulls in 1, whose proofs it reuses).
// Exit status 0 iff every criterion that ran passed.

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <functional>
#include <optional>
#include <cstdio>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "lemma_table.hpp"
#include "posprop/cli.hpp"
#include "posprop/kalmar.hpp"
#include "posprop/proof_io.hpp"
#include "posprop/transform.hpp"
#include "support.hpp"

using namespace posprop;
using Clock = std::chrono::steady_clock;

namespace {

double seconds_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

struct Outcome {
  bool pass = false;
  std::string detail;
};

// Every derivation produced during the run is audited semantically.
struct Soundness {
  std::size_t derivations = 0;
  std::size_t failures = 0;
  std::string first_failure;

  void operator()(const Derivation& d) {
    ++derivations;
    if (!entails(d.hypotheses(), d.conclusion()).holds()) {
      if (failures++ == 0) first_failure = print(d.conclusion());
    }
  }
};

Soundness audit;

// Records the first failure of a criterion with enough context to reproduce it.
struct Tally {
  std::size_t failures = 0;
  std::string first;

  void fail(const std::string& what) {
    if (failures++ == 0) first = what;
  }
  bool expect(bool ok, const std::string& what) {
    if (!ok) fail(what);
    return ok;
  }
  std::string suffix() const { return failures ? "; " + std::to_string(failures) + " failures, first: " + first : ""; }
};

bool closed_proof_of(const Derivation& d, const Formula& a, CalculusId calc) {
  return check(d).ok() && d.closed() && d.calculus() == calc && d.conclusion() == a;
}

// --- criterion 1 and 8 ----------------------------------------------------

std::vector<std::string> sweep_proofs;

Outcome completeness_sweep() {
  auto start = Clock::now();
  Tally t;
  std::size_t formulas = 0, proved = 0, refuted = 0;
  for (const auto& f : enumerate_formulas(4, 2, Fragment::ImplicativeDisjunctive)) {
    ++formulas;
    const std::string text = print(f);
    std::ostringstream out, err;
    int code = cli::run(std::vector<std::string>{"prove", text, "--calc", "ID"}, out, err);
    const bool taut = is_tautology(f).holds();
    t.expect(taut == testing::oracle_tautology(f, 2), "truth-table disagreement on " + text);
    if (taut) {
      if (!t.expect(code == 0, "prove failed on tautology " + text)) continue;
      Derivation d = read_proof(out.str());
      audit(d);
      if (t.expect(closed_proof_of(d, f, CalculusId::ID), "bad proof of " + text)) ++proved;
      sweep_proofs.push_back(out.str());
    } else {
      // "not a tautology\ncountermodel p1=T p2=F\n"
      const std::string s = out.str();
      auto at = s.find("countermodel ");
      if (!t.expect(code == 1 && at != std::string::npos, "no countermodel for " + text)) continue;
      Assignment v;
      std::istringstream items(s.substr(at + 13));
      std::string item;
      while (items >> item) {
        auto eq = item.find('=');
        v.set(static_cast<std::uint32_t>(std::stoul(item.substr(1, eq - 1))), item.substr(eq + 1) == "T");
      }
      if (t.expect(v.defines(atoms_of(f)) && !eval(v, f), "countermodel does not falsify " + text)) ++refuted;
    }
  }
  const double elapsed = seconds_since(start);
  const bool counted = formulas == testing::oracle_formula_count(4, 2, 2);
  t.expect(counted, "enumeration size differs from the closed form");
  std::ostringstream msg;
  msg.precision(2);
  msg << std::fixed << formulas << " formulas, " << proved << " proved, " << refuted << " refuted, " << elapsed
      << " s (limit 60 s)" << t.suffix();
  return {t.failures == 0 && elapsed < 60.0 && proved + refuted == formulas, msg.str()};
}

Outcome proof_file_round_trip() {
  Tally t;
  for (const auto& text : sweep_proofs) {
    Derivation d = read_proof(text);
    t.expect(check(d).ok(), "re-read proof fails the kernel");
    t.expect(write_proof(d) == text, "text re-serialization differs");
    Derivation j = proof_from_json(nlohmann::json::parse(proof_to_json(d).dump()));
    t.expect(j == d && write_proof(j) == text && check(j).ok(), "JSON round trip differs");
  }
  return {t.failures == 0 && !sweep_proofs.empty(),
          std::to_string(sweep_proofs.size()) + " proof files, text and JSON" + t.suffix()};
}

// --- criterion 3 ----------------------------------------------------------

Outcome line_property() {
  Tally t;
  std::size_t cases = 0;
  for (auto [lang, calc] : {std::pair{Fragment::ImplicativeDisjunctive, CalculusId::ID},
                            std::pair{Fragment::Positive, CalculusId::P}}) {
    testing::FormulaGen gen(3000 + static_cast<unsigned>(calc), lang);
    for (int i = 0; i < 500; ++i, ++cases) {
      Formula a = gen.exact(gen.pick(0, 6), gen.pick(1, 3));
      std::uint32_t row = gen.pick(0, 7);
      Assignment v;
      for (std::uint32_t k = 1; k <= 3; ++k) v.set(k, (row >> (k - 1)) & 1U);
      auto cert = kalmar::build_line(v, a, calc);
      audit(cert.derivation);
      std::set<std::uint32_t> atoms;
      testing::oracle_atoms(a, atoms);
      std::vector<Formula> gamma;
      std::vector<std::uint32_t> delta;
      for (auto k : atoms) {
        if ((row >> (k - 1)) & 1U)
          gamma.push_back(Formula::atom(k));
        else
          delta.push_back(k);
      }
      const bool truth = testing::oracle_eval(a, row);
      const Formula want = truth ? pos_encode(AtomSet(delta), a) : neg_encode(AtomSet(delta), a);
      const std::string ctx = print(a) + " under " + to_string(v);
      t.expect(check(cert.derivation).ok(), "kernel rejected line for " + ctx);
      t.expect(cert.derivation.calculus() == calc, "wrong calculus for " + ctx);
      t.expect(cert.derivation.hypotheses() == gamma, "hypotheses differ from the true atoms for " + ctx);
      t.expect(cert.derivation.conclusion() == want, "conclusion differs from the encoding for " + ctx);
      t.expect((cert.polarity == kalmar::Polarity::Positive) == truth, "polarity wrong for " + ctx);
    }
  }
  return {t.failures == 0, std::to_string(cases) + " (formula, assignment) pairs over ID and P" + t.suffix()};
}

// --- criterion 4 ----------------------------------------------------------

Outcome deduction_contract() {
  Tally t;
  testing::FormulaGen gen(4000, Fragment::Positive);
  std::size_t done = 0, worst_slack = SIZE_MAX;
  while (done < 200) {
    std::optional<Derivation> d;
    const CalculusId calc = done % 2 ? CalculusId::P : CalculusId::ID;
    testing::FormulaGen local(gen.rng()(), fragment_of(calc));
    if (done % 4 < 2) {
      std::vector<Formula> hyps;
      for (unsigned k = local.pick(1, 3); k > 0; --k) hyps.push_back(local.upto(3, 3));
      Formula goal = local.upto(4, 3);
      if (!testing::oracle_entails(hyps, goal, 3)) continue;
      d = std::get<Derivation>(kalmar::derive_from_hypotheses(hyps, goal, calc));
    } else {
      Formula a = local.upto(6, 3);
      d = kalmar::build_line(local.assignment(3), a, calc).derivation;
    }
    if (d->closed() || !check(*d).ok()) continue;
    audit(*d);
    const Formula& a = d->hypotheses()[local.pick(0, static_cast<unsigned>(d->hypotheses().size() - 1))];
    Derivation out = tactics::deduction(*d, a);
    audit(out);
    std::vector<Formula> rest;
    for (const auto& h : d->hypotheses())
      if (h != a) rest.push_back(h);
    const std::string ctx = "discharging " + print(a) + " from a proof of " + print(d->conclusion());
    t.expect(out.hypotheses() == rest, "hypotheses wrong " + ctx);
    t.expect(out.conclusion() == Formula::impl(a, d->conclusion()), "conclusion wrong " + ctx);
    t.expect(check(out).ok(), "kernel rejected " + ctx);
    const std::size_t bound = 3 * d->size() + 10;
    t.expect(out.size() <= bound, "length bound exceeded " + ctx);
    if (out.size() <= bound) worst_slack = std::min(worst_slack, bound - out.size());
    ++done;
  }
  return {t.failures == 0, std::to_string(done) + " derivations, |out| <= 3|in| + 10, least slack " +
                               std::to_string(worst_slack) + t.suffix()};
}

// --- criteria 5 and 6 -----------------------------------------------------

struct CorpusResult {
  Outcome normal_forms;
  Outcome routes;
};

CorpusResult corpus() {
  using namespace transform;
  Tally t5, t6;
  std::size_t formulas = 0, id_formulas = 0, tautologies = 0, id_tautologies = 0, implicative_fixed = 0;
  std::size_t largest_direct = 0, largest_reduction = 0, largest_translated = 0;
  auto start = Clock::now();
  for_each_formula(5, 3, Fragment::Positive, [&](const Formula& f) {
    ++formulas;
    if (formulas % 250000 == 0)
      std::fprintf(stderr, "  corpus: %zu formulas, %.0f s\n", formulas, seconds_since(start));
    const std::string text = print(f);
    const bool id = !f.has_conj();
    const std::uint64_t table = testing::oracle_table(f, 3);

    // Normal forms.
    GammaForm g = gamma(f);
    t5.expect(testing::oracle_gamma_normal(g.formula) && gamma_normal(g.formula), "gamma leaves a redex in " + text);
    t5.expect(testing::oracle_table(g.formula, 3) == table, "gamma changes the truth table of " + text);
    auto ge = gamma_equivalence(f);
    audit(ge.forward);
    audit(ge.backward);
    t5.expect(tactics::check_equivalence(ge) && ge.left == f && ge.right == g.formula,
              "gamma equivalence fails for " + text);
    Formula tf = f;
    if (id) {
      ++id_formulas;
      tf = tau(f);
      t5.expect(!testing::oracle_has(tf, Connective::Disj), "tau leaves a disjunction in " + text);
      t5.expect(testing::oracle_table(tf, 3) == table, "tau changes the truth table of " + text);
      auto te = tau_equivalence(f);
      audit(te.forward);
      audit(te.backward);
      t5.expect(tactics::check_equivalence(te) && te.left == f && te.right == tf, "tau equivalence fails for " + text);
    }

    // Routes.
    if (!testing::oracle_tautology(f, 3)) return;
    ++tautologies;
    auto direct = kalmar::prove(f, CalculusId::P);
    auto reduced = prove_P_reduction(f);
    const auto* dd = std::get_if<Derivation>(&direct);
    const auto* rd = std::get_if<Derivation>(&reduced);
    if (t6.expect(dd && closed_proof_of(*dd, f, CalculusId::P), "direct route fails on " + text)) {
      audit(*dd);
      largest_direct = std::max(largest_direct, dd->size());
    }
    if (t6.expect(rd && closed_proof_of(*rd, f, CalculusId::P), "reduction route fails on " + text)) {
      audit(*rd);
      largest_reduction = std::max(largest_reduction, rd->size());
    }
    if (!id) return;
    ++id_tautologies;
    auto idp = kalmar::prove(f, CalculusId::ID);
    const auto* ip = std::get_if<Derivation>(&idp);
    if (!t6.expect(ip && closed_proof_of(*ip, f, CalculusId::ID), "ID proof fails on " + text)) return;
    audit(*ip);
    Derivation tr = translate_derivation(*ip);
    audit(tr);
    largest_translated = std::max(largest_translated, tr.size());
    t6.expect(closed_proof_of(tr, tf, CalculusId::I), "translation fails on " + text);
    if (!f.has_disj()) {
      if (t6.expect(tf == f, "tau moves implicative " + text)) ++implicative_fixed;
    }
  });
  const std::uint64_t want_all = testing::oracle_formula_count(5, 3, 3);
  const std::uint64_t want_id = testing::oracle_formula_count(5, 3, 2);
  const std::uint64_t want_imp = testing::oracle_formula_count(5, 3, 1);
  t5.expect(formulas == want_all && id_formulas == want_id, "corpus size differs from the closed form");
  std::size_t implicative_tautologies = 0;
  for_each_formula(5, 3, Fragment::Implicative,
                   [&](const Formula& f) { implicative_tautologies += testing::oracle_tautology(f, 3); });
  t6.expect(implicative_fixed == implicative_tautologies, "implicative fixed-point count differs");
  std::fprintf(stderr, "  corpus: done in %.0f s (%llu implicative formulas)\n", seconds_since(start),
               static_cast<unsigned long long>(want_imp));

  CorpusResult r;
  r.normal_forms = {t5.failures == 0, std::to_string(formulas) + " positive formulas, " + std::to_string(id_formulas) +
                                          " implicative-disjunctive" + t5.suffix()};
  r.routes = {t6.failures == 0,
              std::to_string(tautologies) + " positive tautologies on both routes (largest " +
                  std::to_string(largest_direct) + " / " + std::to_string(largest_reduction) + " steps), " +
                  std::to_string(id_tautologies) + " ID tautologies translated (largest " +
                  std::to_string(largest_translated) + " steps), " + std::to_string(implicative_fixed) +
                  " implicative fixed points" + t6.suffix()};
  return r;
}

// --- criterion 7 ----------------------------------------------------------

Outcome lemma_suite() {
  Tally t;
  for (const auto& g : testing::lemma_goldens()) {
    std::string why = testing::check_lemma_golden(g, std::ref(audit));
    t.expect(why.empty(), std::string(tactics::to_string(g.id)) + ": " + why);
  }
  return {t.failures == 0 && testing::lemma_goldens().size() == tactics::lemma_count,
          std::to_string(testing::lemma_goldens().size()) + " lemma statements" + t.suffix()};
}

}  // namespace

int main(int argc, char** argv) {
  std::set<int> chosen;
  for (int i = 1; i < argc; ++i) {
    int n = std::atoi(argv[i]);
    if (n < 1 || n > 8) {
      std::fprintf(stderr, "usage: %s [criterion 1..8 ...]\n", argv[0]);
      return 2;
    }
    chosen.insert(n);
  }
  if (chosen.empty()) chosen = {1, 2, 3, 4, 5, 6, 7, 8};
  auto wants = [&](int n) { return chosen.contains(n); };

  const char* names[] = {"",
                         "completeness sweep, ID, 2 atoms, <= 4 connectives",
                         "soundness of every derivation produced",
                         "line certificates, 500 random pairs per fragment",
                         "deduction theorem contract",
                         "gamma and tau normal forms, <= 5 connectives over 3 atoms",
                         "route agreement and translation",
                         "lemma library golden suite",
                         "proof-file round trip"};
  Outcome results[9];
  auto start = Clock::now();
  auto stage = [&](int n, auto&& body) {
    if (!wants(n)) return;
    std::fprintf(stderr, "criterion %d: %s\n", n, names[n]);
    results[n] = body();
  };
  stage(1, completeness_sweep);
  if (wants(8) && !wants(1)) completeness_sweep();
  stage(3, line_property);
  stage(4, deduction_contract);
  if (wants(5) || wants(6)) {
    std::fprintf(stderr, "criteria 5 and 6: corpus pass\n");
    CorpusResult c = corpus();
    results[5] = c.normal_forms;
    results[6] = c.routes;
  }
  stage(7, lemma_suite);
  stage(8, proof_file_round_trip);
  results[2] = {audit.failures == 0 && audit.derivations >= 1000,
                std::to_string(audit.derivations) + " derivations entail their conclusions (required >= 1000)" +
                    (audit.failures ? "; " + std::to_string(audit.failures) + " failures, first " + audit.first_failure
                                    : "")};

  bool all = true;
  for (int n = 1; n <= 8; ++n) {
    if (!wants(n)) continue;
    all = all && results[n].pass;
    std::printf("%s criterion %d: %s: %s\n", results[n].pass ? "PASS" : "FAIL", n, names[n], results[n].detail.c_str());
  }
  std::printf("total %.0f s\n", seconds_since(start));
  return all ? 0 : 1;
}
