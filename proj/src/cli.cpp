#include "posprop/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>

#include "posprop/error.hpp"
#include "posprop/formula.hpp"
#include "posprop/kernel.hpp"
#include "posprop/proof_io.hpp"
#include "posprop/semantics.hpp"
#include "posprop/transform.hpp"

namespace posprop::cli {

namespace {

// Thrown for bad flags or unreadable input; reported with exit code 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Formula parse_formula(const std::string& text) {
  try {
    return parse(text);
  } catch (const ParseError& e) {
    throw UsageError(std::string("cannot parse formula: ") + e.what());
  }
}

CalculusId parse_calc(const std::string& name, const Formula* f) {
  if (name.empty()) return calculus_for(f ? fragment_of(*f) : Fragment::Positive);
  if (auto c = calculus_from_string(name)) return *c;
  throw UsageError("unknown calculus " + name + " (expected I, ID, IC or P)");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream o(path, std::ios::binary);
  if (!o) throw UsageError("cannot write " + path);
  o << text;
  if (!o) throw UsageError("cannot write " + path);
}

Derivation load(const std::string& path, bool json) {
  const std::string text = read_file(path);
  try {
    if (json) return proof_from_json(nlohmann::json::parse(text));
    return read_proof(text);
  } catch (const ParseError& e) {
    throw UsageError(path + ":" + std::to_string(e.column()) + ": " + e.what());
  } catch (const nlohmann::json::exception& e) {
    throw UsageError(path + ": " + e.what());
  }
}

std::string serialize(const Derivation& d, bool json) { return json ? proof_to_json(d).dump(2) + "\n" : write_proof(d); }

// Emits to `path`, or to `out` when no path is given.
void emit(const Derivation& d, const std::string& path, bool json, std::ostream& out) {
  if (path.empty()) {
    out << serialize(d, json);
  } else {
    write_file(path, serialize(d, json));
    out << d.size() << " steps\n";
  }
}

int report_countermodel(const Assignment& v, std::ostream& out) {
  out << "not a tautology\ncountermodel " << to_string(v) << "\n";
  return 1;
}

int cmd_prove(const std::string& text, const std::string& calc_name, const std::string& route, const std::string& path,
              bool json, std::ostream& out, std::ostream& err) {
  const Formula f = parse_formula(text);
  const CalculusId calc = parse_calc(calc_name, &f);
  if (!in_fragment(f, fragment_of(calc)))
    throw UsageError(print(f) + " is not a formula of calculus " + to_string(calc));
  if (route == "reduction" && calc != CalculusId::P) throw UsageError("--route reduction applies to calculus P");
  const auto r = transform::prove(f, calc, route == "reduction" ? transform::Route::Reduction : transform::Route::Direct);
  if (const auto* v = std::get_if<Assignment>(&r)) return report_countermodel(*v, out);
  const Derivation& d = std::get<Derivation>(r);
  require_checked(d, "prove");
  emit(d, path, json, out);
  if (path.empty()) err << d.size() << " steps\n";
  return 0;
}

int cmd_check(const std::string& path, bool json, std::ostream& out) {
  const Derivation d = load(path, json);
  const CheckReport r = check(d);
  if (!r.ok()) {
    out << "invalid\n" << r.summary() << "\n";
    return 1;
  }
  out << "ok " << to_string(d.calculus()) << " " << d.size() << " steps\n";
  for (const auto& h : d.hypotheses()) out << "hyp " << print(h) << "\n";
  out << "conclusion " << print(d.conclusion()) << "\n";
  return 0;
}

int cmd_tautology(const std::string& text, std::ostream& out) {
  const Formula f = parse_formula(text);
  const Verdict v = is_tautology(f);
  if (!v) return report_countermodel(*v.countermodel, out);
  out << "tautology\n";
  return 0;
}

int cmd_translate(const std::string& in, const std::string& path, bool json, std::ostream& out) {
  const Derivation d = load(in, json);
  if (!check(d).ok()) {
    out << "invalid\n" << check(d).summary() << "\n";
    return 1;
  }
  if (!d.closed()) throw UsageError("translate expects a derivation without hypotheses");
  if (!calculus_within(d.calculus(), CalculusId::ID))
    throw UsageError(std::string("translate expects an ID derivation, not ") + to_string(d.calculus()));
  emit(transform::translate_derivation(d), path, json, out);
  return 0;
}

int cmd_normalize(const std::string& text, bool use_gamma, bool use_tau, bool trace, std::ostream& out) {
  if (use_gamma == use_tau) throw UsageError("normalize needs exactly one of --gamma and --tau");
  const Formula f = parse_formula(text);
  if (use_tau) {
    if (!in_fragment(f, Fragment::ImplicativeDisjunctive)) throw UsageError("--tau needs a formula without &");
    out << print(transform::tau(f)) << "\n";
    return 0;
  }
  const transform::GammaForm g = transform::gamma(f);
  if (trace) {
    Formula cur = f;
    for (const auto& s : g.trace) {
      cur = transform::replay(cur, {s});
      out << "(" << transform::to_string(s.rule) << ") at ";
      if (s.path.empty()) out << "root";
      for (auto d : s.path) out << (d == 0 ? 'L' : 'R');
      out << ": " << print(cur) << "\n";
    }
  }
  out << print(g.formula) << "\n";
  return 0;
}

int cmd_decompose(const std::string& text, const std::string& mode, std::ostream& out) {
  const Formula f = parse_formula(text);
  transform::Decomposition d =
      mode == "implicative" ? transform::decompose_to_implicative(f) : transform::decompose(f);
  if (!tactics::check_equivalence(d.equivalence)) {
    out << "equivalence failed to check\n";
    return 1;
  }
  for (const auto& c : d.conjuncts) out << print(c) << "\n";
  return 0;
}

int cmd_enumerate(unsigned conn, unsigned atoms, const std::string& calc_name, const std::string& route, bool list,
                  std::ostream& out) {
  const CalculusId calc = parse_calc(calc_name.empty() ? "P" : calc_name, nullptr);
  if (route == "reduction" && calc != CalculusId::P) throw UsageError("--route reduction applies to calculus P");
  const transform::Route r = route == "reduction" ? transform::Route::Reduction : transform::Route::Direct;
  std::size_t formulas = 0, tautologies = 0, failed = 0, max_steps = 0, total_steps = 0;
  for_each_formula(conn, atoms, fragment_of(calc), [&](const Formula& f) {
    ++formulas;
    const auto res = transform::prove(f, calc, r);
    if (const auto* d = std::get_if<Derivation>(&res)) {
      ++tautologies;
      const bool ok = check(*d).ok() && d->closed() && d->conclusion() == f;
      if (!ok) ++failed;
      max_steps = std::max(max_steps, d->size());
      total_steps += d->size();
      if (list) out << d->size() << "\t" << print(f) << (ok ? "" : "\tFAILED") << "\n";
    } else if (eval(std::get<Assignment>(res), f)) {
      ++failed;
      if (list) out << "-\t" << print(f) << "\tBAD COUNTERMODEL\n";
    }
  });
  const double mean = tautologies ? static_cast<double>(total_steps) / static_cast<double>(tautologies) : 0.0;
  std::ostringstream m;
  m << std::fixed << std::setprecision(2) << mean;
  out << "calculus     " << to_string(calc) << "\n"
      << "formulas     " << formulas << "\n"
      << "tautologies  " << tautologies << "\n"
      << "failed       " << failed << "\n"
      << "max steps    " << max_steps << "\n"
      << "mean steps   " << m.str() << "\n";
  return failed == 0 ? 0 : 1;
}

int cmd_stats(const std::string& path, bool json, std::ostream& out) {
  const Derivation d = load(path, json);
  std::size_t hyps = 0, mps = 0;
  std::map<SchemeId, std::size_t> axioms;
  for (const auto& s : d.steps()) {
    switch (s.rule) {
      case Rule::Hypothesis: ++hyps; break;
      case Rule::ModusPonens: ++mps; break;
      case Rule::Axiom: ++axioms[s.scheme]; break;
    }
  }
  std::size_t longest = 0;
  for (const auto& s : d.steps()) longest = std::max<std::size_t>(longest, s.formula.size());
  out << "calculus         " << to_string(d.calculus()) << "\n"
      << "steps            " << d.size() << "\n"
      << "hypotheses       " << d.hypotheses().size() << "\n"
      << "hypothesis steps " << hyps << "\n"
      << "mp steps         " << mps << "\n"
      << "largest formula  " << longest << "\n"
      << "valid            " << (check(d).ok() ? "yes" : "no") << "\n";
  for (const auto& [s, n] : axioms) out << std::left << std::setw(17) << to_string(s) << n << "\n";
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Proof kernel and completeness engine for the positive propositional calculi I, ID, IC and P",
               "posprop"};
  app.require_subcommand(1);

  std::string formula, calc, route = "direct", output, input, mode = "id";
  bool json = false, use_gamma = false, use_tau = false, trace = false, list = false;
  unsigned conn = 0, atoms = 0;

  auto* prove = app.add_subcommand("prove", "Derive a tautology or print a countermodel");
  prove->add_option("formula", formula, "Formula to prove")->required();
  prove->add_option("--calc", calc, "I, ID, IC or P (default: least calculus containing the formula)");
  prove->add_option("--route", route, "direct or reduction (P only)")->check(CLI::IsMember({"direct", "reduction"}));
  prove->add_option("-o,--output", output, "Write the proof here instead of standard output");
  prove->add_flag("--json", json, "JSON proof format");

  auto* chk = app.add_subcommand("check", "Kernel-check a proof file");
  chk->add_option("proof", input, "Proof file")->required();
  chk->add_flag("--json", json, "JSON proof format");

  auto* taut = app.add_subcommand("tautology", "Decide a formula by truth table");
  taut->add_option("formula", formula, "Formula")->required();

  auto* tr = app.add_subcommand("translate", "Translate a closed ID proof into an I proof of the v-free form");
  tr->add_option("proof", input, "ID proof file")->required();
  tr->add_option("-o,--output", output, "Write the proof here instead of standard output");
  tr->add_flag("--json", json, "JSON proof format");

  auto* norm = app.add_subcommand("normalize", "Print a normal form");
  norm->add_option("formula", formula, "Formula")->required();
  norm->add_flag("--gamma", use_gamma, "Push & outward");
  norm->add_flag("--tau", use_tau, "Eliminate v");
  norm->add_flag("--trace", trace, "Print each rewrite (with --gamma)");

  auto* dec = app.add_subcommand("decompose", "Print conjuncts equivalent to the formula");
  dec->add_option("formula", formula, "Formula")->required();
  dec->add_option("--mode", mode, "id or implicative")->check(CLI::IsMember({"id", "implicative"}));

  auto* en = app.add_subcommand("enumerate", "Prove every tautology within bounds and summarize");
  en->add_option("--max-connectives", conn, "Connective bound")->required();
  en->add_option("--max-atoms", atoms, "Atoms p1..pK")->required()->check(CLI::Range(1u, 20u));
  en->add_option("--calc", calc, "I, ID, IC or P (default P)");
  en->add_option("--route", route, "direct or reduction (P only)")->check(CLI::IsMember({"direct", "reduction"}));
  en->add_flag("--list", list, "Print the proof length of every tautology");

  auto* st = app.add_subcommand("stats", "Proof length and axiom usage");
  st->add_option("proof", input, "Proof file")->required();
  st->add_flag("--json", json, "JSON proof format");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (prove->parsed()) return cmd_prove(formula, calc, route, output, json, out, err);
    if (chk->parsed()) return cmd_check(input, json, out);
    if (taut->parsed()) return cmd_tautology(formula, out);
    if (tr->parsed()) return cmd_translate(input, output, json, out);
    if (norm->parsed()) return cmd_normalize(formula, use_gamma, use_tau, trace, out);
    if (dec->parsed()) return cmd_decompose(formula, mode, out);
    if (en->parsed()) return cmd_enumerate(conn, atoms, calc, route, list, out);
    if (st->parsed()) return cmd_stats(input, json, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << "error: " << to_string(e.code()) << ": " << e.what() << "\n";
    return 2;
  }
  return 2;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, out, err);
}

}  // namespace posprop::cli
