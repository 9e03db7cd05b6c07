#include "posprop/proof_io.hpp"

#include <charconv>

#include "posprop/error.hpp"

namespace posprop {

std::string write_proof(const Derivation& d) {
  std::string out = "calculus: ";
  out += to_string(d.calculus());
  out += '\n';
  for (const auto& h : d.hypotheses()) {
    out += "hyp: ";
    out += print(h);
    out += '\n';
  }
  std::size_t n = 0;
  for (const auto& s : d.steps()) {
    out += std::to_string(++n);
    switch (s.rule) {
      case Rule::Axiom:
        out += ". axiom ";
        out += to_string(s.scheme);
        break;
      case Rule::Hypothesis:
        out += ". hyp";
        break;
      case Rule::ModusPonens:
        out += ". mp " + std::to_string(s.major + 1) + ' ' + std::to_string(s.minor + 1);
        break;
    }
    out += ' ';
    out += print(s.formula);
    out += '\n';
  }
  return out;
}

namespace {

[[noreturn]] void bad_line(std::size_t line, const std::string& expected) {
  throw ParseError(line, expected, "line " + std::to_string(line) + ": expected " + expected);
}

Formula parse_on_line(std::string_view text, std::size_t line) {
  try {
    return parse(text);
  } catch (const ParseError& e) {
    throw ParseError(line, e.expected(), "line " + std::to_string(line) + ", " + e.what());
  }
}

// Reads a decimal number followed by `sep`; advances `rest` past both.
std::optional<std::uint32_t> take_number(std::string_view& rest, char sep) {
  std::uint32_t value = 0;
  auto [ptr, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), value);
  if (ec != std::errc{} || ptr == rest.data() || ptr == rest.data() + rest.size() || *ptr != sep) return std::nullopt;
  rest.remove_prefix(static_cast<std::size_t>(ptr - rest.data()) + 1);
  return value;
}

bool take_prefix(std::string_view& rest, std::string_view prefix) {
  if (!rest.starts_with(prefix)) return false;
  rest.remove_prefix(prefix.size());
  return true;
}

}  // namespace

Derivation read_proof(std::string_view text) {
  std::vector<std::string_view> lines;
  while (!text.empty()) {
    auto nl = text.find('\n');
    lines.push_back(text.substr(0, nl));
    if (nl == std::string_view::npos) break;
    text.remove_prefix(nl + 1);
  }
  std::size_t at = 0;
  auto line_no = [&] { return at + 1; };

  if (lines.empty()) bad_line(1, "'calculus: I|ID|IC|P'");
  std::string_view header = lines[0];
  if (!take_prefix(header, "calculus: ")) bad_line(1, "'calculus: I|ID|IC|P'");
  auto calc = calculus_from_string(header);
  if (!calc) bad_line(1, "calculus name I, ID, IC or P");
  ++at;

  std::vector<Formula> hyps;
  while (at < lines.size() && lines[at].starts_with("hyp: ")) {
    hyps.push_back(parse_on_line(lines[at].substr(5), line_no()));
    ++at;
  }

  std::vector<Step> steps;
  for (; at < lines.size(); ++at) {
    std::string_view rest = lines[at];
    auto number = take_number(rest, '.');
    if (!number || *number != steps.size() + 1)
      bad_line(line_no(), "step number " + std::to_string(steps.size() + 1) + " followed by '.'");
    if (take_prefix(rest, " axiom ")) {
      auto scheme = scheme_from_string(rest.substr(0, 3));
      if (!scheme || rest.size() < 4 || rest[3] != ' ') bad_line(line_no(), "scheme name Ax1..Ax9");
      steps.push_back(Step::axiom(*scheme, parse_on_line(rest.substr(4), line_no())));
    } else if (take_prefix(rest, " hyp ")) {
      steps.push_back(Step::hypothesis(parse_on_line(rest, line_no())));
    } else if (take_prefix(rest, " mp ")) {
      auto major = take_number(rest, ' ');
      auto minor = take_number(rest, ' ');
      if (!major || !minor || *major == 0 || *minor == 0) bad_line(line_no(), "'mp <major> <minor> <formula>'");
      steps.push_back(Step::modus_ponens(*major - 1, *minor - 1, parse_on_line(rest, line_no())));
    } else {
      bad_line(line_no(), "'axiom', 'hyp' or 'mp'");
    }
  }
  if (steps.empty()) bad_line(line_no(), "at least one step");
  return Derivation(*calc, std::move(hyps), std::move(steps));
}

nlohmann::json proof_to_json(const Derivation& d) {
  nlohmann::json j;
  j["calculus"] = to_string(d.calculus());
  j["hypotheses"] = nlohmann::json::array();
  for (const auto& h : d.hypotheses()) j["hypotheses"].push_back(print(h));
  auto& steps = j["steps"] = nlohmann::json::array();
  std::size_t n = 0;
  for (const auto& s : d.steps()) {
    nlohmann::json step{{"n", ++n}};
    switch (s.rule) {
      case Rule::Axiom:
        step["rule"] = "axiom";
        step["scheme"] = to_string(s.scheme);
        break;
      case Rule::Hypothesis:
        step["rule"] = "hyp";
        break;
      case Rule::ModusPonens:
        step["rule"] = "mp";
        step["major"] = s.major + 1;
        step["minor"] = s.minor + 1;
        break;
    }
    step["formula"] = print(s.formula);
    steps.push_back(std::move(step));
  }
  return j;
}

Derivation proof_from_json(const nlohmann::json& j) {
  auto fail = [](const std::string& what) -> Derivation { throw ParseError(0, what, "proof JSON: expected " + what); };
  try {
    auto calc = calculus_from_string(j.at("calculus").get<std::string>());
    if (!calc) return fail("calculus name I, ID, IC or P");
    std::vector<Formula> hyps;
    for (const auto& h : j.at("hypotheses")) hyps.push_back(parse(h.get<std::string>()));
    std::vector<Step> steps;
    for (const auto& s : j.at("steps")) {
      const auto rule = s.at("rule").get<std::string>();
      Formula f = parse(s.at("formula").get<std::string>());
      if (rule == "axiom") {
        auto scheme = scheme_from_string(s.at("scheme").get<std::string>());
        if (!scheme) return fail("scheme name Ax1..Ax9");
        steps.push_back(Step::axiom(*scheme, std::move(f)));
      } else if (rule == "hyp") {
        steps.push_back(Step::hypothesis(std::move(f)));
      } else if (rule == "mp") {
        auto major = s.at("major").get<std::uint32_t>();
        auto minor = s.at("minor").get<std::uint32_t>();
        if (major == 0 || minor == 0) return fail("1-based step numbers");
        steps.push_back(Step::modus_ponens(major - 1, minor - 1, std::move(f)));
      } else {
        return fail("rule axiom, hyp or mp");
      }
    }
    if (steps.empty()) return fail("at least one step");
    return Derivation(*calc, std::move(hyps), std::move(steps));
  } catch (const nlohmann::json::exception& e) {
    return fail(std::string("well-formed proof object (") + e.what() + ")");
  }
}

}  // namespace posprop
