#include "conway/cli.hpp"

#include <algorithm>
#include <cctype>
#include <exception>
#include <istream>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"

#include "conway/cfrac.hpp"
#include "conway/error.hpp"
#include "conway/json_io.hpp"
#include "conway/lyapunov.hpp"
#include "conway/render.hpp"
#include "conway/topograph.hpp"

namespace conway {

namespace {

using json_io::Json;
using json_io::to_json;

struct Request {
  std::string command;
  std::string action;
  std::vector<std::string> inputs;
  std::string format = "text";
  bool format_given = false;
  int precision = 12;
  std::size_t steps = 100;
  int depth = 4;
};

std::string trim(std::string s) {
  const auto not_space = [](unsigned char ch) { return !std::isspace(ch); };
  s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
  s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
  return s;
}

// Comma-separated turns, e.g. R,L,R,R; accepted back by the turn parser.
std::string turns_text(const TurnWord& w) {
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out += ",";
    out.push_back(static_cast<char>(w[i]));
  }
  return out;
}

bool looks_like_expansion(const std::string& s) { return !s.empty() && (s[0] == '[' || (s.size() > 1 && s[0] == '-' && s[1] == '[')); }

ContinuedFraction expansion_of(const std::string& text) {
  if (looks_like_expansion(text)) return ContinuedFraction::parse(text);
  return cf::expand_any(QuadraticIrrational::parse(text));
}

QuadraticIrrational value_of(const std::string& text) {
  if (looks_like_expansion(text)) return cf::value(ContinuedFraction::parse(text));
  return QuadraticIrrational::parse(text);
}

void expect_inputs(const Request& r, std::size_t n, const char* usage) {
  if (r.inputs.size() != n) {
    throw ParseError(r.command + " " + r.action + " expects " + std::to_string(n) + " input(s): " + usage);
  }
}

class Emitter {
 public:
  Emitter(const Request& r, std::ostream& out) : r_(r), out_(out) {}

  bool json() const { return r_.format == "json"; }

  void emit(const Json& result, const std::string& text) {
    if (json()) {
      Json env{{"command", r_.command}, {"action", r_.action}, {"input", r_.inputs}, {"result", result}};
      out_ << env.dump(2) << "\n";
    } else {
      out_ << text;
      if (!text.empty() && text.back() != '\n') out_ << "\n";
    }
  }

 private:
  const Request& r_;
  std::ostream& out_;
};

void run_cf(const Request& r, std::ostream& out) {
  Emitter em(r, out);
  const int digits = r.precision;
  expect_inputs(r, 1, "a value such as (1+sqrt(5))/2 or an expansion such as [0,2,3;(2)]");
  const std::string& input = r.inputs[0];
  if (r.action == "expand") {
    const ContinuedFraction cf = looks_like_expansion(input) ? cf::to_canonical(ContinuedFraction::parse(input)) : expansion_of(input);
    em.emit(Json{{"expansion", to_json(cf)}, {"value", to_json(cf::value(cf), digits)}}, cf.to_string());
  } else if (r.action == "value") {
    const QuadraticIrrational x = value_of(input);
    em.emit(Json{{"value", to_json(x, digits)}}, x.to_string());
  } else if (r.action == "conjugate") {
    const ContinuedFraction conj = cf::conjugate(expansion_of(input));
    em.emit(Json{{"expansion", to_json(conj)}, {"value", to_json(cf::value(conj), digits)}}, conj.to_string());
  } else if (r.action == "negate") {
    const ContinuedFraction neg = cf::negate(expansion_of(input));
    em.emit(Json{{"expansion", to_json(neg)}, {"value", to_json(cf::value(neg), digits)}}, neg.to_string());
  } else {  // galois
    const QuadraticIrrational x = value_of(input);
    const bool galois = is_galois(x);
    Json result{{"galois", galois}, {"value", to_json(x, digits)}};
    if (!x.is_rational()) {
      const ContinuedFraction cf = cf::expand(x);
      result["expansion"] = to_json(cf);
      result["pure_periodic"] = cf::is_pure_periodic(cf);
      result["conjugate"] = to_json(x.conjugate(), digits);
    }
    em.emit(result, galois ? "true" : "false");
  }
}

void run_form(const Request& r, std::ostream& out) {
  Emitter em(r, out);
  const int digits = r.precision;
  expect_inputs(r, 1, "a form such as 1,-2,-2 or x^2-2*x*y-2*y^2");
  const QuadraticForm q = QuadraticForm::parse(r.inputs[0]);
  if (r.action == "classify") {
    const std::string cls(to_string(classify(q)));
    em.emit(Json{{"form", to_json(q)}, {"class", cls}}, cls);
  } else if (r.action == "values") {
    const SuperbaseTriple t = form_values(q);
    em.emit(Json{{"form", to_json(q)}, {"triple", to_json(t)}, {"markov_discriminant", markov_discriminant(t).get_str()}},
            t.to_string());
  } else if (r.action == "roots") {
    const FormRoots rt = roots(q);
    const auto text = [](const std::optional<QuadraticIrrational>& x) { return x ? x->to_string() : std::string("inf"); };
    em.emit(Json{{"form", to_json(q)}, {"roots", to_json(rt, digits)}}, text(rt.dominant) + "\n" + text(rt.conjugate));
  } else if (r.action == "galois") {
    const bool galois = is_galois_form(q);
    Json result{{"form", to_json(q)}, {"galois", galois}, {"triple", to_json(form_values(q))}};
    if (classify(q) == FormClass::IndefiniteAnisotropic) {
      result["dominant_root_pure_periodic"] = cf::is_pure_periodic(cf::expand(*roots(q).dominant));
    }
    em.emit(result, galois ? "true" : "false");
  } else if (r.action == "river") {
    const RiverDescription river = find_river(q);
    std::ostringstream text;
    text << "entry_path: " << turns_text(river.entry_path) << "\n";
    text << "reflected: " << (river.reflected ? "true" : "false") << "\n";
    text << "path_root: " << river.path_root.to_string() << " = " << river.path_expansion.to_string() << "\n";
    text << "landing: " << river.landing.to_string() << "\n";
    text << "period: " << turns_text(river.river_period) << " (" << river.river_period.size() << " turns)\n";
    text << "states:";
    for (const RiverEdge& e : river.period_states) {
      text << " (" << e.positive.get_str() << "," << e.negative.get_str() << ")";
    }
    text << "\n";
    em.emit(Json{{"form", to_json(q)}, {"river", to_json(river, digits)}}, text.str());
  } else if (r.action == "lakes") {
    const LakeDescription lakes = find_lakes(q);
    std::ostringstream text;
    text << "zero_vectors:";
    for (const auto& [x, y] : lakes.zero_vectors) text << " (" << x.get_str() << "," << y.get_str() << ")";
    text << "\nreduced: " << lakes.reduced.to_string() << "  (m=" << lakes.m.get_str() << ", n=" << lakes.n.get_str() << ")\n";
    text << "river_word: " << turns_text(lakes.river_word) << "\n";
    em.emit(Json{{"form", to_json(q)}, {"lakes", to_json(lakes)}}, text.str());
  } else {  // render
    const TopographNeighborhood nb = topograph_neighborhood(q, r.depth);
    if (r.format == "json") em.emit(to_json(nb), "");
    else if (r.format == "svg") out << render_svg(nb);
    else out << render_dot(nb);
  }
}

void run_lyapunov(const Request& r, std::ostream& out) {
  Emitter em(r, out);
  const int digits = r.precision;
  if (r.action == "exact") {
    expect_inputs(r, 1, "a value or expansion");
    const MonoidExponent e = lambda_monoid_exact(expansion_of(r.inputs[0]));
    em.emit(to_json(e, digits),
            "rho=" + e.rho.to_string() + " m=" + std::to_string(e.turns) + " lambda=" + e.to_decimal(digits));
    return;
  }
  if (r.action == "monoid") {
    expect_inputs(r, 1, "a path: value, expansion or turn word");
    const GrowthSeries s = lambda_monoid(PathSpec::parse(r.inputs[0]), r.steps);
    const std::size_t n = s.points.empty() ? 0 : s.points.back().n;
    em.emit(to_json(s, digits), "n=" + std::to_string(n) + " w_n=" + (s.points.empty() ? std::string("1") : s.points.back().w.get_str()) +
                                    " log_ratio=" + s.last_log_ratio(digits) + (s.exhausted ? " (path ended)" : ""));
    return;
  }
  expect_inputs(r, 2, "a form and a path");
  const QuadraticForm q = QuadraticForm::parse(r.inputs[0]);
  const PathSpec path = PathSpec::parse(r.inputs[1]);
  if (r.action == "form") {
    const GrowthSeries s = lambda_form(q, path, r.steps);
    const std::size_t n = s.points.empty() ? 0 : s.points.back().n;
    em.emit(to_json(s, digits), "n=" + std::to_string(n) + " abs_Q_n=" + (s.points.empty() ? std::string("-") : s.points.back().norm.get_str()) +
                                    " log_ratio=" + s.last_log_ratio(digits) + (s.exhausted ? " (path ended)" : ""));
  } else if (r.action == "ratio") {
    const TheoremRatio t = theorem_ratio(q, path, r.steps, digits);
    em.emit(to_json(t), t.decimal);
  } else {  // sandwich
    const SandwichReport s = sandwich_check(q, path, r.steps);
    em.emit(to_json(s), std::string(s.holds ? "holds" : "fails") + " steps=" + std::to_string(s.steps) +
                            (s.first_failure ? " first_failure=" + std::to_string(*s.first_failure) : ""));
  }
}

// CLI11 reads `[a,b]` and `a,b` as lists and `-x` as an option, which
// clashes with expansions, forms and negative values. Only our own option
// names go to CLI11; every other token is positional and handled here.
struct SplitArgs {
  std::vector<std::string> options;  // subcommand name first
  std::vector<std::string> positionals;
};

SplitArgs split_arguments(const std::vector<std::string>& args) {
  static const std::vector<std::string> with_value = {"--format", "-f", "--precision", "--steps", "-n", "--depth"};
  static const std::vector<std::string> flags = {"--help", "-h"};
  SplitArgs out;
  std::size_t i = 0;
  if (!args.empty() && args[0].rfind('-', 0) != 0) out.options.push_back(args[i++]);
  for (; i < args.size(); ++i) {
    const std::string& a = args[i];
    if (a == "--") {
      out.positionals.insert(out.positionals.end(), args.begin() + static_cast<std::ptrdiff_t>(i) + 1, args.end());
      break;
    }
    const std::string name = a.substr(0, a.find('='));
    if (std::find(flags.begin(), flags.end(), a) != flags.end()) {
      out.options.push_back(a);
    } else if (std::find(with_value.begin(), with_value.end(), name) != with_value.end()) {
      out.options.push_back(a);
      if (name == a && i + 1 < args.size()) out.options.push_back(args[++i]);
    } else {
      out.positionals.push_back(a);
    }
  }
  return out;
}

void check_action(const std::string& command, const std::string& action, const std::vector<std::string>& allowed) {
  if (std::find(allowed.begin(), allowed.end(), action) != allowed.end()) return;
  std::string list;
  for (const auto& a : allowed) list += (list.empty() ? "" : "|") + a;
  throw ParseError(command + ": unknown action '" + action + "', expected " + list);
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  Request req;
  CLI::App app{"Exact computations on Conway topographs of integer binary quadratic forms", "topograph"};
  app.require_subcommand(1, 1);

  const auto add_common = [&req](CLI::App* sub) {
    sub->add_option("-f,--format", req.format, "Output format")
        ->check(CLI::IsMember({"json", "text", "dot", "svg"}))
        ->each([&req](const std::string&) { req.format_given = true; });
    sub->add_option("--precision", req.precision, "Decimal digits for approximate output")->check(CLI::Range(0, 10000));
    sub->footer("Inputs: values such as (1+sqrt(5))/2, expansions such as [0,2,3;(2)], forms such as 1,-2,-2 or "
                "x^2-2*x*y-2*y^2, and paths (a value, an expansion or a turn word like LR(RL)). '-' reads a line "
                "from stdin.");
  };
  const std::vector<std::string> cf_actions = {"expand", "value", "conjugate", "negate", "galois"};
  const std::vector<std::string> form_actions = {"classify", "values", "roots", "galois", "river", "lakes", "render"};
  const std::vector<std::string> lyap_actions = {"form", "monoid", "ratio", "exact", "sandwich"};

  CLI::App* cf_cmd = app.add_subcommand("cf", "cf <expand|value|conjugate|negate|galois> <input>");
  add_common(cf_cmd);
  CLI::App* form_cmd = app.add_subcommand("form", "form <classify|values|roots|galois|river|lakes|render> <form>");
  add_common(form_cmd);
  form_cmd->add_option("--depth", req.depth, "Levels drawn by render")->check(CLI::Range(0, 12));
  CLI::App* lyap_cmd = app.add_subcommand("lyapunov", "lyapunov <form|monoid|ratio|exact|sandwich> [form] <path>");
  add_common(lyap_cmd);
  lyap_cmd->add_option("-n,--steps", req.steps, "Number of turns to walk")->check(CLI::Range(0, 10'000'000));

  SplitArgs split = split_arguments(args);
  try {
    std::vector<std::string> reversed = split.options;
    std::reverse(reversed.begin(), reversed.end());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitParse;
  }
  if (split.positionals.empty()) {
    err << "missing action; run with --help for usage\n";
    return kExitParse;
  }
  req.action = split.positionals.front();
  req.inputs.assign(split.positionals.begin() + 1, split.positionals.end());

  try {
    for (std::string& input : req.inputs) {
      if (input == "-") {
        std::string line;
        if (!std::getline(in, line)) throw ParseError("expected input on stdin");
        input = line;
      }
      input = trim(input);
    }
    if (cf_cmd->parsed()) {
      req.command = "cf";
      check_action(req.command, req.action, cf_actions);
      run_cf(req, out);
    } else if (form_cmd->parsed()) {
      req.command = "form";
      check_action(req.command, req.action, form_actions);
      if (req.action == "render" && !req.format_given) req.format = "dot";
      run_form(req, out);
    } else {
      req.command = "lyapunov";
      check_action(req.command, req.action, lyap_actions);
      run_lyapunov(req, out);
    }
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const DomainError& e) {
    err << "domain error: " << e.what() << "\n";
    return kExitDomain;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitOk;
}

}  // namespace conway
