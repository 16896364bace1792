#include "hyperreal/cli.hpp"

#include <CLI11.hpp>
#include <cstdlib>
#include <functional>
#include <json.hpp>
#include <ostream>

#include "hyperreal/calculus.hpp"
#include "hyperreal/error.hpp"
#include "hyperreal/expr.hpp"
#include "hyperreal/filters.hpp"
#include "hyperreal/hilbert.hpp"
#include "hyperreal/hyperreal.hpp"
#include "hyperreal/transfer.hpp"

namespace hyperreal::cli {

namespace {

using json = nlohmann::ordered_json;
using calculus::Expr;

struct Output {
  json result;
  std::string text;
};

json nullable(const std::optional<std::string>& s) { return s ? json(*s) : json(nullptr); }

std::string lower(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::string family_text(const std::vector<std::vector<int>>& lists) {
  return json(lists).dump();
}

struct Options {
  int precision = Precision::kDefault;
  bool json_mode = false;
  std::string expr;
  std::string expr2;
  std::string at;
  std::string to;
  std::string side = "both";
  int size = 0;
  std::string mode = "auto";
  std::string structure = "R";
  std::string direction = "backward";
  std::string constant = "omega";
  std::string variable = "r";
  bool galaxy = false;
};

Rational require_at(const Options& o, std::string_view command) {
  if (o.at.empty()) {
    throw CLI::RequiredError(std::string(command) + " needs --at");
  }
  return calculus::parse_rational(o.at);
}

HyperReal evaluate(const Options& o, const std::string& text, Precision p) {
  const Expr e = Expr::parse(text);
  if (e.variable() && !o.at.empty()) {
    return calculus::eval_hyper(e, HyperReal(calculus::parse_rational(o.at)), p);
  }
  return calculus::eval_hyper(e, p);
}

Output cmd_eval(const Options& o, Precision p) {
  const HyperReal v = evaluate(o, o.expr, p);
  json r;
  r["value"] = to_string(v);
  r["exact"] = v.is_exact();
  r["order_bound"] = v.order_bound() ? json(to_string(*v.order_bound())) : json(nullptr);
  return {r, to_string(v)};
}

Output cmd_classify(const Options& o, Precision p) {
  const HyperReal v = evaluate(o, o.expr, p);
  const std::string c(to_string(classify(v)));
  json r;
  r["value"] = to_string(v);
  r["class"] = c;
  return {r, c};
}

Output cmd_compare(const Options& o, Precision p) {
  const HyperReal a = evaluate(o, o.expr, p);
  const HyperReal b = evaluate(o, o.expr2, p);
  const std::string ord = lower(to_string(o.galaxy ? galaxy_compare(a, b) : compare(a, b)));
  json r;
  r["ordering"] = ord;
  r["mode"] = o.galaxy ? "galaxy" : "order";
  return {r, ord};
}

Output cmd_shadow(const Options& o, Precision p) {
  const std::string s = to_string(shadow(evaluate(o, o.expr, p)));
  json r;
  r["shadow"] = s;
  return {r, s};
}

Output cmd_diff(const Options& o, Precision p) {
  const auto d = calculus::derivative(Expr::parse(o.expr), require_at(o, "diff"), p);
  json r;
  r["differentiable"] = d.differentiable();
  r["value"] = d.value ? json(to_string(*d.value)) : json(nullptr);
  r["reason"] = d.differentiable() ? json(nullptr) : json(d.reason);
  json probes = json::array();
  for (const auto& probe : d.probes) {
    probes.push_back({{"increment", to_string(probe.increment)},
                      {"quotient", probe.quotient ? json(to_string(*probe.quotient))
                                                  : json(nullptr)}});
  }
  r["probes"] = probes;
  return {r, d.value ? to_string(*d.value) : "not differentiable: " + d.reason};
}

Output limit_output(const calculus::LimitResult& l) {
  json r;
  r["kind"] = std::string(to_string(l.kind));
  r["value"] = l.kind == calculus::LimitKind::Finite ? json(to_string(l.value)) : json(nullptr);
  r["reason"] = l.reason.empty() ? json(nullptr) : json(l.reason);
  return {r, to_string(l)};
}

Output cmd_limit(const Options& o, Precision p) {
  if (o.to.empty()) throw CLI::RequiredError("limit needs --to");
  calculus::LimitPoint at = calculus::LimitPoint::plus_infinity();
  if (o.to == "-inf") {
    at = calculus::LimitPoint::minus_infinity();
  } else if (o.to != "+inf" && o.to != "inf") {
    at = calculus::LimitPoint::at(calculus::parse_rational(o.to));
  }
  const calculus::Side side = o.side == "left"    ? calculus::Side::Left
                              : o.side == "right" ? calculus::Side::Right
                                                  : calculus::Side::Both;
  return limit_output(calculus::limit_fun(Expr::parse(o.expr), at, side, p));
}

Output cmd_seq_limit(const Options& o, Precision p) {
  return limit_output(calculus::limit_seq(Expr::parse(o.expr), p));
}

Output cmd_continuity(const Options& o, Precision p) {
  const bool c = calculus::continuity_at(Expr::parse(o.expr), require_at(o, "continuity"), p);
  json r;
  r["continuous"] = c;
  return {r, c ? "continuous" : "discontinuous"};
}

filters::SetFamily parse_family(const Options& o) {
  const filters::GroundSet g(o.size);
  json parsed;
  try {
    parsed = json::parse(o.expr);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::SyntaxError, "family must be a JSON array of arrays: " +
                                            std::string(e.what()));
  }
  if (!parsed.is_array()) throw Error(ErrorKind::SyntaxError, "family must be a JSON array");
  filters::SetFamily f(g);
  for (const auto& subset : parsed) {
    if (!subset.is_array()) throw Error(ErrorKind::SyntaxError, "each subset must be an array");
    unsigned mask = 0;
    for (const auto& e : subset) {
      if (!e.is_number_integer() || e.get<int>() < 0 || e.get<int>() >= o.size) {
        throw Error(ErrorKind::InvalidArgument,
                    "element " + e.dump() + " is outside {0, ..., " + std::to_string(o.size - 1) +
                        "}");
      }
      mask |= 1u << e.get<int>();
    }
    f.insert(static_cast<filters::Subset>(mask));
  }
  return f;
}

json report_json(const filters::FamilyReport& r) {
  json out;
  out["filter"] = r.is_filter;
  out["proper"] = r.is_proper;
  out["ultrafilter"] = r.is_ultrafilter;
  out["principal_generator"] = r.principal_generator ? json(*r.principal_generator) : json(nullptr);
  return out;
}

std::string report_text(const filters::FamilyReport& r) {
  std::string kind = !r.is_filter       ? "not a filter"
                     : r.is_ultrafilter ? "ultrafilter"
                     : r.is_proper      ? "proper filter, not an ultrafilter"
                                        : "improper filter, not an ultrafilter";
  if (r.principal_generator) kind += " (principal at " + std::to_string(*r.principal_generator) + ")";
  return kind;
}

Output cmd_filters_enumerate(const Options& o) {
  const filters::GroundSet g(o.size);
  std::string mode = o.mode;
  if (mode == "auto") {
    mode = o.size <= filters::GroundSet::kMaxExhaustiveSize ? "exhaustive" : "generator";
  }
  const auto found = filters::enumerate_ultrafilters(
      g, mode == "exhaustive" ? filters::EnumerationMode::Exhaustive
                              : filters::EnumerationMode::Generator);
  json r;
  r["size"] = o.size;
  r["mode"] = mode;
  r["count"] = found.size();
  json families = json::array();
  json generators = json::array();
  std::string text;
  for (const auto& f : found) {
    const auto report = filters::classify_family(f);
    families.push_back(f.sorted_lists());
    generators.push_back(report.principal_generator ? json(*report.principal_generator)
                                                    : json(nullptr));
    text += (text.empty() ? "" : "\n") + std::string("principal at ") +
            (report.principal_generator ? std::to_string(*report.principal_generator) : "?") +
            ": " + family_text(f.sorted_lists());
  }
  r["ultrafilters"] = families;
  r["generators"] = generators;
  return {r, std::to_string(found.size()) + " ultrafilter(s)" + (text.empty() ? "" : "\n" + text)};
}

Output cmd_filters_classify(const Options& o) {
  const auto report = filters::classify_family(parse_family(o));
  return {report_json(report), report_text(report)};
}

Output cmd_filters_generate(const Options& o) {
  const auto f = filters::generate_filter(parse_family(o));
  const auto report = filters::classify_family(f);
  json r;
  r["family"] = f.sorted_lists();
  r["report"] = report_json(report);
  return {r, family_text(f.sorted_lists()) + "\n" + report_text(report)};
}

Output verdict_output(const transfer::Verdict& v, std::optional<transfer::Direction> direction) {
  json r;
  r["verdict"] = std::string(to_string(v.kind));
  if (direction) r["direction"] = std::string(to_string(*direction));
  r["free_vars"] = v.free_vars;
  r["external_symbols"] = v.external_symbols;
  r["reason"] = v.reason.empty() ? json(nullptr) : json(v.reason);
  r["transformed_text"] = nullable(v.transformed_text);
  std::string text = (direction ? std::string(to_string(*direction)) + "-" : "") +
                     std::string(to_string(v.kind));
  auto braced = [](const std::vector<std::string>& names) {
    std::string out;
    for (const auto& s : names) out += (out.empty() ? "" : ", ") + s;
    return " {" + out + "}";
  };
  if (!v.free_vars.empty()) text += braced(v.free_vars);
  if (!v.external_symbols.empty() && v.kind == transfer::VerdictKind::NotTransferable) {
    text += braced(v.external_symbols);
  }
  if (!v.reason.empty()) text += ": " + v.reason;
  if (v.transformed_text) text += "\n" + *v.transformed_text;
  return {r, text};
}

Output cmd_transfer_check(const Options& o) {
  return verdict_output(transfer::classify(o.expr, transfer::Structure::by_name(o.structure)),
                        std::nullopt);
}

Output cmd_transfer_star(const Options& o) {
  const auto f = transfer::Formula::parse(o.expr, transfer::Structure::by_name(o.structure));
  transfer::Verdict v = transfer::check_statement(f);
  v.transformed_text = transfer::star_transform(f).to_string();
  Output out = verdict_output(v, std::nullopt);
  out.text = *v.transformed_text;
  return out;
}

Output cmd_transfer_transferable(const Options& o) {
  const auto direction =
      o.direction == "forward" ? transfer::Direction::Forward : transfer::Direction::Backward;
  const auto f = transfer::Formula::parse(o.expr, transfer::Structure::by_name(o.structure));
  return verdict_output(transfer::check_transferable(f, direction), direction);
}

Output cmd_transfer_weaken(const Options& o) {
  const auto f = transfer::Formula::parse(o.expr, transfer::Structure::by_name(o.structure));
  const auto weakened = transfer::existential_weakening(f, o.constant, o.variable);
  const auto v = transfer::check_transferable(weakened, transfer::Direction::Backward);
  Output out = verdict_output(v, transfer::Direction::Backward);
  out.result["formula"] = weakened.to_string();
  out.text = weakened.to_string() + "\n" + out.text;
  return out;
}

Output cmd_hilbert_classify(const Options& o, Precision p) {
  const auto v = hilbert::HVector::parse(o.expr, p);
  const std::string c(to_string(hilbert::vec_classify(v)));
  json r;
  r["class"] = c;
  r["norm_sq"] = to_string(hilbert::norm_sq(v));
  return {r, c};
}

Output cmd_hilbert_inner(const Options& o, Precision p) {
  const auto z = hilbert::inner(hilbert::HVector::parse(o.expr, p),
                                hilbert::HVector::parse(o.expr2, p));
  json r;
  r["re"] = to_string(z.re);
  r["im"] = to_string(z.im);
  return {r, to_string(z)};
}

Output cmd_hilbert_norm(const Options& o, Precision p) {
  const HyperReal n = hilbert::norm_sq(hilbert::HVector::parse(o.expr, p));
  json r;
  r["norm_sq"] = to_string(n);
  r["class"] = std::string(to_string(classify(n)));
  return {r, to_string(n)};
}

Output cmd_hilbert_standard_part(const Options& o, Precision p) {
  const auto part = hilbert::standard_part_vec(hilbert::HVector::parse(o.expr, p));
  json components = json::array();
  std::string text = "[";
  for (std::size_t i = 0; i < part.size(); ++i) {
    components.push_back(hilbert::to_string(part[i]));
    text += (i ? ", " : "") + hilbert::to_string(part[i]);
  }
  json r;
  r["components"] = components;
  return {r, text + "]"};
}

int precision_from_env() {
  const char* env = std::getenv("HYPERREAL_PRECISION");
  if (!env || !*env) return Precision::kDefault;
  try {
    std::size_t used = 0;
    const int t = std::stoi(env, &used);
    if (used != std::string_view(env).size() || t < 1) throw std::invalid_argument(env);
    return t;
  } catch (const std::exception&) {
    throw CLI::ValidationError("HYPERREAL_PRECISION",
                               "must be a positive integer, got '" + std::string(env) + "'");
  }
}

void emit_error(bool json_mode, std::ostream& out, std::ostream& err, const std::string& kind,
                const std::string& message, std::optional<std::size_t> position) {
  if (json_mode) {
    json e;
    e["kind"] = kind;
    e["message"] = message;
    e["position"] = position ? json(*position) : json(nullptr);
    json env;
    env["ok"] = false;
    env["error"] = e;
    out << env.dump() << '\n';
    return;
  }
  err << "error: " << kind << ": " << message;
  if (position) err << " (at column " << *position << ")";
  err << '\n';
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  const bool json_requested = std::find(args.begin(), args.end(), "--json") != args.end();

  CLI::App app{"Hyperreal arithmetic and nonstandard-analysis toolkit", "hyperreal"};
  app.fallthrough();
  app.require_subcommand(1);
  app.add_option("--precision", o.precision, "Relative truncation order T (default 16)")
      ->check(CLI::PositiveNumber);
  app.add_flag("--json", o.json_mode, "Emit a single JSON object");

  std::vector<std::pair<CLI::App*, std::function<Output(Precision)>>> commands;
  auto expr_cmd = [&](const std::string& name, const std::string& help,
                      std::function<Output(Precision)> fn) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("expr", o.expr, "Expression")->required();
    commands.emplace_back(sub, std::move(fn));
    return sub;
  };
  auto side_check = CLI::IsMember({"both", "left", "right"});

  expr_cmd("eval", "Evaluate an expression", [&](Precision p) { return cmd_eval(o, p); })
      ->add_option("--at", o.at, "Value for the free variable");
  expr_cmd("classify", "Zero, infinitesimal, appreciable or unlimited",
           [&](Precision p) { return cmd_classify(o, p); })
      ->add_option("--at", o.at, "Value for the free variable");
  {
    CLI::App* sub = expr_cmd("compare", "Order two expressions",
                             [&](Precision p) { return cmd_compare(o, p); });
    sub->add_option("other", o.expr2, "Second expression")->required();
    sub->add_flag("--galaxy", o.galaxy, "Compare galaxies instead of values");
    sub->add_option("--at", o.at, "Value for the free variable");
  }
  expr_cmd("shadow", "Standard part of a limited value",
           [&](Precision p) { return cmd_shadow(o, p); })
      ->add_option("--at", o.at, "Value for the free variable");
  expr_cmd("diff", "Derivative at --at via Newton quotients",
           [&](Precision p) { return cmd_diff(o, p); })
      ->add_option("--at", o.at, "Point x0");
  {
    CLI::App* sub =
        expr_cmd("limit", "Limit of f(x) at --to", [&](Precision p) { return cmd_limit(o, p); });
    sub->add_option("--to", o.to, "Rational point, +inf or -inf");
    sub->add_option("--side", o.side, "both, left or right")->check(side_check);
  }
  expr_cmd("seq-limit", "Limit of a rational sequence",
           [&](Precision p) { return cmd_seq_limit(o, p); });
  expr_cmd("continuity", "Continuity at --at", [&](Precision p) { return cmd_continuity(o, p); })
      ->add_option("--at", o.at, "Point c");

  CLI::App* filters_cmd = app.add_subcommand("filters", "Finite filter laboratory");
  filters_cmd->require_subcommand(1);
  {
    CLI::App* sub = filters_cmd->add_subcommand("enumerate", "All proper ultrafilters");
    sub->add_option("--size", o.size, "Ground set size")->required();
    sub->add_option("--mode", o.mode, "auto, exhaustive or generator")
        ->check(CLI::IsMember({"auto", "exhaustive", "generator"}));
    commands.emplace_back(sub, [&](Precision) { return cmd_filters_enumerate(o); });
  }
  for (const auto& [name, help] :
       std::vector<std::pair<std::string, std::string>>{{"classify", "Classify a family"},
                                                        {"generate", "Generated filter"}}) {
    CLI::App* sub = filters_cmd->add_subcommand(name, help);
    sub->add_option("family", o.expr, "JSON array of subsets, e.g. [[0],[0,1]]")->required();
    sub->add_option("--size", o.size, "Ground set size")->required();
    if (name == "classify") {
      commands.emplace_back(sub, [&](Precision) { return cmd_filters_classify(o); });
    } else {
      commands.emplace_back(sub, [&](Precision) { return cmd_filters_generate(o); });
    }
  }

  CLI::App* transfer_cmd = app.add_subcommand("transfer", "Statements and transfer");
  transfer_cmd->require_subcommand(1);
  auto structure_check = CLI::IsMember({"N", "R", "C"});
  auto transfer_sub = [&](const std::string& name, const std::string& help,
                          std::function<Output()> fn) {
    CLI::App* sub = transfer_cmd->add_subcommand(name, help);
    sub->add_option("formula", o.expr, "Formula")->required();
    sub->add_option("--structure", o.structure, "N, R or C (default R)")->check(structure_check);
    commands.emplace_back(sub, [fn](Precision) { return fn(); });
    return sub;
  };
  transfer_sub("check", "Statement, formula or not in the language",
               [&] { return cmd_transfer_check(o); });
  transfer_sub("star", "*-transform of a statement", [&] { return cmd_transfer_star(o); });
  transfer_sub("transferable", "Transferability in a direction",
               [&] { return cmd_transfer_transferable(o); })
      ->add_option("--direction", o.direction, "forward or backward (default backward)")
      ->check(CLI::IsMember({"forward", "backward"}));
  {
    CLI::App* sub = transfer_sub("weaken", "Replace a constant by an existential witness",
                                 [&] { return cmd_transfer_weaken(o); });
    sub->add_option("--constant", o.constant, "Constant to replace (default omega)");
    sub->add_option("--variable", o.variable, "Witness variable (default r)");
  }

  CLI::App* hilbert_cmd = app.add_subcommand("hilbert", "Vectors over *C");
  hilbert_cmd->require_subcommand(1);
  auto hilbert_sub = [&](const std::string& name, const std::string& help,
                         std::function<Output(Precision)> fn) {
    CLI::App* sub = hilbert_cmd->add_subcommand(name, help);
    sub->add_option("vector", o.expr, "Vector literal [a + b*i, ...]")->required();
    commands.emplace_back(sub, std::move(fn));
    return sub;
  };
  hilbert_sub("classify", "standard, infinitesimal, near-standard or remote",
              [&](Precision p) { return cmd_hilbert_classify(o, p); });
  hilbert_sub("inner", "Inner product", [&](Precision p) { return cmd_hilbert_inner(o, p); })
      ->add_option("other", o.expr2, "Second vector")
      ->required();
  hilbert_sub("norm", "Squared norm", [&](Precision p) { return cmd_hilbert_norm(o, p); });
  hilbert_sub("standard-part", "Componentwise shadow",
              [&](Precision p) { return cmd_hilbert_standard_part(o, p); });

  try {
    o.precision = precision_from_env();
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    emit_error(json_requested, out, err, "usage", e.what(), std::nullopt);
    return 2;
  }

  try {
    const Precision p(o.precision);
    for (auto& [sub, fn] : commands) {
      if (!sub->parsed()) continue;
      Output result = fn(p);
      if (o.json_mode) {
        json env;
        env["ok"] = true;
        env["result"] = result.result;
        out << env.dump() << '\n';
      } else {
        out << result.text << '\n';
      }
      return 0;
    }
    emit_error(o.json_mode, out, err, "usage", "a subcommand is required", std::nullopt);
    return 2;
  } catch (const CLI::ParseError& e) {
    emit_error(o.json_mode, out, err, "usage", e.what(), std::nullopt);
    return 2;
  } catch (const Error& e) {
    emit_error(o.json_mode, out, err, std::string(to_string(e.kind())), e.what(), e.position());
    return 1;
  }
}

}  // namespace hyperreal::cli
