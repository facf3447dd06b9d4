#include "ecf/cli.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <ostream>
#include <sstream>

#include "ecf/cf_core.hpp"
#include "ecf/errors.hpp"
#include "ecf/families.hpp"
#include "ecf/integral.hpp"
#include "ecf/quadrature.hpp"
#include "ecf/verify.hpp"

namespace ecf::cli {
namespace {

using json = nlohmann::ordered_json;

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct Common {
  std::optional<std::size_t> terms;
  std::optional<std::string> tol;
  long prec = kDefaultPrecision;
  int digits = 15;
  bool table = false;
  std::string format = "text";
};

struct Outcome {
  explicit Outcome(std::string name = {}) : command(std::move(name)) {}

  std::string command;
  json params = json::object();
  std::vector<OutputRecord> records;
  int status = 0;
};

void add_output_flags(CLI::App* app, Common& c) {
  app->add_option("--prec", c.prec, "working precision in bits")->capture_default_str();
  app->add_option("--digits", c.digits, "significant digits displayed")->capture_default_str()->check(CLI::Range(1, 10000));
  app->add_option("--format", c.format, "output format")->capture_default_str()->check(CLI::IsMember({"text", "json", "csv"}));
}

void add_depth_flags(CLI::App* app, Common& c) {
  auto* terms = app->add_option("--terms", c.terms, "depth of the truncation")->check(CLI::PositiveNumber);
  app->add_option("--tol", c.tol, "absolute tolerance, chooses the depth")->excludes(terms);
}

void common_params(Outcome& o, const Common& c) {
  if (c.terms) o.params["terms"] = *c.terms;
  if (c.tol) o.params["tol"] = *c.tol;
  o.params["prec"] = c.prec;
  o.params["digits"] = c.digits;
}

HPFloat tolerance(const Common& c) {
  if (c.tol) {
    HPFloat t = HPFloat::parse(*c.tol, c.prec);
    if (t.sign() <= 0) throw DomainError("tolerance must be positive");
    return t;
  }
  return HPFloat::parse("1e-" + std::to_string(c.digits), c.prec);
}

std::string decimal(const HPFloat& v, const Common& c) { return v.to_string(c.digits); }

std::string short_decimal(const HPFloat& v) { return v.to_string(6); }

std::optional<std::string> front_text(const CFTermSeq& cf) {
  if (const auto* r = std::get_if<Rational>(&cf.front())) return r->to_string();
  if (const auto* s = std::get_if<SqrtOf>(&cf.front())) return "sqrt(" + s->radicand.to_string() + ")";
  return std::nullopt;
}

// Unreduced "p/q" when both parts are integers, the reduced value otherwise.
void set_fraction(OutputRecord& r, const Rational& p, const Rational& q) {
  const Rational v = p / q;
  r.exact = p.is_integer() && q.is_integer() ? p.to_string() + "/" + q.to_string() : v.to_string();
  r.reduced = v.to_string();
}

Rational parse_rational(const std::string& text, const char* what) {
  try {
    return Rational::parse(text);
  } catch (const ParseError& e) {
    throw ParseError(std::string(what) + ": " + e.what());
  }
}

// Depth selection, optional table of convergents, then the value record.
void emit_family(Outcome& o, const CFTermSeq& cf, const std::string& label, const Common& c) {
  const std::size_t depth = c.terms ? *c.terms : auto_terms(cf, tolerance(c));
  const auto conv = convergents(cf, depth);
  const auto front = front_text(cf);
  if (c.table) {
    for (std::size_t k = 1; k <= depth; ++k) {
      OutputRecord row;
      row.kind = RecordKind::ConvergentRow;
      row.index = static_cast<long>(k);
      row.label = label;
      set_fraction(row, conv[k].p, conv[k].q);
      row.front = front;
      row.decimal = decimal(apply_front(cf, HPFloat(conv[k].value(), c.prec)), c);
      o.records.push_back(std::move(row));
    }
  }
  OutputRecord v;
  v.index = static_cast<long>(depth);
  v.label = label;
  set_fraction(v, conv[depth].p, conv[depth].q);
  v.front = front;
  v.decimal = decimal(eval_value(cf, depth, c.prec), c);
  v.error_est = short_decimal(next_difference_magnitude(cf, depth, c.prec));
  o.records.push_back(std::move(v));
}

struct FamilyArgs {
  std::optional<std::string> ratio;
  std::optional<std::string> msq;
  std::optional<std::string> n;
};

void add_family_args(CLI::App* app, FamilyArgs& f, const char* positional_help) {
  auto* pos = app->add_option("ratio", f.ratio, positional_help);
  auto* msq = app->add_option("--msq", f.msq, "m^2 as p/q, for irrational m")->excludes(pos);
  auto* n = app->add_option("--n", f.n, "n as p/q")->excludes(pos);
  msq->needs(n);
  n->needs(msq);
}

Outcome run_log(const FamilyArgs& f, const Common& c) {
  Outcome o{"log"};
  if (f.ratio) {
    const Rational r = parse_rational(*f.ratio, "argument");
    o.params["argument"] = *f.ratio;
    common_params(o, c);
    emit_family(o, log_of_fraction(r.num(), r.den()), "ln(" + r.to_string() + ")", c);
  } else if (f.msq) {
    const Rational msq = parse_rational(*f.msq, "--msq"), n = parse_rational(*f.n, "--n");
    o.params["n"] = *f.n;
    o.params["msq"] = *f.msq;
    common_params(o, c);
    emit_family(o, log_cf_spec(n, msq), "ln((n+m)/(n-m))", c);
  } else {
    throw UsageError("log needs p/q or --msq with --n");
  }
  return o;
}

Outcome run_atan(const FamilyArgs& f, const Common& c) {
  Outcome o{"atan"};
  if (f.ratio) {
    const Rational r = parse_rational(*f.ratio, "argument");
    o.params["argument"] = *f.ratio;
    common_params(o, c);
    emit_family(o, atan_cf_spec(Rational(r.den()), Rational(r.num() * r.num())), "atan(" + r.to_string() + ")", c);
  } else if (f.msq) {
    const Rational msq = parse_rational(*f.msq, "--msq"), n = parse_rational(*f.n, "--n");
    o.params["n"] = *f.n;
    o.params["msq"] = *f.msq;
    common_params(o, c);
    emit_family(o, atan_cf_spec(n, msq), "atan(m/n)", c);
  } else {
    throw UsageError("atan needs m/n or --msq with --n");
  }
  return o;
}

Outcome run_pi(const std::string& method_name, const Common& c) {
  Outcome o{"pi"};
  o.params["method"] = method_name;
  common_params(o, c);
  const auto method = parse_pi_method(method_name);
  if (!method) throw UsageError("unknown method " + method_name);
  const PiEstimate e = c.terms ? pi_by_fraction(*method, c.terms, std::nullopt, c.prec)
                               : pi_by_fraction(*method, std::nullopt, tolerance(c), c.prec);
  OutputRecord v;
  v.index = static_cast<long>(e.depths.front());
  std::string label = "pi";
  if (e.depths.size() > 1) {
    label += " (depths";
    for (std::size_t d : e.depths) label += " " + std::to_string(d);
    label += ")";
  }
  v.label = label;
  v.decimal = decimal(e.value, c);
  v.error_est = short_decimal(e.error_est);
  o.records.push_back(std::move(v));
  return o;
}

struct IntegralArgs {
  unsigned n = 0;
  std::string a, b, c;
  std::optional<std::string> x;
  bool at_root = false;
  bool oracle = false;
};

Outcome run_integral(const IntegralArgs& args, const Common& c) {
  Outcome o{"integral"};
  o.params["n"] = args.n;
  o.params["a"] = args.a;
  o.params["b"] = args.b;
  o.params["c"] = args.c;
  if (args.x) o.params["x"] = *args.x;
  else o.params["at_root"] = true;
  o.params["oracle"] = args.oracle;
  common_params(o, c);
  if (args.x.has_value() == args.at_root) throw UsageError("give exactly one of --x and --at-root");

  const QuadraticForm form(parse_rational(args.a, "--a"), parse_rational(args.b, "--b"), parse_rational(args.c, "--c"));
  const UpperLimit x = args.x ? UpperLimit{parse_rational(*args.x, "--x")} : UpperLimit{AtRoot{}};
  auto value = [&](const std::string& label, const HPFloat& v) {
    OutputRecord r;
    r.index = static_cast<long>(args.n);
    r.label = label;
    r.decimal = decimal(v, c);
    o.records.push_back(std::move(r));
  };

  const HPFloat integral = args.at_root ? integral_at_root(args.n, form, c.prec) : integral_to(args.n, form, x, c.prec);
  value("integral", integral);
  if (args.at_root) {
    const ClosedFormCoeffs k = coeffs(args.n, form);
    for (const auto& [label, q] : {std::pair{"curly", k.curly}, std::pair{"frak", k.frak}}) {
      OutputRecord r;
      r.index = static_cast<long>(args.n);
      r.label = label;
      r.exact = r.reduced = q.to_string();
      r.decimal = decimal(HPFloat(q, c.prec), c);
      o.records.push_back(std::move(r));
    }
    value("delta", delta(form, c.prec));
    value("root", roots(form, c.prec).xstar);
  } else {
    value("pi", big_pi(form, x, c.prec));
  }
  if (args.oracle) {
    HPFloat scale = integral.abs();
    if (scale.is_zero()) scale = HPFloat(1, c.prec);
    const HPFloat tol = scale * HPFloat::parse("1e-" + std::to_string(c.digits + 2), c.prec);
    const QuadratureResult q = quad_integral(args.n, form, x, tol);
    OutputRecord r;
    r.index = static_cast<long>(args.n);
    r.label = "oracle";
    r.decimal = decimal(q.value, c);
    r.error_est = short_decimal(q.est_error);
    r.detail = std::to_string(q.evaluations) + " evaluations";
    o.records.push_back(std::move(r));
  }
  return o;
}

struct CfArgs {
  std::string family;
  std::vector<std::string> params;
  std::size_t count = 5;
  bool diffs = false;
};

Outcome run_cf(const CfArgs& args, const Common& c) {
  Outcome o{"cf"};
  o.params["family"] = args.family;
  o.params["params"] = args.params;
  o.params["convergents"] = args.count;
  o.params["diffs"] = args.diffs;
  common_params(o, c);

  std::vector<Rational> p;
  for (const std::string& s : args.params) p.push_back(parse_rational(s, "--params"));
  auto need = [&](std::size_t k, const char* names) {
    if (p.size() != k) throw UsageError("family " + args.family + " takes --params " + names);
  };
  std::optional<CFTermSeq> cf;
  std::optional<FamilyKind> law;
  if (args.family == "log" || args.family == "atan") {
    need(2, "n,msq");
    const bool is_log = args.family == "log";
    cf = is_log ? log_cf_spec(p[0], p[1]) : atan_cf_spec(p[0], p[1]);
    law = is_log ? FamilyKind::LogNM : FamilyKind::AtanNM;
  } else if (args.family == "ratio") {
    need(4, "N,a,b,c");
    if (p[0].sign() <= 0 || !p[0].is_integer()) throw DomainError("N must be a positive integer");
    cf = ratio_cf_spec(static_cast<unsigned>(p[0].num().get_ui()), QuadraticForm(p[1], p[2], p[3]));
  } else if (args.family == "completed") {
    need(3, "a,b,c");
    cf = completed_cf_spec(QuadraticForm(p[0], p[1], p[2]));
  } else if (args.family == "degenerate") {
    need(0, "(none)");
    cf = degenerate_cf_spec();
  } else if (args.family == "brouncker") {
    need(0, "(none)");
    cf = brouncker_cf_spec();
  } else {
    throw UsageError("unknown family " + args.family);
  }

  const auto conv = convergents(*cf, args.count);
  const auto front = front_text(*cf);
  for (std::size_t k = 0; k <= args.count; ++k) {
    OutputRecord r;
    r.kind = RecordKind::ConvergentRow;
    r.index = static_cast<long>(k);
    set_fraction(r, conv[k].p, conv[k].q);
    r.front = front;
    r.decimal = decimal(apply_front(*cf, HPFloat(conv[k].value(), c.prec)), c);
    o.records.push_back(std::move(r));
  }
  if (args.diffs) {
    for (std::size_t k = 1; k <= args.count; ++k) {
      const Rational d = conv[k].value() - conv[k - 1].value();
      OutputRecord r;
      r.kind = RecordKind::DiffRow;
      r.index = static_cast<long>(k);
      r.exact = r.reduced = d.to_string();
      r.front = front;
      r.decimal = decimal(apply_front(*cf, HPFloat(d, c.prec)), c);
      if (law) {
        const bool agrees = difference_closed_form(k, p[0], p[1], *law) == d;
        r.label = agrees ? "closed form agrees" : "closed form DISAGREES";
        if (!agrees) o.status = 1;
      }
      o.records.push_back(std::move(r));
    }
  }
  return o;
}

Outcome run_verify_cmd(bool deep, const std::vector<int>& only) {
  Outcome o{"verify"};
  o.params["deep"] = deep;
  if (!only.empty()) o.params["only"] = only;
  VerifyOptions opt;
  opt.deep = deep;
  std::vector<CheckResult> results;
  if (only.empty()) results = run_verify(opt);
  else
    for (int id : only) results.push_back(run_check(id, opt));
  for (const CheckResult& r : results) {
    OutputRecord rec;
    rec.kind = RecordKind::VerifyResult;
    rec.index = r.id;
    rec.label = r.name + (r.empirical ? " (empirical)" : "");
    rec.passed = r.passed;
    rec.detail = r.detail;
    if (!r.passed) o.status = 1;
    o.records.push_back(std::move(rec));
  }
  return o;
}

// --- rendering --------------------------------------------------------------

json to_json(const OutputRecord& r) {
  json j;
  j["kind"] = to_string(r.kind);
  if (r.index) j["index"] = *r.index;
  if (r.label) j["label"] = *r.label;
  if (r.exact) j["exact"] = *r.exact;
  if (r.reduced) j["reduced"] = *r.reduced;
  if (r.front) j["front"] = *r.front;
  if (r.decimal) j["decimal"] = *r.decimal;
  if (r.error_est) j["error_est"] = *r.error_est;
  if (r.passed) j["passed"] = *r.passed;
  if (r.detail) j["detail"] = *r.detail;
  return j;
}

std::string csv_field(const std::optional<std::string>& s) {
  if (!s) return "";
  if (s->find_first_of(",\"\n") == std::string::npos) return *s;
  std::string q = "\"";
  for (char ch : *s) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
  return q + "\"";
}

void render_csv(const Outcome& o, std::ostream& out) {
  out << "kind,index,label,exact,reduced,front,decimal,error_est,passed,detail\n";
  for (const OutputRecord& r : o.records) {
    out << to_string(r.kind) << ',' << (r.index ? std::to_string(*r.index) : "") << ',' << csv_field(r.label) << ','
        << csv_field(r.exact) << ',' << csv_field(r.reduced) << ',' << csv_field(r.front) << ','
        << csv_field(r.decimal) << ',' << csv_field(r.error_est) << ','
        << (r.passed ? (*r.passed ? "true" : "false") : "") << ',' << csv_field(r.detail) << '\n';
  }
}

void render_text(const Outcome& o, std::ostream& out) {
  for (const OutputRecord& r : o.records) {
    if (r.kind == RecordKind::VerifyResult) {
      out << (*r.passed ? "[PASS] " : "[FAIL] ") << *r.index << "  " << *r.label;
      if (r.detail && !r.detail->empty()) out << ": " << *r.detail;
      out << '\n';
      continue;
    }
    std::ostringstream line;
    if (r.kind == RecordKind::ConvergentRow) line << "conv ";
    if (r.kind == RecordKind::DiffRow) line << "diff ";
    if (r.index) line << "k=" << *r.index << "  ";
    if (r.label && r.kind == RecordKind::Value) line << *r.label << " = ";
    bool show_decimal = r.decimal.has_value();
    if (r.exact) {
      line << *r.exact;
      if (r.reduced && *r.reduced != *r.exact) line << " = " << *r.reduced;
      if (r.front) line << " * " << *r.front;
      show_decimal = show_decimal && (r.front || r.decimal != r.reduced);
      if (show_decimal) line << " = ";
    }
    if (show_decimal) line << *r.decimal;
    if (r.error_est) line << "  (error ~ " << *r.error_est << ")";
    if (r.label && r.kind == RecordKind::DiffRow) line << "  [" << *r.label << "]";
    if (r.detail) line << "  [" << *r.detail << "]";
    out << line.str() << '\n';
  }
}

void render(const Outcome& o, const std::string& format, std::ostream& out) {
  if (format == "json") {
    json doc;
    doc["command"] = o.command;
    doc["params"] = o.params;
    doc["records"] = json::array();
    for (const OutputRecord& r : o.records) doc["records"].push_back(to_json(r));
    out << doc.dump(2) << '\n';
  } else if (format == "csv") {
    render_csv(o, out);
  } else {
    render_text(o, out);
  }
}

}  // namespace

std::string to_string(RecordKind kind) {
  switch (kind) {
    case RecordKind::Value: return "value";
    case RecordKind::ConvergentRow: return "convergent_row";
    case RecordKind::DiffRow: return "diff_row";
    case RecordKind::VerifyResult: return "verify_result";
  }
  return "?";
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Continued fractions for logarithms, arctangents, pi and x^n / sqrt(a^2 - 2bx + cx^2) integrals", "ecf"};
  app.require_subcommand(1);

  Common c;
  FamilyArgs log_args, atan_args;
  auto* log_cmd = app.add_subcommand("log", "ln(p/q), or ln((n+m)/(n-m)) with m = sqrt(msq)");
  add_family_args(log_cmd, log_args, "p/q with p > q >= 1");
  auto* atan_cmd = app.add_subcommand("atan", "arctan(m/n), or arctan(sqrt(msq)/n)");
  add_family_args(atan_cmd, atan_args, "m/n");
  for (auto* sub : {log_cmd, atan_cmd}) {
    add_depth_flags(sub, c);
    add_output_flags(sub, c);
    sub->add_flag("--table", c.table, "list every convergent up to the chosen depth");
  }

  std::string method;
  auto* pi_cmd = app.add_subcommand("pi", "pi from the arctangent fractions or Brouncker's fraction");
  pi_cmd->add_option("--method", method, "atan11|sqrt3|machin-split|brouncker")
      ->required()
      ->check(CLI::IsMember({"atan11", "sqrt3", "machin-split", "brouncker"}));
  add_depth_flags(pi_cmd, c);
  add_output_flags(pi_cmd, c);

  IntegralArgs ia;
  auto* int_cmd = app.add_subcommand("integral", "integral from 0 to x of t^n / sqrt(a^2 - 2bt + ct^2)");
  int_cmd->add_option("--n", ia.n, "exponent")->required();
  int_cmd->add_option("--a", ia.a, "a as p/q")->required();
  int_cmd->add_option("--b", ia.b, "b as p/q")->required();
  int_cmd->add_option("--c", ia.c, "c as p/q")->required();
  auto* xo = int_cmd->add_option("--x", ia.x, "upper limit as p/q");
  int_cmd->add_flag("--at-root", ia.at_root, "integrate to the smallest positive root")->excludes(xo);
  int_cmd->add_flag("--oracle", ia.oracle, "also integrate by quadrature");
  add_output_flags(int_cmd, c);

  CfArgs ca;
  auto* cf_cmd = app.add_subcommand("cf", "convergents and differences of a continued fraction");
  cf_cmd->add_option("--family", ca.family, "log|atan|ratio|completed|degenerate|brouncker")
      ->required()
      ->check(CLI::IsMember({"log", "atan", "ratio", "completed", "degenerate", "brouncker"}));
  cf_cmd->add_option("--params", ca.params, "comma-separated p/q parameters")->delimiter(',');
  cf_cmd->add_option("--convergents", ca.count, "last convergent listed")->capture_default_str();
  cf_cmd->add_flag("--diffs", ca.diffs, "list differences of consecutive convergents");
  add_output_flags(cf_cmd, c);

  bool deep = false;
  std::vector<int> only;
  auto* verify_cmd = app.add_subcommand("verify", "run the self-check suite");
  verify_cmd->add_flag("--deep", deep, "larger random samples");
  verify_cmd->add_option("--only", only, "check ids to run");
  verify_cmd->add_option("--format", c.format, "output format")->check(CLI::IsMember({"text", "json", "csv"}));

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    Outcome o;
    if (log_cmd->parsed()) o = run_log(log_args, c);
    else if (atan_cmd->parsed()) o = run_atan(atan_args, c);
    else if (pi_cmd->parsed()) o = run_pi(method, c);
    else if (int_cmd->parsed()) o = run_integral(ia, c);
    else if (cf_cmd->parsed()) o = run_cf(ca, c);
    else o = run_verify_cmd(deep, only);
    render(o, c.format, out);
    return o.status;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace ecf::cli
