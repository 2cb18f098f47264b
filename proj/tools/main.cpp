// Command-line front end: point evaluation, coefficient dumps, reference
// table reproduction, x-sweeps, and asymptotic-vs-oracle comparison.

#include <cstdio>
#include <exception>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "uniasym/evaluate.hpp"

namespace {

using nlohmann::json;
using uniasym::BigFloat;
using uniasym::LogScaled;
using uniasym::Method;
using uniasym::Params;
using uniasym::Regime;

constexpr int kExitInternal = 2;
constexpr int kExitDomain = 3;
constexpr int kExitConvergence = 4;

// Option bundle shared by the parameterised subcommands.  Numeric values
// stay as decimal strings until parsing so that extended precision is not
// funnelled through double.
struct ParamFlags {
  std::string a = "0.5";
  std::string c = "2";
  std::string eps = "2";
  std::string lambda = "100";
  std::string x = "0.3";
  int m = 1;
};

struct CommonOpts {
  ParamFlags flags;
  int terms = 6;
  std::string method = "auto";
  std::string output = "human";
  int digits = 0;  // 0 keeps the ambient context precision
  bool paren_exp = false;
};

void add_param_flags(CLI::App* cmd, ParamFlags& f) {
  cmd->add_option("--a", f.a, "parameter a (decimal string)")->capture_default_str();
  cmd->add_option("--c", f.c, "parameter c (decimal string)")->capture_default_str();
  cmd->add_option("--eps", f.eps, "large-parameter ratio eps, > 1")->capture_default_str();
  cmd->add_option("--lambda", f.lambda, "large parameter lambda, > 0")->capture_default_str();
  cmd->add_option("--x", f.x, "argument x in (0,1)")->capture_default_str();
  cmd->add_option("--m", f.m, "integer numerator parameter, >= 1")->capture_default_str();
}

void add_common_flags(CLI::App* cmd, CommonOpts& o, bool with_method = true) {
  add_param_flags(cmd, o.flags);
  cmd->add_option("--terms", o.terms, "number of retained expansion terms (K+1)")
      ->capture_default_str()
      ->check(CLI::Range(1, 7));
  if (with_method)
    cmd->add_option("--method", o.method, "auto|uniform|coalescent|regrouped|oracle")
        ->capture_default_str()
        ->check(CLI::IsMember({"auto", "uniform", "coalescent", "regrouped", "oracle"}));
  cmd->add_option("--output", o.output, "human|json|csv")
      ->capture_default_str()
      ->check(CLI::IsMember({"human", "json", "csv"}));
  cmd->add_option("--digits", o.digits, "working precision in decimal digits")
      ->check(CLI::Range(2, 100000));
  cmd->add_flag("--paper-style", o.paren_exp, "print 2.306(-03) instead of 2.306e-03");
}

BigFloat parse_decimal(const std::string& text, const char* flag) {
  try {
    return BigFloat(text);
  } catch (const std::invalid_argument&) {
    throw std::domain_error(std::string(flag) + ": not a valid decimal number: '" + text + "'");
  }
}

Params<BigFloat> make_params(const ParamFlags& f) {
  Params<BigFloat> p{parse_decimal(f.a, "--a"),       parse_decimal(f.c, "--c"),
                     parse_decimal(f.eps, "--eps"),   parse_decimal(f.lambda, "--lambda"),
                     parse_decimal(f.x, "--x"),       f.m};
  p.validate();
  return p;
}

Method parse_method(const std::string& s) {
  if (s == "auto") return Method::Auto;
  if (s == "uniform") return Method::Uniform;
  if (s == "coalescent") return Method::Coalescent;
  if (s == "regrouped") return Method::Regrouped;
  if (s == "oracle") return Method::Oracle;
  throw std::domain_error("--method: unknown method '" + s + "'");
}

void apply_digits(int digits) {
  if (digits > 0) BigFloat::set_context_digits(digits);
}

uniasym::PrecisionConfig oracle_config() {
  uniasym::PrecisionConfig cfg;
  cfg.digits = std::max(BigFloat::context_digits(), 20);
  return cfg;
}

// ---- rendering ------------------------------------------------------------

struct DecimalParts {
  int sign = 0;
  std::string mantissa;  // digits only, in [1,10)
  long exponent = 0;
};

// Full-precision decimal split of a log-scaled value.
DecimalParts decimal_parts(const LogScaled<BigFloat>& v, int sig) {
  DecimalParts out;
  out.sign = v.sign;
  if (v.sign == 0) return out;
  BigFloat ln10 = log(BigFloat(10));
  BigFloat l10 = v.log_magnitude / ln10;
  BigFloat e = floor(l10);
  BigFloat mant = exp((l10 - e) * ln10);
  out.exponent = static_cast<long>(to_double(e));
  std::string s = mant.to_string(sig);  // mantissa in [1,10): "2.3060e+00"
  auto epos = s.find('e');
  out.mantissa = s.substr(0, epos);
  out.exponent += std::stol(s.substr(epos + 1));  // rounding may carry to 10
  return out;
}

std::string format_exponent(long e, bool paren_exp) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), paren_exp ? "(%+03ld)" : "e%+03ld", e);
  return buf;
}

std::string format_parts(const DecimalParts& d, bool paren_exp) {
  if (d.sign == 0) return "0";
  std::string out = d.sign < 0 ? "-" : "";
  out += d.mantissa;
  out += format_exponent(d.exponent, paren_exp);
  return out;
}

std::string format_logscaled(const LogScaled<BigFloat>& v, int sig, bool paren_exp) {
  return format_parts(decimal_parts(v, sig), paren_exp);
}

std::string format_double_sci(double v, int sig, bool paren_exp) {
  if (v == 0.0) return "0";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*e", sig - 1, v);
  std::string s(buf);
  auto epos = s.find('e');
  long e = std::stol(s.substr(epos + 1));
  return s.substr(0, epos) + format_exponent(e, paren_exp);
}

std::string format_bigfloat(const BigFloat& v, int sig, bool paren_exp) {
  return format_logscaled(LogScaled<BigFloat>::from_value(v), sig, paren_exp);
}

int value_digits() {
  // mantissa digits carried by eval/compare output; tracks the context
  return BigFloat::context_digits();
}

json params_json(const ParamFlags& f) {
  return json{{"a", f.a},           {"c", f.c}, {"eps", f.eps}, {"lambda", f.lambda},
              {"x", f.x},           {"m", f.m}};
}

json value_json(const LogScaled<BigFloat>& v, int sig) {
  auto d = decimal_parts(v, sig);
  return json{{"sign", d.sign}, {"mantissa", d.mantissa}, {"exponent", d.exponent}};
}

// ---- eval -----------------------------------------------------------------

int run_eval(const CommonOpts& o) {
  apply_digits(o.digits);
  auto p = make_params(o.flags);
  auto r = uniasym::evaluate(p, o.terms - 1, parse_method(o.method), oracle_config());
  int sig = value_digits();
  double last = to_double(r.last_term_magnitude);
  if (o.output == "json") {
    json j = params_json(o.flags);
    j["terms"] = o.terms;
    j["digits"] = BigFloat::context_digits();
    j["value"] = value_json(r.value, sig);
    j["regime"] = to_string(r.regime);
    j["method"] = to_string(r.method);
    j["terms_used"] = r.terms_used;
    j["last_term_magnitude"] = last;
    std::cout << j.dump() << "\n";
  } else if (o.output == "csv") {
    std::cout << "a,c,eps,lambda,x,m,terms,method,regime,value,terms_used,last_term_magnitude\n";
    std::cout << o.flags.a << ',' << o.flags.c << ',' << o.flags.eps << ',' << o.flags.lambda
              << ',' << o.flags.x << ',' << o.flags.m << ',' << o.terms << ','
              << to_string(r.method) << ',' << to_string(r.regime) << ','
              << format_logscaled(r.value, sig, o.paren_exp) << ',' << r.terms_used << ','
              << format_double_sci(last, 2, o.paren_exp) << "\n";
  } else {
    std::cout << "value:               " << format_logscaled(r.value, sig, o.paren_exp) << "\n";
    std::cout << "regime:              " << to_string(r.regime) << "\n";
    std::cout << "method:              " << to_string(r.method) << "\n";
    std::cout << "terms used:          " << r.terms_used << "\n";
    std::cout << "last term magnitude: " << format_double_sci(last, 2, o.paren_exp) << "\n";
    if (r.method == Method::Oracle) {
      auto s = uniasym::reference_sum(p, oracle_config());
      std::cout << "oracle tail bound:   "
                << format_double_sci(uniasym::relative_tail_estimate(s), 2, o.paren_exp)
                << " (relative, " << s.terms << " terms)\n";
    }
  }
  return 0;
}

// ---- coeffs ---------------------------------------------------------------

int run_coeffs(const CommonOpts& o) {
  apply_digits(o.digits);
  auto p = make_params(o.flags);
  auto g = uniasym::geometry(p);
  int K = o.terms - 1;
  int sig = 12;
  if (g.regime == Regime::Coalescent) {
    auto cc = uniasym::coalescence_coefficients(p, K);
    if (o.output == "json") {
      json j = params_json(o.flags);
      j["regime"] = to_string(g.regime);
      json scaled = json::array(), combined = json::array();
      for (int k = 0; k <= K; ++k) {
        scaled.push_back(format_bigfloat(cc.scaled[k], sig, false));
        combined.push_back(format_bigfloat(cc.combined[k], sig, false));
      }
      j["scaled"] = scaled;
      j["combined"] = combined;
      std::cout << j.dump() << "\n";
    } else {
      std::cout << "k,scaled,combined\n";
      for (int k = 0; k <= K; ++k)
        std::cout << k << ',' << format_bigfloat(cc.scaled[k], sig, o.paren_exp) << ','
                  << format_bigfloat(cc.combined[k], sig, o.paren_exp) << "\n";
    }
    return 0;
  }
  auto cs = uniasym::expansion_coefficients(g, p, K);
  if (o.output == "json") {
    json j = params_json(o.flags);
    j["regime"] = to_string(g.regime);
    json saddle = json::array(), pole = json::array(), combined = json::array();
    for (int k = 0; k <= K; ++k) {
      saddle.push_back(format_bigfloat(cs.saddle[k], sig, false));
      pole.push_back(format_bigfloat(cs.pole[k], sig, false));
      combined.push_back(format_bigfloat(cs.combined[k], sig, false));
    }
    j["saddle"] = saddle;
    j["pole"] = pole;
    j["combined"] = combined;
    std::cout << j.dump() << "\n";
  } else {
    std::cout << "k,saddle,pole,combined\n";
    for (int k = 0; k <= K; ++k)
      std::cout << k << ',' << format_bigfloat(cs.saddle[k], sig, o.paren_exp) << ','
                << format_bigfloat(cs.pole[k], sig, o.paren_exp) << ','
                << format_bigfloat(cs.combined[k], sig, o.paren_exp) << "\n";
  }
  return 0;
}

// ---- compare --------------------------------------------------------------

int run_compare(const CommonOpts& o) {
  apply_digits(o.digits);
  auto p = make_params(o.flags);
  Method m = parse_method(o.method);
  if (m == Method::Oracle)
    throw std::domain_error("compare: --method oracle compares the oracle against itself");
  auto r = uniasym::evaluate(p, o.terms - 1, m, oracle_config());
  auto ref = uniasym::reference_logscaled(p, oracle_config());
  double rel = relative_difference(r.value, ref);
  int sig = value_digits();
  if (o.output == "json") {
    json j = params_json(o.flags);
    j["terms"] = o.terms;
    j["digits"] = BigFloat::context_digits();
    j["value"] = value_json(r.value, sig);
    j["oracle"] = value_json(ref, sig);
    j["regime"] = to_string(r.regime);
    j["method"] = to_string(r.method);
    j["relative_error"] = rel;
    std::cout << j.dump() << "\n";
  } else if (o.output == "csv") {
    std::cout << "x,regime,method,value,oracle,relative_error\n";
    std::cout << o.flags.x << ',' << to_string(r.regime) << ',' << to_string(r.method) << ','
              << format_logscaled(r.value, sig, o.paren_exp) << ','
              << format_logscaled(ref, sig, o.paren_exp) << ','
              << format_double_sci(rel, 4, o.paren_exp) << "\n";
  } else {
    std::cout << "asymptotic:     " << format_logscaled(r.value, sig, o.paren_exp) << "\n";
    std::cout << "oracle:         " << format_logscaled(ref, sig, o.paren_exp) << "\n";
    std::cout << "regime:         " << to_string(r.regime) << "\n";
    std::cout << "method:         " << to_string(r.method) << "\n";
    std::cout << "relative error: " << format_double_sci(rel, 4, o.paren_exp) << "\n";
  }
  return 0;
}

// ---- reproduce ------------------------------------------------------------

// The reference tables fix eps=2, a=1/2, c=2, b=m=1.
Params<BigFloat> table_params(const char* x, const char* lambda) {
  return Params<BigFloat>{BigFloat("0.5"), BigFloat(2), BigFloat(2), BigFloat(lambda),
                          BigFloat(x), 1};
}

void emit_csv(const std::vector<std::string>& header,
              const std::vector<std::vector<std::string>>& rows, const std::string& output) {
  if (output == "json") {
    json j;
    j["header"] = header;
    j["rows"] = rows;
    std::cout << j.dump() << "\n";
    return;
  }
  for (size_t i = 0; i < header.size(); ++i)
    std::cout << header[i] << (i + 1 < header.size() ? "," : "\n");
  for (const auto& row : rows)
    for (size_t i = 0; i < row.size(); ++i) std::cout << row[i] << (i + 1 < row.size() ? "," : "\n");
}

int run_reproduce(int table, const std::string& output, int digits, bool paren_exp) {
  apply_digits(digits == 0 ? 60 : digits);
  static const char* kX[] = {"0.30", "0.45", "0.55", "0.70"};
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  if (table == 1) {
    header = {"k", "x=0.30", "x=0.45", "x=0.55", "x=0.70"};
    constexpr int K = 5;
    std::vector<uniasym::CoefficientSet<BigFloat>> sets;
    for (const char* x : kX) {
      auto p = table_params(x, "100");  // coefficients do not involve lambda
      sets.push_back(uniasym::expansion_coefficients(uniasym::geometry(p), p, K));
    }
    for (int k = 0; k <= K; ++k) {
      std::vector<std::string> row{std::to_string(k)};
      for (auto& s : sets) row.push_back(format_bigfloat(s.combined[k], 9, paren_exp));
      rows.push_back(std::move(row));
    }
  } else if (table == 2) {
    header = {"lambda", "M", "x=0.30", "x=0.45", "x=0.55", "x=0.70"};
    for (const char* lambda : {"50", "100"}) {
      std::vector<LogScaled<BigFloat>> oracle;
      for (const char* x : kX)
        oracle.push_back(uniasym::reference_logscaled(table_params(x, lambda), oracle_config()));
      for (int M = 0; M <= 5; ++M) {
        std::vector<std::string> row{lambda, std::to_string(M)};
        for (size_t i = 0; i < 4; ++i) {
          auto r = uniasym::evaluate(table_params(kX[i], lambda), M);
          row.push_back(format_double_sci(relative_difference(r.value, oracle[i]), 4, paren_exp));
        }
        rows.push_back(std::move(row));
      }
    }
  } else if (table == 3) {
    header = {"k", "scaled", "combined"};
    auto p = table_params("0.50", "100");
    auto cc = uniasym::coalescence_coefficients(p, 2);
    for (int k = 0; k <= 2; ++k)
      rows.push_back({std::to_string(k), format_bigfloat(cc.scaled[k], 9, paren_exp),
                      format_bigfloat(cc.combined[k], 9, paren_exp)});
  } else if (table == 4) {
    header = {"M", "lambda=50", "lambda=100", "lambda=150"};
    std::vector<LogScaled<BigFloat>> oracle;
    for (const char* lambda : {"50", "100", "150"})
      oracle.push_back(uniasym::reference_logscaled(table_params("0.50", lambda), oracle_config()));
    for (int M = 0; M <= 2; ++M) {
      std::vector<std::string> row{std::to_string(M)};
      int i = 0;
      for (const char* lambda : {"50", "100", "150"}) {
        auto r = uniasym::evaluate(table_params("0.50", lambda), M);
        row.push_back(format_double_sci(relative_difference(r.value, oracle[i++]), 4, paren_exp));
      }
      rows.push_back(std::move(row));
    }
  } else {
    throw std::domain_error("reproduce: --table must be 1, 2, 3, or 4");
  }
  emit_csv(header, rows, output);
  return 0;
}

// ---- sweep ----------------------------------------------------------------

int run_sweep(const CommonOpts& o, const std::string& x_from, const std::string& x_to, int steps) {
  apply_digits(o.digits);
  BigFloat lo = parse_decimal(x_from, "--x-from");
  BigFloat hi = parse_decimal(x_to, "--x-to");
  if (!(lo > BigFloat(0)) || !(lo < hi) || !(hi < BigFloat(1)))
    throw std::domain_error("sweep: need 0 < x-from < x-to < 1");
  if (steps < 2) throw std::domain_error("sweep: --steps must be at least 2");
  int sig = value_digits();
  std::cout << "x,regime,value,oracle,relative_error\n";
  for (int i = 0; i < steps; ++i) {
    BigFloat x = lo + (hi - lo) * BigFloat(i) / BigFloat(steps - 1);
    Params<BigFloat> p{parse_decimal(o.flags.a, "--a"), parse_decimal(o.flags.c, "--c"),
                       parse_decimal(o.flags.eps, "--eps"),
                       parse_decimal(o.flags.lambda, "--lambda"), x, o.flags.m};
    p.validate();
    auto r = uniasym::evaluate(p, o.terms - 1, parse_method(o.method), oracle_config());
    std::cout << format_bigfloat(x, 10, false) << ',' << to_string(r.regime) << ','
              << format_logscaled(r.value, sig, o.paren_exp) << ',';
    try {
      auto ref = uniasym::reference_logscaled(p, oracle_config());
      std::cout << format_logscaled(ref, sig, o.paren_exp) << ','
                << format_double_sci(relative_difference(r.value, ref), 4, o.paren_exp) << "\n";
    } catch (const uniasym::ConvergenceError&) {
      std::cout << "unconverged,unconverged\n";
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Uniform large-lambda asymptotics of the Gauss hypergeometric function\n"
      "F(a + eps*lambda, m; c + lambda; x) with a pole-near-saddle transition region."};
  app.require_subcommand(1);

  CommonOpts eval_o;
  auto* eval = app.add_subcommand("eval", "evaluate at one parameter point");
  add_common_flags(eval, eval_o);

  CommonOpts coeffs_o;
  auto* coeffs = app.add_subcommand("coeffs", "dump expansion coefficients");
  add_common_flags(coeffs, coeffs_o, /*with_method=*/false);

  CommonOpts compare_o;
  auto* compare = app.add_subcommand("compare", "asymptotic value against the series oracle");
  add_common_flags(compare, compare_o);

  int table = 0;
  std::string rep_output = "csv";
  int rep_digits = 0;
  bool rep_paren = false;
  auto* reproduce = app.add_subcommand("reproduce", "emit a reference table as CSV");
  reproduce->add_option("--table", table, "table number (1-4)")->required()->check(CLI::Range(1, 4));
  reproduce->add_option("--output", rep_output, "csv|json")
      ->capture_default_str()
      ->check(CLI::IsMember({"csv", "json"}));
  reproduce->add_option("--digits", rep_digits, "working precision in decimal digits")
      ->check(CLI::Range(2, 100000));
  reproduce->add_flag("--paper-style", rep_paren, "print 2.306(-03) instead of 2.306e-03");

  CommonOpts sweep_o;
  std::string x_from, x_to;
  int steps = 0;
  auto* sweep = app.add_subcommand("sweep", "sweep x against the series oracle (CSV)");
  add_common_flags(sweep, sweep_o);
  sweep->add_option("--x-from", x_from, "sweep start, in (0,1)")->required();
  sweep->add_option("--x-to", x_to, "sweep end, in (x-from,1)")->required();
  sweep->add_option("--steps", steps, "number of grid points")->required();
  sweep->get_option("--x")->description("ignored by sweep");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (eval->parsed()) return run_eval(eval_o);
    if (coeffs->parsed()) return run_coeffs(coeffs_o);
    if (compare->parsed()) return run_compare(compare_o);
    if (reproduce->parsed()) return run_reproduce(table, rep_output, rep_digits, rep_paren);
    if (sweep->parsed()) return run_sweep(sweep_o, x_from, x_to, steps);
  } catch (const uniasym::ConvergenceError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConvergence;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDomain;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDomain;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitInternal;
}
