/* szpiro: arithmetic local data of elliptic curves over Q and verification of
 * conductor-discriminant bounds.
 *
 * Subcommands: invariants, minimal, local, classify, verify, ratio, scan.
 * Exit codes: 0 all checks hold; 1 a check failed or stayed indeterminate;
 * 2 input error; 3 factorization budget exhausted. */

#include <algorithm>
#include <cctype>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "szpiro/io.hpp"
#include "szpiro/minimal.hpp"
#include "szpiro/tate.hpp"

using namespace szpiro;
using ojson = nlohmann::ordered_json;

namespace {

struct CommonOpts {
  std::vector<std::string> curves;  // inline curve lines
  std::string file;                 // curve-line file ("-" = stdin)
  std::string csv_file;             // CSV table
  std::string out_path;             // output file (default stdout)
  std::string format = "jsonl";
  unsigned threads = 1;
  FactorPolicy factor{};
};

void add_common(CLI::App* sub, CommonOpts& o, bool with_sources = true) {
  if (with_sources) {
    sub->add_option("curve", o.curves,
                    "curves given inline, e.g. \"[0,0,1,-1,0]\" or "
                    "\"11a1: [0,-1,1,-10,-20]\"");
    sub->add_option("--file", o.file,
                    "file with one curve per line ('-' for stdin); blank lines "
                    "and '#' comments are skipped");
    sub->add_option("--csv", o.csv_file,
                    "CSV table a1,a2,a3,a4,a6 with an optional leading label "
                    "column");
  }
  sub->add_option("--format", o.format, "output format")
      ->check(CLI::IsMember({"jsonl", "human", "csv"}))
      ->capture_default_str();
  sub->add_option("--out", o.out_path, "write output to this file instead of stdout");
  sub->add_option("--threads", o.threads, "worker threads (output is identical for any count)")
      ->capture_default_str();
  sub->add_option("--trial-bound", o.factor.trial_bound,
                  "trial-division bound for factoring")
      ->capture_default_str();
  sub->add_option("--rho-budget", o.factor.rho_budget,
                  "Pollard-rho iteration budget for factoring")
      ->capture_default_str();
}

ReportFormat parse_format(const std::string& f) {
  if (f == "jsonl") return ReportFormat::jsonl;
  if (f == "human") return ReportFormat::human;
  if (f == "csv") return ReportFormat::csv;
  throw std::invalid_argument("unknown format \"" + f + "\"");
}

/* Strict "n" or "n/d" positive rational. */
Rational parse_rational_arg(const std::string& s, const char* flag) {
  auto is_digits = [](const std::string& t) {
    if (t.empty()) return false;
    for (char c : t)
      if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
  };
  std::string num = s, den = "1";
  auto slash = s.find('/');
  if (slash != std::string::npos) {
    num = s.substr(0, slash);
    den = s.substr(slash + 1);
  }
  if (!is_digits(num) || !is_digits(den))
    throw std::invalid_argument(std::string(flag) +
                                " must be a positive rational like 10 or 7/2, got \"" +
                                s + "\"");
  Rational q = make_rational(Integer(num), Integer(den));
  if (q <= 0)
    throw std::invalid_argument(std::string(flag) + " must be positive");
  return q;
}

std::vector<CurveInput> gather_inputs(const CommonOpts& o) {
  std::vector<CurveInput> inputs;
  std::size_t inline_no = 0;
  for (const std::string& line : o.curves) {
    ++inline_no;
    try {
      inputs.push_back(parse_curve_line(line));
    } catch (const ParseError& e) {
      throw ParseError("inline curve " + std::to_string(inline_no) + ": " + e.what());
    }
  }
  if (!o.file.empty()) {
    if (o.file == "-") {
      auto fromStdin = read_curve_lines(std::cin);
      inputs.insert(inputs.end(), fromStdin.begin(), fromStdin.end());
    } else {
      std::ifstream f(o.file);
      if (!f) throw ParseError("cannot open file \"" + o.file + "\"");
      auto fromFile = read_curve_lines(f);
      inputs.insert(inputs.end(), fromFile.begin(), fromFile.end());
    }
  }
  if (!o.csv_file.empty()) {
    std::ifstream f(o.csv_file);
    if (!f) throw ParseError("cannot open file \"" + o.csv_file + "\"");
    auto fromCsv = read_curve_csv(f);
    inputs.insert(inputs.end(), fromCsv.begin(), fromCsv.end());
  }
  if (inputs.empty())
    throw ParseError("no curves given (pass coefficients, --file, or --csv)");
  return inputs;
}

std::ostream& open_sink(const CommonOpts& o, std::ofstream& file_sink) {
  if (o.out_path.empty()) return std::cout;
  file_sink.open(o.out_path);
  if (!file_sink) throw ParseError("cannot open output file \"" + o.out_path + "\"");
  return file_sink;
}

ojson coefficients_json(const std::array<Integer, 5>& a) {
  ojson arr = ojson::array();
  for (const auto& c : a) arr.push_back(c.get_str());
  return arr;
}

/* The per-command record builders below return (text, severity) like the
 * library's verify_to_record, so every command shares the ordered parallel
 * driver and the error-record conventions. */

std::pair<std::string, int> invariants_record(const CurveInput& in, ReportFormat fmt) {
  const auto& a = in.a;
  Integer disc = discriminant_of(a);
  if (disc == 0)
    return {error_record(in.label, a, "singular", "discriminant is zero", fmt),
            kSeverityOk};
  WeierstrassModel m(a);
  StandardInvariants inv = m.invariants();
  if (fmt == ReportFormat::jsonl) {
    ojson o;
    if (in.label) o["label"] = *in.label;
    o["a_invariants"] = coefficients_json(a);
    o["b2"] = inv.b2.get_str();
    o["b4"] = inv.b4.get_str();
    o["b6"] = inv.b6.get_str();
    o["b8"] = inv.b8.get_str();
    o["c4"] = inv.c4.get_str();
    o["c6"] = inv.c6.get_str();
    o["Delta"] = inv.delta.get_str();
    o["j"] = inv.j.get_str();
    return {o.dump(), kSeverityOk};
  }
  std::ostringstream out;
  out << "curve " << format_coefficients(a);
  if (in.label) out << "   (" << *in.label << ")";
  out << "\n  b2=" << inv.b2.get_str() << "  b4=" << inv.b4.get_str()
      << "  b6=" << inv.b6.get_str() << "  b8=" << inv.b8.get_str()
      << "\n  c4=" << inv.c4.get_str() << "  c6=" << inv.c6.get_str()
      << "\n  Delta=" << inv.delta.get_str() << "\n  j=" << inv.j.get_str();
  return {out.str(), kSeverityOk};
}

std::pair<std::string, int> minimal_record(const CurveInput& in,
                                           const FactorPolicy& policy,
                                           ReportFormat fmt) {
  WeierstrassModel m(in.a);
  MinimalModelResult r = minimal_model(m, policy);
  if (fmt == ReportFormat::jsonl) {
    ojson o;
    if (in.label) o["label"] = *in.label;
    o["input"] = coefficients_json(in.a);
    o["a_invariants"] = coefficients_json(r.minimal.coefficients());
    o["u"] = r.to_minimal.u.get_str();
    o["r"] = r.to_minimal.r.get_str();
    o["s"] = r.to_minimal.s.get_str();
    o["t"] = r.to_minimal.t.get_str();
    o["delta_min"] = r.delta_min.get_str();
    return {o.dump(), kSeverityOk};
  }
  std::ostringstream out;
  out << "curve " << format_coefficients(in.a);
  if (in.label) out << "   (" << *in.label << ")";
  out << "\n  minimal model " << format_coefficients(r.minimal.coefficients())
      << "\n  via (u,r,s,t) = (" << r.to_minimal.u.get_str() << ", "
      << r.to_minimal.r.get_str() << ", " << r.to_minimal.s.get_str() << ", "
      << r.to_minimal.t.get_str() << ")\n  delta_min = " << r.delta_min.get_str();
  return {out.str(), kSeverityOk};
}

std::pair<std::string, int> local_record(const CurveInput& in, const Integer& p,
                                         const FactorPolicy& policy,
                                         ReportFormat fmt) {
  WeierstrassModel m(in.a);
  MinimalModelResult r = minimal_model(m, policy);
  LocalData d = tate_local(r.minimal, p);
  if (fmt == ReportFormat::jsonl) {
    ojson o;
    if (in.label) o["label"] = *in.label;
    o["a_invariants"] = coefficients_json(r.minimal.coefficients());
    o["p"] = d.p.get_str();
    o["kodaira"] = d.kodaira.str();
    o["f"] = d.f;
    o["vp_delta"] = d.vp_delta;
    o["m"] = d.components;
    o["reduction"] = reduction_json_token(d.reduction);
    return {o.dump(), kSeverityOk};
  }
  std::ostringstream out;
  out << "curve " << format_coefficients(in.a);
  if (in.label) out << "   (" << *in.label << ")";
  out << "\n  minimal model " << format_coefficients(r.minimal.coefficients())
      << "\n  p=" << d.p.get_str() << "  " << d.kodaira.str() << "  f=" << d.f
      << "  vp(Delta)=" << d.vp_delta << "  m=" << d.components << "  "
      << to_string(d.reduction);
  return {out.str(), kSeverityOk};
}

std::pair<std::string, int> classify_record(const CurveInput& in,
                                            const FactorPolicy& policy,
                                            ReportFormat fmt) {
  WeierstrassModel m(in.a);
  CurveRecord rec = make_curve_record(m, policy);
  std::vector<PrimeReport> primes;
  bool all_ok = true;
  for (const LocalData& d : rec.locals) {
    std::optional<long> vpj;
    if (rec.j != 0) vpj = vp_rational(d.p, rec.j);
    PrimeType type = classify_prime(d, vpj);
    PrimeReport pr = check_prime_bound(d.p, type, d.vp_delta, d.f, vpj);
    all_ok = all_ok && pr.satisfied;
    primes.push_back(std::move(pr));
  }
  int sev = all_ok ? kSeverityOk : kSeverityCheckFailed;
  if (fmt == ReportFormat::jsonl) {
    ojson o;
    if (in.label) o["label"] = *in.label;
    o["a_invariants"] = coefficients_json(rec.minimal.coefficients());
    o["Delta"] = rec.delta_min_abs.get_str();
    o["N"] = rec.conductor.get_str();
    ojson arr = ojson::array();
    for (const auto& pr : primes) {
      ojson q;
      q["p"] = pr.p.get_str();
      q["type"] = code(pr.type);
      q["vp_delta"] = pr.vp_delta;
      q["vp_N"] = pr.vp_N;
      if (pr.vp_j)
        q["vp_j"] = *pr.vp_j;
      else
        q["vp_j"] = nullptr;
      q["delta_p"] = pr.delta_p;
      q["rhs"] = pr.rhs;
      q["satisfied"] = pr.satisfied;
      q["equality"] = pr.equality;
      arr.push_back(std::move(q));
    }
    o["primes"] = std::move(arr);
    return {o.dump(), sev};
  }
  std::ostringstream out;
  out << "curve " << format_coefficients(rec.minimal.coefficients());
  if (in.label) out << "   (" << *in.label << ")";
  out << "   |Delta|=" << rec.delta_min_abs.get_str() << "  N="
      << rec.conductor.get_str();
  for (const auto& pr : primes) {
    out << "\n  p=" << pr.p.get_str() << "  class " << code(pr.type)
        << "  vp(Delta)=" << pr.vp_delta << "  vp(N)=" << pr.vp_N << "  vp(j)=";
    if (pr.vp_j)
      out << *pr.vp_j;
    else
      out << "+inf";
    out << "  allowance=" << pr.delta_p << "  bound=" << pr.rhs << "  "
        << (pr.satisfied ? (pr.equality ? "satisfied (equality)" : "satisfied")
                         : "VIOLATED");
  }
  return {out.str(), sev};
}

std::pair<std::string, int> ratio_record(const CurveInput& in,
                                         const FactorPolicy& policy,
                                         ReportFormat fmt) {
  WeierstrassModel m(in.a);
  CurveRecord rec = make_curve_record(m, policy);
  Interval ratio = szpiro_ratio(rec);
  if (fmt == ReportFormat::jsonl) {
    ojson o;
    if (in.label) o["label"] = *in.label;
    o["a_invariants"] = coefficients_json(rec.minimal.coefficients());
    o["Delta"] = rec.delta_min_abs.get_str();
    o["N"] = rec.conductor.get_str();
    ojson r;
    r["lo"] = ratio.lo_double();
    r["hi"] = ratio.hi_double();
    o["szpiro_ratio"] = std::move(r);
    return {o.dump(), kSeverityOk};
  }
  std::ostringstream out;
  out.precision(17);
  out << "curve " << format_coefficients(rec.minimal.coefficients());
  if (in.label) out << "   (" << *in.label << ")";
  out << "  |Delta|=" << rec.delta_min_abs.get_str() << "  N="
      << rec.conductor.get_str() << "  log|Delta|/log(N) in ["
      << ratio.lo_double() << ", " << ratio.hi_double() << "]";
  return {out.str(), kSeverityOk};
}

/* Wraps a record builder with the shared error-to-record policy. */
template <typename Fn>
std::pair<std::string, int> guarded(const CurveInput& in, ReportFormat fmt, Fn&& fn) {
  try {
    return fn();
  } catch (const SingularModelError& e) {
    return {error_record(in.label, in.a, "singular", e.what(), fmt), kSeverityOk};
  } catch (const FactorBudgetError& e) {
    return {error_record(in.label, in.a, "factor_budget_exhausted", e.what(), fmt),
            kSeverityBudget};
  } catch (const BoundViolationError& e) {
    return {error_record(in.label, in.a, "bound_violation", e.what(), fmt),
            kSeverityCheckFailed};
  }
}

int run_per_curve(
    const CommonOpts& opts, ReportFormat fmt, std::ostream& out,
    const std::function<std::pair<std::string, int>(const CurveInput&)>& record) {
  std::vector<CurveInput> inputs = gather_inputs(opts);
  return run_ordered(
      inputs.size(), opts.threads,
      [&](std::size_t i) {
        return guarded(inputs[i], fmt, [&] { return record(inputs[i]); });
      },
      [&](const std::string& text) { out << text << "\n"; });
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "arithmetic local data of elliptic curves over Q (minimal model, Tate "
      "reduction types, conductor) and verification of "
      "conductor-discriminant bounds"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "szpiro 1.0.0");

  CommonOpts inv_o, min_o, loc_o, cls_o, ver_o, rat_o, scan_o;
  std::string local_p, verify_A = "1", verify_B = "1", box_spec;
  std::size_t scan_top = 10;
  std::string scan_A = "1", scan_B = "1";

  CLI::App* inv = app.add_subcommand("invariants",
                                     "standard invariants b2..b8, c4, c6, "
                                     "discriminant, and j of each curve");
  add_common(inv, inv_o);

  CLI::App* minimal = app.add_subcommand(
      "minimal", "global minimal model and the change of variables reaching it");
  add_common(minimal, min_o);

  CLI::App* local = app.add_subcommand(
      "local", "reduction data (Kodaira type, f, m) at one prime");
  add_common(local, loc_o);
  local->add_option("-p,--prime", local_p, "the prime to analyse")->required();

  CLI::App* classify = app.add_subcommand(
      "classify", "per-prime class (1/2/3) and discriminant-valuation bound");
  add_common(classify, cls_o);

  CLI::App* verify_cmd = app.add_subcommand(
      "verify", "full verification report for each curve");
  add_common(verify_cmd, ver_o);
  verify_cmd->add_option("--A", verify_A,
                         "denominator-bound coefficient (positive rational)")
      ->capture_default_str();
  verify_cmd->add_option("--B", verify_B,
                         "denominator-bound exponent (positive rational)")
      ->capture_default_str();

  CLI::App* ratio = app.add_subcommand("ratio", "Szpiro ratio log|Delta|/log N");
  add_common(ratio, rat_o);

  CLI::App* scan = app.add_subcommand(
      "scan", "verify every curve in a coefficient box and rank the ratios");
  add_common(scan, scan_o, /*with_sources=*/false);
  scan->add_option("--box", box_spec,
                   "coefficient ranges, e.g. "
                   "\"a1=0:1,a2=-1:1,a3=0:1,a4=-10:10,a6=-10:10\"")
      ->required();
  scan->add_option("--top", scan_top, "size of the ranked-ratio table (0 = off)")
      ->capture_default_str();
  scan->add_option("--A", scan_A, "denominator-bound coefficient")->capture_default_str();
  scan->add_option("--B", scan_B, "denominator-bound exponent")->capture_default_str();

  /* Inline curves like "[0,0,1,-1,0]" or "-1 0 1 -1 0" would otherwise be
   * re-tokenized by the option parser (bracketed arguments get split as
   * container literals; a leading '-' looks like a flag).  A leading space
   * defuses both, and the curve parser trims it away. */
  std::vector<std::string> args;
  args.reserve(static_cast<std::size_t>(argc > 0 ? argc - 1 : 0));
  for (int i = 1; i < argc; ++i) {
    std::string t = argv[i];
    bool bracketed = t.size() >= 2 && t.front() == '[' && t.back() == ']';
    bool negative_first_coefficient =
        t.size() >= 2 && t.front() == '-' &&
        std::isdigit(static_cast<unsigned char>(t[1])) &&
        t.find(' ') != std::string::npos;
    if (bracketed || negative_first_coefficient) t.insert(t.begin(), ' ');
    args.push_back(std::move(t));
  }
  std::reverse(args.begin(), args.end());

  try {
    app.parse(std::move(args));
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kSeverityInputError;
  }

  try {
    if (app.got_subcommand(inv)) {
      ReportFormat fmt = parse_format(inv_o.format);
      if (fmt == ReportFormat::csv)
        throw std::invalid_argument("csv output is available for verify and scan only");
      std::ofstream file_sink;
      std::ostream& out = open_sink(inv_o, file_sink);
      return run_per_curve(inv_o, fmt, out, [&](const CurveInput& in) {
        return invariants_record(in, fmt);
      });
    }
    if (app.got_subcommand(minimal)) {
      ReportFormat fmt = parse_format(min_o.format);
      if (fmt == ReportFormat::csv)
        throw std::invalid_argument("csv output is available for verify and scan only");
      std::ofstream file_sink;
      std::ostream& out = open_sink(min_o, file_sink);
      return run_per_curve(min_o, fmt, out, [&](const CurveInput& in) {
        return minimal_record(in, min_o.factor, fmt);
      });
    }
    if (app.got_subcommand(local)) {
      ReportFormat fmt = parse_format(loc_o.format);
      if (fmt == ReportFormat::csv)
        throw std::invalid_argument("csv output is available for verify and scan only");
      Integer p;
      try {
        p = parse_curve_line("[0,0,0,0," + local_p + "]").a[4];
      } catch (const ParseError&) {
        throw std::invalid_argument("-p expects an integer, got \"" + local_p + "\"");
      }
      if (p < 2 || !is_probable_prime(p))
        throw std::invalid_argument("-p expects a prime, got " + local_p);
      std::ofstream file_sink;
      std::ostream& out = open_sink(loc_o, file_sink);
      return run_per_curve(loc_o, fmt, out, [&](const CurveInput& in) {
        return local_record(in, p, loc_o.factor, fmt);
      });
    }
    if (app.got_subcommand(classify)) {
      ReportFormat fmt = parse_format(cls_o.format);
      if (fmt == ReportFormat::csv)
        throw std::invalid_argument("csv output is available for verify and scan only");
      std::ofstream file_sink;
      std::ostream& out = open_sink(cls_o, file_sink);
      return run_per_curve(cls_o, fmt, out, [&](const CurveInput& in) {
        return classify_record(in, cls_o.factor, fmt);
      });
    }
    if (app.got_subcommand(verify_cmd)) {
      VerifyParams params;
      params.factor = ver_o.factor;
      params.A = parse_rational_arg(verify_A, "--A");
      params.B = parse_rational_arg(verify_B, "--B");
      std::ofstream file_sink;
      std::ostream& out = open_sink(ver_o, file_sink);
      return run_verify_stream(gather_inputs(ver_o), params, ver_o.threads,
                               parse_format(ver_o.format), out);
    }
    if (app.got_subcommand(ratio)) {
      ReportFormat fmt = parse_format(rat_o.format);
      if (fmt == ReportFormat::csv)
        throw std::invalid_argument("csv output is available for verify and scan only");
      std::ofstream file_sink;
      std::ostream& out = open_sink(rat_o, file_sink);
      return run_per_curve(rat_o, fmt, out, [&](const CurveInput& in) {
        return ratio_record(in, rat_o.factor, fmt);
      });
    }
    if (app.got_subcommand(scan)) {
      VerifyParams params;
      params.factor = scan_o.factor;
      params.A = parse_rational_arg(scan_A, "--A");
      params.B = parse_rational_arg(scan_B, "--B");
      Box box = parse_box(box_spec);
      std::ofstream file_sink;
      std::ostream& out = open_sink(scan_o, file_sink);
      return run_scan(box, params, scan_o.threads, scan_top,
                      parse_format(scan_o.format), out);
    }
    return kSeverityInputError;  // unreachable: a subcommand is required
  } catch (const ParseError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kSeverityInputError;
  } catch (const FactorBudgetError& e) {
    std::cerr << "factorization budget exhausted: " << e.what() << "\n";
    return kSeverityBudget;
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kSeverityInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kSeverityInputError;
  }
}
