#include "szpiro/io.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <condition_variable>
#include <istream>
#include <map>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "szpiro/tate.hpp"
#include "szpiro/weierstrass.hpp"

namespace szpiro {

using ojson = nlohmann::ordered_json;

namespace {

std::string trim(const std::string& s) {
  const char* ws = " \t\r\n\f\v";
  auto b = s.find_first_not_of(ws);
  if (b == std::string::npos) return {};
  auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

/* Strict decimal integer: optional sign, then digits only.  (mpz_set_str by
 * itself silently ignores embedded whitespace, so validate first.) */
Integer parse_integer(const std::string& raw, std::size_t line_no) {
  std::string t = trim(raw);
  std::size_t i = 0;
  if (i < t.size() && (t[i] == '+' || t[i] == '-')) ++i;
  if (i == t.size()) throw ParseError("expected an integer, got \"" + raw + "\"", line_no);
  for (; i < t.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(t[i])))
      throw ParseError("expected an integer, got \"" + raw + "\"", line_no);
  if (t.front() == '+') t.erase(0, 1);  // mpz_set_str rejects an explicit '+'
  return Integer(t);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    auto pos = s.find(sep, start);
    if (pos == std::string::npos) {
      out.push_back(s.substr(start));
      return out;
    }
    out.push_back(s.substr(start, pos - start));
    start = pos + 1;
  }
}

std::array<Integer, 5> parse_coefficient_body(const std::string& body,
                                              std::size_t line_no) {
  std::vector<std::string> parts;
  if (!body.empty() && body.front() == '[') {
    if (body.back() != ']')
      throw ParseError("unterminated '[' in curve coefficients", line_no);
    parts = split(body.substr(1, body.size() - 2), ',');
    if (parts.size() != 5)
      throw ParseError("expected 5 comma-separated coefficients, got " +
                           std::to_string(parts.size()),
                       line_no);
  } else {
    std::istringstream ss(body);
    std::string tok;
    while (ss >> tok) parts.push_back(tok);
    if (parts.size() != 5)
      throw ParseError("expected 5 whitespace-separated coefficients, got " +
                           std::to_string(parts.size()),
                       line_no);
  }
  std::array<Integer, 5> a;
  for (std::size_t i = 0; i < 5; ++i) a[i] = parse_integer(parts[i], line_no);
  return a;
}

ojson factored_json(const Factorization& f) {
  ojson arr = ojson::array();
  for (const auto& [p, e] : f.factors) arr.push_back(ojson::array({p.get_str(), e}));
  return arr;
}

ojson coefficients_json(const std::array<Integer, 5>& a) {
  ojson arr = ojson::array();
  for (const auto& c : a) arr.push_back(c.get_str());
  return arr;
}

std::string factorization_str(const Factorization& f) {
  if (f.factors.empty()) return "1";
  std::string out;
  for (const auto& [p, e] : f.factors) {
    if (!out.empty()) out += " * ";
    out += p.get_str();
    if (e != 1) out += "^" + std::to_string(e);
  }
  return out;
}

std::string double_str(double x) {
  std::ostringstream ss;
  ss.precision(17);
  ss << x;
  return ss.str();
}

/* Message sanitized for single-line CSV / JSON-line embedding. */
std::string flatten_message(const std::string& m) {
  std::string out = m;
  for (char& c : out)
    if (c == ',' || c == '\n' || c == '\r') c = ';';
  return out;
}

}  // namespace

const char* reduction_json_token(Reduction r) {
  switch (r) {
    case Reduction::good: return "good";
    case Reduction::split_multiplicative: return "split_multiplicative";
    case Reduction::nonsplit_multiplicative: return "nonsplit_multiplicative";
    case Reduction::additive: return "additive";
  }
  return "?";
}

bool is_blank_or_comment(const std::string& line) {
  std::string t = trim(line);
  return t.empty() || t.front() == '#';
}

CurveInput parse_curve_line(const std::string& line, std::size_t line_no) {
  std::string s = trim(line);
  if (s.empty() || s.front() == '#')
    throw ParseError("expected a curve, got a blank or comment line", line_no);
  CurveInput in;
  std::string body = s;
  auto colon = s.find(':');
  if (colon != std::string::npos) {
    std::string label = trim(s.substr(0, colon));
    if (label.empty()) throw ParseError("empty label before ':'", line_no);
    in.label = label;
    body = trim(s.substr(colon + 1));
    if (body.empty()) throw ParseError("missing coefficients after label", line_no);
  }
  in.a = parse_coefficient_body(body, line_no);
  return in;
}

std::string format_coefficients(const std::array<Integer, 5>& a) {
  std::string out = "[";
  for (std::size_t i = 0; i < 5; ++i) {
    if (i) out += ",";
    out += a[i].get_str();
  }
  out += "]";
  return out;
}

std::vector<CurveInput> read_curve_lines(std::istream& in) {
  std::vector<CurveInput> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (is_blank_or_comment(line)) continue;
    out.push_back(parse_curve_line(line, line_no));
  }
  return out;
}

std::vector<CurveInput> read_curve_csv(std::istream& in) {
  std::vector<CurveInput> out;
  std::string line;
  std::size_t line_no = 0;
  bool seen_data = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (is_blank_or_comment(line)) continue;
    std::vector<std::string> fields = split(line, ',');
    auto try_row = [&]() -> std::optional<CurveInput> {
      if (fields.size() != 5 && fields.size() != 6) return std::nullopt;
      CurveInput in_row;
      std::size_t off = 0;
      if (fields.size() == 6) {
        std::string label = trim(fields[0]);
        if (!label.empty()) in_row.label = label;
        off = 1;
      }
      try {
        for (std::size_t i = 0; i < 5; ++i)
          in_row.a[i] = parse_integer(fields[off + i], line_no);
      } catch (const ParseError&) {
        return std::nullopt;
      }
      return in_row;
    };
    auto row = try_row();
    if (row) {
      seen_data = true;
      out.push_back(std::move(*row));
    } else if (!seen_data) {
      seen_data = true;  // header row: skip it, but only once, at the top
    } else {
      throw ParseError("expected 5 or 6 comma-separated fields with integer coefficients",
                       line_no);
    }
  }
  return out;
}

unsigned long long Box::volume() const {
  unsigned long long v = 1;
  for (const auto& [lo, hi] : range) {
    if (hi < lo) return 0;
    unsigned long long span =
        static_cast<unsigned long long>(hi) - static_cast<unsigned long long>(lo) + 1;
    if (span != 0 && v > ~0ull / span) return ~0ull;
    v *= span;
  }
  return v;
}

Box parse_box(const std::string& spec) {
  Box box;
  std::array<bool, 5> seen{};
  for (const std::string& clause_raw : split(spec, ',')) {
    std::string clause = trim(clause_raw);
    if (clause.empty()) throw ParseError("empty clause in box spec \"" + spec + "\"");
    auto eq = clause.find('=');
    if (eq == std::string::npos)
      throw ParseError("box clause \"" + clause + "\" lacks '='");
    std::string key = trim(clause.substr(0, eq));
    static const std::map<std::string, std::size_t> keys{
        {"a1", 0}, {"a2", 1}, {"a3", 2}, {"a4", 3}, {"a6", 4}};
    auto it = keys.find(key);
    if (it == keys.end())
      throw ParseError("unknown coefficient \"" + key + "\" in box spec");
    if (seen[it->second])
      throw ParseError("coefficient \"" + key + "\" given twice in box spec");
    seen[it->second] = true;
    std::string val = trim(clause.substr(eq + 1));
    auto parse_long = [&](const std::string& tok) {
      Integer z = parse_integer(tok, 0);
      if (!z.fits_slong_p())
        throw ParseError("box bound \"" + tok + "\" out of range");
      return z.get_si();
    };
    auto colon = val.find(':');
    long lo, hi;
    if (colon == std::string::npos) {
      lo = hi = parse_long(val);
    } else {
      lo = parse_long(val.substr(0, colon));
      hi = parse_long(val.substr(colon + 1));
    }
    if (lo > hi)
      throw ParseError("box clause \"" + clause + "\" has lower bound above upper");
    box.range[it->second] = {lo, hi};
  }
  constexpr unsigned long long kMaxVolume = 4'000'000;
  if (box.volume() > kMaxVolume)
    throw ParseError("box of " + std::to_string(box.volume()) +
                     " models exceeds the limit of " + std::to_string(kMaxVolume));
  return box;
}

std::size_t enumerate_box(const Box& box,
                          const std::function<void(const std::array<Integer, 5>&)>& yield) {
  std::size_t singular = 0;
  std::array<long, 5> x{};
  std::array<Integer, 5> a;
  // Hand-rolled odometer so inclusive bounds near the type limits stay safe.
  std::size_t level = 0;
  for (std::size_t i = 0; i < 5; ++i) x[i] = box.range[i].first;
  if (box.volume() == 0) return 0;
  for (;;) {
    for (std::size_t i = 0; i < 5; ++i) a[i] = x[i];
    if (discriminant_of(a) == 0)
      ++singular;
    else
      yield(a);
    level = 5;
    while (level > 0) {
      --level;
      if (x[level] < box.range[level].second) {
        ++x[level];
        for (std::size_t i = level + 1; i < 5; ++i) x[i] = box.range[i].first;
        break;
      }
      if (level == 0) return singular;
    }
  }
}

std::string report_to_json(const VerificationReport& rep,
                           const std::optional<std::string>& label) {
  ojson o;
  if (label) o["label"] = *label;
  o["a_invariants"] = coefficients_json(rep.curve.minimal.coefficients());
  o["Delta"] = rep.curve.delta_min_abs.get_str();
  o["Delta_factored"] = factored_json(rep.curve.delta_factored);
  o["N"] = rep.curve.conductor.get_str();
  o["N_factored"] = factored_json(rep.curve.conductor_factored);
  o["j_num"] = rep.curve.j_num.get_str();
  o["j_den"] = rep.curve.j_den.get_str();
  ojson locals = ojson::array();
  for (const auto& d : rep.curve.locals) {
    ojson l;
    l["p"] = d.p.get_str();
    l["kodaira"] = d.kodaira.str();
    l["f"] = d.f;
    l["vp_delta"] = d.vp_delta;
    l["m"] = d.components;
    l["reduction"] = reduction_json_token(d.reduction);
    locals.push_back(std::move(l));
  }
  o["locals"] = std::move(locals);
  ojson primes = ojson::array();
  for (const auto& pr : rep.primes) {
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
    primes.push_back(std::move(q));
  }
  o["primes"] = std::move(primes);
  o["divisibility_ok"] = rep.divisibility_ok;
  o["height_check"] = to_string(rep.height_check);
  ojson th;
  th["A"] = rep.theorem.A.get_str();
  th["B"] = rep.theorem.B.get_str();
  th["applicable"] = to_string(rep.theorem.applicable);
  th["holds"] = to_string(rep.theorem.holds);
  o["theorem"] = std::move(th);
  ojson ratio;
  ratio["lo"] = rep.ratio.lo_double();
  ratio["hi"] = rep.ratio.hi_double();
  o["szpiro_ratio"] = std::move(ratio);
  return o.dump();
}

std::string report_to_human(const VerificationReport& rep,
                            const std::optional<std::string>& label) {
  std::ostringstream out;
  out << "curve " << format_coefficients(rep.curve.minimal.coefficients());
  if (label) out << "   (" << *label << ")";
  out << "\n";
  out << "  |Delta| = " << rep.curve.delta_min_abs.get_str() << " = "
      << factorization_str(rep.curve.delta_factored) << "\n";
  out << "  N       = " << rep.curve.conductor.get_str() << " = "
      << factorization_str(rep.curve.conductor_factored) << "\n";
  out << "  j       = " << rep.curve.j.get_str() << "   (|num| = "
      << rep.curve.j_num.get_str() << ", den = " << rep.curve.j_den.get_str()
      << ")\n";
  out << "  local data:\n";
  for (const auto& d : rep.curve.locals)
    out << "    p=" << d.p.get_str() << "  " << d.kodaira.str() << "  f=" << d.f
        << "  vp(Delta)=" << d.vp_delta << "  m=" << d.components << "  "
        << to_string(d.reduction) << "\n";
  out << "  prime classes:\n";
  for (const auto& pr : rep.primes) {
    out << "    p=" << pr.p.get_str() << "  class " << code(pr.type)
        << "  vp(Delta)=" << pr.vp_delta << "  vp(N)=" << pr.vp_N << "  vp(j)=";
    if (pr.vp_j)
      out << *pr.vp_j;
    else
      out << "+inf";
    out << "  allowance=" << pr.delta_p << "  bound=" << pr.rhs << "  "
        << (pr.satisfied ? (pr.equality ? "satisfied (equality)" : "satisfied")
                         : "VIOLATED")
        << "\n";
  }
  out << "  divisibility |Delta| | 16*den(j)*N^5 : "
      << (rep.divisibility_ok ? "ok" : "FAILED") << "\n";
  out << "  height h(j) <= 16*N*log(N)           : " << to_string(rep.height_check)
      << "\n";
  out << "  conditional bound (A=" << rep.theorem.A.get_str() << ", B="
      << rep.theorem.B.get_str() << ")       : applicable "
      << to_string(rep.theorem.applicable) << ", conclusion "
      << to_string(rep.theorem.holds) << "\n";
  out << "  log|Delta|/log(N) in [" << double_str(rep.ratio.lo_double()) << ", "
      << double_str(rep.ratio.hi_double()) << "]";
  return out.str();
}

std::string report_csv_header() {
  return "label,a1,a2,a3,a4,a6,Delta,N,j_num,j_den,bad_primes,bounds_ok,"
         "divisibility_ok,height_check,theorem_A,theorem_B,theorem_applicable,"
         "theorem_holds,ratio_lo,ratio_hi,error";
}

std::string report_to_csv(const VerificationReport& rep,
                          const std::optional<std::string>& label) {
  std::ostringstream out;
  out << (label ? flatten_message(*label) : "");
  for (const auto& c : rep.curve.minimal.coefficients()) out << "," << c.get_str();
  bool bounds_ok = true;
  for (const auto& pr : rep.primes) bounds_ok = bounds_ok && pr.satisfied;
  out << "," << rep.curve.delta_min_abs.get_str() << ","
      << rep.curve.conductor.get_str() << "," << rep.curve.j_num.get_str() << ","
      << rep.curve.j_den.get_str() << "," << rep.primes.size() << ","
      << (bounds_ok ? "true" : "false") << ","
      << (rep.divisibility_ok ? "true" : "false") << ","
      << to_string(rep.height_check) << "," << rep.theorem.A.get_str() << ","
      << rep.theorem.B.get_str() << "," << to_string(rep.theorem.applicable)
      << "," << to_string(rep.theorem.holds) << ","
      << double_str(rep.ratio.lo_double()) << ","
      << double_str(rep.ratio.hi_double()) << ",";
  return out.str();
}

std::string error_record(const std::optional<std::string>& label,
                         const std::array<Integer, 5>& a,
                         const std::string& kind,
                         const std::string& message,
                         ReportFormat format) {
  switch (format) {
    case ReportFormat::jsonl: {
      ojson o;
      if (label) o["label"] = *label;
      o["a_invariants"] = coefficients_json(a);
      o["error"] = kind;
      o["message"] = message;
      return o.dump();
    }
    case ReportFormat::human: {
      std::ostringstream out;
      out << "curve " << format_coefficients(a);
      if (label) out << "   (" << *label << ")";
      out << "\n  error: " << kind << ": " << message;
      return out.str();
    }
    case ReportFormat::csv: {
      std::ostringstream out;
      out << (label ? flatten_message(*label) : "");
      for (const auto& c : a) out << "," << c.get_str();
      // 14 empty data columns, then the error column.
      for (int i = 0; i < 15; ++i) out << ",";
      out << flatten_message(kind + ": " + message);
      return out.str();
    }
  }
  return {};
}

int run_ordered(std::size_t count, unsigned threads,
                const std::function<std::pair<std::string, int>(std::size_t)>& work,
                const std::function<void(const std::string&)>& emit) {
  if (count == 0) return kSeverityOk;
  if (threads == 0) threads = 1;
  threads = static_cast<unsigned>(
      std::min<std::size_t>(threads, count));

  std::atomic<std::size_t> next{0};
  std::map<std::size_t, std::pair<std::string, int>> done;
  std::mutex mu;
  std::condition_variable cv;
  std::exception_ptr first_error;

  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (;;) {
        std::size_t i = next.fetch_add(1);
        if (i >= count) return;
        std::pair<std::string, int> r{std::string{}, kSeverityCheckFailed};
        try {
          r = work(i);
        } catch (...) {
          std::lock_guard<std::mutex> lk(mu);
          if (!first_error) first_error = std::current_exception();
          done.emplace(i, std::move(r));
          cv.notify_all();
          continue;
        }
        std::lock_guard<std::mutex> lk(mu);
        done.emplace(i, std::move(r));
        cv.notify_all();
      }
    });
  }

  int severity = kSeverityOk;
  {
    std::unique_lock<std::mutex> lk(mu);
    for (std::size_t i = 0; i < count; ++i) {
      cv.wait(lk, [&] { return done.count(i) != 0; });
      auto r = std::move(done.at(i));
      done.erase(i);
      severity = std::max(severity, r.second);
      if (!r.first.empty()) {
        lk.unlock();
        emit(r.first);
        lk.lock();
      }
    }
  }
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
  return severity;
}

int severity_of(const VerificationReport& rep) {
  int s = kSeverityOk;
  for (const auto& pr : rep.primes)
    if (!pr.satisfied) s = kSeverityCheckFailed;
  if (!rep.divisibility_ok) s = kSeverityCheckFailed;
  if (rep.height_check != Verdict::holds) s = kSeverityCheckFailed;
  if (rep.theorem.applicable == Verdict::indeterminate) s = kSeverityCheckFailed;
  if (rep.theorem.applicable == Verdict::holds &&
      rep.theorem.holds != Verdict::holds)
    s = kSeverityCheckFailed;
  return s;
}

namespace {

std::string render_report(const VerificationReport& rep,
                          const std::optional<std::string>& label,
                          ReportFormat format) {
  switch (format) {
    case ReportFormat::jsonl: return report_to_json(rep, label);
    case ReportFormat::human: return report_to_human(rep, label);
    case ReportFormat::csv: return report_to_csv(rep, label);
  }
  return {};
}

}  // namespace

std::pair<std::string, int> verify_to_record(const CurveInput& in,
                                             const VerifyParams& params,
                                             ReportFormat format) {
  try {
    WeierstrassModel m(in.a);
    VerificationReport rep = verify(m, params);
    return {render_report(rep, in.label, format), severity_of(rep)};
  } catch (const SingularModelError& e) {
    return {error_record(in.label, in.a, "singular", e.what(), format),
            kSeverityOk};
  } catch (const FactorBudgetError& e) {
    return {error_record(in.label, in.a, "factor_budget_exhausted", e.what(),
                         format),
            kSeverityBudget};
  } catch (const BoundViolationError& e) {
    return {error_record(in.label, in.a, "bound_violation", e.what(), format),
            kSeverityCheckFailed};
  }
}

int run_verify_stream(const std::vector<CurveInput>& inputs,
                      const VerifyParams& params, unsigned threads,
                      ReportFormat format, std::ostream& out) {
  if (format == ReportFormat::csv) out << report_csv_header() << "\n";
  return run_ordered(
      inputs.size(), threads,
      [&](std::size_t i) { return verify_to_record(inputs[i], params, format); },
      [&](const std::string& text) { out << text << "\n"; });
}

namespace {

struct ScanRow {
  std::array<Integer, 5> a;
  Integer conductor;
  Integer delta_abs;
  double ratio_lo = 0, ratio_hi = 0;
  unsigned equal_class2 = 0;
  std::vector<std::string> equal_class3_primes;
  bool ok = false;  // report computed (not an error record)
};

}  // namespace

int run_scan(const Box& box, const VerifyParams& params, unsigned threads,
             std::size_t top, ReportFormat format, std::ostream& out) {
  std::vector<std::array<Integer, 5>> tuples;
  std::size_t singular = enumerate_box(
      box, [&](const std::array<Integer, 5>& a) { tuples.push_back(a); });

  if (format == ReportFormat::csv) out << report_csv_header() << "\n";

  std::vector<ScanRow> rows(tuples.size());
  int severity = run_ordered(
      tuples.size(), threads,
      [&](std::size_t i) -> std::pair<std::string, int> {
        const auto& a = tuples[i];
        ScanRow& row = rows[i];  // distinct slot per index: no data race
        row.a = a;
        try {
          WeierstrassModel m(a);
          VerificationReport rep = verify(m, params);
          row.conductor = rep.curve.conductor;
          row.delta_abs = rep.curve.delta_min_abs;
          row.ratio_lo = rep.ratio.lo_double();
          row.ratio_hi = rep.ratio.hi_double();
          for (const auto& pr : rep.primes) {
            if (!pr.equality) continue;
            if (pr.type == PrimeType::multiplicative_nonintegral)
              ++row.equal_class2;
            else if (pr.type == PrimeType::additive_nonintegral)
              row.equal_class3_primes.push_back(pr.p.get_str());
          }
          row.ok = true;
          return {render_report(rep, std::nullopt, format), severity_of(rep)};
        } catch (const SingularModelError& e) {
          return {error_record(std::nullopt, a, "singular", e.what(), format),
                  kSeverityOk};
        } catch (const FactorBudgetError& e) {
          return {error_record(std::nullopt, a, "factor_budget_exhausted",
                               e.what(), format),
                  kSeverityBudget};
        } catch (const BoundViolationError& e) {
          return {error_record(std::nullopt, a, "bound_violation", e.what(),
                               format),
                  kSeverityCheckFailed};
        }
      },
      [&](const std::string& text) { out << text << "\n"; });

  if (top == 0) return severity;

  std::vector<std::size_t> order;
  order.reserve(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    if (rows[i].ok) order.push_back(i);
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    if (rows[x].ratio_hi != rows[y].ratio_hi)
      return rows[x].ratio_hi > rows[y].ratio_hi;
    return x < y;  // deterministic tie-break: enumeration order
  });
  if (order.size() > top) order.resize(top);

  unsigned long long equal2_total = 0;
  std::vector<std::pair<std::array<Integer, 5>, std::string>> equal3;
  for (const auto& row : rows) {
    if (!row.ok) continue;
    equal2_total += row.equal_class2;
    for (const auto& p : row.equal_class3_primes) equal3.emplace_back(row.a, p);
  }

  switch (format) {
    case ReportFormat::jsonl: {
      ojson top_arr = ojson::array();
      for (std::size_t i : order) {
        ojson e;
        e["a_invariants"] = coefficients_json(rows[i].a);
        e["N"] = rows[i].conductor.get_str();
        e["Delta"] = rows[i].delta_abs.get_str();
        ojson r;
        r["lo"] = rows[i].ratio_lo;
        r["hi"] = rows[i].ratio_hi;
        e["szpiro_ratio"] = std::move(r);
        top_arr.push_back(std::move(e));
      }
      ojson eq3 = ojson::array();
      for (const auto& [a, p] : equal3) {
        ojson e;
        e["a_invariants"] = coefficients_json(a);
        e["p"] = p;
        eq3.push_back(std::move(e));
      }
      ojson summary;
      summary["models"] = tuples.size();
      summary["singular_skipped"] = singular;
      summary["top_by_ratio"] = std::move(top_arr);
      summary["class2_equalities"] = equal2_total;
      summary["class3_equalities"] = std::move(eq3);
      ojson o;
      o["scan_summary"] = std::move(summary);
      out << o.dump() << "\n";
      break;
    }
    case ReportFormat::human: {
      out << "scan summary: " << tuples.size() << " models, " << singular
          << " singular tuples skipped\n";
      out << "top " << order.size() << " by Szpiro ratio (upper bound):\n";
      for (std::size_t i : order)
        out << "  " << format_coefficients(rows[i].a) << "  N="
            << rows[i].conductor.get_str() << "  |Delta|="
            << rows[i].delta_abs.get_str() << "  ratio in ["
            << double_str(rows[i].ratio_lo) << ", " << double_str(rows[i].ratio_hi)
            << "]\n";
      out << "class-2 equalities: " << equal2_total << "\n";
      out << "class-3 equalities: " << equal3.size() << "\n";
      for (const auto& [a, p] : equal3)
        out << "  " << format_coefficients(a) << " at p=" << p << "\n";
      break;
    }
    case ReportFormat::csv: {
      out << "# scan summary: " << tuples.size() << " models, " << singular
          << " singular tuples skipped\n";
      for (std::size_t i : order)
        out << "# top: " << format_coefficients(rows[i].a) << " N="
            << rows[i].conductor.get_str() << " ratio_hi="
            << double_str(rows[i].ratio_hi) << "\n";
      out << "# class-2 equalities: " << equal2_total << "\n";
      for (const auto& [a, p] : equal3)
        out << "# class-3 equality: " << format_coefficients(a) << " at p=" << p
            << "\n";
      break;
    }
  }
  return severity;
}

}  // namespace szpiro
