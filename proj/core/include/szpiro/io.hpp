/* Curve ingestion (lines, CSV tables, enumeration boxes), report rendering
 * (JSON lines, CSV, human-readable), and the deterministic parallel driver
 * that powers the command-line tool. */
#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "szpiro/verify.hpp"

namespace szpiro {

/* Malformed textual input; `line()` is 1-based when known, 0 otherwise. */
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& what, std::size_t line_no = 0)
      : std::runtime_error(line_no == 0
                               ? what
                               : "line " + std::to_string(line_no) + ": " + what),
        line_(line_no) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/* A parsed curve: raw coefficients (possibly of a singular equation; callers
 * decide how to surface that) plus an optional label. */
struct CurveInput {
  std::optional<std::string> label;
  std::array<Integer, 5> a{};

  bool operator==(const CurveInput&) const = default;
};

/* True for lines that carry no curve: empty, whitespace-only, or comments
 * starting with '#'. */
bool is_blank_or_comment(const std::string& line);

/* Accepts `label: [a1,a2,a3,a4,a6]`, `[a1,a2,a3,a4,a6]` (optional spaces
 * after commas / inside brackets), or five whitespace-separated integers with
 * an optional `label:` prefix.  Throws ParseError (tagged with line_no) on
 * anything else.  Does not evaluate the discriminant. */
CurveInput parse_curve_line(const std::string& line, std::size_t line_no = 0);

/* Canonical printed form "[a1,a2,a3,a4,a6]"; parse_curve_line inverts it. */
std::string format_coefficients(const std::array<Integer, 5>& a);

/* All curve lines of a stream, skipping blanks and comments.  Throws
 * ParseError with the offending 1-based line number. */
std::vector<CurveInput> read_curve_lines(std::istream& in);

/* CSV rows `a1,a2,a3,a4,a6` or `label,a1,a2,a3,a4,a6`.  A first row whose
 * trailing five fields are not all integers is treated as a header and
 * skipped; later malformed rows throw ParseError.  Blank lines and `#`
 * comments are skipped.  Quoting is not supported. */
std::vector<CurveInput> read_curve_csv(std::istream& in);

/* Inclusive coefficient ranges for a1, a2, a3, a4, a6 (in that order). */
struct Box {
  std::array<std::pair<long, long>, 5> range{
      {{0, 0}, {0, 0}, {0, 0}, {0, 0}, {0, 0}}};

  unsigned long long volume() const;
};

/* Comma-separated clauses `ai=lo:hi` or `ai=v` with i in {1,2,3,4,6};
 * unmentioned coefficients default to 0.  Example:
 * "a1=0:1,a2=-1:1,a3=0:1,a4=-10:10,a6=-10:10".  Throws ParseError on bad
 * syntax, lo > hi, or a box of more than 10^8 tuples. */
Box parse_box(const std::string& spec);

/* Streams every coefficient tuple in the box with nonzero discriminant,
 * exactly once, in lexicographic order (a1 slowest, a6 fastest).  Returns the
 * number of singular tuples skipped. */
std::size_t enumerate_box(const Box& box,
                          const std::function<void(const std::array<Integer, 5>&)>& yield);

enum class ReportFormat { jsonl, human, csv };

/* Machine-friendly reduction-kind token used in JSON output
 * ("split_multiplicative" etc., no spaces). */
const char* reduction_json_token(Reduction r);

/* One verification report as a single JSON object (no trailing newline).
 * Arbitrary-precision integers appear as decimal strings, machine-sized
 * counts as JSON numbers, interval endpoints as outward-rounded doubles. */
std::string report_to_json(const VerificationReport& rep,
                           const std::optional<std::string>& label);

/* Multi-line human-readable block for one curve. */
std::string report_to_human(const VerificationReport& rep,
                            const std::optional<std::string>& label);

/* Flat one-line-per-curve CSV rendering (summary columns). */
std::string report_csv_header();
std::string report_to_csv(const VerificationReport& rep,
                          const std::optional<std::string>& label);

/* Structured record for a curve that could not be verified (singular
 * equation, factorization budget exhausted, internal bound violation). */
std::string error_record(const std::optional<std::string>& label,
                         const std::array<Integer, 5>& a,
                         const std::string& kind,
                         const std::string& message,
                         ReportFormat format);

/* Runs work(0..count-1) on `threads` workers and hands each result string to
 * emit strictly in index order on the calling thread.  Returns the maximum
 * severity returned by any work() call.  Output is a pure function of the
 * inputs: byte-identical across runs and worker counts. */
int run_ordered(std::size_t count, unsigned threads,
                const std::function<std::pair<std::string, int>(std::size_t)>& work,
                const std::function<void(const std::string&)>& emit);

/* Exit-code severities shared by the drivers below. */
inline constexpr int kSeverityOk = 0;        // every check holds
inline constexpr int kSeverityCheckFailed = 1;  // failed or indeterminate check
inline constexpr int kSeverityInputError = 2;   // malformed input
inline constexpr int kSeverityBudget = 3;       // factorization budget exhausted

/* Severity contributed by one successfully computed report. */
int severity_of(const VerificationReport& rep);

/* Verifies one curve, rendering either a report or an error record. */
std::pair<std::string, int> verify_to_record(const CurveInput& in,
                                             const VerifyParams& params,
                                             ReportFormat format);

/* Verifies a batch in parallel, emitting one record per input in input order.
 * Returns the overall severity (max over curves). */
int run_verify_stream(const std::vector<CurveInput>& inputs,
                      const VerifyParams& params, unsigned threads,
                      ReportFormat format, std::ostream& out);

/* Enumerates the box, verifies every nonsingular curve, emits per-curve
 * records in enumeration order, and appends a ranked summary of the `top`
 * largest Szpiro ratios (log Delta / log N, ranked by upper bound) together
 * with the equality-flag tally when top > 0.  Returns overall severity. */
int run_scan(const Box& box, const VerifyParams& params, unsigned threads,
             std::size_t top, ReportFormat format, std::ostream& out);

}  // namespace szpiro
