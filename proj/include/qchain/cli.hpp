#pragma once

// Spec files, time strings, output formatting and the qchain subcommands.

#include <iosfwd>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "qchain/closedform.hpp"

namespace qchain::cli {

enum ExitCode : int {
  kOk = 0,
  kImperfect = 1,
  kParse = 2,
  kValidation = 3,
  kTimeBound = 4,
  kNotOddOdd = 5,
  kPhaseCondition = 6,
};

/// Either a polynomial family or an explicit (J, h) chain.
struct ChainSpecFile {
  std::optional<FamilySpec> family;
  std::optional<SpinChain> chain;
  OffDiagSign sign = OffDiagSign::NegativeOffDiag;

  int N() const;
  SpinChain spin_chain() const;
};

/// JSON {"family", "N", "q": {"num", "den"}, "params": {...}, "sign": "pos"|"neg"},
/// or {"family": "chain", "J": [...], "h": [...]}. Parameter values may be JSON
/// integers, decimals (kept as doubles), strings "a/b" or "1.25" (exact), or
/// {"num", "den"} objects. Throws ParseError; validation is separate.
ChainSpecFile parse_spec(const std::string& text);
/// Also accepts the CSV written by the build command.
ChainSpecFile load_spec(const std::string& path);
/// Throws ValidationError listing every violation.
void validate_spec(const ChainSpecFile& spec);

/// "9pi", "3/2pi", "-pi", "pi/4" give exact multiples of pi; plain decimals are seconds.
using TimePoint = std::variant<ExactPhaseTime, double>;
TimePoint parse_time(std::string_view text);

/// 17 significant digits.
std::string format_real(double x);

/// Row n of U multiplied by (-1)^n for the positive off-diagonal convention.
SpectralDecomposition decompose(const ChainSpecFile& spec);

void cmd_build(const ChainSpecFile& spec, std::ostream& out);
void cmd_spectrum(const ChainSpecFile& spec, std::ostream& out);
/// Rows t,re,im,abs,exact_phase. Warns on err when a decimal time is used.
void cmd_evolve(const ChainSpecFile& spec, int r, int s, const std::vector<TimePoint>& times,
                std::ostream& out, std::ostream& err);
/// Returns kOk for Perfect, kImperfect otherwise.
int cmd_pst_check(const ChainSpecFile& spec, std::ostream& out);
void cmd_closed_form(const ChainSpecFile& spec, int r, int s, std::ostream& out);
/// Rows value,abs_f,is_max for |f_{N,0}(T)| with the named parameter set to each grid value.
void cmd_scan(const ChainSpecFile& spec, const std::string& parameter,
              const std::vector<Number>& grid, std::ostream& out);

/// Evenly spaced exact times between two pi multiples, or seconds otherwise.
std::vector<TimePoint> time_grid(const TimePoint& start, const TimePoint& stop, int count);
/// Linear (exact when both ends are exact) or logarithmic grid.
std::vector<Number> value_grid(const Number& start, const Number& stop, int count, bool log);

/// Entry point of the qchain tool; maps exceptions to exit codes.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace qchain::cli
