#pragma once

#include <string>
#include <vector>

#include "qkr/sweep.hpp"

namespace qkr::sweep {

inline constexpr const char* kCsvHeader =
    "T_us,E_q,E_q_err,E_cl,E_cl_err,Dq_analytic,Dcl_analytic";

// Decimal (non-exponent) notation with 10 significant digits; "nan" for NaN.
std::string format_sig10(double value);

std::string to_csv(const EnergyCurve& curve);
void emit_csv(const EnergyCurve& curve, const std::string& path);

struct ParsedCsv {
  std::vector<std::string> comments;  // without the leading '#'
  std::vector<CurveRow> rows;
};
ParsedCsv parse_csv_text(const std::string& text);
ParsedCsv parse_csv(const std::string& path);

// Self-contained SVG: E' against T for every populated backend, error bars on
// simulated series, lines for analytic ones, legend.
std::string to_svg(const EnergyCurve& curve);
void emit_plot(const EnergyCurve& curve, const std::string& path);

}  // namespace qkr::sweep
