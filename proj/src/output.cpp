#include "qkr/output.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "qkr/error.hpp"

namespace qkr::sweep {

namespace {

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << content;
  out.flush();
  if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

double parse_field(const std::string& s) {
  if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  std::size_t used = 0;
  const double v = std::stod(s, &used);
  if (used != s.size()) throw std::invalid_argument(s);
  return v;
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

}  // namespace

std::string format_sig10(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  int decimals = 9;
  if (value != 0.0) {
    const int exponent = static_cast<int>(std::floor(std::log10(std::abs(value))));
    decimals = std::max(0, 9 - exponent);
  }
  char buf[512];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, value);
  return buf;
}

std::string to_csv(const EnergyCurve& curve) {
  std::ostringstream o;
  o << "# qkr sweep\n";
  o << "# version=" << curve.version << '\n';
  o << "# config_hash=" << curve.config_hash << '\n';
  o << "# seed=" << curve.seed << '\n';
  o << "# phi_d=" << format_sig10(curve.phi_d) << '\n';
  for (const auto& f : curve.failures) o << "# failed T_us=" << f << '\n';
  o << kCsvHeader << '\n';
  for (const auto& r : curve.rows) {
    o << format_sig10(r.period_us) << ',' << format_sig10(r.e_q) << ','
      << format_sig10(r.e_q_err) << ',' << format_sig10(r.e_cl) << ','
      << format_sig10(r.e_cl_err) << ',' << format_sig10(r.dq_analytic) << ','
      << format_sig10(r.dcl_analytic) << '\n';
  }
  return o.str();
}

void emit_csv(const EnergyCurve& curve, const std::string& path) {
  write_file(path, to_csv(curve));
}

ParsedCsv parse_csv_text(const std::string& text) {
  ParsedCsv out;
  std::istringstream in(text);
  std::string line;
  bool header = false;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      out.comments.push_back(line.substr(1));
      continue;
    }
    if (!header) {
      if (line != kCsvHeader) throw ConfigError("csv: unexpected header '" + line + "'");
      header = true;
      continue;
    }
    std::vector<double> f;
    std::stringstream cells(line);
    std::string cell;
    try {
      while (std::getline(cells, cell, ',')) f.push_back(parse_field(cell));
    } catch (const std::exception&) {
      throw ConfigError("csv: bad number on line " + std::to_string(number));
    }
    if (f.size() != 7) throw ConfigError("csv: line " + std::to_string(number) + " needs 7 fields");
    out.rows.push_back({f[0], f[1], f[2], f[3], f[4], f[5], f[6]});
  }
  if (!header) throw ConfigError("csv: missing header");
  return out;
}

ParsedCsv parse_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read csv '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_csv_text(text.str());
}

std::string to_svg(const EnergyCurve& curve) {
  if (curve.rows.empty()) throw DomainError("emit_plot: empty curve");
  constexpr double W = 720, H = 440, L = 70, R = 170, T = 30, B = 55;
  const double pw = W - L - R, ph = H - T - B;

  struct Series {
    const char* name;
    const char* colour;
    Source source;
    double CurveRow::*value;
    double CurveRow::*err;
  };
  const Series series[] = {
      {"quantum", "#1f5fbf", curve.quantum_source, &CurveRow::e_q, &CurveRow::e_q_err},
      {"classical", "#c0392b", curve.classical_source, &CurveRow::e_cl, &CurveRow::e_cl_err},
  };

  double xmin = curve.rows.front().period_us, xmax = curve.rows.back().period_us;
  if (xmax <= xmin) {
    xmin -= 1.0;
    xmax += 1.0;
  }
  double ymin = 0.0, ymax = 0.0;
  for (const auto& s : series) {
    if (s.source == Source::None) continue;
    for (const auto& r : curve.rows) {
      const double v = r.*(s.value), e = r.*(s.err);
      if (!std::isfinite(v)) continue;
      ymax = std::max(ymax, v + (std::isfinite(e) ? e : 0.0));
      ymin = std::min(ymin, v - (std::isfinite(e) ? e : 0.0));
    }
  }
  if (ymax <= ymin) ymax = ymin + 1.0;
  ymax *= 1.05;
  auto sx = [&](double x) { return L + (x - xmin) / (xmax - xmin) * pw; };
  auto sy = [&](double y) { return T + (1.0 - (y - ymin) / (ymax - ymin)) * ph; };

  std::ostringstream o;
  o << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
    << "\" viewBox=\"0 0 " << W << ' ' << H << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  o << "<title>E' after kicks vs pulse period, phi_d=" << fmt("%g", curve.phi_d) << "</title>\n";
  o << "<rect x=\"0\" y=\"0\" width=\"" << W << "\" height=\"" << H << "\" fill=\"white\"/>\n";
  o << "<rect x=\"" << L << "\" y=\"" << T << "\" width=\"" << pw << "\" height=\"" << ph
    << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (int i = 0; i <= 5; ++i) {
    const double xv = xmin + (xmax - xmin) * i / 5.0;
    const double yv = ymin + (ymax - ymin) * i / 5.0;
    o << "<line x1=\"" << sx(xv) << "\" y1=\"" << T + ph << "\" x2=\"" << sx(xv) << "\" y2=\""
      << T + ph + 5 << "\" stroke=\"black\"/>";
    o << "<text x=\"" << sx(xv) << "\" y=\"" << T + ph + 18 << "\" text-anchor=\"middle\">"
      << fmt("%.3g", xv) << "</text>\n";
    o << "<line x1=\"" << L - 5 << "\" y1=\"" << sy(yv) << "\" x2=\"" << L << "\" y2=\""
      << sy(yv) << "\" stroke=\"black\"/>";
    o << "<text x=\"" << L - 8 << "\" y=\"" << sy(yv) + 4 << "\" text-anchor=\"end\">"
      << fmt("%.3g", yv) << "</text>\n";
  }
  o << "<text x=\"" << L + pw / 2 << "\" y=\"" << H - 12
    << "\" text-anchor=\"middle\">T (us)</text>\n";
  o << "<text x=\"18\" y=\"" << T + ph / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 18 "
    << T + ph / 2 << ")\">E' (two-photon recoils^2 / 2)</text>\n";

  int legend = 0;
  for (const auto& s : series) {
    if (s.source == Source::None) continue;
    const bool simulated = s.source == Source::Simulation;
    o << "<g class=\"series " << s.name << (simulated ? " simulation" : " analytic") << "\">\n";
    if (simulated) {
      for (const auto& r : curve.rows) {
        const double v = r.*(s.value), e = r.*(s.err);
        if (!std::isfinite(v)) continue;
        if (std::isfinite(e) && e > 0.0) {
          o << "<line class=\"errorbar\" x1=\"" << sx(r.period_us) << "\" y1=\"" << sy(v - e)
            << "\" x2=\"" << sx(r.period_us) << "\" y2=\"" << sy(v + e) << "\" stroke=\""
            << s.colour << "\"/>\n";
        }
        o << "<circle class=\"marker\" cx=\"" << sx(r.period_us) << "\" cy=\"" << sy(v)
          << "\" r=\"2.5\" fill=\"" << s.colour << "\"/>\n";
      }
    } else {
      o << "<polyline class=\"line\" fill=\"none\" stroke=\"" << s.colour
        << "\" stroke-dasharray=\"4 3\" points=\"";
      for (const auto& r : curve.rows) {
        const double v = r.*(s.value);
        if (std::isfinite(v)) o << sx(r.period_us) << ',' << sy(v) << ' ';
      }
      o << "\"/>\n";
    }
    o << "</g>\n";
    const double ly = T + 15 + 20 * legend++;
    o << "<text x=\"" << L + pw + 15 << "\" y=\"" << ly + 4 << "\" fill=\"" << s.colour << "\">"
      << s.name << (simulated ? " (simulated)" : " (analytic)") << "</text>\n";
  }
  o << "</svg>\n";
  return o.str();
}

void emit_plot(const EnergyCurve& curve, const std::string& path) {
  write_file(path, to_svg(curve));
}

}  // namespace qkr::sweep
