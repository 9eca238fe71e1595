#include "ehrenfest/output.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <json.hpp>

#include "ehrenfest/errors.hpp"

namespace ehrenfest {

namespace {

std::string fmt12(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

using Column = std::vector<double> PathRecord::*;

constexpr Column kColumns[] = {
    &PathRecord::t,    &PathRecord::q_c,   &PathRecord::p_c,  &PathRecord::m_qq,
    &PathRecord::m_qp, &PathRecord::m_pq,  &PathRecord::m_pp, &PathRecord::det_m,
    &PathRecord::sigma, &PathRecord::a_sc, &PathRecord::q_sc, &PathRecord::p_sc,
    &PathRecord::q_qm, &PathRecord::p_qm,  &PathRecord::norm_qm,
};
constexpr std::size_t kQuantumFirst = 12;

}  // namespace

void write_csv(std::ostream& out, const PathRecord& record) {
  out << kCsvHeader << '\n';
  const bool quantum = record.has_quantum();
  for (std::size_t k = 0; k < record.size(); ++k) {
    for (std::size_t c = 0; c < std::size(kColumns); ++c) {
      if (c) out << ',';
      if (c >= kQuantumFirst && !quantum) continue;
      out << fmt12((record.*kColumns[c])[k]);
    }
    out << '\n';
  }
}

PathRecord read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ConfigError("csv: empty input");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kCsvHeader) throw ConfigError("csv: unexpected header '" + line + "'");

  PathRecord record;
  int line_no = 1;
  std::optional<bool> quantum;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string_view> cells;
    std::string_view rest = line;
    while (true) {
      const auto comma = rest.find(',');
      cells.push_back(rest.substr(0, comma));
      if (comma == std::string_view::npos) break;
      rest = rest.substr(comma + 1);
    }
    if (cells.size() != std::size(kColumns))
      throw ConfigError("csv line " + std::to_string(line_no) + ": expected 15 cells");
    const bool row_quantum = !cells[kQuantumFirst].empty();
    if (quantum && *quantum != row_quantum)
      throw ConfigError("csv line " + std::to_string(line_no) + ": quantum cells present on some rows only");
    quantum = row_quantum;
    for (std::size_t c = 0; c < cells.size(); ++c) {
      if (c >= kQuantumFirst && !row_quantum) {
        if (!cells[c].empty())
          throw ConfigError("csv line " + std::to_string(line_no) + ": partial quantum columns");
        continue;
      }
      double v = 0.0;
      const auto [ptr, ec] = std::from_chars(cells[c].data(), cells[c].data() + cells[c].size(), v);
      if (ec != std::errc() || ptr != cells[c].data() + cells[c].size())
        throw ConfigError("csv line " + std::to_string(line_no) + ": bad number '" +
                          std::string(cells[c]) + "'");
      (record.*kColumns[c]).push_back(v);
    }
  }
  return record;
}

std::string summary_json(const ComparisonSummary& s) {
  nlohmann::ordered_json j;
  j["max_dev_sc_qm"] = s.max_dev_sc_qm;
  j["max_dev_c_qm"] = s.max_dev_c_qm;
  j["turning_time_c"] = s.turning_time_c;
  j["turning_time_sc"] = s.turning_time_sc;
  j["turning_time_qm"] = s.turning_time_qm;
  j["a_sc0"] = s.accel_sc0;
  j["a_quant0"] = s.accel_quantum0;
  j["a_c0"] = s.accel_classical0;
  return j.dump(2) + "\n";
}

namespace {

struct Frame {
  double width = 720.0, height = 440.0;
  double left = 70.0, right = 20.0, top = 40.0, bottom = 50.0;
  double t0, t1, q0, q1;

  double x(double t) const { return left + (t - t0) / (t1 - t0) * (width - left - right); }
  double y(double q) const { return height - bottom - (q - q0) / (q1 - q0) * (height - top - bottom); }
};

// 1, 2 or 5 times a power of ten, giving about five intervals.
double tick_step(double span) {
  const double raw = span / 5.0;
  const double base = std::pow(10.0, std::floor(std::log10(raw)));
  for (double m : {1.0, 2.0, 5.0})
    if (raw <= m * base) return m * base;
  return 10.0 * base;
}

void polyline(std::ostream& out, const Frame& f, const std::vector<double>& t,
              const std::vector<double>& q, const char* colour, bool dashed) {
  out << "<polyline fill=\"none\" stroke=\"" << colour << "\" stroke-width=\"2\"";
  if (dashed) out << " stroke-dasharray=\"8,5\"";
  out << " points=\"";
  for (std::size_t k = 0; k < t.size(); ++k) {
    if (k) out << ' ';
    out << std::fixed << std::setprecision(2) << f.x(t[k]) << ',' << f.y(q[k]);
  }
  out << "\"/>\n";
}

}  // namespace

std::string render_svg(const PathRecord& r, const std::string& title) {
  std::ostringstream out;
  if (r.size() < 2) throw std::invalid_argument("render_svg: need at least two samples");
  Frame f;
  f.t0 = r.t.front();
  f.t1 = r.t.back();
  double lo = std::min(*std::min_element(r.q_c.begin(), r.q_c.end()),
                       *std::min_element(r.q_sc.begin(), r.q_sc.end()));
  double hi = std::max(*std::max_element(r.q_c.begin(), r.q_c.end()),
                       *std::max_element(r.q_sc.begin(), r.q_sc.end()));
  if (r.has_quantum()) {
    lo = std::min(lo, *std::min_element(r.q_qm.begin(), r.q_qm.end()));
    hi = std::max(hi, *std::max_element(r.q_qm.begin(), r.q_qm.end()));
  }
  const double pad = std::max(0.05 * (hi - lo), 1e-6);
  f.q0 = lo - pad;
  f.q1 = hi + pad;

  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << f.width << "\" height=\""
      << f.height << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  if (!title.empty())
    out << "<text x=\"" << f.width / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">"
        << title << "</text>\n";

  out << "<g stroke=\"#ccc\" stroke-width=\"1\">\n";
  const double dt_tick = tick_step(f.t1 - f.t0);
  const double dq_tick = tick_step(f.q1 - f.q0);
  std::ostringstream labels;
  labels << std::setprecision(6);
  for (double t = std::ceil(f.t0 / dt_tick) * dt_tick; t <= f.t1 + 1e-12; t += dt_tick) {
    out << "<line x1=\"" << f.x(t) << "\" y1=\"" << f.top << "\" x2=\"" << f.x(t) << "\" y2=\""
        << f.height - f.bottom << "\"/>\n";
    labels << "<text x=\"" << f.x(t) << "\" y=\"" << f.height - f.bottom + 16
           << "\" text-anchor=\"middle\">" << (std::abs(t) < 1e-12 ? 0.0 : t) << "</text>\n";
  }
  for (double q = std::ceil(f.q0 / dq_tick) * dq_tick; q <= f.q1 + 1e-12; q += dq_tick) {
    out << "<line x1=\"" << f.left << "\" y1=\"" << f.y(q) << "\" x2=\"" << f.width - f.right
        << "\" y2=\"" << f.y(q) << "\"/>\n";
    labels << "<text x=\"" << f.left - 6 << "\" y=\"" << f.y(q) + 4 << "\" text-anchor=\"end\">"
           << (std::abs(q) < 1e-12 ? 0.0 : q) << "</text>\n";
  }
  out << "</g>\n" << labels.str();
  out << "<rect x=\"" << f.left << "\" y=\"" << f.top << "\" width=\"" << f.width - f.left - f.right
      << "\" height=\"" << f.height - f.top - f.bottom << "\" fill=\"none\" stroke=\"black\"/>\n";
  out << "<text x=\"" << (f.left + f.width - f.right) / 2 << "\" y=\"" << f.height - 12
      << "\" text-anchor=\"middle\">t</text>\n";
  out << "<text x=\"18\" y=\"" << (f.top + f.height - f.bottom) / 2
      << "\" text-anchor=\"middle\" transform=\"rotate(-90 18 " << (f.top + f.height - f.bottom) / 2
      << ")\">q</text>\n";

  polyline(out, f, r.t, r.q_c, "#2ca02c", true);
  polyline(out, f, r.t, r.q_sc, "#d62728", false);
  if (r.has_quantum()) polyline(out, f, r.t, r.q_qm, "#1f77b4", false);

  struct Legend { const char* label; const char* colour; bool dashed; };
  std::vector<Legend> legend{{"classical", "#2ca02c", true}, {"semiclassical", "#d62728", false}};
  if (r.has_quantum()) legend.push_back({"quantum", "#1f77b4", false});
  double ly = f.top + 16;
  for (const Legend& l : legend) {
    const double lx = f.left + 12;
    out << "<line x1=\"" << lx << "\" y1=\"" << ly << "\" x2=\"" << lx + 28 << "\" y2=\"" << ly
        << "\" stroke=\"" << l.colour << "\" stroke-width=\"2\""
        << (l.dashed ? " stroke-dasharray=\"8,5\"" : "") << "/>\n";
    out << "<text x=\"" << lx + 34 << "\" y=\"" << ly + 4 << "\">" << l.label << "</text>\n";
    ly += 18;
  }
  out << "</svg>\n";
  return out.str();
}

namespace {

void write_file(const std::filesystem::path& path, const std::string& contents) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw IoError("cannot open '" + path.string() + "' for writing");
  file << contents;
  file.close();
  if (!file) throw IoError("failed writing '" + path.string() + "'");
}

std::filesystem::path with_suffix(const std::filesystem::path& prefix, const char* suffix) {
  return std::filesystem::path(prefix.string() + suffix);
}

}  // namespace

void emit(const PathRecord& record, const std::optional<ComparisonSummary>& summary,
          const std::filesystem::path& prefix, const std::string& title) {
  std::ostringstream csv;
  write_csv(csv, record);
  write_file(with_suffix(prefix, ".csv"), csv.str());
  if (summary) write_file(with_suffix(prefix, ".summary.json"), summary_json(*summary));
  write_file(with_suffix(prefix, ".svg"), render_svg(record, title));
}

}  // namespace ehrenfest
