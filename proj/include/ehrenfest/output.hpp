#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include "ehrenfest/run.hpp"

namespace ehrenfest {

inline constexpr const char* kCsvHeader =
    "t,q_c,p_c,m_qq,m_qp,m_pq,m_pp,det_m,sigma,a_sc,q_sc,p_sc,q_qm,p_qm,norm_qm";

/// Header row plus one line per sample, 12 significant digits. Quantum
/// cells are empty when the record has no quantum columns.
void write_csv(std::ostream& out, const PathRecord& record);

/// Inverse of write_csv up to the printed precision. Throws ConfigError on
/// a wrong header or malformed row.
PathRecord read_csv(std::istream& in);

/// Flat JSON object with the ComparisonSummary fields.
std::string summary_json(const ComparisonSummary& summary);

/// q(t) for the three families: classical dashed, semiclassical and quantum
/// solid. The quantum line is omitted when absent.
std::string render_svg(const PathRecord& record, const std::string& title);

/// Writes <prefix>.csv, <prefix>.svg and, when a summary is given,
/// <prefix>.summary.json. Throws IoError if a file cannot be written.
void emit(const PathRecord& record, const std::optional<ComparisonSummary>& summary,
          const std::filesystem::path& prefix, const std::string& title = "");

}  // namespace ehrenfest
