#pragma once

#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "novikov/spectrum.hpp"
#include "novikov/vk.hpp"

namespace novikov {

using json = nlohmann::ordered_json;

/// "%.12e".
std::string format_number(double v);

struct CsvTable {
  /// Written as "# key=value" lines.
  std::vector<std::pair<std::string, std::string>> header;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  /// Optional non-numeric trailing column.
  std::string text_column;
  std::vector<std::string> text;
};

std::string render_csv(const CsvTable& t);
/// Writes bytes verbatim (LF line endings); throws std::runtime_error on failure.
void write_file(const std::string& path, const std::string& content);

std::vector<std::pair<std::string, std::string>> tolerance_header(const Tolerances& tol);

json to_json(const Tolerances& t);
json to_json(const WaveParams& p);
json to_json(const FieldConstants& fc);
json to_json(const Rect& r);
json to_json(const SpectralReport& r);
json to_json(const VKScan& s);

CsvTable profile_table(const WaveProfile& w, const Tolerances& tol);
CsvTable contour_table(const Contour& c, const Tolerances& tol, double L);
CsvTable vk_table(const VKScan& s, const Tolerances& tol);

}  // namespace novikov
