#include "novikov/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace novikov {

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12e", v);
  return buf;
}

std::string render_csv(const CsvTable& t) {
  std::string out;
  for (const auto& [k, v] : t.header) out += "# " + k + "=" + v + "\n";
  for (std::size_t i = 0; i < t.columns.size(); ++i) out += (i ? "," : "") + t.columns[i];
  if (!t.text_column.empty()) out += (t.columns.empty() ? "" : ",") + t.text_column;
  out += "\n";
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    const auto& row = t.rows[r];
    for (std::size_t i = 0; i < row.size(); ++i) out += (i ? "," : "") + format_number(row[i]);
    if (!t.text_column.empty()) out += (row.empty() ? "" : ",") + t.text.at(r);
    out += "\n";
  }
  return out;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw std::runtime_error("cannot open " + path + " for writing");
  f.write(content.data(), std::streamsize(content.size()));
  if (!f) throw std::runtime_error("write failed for " + path);
}

std::vector<std::pair<std::string, std::string>> tolerance_header(const Tolerances& tol) {
  return {{"ode_rel", format_number(tol.ode_rel)},
          {"ode_abs", format_number(tol.ode_abs)},
          {"root_tol", format_number(tol.root_tol)},
          {"quad_tol", format_number(tol.quad_tol)}};
}

json to_json(const Tolerances& t) {
  return {{"ode_rel", t.ode_rel}, {"ode_abs", t.ode_abs}, {"root_tol", t.root_tol},
          {"quad_tol", t.quad_tol}};
}

json to_json(const WaveParams& p) {
  return {{"c", p.c},         {"a", p.a},
          {"k", p.k},         {"E", p.E},
          {"phi_minus", p.phi_minus}, {"phi_plus", p.phi_plus},
          {"phi_max", p.phi_max},     {"decay_rate", p.decay_rate}};
}

json to_json(const FieldConstants& fc) {
  return {{"omega0", fc.omega0}, {"omega1", fc.omega1}, {"F_inf", fc.F_inf},
          {"G_inf", fc.G_inf},   {"f_inf", fc.f_inf},   {"f0", fc.f0},
          {"sigma0", fc.sigma0}};
}

json to_json(const Rect& r) {
  return {{"re_min", r.re_min}, {"re_max", r.re_max}, {"im_half", r.im_half}};
}

json to_json(const SpectralReport& r) {
  const SpectralDiagnostics& d = r.diagnostics;
  return {{"params", to_json(r.params)},
          {"constants", to_json(r.constants)},
          {"sigma0", r.sigma0},
          {"lambda_minus_SL", r.lambda_minus_SL},
          {"sigma1", r.sigma1},
          {"energy_bound", r.energy_bound},
          {"gamma1", to_json(r.gamma1)},
          {"gamma2", to_json(r.gamma2)},
          {"winding_gamma1", r.winding_gamma1},
          {"winding_gamma2", r.winding_gamma2},
          {"h1_verdict", r.h1_verdict},
          {"diagnostics",
           {{"L", d.L},
            {"grid_points", d.grid_points},
            {"delta_default", d.delta_default},
            {"delta", d.delta},
            {"nearest_real_zero", std::isfinite(d.nearest_real_zero) ? json(d.nearest_real_zero)
                                                                     : json(nullptr)},
            {"d0_ratio", d.d0_ratio},
            {"d0_abs", d.d0_abs},
            {"sl_zero_ratio", d.sl_zero_ratio},
            {"sl_winding_small", d.sl_winding_small},
            {"sl_winding_expanded", d.sl_winding_expanded},
            {"winding1_raw", d.winding1_raw},
            {"winding2_raw", d.winding2_raw},
            {"gamma1_points", d.gamma1_points},
            {"gamma2_points", d.gamma2_points},
            {"seconds", d.seconds}}}};
}

json to_json(const VKScan& s) {
  json j = {{"c", s.c},
            {"k", s.k_grid},
            {"calF", s.calF_values},
            {"dcalF_dk", s.dcalF_dk},
            {"inner_product", s.inner_products},
            {"verdict", s.verdict}};
  if (!s.grid_agreement.empty()) j["grid_agreement"] = s.grid_agreement;
  return j;
}

CsvTable profile_table(const WaveProfile& w, const Tolerances& tol) {
  CsvTable t;
  t.header = tolerance_header(tol);
  t.header.push_back({"L", format_number(w.L)});
  t.header.push_back({"h", format_number(w.h)});
  t.header.push_back({"c", format_number(w.params.c)});
  t.header.push_back({"a", format_number(w.params.a)});
  t.header.push_back({"k", format_number(w.params.k)});
  t.columns = {"x", "phi", "dphi", "phi_minus_k", "mu", "dmu", "d2mu"};
  t.rows.reserve(w.size());
  for (std::size_t i = 0; i < w.size(); ++i)
    t.rows.push_back({w.x[i], w.phi[i], w.dphi[i], w.dev[i], w.mu0[i], w.mu1[i], w.mu2[i]});
  return t;
}

CsvTable contour_table(const Contour& c, const Tolerances& tol, double L) {
  CsvTable t;
  t.header = tolerance_header(tol);
  t.header.push_back({"L", format_number(L)});
  t.columns = {"re_lambda", "im_lambda", "re_D", "im_D", "log_abs_D"};
  for (const auto& s : c.samples)
    t.rows.push_back({s.lambda.real(), s.lambda.imag(), s.value.real(), s.value.imag(),
                      std::log(std::abs(s.value))});
  return t;
}

CsvTable vk_table(const VKScan& s, const Tolerances& tol) {
  CsvTable t;
  t.header = tolerance_header(tol);
  t.header.push_back({"L", "none (quadrature in phi)"});
  t.header.push_back({"c", format_number(s.c)});
  t.header.push_back({"verdict", s.verdict ? "true" : "false"});
  t.columns = {"k", "calF", "dcalF_dk", "inner_product"};
  for (std::size_t i = 0; i < s.k_grid.size(); ++i)
    t.rows.push_back({s.k_grid[i], s.calF_values[i], s.dcalF_dk[i], s.inner_products[i]});
  return t;
}

}  // namespace novikov
