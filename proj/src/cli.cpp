#include "novikov/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <ostream>
#include <sstream>

#include "novikov/io.hpp"
#include "novikov/parallel.hpp"

namespace novikov {

std::vector<int> parse_index_list(const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    std::size_t pos = 0;
    const auto dots = item.find("..");
    try {
      if (dots == std::string::npos) {
        out.push_back(std::stoi(item, &pos));
        if (pos != item.size()) throw std::invalid_argument(item);
      } else {
        const std::string lo_s = item.substr(0, dots), hi_s = item.substr(dots + 2);
        std::size_t p1 = 0, p2 = 0;
        const int lo = std::stoi(lo_s, &p1), hi = std::stoi(hi_s, &p2);
        if (p1 != lo_s.size() || p2 != hi_s.size() || hi < lo) throw std::invalid_argument(item);
        for (int j = lo; j <= hi; ++j) out.push_back(j);
      }
    } catch (const std::exception&) {
      throw std::invalid_argument("bad index list entry '" + item + "'");
    }
  }
  return out;
}

namespace {

struct Common {
  double c = 1.0;
  Tolerances tol;
  std::string out = "";
};

void add_common(CLI::App* app, Common& o) {
  app->add_option("--c", o.c, "wave speed")->capture_default_str();
  app->add_option("--rtol", o.tol.ode_rel, "relative ODE tolerance")->capture_default_str();
  app->add_option("--atol", o.tol.ode_abs, "absolute ODE tolerance")->capture_default_str();
  app->add_option("--quad-tol", o.tol.quad_tol, "quadrature tolerance")->capture_default_str();
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

int cmd_wave(const Common& o, const std::string& a_s, const std::string& k_s, GridSpec grid,
             std::ostream& out) {
  WaveParams p;
  if (!a_s.empty()) p = params_from_a(std::stod(a_s), o.c);
  else p = params_from_k(std::stod(k_s), o.c);
  const WaveProfile w = shoot_profile(p, grid, o.tol);
  const std::string prefix = o.out.empty() ? "wave" : o.out;
  write_file(prefix + ".csv", render_csv(profile_table(w, o.tol)));
  json j = {{"command", "wave"},
            {"config",
             {{"c", o.c},
              {"a", a_s.empty() ? json(nullptr) : json(std::stod(a_s))},
              {"k", k_s.empty() ? json(nullptr) : json(std::stod(k_s))},
              {"n_half", grid.n_half},
              {"L", grid.L},
              {"crest_points", grid.crest_points},
              {"tolerances", to_json(o.tol)}}},
            {"params", to_json(p)},
            {"constants", to_json(field_constants(p))},
            {"L", w.L},
            {"h", w.h},
            {"grid_points", w.size()},
            {"tail_amplitude", w.tail_amplitude}};
  write_file(prefix + ".json", dump(j));
  out << dump(j);
  return kExitOk;
}

int cmd_verify(const Common& o, const std::string& j_s, const std::vector<double>& a_list,
               bool near_peakon, bool keep_samples, std::size_t workers, std::ostream& out,
               std::ostream& err) {
  struct Job {
    std::string label;
    WaveParams params;
    int j = 0;
  };
  std::vector<Job> jobs;
  if (!j_s.empty()) {
    for (int j : parse_index_list(j_s)) {
      if (j < 1 || j > 15) throw ParameterError("wave index j must lie in 1..15");
      if (j < 3 && !near_peakon)
        throw ParameterError("j = 1, 2 are near-peakon waves; pass --near-peakon to attempt them");
      jobs.push_back({"j" + std::to_string(j), standard_wave(j, o.c), j});
    }
  }
  for (std::size_t i = 0; i < a_list.size(); ++i)
    jobs.push_back({"a" + std::to_string(i), params_from_a(a_list[i], o.c), 0});
  if (jobs.empty()) throw ParameterError("empty wave list");

  VerifyOptions vo;
  vo.profile_tol = o.tol;
  vo.spectrum.evans.tol = {o.tol.ode_rel, o.tol.ode_abs, o.tol.root_tol, o.tol.quad_tol};
  vo.keep_samples = keep_samples;
  const std::size_t nw = workers ? workers : worker_count();
  const bool across = jobs.size() > 1 && nw > 1;
  vo.spectrum.winding.workers = across ? 1 : nw;

  struct Outcome {
    bool ok = false;
    SpectralReport rep;
    std::string error;
  };
  const auto results = parallel_map<Outcome>(
      jobs.size(),
      [&](std::size_t i) {
        Outcome r;
        try {
          r.rep = verify_H1(jobs[i].params, vo);
          r.ok = true;
        } catch (const std::exception& e) {
          r.error = e.what();
        }
        return r;
      },
      across ? nw : 1);

  const std::string prefix = o.out.empty() ? "verify" : o.out;
  CsvTable t;
  t.header = tolerance_header(o.tol);
  t.header.push_back({"c", format_number(o.c)});
  t.columns = {"j", "a", "k", "L", "sigma0", "lambda_minus_SL", "sigma1", "energy_bound",
               "winding1", "winding2", "verdict"};
  t.text_column = "status";
  json summary = json::array();
  bool any_fail = false, all_true = true;
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    const Outcome& r = results[i];
    json j = {{"label", jobs[i].label},
              {"config",
               {{"c", o.c}, {"a", jobs[i].params.a}, {"j", jobs[i].j},
                {"tolerances", to_json(o.tol)}}}};
    if (r.ok) {
      j["report"] = to_json(r.rep);
      const auto& s = r.rep;
      t.rows.push_back({double(jobs[i].j), s.params.a, s.params.k, s.diagnostics.L, s.sigma0,
                        s.lambda_minus_SL, s.sigma1, s.energy_bound, double(s.winding_gamma1),
                        double(s.winding_gamma2), s.h1_verdict ? 1.0 : 0.0});
      t.text.push_back("ok");
      all_true = all_true && s.h1_verdict;
      if (keep_samples) {
        write_file(prefix + "_" + jobs[i].label + "_gamma1.csv",
                   render_csv(contour_table(s.gamma1_samples, o.tol, s.diagnostics.L)));
        write_file(prefix + "_" + jobs[i].label + "_gamma2.csv",
                   render_csv(contour_table(s.gamma2_samples, o.tol, s.diagnostics.L)));
      }
    } else {
      j["error"] = r.error;
      const double nan = std::nan("");
      t.rows.push_back({double(jobs[i].j), jobs[i].params.a, jobs[i].params.k, nan, nan, nan,
                        nan, nan, nan, nan, 0.0});
      t.text.push_back("failed");
      any_fail = true;
      err << jobs[i].label << ": " << r.error << "\n";
    }
    write_file(prefix + "_" + jobs[i].label + ".json", dump(j));
    summary.push_back(j);
  }
  write_file(prefix + "_summary.csv", render_csv(t));
  out << render_csv(t);
  if (any_fail) return kExitNumerical;
  return all_true ? kExitOk : kExitVerdictFalse;
}

int cmd_vk(const Common& o, double kmin, double kmax, int n, bool grid_check, std::size_t workers,
           std::ostream& out) {
  if (n < 3) throw ParameterError("vk scan needs n >= 3 points for centred differences");
  if (!(kmin > 0) || !(kmin < kmax) || !(kmax < 0.5 * std::sqrt(o.c)))
    throw ParameterError("need 0 < kmin < kmax < sqrt(c)/2");
  std::vector<double> k(n);
  for (int i = 0; i < n; ++i) k[i] = kmin + (kmax - kmin) * double(i) / double(n - 1);
  VKOptions vo;
  vo.tol = o.tol;
  vo.grid_check = grid_check;
  vo.workers = workers;
  const VKScan s = vk_scan(o.c, k, vo);
  const std::string path = o.out.empty() ? "vk.csv" : o.out;
  CsvTable t = vk_table(s, o.tol);
  t.header.push_back({"kmin", format_number(kmin)});
  t.header.push_back({"kmax", format_number(kmax)});
  t.header.push_back({"n", std::to_string(n)});
  write_file(path, render_csv(t));
  out << render_csv(t);
  out << "verdict " << (s.verdict ? "true" : "false") << "\n";
  return s.verdict ? kExitOk : kExitVerdictFalse;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Smooth solitary waves of the Novikov equation: profiles, spectral checks, VK scans"};
  app.require_subcommand(1);

  Common wave_o, verify_o, vk_o;
  std::string a_s, k_s;
  GridSpec grid;
  auto* wave = app.add_subcommand("wave", "shoot a wave profile and write CSV + JSON");
  add_common(wave, wave_o);
  auto* a_opt = wave->add_option("--a", a_s, "wave parameter a");
  auto* k_opt = wave->add_option("--k", k_s, "end state k");
  a_opt->excludes(k_opt);
  wave->add_option("--n-half", grid.n_half, "points per half line (0 = automatic)");
  wave->add_option("--L", grid.L, "half length (0 = automatic)");
  wave->add_option("--crest-points", grid.crest_points, "grid points per crest width")
      ->capture_default_str();
  wave->add_option("--out", wave_o.out, "output prefix (default: wave)");

  std::string j_s;
  std::vector<double> a_list;
  bool near_peakon = false, keep_samples = false;
  std::size_t workers = 0;
  auto* verify = app.add_subcommand("verify", "spectral verification for a batch of waves");
  add_common(verify, verify_o);
  verify->add_option("--j", j_s, "wave indices, e.g. 3..15");
  verify->add_option("--a", a_list, "wave parameters a");
  verify->add_flag("--near-peakon", near_peakon, "allow j = 1, 2");
  verify->add_flag("--samples", keep_samples, "write contour samples");
  verify->add_option("--workers", workers, "worker threads (default: NOVIKOV_WORKERS or cores)");
  verify->add_option("--out", verify_o.out, "output prefix (default: verify)");

  double kmin = 0.02, kmax = 0.48;
  int n = 24;
  bool grid_check = false;
  auto* vk = app.add_subcommand("vk", "scan calF(k) and the VK sign condition");
  add_common(vk, vk_o);
  vk->add_option("--kmin", kmin, "smallest k")->capture_default_str();
  vk->add_option("--kmax", kmax, "largest k")->capture_default_str();
  vk->add_option("--n", n, "number of k values")->capture_default_str();
  vk->add_flag("--grid-check", grid_check, "compare quadratures with grid sums");
  vk->add_option("--workers", workers, "worker threads");
  vk->add_option("--out", vk_o.out, "output CSV (default: vk.csv)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (*wave) {
      if (a_s.empty() == k_s.empty()) {
        err << "wave: give exactly one of --a and --k\n";
        return kExitUsage;
      }
      return cmd_wave(wave_o, a_s, k_s, grid, out);
    }
    if (*verify) return cmd_verify(verify_o, j_s, a_list, near_peakon, keep_samples, workers, out, err);
    if (*vk) return cmd_vk(vk_o, kmin, kmax, n, grid_check, workers, out);
  } catch (const ParameterError& e) {
    err << "parameter error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  }
  return kExitUsage;
}

}  // namespace novikov
