// Command-line front end: simulate | fit | pcf | riskmap | ingest.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "nscp/config.hpp"
#include "nscp/diagnostics.hpp"
#include "nscp/ingest.hpp"
#include "nscp/io.hpp"
#include "nscp/risk.hpp"
#include "nscp/samplers.hpp"
#include "nscp/simulation.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

nscp::RunConfig load_config(const std::string& path) {
  if (path.empty()) return nscp::RunConfig{};
  return nscp::RunConfig::from_json_file(path);
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << text;
}

void write_manifest(const std::string& path, const nscp::RunConfig& cfg,
                    const std::string& subcommand, json extra) {
  json doc{{"schema_version", cfg.schema_version},
           {"subcommand", subcommand},
           {"config_hash", cfg.hash()},
           {"config", json::parse(cfg.echo_json())}};
  doc.update(extra);
  write_text(path, doc.dump(2) + "\n");
}

std::vector<double> linspace(double lo, double hi, std::size_t count) {
  if (count < 3 || !(lo > 0.0) || !(lo < hi))
    throw std::invalid_argument("pcf: need r_min > 0, r_min < r_max, count >= 3");
  std::vector<double> grid(count);
  for (std::size_t i = 0; i < count; ++i)
    grid[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1);
  return grid;
}

int cmd_simulate(const nscp::RunConfig& cfg, const std::string& out_dir) {
  fs::create_directories(out_dir);
  nscp::Scenario scenario = nscp::make_scenario(cfg.scenario, cfg.window, cfg.mcmc.seed,
                                                cfg.simulate_steps, cfg.proposal);
  nscp::io::write_xy_csv(out_dir + "/X.csv", scenario.offspring.points());
  nscp::io::write_xy_csv(out_dir + "/C_true.csv", scenario.parents.points());
  json truth{{"scenario", scenario.id},
             {"alpha", scenario.truth.alpha},
             {"omega", scenario.truth.omega},
             {"kappa", scenario.truth.kappa},
             {"theta1", scenario.truth.theta1},
             {"theta2", scenario.truth.theta2},
             {"m_true", scenario.parents.size()},
             {"n", scenario.offspring.size()},
             {"seed", cfg.mcmc.seed}};
  write_text(out_dir + "/truth.json", truth.dump(2) + "\n");
  write_manifest(out_dir + "/manifest.json", cfg, "simulate",
                 json{{"seed", cfg.mcmc.seed},
                      {"outputs", {"X.csv", "C_true.csv", "truth.json"}},
                      {"m_true", scenario.parents.size()},
                      {"n", scenario.offspring.size()}});
  std::cerr << "simulate: scenario " << scenario.id << " -> m=" << scenario.parents.size()
            << " parents, n=" << scenario.offspring.size() << " offsprings\n";
  return 0;
}

int cmd_fit(const nscp::RunConfig& cfg, const std::string& x_path,
            const std::string& out_dir) {
  fs::create_directories(out_dir);
  nscp::PointPattern data(nscp::io::read_xy_csv(x_path), cfg.window);
  std::cerr << "fit: n=" << data.size() << " points, priors omega=[" << cfg.priors.omega.lo
            << "," << cfg.priors.omega.hi << "] theta2=[" << cfg.priors.theta2.lo << ","
            << cfg.priors.theta2.hi << "]\n";

  const std::vector<nscp::ChainOutput> outputs =
      nscp::run_chains(data, cfg.priors, cfg.proposal, cfg.mcmc, cfg.chains);

  json chain_info = json::array();
  for (std::size_t c = 0; c < outputs.size(); ++c) {
    const nscp::ChainOutput& out = outputs[c];
    const std::string suffix =
        outputs.size() == 1 ? "" : "_chain" + std::to_string(c);
    nscp::io::write_samples_csv(out_dir + "/samples" + suffix + ".csv", out.samples);
    nscp::io::write_xy_csv(out_dir + "/parents" + suffix + ".csv",
                           out.final_parents.points());
    chain_info.push_back({{"seed", out.seed},
                          {"samples_file", "samples" + suffix + ".csv"},
                          {"parents_file", "parents" + suffix + ".csv"},
                          {"acceptance",
                           {{"offspring", out.acceptance.offspring},
                            {"parent_params", out.acceptance.parent_params},
                            {"birth", out.acceptance.birth},
                            {"death", out.acceptance.death},
                            {"move", out.acceptance.move}}}});
    std::cerr << "fit: chain " << c << " acceptance offspring=" << out.acceptance.offspring
              << " parent_params=" << out.acceptance.parent_params
              << " birth=" << out.acceptance.birth << " death=" << out.acceptance.death
              << " move=" << out.acceptance.move << " final m=" << out.final_parents.size()
              << '\n';
  }
  write_manifest(out_dir + "/manifest.json", cfg, "fit",
                 json{{"seed", cfg.mcmc.seed}, {"input", x_path}, {"chains", chain_info}});
  return 0;
}

int cmd_pcf(const nscp::RunConfig& cfg, bool have_config, const std::string& x_path,
            const std::string& out_file, bool translation_corrected) {
  std::vector<nscp::Point> points = nscp::io::read_xy_csv(x_path);
  nscp::Window window = cfg.window;
  if (!have_config) {
    // No window supplied: fall back to the data bounding box.
    double x_min = points.at(0).x, x_max = points.at(0).x;
    double y_min = points.at(0).y, y_max = points.at(0).y;
    for (const nscp::Point& p : points) {
      x_min = std::min(x_min, p.x);
      x_max = std::max(x_max, p.x);
      y_min = std::min(y_min, p.y);
      y_max = std::max(y_max, p.y);
    }
    window = nscp::Window::rectangle(x_min, x_max, y_min, y_max);
    std::cerr << "pcf: no config given, using the data bounding box as window\n";
  }
  nscp::PointPattern pattern(std::move(points), window);
  const std::vector<double> radii = linspace(cfg.pcf.r_min, cfg.pcf.r_max, cfg.pcf.count);
  nscp::PcfResult result = nscp::pcf(pattern, radii, cfg.pcf.smooth_bandwidth);
  if (translation_corrected) {
    result.k_values = nscp::ripley_k_translation(pattern, radii);
    result.j_values = nscp::pcf_from_k(radii, result.k_values);
  }

  std::ofstream out(out_file);
  if (!out) throw std::runtime_error("cannot write '" + out_file + "'");
  out << "r,K,J\n";
  for (std::size_t i = 0; i < result.radii.size(); ++i)
    out << nscp::io::format_double(result.radii[i]) << ','
        << nscp::io::format_double(result.k_values[i]) << ','
        << nscp::io::format_double(result.j_values[i]) << '\n';
  write_manifest(out_file + ".manifest.json", cfg, "pcf",
                 json{{"input", x_path}, {"n", pattern.size()}});
  return 0;
}

int cmd_riskmap(const nscp::RunConfig& cfg, const std::string& samples_path,
                const std::string& parents_path, const std::string& out_dir) {
  fs::create_directories(out_dir);
  const std::vector<nscp::ParamSample> samples = nscp::io::read_samples_csv(samples_path);
  if (samples.empty()) throw std::runtime_error("riskmap: samples file is empty");
  double alpha_hat = 0.0, omega_hat = 0.0, theta2_hat = 0.0;
  for (const nscp::ParamSample& s : samples) {
    alpha_hat += s.alpha;
    omega_hat += s.omega;
    theta2_hat += s.theta2;
  }
  const double n = static_cast<double>(samples.size());
  alpha_hat /= n;
  omega_hat /= n;
  theta2_hat /= n;

  nscp::PointPattern parents(nscp::io::read_xy_csv(parents_path), cfg.window);
  const nscp::IntensityRaster raster =
      nscp::intensity_map(parents, alpha_hat, omega_hat, cfg.cell_size);
  const nscp::IntensityRaster mask = nscp::high_risk_mask(raster, cfg.risk);
  const std::vector<nscp::Circle> circles =
      nscp::risk_boundaries(parents, theta2_hat, omega_hat);

  nscp::io::write_ascii_grid(out_dir + "/intensity.asc", raster);
  nscp::io::write_ascii_grid(out_dir + "/highrisk.asc", mask);
  write_text(out_dir + "/boundaries.geojson", nscp::io::circles_to_geojson(circles) + "\n");
  write_manifest(out_dir + "/manifest.json", cfg, "riskmap",
                 json{{"samples", samples_path},
                      {"parents", parents_path},
                      {"alpha_hat", alpha_hat},
                      {"omega_hat", omega_hat},
                      {"theta2_hat", theta2_hat},
                      {"boundary_radius_m", theta2_hat + 1.96 * omega_hat},
                      {"m", parents.size()}});
  std::cerr << "riskmap: alpha_hat=" << alpha_hat << " omega_hat=" << omega_hat
            << " theta2_hat=" << theta2_hat << " parents=" << parents.size() << '\n';
  return 0;
}

int cmd_ingest(const nscp::RunConfig& cfg, const std::string& csv_path,
               const std::string& end_date, const std::string& out_file) {
  if (end_date.empty())
    throw std::invalid_argument("ingest: an end date is required (flag or config)");
  const nscp::IngestResult result =
      nscp::ingest(csv_path, end_date, cfg.window, cfg.ingest);
  nscp::io::write_xy_csv(out_file, result.pattern.points());
  const nscp::IngestCounts& c = result.counts;
  if (c.rows_read == 0) std::cerr << "ingest: warning: input has no data rows\n";
  std::cerr << "ingest: read=" << c.rows_read << " kept=" << c.kept
            << " dropped_by_date=" << c.dropped_by_date
            << " dropped_by_window=" << c.dropped_by_window
            << " dropped_duplicates=" << c.dropped_duplicates
            << " skipped_bad_rows=" << c.skipped_bad_rows << '\n';
  write_manifest(out_file + ".manifest.json", cfg, "ingest",
                 json{{"input", csv_path},
                      {"end_date", end_date},
                      {"counts",
                       {{"rows_read", c.rows_read},
                        {"kept", c.kept},
                        {"dropped_by_date", c.dropped_by_date},
                        {"dropped_by_window", c.dropped_by_window},
                        {"dropped_duplicates", c.dropped_duplicates},
                        {"skipped_bad_rows", c.skipped_bad_rows}}}});
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Interaction Neyman-Scott point process toolkit"};
  app.require_subcommand(1);

  std::string config_path;
  std::optional<std::uint64_t> seed_override;
  app.add_option("--config", config_path, "JSON run configuration")->expected(1);
  app.add_option("--seed", seed_override, "override the configured seed");

  auto* sim = app.add_subcommand("simulate", "generate scenario data under known truth");
  int scenario_flag = 0;
  std::size_t steps_flag = 0;
  std::string sim_out = ".";
  sim->add_option("--scenario", scenario_flag, "scenario id (1, 2 or 3)");
  sim->add_option("--steps", steps_flag, "parent birth-death steps");
  sim->add_option("--out", sim_out, "output directory");

  auto* fit = app.add_subcommand("fit", "run the MCMC on an observed pattern");
  std::string fit_x, fit_out = ".";
  fit->add_option("--x", fit_x, "offspring CSV (x,y)")->required();
  fit->add_option("--out", fit_out, "output directory");

  auto* pcf_cmd = app.add_subcommand("pcf", "Ripley K and pair correlation");
  std::string pcf_x, pcf_out = "pcf.csv";
  double r_min_flag = 0.0, r_max_flag = 0.0;
  std::size_t r_count_flag = 0;
  bool pcf_translation = false;
  pcf_cmd->add_option("--x", pcf_x, "point CSV (x,y)")->required();
  pcf_cmd->add_option("--out", pcf_out, "output CSV");
  pcf_cmd->add_option("--r-min", r_min_flag, "smallest radius");
  pcf_cmd->add_option("--r-max", r_max_flag, "largest radius");
  pcf_cmd->add_option("--r-count", r_count_flag, "grid size");
  pcf_cmd->add_flag("--translation-correction", pcf_translation,
                    "translation-corrected K (rectangular windows)");

  auto* risk = app.add_subcommand("riskmap", "intensity raster, mask and boundaries");
  std::string risk_samples, risk_parents, risk_out = ".";
  double cell_flag = 0.0;
  risk->add_option("--samples", risk_samples, "posterior samples CSV")->required();
  risk->add_option("--parents", risk_parents, "fitted parents CSV")->required();
  risk->add_option("--out", risk_out, "output directory");
  risk->add_option("--cell", cell_flag, "raster cell size in meters");

  auto* ing = app.add_subcommand("ingest", "filter a contact-tracing CSV to a pattern");
  std::string ing_csv, ing_end, ing_out = "X.csv";
  bool ing_lenient = false, ing_keep_dup = false;
  ing->add_option("--csv", ing_csv, "contact-tracing CSV")->required();
  ing->add_option("--end-date", ing_end, "window end date (YYYYMMDD or MMDD)");
  ing->add_option("--out", ing_out, "output pattern CSV");
  ing->add_flag("--lenient", ing_lenient, "skip unparseable rows instead of failing");
  ing->add_flag("--keep-duplicates", ing_keep_dup, "keep exact duplicate rows");

  for (CLI::App* sub : {sim, fit, pcf_cmd, risk, ing}) sub->fallthrough();

  CLI11_PARSE(app, argc, argv);

  try {
    nscp::RunConfig cfg = load_config(config_path);
    if (seed_override) cfg.mcmc.seed = *seed_override;

    if (sim->parsed()) {
      if (scenario_flag != 0) cfg.scenario = scenario_flag;
      if (steps_flag != 0) cfg.simulate_steps = steps_flag;
      return cmd_simulate(cfg, sim_out);
    }
    if (fit->parsed()) return cmd_fit(cfg, fit_x, fit_out);
    if (pcf_cmd->parsed()) {
      if (r_min_flag > 0.0) cfg.pcf.r_min = r_min_flag;
      if (r_max_flag > 0.0) cfg.pcf.r_max = r_max_flag;
      if (r_count_flag > 0) cfg.pcf.count = r_count_flag;
      return cmd_pcf(cfg, !config_path.empty(), pcf_x, pcf_out, pcf_translation);
    }
    if (risk->parsed()) {
      if (cell_flag > 0.0) cfg.cell_size = cell_flag;
      return cmd_riskmap(cfg, risk_samples, risk_parents, risk_out);
    }
    if (ing->parsed()) {
      const std::string end = ing_end.empty() ? cfg.end_date : ing_end;
      if (ing_lenient) cfg.ingest.strict = false;
      if (ing_keep_dup) cfg.ingest.keep_duplicates = true;
      return cmd_ingest(cfg, ing_csv, end, ing_out);
    }
  } catch (const std::exception& e) {
    json err{{"error", e.what()}};
    std::cerr << err.dump() << '\n';
    return 1;
  }
  return 0;
}
