#include "nscp/config.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

#include "nscp/io.hpp"

namespace nscp {

namespace {

using nlohmann::json;

Window parse_window(const json& j) {
  const std::string type = j.at("type").get<std::string>();
  if (type == "rect") {
    const auto& x = j.at("x");
    const auto& y = j.at("y");
    if (x.size() != 2 || y.size() != 2)
      throw std::invalid_argument("window: rect needs x:[lo,hi], y:[lo,hi]");
    return Window::rectangle(x[0].get<double>(), x[1].get<double>(), y[0].get<double>(),
                             y[1].get<double>());
  }
  if (type == "poly") {
    std::vector<Point> vertices;
    for (const auto& v : j.at("vertices")) {
      if (v.size() != 2) throw std::invalid_argument("window: vertices must be [x,y] pairs");
      vertices.push_back({v[0].get<double>(), v[1].get<double>()});
    }
    return Window::polygon(std::move(vertices));
  }
  throw std::invalid_argument("window: type must be 'rect' or 'poly'");
}

PriorRange parse_range(const json& j, const char* name) {
  if (!j.is_array() || j.size() != 2)
    throw std::invalid_argument(std::string("priors: ") + name + " must be [lo,hi]");
  return {j[0].get<double>(), j[1].get<double>()};
}

json range_json(const PriorRange& r) { return json::array({r.lo, r.hi}); }

}  // namespace

Window window_from_json_text(const std::string& text) {
  return parse_window(json::parse(text));
}

RunConfig RunConfig::from_json_text(const std::string& text) {
  const json j = json::parse(text);
  RunConfig cfg;

  if (j.contains("schema_version")) {
    cfg.schema_version = j["schema_version"].get<int>();
    if (cfg.schema_version != 1)
      throw std::invalid_argument("config: unsupported schema_version");
  }
  if (j.contains("window")) cfg.window = parse_window(j["window"]);
  if (j.contains("geometry") && j["geometry"].contains("mass_resolution")) {
    cfg.mass_resolution = j["geometry"]["mass_resolution"].get<int>();
  }
  cfg.window.set_mass_resolution(cfg.mass_resolution);

  cfg.priors = PriorSpec::defaults_for_area(cfg.window.area());
  if (j.contains("priors")) {
    const json& p = j["priors"];
    if (p.contains("alpha")) cfg.priors.alpha = parse_range(p["alpha"], "alpha");
    if (p.contains("omega")) cfg.priors.omega = parse_range(p["omega"], "omega");
    if (p.contains("kappa")) cfg.priors.kappa = parse_range(p["kappa"], "kappa");
    if (p.contains("theta1")) cfg.priors.theta1 = parse_range(p["theta1"], "theta1");
    if (p.contains("theta2")) cfg.priors.theta2 = parse_range(p["theta2"], "theta2");
  }
  cfg.priors.validate();

  cfg.proposal = ProposalSpec::defaults_for(cfg.priors);
  if (j.contains("proposal")) {
    const json& p = j["proposal"];
    if (p.contains("steps")) {
      const json& s = p["steps"];
      if (s.contains("alpha")) cfg.proposal.steps.alpha = s["alpha"].get<double>();
      if (s.contains("omega")) cfg.proposal.steps.omega = s["omega"].get<double>();
      if (s.contains("kappa")) cfg.proposal.steps.kappa = s["kappa"].get<double>();
      if (s.contains("theta1")) cfg.proposal.steps.theta1 = s["theta1"].get<double>();
      if (s.contains("theta2")) cfg.proposal.steps.theta2 = s["theta2"].get<double>();
    }
    if (p.contains("birth_prob")) cfg.proposal.birth_prob = p["birth_prob"].get<double>();
    if (p.contains("death_prob")) cfg.proposal.death_prob = p["death_prob"].get<double>();
    if (p.contains("aux_min_steps"))
      cfg.proposal.aux_min_steps = p["aux_min_steps"].get<std::size_t>();
    if (p.contains("aux_steps_per_parent"))
      cfg.proposal.aux_steps_per_parent = p["aux_steps_per_parent"].get<double>();
    if (p.contains("bd_ratio_convention")) {
      const std::string c = p["bd_ratio_convention"].get<std::string>();
      if (c == "paper")
        cfg.proposal.convention = BdConvention::Paper;
      else if (c == "standard")
        cfg.proposal.convention = BdConvention::Standard;
      else
        throw std::invalid_argument("config: bd_ratio_convention must be paper|standard");
    }
  }
  cfg.proposal.validate();

  if (j.contains("mcmc")) {
    const json& m = j["mcmc"];
    if (m.contains("iterations")) cfg.mcmc.iterations = m["iterations"].get<std::uint64_t>();
    if (m.contains("burn_in")) cfg.mcmc.burn_in = m["burn_in"].get<std::uint64_t>();
    if (m.contains("seed")) cfg.mcmc.seed = m["seed"].get<std::uint64_t>();
    if (m.contains("parent_sweeps_per_iter"))
      cfg.mcmc.parent_sweeps_per_iter = m["parent_sweeps_per_iter"].get<std::size_t>();
    if (m.contains("adapt")) cfg.mcmc.adapt = m["adapt"].get<bool>();
    if (m.contains("chains")) cfg.chains = m["chains"].get<std::size_t>();
  }

  if (j.contains("ingest")) {
    const json& g = j["ingest"];
    if (g.contains("end_date")) cfg.end_date = g["end_date"].get<std::string>();
    if (g.contains("year")) cfg.ingest.year = g["year"].get<int>();
    if (g.contains("strict")) cfg.ingest.strict = g["strict"].get<bool>();
    if (g.contains("keep_duplicates"))
      cfg.ingest.keep_duplicates = g["keep_duplicates"].get<bool>();
    if (g.contains("has_header")) cfg.ingest.has_header = g["has_header"].get<bool>();
    if (g.contains("columns")) {
      const json& c = g["columns"];
      if (c.contains("patient")) cfg.ingest.columns.patient = c["patient"].get<int>();
      if (c.contains("date")) cfg.ingest.columns.date = c["date"].get<int>();
      if (c.contains("address")) cfg.ingest.columns.address = c["address"].get<int>();
      if (c.contains("transport")) cfg.ingest.columns.transport = c["transport"].get<int>();
      if (c.contains("description"))
        cfg.ingest.columns.description = c["description"].get<int>();
      if (c.contains("x")) cfg.ingest.columns.x = c["x"].get<int>();
      if (c.contains("y")) cfg.ingest.columns.y = c["y"].get<int>();
    }
  }

  if (j.contains("risk")) {
    const json& r = j["risk"];
    if (r.contains("cell_size")) cfg.cell_size = r["cell_size"].get<double>();
    if (r.contains("days")) cfg.risk.days = r["days"].get<double>();
    if (r.contains("area_unit")) cfg.risk.area_unit = r["area_unit"].get<double>();
    if (r.contains("threshold")) cfg.risk.patients_per_day = r["threshold"].get<double>();
  }

  if (j.contains("pcf")) {
    const json& p = j["pcf"];
    if (p.contains("r_min")) cfg.pcf.r_min = p["r_min"].get<double>();
    if (p.contains("r_max")) cfg.pcf.r_max = p["r_max"].get<double>();
    if (p.contains("count")) cfg.pcf.count = p["count"].get<std::size_t>();
    if (p.contains("smooth_bandwidth"))
      cfg.pcf.smooth_bandwidth = p["smooth_bandwidth"].get<double>();
  }

  if (j.contains("simulate")) {
    const json& s = j["simulate"];
    if (s.contains("steps")) cfg.simulate_steps = s["steps"].get<std::size_t>();
    if (s.contains("scenario")) cfg.scenario = s["scenario"].get<int>();
  }

  return cfg;
}

RunConfig RunConfig::from_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("config: cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return from_json_text(buffer.str());
}

std::string RunConfig::echo_json() const {
  json w;
  if (window.shape() == Window::Shape::Rectangle) {
    const BoundingBox& bb = window.bounding_box();
    w = {{"type", "rect"},
         {"x", {bb.x_min, bb.x_max}},
         {"y", {bb.y_min, bb.y_max}}};
  } else {
    json vs = json::array();
    for (const Point& v : window.vertices()) vs.push_back({v.x, v.y});
    w = {{"type", "poly"}, {"vertices", vs}};
  }
  json doc{
      {"schema_version", schema_version},
      {"window", w},
      {"window_area", window.area()},
      {"priors",
       {{"alpha", range_json(priors.alpha)},
        {"omega", range_json(priors.omega)},
        {"kappa", range_json(priors.kappa)},
        {"theta1", range_json(priors.theta1)},
        {"theta2", range_json(priors.theta2)}}},
      {"proposal",
       {{"steps",
         {{"alpha", proposal.steps.alpha},
          {"omega", proposal.steps.omega},
          {"kappa", proposal.steps.kappa},
          {"theta1", proposal.steps.theta1},
          {"theta2", proposal.steps.theta2}}},
        {"birth_prob", proposal.birth_prob},
        {"death_prob", proposal.death_prob},
        {"aux_min_steps", proposal.aux_min_steps},
        {"aux_steps_per_parent", proposal.aux_steps_per_parent},
        {"bd_ratio_convention",
         proposal.convention == BdConvention::Paper ? "paper" : "standard"}}},
      {"mcmc",
       {{"iterations", mcmc.iterations},
        {"burn_in", mcmc.burn_in},
        {"seed", mcmc.seed},
        {"parent_sweeps_per_iter", mcmc.parent_sweeps_per_iter},
        {"adapt", mcmc.adapt},
        {"chains", chains}}},
      {"ingest",
       {{"end_date", end_date},
        {"year", ingest.year},
        {"strict", ingest.strict},
        {"keep_duplicates", ingest.keep_duplicates},
        {"has_header", ingest.has_header},
        {"columns",
         {{"patient", ingest.columns.patient},
          {"date", ingest.columns.date},
          {"address", ingest.columns.address},
          {"transport", ingest.columns.transport},
          {"description", ingest.columns.description},
          {"x", ingest.columns.x},
          {"y", ingest.columns.y}}}}},
      {"risk",
       {{"cell_size", cell_size},
        {"days", risk.days},
        {"area_unit", risk.area_unit},
        {"threshold", risk.patients_per_day}}},
      {"pcf",
       {{"r_min", pcf.r_min},
        {"r_max", pcf.r_max},
        {"count", pcf.count},
        {"smooth_bandwidth", pcf.smooth_bandwidth}}},
      {"geometry", {{"mass_resolution", mass_resolution}}},
      {"simulate", {{"steps", simulate_steps}, {"scenario", scenario}}}};
  return doc.dump(2);
}

std::string RunConfig::hash() const { return io::fnv1a_hex(echo_json()); }

}  // namespace nscp
