#include "trajnyq/pipeline.hpp"

#include <cinttypes>
#include <cstdio>
#include <sstream>

namespace trajnyq {
namespace {

using io::json;

[[noreturn]] void bad(const std::string& msg) { throw Error(ErrorKind::ConfigError, msg); }

const json& need(const json& cfg, const char* key, const std::string& action) {
  if (!cfg.contains(key)) bad(action + ": config needs \"" + key + "\"");
  return cfg.at(key);
}

double number_or(const json& cfg, const char* key, double fallback) {
  if (!cfg.contains(key)) return fallback;
  if (!cfg.at(key).is_number()) bad(std::string(key) + " must be a number");
  return cfg.at(key).get<double>();
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

std::string g17(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

Window window_from(const json& cfg, int d) {
  if (!cfg.contains("window")) bad("config needs \"window\" with a radius");
  const json& w = cfg.at("window");
  Window win{Vec::Zero(d), 0.0};
  if (w.contains("center")) win.center = io::to_vec(w.at("center"), "window.center");
  if (win.center.size() != d) bad("window.center has the wrong dimension");
  if (!w.contains("radius") || !w.at("radius").is_number()) bad("window.radius must be a number");
  win.radius = w.at("radius").get<double>();
  return win;
}

std::uint64_t seed_from(const json& cfg, std::optional<std::uint64_t> seed) {
  if (seed) return *seed;
  if (!cfg.contains("seed")) return 0;
  if (!cfg.at("seed").is_number_unsigned()) bad("seed must be a non-negative integer");
  return cfg.at("seed").get<std::uint64_t>();
}

AtomField field_from(const json& cfg, const ConvexBody& omega, std::optional<std::uint64_t> seed) {
  if (cfg.contains("field")) return io::field_from_json(cfg.at("field"), omega);
  if (!cfg.contains("atoms")) bad("config needs \"field\" or an integer \"atoms\" count");
  const json& a = cfg.at("atoms");
  if (!a.is_number_integer()) bad("atoms must be an integer");
  return make_field(omega, a.get<int>(), number_or(cfg, "margin", 0.05), seed_from(cfg, seed));
}

TrajectorySet scaled_set(const TrajectorySet& set, double delta) {
  if (const auto* s = std::get_if<UniformLines2D>(&set)) return UniformLines2D(s->w, s->v, delta);
  if (const auto* s = std::get_if<UnionUniform2D>(&set)) {
    const double r = delta / s->parts.front().delta;
    std::vector<UniformLines2D> parts;
    for (const auto& p : s->parts) parts.emplace_back(p.w, p.v, p.delta * r);
    return UnionUniform2D(std::move(parts));
  }
  if (const auto* s = std::get_if<UniformLinesD>(&set)) {
    const double r = delta / s->basis.front().norm();
    auto basis = s->basis;
    for (std::size_t i = 0; i + 1 < basis.size(); ++i) basis[i] *= r;
    return UniformLinesD(basis, s->w);
  }
  if (std::holds_alternative<CircleSet>(set)) return CircleSet(delta);
  if (const auto* s = std::get_if<SpiralSet>(&set)) return SpiralSet(delta * s->n, s->n);
  if (const auto* s = std::get_if<HyperplaneSet>(&set)) return HyperplaneSet(s->w, s->h, delta);
  const auto& u = std::get<UnionHyperplanes>(set);
  const double r = delta / u.parts.front().delta;
  std::vector<HyperplaneSet> parts;
  for (const auto& p : u.parts) parts.emplace_back(p.w, p.h, p.delta * r);
  return UnionHyperplanes(std::move(parts));
}

PipelineResult run_check(const json& cfg, double tol) {
  const ConvexBody omega = io::body_from_json(need(cfg, "omega", "check"));
  const TrajectorySet set = io::set_from_json(need(cfg, "set", "check"));
  const NyquistVerdict v = check(set, omega, tol);
  PipelineResult r;
  r.result = io::verdict_to_json(v);
  r.result["set_kind"] = kind_name(set);
  r.artifacts["verdict.json"] = dump(r.result);
  r.exit_code = exit_code_for(v.status);
  return r;
}

PipelineResult run_design(const json& cfg) {
  const ConvexBody omega = io::body_from_json(need(cfg, "omega", "design"));
  const double eps = need(cfg, "epsilon", "design").get<double>();
  std::string mode = omega.dim() == 2 ? "uniform_2d" : "uniform_d";
  if (cfg.contains("mode")) mode = cfg.at("mode").get<std::string>();
  DesignResult d = [&] {
    if (mode == "uniform_2d") return optimal_uniform_2d(omega, eps);
    if (mode == "hyperplanes") return optimal_hyperplane_set(omega, eps);
    if (mode == "uniform_d") {
      DesignSearch search;
      const std::string kind = cfg.value("search", std::string("closed_form"));
      if (kind == "closed_form") search.kind = SearchKind::ClosedForm;
      else if (kind == "orientation_grid") search.kind = SearchKind::OrientationGrid;
      else bad("search must be closed_form or orientation_grid");
      search.orientations = cfg.value("orientations", 64);
      return optimal_uniform_d(omega, eps, search);
    }
    bad("mode must be uniform_2d, hyperplanes or uniform_d");
  }();
  PipelineResult r;
  r.result = io::design_to_json(d);
  r.artifacts["design.json"] = dump(r.result);
  r.artifacts["set.json"] = dump(io::set_to_json(d.set));
  r.exit_code = exit_code_for(d.verdict.status);
  return r;
}

PipelineResult run_density(const json& cfg) {
  const TrajectorySet set = io::set_from_json(need(cfg, "set", "density"));
  PipelineResult r;
  r.result = {{"set_kind", kind_name(set)}, {"density", density(set)}};
  if (cfg.contains("window")) {
    const int d = dimension(set);
    const Window win = window_from(cfg, d);
    const double vol = unit_ball_volume(d) * std::pow(win.radius, d);
    const double emp = arc_length_in_ball(set, win.radius, win.center) / vol;
    r.result["empirical_density"] = emp;
    r.result["relative_gap"] = std::abs(emp - density(set)) / density(set);
  }
  r.artifacts["density.json"] = dump(r.result);
  return r;
}

std::string samples_csv(const SampleBatch& batch, int d) {
  std::ostringstream os;
  os << "part,param";
  for (int i = 1; i <= d; ++i) os << ",x" << i;
  os << ",re,im\n";
  for (std::size_t k = 0; k < batch.points.size(); ++k) {
    const auto& p = batch.points[k];
    os << p.part << ',' << g17(p.param);
    for (int i = 0; i < d; ++i) os << ',' << g17(p.x[i]);
    os << ',' << g17(batch.values[k].real()) << ',' << g17(batch.values[k].imag()) << '\n';
  }
  return os.str();
}

PipelineResult run_sample(const json& cfg, std::optional<std::uint64_t> seed) {
  const ConvexBody omega = io::body_from_json(need(cfg, "omega", "sample"));
  const TrajectorySet set = io::set_from_json(need(cfg, "set", "sample"));
  const AtomField field = field_from(cfg, omega, seed);
  const double eps = number_or(cfg, "eps", 0.5 * max_path_pitch(field, set));
  const SampleBatch batch = sample_on_set(field, set, window_from(cfg, dimension(set)), eps);
  PipelineResult r;
  r.result = {{"samples", batch.points.size()}, {"eps", eps}, {"atoms", field.atoms.size()}};
  r.artifacts["samples.csv"] = samples_csv(batch, dimension(set));
  r.artifacts["field.json"] = dump(io::field_to_json(field));
  return r;
}

PipelineResult run_reconstruct(const json& cfg, std::optional<std::uint64_t> seed) {
  const ConvexBody omega = io::body_from_json(need(cfg, "omega", "reconstruct"));
  const TrajectorySet set = io::set_from_json(need(cfg, "set", "reconstruct"));
  const AtomField field = field_from(cfg, omega, seed);
  const double eps = number_or(cfg, "eps", 0.5 * max_path_pitch(field, set));
  int grid = 64;
  if (cfg.contains("probe_grid")) grid = cfg.at("probe_grid").get<int>();
  const Reconstruction rec = reconstruct_and_error(field, set, window_from(cfg, dimension(set)), eps, grid);
  const double l1 = field.coefficient_l1();
  PipelineResult r;
  r.result = {{"sup_error", rec.sup_error},
              {"rms_error", rec.rms_error},
              {"certified", rec.certified},
              {"relative_sup_error", l1 > 0.0 ? rec.sup_error / l1 : 0.0},
              {"samples", rec.samples}};
  r.artifacts["report.json"] = dump(r.result);
  r.artifacts["estimate.json"] = dump(io::field_to_json(rec.estimate));
  r.artifacts["field.json"] = dump(io::field_to_json(field));
  return r;
}

PipelineResult run_report(const json& cfg, double tol) {
  const ConvexBody omega = io::body_from_json(need(cfg, "omega", "report"));
  const TrajectorySet base = io::set_from_json(need(cfg, "set", "report"));
  const json& sw = need(cfg, "sweep", "report");
  const double from = need(sw, "from", "sweep").get<double>();
  const double to = need(sw, "to", "sweep").get<double>();
  const int steps = need(sw, "steps", "sweep").get<int>();
  if (steps < 2 || !(from > 0.0) || !(to > from)) bad("sweep needs 0 < from < to and steps >= 2");

  std::ostringstream csv;
  csv << "delta,verdict,density\n";
  json flips = json::array();
  std::string prev;
  double prev_delta = 0.0;
  for (int k = 0; k < steps; ++k) {
    const double delta = k + 1 == steps ? to : from + (to - from) * k / (steps - 1);
    const TrajectorySet set = scaled_set(base, delta);
    std::string status;
    try {
      status = to_string(check(set, omega, tol).status);
    } catch (const Error& e) {
      status = std::string("Error:") + to_string(e.kind());
    }
    csv << g17(delta) << ',' << status << ',' << g17(density(set)) << '\n';
    if (k > 0 && status != prev) {
      flips.push_back({{"from_delta", prev_delta}, {"to_delta", delta}, {"from", prev}, {"to", status}});
    }
    prev = status;
    prev_delta = delta;
  }
  PipelineResult r;
  r.result = {{"rows", steps}, {"flips", flips}, {"set_kind", kind_name(base)}};
  r.artifacts["sweep.csv"] = csv.str();
  return r;
}

}  // namespace

ExitCode exit_code_for(Status s) {
  switch (s) {
    case Status::Nyquist:
    case Status::SufficientOnly: return ExitCode::Ok;
    case Status::NotNyquist: return ExitCode::NotNyquist;
    case Status::Critical:
    case Status::Unknown: return ExitCode::Marginal;
  }
  return ExitCode::Marginal;
}

ExitCode exit_code_for(const Error& e) {
  return e.kind() == ErrorKind::ReconstructionImpossible ? ExitCode::NotNyquist : ExitCode::ConfigError;
}

PipelineResult execute(const std::string& action, const json& config, std::optional<std::uint64_t> seed,
                       std::optional<double> tolerance) {
  if (!config.is_object()) bad("config must be a JSON object");
  try {
    const double tol = tolerance ? *tolerance : number_or(config, "tolerance", kBoundaryTol);
    if (!(tol >= 0.0)) bad("tolerance must be non-negative");
    if (action == "check") return run_check(config, tol);
    if (action == "design") return run_design(config);
    if (action == "density") return run_density(config);
    if (action == "sample") return run_sample(config, seed);
    if (action == "reconstruct") return run_reconstruct(config, seed);
    if (action == "report") return run_report(config, tol);
  } catch (const json::exception& e) {
    bad(std::string("config: ") + e.what());
  }
  bad("unknown action \"" + action + "\"");
}

}  // namespace trajnyq
