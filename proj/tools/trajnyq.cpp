// trajnyq: config-driven front end for the sampling checks, designs and reconstructions.
#include "trajnyq/pipeline.hpp"

#include "CLI11.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace fs = std::filesystem;
using trajnyq::io::json;

namespace {

std::pair<std::size_t, std::size_t> line_column(const std::string& text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

int fail(const std::string& msg, int code) {
  std::cerr << "trajnyq: " << msg << "\n";
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Nyquist checks, designs and reconstructions for trajectory sampling"};
  app.require_subcommand(1, 1);

  std::string config_path;
  std::string out_dir = ".";
  std::uint64_t seed = 0;
  for (const char* name : {"check", "design", "density", "sample", "reconstruct", "report"}) {
    auto* sub = app.add_subcommand(name);
    sub->add_option("--config", config_path, "JSON config file")->required();
    sub->add_option("--out", out_dir, "directory for artifacts");
    sub->add_option("--seed", seed, "seed for generated fields (overrides the config)");
  }
  CLI11_PARSE(app, argc, argv);
  const auto* sub = app.get_subcommands().front();
  const std::string action = sub->get_name();
  std::optional<std::uint64_t> seed_override;
  if (sub->count("--seed") > 0) seed_override = seed;

  std::optional<double> tol;
  if (const char* env = std::getenv("TRAJNYQ_BOUNDARY_TOL")) {
    char* end = nullptr;
    const double t = std::strtod(env, &end);
    if (end == env || *end != '\0' || !(t >= 0.0)) return fail("TRAJNYQ_BOUNDARY_TOL is not a non-negative number", 1);
    tol = t;
  }

  std::ifstream in(config_path, std::ios::binary);
  if (!in) return fail("cannot read config " + config_path, 1);
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  json config;
  try {
    config = json::parse(text);
  } catch (const json::parse_error& e) {
    const auto [line, col] = line_column(text, e.byte);
    return fail(config_path + ":" + std::to_string(line) + ":" + std::to_string(col) + ": malformed JSON", 1);
  }

  trajnyq::PipelineResult result;
  try {
    result = trajnyq::execute(action, config, seed_override, tol);
  } catch (const trajnyq::Error& e) {
    return fail(e.what(), static_cast<int>(trajnyq::exit_code_for(e)));
  }

  std::error_code ec;
  fs::create_directories(out_dir, ec);
  for (const auto& [name, contents] : result.artifacts) {
    std::ofstream out(fs::path(out_dir) / name, std::ios::binary);
    if (!(out << contents)) return fail("cannot write " + (fs::path(out_dir) / name).string(), 1);
  }
  std::cout << result.result.dump(2) << "\n";
  return static_cast<int>(result.exit_code);
}
