#pragma once

#include "trajnyq/error.hpp"
#include "trajnyq/io.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>

namespace trajnyq {

enum class ExitCode : int { Ok = 0, ConfigError = 1, NotNyquist = 2, Marginal = 3 };

struct PipelineResult {
  io::json result;
  std::map<std::string, std::string> artifacts;  // file name -> contents
  ExitCode exit_code = ExitCode::Ok;
};

/// Actions: check, design, density, sample, reconstruct, report.
/// Throws trajnyq::Error for invalid input; ReconstructionImpossible propagates as is.
PipelineResult execute(const std::string& action, const io::json& config,
                       std::optional<std::uint64_t> seed = std::nullopt,
                       std::optional<double> tolerance = std::nullopt);

/// Exit code for a thrown error.
ExitCode exit_code_for(const Error& e);
ExitCode exit_code_for(Status s);

}  // namespace trajnyq
