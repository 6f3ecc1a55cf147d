#pragma once

#include <nlohmann/json.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace halllab {

inline constexpr const char* tool_name = "halllab";
inline constexpr const char* tool_version = "0.1.0";

struct Verdict {
  std::string name;
  std::string expectation;
  std::string observed;
  bool pass = false;
};

/// One JSON document per experiment. Everything except `timing` is a pure
/// function of the command line and seed.
struct ExperimentReport {
  std::string command;              // subcommand name
  std::vector<std::string> argv;    // full echo
  std::uint64_t seed = 0;
  nlohmann::json parameters = nlohmann::json::object();
  nlohmann::json trials = nlohmann::json::array();
  nlohmann::json aggregate = nlohmann::json::object();
  std::vector<Verdict> verdicts;
  std::string timestamp;            // ISO 8601, UTC
  double wall_clock_seconds = 0;
};

nlohmann::json to_json(const ExperimentReport& r);
ExperimentReport report_from_json(const nlohmann::json& j);

/// The report without its timing object, for reproducibility comparisons.
nlohmann::json reproducible_view(const nlohmann::json& report);

std::string utc_timestamp();

}  // namespace halllab
