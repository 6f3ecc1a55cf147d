#include "halllab/report.hpp"

#include "halllab/errors.hpp"

#include <chrono>
#include <ctime>

namespace halllab {

using nlohmann::json;

json to_json(const ExperimentReport& r) {
  json verdicts = json::array();
  for (const auto& v : r.verdicts)
    verdicts.push_back({{"name", v.name}, {"expectation", v.expectation}, {"observed", v.observed}, {"pass", v.pass}});
  return {{"tool", tool_name},
          {"version", tool_version},
          {"command", r.command},
          {"argv", r.argv},
          {"seed", r.seed},
          {"parameters", r.parameters},
          {"trials", r.trials},
          {"aggregate", r.aggregate},
          {"verdicts", verdicts},
          {"timing", {{"timestamp", r.timestamp}, {"wall_clock_seconds", r.wall_clock_seconds}}}};
}

ExperimentReport report_from_json(const json& j) {
  try {
    if (j.at("tool") != tool_name) throw PreconditionError("report was not produced by " + std::string(tool_name));
    ExperimentReport r;
    r.command = j.at("command").get<std::string>();
    r.argv = j.at("argv").get<std::vector<std::string>>();
    r.seed = j.at("seed").get<std::uint64_t>();
    r.parameters = j.at("parameters");
    r.trials = j.at("trials");
    r.aggregate = j.at("aggregate");
    for (const auto& v : j.at("verdicts"))
      r.verdicts.push_back({v.at("name").get<std::string>(), v.at("expectation").get<std::string>(),
                            v.at("observed").get<std::string>(), v.at("pass").get<bool>()});
    r.timestamp = j.at("timing").at("timestamp").get<std::string>();
    r.wall_clock_seconds = j.at("timing").at("wall_clock_seconds").get<double>();
    return r;
  } catch (const json::exception& e) {
    throw PreconditionError(std::string("malformed report: ") + e.what());
  }
}

json reproducible_view(const json& report) {
  json out = report;
  out.erase("timing");
  return out;
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace halllab
