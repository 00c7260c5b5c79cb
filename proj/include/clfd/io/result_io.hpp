#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>

#include "clfd/contact/timeline.hpp"
#include "clfd/sim/executor.hpp"

namespace clfd::io {

/// Scenario labels attached to a result (e.g. obj=S, loc=U, env=S).
using ResultLabel = std::map<std::string, std::string>;

void save_result(const sim::ExecutionResult& result, const ResultLabel& label,
                 const std::filesystem::path& path);

struct LoadedResult {
  sim::ExecutionResult result;  // log omitted
  ResultLabel label;
};

LoadedResult load_result(const std::filesystem::path& path);

/// Success-rate table over labeled results: one row per distinct label, one
/// column per primitive plus a whole-task column.
void write_eval_table(const std::vector<LoadedResult>& results,
                      std::ostream& out);

/// CSV "frame,pair_a,pair_b,distance_m,state"; absent frames leave the
/// distance blank.
void write_timeline_csv(const std::vector<contact::ContactTimeline>& timelines,
                        const std::vector<contact::DistanceSeries>& distances,
                        std::ostream& out);

/// CSV time series of joint configs and object poses from a simulation log.
void write_log_csv(const std::vector<sim::SimLogRow>& log, std::ostream& out);

}  // namespace clfd::io
