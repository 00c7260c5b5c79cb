#include "clfd/io/result_io.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <set>

#include "json_util.hpp"

namespace clfd::io {

namespace {

sim::Outcome outcome_from_string(const std::string& s) {
  if (s == "success") return sim::Outcome::Success;
  if (s == "motion_planning_failure") return sim::Outcome::MotionPlanningFailure;
  if (s == "ik_failure") return sim::Outcome::IkFailure;
  if (s == "pose_estimation_failure")
    return sim::Outcome::PoseEstimationFailure;
  throw FormatError("unknown outcome '" + s + "'");
}

}  // namespace

void save_result(const sim::ExecutionResult& result, const ResultLabel& label,
                 const std::filesystem::path& path) {
  json root;
  root["success"] = result.success;
  root["total_duration"] = result.total_duration;

  json reports = json::array();
  for (const auto& r : result.reports) {
    json j;
    j["primitive"] = r.name;
    j["outcome"] = sim::to_string(r.outcome);
    j["duration"] = r.duration;
    j["candidates"] = r.candidate_indices;
    if (!r.detail.empty()) j["detail"] = r.detail;
    reports.push_back(j);
  }
  root["reports"] = reports;

  json errors = json::array();
  for (const auto& e : result.key_moment_errors) {
    errors.push_back({{"primitive_index", e.primitive_index},
                      {"frame", e.frame},
                      {"translation_error_m", e.translation_error},
                      {"rotation_error_rad", e.rotation_error},
                      {"contacts_ok", e.contacts_ok}});
  }
  root["key_moment_errors"] = errors;

  if (!label.empty()) {
    json l;
    for (const auto& [k, v] : label) l[k] = v;
    root["label"] = l;
  }

  std::ofstream out(path);
  if (!out) throw FormatError("cannot write " + path.string());
  out << root.dump(2) << "\n";
}

LoadedResult load_result(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path.string());
  json root;
  try {
    in >> root;
  } catch (const json::exception& e) {
    throw FormatError(path.string() + ": " + e.what());
  }

  LoadedResult out;
  out.result.success = root.at("success").get<bool>();
  out.result.total_duration = root.at("total_duration").get<double>();
  for (const auto& r : root.at("reports")) {
    sim::PrimitiveReport report;
    report.name = r.at("primitive").get<std::string>();
    report.outcome = outcome_from_string(r.at("outcome").get<std::string>());
    report.duration = r.at("duration").get<double>();
    for (const auto& c : r.value("candidates", json::array()))
      report.candidate_indices.push_back(c.get<int>());
    report.detail = r.value("detail", "");
    out.result.reports.push_back(std::move(report));
  }
  for (const auto& e : root.value("key_moment_errors", json::array())) {
    sim::KeyMomentError err;
    err.primitive_index = e.at("primitive_index").get<std::size_t>();
    err.frame = e.at("frame").get<int>();
    err.translation_error = e.at("translation_error_m").get<double>();
    err.rotation_error = e.at("rotation_error_rad").get<double>();
    err.contacts_ok = e.value("contacts_ok", true);
    out.result.key_moment_errors.push_back(err);
  }
  if (root.contains("label")) {
    for (const auto& [k, v] : root["label"].items())
      out.label[k] = v.get<std::string>();
  }
  return out;
}

void write_eval_table(const std::vector<LoadedResult>& results,
                      std::ostream& out) {
  // group by label; columns are the union of primitive names in report order
  std::vector<std::string> columns;
  for (const auto& r : results) {
    for (const auto& rep : r.result.reports) {
      if (std::find(columns.begin(), columns.end(), rep.name) == columns.end())
        columns.push_back(rep.name);
    }
  }

  const auto label_key = [](const ResultLabel& label) {
    std::string key;
    for (const auto& [k, v] : label) key += k + "=" + v + " ";
    return key.empty() ? std::string("(unlabeled)") : key;
  };

  struct RowStats {
    std::map<std::string, std::pair<int, int>> per_step;  // success, attempts
    int full_success = 0;
    int runs = 0;
  };
  std::map<std::string, RowStats> rows;
  for (const auto& r : results) {
    RowStats& row = rows[label_key(r.label)];
    ++row.runs;
    if (r.result.success) ++row.full_success;
    for (const auto& rep : r.result.reports) {
      auto& [succ, att] = row.per_step[rep.name];
      ++att;
      if (rep.outcome == sim::Outcome::Success) ++succ;
    }
  }

  out << "simulated success rates (not physical-robot results)\n";
  out << std::left << std::setw(34) << "variant";
  for (const auto& c : columns) out << std::setw(26) << c;
  out << std::setw(8) << "all" << "\n";
  for (const auto& [key, row] : rows) {
    out << std::left << std::setw(34) << key;
    for (const auto& c : columns) {
      auto it = row.per_step.find(c);
      if (it == row.per_step.end()) {
        out << std::setw(26) << "--";
      } else {
        std::ostringstream cell;
        cell << std::fixed << std::setprecision(2)
             << static_cast<double>(it->second.first) / it->second.second
             << " (" << it->second.first << "/" << it->second.second << ")";
        out << std::setw(26) << cell.str();
      }
    }
    std::ostringstream all;
    all << std::fixed << std::setprecision(2)
        << static_cast<double>(row.full_success) / row.runs;
    out << std::setw(8) << all.str() << "\n";
  }
}

void write_timeline_csv(const std::vector<contact::ContactTimeline>& timelines,
                        const std::vector<contact::DistanceSeries>& distances,
                        std::ostream& out) {
  out << "frame,pair_a,pair_b,distance_m,state\n";
  out << std::setprecision(9);
  for (std::size_t i = 0; i < timelines.size(); ++i) {
    const auto& tl = timelines[i];
    for (std::size_t f = 0; f < tl.states.size(); ++f) {
      out << f << "," << tl.pair.first << "," << tl.pair.second << ",";
      if (i < distances.size() && f < distances[i].size() && distances[i][f])
        out << *distances[i][f];
      out << "," << (tl.states[f] ? 1 : 0) << "\n";
    }
  }
}

void write_log_csv(const std::vector<sim::SimLogRow>& log, std::ostream& out) {
  if (log.empty()) {
    out << "time\n";
    return;
  }
  out << "time";
  for (Eigen::Index j = 0; j < log.front().config.size(); ++j)
    out << ",q" << j;
  std::set<std::string> names;
  for (const auto& row : log)
    for (const auto& [name, pose] : row.object_poses) names.insert(name);
  for (const auto& n : names)
    out << "," << n << ".x," << n << ".y," << n << ".z," << n << ".qw," << n
        << ".qx," << n << ".qy," << n << ".qz";
  out << "\n";
  out << std::setprecision(12);
  for (const auto& row : log) {
    out << row.time;
    for (Eigen::Index j = 0; j < row.config.size(); ++j)
      out << "," << row.config[j];
    for (const auto& n : names) {
      auto it = row.object_poses.find(n);
      if (it == row.object_poses.end()) {
        out << ",,,,,,,";
      } else {
        const Pose& p = it->second;
        out << "," << p.translation.x() << "," << p.translation.y() << ","
            << p.translation.z() << "," << p.rotation.w() << ","
            << p.rotation.x() << "," << p.rotation.y() << ","
            << p.rotation.z();
      }
    }
    out << "\n";
  }
}

}  // namespace clfd::io
