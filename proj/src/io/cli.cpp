#include "clfd/io/cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "clfd/contact/timeline.hpp"
#include "clfd/errors.hpp"
#include "clfd/io/chain_io.hpp"
#include "clfd/io/demo_io.hpp"
#include "clfd/io/plot.hpp"
#include "clfd/io/policy_io.hpp"
#include "clfd/io/result_io.hpp"
#include "clfd/io/scenario.hpp"
#include "clfd/io/scene_io.hpp"
#include "clfd/learning/learn.hpp"
#include "clfd/learning/segmentation.hpp"
#include "clfd/sim/executor.hpp"
#include "json_util.hpp"

namespace clfd::io {

namespace {

struct PipelineArtifacts {
  Demonstration demo;  // ingestion-filtered
  learning::ContactTimelines timelines;
  std::vector<learning::Primitive> primitives;
};

PipelineArtifacts segment_pipeline(const std::filesystem::path& demo_dir,
                                   const contact::HysteresisParams& params) {
  PipelineArtifacts art;
  art.demo = filter_demonstration(load_demo(demo_dir));
  art.timelines = learning::analyze_contacts(art.demo, params);
  art.primitives = learning::segment_primitives(art.timelines.hand);
  return art;
}

void write_primitives_json(const std::vector<learning::Primitive>& prims,
                           const std::filesystem::path& path) {
  json out = json::array();
  for (const auto& p : prims) {
    out.push_back({{"kind", learning::to_string(p.kind)},
                   {"target", p.target},
                   {"span", {p.span.first, p.span.second}}});
  }
  std::ofstream f(path);
  if (!f) throw FormatError("cannot write " + path.string());
  f << out.dump(2) << "\n";
}

ResultLabel parse_label(const std::string& spec) {
  ResultLabel label;
  std::istringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos)
      throw InvalidArgument("label entries must be key=value: " + item);
    label[item.substr(0, eq)] = item.substr(eq + 1);
  }
  return label;
}

}  // namespace

int cli_main(const std::vector<std::string>& args, std::ostream& out,
             std::ostream& err) {
  CLI::App app{"contact-primitive learning-from-demonstration pipeline"};
  app.require_subcommand(1);

  // gen-demo
  auto* gen = app.add_subcommand(
      "gen-demo", "generate a synthetic demonstration + truth sidecar");
  std::string gen_spec;
  std::string gen_builtin;
  std::string gen_out;
  std::uint64_t gen_seed = 0;
  auto* spec_opt = gen->add_option("spec", gen_spec, "scenario spec JSON");
  gen->add_option("--builtin", gen_builtin,
                  "built-in scenario: dishwash | random")
      ->excludes(spec_opt);
  gen->add_option("out", gen_out, "output demo directory")->required();
  gen->add_option("--seed", gen_seed, "generator seed");

  // segment
  auto* seg = app.add_subcommand(
      "segment", "contact timelines and primitive segmentation");
  std::string seg_demo, seg_csv = "timelines.csv",
                        seg_prims = "primitives.json";
  contact::HysteresisParams hyst;
  seg->add_option("demo", seg_demo, "demo directory")->required();
  seg->add_option("--d-make", hyst.d_make, "contact-make threshold [m]");
  seg->add_option("--d-break", hyst.d_break, "contact-break threshold [m]");
  seg->add_option("--csv-out", seg_csv, "timeline CSV output");
  seg->add_option("--primitives-out", seg_prims, "primitive list JSON output");

  // learn
  auto* lrn = app.add_subcommand("learn", "learn a policy from a demo");
  std::string lrn_demo, lrn_out;
  contact::HysteresisParams lrn_hyst;
  lrn->add_option("demo", lrn_demo, "demo directory")->required();
  lrn->add_option("policy-out", lrn_out, "policy JSON output")->required();
  lrn->add_option("--d-make", lrn_hyst.d_make, "contact-make threshold [m]");
  lrn->add_option("--d-break", lrn_hyst.d_break,
                  "contact-break threshold [m]");

  // plan / execute share options
  const auto add_exec_options = [](CLI::App* cmd, std::string& policy,
                                   std::string& scene, std::string& chain,
                                   sim::ExecParams& params) {
    cmd->add_option("policy", policy, "policy JSON")->required();
    cmd->add_option("scene", scene, "scene JSON")->required();
    cmd->add_option("chain", chain, "robot description JSON")->required();
    cmd->add_option("--seed", params.rrt.rng_seed, "planner seed");
    cmd->add_flag("--no-alternatives",
                  [&params](std::int64_t) { params.propose_alternatives = false; },
                  "disable alternative goal-pose proposal");
  };

  auto* pln = app.add_subcommand("plan",
                                 "dry run: per-primitive feasibility report");
  std::string pln_policy, pln_scene, pln_chain;
  sim::ExecParams pln_params;
  add_exec_options(pln, pln_policy, pln_scene, pln_chain, pln_params);

  auto* exe = app.add_subcommand("execute", "execute a policy in simulation");
  std::string exe_policy, exe_scene, exe_chain;
  std::string exe_out = "result.json", exe_csv, exe_label;
  double exe_pose_noise = 0.0;
  sim::ExecParams exe_params;
  add_exec_options(exe, exe_policy, exe_scene, exe_chain, exe_params);
  exe->add_flag("--continue-on-error", exe_params.continue_on_error,
                "keep executing after a primitive fails");
  exe->add_option("--out", exe_out, "result JSON output");
  exe->add_option("--csv", exe_csv, "1 kHz joint/object time-series CSV");
  exe->add_option("--label", exe_label,
                  "variant labels, e.g. obj=S,loc=U,env=S");
  exe->add_option("--pose-noise", exe_pose_noise,
                  "enable execution-time pose estimation with this cloud "
                  "noise sigma [m]");

  // eval
  auto* evl = app.add_subcommand("eval", "success-rate table over results");
  std::vector<std::string> evl_results;
  evl->add_option("results", evl_results, "result JSON files")->required();

  // plot
  auto* plt = app.add_subcommand("plot", "render a CSV export to SVG");
  std::string plt_csv, plt_svg;
  double plt_make = 0.005, plt_break = 0.010;
  plt->add_option("csv", plt_csv, "timeline or log CSV")->required();
  plt->add_option("svg-out", plt_svg, "SVG output")->required();
  plt->add_option("--d-make", plt_make, "threshold line [m]");
  plt->add_option("--d-break", plt_break, "threshold line [m]");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return 0;
    }
    err << e.what() << "\n";
    return 2;
  }

  try {
    if (gen->parsed()) {
      ScenarioSpec spec;
      if (!gen_builtin.empty()) {
        if (gen_builtin == "dishwash")
          spec = make_dishwash_scenario(gen_seed);
        else if (gen_builtin == "random")
          spec = make_random_scenario(gen_seed);
        else
          throw InvalidArgument("unknown builtin scenario '" + gen_builtin +
                                "'");
      } else if (!gen_spec.empty()) {
        spec = load_scenario(gen_spec);
        if (gen->count("--seed") > 0) spec.seed = gen_seed;
      } else {
        err << "gen-demo needs a spec file or --builtin\n";
        return 2;
      }
      auto [demo, truth] = generate_demo(spec);
      save_demo(demo, gen_out);
      save_truth(truth, std::filesystem::path(gen_out) / "truth.json");
      save_scenario(spec, std::filesystem::path(gen_out) / "scenario.json");
      out << "wrote " << gen_out << " (" << demo.frames.size()
          << " frames, " << demo.meta.objects.size() << " objects)\n";
      return 0;
    }

    if (seg->parsed()) {
      const auto art = segment_pipeline(seg_demo, hyst);
      std::vector<contact::ContactTimeline> timelines;
      std::vector<contact::DistanceSeries> distances;
      for (const auto& [name, tl] : art.timelines.hand) {
        timelines.push_back(tl);
        distances.push_back(
            contact::distance_series(art.demo, tl.pair.first, tl.pair.second));
      }
      for (const auto& [pair, tl] : art.timelines.objects) {
        timelines.push_back(tl);
        distances.push_back(
            contact::distance_series(art.demo, tl.pair.first, tl.pair.second));
      }
      std::ofstream csv(seg_csv);
      if (!csv) throw FormatError("cannot write " + seg_csv);
      write_timeline_csv(timelines, distances, csv);
      write_primitives_json(art.primitives, seg_prims);
      for (const auto& p : art.primitives)
        out << learning::to_string(p.kind) << " " << p.target << " ["
            << p.span.first << ", " << p.span.second << "]\n";
      out << "wrote " << seg_csv << " and " << seg_prims << "\n";
      return 0;
    }

    if (lrn->parsed()) {
      const auto art = segment_pipeline(lrn_demo, lrn_hyst);
      const auto tracks =
          learning::track_all_objects(art.demo, icp::IcpParams{});
      const auto policy = learning::learn_policy(
          art.demo, art.primitives, art.timelines, tracks,
          learning::LearnParams{});
      save_policy(policy, lrn_out);
      out << "wrote " << lrn_out << " (" << policy.primitives.size()
          << " primitives)\n";
      return 0;
    }

    if (pln->parsed() || exe->parsed()) {
      const bool dry = pln->parsed();
      const auto policy = load_policy(dry ? pln_policy : exe_policy);
      auto world = load_scene(dry ? pln_scene : exe_scene);
      const auto chain = load_chain(dry ? pln_chain : exe_chain);
      sim::ExecParams params = dry ? pln_params : exe_params;
      if (dry) params.continue_on_error = true;
      if (!dry && !exe_csv.empty()) params.record_rate = 1000.0;
      if (!dry && exe_pose_noise > 0.0) {
        params.pose_noise.enabled = true;
        params.pose_noise.sigma = exe_pose_noise;
        params.pose_noise.seed = params.rrt.rng_seed;
      }
      params.ik.rng_seed = params.rrt.rng_seed;

      const auto result = sim::execute_policy(policy, world, chain, params);
      for (std::size_t i = 0; i < result.reports.size(); ++i) {
        const auto& r = result.reports[i];
        out << (dry ? "feasibility " : "") << r.name << ": "
            << sim::to_string(r.outcome) << " (" << r.duration << " s)\n";
      }
      out << (result.success ? "all primitives succeeded"
                             : "execution failed")
          << ", total " << result.total_duration << " s\n";

      if (!dry) {
        save_result(result, exe_label.empty() ? ResultLabel{}
                                              : parse_label(exe_label),
                    exe_out);
        out << "wrote " << exe_out << "\n";
        if (!exe_csv.empty()) {
          std::ofstream csv(exe_csv);
          if (!csv) throw FormatError("cannot write " + exe_csv);
          write_log_csv(result.log, csv);
          out << "wrote " << exe_csv << "\n";
        }
      }
      return result.success ? 0 : 1;
    }

    if (evl->parsed()) {
      std::vector<LoadedResult> results;
      for (const auto& path : evl_results)
        results.push_back(load_result(path));
      write_eval_table(results, out);
      return 0;
    }

    if (plt->parsed()) {
      plot_csv(plt_csv, plt_svg, plt_make, plt_break);
      out << "wrote " << plt_svg << "\n";
      return 0;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace clfd::io
