// Copyright 2026 The softgait Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SOFTGAIT_CLI_HPP_
#define SOFTGAIT_CLI_HPP_

// Command-line front end. Every step reads and writes explicit files so a
// pipeline (learn -> build -> fault -> enumerate -> plan -> rollout) can be
// re-run or audited step by step.
//
// Exit codes: 0 success, 1 usage error, 2 data error, 3 infeasible or not
// executable, 4 resource limit.
//
// SOFTGAIT_VERBOSITY (0 quiet, 1 default, 2 debug) only changes what goes
// to stderr.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "softgait/cycle_basis.hpp"
#include "softgait/errors.hpp"
#include "softgait/gait_planner.hpp"
#include "softgait/reward_learning.hpp"
#include "softgait/rollout.hpp"
#include "softgait/state_space.hpp"
#include "softgait/transition_graph.hpp"

namespace softgait::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitData = 2,
  kExitInfeasible = 3,
  kExitResourceLimit = 4,
};

class UsageError : public Error {
 public:
  using Error::Error;
};

struct WorkspaceConfig {
  std::filesystem::path spec_path;
  std::filesystem::path reward_table_path;
  std::filesystem::path output_dir = ".";
  // Defaults to <output_dir>/graph.json.
  std::filesystem::path graph_path;
  int quantization_denominator = 4;
  std::size_t cycle_cap = kDefaultCycleCap;

  std::filesystem::path graph_file() const {
    return graph_path.empty() ? output_dir / "graph.json" : graph_path;
  }
};

namespace detail {

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot write " + path.string());
  out << text;
  if (!out) throw DataError("failed writing " + path.string());
}

// Runs `fn` and prefixes data errors with the file they came from.
template <typename Fn>
auto in_file(const std::filesystem::path& path, Fn&& fn) {
  try {
    return fn();
  } catch (const DataError& e) {
    const std::string msg = e.what();
    if (msg.rfind(path.string(), 0) == 0) throw;
    throw DataError(path.string() + ": " + msg);
  }
}

inline nlohmann::json parse_json(const std::filesystem::path& path) {
  const std::string text = read_file(path);
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

inline std::string dump(const nlohmann::json& j) { return j.dump(2) + "\n"; }

class Session {
 public:
  Session(const WorkspaceConfig& cfg, std::ostream& out, std::ostream& err,
          int verbosity)
      : cfg_(cfg), out_(out), err_(err), verbosity_(verbosity) {}

  void warn(const std::string& msg) const {
    if (verbosity_ >= 1) err_ << "warning: " << msg << '\n';
  }
  void debug(const std::string& msg) const {
    if (verbosity_ >= 2) err_ << "debug: " << msg << '\n';
  }

  RobotSpec spec() const {
    if (cfg_.spec_path.empty()) throw UsageError("--spec is required");
    return in_file(cfg_.spec_path,
                   [&] { return robot_spec_from_json(parse_json(cfg_.spec_path)); });
  }

  TransitionGraph graph() const {
    const auto path = cfg_.graph_file();
    return in_file(path, [&] { return graph_from_json(parse_json(path)); });
  }

  CycleBasis basis(const TransitionGraph& g) const {
    CycleBasis b = enumerate_simple_cycles(g, cfg_.cycle_cap);
    debug(std::to_string(b.size()) + " simple cycles");
    return b;
  }

  int rewards_learn(const std::filesystem::path& obs, const std::string& surface,
                    std::filesystem::path output) const {
    const RobotSpec s = spec();
    const std::string text = read_file(obs);
    RewardTable table = in_file(obs, [&] {
      std::istringstream in(text);
      return aggregate_observations(load_observations(in, s));
    });
    table.surface = surface;
    if (output.empty()) output = cfg_.output_dir / "rewards.csv";
    std::ostringstream csv;
    save_reward_table(csv, table);
    write_file(output, csv.str());
    int trials = 0;
    for (const auto& [key, count] : table.observation_counts) trials += count;
    out_ << "learned " << table.size() << " transition rewards from " << trials
         << " trials";
    if (!surface.empty()) out_ << " on surface '" << surface << "'";
    out_ << " -> " << output.string() << '\n';
    return kExitOk;
  }

  int graph_build(const std::string& prune, const std::filesystem::path& dot) const {
    const RobotSpec s = spec();
    if (cfg_.reward_table_path.empty()) throw UsageError("--rewards is required");
    std::vector<std::string> warnings;
    const std::string text = read_file(cfg_.reward_table_path);
    const RewardTable table = in_file(cfg_.reward_table_path, [&] {
      std::istringstream in(text);
      return load_reward_table(in, s, &warnings);
    });
    TransitionGraph g = in_file(cfg_.reward_table_path,
                                [&] { return build_complete_graph(s, table, &warnings); });
    for (const auto& w : warnings) warn(cfg_.reward_table_path.string() + ": " + w);
    if (!prune.empty()) {
      const auto parts = softgait::detail::split(prune, ',');
      std::vector<double> t;
      for (auto p : parts) {
        const auto v = softgait::detail::parse_double(p);
        if (!v) throw UsageError("--prune expects dx,dy,dtheta");
        t.push_back(*v);
      }
      if (t.size() != 3) throw UsageError("--prune expects dx,dy,dtheta");
      g = prune_arcs(g, {t[0], t[1], t[2]});
    }
    write_file(cfg_.graph_file(), dump(to_json(g)));
    if (!dot.empty()) {
      std::ostringstream ss;
      write_dot(ss, g);
      write_file(dot, ss.str());
    }
    summarize(g);
    out_ << "graph -> " << cfg_.graph_file().string() << '\n';
    return kExitOk;
  }

  int fault_disable(int subsystem, int stuck, std::filesystem::path output) const {
    const TransitionGraph before = graph();
    const TransitionGraph after = disable_subsystem(before, subsystem, stuck);
    if (output.empty()) output = cfg_.graph_file();
    write_file(output, dump(to_json(after)));
    out_ << "isolated nodes:";
    for (int i = 1; i <= after.node_count(); ++i) {
      if (before.node_enabled(NodeId{i}) && !after.node_enabled(NodeId{i})) {
        out_ << ' ' << format_node(after.spec(), NodeId{i}) << " (N" << i << ")";
      }
    }
    out_ << '\n';
    summarize(after);
    out_ << "graph -> " << output.string() << '\n';
    return kExitOk;
  }

  int cycles_enumerate(std::filesystem::path output) const {
    const TransitionGraph g = graph();
    const CycleBasis b = basis(g);
    if (output.empty()) output = cfg_.output_dir / "cycles.json";
    write_file(output, dump(to_json(b, g.spec())));
    out_ << b.size() << " simple cycles -> " << output.string() << '\n';
    return kExitOk;
  }

  int gait_plan(const std::filesystem::path& problem_path, bool all_optima,
                std::size_t max_count, const SolverOptions& options,
                std::filesystem::path output) const {
    const TransitionGraph g = graph();
    const nlohmann::json pj = parse_json(problem_path);
    GaitProblem problem = in_file(problem_path, [&] {
      GaitProblem p = problem_from_json(pj, g, problem_path.parent_path());
      if (!pj.contains("denominator")) p.denominator = cfg_.quantization_denominator;
      return p;
    });
    const CycleBasis b = basis(g);
    if (b.empty()) {
      throw DataError("graph " + cfg_.graph_file().string() + " has no simple cycles");
    }
    warn_off_grid(b, problem.denominator);
    std::vector<GaitSolution> solutions = in_file(problem_path, [&] {
      return enumerate_optimal_gaits(problem, b, all_optima ? max_count : 1, options);
    });
    GaitSolution primary;
    if (solutions.empty()) {
      primary.circulation.coefficients.assign(b.size(), 0);
      primary.status = SolveStatus::kInfeasible;
    } else {
      primary = solutions.front();
    }
    if (output.empty()) output = cfg_.output_dir / "solution.json";
    write_file(output, dump(to_json(primary, b, g.spec())));
    if (all_optima && primary.status == SolveStatus::kOptimal) {
      nlohmann::json all = nlohmann::json::array();
      for (const auto& s : solutions) all.push_back(to_json(s, b, g.spec()));
      write_file(output.parent_path() / "optima.json", dump(all));
    }

    out_ << "status: " << status_name(primary.status) << '\n';
    if (primary.status == SolveStatus::kInfeasible) {
      out_ << "no nonzero gait satisfies the drift, length and time constraints\n";
      return kExitInfeasible;
    }
    if (all_optima) {
      out_ << solutions.size() << " optimal gait(s) of equal cost\n";
    }
    for (std::size_t k = 0; k < solutions.size(); ++k) {
      if (all_optima) out_ << "gait " << (k + 1) << ":\n";
      render(solutions[k], b, g.spec());
    }
    out_ << "solution -> " << output.string() << '\n';
    debug("search nodes: " + std::to_string(primary.nodes_explored));
    return primary.status == SolveStatus::kOptimal ? kExitOk : kExitResourceLimit;
  }

  int gait_rollout(const std::filesystem::path& solution_path,
                   const std::string& start, bool se2,
                   std::filesystem::path output) const {
    const TransitionGraph g = graph();
    const CycleBasis b = basis(g);
    const nlohmann::json sj = parse_json(solution_path);
    const Circulation c = in_file(solution_path, [&] {
      return circulation_from_json(sj, b, g.spec());
    });
    const NodeId start_node = parse_node(g.spec(), start);
    const Walk walk = sequence_circulation(c, b, g, start_node);
    const Rollout r = se2 ? integrate_se2(walk, g.rewards()) : linear_rollout(walk, g.rewards());
    if (output.empty()) output = cfg_.output_dir / "rollout.csv";
    std::ostringstream csv;
    write_trace_csv(csv, walk, r, g.spec());
    write_file(output, csv.str());
    out_ << "walk: " << format_walk(g.spec(), walk) << '\n';
    out_ << (se2 ? "se2" : "linear") << " final pose: ["
         << softgait::detail::format_double(r.final_pose.x) << ", "
         << softgait::detail::format_double(r.final_pose.y) << ", "
         << softgait::detail::format_double(r.final_pose.theta) << "]\n";
    out_ << "trace -> " << output.string() << '\n';
    return kExitOk;
  }

 private:
  void summarize(const TransitionGraph& g) const {
    out_ << "nodes: " << g.node_count() << " (" << g.enabled_nodes().size()
         << " enabled), arcs: " << g.arc_count() << " (" << g.enabled_arcs().size()
         << " enabled)\n";
  }

  void render(const GaitSolution& s, const CycleBasis& b, const RobotSpec& spec) const {
    out_ << "  reward: " << format_reward(s.reward) << "  length: " << s.length << '\n';
    for (std::size_t i = 0; i < b.size(); ++i) {
      const int x = s.circulation.coefficients[i];
      if (x == 0) continue;
      out_ << "  " << x << " x " << format_cycle(spec, b.cycles[i]) << "  "
           << format_reward(b.cycle_rewards[i]) << '\n';
    }
  }

  void warn_off_grid(const CycleBasis& b, int denominator) const {
    std::size_t off = 0;
    for (const auto& r : b.cycle_rewards) {
      for (Axis a : kAllAxes) {
        const double scaled = r[a] * denominator;
        if (std::abs(scaled - std::round(scaled)) > 1e-9) ++off;
      }
    }
    if (off > 0) {
      warn(std::to_string(off) + " cycle reward component(s) are not multiples of 1/" +
           std::to_string(denominator) + " and were rounded for optimization");
    }
  }

  const WorkspaceConfig& cfg_;
  std::ostream& out_;
  std::ostream& err_;
  int verbosity_;
};

inline int verbosity_from_env() {
  const char* v = std::getenv("SOFTGAIT_VERBOSITY");
  if (v == nullptr) return 1;
  const auto n = softgait::detail::parse_int(v);
  return n ? *n : 1;
}

}  // namespace detail

// Runs one command line (args[0] is the program name).
inline int run_command(const std::vector<std::string>& args, std::ostream& out,
                       std::ostream& err) {
  CLI::App app{"Gait synthesis for discretized multi-limb soft robots"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for all subcommands");
  WorkspaceConfig cfg;
  app.add_option("--spec", cfg.spec_path, "Robot spec JSON");
  app.add_option("--rewards", cfg.reward_table_path, "Reward table CSV");
  app.add_option("--out", cfg.output_dir, "Output directory")->capture_default_str();
  app.add_option("--graph", cfg.graph_path, "Graph file (default <out>/graph.json)");
  app.add_option("--denominator", cfg.quantization_denominator,
                 "Reward quantization denominator")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--cycle-cap", cfg.cycle_cap, "Maximum number of simple cycles")
      ->capture_default_str();

  auto* rewards = app.add_subcommand("rewards", "Reward tables");
  rewards->require_subcommand(1);
  auto* learn = rewards->add_subcommand("learn", "Aggregate an observation log into a reward CSV");
  std::filesystem::path obs_path;
  std::string surface;
  std::filesystem::path learn_out;
  learn->add_option("observations", obs_path, "Observation log (JSON Lines)")->required();
  learn->add_option("--surface", surface, "Surface name");
  learn->add_option("-o,--output", learn_out, "Output CSV (default <out>/rewards.csv)");

  auto* graph = app.add_subcommand("graph", "Transition graphs");
  graph->require_subcommand(1);
  auto* build = graph->add_subcommand("build", "Build the complete transition graph");
  std::string prune;
  std::filesystem::path dot_path;
  build->add_option("--prune", prune, "Disable arcs below dx,dy,dtheta in every component");
  build->add_option("--dot", dot_path, "Also write a Graphviz DOT file");

  auto* fault = app.add_subcommand("fault", "Fault isolation");
  fault->require_subcommand(1);
  auto* disable = fault->add_subcommand("disable", "Isolate states unreachable with a stuck subsystem");
  int subsystem = 0;
  int stuck = 0;
  std::filesystem::path fault_out;
  disable->add_option("--subsystem", subsystem, "Subsystem number (1-based)")->required();
  disable->add_option("--stuck", stuck, "Behavior the subsystem is stuck at")->required();
  disable->add_option("-o,--output", fault_out, "Output graph (default: overwrite --graph)");

  auto* cycles = app.add_subcommand("cycles", "Simple cycles");
  cycles->require_subcommand(1);
  auto* enumerate = cycles->add_subcommand("enumerate", "Enumerate all simple cycles");
  std::filesystem::path cycles_out;
  enumerate->add_option("-o,--output", cycles_out, "Output JSON (default <out>/cycles.json)");

  auto* gait = app.add_subcommand("gait", "Gait planning");
  gait->require_subcommand(1);
  auto* plan = gait->add_subcommand("plan", "Solve for an optimal gait");
  std::filesystem::path problem_path;
  bool all_optima = false;
  std::size_t max_count = 10;
  std::uint64_t node_limit = SolverOptions{}.node_limit;
  long long time_limit_ms = 0;
  std::filesystem::path plan_out;
  plan->add_option("problem", problem_path, "Problem JSON")->required();
  plan->add_flag("--all-optima", all_optima, "List every gait of optimal cost");
  plan->add_option("--max-count", max_count, "Limit for --all-optima")->capture_default_str();
  plan->add_option("--node-limit", node_limit, "Search node limit")->capture_default_str();
  plan->add_option("--time-limit-ms", time_limit_ms, "Search time limit (0 = none)");
  plan->add_option("-o,--output", plan_out, "Output JSON (default <out>/solution.json)");

  auto* rollout = gait->add_subcommand("rollout", "Sequence a solution and predict poses");
  std::filesystem::path solution_path;
  std::string start;
  bool se2 = false;
  std::filesystem::path rollout_out;
  rollout->add_option("solution", solution_path, "Solution JSON")->required();
  rollout->add_option("--start", start, "Start state, e.g. 000")->required();
  rollout->add_flag("--se2", se2, "Compose transitions through the heading");
  rollout->add_option("-o,--output", rollout_out, "Output CSV (default <out>/rollout.csv)");

  std::vector<std::string> reversed(args.size() > 1 ? args.begin() + 1 : args.end(),
                                    args.end());
  std::reverse(reversed.begin(), reversed.end());
  try {
    app.parse(std::move(reversed));
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  detail::Session session(cfg, out, err, detail::verbosity_from_env());
  try {
    if (learn->parsed()) return session.rewards_learn(obs_path, surface, learn_out);
    if (build->parsed()) return session.graph_build(prune, dot_path);
    if (disable->parsed()) return session.fault_disable(subsystem, stuck, fault_out);
    if (enumerate->parsed()) return session.cycles_enumerate(cycles_out);
    if (plan->parsed()) {
      SolverOptions options;
      options.node_limit = node_limit;
      options.time_limit = std::chrono::milliseconds(time_limit_ms);
      return session.gait_plan(problem_path, all_optima, max_count, options, plan_out);
    }
    if (rollout->parsed()) return session.gait_rollout(solution_path, start, se2, rollout_out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const NotExecutableError& e) {
    err << "not executable: " << e.what() << '\n';
    return kExitInfeasible;
  } catch (const ResourceLimitError& e) {
    err << "resource limit: " << e.what() << '\n';
    return kExitResourceLimit;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitData;
  }
  err << "usage error: no command given\n";
  return kExitUsage;
}

}  // namespace softgait::cli

#endif  // SOFTGAIT_CLI_HPP_
