// manetsim: run single scenarios, pause-time sweeps and protocol rankings.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "manet/experiment.hpp"
#include "manet/scenario_file.hpp"
#include "manet/trace.hpp"

namespace {

using namespace manet;

struct ScenarioFlags {
  std::string config;
  std::optional<std::uint32_t> nodes;
  std::optional<std::string> field;
  std::optional<double> range;
  std::optional<double> duration;
  std::vector<std::string> flows;
  bool is_static = false;
};

void add_scenario_flags(CLI::App* app, ScenarioFlags& f) {
  app->add_option("--config", f.config, "Scenario file (key = value lines)");
  app->add_option("--nodes", f.nodes, "Number of nodes");
  app->add_option("--field", f.field, "Field size WxH in metres");
  app->add_option("--range", f.range, "Radio range in metres");
  app->add_option("--duration", f.duration, "Simulated seconds");
  app->add_option("--flows", f.flows, "CBR flow src:dst:bytes:interval[:start[:stop]] (repeatable)")
      ->take_all()
      ->allow_extra_args(false);
  app->add_flag("--static", f.is_static, "No mobility (pause = duration)");
}

Scenario build_scenario(const ScenarioFlags& f) {
  Scenario s;
  if (!f.config.empty()) {
    std::ifstream in(f.config);
    if (!in) throw IoError("cannot read scenario file '" + f.config + "'");
    apply_scenario_text(in, s);
  }
  if (f.nodes) s.node_count = *f.nodes;
  if (f.field) apply_setting(s, "field", *f.field);
  if (f.range) s.radio_range = *f.range;
  if (f.duration) s.duration = *f.duration;
  if (!f.flows.empty()) {
    s.flows.clear();
    for (const auto& text : f.flows) s.flows.push_back(parse_flow(text));
  }
  if (f.is_static) {
    s.mobility = MobilityModel::Static;
    s.pause_time = s.duration;
  }
  return s;
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::string item;
  for (char c : text) {
    if (c == ',') {
      out.push_back(item);
      item.clear();
    } else {
      item += c;
    }
  }
  out.push_back(item);
  return out;
}

std::vector<std::uint64_t> parse_seeds(const std::string& text) {
  std::vector<std::uint64_t> seeds;
  try {
    if (const auto dots = text.find(".."); dots != std::string::npos) {
      const auto lo = std::stoull(text.substr(0, dots));
      const auto hi = std::stoull(text.substr(dots + 2));
      if (hi < lo) throw ConfigError("--seeds: empty range '" + text + "'");
      for (auto s = lo; s <= hi; ++s) seeds.push_back(s);
    } else {
      for (const auto& s : split_list(text)) seeds.push_back(std::stoull(s));
    }
  } catch (const std::logic_error&) {
    throw ConfigError("--seeds: expected a..b or a comma list, got '" + text + "'");
  }
  return seeds;
}

std::vector<double> parse_pauses(const std::string& text) {
  std::vector<double> out;
  for (const auto& p : split_list(text)) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(p, &used);
    } catch (const std::logic_error&) {
      used = 0;
    }
    if (used != p.size() || p.empty() || v < 0.0) {
      throw ConfigError("--pause-times: '" + p + "' is not a non-negative number");
    }
    out.push_back(v);
  }
  return out;
}

template <typename Fn>
void write_file(const std::string& path, Fn&& fn) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write '" + path + "'");
  fn(out);
  if (!out) throw IoError("write to '" + path + "' failed");
}

std::vector<MetricsReport> read_sweep(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read '" + path + "'");
  try {
    return read_csv(in);
  } catch (const std::runtime_error& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Discrete-event MANET routing simulator"};
  app.require_subcommand(1);

  ScenarioFlags run_flags;
  std::string protocol = "dymo";
  std::string run_seed = "1";
  std::string trace_out;
  std::string run_csv;
  auto* run_cmd = app.add_subcommand("run", "Run one scenario; trace to --trace-out, metrics to stdout");
  add_scenario_flags(run_cmd, run_flags);
  run_cmd->add_option("-p,--protocol", protocol, "dymo, aodv, dsdv or dsr");
  run_cmd->add_option("--seeds,--seed", run_seed, "Seed for this run");
  run_cmd->add_option("--trace-out", trace_out, "Trace output file");
  run_cmd->add_option("--csv-out", run_csv, "Metrics CSV output file");

  ScenarioFlags sweep_flags;
  std::string protocols = "dymo,aodv,dsdv,dsr";
  std::string pauses = "0,20,40,60,80,100";
  std::string seeds = "1..10";
  std::string sweep_csv;
  unsigned jobs = 1;
  auto* sweep_cmd = app.add_subcommand("sweep", "Run protocols x pause times x seeds; one CSV row per run");
  add_scenario_flags(sweep_cmd, sweep_flags);
  sweep_cmd->add_option("--protocols", protocols, "Comma list of protocols");
  sweep_cmd->add_option("--pause-times", pauses, "Comma list of pause times in seconds");
  sweep_cmd->add_option("--seeds", seeds, "a..b or comma list");
  sweep_cmd->add_option("--csv-out", sweep_csv, "CSV output file (default: stdout)");
  sweep_cmd->add_option("--jobs", jobs, "Parallel runs")->check(CLI::PositiveNumber);

  std::string rank_in;
  std::string rank_csv;
  auto* rank_cmd = app.add_subcommand("rank", "Rank protocols per metric from a sweep CSV");
  rank_cmd->add_option("csv", rank_in, "Sweep CSV")->required();
  rank_cmd->add_option("--csv-out", rank_csv, "Aggregate CSV output file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << " (see --help)\n";
    return 1;
  }

  try {
    if (*run_cmd) {
      Scenario s = build_scenario(run_flags);
      apply_setting(s, "protocol", protocol);
      apply_setting(s, "seed", run_seed);
      s.validate();
      std::vector<TraceRecord> trace;
      const MetricsReport report = run_metrics(s, trace_out.empty() ? nullptr : &trace);
      if (!trace_out.empty()) {
        write_file(trace_out, [&](std::ostream& out) { write_trace(out, trace); });
      }
      auto emit = [&](std::ostream& out) { out << kCsvHeader << '\n' << format_csv_row(report) << '\n'; };
      if (!run_csv.empty()) write_file(run_csv, emit);
      emit(std::cout);
    } else if (*sweep_cmd) {
      SweepSpec spec;
      spec.base = build_scenario(sweep_flags);
      for (const auto& p : split_list(protocols)) {
        const auto parsed = parse_protocol(p);
        if (!parsed) throw ConfigError("--protocols: unknown protocol '" + p + "'");
        spec.protocols.push_back(*parsed);
      }
      spec.pause_times = parse_pauses(pauses);
      spec.seeds = parse_seeds(seeds);
      spec.base.validate();
      const auto rows = run_sweep(spec, jobs, [](std::size_t done, std::size_t total) {
        std::cerr << "\r" << done << "/" << total << std::flush;
        if (done == total) std::cerr << '\n';
      });
      auto emit = [&](std::ostream& out) {
        out << kCsvHeader << '\n';
        for (const auto& r : rows) out << format_csv_row(r) << '\n';
      };
      if (sweep_csv.empty()) {
        emit(std::cout);
      } else {
        write_file(sweep_csv, emit);
      }
    } else if (*rank_cmd) {
      const auto rows = read_sweep(rank_in);
      if (rows.empty()) throw ConfigError(rank_in + ": no run rows");
      std::cout << format_rank_table(rows);
      if (!rank_csv.empty()) {
        write_file(rank_csv, [&](std::ostream& out) {
          out << kAggregateCsvHeader << '\n';
          for (const auto& [key, agg] : aggregate_by_point(rows)) out << format_aggregate_row(agg) << '\n';
        });
      }
    }
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
