// Command-line entry point: run experiments, print benchmark strategy
// tables, analyze transcripts, and replay recorded runs.
//
// Exit codes: 0 success, 1 validation/usage error, 2 aborted experiment
// (partial transcript retained). Errors go to stderr as one JSON object.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <thread>

#include <CLI11.hpp>

#include "auctionlab/oracles.hpp"
#include "auctionlab/report.hpp"
#include "auctionlab/runner.hpp"

namespace fs = std::filesystem;
using namespace auctionlab;

namespace {

void print_error(const std::string& kind, const std::string& message) {
  nlohmann::json e{{"error", kind}, {"message", message}};
  std::cerr << e.dump() << "\n";
}

std::vector<nlohmann::json> load_experiment_list(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file " + path);
  nlohmann::json j = nlohmann::json::parse(in);
  if (j.is_array()) return {j.begin(), j.end()};
  if (j.is_object() && j.contains("experiments")) {
    const auto& arr = j.at("experiments");
    if (!arr.is_array()) throw std::runtime_error("'experiments' must be an array");
    return {arr.begin(), arr.end()};
  }
  return {j};
}

GatewayMode parse_mode(const std::string& s) {
  if (s == "live") return GatewayMode::Live;
  if (s == "record") return GatewayMode::Record;
  if (s == "replay") return GatewayMode::Replay;
  throw std::runtime_error("mode must be live, record, or replay");
}

bool needs_gateway(const ExperimentConfig& cfg) {
  for (const auto& a : cfg.agent_specs)
    if (a.kind == AgentSpec::Kind::LLM) return true;
  return false;
}

int cmd_run(const std::string& config_path, const std::string& mode_str, int jobs,
            std::optional<std::uint64_t> seed_override, const std::string& out_dir,
            std::optional<double> budget, double price_prompt, double price_completion) {
  const GatewayMode mode = parse_mode(mode_str);
  std::vector<ExperimentConfig> configs;
  auto raw = load_experiment_list(config_path);
  for (std::size_t i = 0; i < raw.size(); ++i) {
    auto vr = config_from_json(raw[i]);
    if (!vr.ok()) {
      std::string msg = "experiment " + std::to_string(i) + ":";
      for (const auto& e : vr.errors) msg += " " + e + ";";
      print_error("validation", msg);
      return 1;
    }
    if (seed_override) vr.config->rng_seed = *seed_override + i;
    configs.push_back(*vr.config);
  }

  fs::create_directories(out_dir);
  std::mutex mu;
  bool any_aborted = false;

  auto run_one = [&](std::size_t i) {
    const ExperimentConfig& cfg = configs[i];
    char id[32];
    std::snprintf(id, sizeof(id), "exp%03zu", i);
    const std::string transcript_path = (fs::path(out_dir) / (std::string(id) + ".jsonl")).string();
    const std::string cache_path =
        (fs::path(out_dir) / (std::string(id) + ".cache.jsonl")).string();

    std::unique_ptr<Gateway> gateway;
    if (needs_gateway(cfg)) {
      GatewayOptions go;
      go.mode = mode;
      go.cache_path = cache_path;
      go.pricing = {price_prompt, price_completion};
      if (mode == GatewayMode::Replay) go.api_key = "replay";  // never used on the wire
      gateway = std::make_unique<Gateway>(std::move(go));
    }

    RunOptions opt;
    opt.gateway = gateway.get();
    opt.budget = budget;
    opt.experiment_id = id;
    opt.out_path = transcript_path;
    Transcript t = run_experiment(cfg, opt);
    std::lock_guard<std::mutex> lk(mu);
    if (t.aborted) {
      any_aborted = true;
      print_error("aborted", std::string(id) + ": " + t.abort_reason.value_or("unknown"));
    } else {
      std::cout << id << " ok: " << t.rounds.size() << " rounds -> " << transcript_path << "\n";
    }
  };

  if (jobs <= 1 || configs.size() <= 1) {
    for (std::size_t i = 0; i < configs.size(); ++i) run_one(i);
  } else {
    std::vector<std::thread> pool;
    std::size_t next = 0;
    std::mutex qmu;
    for (int w = 0; w < jobs; ++w) {
      pool.emplace_back([&]() {
        for (;;) {
          std::size_t i;
          {
            std::lock_guard<std::mutex> lk(qmu);
            if (next >= configs.size()) return;
            i = next++;
          }
          run_one(i);
        }
      });
    }
    for (auto& th : pool) th.join();
  }
  return any_aborted ? 2 : 0;
}

int cmd_oracle(const std::string& family_str, int n, std::int64_t high,
               const std::string& out_path) {
  const auto family = family_from_string(family_str);
  if (!family) {
    print_error("validation", "unknown family " + family_str);
    return 1;
  }
  std::ostringstream os;
  os << "value,bid\n";
  for (std::int64_t v = 0; v <= high; ++v) {
    const double b = rn_equilibrium_bid(*family, static_cast<double>(v), n,
                                        static_cast<double>(high));
    os.precision(12);
    os << v << "," << b << "\n";
  }
  if (out_path.empty() || out_path == "-") {
    std::cout << os.str();
  } else {
    std::ofstream out(out_path);
    if (!out) {
      print_error("io", "cannot write " + out_path);
      return 1;
    }
    out << os.str();
  }
  return 0;
}

int cmd_analyze(const std::vector<std::string>& transcript_paths,
                const std::string& report_dir) {
  std::vector<Transcript> transcripts;
  for (const auto& p : transcript_paths) transcripts.push_back(read_transcript(p));
  if (transcripts.empty()) {
    print_error("validation", "no transcripts given");
    return 1;
  }
  write_analysis_report(transcripts, report_dir);
  std::cout << "report written to " << report_dir << "\n";
  return 0;
}

int cmd_replay(const std::string& transcript_path, const std::string& report_dir) {
  Transcript recorded = read_transcript(transcript_path);
  const fs::path tpath(transcript_path);
  fs::path cache = tpath;
  cache.replace_extension("");
  cache += ".cache.jsonl";
  if (recorded.cache_reference) cache = tpath.parent_path() / *recorded.cache_reference;

  std::unique_ptr<Gateway> gateway;
  if (needs_gateway(recorded.config)) {
    if (!fs::exists(cache)) {
      print_error("validation", "no completion cache at " + cache.string());
      return 1;
    }
    GatewayOptions go;
    go.mode = GatewayMode::Replay;
    go.cache_path = cache.string();
    go.api_key = "replay";
    gateway = std::make_unique<Gateway>(std::move(go));
  }

  RunOptions opt;
  opt.gateway = gateway.get();
  opt.experiment_id = recorded.experiment_id;
  opt.out_path = (tpath.parent_path() / (tpath.stem().string() + ".replayed.jsonl")).string();
  Transcript replayed = run_experiment(recorded.config, opt);
  if (replayed.aborted) {
    print_error("aborted", replayed.abort_reason.value_or("unknown"));
    return 2;
  }
  write_analysis_report({replayed}, report_dir);
  std::cout << "replayed " << replayed.rounds.size() << " rounds; report in " << report_dir
            << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Auction experiment toolkit"};
  app.require_subcommand(1);

  // run
  std::string run_config, run_mode = "replay", run_out = "out";
  int run_jobs = 1;
  std::optional<std::uint64_t> run_seed;
  std::optional<double> run_budget;
  double price_prompt = 0.0, price_completion = 0.0;
  auto* run = app.add_subcommand("run", "Run one or more experiments from a config file");
  run->add_option("--config", run_config, "Experiment config JSON (object or array)")->required();
  run->add_option("--mode", run_mode, "Gateway mode: live, record, or replay");
  run->add_option("--jobs", run_jobs, "Parallel experiments");
  run->add_option("--seed", run_seed, "Root seed override (batch index added per experiment)");
  run->add_option("--out", run_out, "Output directory for transcripts and caches");
  run->add_option("--budget", run_budget, "Dollar budget per experiment");
  run->add_option("--price-prompt", price_prompt, "Dollars per prompt token");
  run->add_option("--price-completion", price_completion, "Dollars per completion token");

  // oracle
  std::string oracle_family, oracle_out;
  int oracle_n = 3;
  std::int64_t oracle_high = 99;
  auto* oracle = app.add_subcommand("oracle", "Print the benchmark strategy table as CSV");
  oracle->add_option("--family", oracle_family, "fpsb, spsb, tpsb, or all_pay")->required();
  oracle->add_option("--n", oracle_n, "Number of bidders");
  oracle->add_option("--high", oracle_high, "Top of the value grid");
  oracle->add_option("--out", oracle_out, "Output file (default stdout)");

  // analyze
  std::vector<std::string> analyze_paths;
  std::string analyze_report = "report";
  auto* analyze = app.add_subcommand("analyze", "Compute all statistics over transcripts");
  analyze->add_option("transcripts", analyze_paths, "Transcript JSONL files")->required();
  analyze->add_option("--report-dir", analyze_report, "Report output directory");

  // replay
  std::string replay_path, replay_report = "report";
  auto* replay = app.add_subcommand("replay", "Re-run a recorded experiment from its cache");
  replay->add_option("--transcript", replay_path, "Recorded transcript")->required();
  replay->add_option("--report-dir", replay_report, "Report output directory");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed())
      return cmd_run(run_config, run_mode, run_jobs, run_seed, run_out, run_budget, price_prompt,
                     price_completion);
    if (oracle->parsed()) return cmd_oracle(oracle_family, oracle_n, oracle_high, oracle_out);
    if (analyze->parsed()) return cmd_analyze(analyze_paths, analyze_report);
    if (replay->parsed()) return cmd_replay(replay_path, replay_report);
  } catch (const GatewayError& e) {
    print_error("gateway", e.what());
    return 2;
  } catch (const std::exception& e) {
    print_error("error", e.what());
    return 1;
  }
  return 1;
}
