#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "prar/cli.hpp"

namespace {

// Opens `path` for writing, or returns stdout for "-".
class Output {
 public:
  explicit Output(const std::string& path) {
    if (path != "-") {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw std::runtime_error("cannot open '" + path + "' for writing");
    }
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Perfect simulation by partially recursive acceptance rejection"};
  app.require_subcommand(1);
  app.set_config("--config", "", "key=value configuration file; flags win on conflict");

  std::string model_text = "hardcore:lambda=1";
  std::string method_text = "prar";
  prar::RunConfig cfg;
  app.add_option("--model", model_text, "Model spec, e.g. hardcore:lambda=1 or cluster:p=0.25,q=2")
      ->capture_default_str();
  app.add_option("--graph", cfg.graph, "grid:RxC, cycle:N, path:N, complete:N or file:PATH")->capture_default_str();
  app.add_option("--seed", cfg.seed, "Root seed")->capture_default_str();
  app.add_option("--samples", cfg.samples, "Number of samples N")->check(CLI::PositiveNumber)->capture_default_str();
  app.add_option("--out", cfg.out, "Output path, - for stdout")->capture_default_str();
  app.add_option("--budget", cfg.budget, "Primitive draw budget per sample")->capture_default_str();
  app.add_option("--method", method_text, "auto, prar, backbone or ar")->capture_default_str();
  app.add_option("--target", cfg.targets, "Target dimensions (default: all)");

  auto* sample = app.add_subcommand("sample", "Draw samples; metadata goes to <out>.meta or stderr");
  sample->fallthrough();

  auto* check = app.add_subcommand("check", "Compare the sampler against an exact oracle");
  check->fallthrough();
  prar::CheckThresholds thresholds;
  std::string oracle_out;
  check->add_option("--tv-max", thresholds.tv_max, "Largest passing total variation")->capture_default_str();
  check->add_option("--p-min", thresholds.p_min, "Smallest passing chi-square p-value")->capture_default_str();
  check->add_option("--oracle-out", oracle_out, "Write the oracle distribution here");
  check->add_flag("--inject-fault", cfg.inject_fault, "Skip every rejection (mutation test)")->group("");

  auto* threshold = app.add_subcommand("threshold", "Subcriticality report");
  threshold->fallthrough();
  std::size_t delta = 0;
  threshold->add_option("--delta", delta, "Maximum degree (default: from --graph)");

  auto* bench = app.add_subcommand("bench", "Draws per dimension across graph sizes (CSV)");
  bench->fallthrough();
  prar::BenchConfig bcfg;
  bench->add_option("--family", bcfg.family, "cycle, path, complete or grid")->capture_default_str();
  bench->add_option("--sizes", bcfg.sizes, "Strictly increasing graph sizes")->required()->delimiter(',');
  bench->add_option("--reps", bcfg.replications, "Replications per size")->capture_default_str();
  bench->add_option("--threads", bcfg.threads, "Worker threads")->capture_default_str();

  auto* trees = app.add_subcommand("trees", "Uniform rooted spanning trees by Wilson's algorithm");
  trees->fallthrough();
  prar::Node root = 0;
  trees->add_option("--root", root, "Root node")->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    cfg.model = prar::parse_model_spec(model_text);
    cfg.method = prar::parse_method(method_text);

    if (*sample || *trees) {
      if (*trees) cfg.model = prar::WilsonParams{root};
      Output out(cfg.out);
      if (cfg.out == "-") return prar::cmd_sample(cfg, out.stream(), std::cerr);
      std::ofstream meta(cfg.out + ".meta");
      return prar::cmd_sample(cfg, out.stream(), meta);
    }
    if (*check) {
      std::unique_ptr<std::ofstream> dump;
      if (!oracle_out.empty()) dump = std::make_unique<std::ofstream>(oracle_out);
      const prar::CheckReport report = prar::cmd_check(cfg, thresholds, dump.get());
      Output out(cfg.out);
      prar::render_check(out.stream(), report);
      return report.pass ? 0 : 1;
    }
    if (*threshold) {
      prar::ThresholdReport report = delta > 0 ? prar::subcritical_check(cfg.model, delta)
                                               : prar::subcritical_check(cfg.model, prar::parse_graph_spec(cfg.graph));
      Output out(cfg.out);
      prar::render_threshold(out.stream(), cfg.model, report);
      return 0;
    }
    if (*bench) {
      bcfg.model = cfg.model;
      bcfg.seed = cfg.seed;
      bcfg.budget = cfg.budget;
      bcfg.method = app.get_option("--method")->count() > 0 ? cfg.method : prar::Method::automatic;
      const prar::BenchReport report = prar::cmd_bench(bcfg);
      for (std::size_t i = 0; i < report.records.size(); ++i) {
        if (!report.thresholds[i].subcritical) {
          std::cerr << "warning: parameters are not subcritical at n=" << report.records[i].n << '\n';
        }
      }
      Output out(cfg.out);
      prar::write_bench_csv(out.stream(), report);
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
