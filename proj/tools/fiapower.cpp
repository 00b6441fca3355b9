#include <cstdio>
#include <exception>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "fiapower/experiments.hpp"

int main(int argc, char** argv) {
  CLI::App app{"fiapower: data-plane power models and content-delivery simulations"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  int64_t seed = -1;
  int jobs = 0;
  bool svg = false;
  bool print_config = false;

  const std::vector<std::string> experiments = {"fig3",        "fig6",       "fig8",
                                                "fig9",        "sweep_budget", "sweep_zipf",
                                                "sweep_discovery"};
  for (const auto& name : experiments) {
    auto* sub = app.add_subcommand(name, "run the " + name + " experiment");
    sub->add_option("--config", config_path, "key = value config file");
    sub->add_option("--seed", seed, "override the config seed");
    sub->add_option("--out", out_dir, "output directory");
    sub->add_option("--jobs", jobs, "parallel simulation workers");
    sub->add_flag("--svg", svg, "also draw svg charts");
    sub->add_flag("--print-config", print_config, "print the effective config and exit");
  }

  CLI11_PARSE(app, argc, argv);

  try {
    fiapower::ExperimentConfig cfg;
    if (!config_path.empty())
      cfg = fiapower::ExperimentConfig::from(fiapower::KeyValueConfig::parse_file(config_path));
    if (seed >= 0) cfg.seed = static_cast<uint64_t>(seed);
    if (!out_dir.empty()) cfg.out_dir = out_dir;
    if (jobs > 0) cfg.jobs = jobs;
    if (svg) cfg.svg = true;

    const std::string name = app.get_subcommands().front()->get_name();
    if (print_config) {
      std::cout << cfg.canonical_dump();
      return 0;
    }
    auto files = fiapower::run_and_write(name, cfg);
    for (const auto& f : files) std::cout << f << "\n";
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
