// afcsim: run, sweep or validate an AFC memory experiment config.

#include <CLI11.hpp>

#include <iostream>

#include "afc/app/experiments.hpp"
#include "afc/app/runner.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Atomic frequency comb memory simulator"};
  app.require_subcommand(1);

  std::string config;
  auto* run = app.add_subcommand("run", "Run the experiment described by a config file");
  run->add_option("config", config, "Config file")->required();

  std::string param;
  std::string values;
  auto* sweep = app.add_subcommand("sweep", "Run the experiment once per value of one numeric key");
  sweep->add_option("config", config, "Config file")->required();
  sweep->add_option("--param", param, "Dotted config key, e.g. burn.pair_separation_s")->required();
  sweep->add_option("--values", values, "Comma-separated values in the key's SI unit")->required();

  auto* validate = app.add_subcommand("validate", "Parse and check a config without running it");
  validate->add_option("config", config, "Config file")->required();

  std::string experiments;
  for (const auto& name : afc::app::experiment_names()) experiments += (experiments.empty() ? "" : ", ") + name;
  app.footer("Experiments: " + experiments + "\nOutput root override: $" + afc::app::kOutputRootEnv);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : afc::app::kConfigError;
  }

  if (*run) return afc::app::run_command(config, std::cout, std::cerr);
  if (*sweep) return afc::app::sweep_command(config, param, values, std::cout, std::cerr);
  return afc::app::validate_command(config, std::cout, std::cerr);
}
