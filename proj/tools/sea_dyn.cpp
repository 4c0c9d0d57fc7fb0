// sea-dyn: steepest-entropy-ascent trajectory runner.
//   run    — integrate one scenario (config file or preset) and write CSV
//   sweep  — repeat a scenario across values of one numeric parameter
//   verify — stationarity/conservation self-checks

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "sea/scenario.hpp"

namespace {

constexpr int kExitConfigError = 2;
constexpr int kExitIntegrationAbort = 3;
constexpr int kExitVerifyFailure = 4;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot read config file " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Steepest-entropy-ascent density-matrix dynamics"};
  app.require_subcommand(1);

  std::string config_path, preset_name, out_path, param_path, values_arg;
  double gamma_override = -1.0, lambda_override = -1.0, dt_override = -1.0,
         t_final_override = 0.0;
  bool has_t_final = false, compare_unitary = false;
  int stride_override = 0;

  auto add_overrides = [&](CLI::App* cmd) {
    cmd->add_option("--config", config_path, "JSON scenario config");
    cmd->add_option("--preset", preset_name, "named figure preset");
    cmd->add_option("--gamma", gamma_override, "override gamma");
    cmd->add_option("--lambda", lambda_override, "override lambda");
    cmd->add_option("--dt", dt_override, "override integrator dt");
    cmd->add_option("--t-final", t_final_override, "override end time")
        ->each([&](const std::string&) { has_t_final = true; });
    cmd->add_option("--out", out_path, "output CSV path");
    cmd->add_option("--stride", stride_override, "output stride");
  };

  CLI::App* run = app.add_subcommand("run", "integrate one scenario");
  add_overrides(run);
  run->add_flag("--compare-unitary", compare_unitary, "also run the gamma=0 reference");

  CLI::App* sweep = app.add_subcommand("sweep", "sweep one numeric parameter");
  add_overrides(sweep);
  sweep->add_option("--param", param_path, "dot path of the parameter")->required();
  sweep->add_option("--values", values_arg, "comma-separated values")->required();

  CLI::App* verify = app.add_subcommand("verify", "run the invariant suite");
  (void)verify;

  CLI11_PARSE(app, argc, argv);

  auto load_config = [&]() {
    if (config_path.empty() == preset_name.empty())
      throw std::invalid_argument("exactly one of --config or --preset is required");
    sea::ScenarioConfig cfg = preset_name.empty()
                                  ? sea::parse_config(read_file(config_path))
                                  : sea::preset(preset_name);
    if (gamma_override >= 0.0) cfg.gamma = gamma_override;
    if (lambda_override >= 0.0) cfg.lambda = lambda_override;
    if (dt_override > 0.0) cfg.integrator.dt = dt_override;
    if (has_t_final) cfg.t_span.second = t_final_override;
    if (!out_path.empty()) cfg.output.path = out_path;
    if (stride_override > 0) cfg.output.stride = stride_override;
    if (compare_unitary) cfg.compare_unitary = true;
    return cfg;
  };

  try {
    if (run->parsed()) {
      sea::ScenarioConfig cfg;
      try {
        cfg = load_config();
      } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfigError;
      }
      try {
        const sea::ScenarioResult res = sea::run_scenario(cfg);
        for (const std::string& f : res.files_written) std::cout << "wrote " << f << "\n";
        if (res.beta_eff) std::cout << "beta_eff = " << *res.beta_eff << "\n";
      } catch (const std::runtime_error& e) {
        std::cerr << "integration aborted: " << e.what() << "\n";
        return kExitIntegrationAbort;
      }
      return 0;
    }

    if (sweep->parsed()) {
      sea::ScenarioConfig cfg;
      std::vector<double> values;
      try {
        cfg = load_config();
        std::stringstream ss(values_arg);
        std::string token;
        while (std::getline(ss, token, ','))
          if (!token.empty()) values.push_back(std::stod(token));
      } catch (const std::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfigError;
      }
      try {
        const auto entries = sea::run_sweep(cfg, param_path, values);
        std::filesystem::path summary(cfg.output.path);
        summary.replace_filename(summary.stem().string() + "_sweep.csv");
        sea::write_sweep_summary(summary, param_path, entries);
        std::cout << "wrote " << summary.string() << "\n";
      } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfigError;
      } catch (const std::runtime_error& e) {
        std::cerr << "integration aborted: " << e.what() << "\n";
        return kExitIntegrationAbort;
      }
      return 0;
    }

    // verify
    const std::vector<std::string> failures = sea::verify_suite();
    if (failures.empty()) {
      std::cout << "all invariants hold\n";
      return 0;
    }
    for (const std::string& f : failures) std::cerr << "FAIL: " << f << "\n";
    return kExitVerifyFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
