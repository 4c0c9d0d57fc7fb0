#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "sea/evolution.hpp"
#include "sea/hamiltonian.hpp"
#include "sea/thermo.hpp"

namespace sea {

struct OutputConfig {
  std::string path = "trajectory.csv";
  int stride = 1;
};

/// Full experiment description. The initial state is assembled as
/// rho(0) = (1 - lambda) |psi0><psi0| + (lambda / dim) I.
struct ScenarioConfig {
  HamiltonianModel::Params model = StaticTssParams{};
  Vector psi0;
  double lambda = 0.0;
  double gamma = 0.0;
  std::pair<double, double> t_span{0.0, 1.0};
  IntegratorConfig integrator;
  OutputConfig output;
  bool compare_unitary = false;
  /// Optional early stop once |rho01| in the eigenbasis falls below this.
  std::optional<double> stop_coherence_below;

  Matrix initial_state() const;
};

/// Named figure-reproduction presets.
std::vector<std::string> preset_names();
ScenarioConfig preset(const std::string& name);

/// Parse a JSON config document. Unknown keys are errors.
/// Throws std::invalid_argument with field-level diagnostics.
ScenarioConfig parse_config(const std::string& text);
ScenarioConfig parse_config_json(const nlohmann::json& doc);
nlohmann::json serialize_config(const ScenarioConfig& cfg);

/// Fixed CSV header; 17 significant digits, '\n' newlines.
extern const char* kCsvHeader;
void write_csv(const std::filesystem::path& path,
               const std::vector<ObservableRow>& rows);

struct ScenarioResult {
  TrajectoryRecord trajectory;
  MonitorReport monitor;
  std::vector<ObservableRow> rows;
  std::optional<double> beta_eff;            // static H only
  std::optional<double> coherence_threshold_time;  // first t with |rho01| < 1e-3
  std::vector<std::string> files_written;
};

/// Run one scenario and emit its CSV plus a JSON metadata companion.
/// With compare_unitary, also a gamma = 0 CSV and a fidelity-deviation CSV.
ScenarioResult run_scenario(const ScenarioConfig& cfg);

struct SweepEntry {
  double value = 0.0;
  double t_final = 0.0;
  std::optional<double> threshold_time;
  ObservableRow final_row;
};

/// One run per value of the addressed numeric parameter (dot path into the
/// config document, e.g. "gamma" or "model.frequency"). Runs are independent;
/// the summary is assembled in value order.
std::vector<SweepEntry> run_sweep(const ScenarioConfig& base_cfg,
                                  const std::string& param_path,
                                  const std::vector<double>& values);
void write_sweep_summary(const std::filesystem::path& path,
                         const std::string& param_path,
                         const std::vector<SweepEntry>& entries);

/// Stationarity/conservation verification suite. Returns a list of failed
/// check descriptions (empty on success). Deterministic seed.
std::vector<std::string> verify_suite();

}  // namespace sea
