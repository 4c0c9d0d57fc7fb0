#include "sea/scenario.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <future>
#include <numbers>
#include <random>
#include <sstream>

namespace sea {

namespace {

using nlohmann::json;

[[noreturn]] void config_error(const std::string& field, const std::string& what) {
  throw std::invalid_argument("config field '" + field + "': " + what);
}

void check_keys(const json& obj, const std::string& where,
                std::initializer_list<const char*> allowed) {
  for (const auto& [key, value] : obj.items()) {
    bool ok = false;
    for (const char* a : allowed)
      if (key == a) { ok = true; break; }
    if (!ok) config_error(where.empty() ? key : where + "." + key, "unknown key");
  }
}

Vector parse_psi0(const json& arr) {
  if (!arr.is_array() || arr.empty()) config_error("psi0", "expected array of [re, im] pairs");
  Vector v(arr.size());
  for (std::size_t k = 0; k < arr.size(); ++k) {
    const json& entry = arr[k];
    if (!entry.is_array() || entry.size() != 2)
      config_error("psi0", "each amplitude must be a [re, im] pair");
    v(static_cast<Eigen::Index>(k)) = Complex(entry[0].get<double>(), entry[1].get<double>());
  }
  const double norm = v.norm();
  if (std::abs(norm - 1.0) > 1e-6) {
    std::ostringstream os;
    os << "norm is " << norm << ", must be 1 within 1e-6";
    config_error("psi0", os.str());
  }
  v /= norm;
  return v;
}

json serialize_psi0(const Vector& v) {
  json arr = json::array();
  for (Eigen::Index k = 0; k < v.size(); ++k)
    arr.push_back({v(k).real(), v(k).imag()});
  return arr;
}

HamiltonianModel::Params parse_model(const json& m) {
  if (!m.is_object()) config_error("model", "expected object");
  const std::string kind = m.value("kind", "");
  if (kind == "static_tss") {
    check_keys(m, "model", {"kind", "epsilon"});
    StaticTssParams p;
    p.epsilon = m.at("epsilon").get<double>();
    return p;
  }
  if (kind == "rotating_field") {
    check_keys(m, "model", {"kind", "coupling", "frequency"});
    RotatingFieldParams p;
    p.coupling = m.at("coupling").get<double>();
    p.frequency = m.at("frequency").get<double>();
    return p;
  }
  if (kind == "landau_zener") {
    check_keys(m, "model", {"kind", "sweep_rate", "gap", "half_window"});
    LandauZenerParams p;
    p.sweep_rate = m.at("sweep_rate").get<double>();
    p.gap = m.at("gap").get<double>();
    p.half_window = m.at("half_window").get<double>();
    return p;
  }
  if (kind == "custom_table") {
    check_keys(m, "model", {"kind", "times", "matrices"});
    CustomTableParams p;
    p.times = m.at("times").get<std::vector<double>>();
    for (const json& mat : m.at("matrices")) {
      const auto n = mat.size();
      Matrix h(n, n);
      for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c)
          h(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
              Complex(mat[r][c][0].get<double>(), mat[r][c][1].get<double>());
      p.matrices.push_back(std::move(h));
    }
    return p;
  }
  config_error("model.kind", "unknown kind '" + kind + "'");
}

json serialize_model(const HamiltonianModel::Params& params) {
  return std::visit(
      [](const auto& p) -> json {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, StaticTssParams>) {
          return {{"kind", "static_tss"}, {"epsilon", p.epsilon}};
        } else if constexpr (std::is_same_v<T, RotatingFieldParams>) {
          return {{"kind", "rotating_field"}, {"coupling", p.coupling},
                  {"frequency", p.frequency}};
        } else if constexpr (std::is_same_v<T, LandauZenerParams>) {
          return {{"kind", "landau_zener"}, {"sweep_rate", p.sweep_rate},
                  {"gap", p.gap}, {"half_window", p.half_window}};
        } else {
          json mats = json::array();
          for (const Matrix& h : p.matrices) {
            json mat = json::array();
            for (Eigen::Index r = 0; r < h.rows(); ++r) {
              json row = json::array();
              for (Eigen::Index c = 0; c < h.cols(); ++c)
                row.push_back({h(r, c).real(), h(r, c).imag()});
              mat.push_back(row);
            }
            mats.push_back(mat);
          }
          return {{"kind", "custom_table"}, {"times", p.times}, {"matrices", mats}};
        }
      },
      params);
}

IntegratorConfig parse_integrator(const json& obj) {
  check_keys(obj, "integrator",
             {"method", "dt", "rel_tol", "abs_tol", "max_dt", "min_dt", "resym_every"});
  IntegratorConfig cfg;
  const std::string method = obj.value("method", "rk45_adaptive");
  if (method == "rk4_fixed") cfg.method = Method::rk4_fixed;
  else if (method == "rk45_adaptive") cfg.method = Method::rk45_adaptive;
  else config_error("integrator.method", "unknown method '" + method + "'");
  cfg.dt = obj.value("dt", cfg.dt);
  cfg.rel_tol = obj.value("rel_tol", cfg.rel_tol);
  cfg.abs_tol = obj.value("abs_tol", cfg.abs_tol);
  cfg.max_dt = obj.value("max_dt", cfg.max_dt);
  cfg.min_dt = obj.value("min_dt", cfg.min_dt);
  cfg.resym_every = obj.value("resym_every", cfg.resym_every);
  if (cfg.dt <= 0.0) config_error("integrator.dt", "must be > 0");
  if (cfg.min_dt > cfg.max_dt) config_error("integrator.min_dt", "exceeds max_dt");
  if (cfg.rel_tol <= 0.0 || cfg.abs_tol <= 0.0)
    config_error("integrator.rel_tol", "tolerances must be > 0");
  return cfg;
}

json serialize_integrator(const IntegratorConfig& cfg) {
  return {{"method", cfg.method == Method::rk4_fixed ? "rk4_fixed" : "rk45_adaptive"},
          {"dt", cfg.dt},
          {"rel_tol", cfg.rel_tol},
          {"abs_tol", cfg.abs_tol},
          {"max_dt", cfg.max_dt},
          {"min_dt", cfg.min_dt},
          {"resym_every", cfg.resym_every}};
}

std::string format17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

Matrix ScenarioConfig::initial_state() const {
  const HamiltonianModel model(this->model);
  const Eigen::Index dim = model.dim();
  if (psi0.size() != dim)
    throw std::invalid_argument("psi0 dimension does not match the model");
  Matrix rho = (1.0 - lambda) * (psi0 * psi0.adjoint());
  rho += (lambda / static_cast<double>(dim)) * Matrix::Identity(dim, dim);
  return rho;
}

ScenarioConfig parse_config_json(const json& doc) {
  check_keys(doc, "",
             {"model", "psi0", "lambda", "gamma", "t_span", "integrator", "output",
              "compare_unitary", "stop_coherence_below"});
  ScenarioConfig cfg;
  if (!doc.contains("model")) config_error("model", "missing required field");
  cfg.model = parse_model(doc.at("model"));
  if (!doc.contains("psi0")) config_error("psi0", "missing required field");
  cfg.psi0 = parse_psi0(doc.at("psi0"));
  cfg.lambda = doc.value("lambda", 0.0);
  if (cfg.lambda < 0.0 || cfg.lambda >= 1.0) config_error("lambda", "must be in [0, 1)");
  cfg.gamma = doc.value("gamma", 0.0);
  if (cfg.gamma < 0.0) config_error("gamma", "must be >= 0");
  if (!doc.contains("t_span")) config_error("t_span", "missing required field");
  const json& span = doc.at("t_span");
  if (!span.is_array() || span.size() != 2) config_error("t_span", "expected [t0, t1]");
  cfg.t_span = {span[0].get<double>(), span[1].get<double>()};
  if (cfg.t_span.second <= cfg.t_span.first) config_error("t_span", "t1 must exceed t0");
  if (doc.contains("integrator")) cfg.integrator = parse_integrator(doc.at("integrator"));
  if (doc.contains("output")) {
    const json& out = doc.at("output");
    check_keys(out, "output", {"path", "stride"});
    cfg.output.path = out.value("path", cfg.output.path);
    cfg.output.stride = out.value("stride", cfg.output.stride);
    if (cfg.output.stride < 1) config_error("output.stride", "must be >= 1");
  }
  cfg.compare_unitary = doc.value("compare_unitary", false);
  if (doc.contains("stop_coherence_below")) {
    const double v = doc.at("stop_coherence_below").get<double>();
    if (v <= 0.0) config_error("stop_coherence_below", "must be > 0");
    cfg.stop_coherence_below = v;
  }
  return cfg;
}

ScenarioConfig parse_config(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("config: malformed JSON: ") + e.what());
  }
  return parse_config_json(doc);
}

json serialize_config(const ScenarioConfig& cfg) {
  json doc;
  doc["model"] = serialize_model(cfg.model);
  doc["psi0"] = serialize_psi0(cfg.psi0);
  doc["lambda"] = cfg.lambda;
  doc["gamma"] = cfg.gamma;
  doc["t_span"] = {cfg.t_span.first, cfg.t_span.second};
  doc["integrator"] = serialize_integrator(cfg.integrator);
  doc["output"] = {{"path", cfg.output.path}, {"stride", cfg.output.stride}};
  doc["compare_unitary"] = cfg.compare_unitary;
  if (cfg.stop_coherence_below) doc["stop_coherence_below"] = *cfg.stop_coherence_below;
  return doc;
}

namespace {

Vector tss_plus_state() {
  Vector v(2);
  v << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
  return v;
}

ScenarioConfig fig1_base() {
  ScenarioConfig cfg;
  cfg.model = StaticTssParams{1.0};
  cfg.psi0 = Vector(2);
  cfg.psi0 << std::sqrt(0.7), std::sqrt(0.3);
  cfg.lambda = 1e-4;
  cfg.gamma = 0.25;
  cfg.t_span = {0.0, 1e4};
  cfg.stop_coherence_below = 1e-3;
  cfg.output.stride = 10;
  return cfg;
}

ScenarioConfig rotating_base(double freq_over_coupling) {
  ScenarioConfig cfg;
  cfg.model = RotatingFieldParams{1.0, freq_over_coupling};
  cfg.psi0 = tss_plus_state();  // |+(0)>
  cfg.lambda = 1e-2;
  cfg.gamma = 0.5;
  cfg.t_span = {0.0, 2.0 * std::numbers::pi / freq_over_coupling};
  cfg.compare_unitary = true;
  cfg.output.stride = 10;
  return cfg;
}

}  // namespace

std::vector<std::string> preset_names() {
  return {"fig1a_g025", "fig1a_g05", "fig1a_g25", "fig1c_l2", "fig1c_l4",
          "fig1c_l6",  "fig2a",     "fig2b",     "fig3a",    "fig3b",
          "fig4"};
}

ScenarioConfig preset(const std::string& name) {
  if (name == "fig1a_g025") return fig1_base();
  if (name == "fig1a_g05") { auto c = fig1_base(); c.gamma = 0.5; return c; }
  if (name == "fig1a_g25") { auto c = fig1_base(); c.gamma = 2.5; return c; }
  if (name == "fig1c_l2") { auto c = fig1_base(); c.lambda = 1e-2; return c; }
  if (name == "fig1c_l4") return fig1_base();
  if (name == "fig1c_l6") { auto c = fig1_base(); c.lambda = 1e-6; return c; }
  if (name == "fig2a") return rotating_base(2.0 * std::numbers::pi / 100.0);
  if (name == "fig2b") return rotating_base(2.0 * std::numbers::pi / 1000.0);
  if (name == "fig3a") return rotating_base(2.0 * std::numbers::pi / 10.0);
  if (name == "fig3b") {
    auto c = rotating_base(2.0 * std::numbers::pi / 100.0);
    c.psi0 = Vector(2);
    c.psi0 << 1.0, 0.0;  // bare |1>, far from any H(0) eigenstate
    return c;
  }
  if (name == "fig4") {
    ScenarioConfig cfg;
    cfg.model = LandauZenerParams{0.1, 1.0, 500.0};
    cfg.psi0 = Vector(2);
    cfg.psi0 << 0.0, 1.0;  // bare |0>
    cfg.lambda = 1e-2;
    cfg.gamma = 1.0;
    cfg.t_span = {-500.0, 500.0};
    cfg.compare_unitary = true;
    cfg.output.stride = 20;
    return cfg;
  }
  throw std::invalid_argument("unknown preset '" + name + "'");
}

const char* kCsvHeader =
    "t,p1,p0,re_rho01,im_rho01,abs_rho01,entropy,energy,fidelity,sigma_x,trace,"
    "min_eig,adiab_metric";

void write_csv(const std::filesystem::path& path,
               const std::vector<ObservableRow>& rows) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open output file " + path.string());
  out << kCsvHeader << "\n";
  for (const ObservableRow& r : rows) {
    out << format17(r.t) << ',' << format17(r.p1) << ',' << format17(r.p0) << ','
        << format17(r.re_rho01) << ',' << format17(r.im_rho01) << ','
        << format17(r.abs_rho01) << ',' << format17(r.entropy) << ','
        << format17(r.energy) << ',' << format17(r.fidelity) << ','
        << format17(r.sigma_x) << ',' << format17(r.trace) << ','
        << format17(r.min_eig) << ',' << format17(r.adiab_metric) << "\n";
  }
}

namespace {

std::vector<ObservableRow> rows_for(const TrajectoryRecord& rec,
                                    const HamiltonianModel& model,
                                    const Vector& psi0) {
  std::vector<ObservableRow> rows;
  rows.reserve(rec.times.size());
  for (std::size_t k = 0; k < rec.times.size(); ++k)
    rows.push_back(observables(rec.states[k], model, rec.times[k], psi0));
  return rows;
}

double coherence_in_eigenbasis(const Matrix& rho, const HamiltonianModel& model,
                               double t) {
  const EigenSystem basis = model.instantaneous_eigensystem(t);
  const Vector lo = basis.vectors.col(0);
  const Vector hi = basis.vectors.col(basis.vectors.cols() - 1);
  return std::abs((lo.adjoint() * rho * hi)(0));
}

double interpolate(const std::vector<double>& xs, const std::vector<double>& ys,
                   double x) {
  if (x <= xs.front()) return ys.front();
  if (x >= xs.back()) return ys.back();
  const auto it = std::upper_bound(xs.begin(), xs.end(), x);
  const std::size_t hi = static_cast<std::size_t>(it - xs.begin());
  const std::size_t lo = hi - 1;
  const double f = (x - xs[lo]) / (xs[hi] - xs[lo]);
  return (1.0 - f) * ys[lo] + f * ys[hi];
}

json monitor_to_json(const MonitorReport& m) {
  return {{"trace_drift", m.trace_drift},
          {"energy_drift", m.energy_drift},
          {"min_eigenvalue_seen", m.min_eigenvalue_seen},
          {"entropy_dips", m.entropy_dips},
          {"clamp_events", m.clamp_events},
          {"accepted_steps", m.accepted_steps},
          {"rejected_steps", m.rejected_steps}};
}

}  // namespace

ScenarioResult run_scenario(const ScenarioConfig& cfg) {
  const auto wall_start = std::chrono::steady_clock::now();
  const HamiltonianModel model(cfg.model);
  const Matrix rho0 = cfg.initial_state();

  StopPredicate stop;
  if (cfg.stop_coherence_below) {
    const double threshold = *cfg.stop_coherence_below;
    stop = [&model, threshold](double t, const Matrix& rho) {
      return coherence_in_eigenbasis(rho, model, t) < threshold;
    };
  }

  ScenarioResult result;
  auto [rec, monitor] = evolve(rho0, model, cfg.gamma, cfg.t_span, cfg.integrator,
                               cfg.output.stride, stop);
  result.trajectory = std::move(rec);
  result.monitor = monitor;
  result.rows = rows_for(result.trajectory, model, cfg.psi0);

  for (const ObservableRow& r : result.rows) {
    if (r.abs_rho01 < 1e-3) {
      result.coherence_threshold_time = r.t;
      break;
    }
  }

  if (model.is_static()) {
    const Matrix h = model.evaluate(cfg.t_span.first);
    const EigenSystem es = eig_hermitian(h);
    const double u = (rho0 * h).trace().real();
    if (u > es.values(0) && u < es.values(es.values.size() - 1))
      result.beta_eff = effective_beta(h, u);
  }

  const std::filesystem::path csv_path(cfg.output.path);
  write_csv(csv_path, result.rows);
  result.files_written.push_back(csv_path.string());

  if (cfg.compare_unitary) {
    auto [urec, umon] = evolve_unitary(rho0, model, cfg.t_span, cfg.integrator,
                                       cfg.output.stride);
    const std::vector<ObservableRow> urows = rows_for(urec, model, cfg.psi0);
    std::filesystem::path upath = csv_path;
    upath.replace_filename(csv_path.stem().string() + "_unitary" +
                           csv_path.extension().string());
    write_csv(upath, urows);
    result.files_written.push_back(upath.string());

    std::vector<double> ut, uf;
    ut.reserve(urows.size());
    uf.reserve(urows.size());
    for (const ObservableRow& r : urows) { ut.push_back(r.t); uf.push_back(r.fidelity); }

    std::filesystem::path dpath = csv_path;
    dpath.replace_filename(csv_path.stem().string() + "_deviation" +
                           csv_path.extension().string());
    std::ofstream dev(dpath);
    if (!dev) throw std::runtime_error("cannot open output file " + dpath.string());
    dev << "t,fidelity_sea,fidelity_unitary,abs_deviation\n";
    for (const ObservableRow& r : result.rows) {
      const double fu = interpolate(ut, uf, r.t);
      dev << format17(r.t) << ',' << format17(r.fidelity) << ',' << format17(fu)
          << ',' << format17(std::abs(r.fidelity - fu)) << "\n";
    }
    result.files_written.push_back(dpath.string());
  }

  const double wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - wall_start).count();

  json meta;
  meta["config"] = serialize_config(cfg);
  meta["monitor"] = monitor_to_json(result.monitor);
  if (result.beta_eff) meta["beta_eff"] = *result.beta_eff;
  if (result.coherence_threshold_time)
    meta["coherence_threshold_time"] = *result.coherence_threshold_time;
  meta["wall_seconds"] = wall_seconds;
  std::filesystem::path mpath = csv_path;
  mpath.replace_filename(csv_path.stem().string() + "_meta.json");
  std::ofstream metaout(mpath);
  metaout << meta.dump(2) << "\n";
  result.files_written.push_back(mpath.string());

  return result;
}

namespace {

void set_by_path(json& doc, const std::string& path, double value) {
  json* node = &doc;
  std::size_t pos = 0;
  while (true) {
    const std::size_t dot = path.find('.', pos);
    const std::string key = path.substr(pos, dot == std::string::npos ? dot : dot - pos);
    if (!node->is_object() || !node->contains(key))
      throw std::invalid_argument("sweep: no parameter at path '" + path + "'");
    node = &(*node)[key];
    if (dot == std::string::npos) break;
    pos = dot + 1;
  }
  if (!node->is_number())
    throw std::invalid_argument("sweep: path '" + path + "' is not a numeric scalar");
  *node = value;
}

std::string with_suffix(const std::string& path, std::size_t index) {
  std::filesystem::path p(path);
  return (p.parent_path() /
          (p.stem().string() + "_v" + std::to_string(index) + p.extension().string()))
      .string();
}

}  // namespace

std::vector<SweepEntry> run_sweep(const ScenarioConfig& base_cfg,
                                  const std::string& param_path,
                                  const std::vector<double>& values) {
  const json base = serialize_config(base_cfg);
  std::vector<std::future<SweepEntry>> futures;
  futures.reserve(values.size());
  for (std::size_t k = 0; k < values.size(); ++k) {
    json doc = base;
    set_by_path(doc, param_path, values[k]);
    doc["output"]["path"] = with_suffix(base_cfg.output.path, k);
    const ScenarioConfig cfg = parse_config_json(doc);
    const double value = values[k];
    futures.push_back(std::async(std::launch::async, [cfg, value]() {
      const ScenarioResult res = run_scenario(cfg);
      SweepEntry entry;
      entry.value = value;
      entry.t_final = res.rows.back().t;
      entry.threshold_time = res.coherence_threshold_time;
      entry.final_row = res.rows.back();
      return entry;
    }));
  }
  std::vector<SweepEntry> entries;
  entries.reserve(values.size());
  for (auto& f : futures) entries.push_back(f.get());
  return entries;
}

void write_sweep_summary(const std::filesystem::path& path,
                         const std::string& param_path,
                         const std::vector<SweepEntry>& entries) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open output file " + path.string());
  out << "value,t_final,threshold_time," << kCsvHeader << "\n";
  for (const SweepEntry& e : entries) {
    out << format17(e.value) << ',' << format17(e.t_final) << ','
        << (e.threshold_time ? format17(*e.threshold_time) : "nan") << ','
        << format17(e.final_row.t) << ',' << format17(e.final_row.p1) << ','
        << format17(e.final_row.p0) << ',' << format17(e.final_row.re_rho01) << ','
        << format17(e.final_row.im_rho01) << ',' << format17(e.final_row.abs_rho01)
        << ',' << format17(e.final_row.entropy) << ',' << format17(e.final_row.energy)
        << ',' << format17(e.final_row.fidelity) << ',' << format17(e.final_row.sigma_x)
        << ',' << format17(e.final_row.trace) << ',' << format17(e.final_row.min_eig)
        << ',' << format17(e.final_row.adiab_metric) << "\n";
  }
}

namespace {

Matrix random_density(std::mt19937& rng, Eigen::Index dim) {
  std::normal_distribution<double> gauss;
  Matrix a(dim, dim);
  for (Eigen::Index r = 0; r < dim; ++r)
    for (Eigen::Index c = 0; c < dim; ++c)
      a(r, c) = Complex(gauss(rng), gauss(rng));
  Matrix rho = a * a.adjoint();
  rho /= rho.trace().real();
  return rho;
}

Matrix random_hermitian(std::mt19937& rng, Eigen::Index dim) {
  std::normal_distribution<double> gauss;
  Matrix a(dim, dim);
  for (Eigen::Index r = 0; r < dim; ++r)
    for (Eigen::Index c = 0; c < dim; ++c)
      a(r, c) = Complex(gauss(rng), gauss(rng));
  return 0.5 * (a + a.adjoint());
}

}  // namespace

std::vector<std::string> verify_suite() {
  std::vector<std::string> failures;
  std::mt19937 rng(20240817);
  auto check = [&failures](bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  };

  const double gamma = 1.0;
  for (int trial = 0; trial < 300; ++trial) {
    const Eigen::Index dim = 2 + trial % 3;
    const Matrix rho = random_density(rng, dim);
    const Matrix h = random_hermitian(rng, dim);
    const Matrix d = dissipator(rho, h, gamma);
    const double h_scale = std::max(1.0, max_norm(h));
    if (std::abs(d.trace().real()) > 1e-12 * gamma) {
      check(false, "trace conservation violated on random state");
      break;
    }
    if (std::abs((d * h).trace().real()) > 1e-12 * gamma * h_scale * h_scale) {
      check(false, "energy conservation violated on random state");
      break;
    }
    const Matrix gram = generator_via_gram(rho, h, gamma);
    if (max_norm(Matrix(d - gram)) > 1e-10 * std::max(1.0, max_norm(d))) {
      check(false, "Gram-determinant oracle disagrees with dissipator");
      break;
    }
  }

  for (const Eigen::Index dim : {2, 3, 4}) {
    const Matrix h = random_hermitian(rng, dim);
    const EigenSystem es = eig_hermitian(h);
    const double spread = es.values(dim - 1) - es.values(0);
    for (const double beta_scaled : {-1.0, -0.5, 0.0, 0.5, 2.0}) {
      const double beta = beta_scaled / std::max(spread, 1e-6);
      const Matrix omega = canonical_state(h, beta).omega;
      if (stationarity_residual(omega, h, gamma) > 1e-10 * gamma)
        check(false, "canonical state not stationary (dim " + std::to_string(dim) + ")");
    }
    for (Eigen::Index k = 0; k < dim; ++k) {
      const Vector phi = es.vectors.col(k);
      const Matrix pure = phi * phi.adjoint();
      if (stationarity_residual(pure, h, gamma) > 1e-12)
        check(false, "pure eigenstate not stationary (dim " + std::to_string(dim) + ")");
    }
  }

  for (int trial = 0; trial < 50; ++trial) {
    const Matrix rho = random_density(rng, 2);
    const Matrix h = random_hermitian(rng, 2);
    const Matrix d = dissipator(rho, h, gamma);
    const double ref = std::max(1.0, max_norm(d));
    if (rescaling_residual(rho, h, 3.0, gamma) > 1e-10 * ref ||
        rescaling_residual(rho, h, 0.5, gamma) > 1e-10 * ref) {
      check(false, "rescaling invariance violated");
      break;
    }
  }

  return failures;
}

}  // namespace sea
