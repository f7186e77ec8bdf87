// Copyright 2026 The holodfs developers
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

// Command-line harness: JSON configuration in, CSV/JSON results out.
// Exit codes: 0 success, 1 invariant failure, 2 configuration error.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "holodfs/adiabatic.hpp"
#include "holodfs/dfs.hpp"
#include "holodfs/gates.hpp"
#include "holodfs/ns.hpp"
#include "holodfs/qops.hpp"
#include "holodfs/verify.hpp"

namespace {

using holodfs::ControlParams;
using holodfs::Matrix;
using holodfs::Vector;
using json = nlohmann::json;  // std::map backing: object keys serialize sorted

// All numeric payloads are rounded to 12 significant digits before they are
// stored, so re-running a command reproduces the output byte for byte.
std::string fmt12(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

json jnum(double v) { return json(std::strtod(fmt12(v).c_str(), nullptr)); }

json mat_json(const Matrix& m) {
  json re = json::array();
  json im = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json rrow = json::array();
    json irow = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      rrow.push_back(jnum(m(r, c).real()));
      irow.push_back(jnum(m(r, c).imag()));
    }
    re.push_back(rrow);
    im.push_back(irow);
  }
  return json{{"im", im}, {"re", re}};
}

void emit(const json& j, const std::string& out_path) {
  const std::string text = j.dump(2) + "\n";
  std::cout << text;
  if (!out_path.empty()) {
    std::ofstream f(out_path);
    if (!f) throw std::invalid_argument("cannot write: " + out_path);
    f << text;
  }
}

void emit_csv(const std::string& csv, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << csv;
  } else {
    std::ofstream f(out_path);
    if (!f) throw std::invalid_argument("cannot write: " + out_path);
    f << csv;
  }
}

// ---------------------------------------------------------------------------
// Strict run configuration: a JSON object whose fields mirror the CLI flags.
// Unknown fields are rejected; command-line flags override file values.

const std::set<std::string>& allowed_config_keys() {
  static const std::set<std::string> keys = {
      "command",     "family",  "phi0",  "total_time", "steps",
      "j_scale",     "seed",    "output_path", "samples",    "qubits",
      "times",       "theta_max"};
  return keys;
}

json load_config(const std::string& path, const std::string& command) {
  std::ifstream f(path);
  if (!f) throw std::invalid_argument("cannot open config: " + path);
  json j = json::parse(f);  // throws on malformed JSON
  if (!j.is_object()) {
    throw std::invalid_argument("config root must be a JSON object");
  }
  for (const auto& item : j.items()) {
    if (!allowed_config_keys().count(item.key())) {
      throw std::invalid_argument("unknown config field: " + item.key());
    }
  }
  if (j.contains("command")) {
    if (!j["command"].is_string() || j["command"].get<std::string>() != command) {
      throw std::invalid_argument("config command does not match subcommand '" +
                                  command + "'");
    }
  }
  return j;
}

double cfg_num(const json& j, const std::string& key, bool require_positive) {
  if (!j.at(key).is_number()) {
    throw std::invalid_argument("config field '" + key + "' must be a number");
  }
  const double v = j.at(key).get<double>();
  if (!std::isfinite(v)) {
    throw std::invalid_argument("config field '" + key + "' must be finite");
  }
  if (require_positive && v <= 0.0) {
    throw std::invalid_argument("config field '" + key + "' must be positive");
  }
  return v;
}

long long cfg_int(const json& j, const std::string& key, long long min_value) {
  if (!j.at(key).is_number_integer()) {
    throw std::invalid_argument("config field '" + key + "' must be an integer");
  }
  const long long v = j.at(key).get<long long>();
  if (v < min_value) {
    throw std::invalid_argument("config field '" + key + "' is out of range");
  }
  return v;
}

std::string cfg_str(const json& j, const std::string& key) {
  if (!j.at(key).is_string()) {
    throw std::invalid_argument("config field '" + key + "' must be a string");
  }
  return j.at(key).get<std::string>();
}

// ---------------------------------------------------------------------------
// verify

int run_verify(const std::string& json_path, const std::string& inject) {
  const holodfs::VerifyReport rep = holodfs::run_verification(inject);

  json inv = json::array();
  json failures = json::array();
  for (const auto& r : rep.invariants) {
    inv.push_back(json{{"deviation", jnum(r.deviation)},
                       {"name", r.name},
                       {"pass", r.pass},
                       {"tolerance", jnum(r.tolerance)}});
    if (!r.pass) failures.push_back(r.name);
  }
  json mults = json::array();
  json blocks = json::array();
  for (const auto& b : rep.cg_multiplicities) {
    blocks.push_back(json::array({b[0], b[1]}));
    mults.push_back(b[1]);
  }
  json out{{"all_pass", rep.all_pass},
           {"cg_blocks", blocks},
           {"cg_multiplicities", mults},
           {"failures", failures},
           {"invariants", inv}};
  emit(out, json_path);
  return rep.all_pass ? 0 : 1;
}

// ---------------------------------------------------------------------------
// loop-sim

struct LoopSimOpts {
  std::string family;
  double phi0 = 0.0;
  double total_time = 200.0;
  int steps = 20000;
  double theta_max = std::numbers::pi / 2.0;
  double j_scale = 1.0;
  std::string out_path;
};

void csv_row(std::ostringstream& csv, int step, const ControlParams& p,
             double leak, double overlap) {
  csv << step << ',' << fmt12(p.theta) << ',' << fmt12(p.phi) << ','
      << fmt12(leak) << ',' << fmt12(overlap) << '\n';
}

json loop_common_json(const LoopSimOpts& o, const holodfs::ParameterLoop& loop) {
  json j{{"berry_phase", jnum(holodfs::berry_phase(loop))},
         {"family", o.family},
         {"j_scale", jnum(o.j_scale)},
         {"phi0", jnum(o.phi0)},
         {"solid_angle", jnum(holodfs::solid_angle(loop))},
         {"steps", o.steps},
         {"theta_max", jnum(o.theta_max)},
         {"total_time", jnum(o.total_time)}};
  json warnings = json::array();
  const auto segments =
      static_cast<int>(loop.waypoints.size()) - 1;
  if (o.steps < 100 * segments) {
    warnings.push_back(
        "coarse time discretization: fewer than 100 steps per segment");
  }
  j["warnings"] = warnings;
  return j;
}

// The holonomy is compared against the ideal dark-branch prediction; the
// relative-phase field is present only when both outer diagonal entries are
// large enough to carry a well-defined phase.
void add_gate_json(json& j, const Matrix& measured, const Matrix& target) {
  j["measured"] = mat_json(measured);
  j["target"] = mat_json(target);
  j["fidelity"] = jnum(holodfs::gate_fidelity(measured, target));
  try {
    j["relative_phase"] = jnum(holodfs::relative_phase(measured));
  } catch (const std::invalid_argument&) {
    // off-diagonal-dominant holonomy (e.g. a bit flip): phase undefined
  }
}

int run_loop_sim(const LoopSimOpts& o) {
  const holodfs::HamiltonianFamily fam = holodfs::make_family(o.family);
  const holodfs::ParameterLoop loop =
      holodfs::standard_loop(o.phi0, o.total_time, o.steps, o.theta_max);

  std::ostringstream csv;
  csv << "step,theta,phi,leakage,dark_overlap\n";

  json j = loop_common_json(o, loop);

  if (o.family == "h_ns") {
    const holodfs::NSCode code = holodfs::build_ns_code();
    Matrix block_all(32, 4 * code.m_count());
    for (int mi = 0; mi < code.m_count(); ++mi) {
      block_all.block(0, 4 * mi, 32, 4) = code.sector_basis(mi);
    }
    const holodfs::StepObserver obs = [&](int step, const ControlParams& p,
                                          const Matrix& cols) {
      double worst = 0.0;
      for (Eigen::Index c = 0; c < cols.cols(); ++c) {
        const double inside = (block_all.adjoint() * cols.col(c)).squaredNorm();
        worst = std::max(worst, cols.col(c).squaredNorm() - inside);
      }
      const Vector dark = holodfs::dark_h_ns(code, p, 0);
      csv_row(csv, step + 1, p, worst, std::norm(dark.dot(cols.col(1))));
    };
    const holodfs::NSHolonomy res = holodfs::ns_holonomy(code, loop, o.j_scale, obs);
    add_gate_json(j, res.per_m[0],
                  holodfs::canonical_phase(holodfs::analytic_holonomy(fam, loop)));
    j["block_leakage_max"] = jnum(res.block_leakage_max);
    j["dynamical_phase_max"] = jnum(res.dynamical_phase_max);
    j["m_spread"] = jnum(res.m_spread);
  } else {
    // Column of the logical basis that coincides with the dark branch at the
    // start of the loop; its overlap with the instantaneous dark state is the
    // adiabaticity diagnostic.
    ControlParams p0;
    p0.theta = loop.waypoints.front()[0];
    p0.phi = loop.waypoints.front()[1];
    p0.j_scale = o.j_scale;
    const Vector dark0 = fam.moving_dark(p0);
    Eigen::Index dark_col = 0;
    double best = -1.0;
    for (Eigen::Index c = 0; c < fam.logical_basis.cols(); ++c) {
      const double w = std::abs(dark0.dot(fam.logical_basis.col(c)));
      if (w > best) {
        best = w;
        dark_col = c;
      }
    }

    const holodfs::StepObserver obs = [&](int step, const ControlParams& p,
                                          const Matrix& cols) {
      double worst = 0.0;
      for (Eigen::Index c = 0; c < cols.cols(); ++c) {
        double inside = 0.0;
        for (std::size_t i : fam.code_indices) {
          inside += std::norm(cols(static_cast<Eigen::Index>(i), c));
        }
        worst = std::max(worst, cols.col(c).squaredNorm() - inside);
      }
      const Vector dark = fam.moving_dark(p);
      csv_row(csv, step + 1, p, worst, std::norm(dark.dot(cols.col(dark_col))));
    };
    const holodfs::HolonomyResult res = holodfs::holonomy(fam, loop, o.j_scale, obs);
    add_gate_json(j, res.unitary,
                  holodfs::canonical_phase(holodfs::analytic_holonomy(fam, loop)));
    j["confinement_leakage_max"] = jnum(res.confinement_leakage_max);
    j["dynamical_phase_max"] = jnum(res.dynamical_phase_max);
    j["leakage_final_max"] = jnum(res.leakage_max);
  }

  emit_csv(csv.str(), o.out_path);
  std::cout << j.dump(2) << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// sweep

struct SweepOpts {
  std::string family;
  double phi0 = 0.0;
  std::vector<double> times;
  int steps = 20000;
  double j_scale = 1.0;
  std::string out_path;
};

int run_sweep(const SweepOpts& o) {
  const holodfs::HamiltonianFamily fam = holodfs::make_family(o.family);
  std::vector<double> times = o.times;
  std::sort(times.begin(), times.end());
  if (std::adjacent_find(times.begin(), times.end()) != times.end()) {
    throw std::invalid_argument("duplicate entries in --times");
  }
  const auto points =
      holodfs::adiabaticity_sweep(fam, o.phi0, times, o.steps, o.j_scale);

  std::ostringstream csv;
  csv << "total_time,phase_error,leakage\n";
  json rows = json::array();
  int decreasing = 0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto& p = points[i];
    csv << fmt12(p.total_time) << ',' << fmt12(p.phase_error) << ','
        << fmt12(p.leakage) << '\n';
    rows.push_back(json{{"fidelity", jnum(p.fidelity)},
                        {"leakage", jnum(p.leakage)},
                        {"phase_error", jnum(p.phase_error)},
                        {"total_time", jnum(p.total_time)}});
    if (i > 0 && p.phase_error < points[i - 1].phase_error) ++decreasing;
  }
  const double trend =
      static_cast<double>(decreasing) / static_cast<double>(points.size() - 1);

  emit_csv(csv.str(), o.out_path);
  json j{{"family", o.family},
         {"j_scale", jnum(o.j_scale)},
         {"phi0", jnum(o.phi0)},
         {"points", rows},
         {"steps", o.steps},
         {"trend_fraction", jnum(trend)}};
  std::cout << j.dump(2) << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// cg

int run_cg(int qubits, const std::string& out_path) {
  const holodfs::CGDecomposition d = holodfs::cg_decompose(qubits);
  json blocks = json::array();
  long long total = 0;
  for (const auto& b : d.blocks) {
    const long long dim =
        static_cast<long long>(b.multiplicity) * (b.twice_j + 1);
    total += dim;
    blocks.push_back(json{{"multiplicity", b.multiplicity},
                          {"subspace_dimension", dim},
                          {"twice_j", b.twice_j}});
  }
  json j{{"blocks", blocks},
         {"dimension_identity", total == (1LL << qubits)},
         {"n_qubits", qubits},
         {"total_dimension", total}};
  emit(j, out_path);
  return 0;
}

// ---------------------------------------------------------------------------
// noise-test

int run_noise_test(int samples, long long seed, const std::string& out_path) {
  const holodfs::CodeBasis code = holodfs::build_code(1);
  const holodfs::DephasingEnsemble ens{samples,
                                       static_cast<std::uint64_t>(seed)};

  // Code state: an equal superposition of the two logical states, entirely
  // inside one collective-Z eigenspace.
  holodfs::QuantumState in_code;
  in_code.n_qubits = 4;
  in_code.amp = (code.logical_basis().col(0) + code.logical_basis().col(1)) /
                std::sqrt(2.0);

  // Non-code state: a superposition of extreme collective-Z eigenvalues, the
  // most dephasing-sensitive state of the register.
  holodfs::QuantumState ghz;
  ghz.n_qubits = 4;
  ghz.amp = Vector::Zero(16);
  ghz.amp(0) = 1.0 / std::sqrt(2.0);
  ghz.amp(15) = 1.0 / std::sqrt(2.0);

  json j{{"in_code_fidelity", jnum(holodfs::dephase(in_code, ens))},
         {"out_of_code_fidelity", jnum(holodfs::dephase(ghz, ens))},
         {"samples", samples},
         {"seed", seed}};
  emit(j, out_path);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "holodfs: holonomic-gate simulation and verification in "
      "dephasing-protected subspaces"};
  app.require_subcommand(1);

  // verify ------------------------------------------------------------------
  auto* verify = app.add_subcommand("verify", "Run every module invariant suite");
  std::string v_json, v_cfg, v_inject;
  auto* v_json_opt =
      verify->add_option("--json", v_json, "Also write the JSON report here");
  verify->add_option("--config", v_cfg, "JSON config file (strict schema)");
  verify
      ->add_option("--inject-failure", v_inject,
                   "Zero one invariant's tolerance (test hook)")
      ->group("");

  // loop-sim ----------------------------------------------------------------
  auto* sim = app.add_subcommand(
      "loop-sim", "Drive a control loop and report the measured holonomy");
  LoopSimOpts so;
  std::string s_cfg;
  auto* s_family = sim->add_option("--family", so.family,
                                   "Hamiltonian family: h_z, h_x, h_4, h_ns");
  auto* s_phi0 = sim->add_option("--phi0", so.phi0, "Azimuthal sweep (rad)");
  auto* s_time = sim->add_option("--time", so.total_time, "Loop duration");
  auto* s_steps = sim->add_option("--steps", so.steps, "Time steps");
  auto* s_tmax = sim->add_option("--theta-max", so.theta_max,
                                 "Polar turning point (rad)");
  auto* s_jscale = sim->add_option("--j-scale", so.j_scale, "Coupling scale");
  auto* s_out = sim->add_option("--out", so.out_path, "CSV output path");
  sim->add_option("--config", s_cfg, "JSON config file (strict schema)");

  // sweep -------------------------------------------------------------------
  auto* sweep = app.add_subcommand(
      "sweep", "Repeat a loop at several durations and report convergence");
  SweepOpts wo;
  std::string w_cfg;
  auto* w_family = sweep->add_option("--family", wo.family,
                                     "Hamiltonian family: h_z, h_x, h_4, h_ns");
  auto* w_phi0 = sweep->add_option("--phi0", wo.phi0, "Azimuthal sweep (rad)");
  auto* w_times = sweep->add_option("--times", wo.times, "Loop durations")
                      ->delimiter(',');
  auto* w_steps = sweep->add_option("--steps", wo.steps, "Time steps per run");
  auto* w_jscale = sweep->add_option("--j-scale", wo.j_scale, "Coupling scale");
  auto* w_out = sweep->add_option("--out", wo.out_path, "CSV output path");
  sweep->add_option("--config", w_cfg, "JSON config file (strict schema)");

  // cg ----------------------------------------------------------------------
  auto* cg = app.add_subcommand(
      "cg", "Collective-spin block decomposition of an n-qubit register");
  int c_qubits = 0;
  std::string c_out, c_cfg;
  auto* c_qubits_opt = cg->add_option("--qubits", c_qubits, "Register size (2-6)");
  auto* c_out_opt = cg->add_option("--out", c_out, "JSON output path");
  cg->add_option("--config", c_cfg, "JSON config file (strict schema)");

  // noise-test ---------------------------------------------------------------
  auto* noise = app.add_subcommand(
      "noise-test", "Collective-dephasing fidelity of code and non-code states");
  int n_samples = 4096;
  long long n_seed = 0x5EED;
  std::string n_out, n_cfg;
  auto* n_samples_opt =
      noise->add_option("--samples", n_samples, "Ensemble size");
  auto* n_seed_opt = noise->add_option("--seed", n_seed, "Ensemble seed");
  auto* n_out_opt = noise->add_option("--out", n_out, "JSON output path");
  noise->add_option("--config", n_cfg, "JSON config file (strict schema)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;  // flag errors are configuration errors
  }

  try {
    if (verify->parsed()) {
      if (!v_cfg.empty()) {
        const json cfg = load_config(v_cfg, "verify");
        if (!v_json_opt->count() && cfg.contains("output_path")) {
          v_json = cfg_str(cfg, "output_path");
        }
      }
      return run_verify(v_json, v_inject);
    }

    if (sim->parsed()) {
      bool phi0_set = s_phi0->count() > 0;
      if (!s_cfg.empty()) {
        const json cfg = load_config(s_cfg, "loop-sim");
        if (!s_family->count() && cfg.contains("family"))
          so.family = cfg_str(cfg, "family");
        if (!phi0_set && cfg.contains("phi0")) {
          so.phi0 = cfg_num(cfg, "phi0", false);
          phi0_set = true;
        }
        if (!s_time->count() && cfg.contains("total_time"))
          so.total_time = cfg_num(cfg, "total_time", true);
        if (!s_steps->count() && cfg.contains("steps"))
          so.steps = static_cast<int>(cfg_int(cfg, "steps", 1));
        if (!s_tmax->count() && cfg.contains("theta_max"))
          so.theta_max = cfg_num(cfg, "theta_max", true);
        if (!s_jscale->count() && cfg.contains("j_scale"))
          so.j_scale = cfg_num(cfg, "j_scale", true);
        if (!s_out->count() && cfg.contains("output_path"))
          so.out_path = cfg_str(cfg, "output_path");
      }
      if (so.family.empty()) throw std::invalid_argument("missing --family");
      if (!phi0_set) throw std::invalid_argument("missing --phi0");
      return run_loop_sim(so);
    }

    if (sweep->parsed()) {
      bool phi0_set = w_phi0->count() > 0;
      if (!w_cfg.empty()) {
        const json cfg = load_config(w_cfg, "sweep");
        if (!w_family->count() && cfg.contains("family"))
          wo.family = cfg_str(cfg, "family");
        if (!phi0_set && cfg.contains("phi0")) {
          wo.phi0 = cfg_num(cfg, "phi0", false);
          phi0_set = true;
        }
        if (!w_times->count() && cfg.contains("times")) {
          if (!cfg.at("times").is_array()) {
            throw std::invalid_argument("config field 'times' must be an array");
          }
          wo.times.clear();
          for (const auto& t : cfg.at("times")) {
            if (!t.is_number() || !std::isfinite(t.get<double>()) ||
                t.get<double>() <= 0.0) {
              throw std::invalid_argument("'times' entries must be positive");
            }
            wo.times.push_back(t.get<double>());
          }
        }
        if (!w_steps->count() && cfg.contains("steps"))
          wo.steps = static_cast<int>(cfg_int(cfg, "steps", 1));
        if (!w_jscale->count() && cfg.contains("j_scale"))
          wo.j_scale = cfg_num(cfg, "j_scale", true);
        if (!w_out->count() && cfg.contains("output_path"))
          wo.out_path = cfg_str(cfg, "output_path");
      }
      if (wo.family.empty()) throw std::invalid_argument("missing --family");
      if (wo.times.empty()) throw std::invalid_argument("missing --times");
      if (!phi0_set) throw std::invalid_argument("missing --phi0");
      return run_sweep(wo);
    }

    if (cg->parsed()) {
      if (!c_cfg.empty()) {
        const json cfg = load_config(c_cfg, "cg");
        if (!c_qubits_opt->count() && cfg.contains("qubits"))
          c_qubits = static_cast<int>(cfg_int(cfg, "qubits", 2));
        if (!c_out_opt->count() && cfg.contains("output_path"))
          c_out = cfg_str(cfg, "output_path");
      }
      if (c_qubits == 0) throw std::invalid_argument("missing --qubits");
      return run_cg(c_qubits, c_out);
    }

    if (noise->parsed()) {
      if (!n_cfg.empty()) {
        const json cfg = load_config(n_cfg, "noise-test");
        if (!n_samples_opt->count() && cfg.contains("samples"))
          n_samples = static_cast<int>(cfg_int(cfg, "samples", 1));
        if (!n_seed_opt->count() && cfg.contains("seed"))
          n_seed = cfg_int(cfg, "seed", 0);
        if (!n_out_opt->count() && cfg.contains("output_path"))
          n_out = cfg_str(cfg, "output_path");
      }
      return run_noise_test(n_samples, n_seed, n_out);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;  // unreachable: a subcommand is required
}
