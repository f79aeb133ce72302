// Copyright 2026 The qpt authors
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

// Command-line front end. Subcommands: simulate, estimate, decompose,
// filter-cp. Exit codes: 0 success, 2 parse, 3 invariant, 4 numerical.

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "qpt/qpt.hpp"

namespace {

using qpt::json;

// Effective configuration: defaults, overlaid by a config file (--config or
// QPT_CONFIG), overlaid by explicit command-line flags.
json base_config() {
  return json{{"method", "cpfit"},      {"times", json::array()},
              {"noise_sigma", 0.0},     {"seed", 0},
              {"structure", "kite"},    {"penalty_weight", nullptr},
              {"max_iter", 20000},      {"tol", 1e-9},
              {"basis", ""},            {"output", ""},
              {"states", false},        {"index", 0},
              {"detailed_balance", true}, {"merge_degenerate", true},
              {"seed_method", "auto"},  {"check", false}};
}

json effective_config(const std::string& config_path) {
  json cfg = base_config();
  std::string path = config_path;
  if (path.empty())
    if (const char* env = std::getenv("QPT_CONFIG")) path = env;
  if (!path.empty()) {
    const json file = qpt::load_json(path);
    if (!file.is_object())
      throw qpt::parse_error(path + ": config must be a JSON object");
    for (const auto& [key, value] : file.items()) {
      if (!cfg.contains(key))
        throw qpt::parse_error(path + ": unknown config key '" + key + "'");
      cfg[key] = value;
    }
  }
  return cfg;
}

template <typename T>
void override_if_set(const CLI::App& cmd, const std::string& flag, json& cfg,
                     const std::string& key, const T& value) {
  const CLI::Option* opt = cmd.get_option_no_throw(flag);
  if (opt && opt->count() > 0) cfg[key] = value;
}

std::string format_entry(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%9.4f", v);
  return buf;
}

void print_matrix(std::ostream& os, const qpt::CMat& m) {
  const bool complex_entries = [&] {
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      for (Eigen::Index j = 0; j < m.cols(); ++j)
        if (std::abs(m(i, j).imag()) >= 5e-5) return true;
    return false;
  }();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    os << "  ";
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      os << format_entry(m(i, j).real());
      if (complex_entries)
        os << (m(i, j).imag() < 0 ? "-" : "+")
           << format_entry(std::abs(m(i, j).imag())).substr(1) << "i";
      os << ' ';
    }
    os << '\n';
  }
}

void print_matrix(std::ostream& os, const qpt::RMat& m) {
  print_matrix(os, qpt::CMat(m.cast<qpt::cx>()));
}

void print_lindblad_system(std::ostream& os, const qpt::LindbladSystem& ls) {
  os << "Lindblad system (" << to_string(ls.provenance) << "), "
     << ls.operators.size() << " operator(s):\n";
  for (std::size_t k = 0; k < ls.operators.size(); ++k) {
    os << " L" << k + 1 << "  weight " << format_entry(ls.weights[k]) << '\n';
    print_matrix(os, ls.operators[k]);
  }
}

// Relaxation-time summary from the transition-basis diagonal of the plain
// relaxation supermatrix: single-spin magnetization modes for T1, mean
// single-quantum coherence rates for T2.
void print_relaxation_summary(std::ostream& os, const qpt::Supergenerator& g) {
  if (g.n != 4) return;
  const qpt::CMat r_tra = qpt::change_superoperator_coordinates(
      qpt::relaxation_in_computational_coordinates(g), qpt::zeeman_basis(4),
      qpt::transition_basis());
  auto time_of = [](double rate) -> std::string {
    if (rate <= 1e-12) return "n/a";
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.4f s", 1.0 / rate);
    return buf;
  };
  const double t1_rate_1 = r_tra(1, 1).real();
  const double t1_rate_2 = r_tra(2, 2).real();
  auto mean4 = [&](int a, int b, int c, int d) {
    return 0.25 * (r_tra(a, a).real() + r_tra(b, b).real() +
                   r_tra(c, c).real() + r_tra(d, d).real());
  };
  const double t2_rate_1 = mean4(6, 7, 10, 11);
  const double t2_rate_2 = mean4(8, 9, 12, 13);
  os << "T1(spin 1) = " << time_of(t1_rate_1) << "   T1(spin 2) = "
     << time_of(t1_rate_2) << '\n';
  os << "T2(spin 1) = " << time_of(t2_rate_1) << "   T2(spin 2) = "
     << time_of(t2_rate_2) << '\n';
}

void write_output(const std::string& path, json payload, const json& manifest) {
  payload["manifest"] = manifest;
  qpt::save_json(path, payload);
}

// -- subcommands -----------------------------------------------------------

int cmd_simulate(const json& cfg, const std::string& generator_path) {
  const qpt::Supergenerator g = qpt::load_generator(generator_path);
  const std::vector<double> times = cfg.at("times").get<std::vector<double>>();
  if (times.empty())
    throw qpt::invariant_error("simulate: --times is required");
  const json hj = qpt::to_json(g);
  const qpt::CMat h = qpt::matrix_from_json(hj.at("hamiltonian"));

  qpt::TomographyDataset ds;
  if (cfg.at("states").get<bool>()) {
    std::string basis_name = cfg.at("basis").get<std::string>();
    if (basis_name.empty()) basis_name = "cartesian";
    ds = qpt::simulate_state_pairs(g, h, times,
                                   qpt::make_basis(
                                       qpt::basis_from_string(basis_name), g.n));
  } else {
    ds = qpt::simulate_propagators(g, h, times);
  }
  const double sigma = cfg.at("noise_sigma").get<double>();
  if (sigma > 0.0) {
    qpt::NoiseSpec spec;
    spec.sigma = sigma;
    spec.rng_seed = cfg.at("seed").get<std::uint64_t>();
    spec.target = ds.propagators.empty() ? qpt::NoiseTarget::states
                                         : qpt::NoiseTarget::propagators;
    ds = qpt::add_noise(ds, spec);
  }

  std::string output = cfg.at("output").get<std::string>();
  if (output.empty()) output = "dataset.json";
  write_output(output, qpt::to_json(ds),
               qpt::run_manifest("simulate", {generator_path}, cfg));
  std::cout << "wrote " << output << " (" << times.size() << " snapshot(s), "
            << (ds.propagators.empty() ? "state pairs" : "propagators")
            << ", noise sigma " << sigma << ")\n";
  return 0;
}

int cmd_estimate(const json& cfg, const std::string& dataset_path) {
  const qpt::TomographyDataset ds = qpt::load_dataset(dataset_path);
  const std::string method = cfg.at("method").get<std::string>();

  qpt::FitReport report;
  if (method == "cpfit") {
    qpt::FitConfig fit;
    if (!cfg.at("penalty_weight").is_null())
      fit.penalty_weight = cfg.at("penalty_weight").get<double>();
    fit.max_iterations = cfg.at("max_iter").get<int>();
    fit.simplex_tolerance = cfg.at("tol").get<double>();
    const std::string structure = cfg.at("structure").get<std::string>();
    if (structure == "kite") fit.structure = qpt::FitStructure::redfield_kite;
    else if (structure == "full") fit.structure = qpt::FitStructure::full_symmetric;
    else if (structure == "none") fit.structure = qpt::FitStructure::none;
    else throw qpt::parse_error("estimate: unknown structure '" + structure + "'");
    fit.detailed_balance = cfg.at("detailed_balance").get<bool>();
    std::string seed_method = cfg.at("seed_method").get<std::string>();
    if (seed_method == "auto")
      seed_method = qpt::has_doubling_grid(ds) ? "richardson" : "eiglog";
    if (seed_method == "eiglog")
      fit.seed_generator = qpt::eigenlog_average_estimate(ds);
    else if (seed_method == "logm")
      fit.seed_generator = qpt::naive_log_estimate(ds);
    else if (seed_method != "richardson")
      throw qpt::parse_error("estimate: unknown seed method '" + seed_method + "'");
    report = qpt::cp_constrained_fit(ds, fit);
  } else {
    qpt::Supergenerator g;
    if (method == "logm") {
      g = qpt::naive_log_estimate(
          ds, static_cast<std::size_t>(cfg.at("index").get<int>()));
    } else if (method == "richardson") {
      if (!qpt::has_doubling_grid(ds))
        throw qpt::invariant_error(
            "estimate: richardson requires a doubling time grid "
            "(t_{m+1} = 2 t_m); use eiglog or cpfit for this grid");
      g = qpt::richardson_estimate(ds);
    } else if (method == "eiglog") {
      g = qpt::eigenlog_average_estimate(ds);
    } else {
      throw qpt::parse_error("estimate: unknown method '" + method + "'");
    }
    report.estimate = g;
    report.method = method;
    report.converged = true;
    const qpt::CMat gen = g.full_generator();
    for (std::size_t m = 0; m < ds.times.size(); ++m) {
      const double res =
          (qpt::expm(gen, -ds.times[m]) - qpt::dataset_propagator(ds, m)).norm();
      report.residual_per_time.push_back(res);
      report.chi_squared += res * res;
    }
    report.penalty_at_solution = qpt::cp_penalty(g);
  }

  std::cout << "method: " << report.method << '\n';
  std::cout << "chi^2: " << report.chi_squared
            << "  cp penalty: " << report.penalty_at_solution
            << "  iterations: " << report.iterations
            << "  converged: " << (report.converged ? "yes" : "no") << '\n';
  std::cout << "residual per time:";
  for (double r : report.residual_per_time) std::cout << ' ' << r;
  std::cout << '\n';
  print_relaxation_summary(std::cout, report.estimate);

  const double scale =
      std::max(1.0, report.estimate.relaxation_part.squaredNorm());
  if (report.penalty_at_solution > 1e-6 * scale)
    std::cout << "warning: estimate violates complete positivity "
                 "(projected Choi penalty " << report.penalty_at_solution
              << "); consider method cpfit\n";
  if (report.residual_per_time.size() > 1) {
    const auto [lo, hi] = std::minmax_element(report.residual_per_time.begin(),
                                              report.residual_per_time.end());
    if (*hi > 100.0 * std::max(*lo, 1e-12) && *hi > 1e-6)
      std::cout << "warning: estimate disagrees across snapshot times; "
                   "single-snapshot logarithms alias fast precession\n";
  }

  const std::string output = cfg.at("output").get<std::string>();
  if (!output.empty()) {
    write_output(output, qpt::to_json(report),
                 qpt::run_manifest("estimate", {dataset_path}, cfg));
    std::cout << "wrote " << output << '\n';
  }
  return 0;
}

int cmd_decompose(const json& cfg, const std::string& generator_path) {
  const qpt::Supergenerator g = qpt::load_generator(generator_path);
  const std::string basis_name = cfg.at("basis").get<std::string>();
  if (!basis_name.empty() &&
      qpt::basis_from_string(basis_name) != g.basis)
    throw qpt::invariant_error("decompose: generator file uses basis '" +
                               to_string(g.basis) + "', not '" + basis_name +
                               "'");
  const qpt::RelaxationDecomposition d =
      qpt::decompose_relaxation(g, cfg.at("merge_degenerate").get<bool>());

  std::cout << "T1 rate matrix, transition frame:\n";
  print_matrix(std::cout, d.r_t1_tra);
  std::cout << "T1 rate matrix, zeeman frame:\n";
  print_matrix(std::cout, d.r_t1_zee);
  std::cout << "T2 rate matrix, zeeman frame:\n";
  print_matrix(std::cout, d.r_t2_zee.rates);
  std::cout << "T2 nonadiabatic part:\n";
  print_matrix(std::cout, d.r_t2_na.rates);
  std::cout << "T2 adiabatic part:\n";
  print_matrix(std::cout, d.r_t2_ad.rates);
  print_lindblad_system(std::cout, d.t1);
  print_lindblad_system(std::cout, d.t2_nonadiabatic);
  print_lindblad_system(std::cout, d.t2_adiabatic);
  std::cout << "unexplained fraction: " << d.discrepancy << '\n';
  print_relaxation_summary(std::cout, g);

  if (cfg.at("check").get<bool>()) {
    qpt::LindbladSystem diagonal;
    diagonal.operators = d.t2_nonadiabatic.operators;
    diagonal.weights = d.t2_nonadiabatic.weights;
    for (std::size_t k = 0; k < d.t2_adiabatic.operators.size(); ++k) {
      diagonal.operators.push_back(d.t2_adiabatic.operators[k]);
      diagonal.weights.push_back(d.t2_adiabatic.weights[k]);
    }
    const qpt::RMat t2_rebuilt =
        qpt::hadamard_matrix_of_diagonal_lindblads(diagonal).rates;
    const double t2_dev =
        (t2_rebuilt - d.r_t2_zee.rates).cwiseAbs().maxCoeff();
    const qpt::CMat t1_gen = -qpt::dissipator_from_lindblads(d.t1);
    // Flip dissipators leave the population sector closed, so the scatter
    // rates sit at the population coordinates (i*n+i, k*n+k) directly.
    qpt::RMat t1_rebuilt(4, 4);
    for (int i = 0; i < 4; ++i)
      for (int k = 0; k < 4; ++k)
        t1_rebuilt(i, k) = t1_gen(5 * i, 5 * k).real();
    qpt::RMat t1_dev_m = t1_rebuilt - d.r_t1_zee;
    t1_dev_m.diagonal().setZero();
    std::cout << "rebuild deviation: T1 scatter "
              << t1_dev_m.cwiseAbs().maxCoeff() << ", T2 "
              << t2_dev << '\n';
  }

  const std::string output = cfg.at("output").get<std::string>();
  if (!output.empty()) {
    write_output(output, qpt::to_json(d),
                 qpt::run_manifest("decompose", {generator_path}, cfg));
    std::cout << "wrote " << output << '\n';
  }
  return 0;
}

int cmd_filter_cp(const json& cfg, const std::string& propagator_path) {
  const qpt::CMat p = qpt::matrix_from_json(qpt::load_json(propagator_path));
  const qpt::ChoiMatrix choi =
      qpt::choi_from_supermatrix(p, qpt::ChoiSource::propagator);
  const qpt::CMat herm = 0.5 * (choi.matrix + qpt::dagger(choi.matrix));
  Eigen::SelfAdjointEigenSolver<qpt::CMat> es(herm);
  double removed = 0.0;
  for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k)
    removed += std::max(0.0, -es.eigenvalues()(k));
  const qpt::CMat filtered = qpt::cp_filter_propagator(p);
  std::cout << "removed negative eigenvalue mass: " << removed << '\n';

  std::string output = cfg.at("output").get<std::string>();
  if (output.empty()) output = "filtered.json";
  write_output(output, qpt::to_json(filtered),
               qpt::run_manifest("filter-cp", {propagator_path}, cfg));
  std::cout << "wrote " << output << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Supergenerator estimation and Lindblad decomposition for "
               "Markovian quantum processes"};
  app.set_version_flag("--version", QPT_VERSION);
  app.require_subcommand(1);

  std::string config_path;
  app.add_option("--config", config_path,
                 "JSON config file (default: $QPT_CONFIG)");

  std::string generator_path, dataset_path, propagator_path, basis_name,
      method, structure, output;
  std::vector<double> times;
  double noise_sigma = 0.0, penalty_weight = 0.0, tol = 0.0;
  std::uint64_t seed = 0;
  int max_iter = 0, index = 0;
  bool states = false, no_merge = false, check = false;

  CLI::App* simulate =
      app.add_subcommand("simulate", "Evolve a generator into a dataset");
  simulate->add_option("generator", generator_path, "generator JSON")
      ->required();
  simulate->add_option("--times", times, "evolution times, seconds")
      ->delimiter(',');
  simulate->add_option("--noise-sigma", noise_sigma,
                       "relative Gaussian noise scale");
  simulate->add_option("--seed", seed, "noise RNG seed");
  simulate->add_flag("--states", states,
                     "emit state pairs instead of propagators");
  simulate->add_option("--basis", basis_name,
                       "state preparation basis (default cartesian)");
  simulate->add_option("--output", output, "output path");

  CLI::App* estimate =
      app.add_subcommand("estimate", "Estimate the supergenerator");
  estimate->add_option("dataset", dataset_path, "dataset JSON")->required();
  estimate->add_option("--method", method, "logm|richardson|eiglog|cpfit");
  estimate->add_option("--structure", structure, "full|kite|none");
  estimate->add_option("--penalty-weight", penalty_weight,
                       "CP penalty weight (0 disables)");
  estimate->add_option("--max-iter", max_iter, "simplex iteration budget");
  estimate->add_option("--tol", tol, "simplex convergence tolerance");
  estimate->add_option("--index", index, "snapshot index for logm");
  estimate->add_option("--output", output, "fit report path");

  CLI::App* decompose =
      app.add_subcommand("decompose", "Hadamard T1/T2 Lindblad decomposition");
  decompose->add_option("generator", generator_path, "generator JSON")
      ->required();
  decompose->add_option("--basis", basis_name,
                        "assert the generator file's coordinate basis");
  decompose->add_flag("--no-merge", no_merge,
                      "keep degenerate flip operators separate");
  decompose->add_flag("--check", check, "print rebuild deviations");
  decompose->add_option("--output", output, "decomposition report path");

  CLI::App* filter =
      app.add_subcommand("filter-cp", "Project a propagator onto the CP cone");
  filter->add_option("propagator", propagator_path, "propagator matrix JSON")
      ->required();
  filter->add_option("--output", output, "filtered propagator path");

  try {
    app.parse(argc, argv);

    json cfg = effective_config(config_path);
    for (CLI::App* cmd : {simulate, estimate, decompose, filter}) {
      if (!cmd->parsed()) continue;
      override_if_set(*cmd, "--times", cfg, "times", times);
      override_if_set(*cmd, "--noise-sigma", cfg, "noise_sigma", noise_sigma);
      override_if_set(*cmd, "--seed", cfg, "seed", seed);
      override_if_set(*cmd, "--states", cfg, "states", states);
      override_if_set(*cmd, "--basis", cfg, "basis", basis_name);
      override_if_set(*cmd, "--method", cfg, "method", method);
      override_if_set(*cmd, "--structure", cfg, "structure", structure);
      override_if_set(*cmd, "--penalty-weight", cfg, "penalty_weight",
                      penalty_weight);
      override_if_set(*cmd, "--max-iter", cfg, "max_iter", max_iter);
      override_if_set(*cmd, "--tol", cfg, "tol", tol);
      override_if_set(*cmd, "--index", cfg, "index", index);
      override_if_set(*cmd, "--output", cfg, "output", output);
      const CLI::Option* no_merge_opt = cmd->get_option_no_throw("--no-merge");
      if (no_merge_opt && no_merge_opt->count() > 0)
        cfg["merge_degenerate"] = false;
      override_if_set(*cmd, "--check", cfg, "check", check);
    }

    if (simulate->parsed()) return cmd_simulate(cfg, generator_path);
    if (estimate->parsed()) return cmd_estimate(cfg, dataset_path);
    if (decompose->parsed()) return cmd_decompose(cfg, generator_path);
    if (filter->parsed()) return cmd_filter_cp(cfg, propagator_path);
    return 2;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    return 2;
  } catch (const qpt::parse_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const qpt::numerical_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 4;
  } catch (const qpt::invariant_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
}
