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

// JSON (de)serialization for datasets, generators, and decomposition
// results, plus run manifests. Matrices are stored dense and row-major as
// [re, im] pairs; generators store the N x N Hamiltonian and the relaxation
// supermatrix in the coordinates of the tagged basis.

#pragma once

#include <cstdint>
#include <ctime>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "qpt/estimators.hpp"
#include "qpt/hadamard.hpp"
#include "qpt/version.hpp"

namespace qpt {

using json = nlohmann::json;

// -- matrices -----------------------------------------------------------------

inline json to_json(const CMat& m) {
  json data = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      data.push_back({m(i, j).real(), m(i, j).imag()});
  return json{{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(data)}};
}

inline json to_json(const RMat& m) { return to_json(CMat(m.cast<cx>())); }

inline CMat matrix_from_json(const json& j) {
  if (!j.is_object() || !j.contains("rows") || !j.contains("cols") ||
      !j.contains("data"))
    throw parse_error("matrix: expected object with rows, cols, data");
  const auto rows = j.at("rows").get<Eigen::Index>();
  const auto cols = j.at("cols").get<Eigen::Index>();
  const auto& data = j.at("data");
  if (rows < 0 || cols < 0 ||
      data.size() != static_cast<std::size_t>(rows * cols))
    throw parse_error("matrix: data length does not match rows * cols");
  CMat m(rows, cols);
  std::size_t k = 0;
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j2 = 0; j2 < cols; ++j2, ++k) {
      const auto& entry = data[k];
      if (!entry.is_array() || entry.size() != 2)
        throw parse_error("matrix: each entry must be a [re, im] pair");
      m(i, j2) = cx{entry[0].get<double>(), entry[1].get<double>()};
    }
  return m;
}

// -- datasets -----------------------------------------------------------------

inline json to_json(const TomographyDataset& ds) {
  json j{{"n", ds.n},
         {"hamiltonian", to_json(ds.hamiltonian)},
         {"times", ds.times},
         {"basis", "zeeman"},
         {"noiseless", ds.noiseless}};
  if (!ds.propagators.empty()) {
    json props = json::array();
    for (const CMat& p : ds.propagators) props.push_back(to_json(p));
    j["propagators"] = std::move(props);
  } else {
    json blocks = json::array();
    for (const auto& block : ds.state_pairs) {
      json pairs = json::array();
      for (const StatePair& sp : block)
        pairs.push_back(json{{"input", to_json(sp.input)},
                             {"output", to_json(sp.output)}});
      blocks.push_back(std::move(pairs));
    }
    j["state_pairs"] = std::move(blocks);
  }
  return j;
}

inline TomographyDataset dataset_from_json(const json& j) {
  TomographyDataset ds;
  try {
    ds.n = j.at("n").get<int>();
    ds.hamiltonian = matrix_from_json(j.at("hamiltonian"));
    ds.times = j.at("times").get<std::vector<double>>();
    if (j.contains("basis") && j.at("basis").get<std::string>() != "zeeman")
      throw parse_error("dataset: snapshots must use zeeman coordinates");
    ds.noiseless = j.value("noiseless", true);
    if (j.contains("propagators")) {
      for (const auto& p : j.at("propagators"))
        ds.propagators.push_back(matrix_from_json(p));
    }
    if (j.contains("state_pairs")) {
      for (const auto& block : j.at("state_pairs")) {
        std::vector<StatePair> pairs;
        for (const auto& sp : block)
          pairs.push_back({matrix_from_json(sp.at("input")),
                           matrix_from_json(sp.at("output"))});
        ds.state_pairs.push_back(std::move(pairs));
      }
    }
  } catch (const json::exception& e) {
    throw parse_error(std::string("dataset: ") + e.what());
  }
  validate(ds);
  return ds;
}

// -- generators ---------------------------------------------------------------

namespace detail {

// Traceless N x N representative of a commutation superoperator; the trace
// part never enters the dynamics.
inline CMat hamiltonian_from_commutator(const CMat& hbar, int n) {
  CMat h = CMat::Zero(n, n);
  for (int k = 0; k < n; ++k) h += hbar.block(k * n, k * n, n, n);
  return h / static_cast<double>(n);
}

}  // namespace detail

inline json to_json(const Supergenerator& g) {
  validate(g);
  CMat hbar = g.hamiltonian_part;
  if (g.basis != BasisName::zeeman)
    hbar = change_superoperator_coordinates(hbar, make_basis(g.basis, g.n),
                                            zeeman_basis(g.n));
  return json{{"n", g.n},
              {"basis", to_string(g.basis)},
              {"hamiltonian", to_json(detail::hamiltonian_from_commutator(hbar, g.n))},
              {"relaxation", to_json(g.relaxation_part)}};
}

inline Supergenerator generator_from_json(const json& j) {
  // Fit reports embed their generator under "estimate"; accept them directly
  // so estimate output chains into decompose.
  if (!j.contains("relaxation") && j.contains("estimate"))
    return generator_from_json(j.at("estimate"));
  Supergenerator g;
  try {
    g.n = j.at("n").get<int>();
    g.basis = basis_from_string(j.at("basis").get<std::string>());
    const CMat h = matrix_from_json(j.at("hamiltonian"));
    if (h.rows() != g.n || h.cols() != g.n)
      throw parse_error("generator: hamiltonian dimension mismatch");
    CMat hbar = commutation_superoperator(h);
    if (g.basis != BasisName::zeeman)
      hbar = change_superoperator_coordinates(hbar, zeeman_basis(g.n),
                                              make_basis(g.basis, g.n));
    g.hamiltonian_part = hbar;
    g.relaxation_part = matrix_from_json(j.at("relaxation"));
  } catch (const json::exception& e) {
    throw parse_error(std::string("generator: ") + e.what());
  }
  validate(g);
  return g;
}

// -- decompositions -----------------------------------------------------------

inline json to_json(const LindbladSystem& ls) {
  json ops = json::array();
  for (const CMat& l : ls.operators) ops.push_back(to_json(l));
  return json{{"provenance", to_string(ls.provenance)},
              {"weights", ls.weights},
              {"operators", std::move(ops)}};
}

inline json to_json(const FitReport& r) {
  std::vector<double> params(r.parameters.data(),
                             r.parameters.data() + r.parameters.size());
  return json{{"method", r.method},
              {"chi_squared", r.chi_squared},
              {"penalty_at_solution", r.penalty_at_solution},
              {"iterations", r.iterations},
              {"converged", r.converged},
              {"residual_per_time", r.residual_per_time},
              {"parameters", params},
              {"estimate", to_json(r.estimate)}};
}

inline json to_json(const RelaxationDecomposition& d) {
  json systems = json::array();
  for (const LindbladSystem& ls :
       {d.t1, d.t2_nonadiabatic, d.t2_adiabatic})
    systems.push_back(to_json(ls));
  return json{{"r_t1_transition", to_json(d.r_t1_tra)},
              {"r_t1_zeeman", to_json(d.r_t1_zee)},
              {"r_t2_zeeman", to_json(d.r_t2_zee.rates)},
              {"r_t2_nonadiabatic", to_json(d.r_t2_na.rates)},
              {"r_t2_adiabatic", to_json(d.r_t2_ad.rates)},
              {"lindblad_systems", std::move(systems)},
              {"discrepancy", d.discrepancy}};
}

// -- files ---------------------------------------------------------------------

inline json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw parse_error("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw parse_error(path + ": " + e.what());
  }
}

inline void save_json(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw parse_error("cannot write " + path);
  out << j.dump(2) << '\n';
}

inline TomographyDataset load_dataset(const std::string& path) {
  return dataset_from_json(load_json(path));
}

inline Supergenerator load_generator(const std::string& path) {
  return generator_from_json(load_json(path));
}

// -- manifests ----------------------------------------------------------------

inline std::uint64_t fnv1a64(const std::string& s) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

inline std::string iso8601_utc_now() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

// Reproducibility sidecar: which command produced an output, from which
// inputs, under which effective configuration.
inline json run_manifest(const std::string& command,
                         const std::vector<std::string>& inputs,
                         const json& effective_config) {
  std::ostringstream digest;
  digest << std::hex << fnv1a64(effective_config.dump());
  return json{{"command", command},
              {"inputs", inputs},
              {"config_digest", digest.str()},
              {"version", QPT_VERSION},
              {"generated_at", iso8601_utc_now()}};
}

}  // namespace qpt
