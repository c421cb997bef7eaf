// Copyright 2026 The ppovm Authors
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

// JSON encodings.
//
//   matrix   {"rows": R, "cols": C, "data": [[re, im], ...]}   row-major
//   channel  {"kind": "kraus", "dim_in": d, "dim_out": d, "ops": [matrix...]}
//            {"kind": "choi", "d": d, "matrix": matrix}
//   ppovm    {"d": d, "effects": [{"label": s, "matrix": matrix}, ...]}
//   couples  {"d": d, "couples": [{"weight": p, "anc_dim": D, "state": matrix,
//                                  "povm": [matrix...]}, ...]}
//   povm     {"effects": [{"label": s, "matrix": matrix}, ...]} or [matrix...]
//   state    matrix or {"matrix": matrix}
//   counts   {"shots": N, "seed": S, "counts": {"label": n, ...}}
//
// Doubles are written in shortest round-trip form, so decoding reproduces
// every entry bit for bit.

#ifndef PPOVM_IO_HPP
#define PPOVM_IO_HPP

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "ppovm/discrim.hpp"
#include "ppovm/matcore.hpp"
#include "ppovm/process_povm.hpp"
#include "ppovm/quantum.hpp"
#include "ppovm/tomo.hpp"

namespace ppovm::io {

using json = nlohmann::json;

// Malformed input: unreadable file, invalid JSON, or a document that does not
// follow the schema. Distinct from ppovm::Error (valid document, invalid
// physics).
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw FormatError(std::string("missing field '") + key + "'");
  }
  return j.at(key);
}

inline Eigen::Index positive_int(const json& j, const char* key) {
  const json& v = field(j, key);
  if (!v.is_number_integer() || v.get<long long>() < 1) {
    throw FormatError(std::string("field '") + key + "' must be a positive integer");
  }
  return static_cast<Eigen::Index>(v.get<long long>());
}

inline double number(const json& v, const char* what) {
  if (!v.is_number()) throw FormatError(std::string(what) + " must be a number");
  return v.get<double>();
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Matrices
// ---------------------------------------------------------------------------

inline json to_json(const ComplexMatrix& m) {
  json data = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      // + 0.0 turns -0.0 into 0.0
      data.push_back({m(r, c).real() + 0.0, m(r, c).imag() + 0.0});
    }
  }
  return json{{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(data)}};
}

inline ComplexMatrix matrix_from_json(const json& j) {
  const Eigen::Index rows = detail::positive_int(j, "rows");
  const Eigen::Index cols = detail::positive_int(j, "cols");
  const json& data = detail::field(j, "data");
  if (!data.is_array() || static_cast<Eigen::Index>(data.size()) != rows * cols) {
    throw FormatError("matrix 'data' must hold rows*cols entries");
  }
  ComplexMatrix m(rows, cols);
  for (Eigen::Index k = 0; k < rows * cols; ++k) {
    const json& e = data[static_cast<std::size_t>(k)];
    if (!e.is_array() || e.size() != 2) throw FormatError("matrix entry must be [re, im]");
    m(k / cols, k % cols) = cplx(detail::number(e[0], "re"), detail::number(e[1], "im"));
  }
  if (!all_finite(m)) throw FormatError("matrix has non-finite entries");
  return m;
}

inline json vector_to_json(const ComplexVector& v) {
  json data = json::array();
  for (Eigen::Index k = 0; k < v.size(); ++k) data.push_back({v(k).real(), v(k).imag()});
  return data;
}

// ---------------------------------------------------------------------------
// Channels
// ---------------------------------------------------------------------------

inline json to_json(const KrausChannel& ch) {
  json ops = json::array();
  for (const auto& a : ch.kraus()) ops.push_back(to_json(a));
  return json{{"kind", "kraus"}, {"dim_in", ch.dim_in()}, {"dim_out", ch.dim_out()}, {"ops", ops}};
}

inline json choi_to_json(const ProcessState& omega) {
  return json{{"kind", "choi"}, {"d", omega.d()}, {"matrix", to_json(omega.matrix())}};
}

struct ChannelDoc {
  std::string kind;  // "kraus" or "choi"
  std::vector<ComplexMatrix> ops;
  Eigen::Index d = 0;
  ComplexMatrix choi;
};

inline ChannelDoc channel_doc_from_json(const json& j) {
  const json& kind = detail::field(j, "kind");
  if (!kind.is_string()) throw FormatError("channel 'kind' must be a string");
  ChannelDoc doc;
  doc.kind = kind.get<std::string>();
  if (doc.kind == "kraus") {
    const Eigen::Index din = detail::positive_int(j, "dim_in");
    const Eigen::Index dout = detail::positive_int(j, "dim_out");
    const json& ops = detail::field(j, "ops");
    if (!ops.is_array() || ops.empty()) throw FormatError("'ops' must be a non-empty array");
    for (const auto& o : ops) {
      doc.ops.push_back(matrix_from_json(o));
      if (doc.ops.back().rows() != dout || doc.ops.back().cols() != din) {
        throw FormatError("Kraus operator shape does not match dim_out x dim_in");
      }
    }
    doc.d = din;
  } else if (doc.kind == "choi") {
    doc.d = detail::positive_int(j, "d");
    doc.choi = matrix_from_json(detail::field(j, "matrix"));
    if (doc.choi.rows() != doc.d * doc.d || doc.choi.cols() != doc.d * doc.d) {
      throw FormatError("choi matrix must be d^2 x d^2");
    }
  } else {
    throw FormatError("unknown channel kind '" + doc.kind + "'");
  }
  return doc;
}

// Kraus form of either encoding (Choi documents are converted and must be
// valid process states).
inline KrausChannel channel_from_doc(const ChannelDoc& doc) {
  if (doc.kind == "kraus") return KrausChannel(doc.ops);
  return channel_of_choi(ProcessState(doc.d, doc.choi));
}

inline KrausChannel channel_from_json(const json& j) { return channel_from_doc(channel_doc_from_json(j)); }

// A unitary may be given as a bare matrix or as a single-operator Kraus
// channel.
inline ComplexMatrix unitary_from_json(const json& j) {
  if (j.is_object() && j.contains("kind")) {
    const ChannelDoc doc = channel_doc_from_json(j);
    if (doc.kind != "kraus" || doc.ops.size() != 1) {
      throw FormatError("unitary channel must be a Kraus channel with one operator");
    }
    return doc.ops.front();
  }
  return matrix_from_json(j);
}

// ---------------------------------------------------------------------------
// States, POVMs, PPOVMs, couples
// ---------------------------------------------------------------------------

inline ComplexMatrix state_from_json(const json& j) {
  if (j.is_object() && j.contains("matrix")) return matrix_from_json(j.at("matrix"));
  return matrix_from_json(j);
}

inline json labeled_effects_to_json(const std::vector<std::string>& labels,
                                    const std::vector<ComplexMatrix>& mats) {
  json effects = json::array();
  for (std::size_t k = 0; k < mats.size(); ++k) {
    effects.push_back({{"label", labels[k]}, {"matrix", to_json(mats[k])}});
  }
  return effects;
}

inline std::pair<std::vector<std::string>, std::vector<ComplexMatrix>> labeled_effects_from_json(
    const json& arr, const char* prefix) {
  if (!arr.is_array() || arr.empty()) throw FormatError("'effects' must be a non-empty array");
  std::vector<std::string> labels;
  std::vector<ComplexMatrix> mats;
  for (std::size_t k = 0; k < arr.size(); ++k) {
    const json& e = arr[k];
    if (e.is_object() && e.contains("matrix")) {
      labels.push_back(e.contains("label") && e.at("label").is_string() ? e.at("label").get<std::string>()
                                                                       : prefix + std::to_string(k));
      mats.push_back(matrix_from_json(e.at("matrix")));
    } else {
      labels.push_back(prefix + std::to_string(k));
      mats.push_back(matrix_from_json(e));
    }
  }
  return {std::move(labels), std::move(mats)};
}

inline json povm_to_json(const Povm& povm) {
  return json{{"effects", labeled_effects_to_json(povm.labels(), povm.matrices())}};
}

inline std::pair<std::vector<std::string>, std::vector<ComplexMatrix>> povm_from_json(const json& j) {
  if (j.is_array()) return labeled_effects_from_json(j, "F");
  return labeled_effects_from_json(detail::field(j, "effects"), "F");
}

inline json to_json(const Ppovm& pp) {
  return json{{"d", pp.d()}, {"effects", labeled_effects_to_json(pp.labels(), pp.matrices())}};
}

struct PpovmDoc {
  Eigen::Index d = 0;
  std::vector<ProcessEffect> effects;
};

inline PpovmDoc ppovm_doc_from_json(const json& j) {
  PpovmDoc doc;
  doc.d = detail::positive_int(j, "d");
  auto [labels, mats] = labeled_effects_from_json(detail::field(j, "effects"), "M");
  for (std::size_t k = 0; k < mats.size(); ++k) {
    if (mats[k].rows() != doc.d * doc.d || mats[k].cols() != doc.d * doc.d) {
      throw FormatError("process effect must be d^2 x d^2");
    }
    doc.effects.push_back({labels[k], std::move(mats[k])});
  }
  return doc;
}

inline json couples_to_json(const std::vector<TestCouple>& couples) {
  json arr = json::array();
  for (const auto& c : couples) {
    json povm = json::array();
    for (const auto& f : c.povm().matrices()) povm.push_back(to_json(f));
    json item{{"weight", c.weight()},
              {"anc_dim", c.anc_dim()},
              {"state", to_json(c.test_state().matrix())},
              {"povm", povm},
              {"labels", c.povm().labels()}};
    if (!c.name().empty()) item["name"] = c.name();
    arr.push_back(std::move(item));
  }
  return json{{"d", couples.empty() ? 0 : couples.front().d()}, {"couples", arr}};
}

struct CouplesDoc {
  Eigen::Index d = 0;
  std::vector<TestCouple> couples;
};

// Parses and constructs the couples; physical invariant violations surface as
// ppovm::Error.
inline CouplesDoc couples_from_json(const json& j) {
  CouplesDoc doc;
  doc.d = detail::positive_int(j, "d");
  const json& arr = detail::field(j, "couples");
  if (!arr.is_array() || arr.empty()) throw FormatError("'couples' must be a non-empty array");
  for (const auto& c : arr) {
    const double weight = detail::number(detail::field(c, "weight"), "weight");
    const Eigen::Index anc = detail::positive_int(c, "anc_dim");
    ComplexMatrix state = matrix_from_json(detail::field(c, "state"));
    const json& povm = detail::field(c, "povm");
    if (!povm.is_array() || povm.empty()) throw FormatError("'povm' must be a non-empty array");
    std::vector<ComplexMatrix> effects;
    for (const auto& f : povm) effects.push_back(matrix_from_json(f));
    std::vector<std::string> labels;
    if (c.contains("labels")) {
      if (!c.at("labels").is_array()) throw FormatError("'labels' must be an array of strings");
      for (const auto& l : c.at("labels")) {
        if (!l.is_string()) throw FormatError("'labels' must be an array of strings");
        labels.push_back(l.get<std::string>());
      }
    }
    std::string name = c.contains("name") && c.at("name").is_string() ? c.at("name").get<std::string>() : "";
    doc.couples.emplace_back(weight, anc, doc.d, DensityOperator(std::move(state)),
                             Povm(std::move(effects), std::move(labels)), std::move(name));
  }
  return doc;
}

// ---------------------------------------------------------------------------
// Counts and reports
// ---------------------------------------------------------------------------

inline json to_json(const ShotRecord& rec) {
  json counts = json::object();
  for (const auto& [label, n] : rec.counts) counts[label] = n;
  return json{{"shots", rec.shots}, {"seed", rec.seed}, {"generator", rec.generator}, {"counts", counts}};
}

inline ShotRecord shot_record_from_json(const json& j) {
  ShotRecord rec;
  const json& shots = detail::field(j, "shots");
  if (!shots.is_number_unsigned()) throw FormatError("'shots' must be a non-negative integer");
  rec.shots = shots.get<std::uint64_t>();
  if (j.contains("seed")) {
    if (!j.at("seed").is_number_unsigned()) throw FormatError("'seed' must be a non-negative integer");
    rec.seed = j.at("seed").get<std::uint64_t>();
  }
  if (j.contains("generator") && j.at("generator").is_string()) rec.generator = j.at("generator").get<std::string>();
  const json& counts = detail::field(j, "counts");
  if (!counts.is_object()) throw FormatError("'counts' must be an object");
  for (const auto& [label, n] : counts.items()) {
    if (!n.is_number_unsigned()) throw FormatError("count for '" + label + "' must be a non-negative integer");
    rec.counts[label] = n.get<std::uint64_t>();
  }
  return rec;
}

inline json to_json(const IcReport& ic) {
  return json{{"complete", ic.complete},
              {"deficiency", ic.deficiency},
              {"difference_rank", ic.difference_rank},
              {"difference_dim", ic.difference_dim},
              {"span_rank", ic.span_rank}};
}

inline json to_json(const TomographyResult& r) {
  json out{{"d", r.omega_projected.d()},
           {"omega_raw", to_json(r.omega_raw)},
           {"omega_projected", to_json(r.omega_projected.matrix())},
           {"residual", r.residual},
           {"ic", to_json(r.ic)},
           {"ic_deficient", r.ic_deficient},
           {"projection_iterations", r.projection_iterations},
           {"projection_converged", r.projection_converged}};
  out["hs_error"] = r.hs_error ? json(*r.hs_error) : json(nullptr);
  return out;
}

inline json to_json(const DiscriminationPlan& plan) {
  json out{{"probe", vector_to_json(plan.probe)},
           {"povm", povm_to_json(plan.povm)},
           {"ppovm", to_json(plan.ppovm)},
           {"perfect", plan.perfect}};
  out["error_rates"] = {plan.error_rates.first, plan.error_rates.second};
  return out;
}

// ---------------------------------------------------------------------------
// Files
// ---------------------------------------------------------------------------

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw FormatError("'" + path + "': " + e.what());
  }
}

inline void write_json_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw FormatError("cannot write '" + path + "'");
  out << j.dump(2) << '\n';
}

}  // namespace ppovm::io

#endif  // PPOVM_IO_HPP
