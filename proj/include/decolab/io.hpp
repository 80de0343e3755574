#pragma once

// File formats shared by the command-line tool.
//
// State file:  { "dims": [d_a, d_b], "rho": [[re, im], ...] }   (row-major)
// Sweep CSV:   eta,min_eig,log_negativity,concurrence,det_<name>...
//              absent values are empty fields; numbers use 17 significant digits.
// Spec file:   { "ordering": "NOM_A", "indices": [[1,0,0], [0,0,1], ...] }

#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "decolab/experiments.hpp"
#include "decolab/fock.hpp"
#include "decolab/moments.hpp"

namespace decolab::io {

using nlohmann::json;

inline json state_to_json(const BipartiteState& s) {
  json rho = json::array();
  const ComplexMatrix& m = s.rho();
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) rho.push_back({m(r, c).real(), m(r, c).imag()});
  return {{"dims", {s.dims().a, s.dims().b}}, {"rho", std::move(rho)}};
}

inline BipartiteState state_from_json(const json& j) {
  try {
    const auto dims_arr = j.at("dims");
    if (!dims_arr.is_array() || dims_arr.size() != 2) {
      throw Error(ErrorKind::Io, "state: \"dims\" must be [d_a, d_b]");
    }
    const ModeDims dims(dims_arr[0].get<std::size_t>(), dims_arr[1].get<std::size_t>());
    const auto& rho = j.at("rho");
    const auto n = static_cast<Eigen::Index>(dims.total());
    if (!rho.is_array() || rho.size() != static_cast<std::size_t>(n * n)) {
      throw Error(ErrorKind::DimensionMismatch,
                  "state: \"rho\" must hold (d_a*d_b)^2 = " + std::to_string(n * n) + " entries");
    }
    ComplexMatrix m(n, n);
    for (Eigen::Index k = 0; k < n * n; ++k) {
      const auto& e = rho[static_cast<std::size_t>(k)];
      if (!e.is_array() || e.size() != 2) throw Error(ErrorKind::Io, "state: entries are [re, im]");
      m(k / n, k % n) = make_complex(e[0].get<double>(), e[1].get<double>());
    }
    return BipartiteState(std::move(m), dims);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::Io, std::string("state: ") + e.what());
  }
}

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::Io, path + ": " + e.what());
  }
}

inline void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::Io, "cannot write " + path);
  out << text;
}

inline BipartiteState read_state(const std::string& path) { return state_from_json(read_json_file(path)); }

inline void write_state(const std::string& path, const BipartiteState& s) {
  write_text_file(path, state_to_json(s).dump(2) + "\n");
}

inline std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline std::string sweep_csv(const std::vector<SweepRecord>& records) {
  std::ostringstream os;
  os << "eta,min_eig,log_negativity,concurrence";
  if (!records.empty())
    for (const auto& [name, v] : records.front().det_values) os << ",det_" << name;
  os << "\n";
  for (const auto& r : records) {
    os << format_number(r.eta) << ',' << format_number(r.min_eig) << ',';
    if (r.log_negativity) os << format_number(*r.log_negativity);
    os << ',';
    if (r.concurrence) os << format_number(*r.concurrence);
    for (const auto& [name, v] : r.det_values) os << ',' << format_number(v);
    os << "\n";
  }
  return os.str();
}

inline Ordering ordering_from_string(const std::string& s) {
  if (s == "GENERAL_SV") return Ordering::GeneralSV;
  if (s == "NOM_A") return Ordering::NomA;
  if (s == "NOM_B") return Ordering::NomB;
  if (s == "NOM_AB") return Ordering::NomAB;
  throw Error(ErrorKind::InvalidSpec, "unknown ordering '" + s + "'");
}

inline MomentMatrixSpec spec_from_json(const json& j) {
  try {
    const Ordering ord = ordering_from_string(j.at("ordering").get<std::string>());
    const auto& idx = j.at("indices");
    if (ord == Ordering::GeneralSV) {
      std::vector<MultiIndex4> v;
      for (const auto& e : idx) {
        if (e.size() != 4) throw Error(ErrorKind::InvalidSpec, "GENERAL_SV indices have 4 components");
        v.push_back({e[0].get<std::size_t>(), e[1].get<std::size_t>(), e[2].get<std::size_t>(),
                     e[3].get<std::size_t>()});
      }
      return MomentMatrixSpec::general(std::move(v));
    }
    std::vector<MultiIndex3> v;
    for (const auto& e : idx) {
      if (e.size() != 3) throw Error(ErrorKind::InvalidSpec, "NOM indices have 3 components");
      v.push_back({e[0].get<std::size_t>(), e[1].get<std::size_t>(), e[2].get<std::size_t>()});
    }
    return MomentMatrixSpec::nom(ord, std::move(v));
  } catch (const json::exception& e) {
    throw Error(ErrorKind::InvalidSpec, std::string("spec: ") + e.what());
  }
}

/// Named presets: the pure two-qubit index sets and the first-order grades.
inline MomentMatrixSpec preset_spec(const std::string& name) {
  if (name == "qubit-d1") return qubit_specs::d1();
  if (name == "qubit-d2") return qubit_specs::d2();
  if (name == "qubit-d3") return qubit_specs::d3();
  if (name == "nom-a-order1") return MomentMatrixSpec::nom(Ordering::NomA, graded_indices3(1));
  if (name == "nom-a-order2") return MomentMatrixSpec::nom(Ordering::NomA, graded_indices3(2));
  throw Error(ErrorKind::InvalidSpec, "unknown preset '" + name +
                                          "' (qubit-d1, qubit-d2, qubit-d3, nom-a-order1, nom-a-order2)");
}

inline json hit_to_json(const SdeHit& h) {
  return {{"seed", h.seed},
          {"eta", h.eta},
          {"preimage_min_eig", h.preimage_min_eig},
          {"preimage_log_neg", h.preimage_log_neg},
          {"state", state_to_json(h.state)}};
}

}  // namespace decolab::io
