// decolab: command-line front end.
//
// Exit codes: 0 success, 2 validation error, 3 numerical failure.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "decolab/channels.hpp"
#include "decolab/entanglement.hpp"
#include "decolab/experiments.hpp"
#include "decolab/io.hpp"
#include "decolab/moments.hpp"

namespace {

using namespace decolab;
using nlohmann::json;

constexpr int kExitValidation = 2;
constexpr int kExitNumerical = 3;

double physicality_eps() {
  const char* env = std::getenv("DECOLAB_EPS");
  if (env == nullptr || *env == '\0') return kDefaultPhysicalEps;
  char* end = nullptr;
  const double v = std::strtod(env, &end);
  if (end == env || *end != '\0' || !(v >= 0.0)) {
    throw Error(ErrorKind::InvalidSpec, std::string("DECOLAB_EPS is not a non-negative number: ") + env);
  }
  return v;
}

std::vector<double> parse_numbers(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw Error(ErrorKind::InvalidSpec, "not a number: '" + item + "'");
    }
  }
  return out;
}

/// "lo:hi:n"
std::vector<double> parse_grid(const std::string& text) {
  const auto first = text.find(':');
  const auto second = text.find(':', first == std::string::npos ? first : first + 1);
  if (first == std::string::npos || second == std::string::npos) {
    throw Error(ErrorKind::InvalidSpec, "grid must be lo:hi:n, got '" + text + "'");
  }
  try {
    const double lo = std::stod(text.substr(0, first));
    const double hi = std::stod(text.substr(first + 1, second - first - 1));
    const long n = std::stol(text.substr(second + 1));
    if (n < 1 || !(lo <= hi)) throw std::invalid_argument(text);
    return uniform_grid(lo, hi, static_cast<std::size_t>(n));
  } catch (const std::logic_error&) {
    throw Error(ErrorKind::InvalidSpec, "grid must be lo:hi:n with lo <= hi and n >= 1");
  }
}

std::optional<Complex> parse_alpha(const std::string& s) {
  if (s.empty()) return std::nullopt;
  const auto v = parse_numbers(s);
  if (v.size() != 2) throw Error(ErrorKind::InvalidSpec, "--bath-alpha takes re,im");
  return make_complex(v[0], v[1]);
}

QubitPure parse_psi(const std::string& s) {
  const auto v = parse_numbers(s);
  if (v.size() != 8) {
    throw Error(ErrorKind::InvalidSpec, "--psi takes 8 numbers: re,im of alpha, beta, gamma, delta");
  }
  return QubitPure({v[0], v[1]}, {v[2], v[3]}, {v[4], v[5]}, {v[6], v[7]});
}

json optional_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

void print(const json& j) { std::cout << j.dump(2) << "\n"; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bipartite entanglement under passive (beam-splitter) decoherence"};
  app.require_subcommand(1);

  // evolve
  std::string ev_in, ev_out, ev_mode = "both", ev_alpha;
  double ev_eta_a = 1.0, ev_eta_b = 1.0, ev_phi = 0.0;
  std::size_t ev_denv = 16;
  auto* evolve = app.add_subcommand("evolve", "Damp one or both modes of a state");
  evolve->add_option("--in", ev_in, "Input state (JSON)")->required();
  evolve->add_option("--out", ev_out, "Output state (JSON)")->required();
  evolve->add_option("--eta-a", ev_eta_a, "Coupling of mode a");
  evolve->add_option("--eta-b", ev_eta_b, "Coupling of mode b");
  evolve->add_option("--phi", ev_phi, "Beam-splitter phase");
  evolve->add_option("--mode", ev_mode, "a, b or both")->check(CLI::IsMember({"a", "b", "both"}));
  evolve->add_option("--bath-alpha", ev_alpha, "Coherent bath amplitude re,im (default vacuum)");
  evolve->add_option("--d-env", ev_denv, "Bath truncation for a coherent bath");

  // witness
  std::string wi_in, wi_preset, wi_file;
  std::optional<double> wi_tol;
  auto* witness = app.add_subcommand("witness", "Moment-determinant and first-order witnesses");
  witness->add_option("--in", wi_in, "Input state (JSON)")->required();
  auto* wi_spec_opt = witness->add_option("--spec", wi_preset, "Preset name");
  witness->add_option("--spec-file", wi_file, "Index-list file (JSON)")->excludes(wi_spec_opt);
  witness->add_option("--tol", wi_tol, "Determinant tolerance (default 1e-12 * size)");

  // sweep
  std::string sw_in, sw_grid = "0:1:101", sw_plan = "both", sw_out;
  std::vector<std::string> sw_witness;
  double sw_phi = 0.0;
  auto* sweep = app.add_subcommand("sweep", "Sweep the coupling and write a CSV");
  sweep->add_option("--in", sw_in, "Input state (JSON)")->required();
  sweep->add_option("--grid", sw_grid, "lo:hi:n");
  sweep->add_option("--plan", sw_plan,
                    "a, b, both, unbalanced:<eta_b>, inverse-a or inverse-both");
  sweep->add_option("--witness", sw_witness, "Preset determinant columns");
  sweep->add_option("--phi", sw_phi, "Beam-splitter phase");
  sweep->add_option("--out", sw_out, "CSV path")->required();

  // invert
  std::string in_in, in_out;
  double in_eta = 1.0, in_phi = 0.0;
  bool in_two = false;
  auto* invert = app.add_subcommand("invert", "Apply the inverse decoherence map");
  invert->add_option("--in", in_in, "Input state (JSON)")->required();
  invert->add_option("--out", in_out, "Output preimage (JSON)");
  invert->add_option("--eta", in_eta, "Coupling")->required();
  invert->add_option("--phi", in_phi, "Beam-splitter phase");
  invert->add_flag("--two-sided", in_two, "Invert both modes (default: mode a only)");

  // search-sde
  std::size_t se_trials = 1000, se_dim = 3, se_terms = 20;
  std::uint64_t se_seed = 1;
  std::string se_out, se_grid = "0.5:1:101";
  bool se_one_sided = false;
  unsigned se_threads = 0;
  auto* search = app.add_subcommand("search-sde", "Search separable states with entangled physical preimages");
  search->add_option("--trials", se_trials, "Number of random separable states");
  search->add_option("--seed", se_seed, "Seed of the first trial");
  search->add_option("--local-dim", se_dim, "Fock truncation of each mode");
  search->add_option("--terms", se_terms, "Product terms per separable state");
  search->add_option("--grid", se_grid, "lo:hi:n");
  search->add_flag("--one-sided", se_one_sided, "Invert mode a only");
  search->add_option("--threads", se_threads, "Worker threads (0: all cores)");
  search->add_option("--out", se_out, "Hits (JSON)")->required();

  // concurrence
  std::string co_in, co_psi;
  double co_eta_a = 1.0, co_eta_b = 1.0;
  auto* conc = app.add_subcommand("concurrence", "Two-qubit concurrence, numerical and closed form");
  auto* co_in_opt = conc->add_option("--in", co_in, "Input 2x2 state (JSON)");
  conc->add_option("--psi", co_psi, "Pure state amplitudes re,im x4 (alpha, beta, gamma, delta)")
      ->excludes(co_in_opt);
  conc->add_option("--eta-a", co_eta_a, "Coupling of qubit a");
  conc->add_option("--eta-b", co_eta_b, "Coupling of qubit b");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitValidation;
  }

  try {
    const double eps = physicality_eps();

    if (*evolve) {
      const BipartiteState in = io::read_state(ev_in);
      const auto alpha = parse_alpha(ev_alpha);
      const auto damp = [&](const BipartiteState& s, double eta, Mode m) {
        return alpha ? coherent_bath_evolve(s, eta, ev_phi, *alpha, ev_denv, m)
                     : apply_channel(s, {eta, ev_phi, m, std::nullopt});
      };
      BipartiteState out = in;
      if (ev_mode == "a" || ev_mode == "both") out = damp(out, ev_eta_a, Mode::A);
      if (ev_mode == "b" || ev_mode == "both") out = damp(out, ev_eta_b, Mode::B);
      io::write_state(ev_out, out);
      const Physicality p = is_physical(out, eps);
      print({{"min_eig", p.min_eig}, {"physical", p.physical}});
    } else if (*witness) {
      const BipartiteState s = io::read_state(wi_in);
      json j;
      if (!wi_preset.empty() || !wi_file.empty()) {
        const MomentMatrixSpec spec =
            wi_file.empty() ? io::preset_spec(wi_preset) : io::spec_from_json(io::read_json_file(wi_file));
        const WitnessReport r = witness_from_det(s, spec, wi_tol.value_or(default_det_tolerance(spec)));
        j["determinant"] = {{"ordering", to_string(spec.ordering())},
                            {"value", r.value},
                            {"verdict", to_string(r.verdict)},
                            {"tolerance", r.tolerance}};
      }
      const HzWitnesses hz = hz_first_order(s);
      j["hz_first_order"] = {{"w1", hz.w1}, {"w2", hz.w2}};
      print(j);
    } else if (*sweep) {
      const BipartiteState s = io::read_state(sw_in);
      const auto grid = parse_grid(sw_grid);
      std::vector<NamedSpec> witnesses;
      for (const auto& name : sw_witness) witnesses.push_back({name, io::preset_spec(name)});
      std::vector<SweepRecord> records;
      if (sw_plan == "inverse-a" || sw_plan == "inverse-both") {
        records = inverse_sweep(s, grid, sw_phi, sw_plan == "inverse-both", witnesses, eps);
      } else {
        ModePlan plan;
        if (sw_plan == "a") plan = ModePlan::a_only();
        else if (sw_plan == "b") plan = ModePlan::b_only();
        else if (sw_plan == "both") plan = ModePlan::both();
        else if (sw_plan.rfind("unbalanced:", 0) == 0) {
          const auto v = parse_numbers(sw_plan.substr(11));
          if (v.size() != 1) throw Error(ErrorKind::InvalidSpec, "unbalanced:<eta_b>");
          plan = ModePlan::unbalanced(v[0]);
        } else {
          throw Error(ErrorKind::InvalidSpec, "unknown plan '" + sw_plan + "'");
        }
        for (double eta : grid) {
          if (!(eta >= 0.0 && eta <= 1.0)) throw Error(ErrorKind::EtaOutOfRange, "grid outside [0, 1]");
        }
        records = forward_sweep(s, grid, plan, witnesses, eps);
      }
      io::write_text_file(sw_out, io::sweep_csv(records));
    } else if (*invert) {
      const BipartiteState s = io::read_state(in_in);
      const BipartiteState pre =
          in_two ? inverse_two_sided(s, in_eta, in_phi) : inverse_damping(s, in_eta, in_phi, Mode::A);
      if (!in_out.empty()) io::write_state(in_out, pre);
      const Physicality p = is_physical(pre, eps);
      std::optional<double> en;
      if (p.physical) en = log_negativity(pre, eps).log_negativity;
      print({{"eta", in_eta}, {"min_eig", p.min_eig}, {"physical", p.physical},
             {"log_negativity", optional_json(en)}});
    } else if (*search) {
      SdeSearchOptions opt;
      opt.two_sided = !se_one_sided;
      opt.eps = eps;
      opt.threads = se_threads;
      const auto hits = sde_search({se_terms, se_dim, se_seed}, parse_grid(se_grid), se_trials, opt);
      json arr = json::array();
      for (const auto& h : hits) arr.push_back(io::hit_to_json(h));
      io::write_text_file(se_out, json{{"trials", se_trials}, {"hits", arr}}.dump(2) + "\n");
      print({{"trials", se_trials}, {"hits", hits.size()}});
    } else if (*conc) {
      json j;
      if (!co_psi.empty()) {
        const QubitPure psi = parse_psi(co_psi);
        const BipartiteState out = apply_two_sided(pure_to_state(psi), co_eta_a, co_eta_b);
        const ConcurrenceResult num = wootters_concurrence(out);
        j["numerical"] = {{"raw", num.raw}, {"value", num.value}, {"lambdas", num.lambdas}};
        j["closed_form"]["c2_unbalanced"] = c2_unbalanced(psi, co_eta_a, co_eta_b);
        if (co_eta_a == co_eta_b) j["closed_form"]["c2"] = c2_closed(psi, co_eta_a);
        if (co_eta_b == 1.0) j["closed_form"]["c1"] = c1_closed(psi, co_eta_a);
        if (psi.det_magnitude() > 1e-12) j["sde_threshold"] = optional_json(sde_threshold(psi));
      } else if (!co_in.empty()) {
        const BipartiteState out = apply_two_sided(io::read_state(co_in), co_eta_a, co_eta_b);
        const ConcurrenceResult num = wootters_concurrence(out);
        j["numerical"] = {{"raw", num.raw}, {"value", num.value}, {"lambdas", num.lambdas}};
      } else {
        throw Error(ErrorKind::InvalidSpec, "concurrence needs --in or --psi");
      }
      print(j);
    }
  } catch (const Error& e) {
    std::cerr << "decolab: " << e.what() << "\n";
    return e.is_numerical() ? kExitNumerical : kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "decolab: " << e.what() << "\n";
    return kExitNumerical;
  }
  return 0;
}
