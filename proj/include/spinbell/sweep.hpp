#pragma once

// Parameter sweeps behind the command-line tool. Each run_* function turns a
// resolved RunConfig into a Table whose rows follow grid order, independent of
// how many workers computed them.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "bell.hpp"
#include "format.hpp"
#include "lattice.hpp"
#include "lmg.hpp"
#include "oracles.hpp"
#include "parallel.hpp"

namespace spinbell {

inline constexpr int kSchemaVersion = 1;

#ifdef SPINBELL_VERSION
inline const std::string kToolVersion = SPINBELL_VERSION;
#else
inline const std::string kToolVersion = "unknown";
#endif

/// Evenly spaced grid: `steps` points from min to max inclusive.
struct Grid {
  double min = 0.0;
  double max = 0.0;
  int steps = 1;

  std::vector<double> values() const {
    if (steps < 1) throw std::invalid_argument("Grid: steps must be >= 1");
    if (!std::isfinite(min) || !std::isfinite(max)) throw std::invalid_argument("Grid: bounds must be finite");
    if (steps > 1 && !(max > min)) throw std::invalid_argument("Grid: max must exceed min when steps > 1");
    std::vector<double> v(static_cast<std::size_t>(steps));
    for (int i = 0; i < steps; ++i) v[static_cast<std::size_t>(i)] = steps == 1 ? min : min + (max - min) * i / (steps - 1);
    if (steps > 1) v.back() = max;
    return v;
  }

  bool operator==(const Grid&) const = default;
};

inline const std::vector<std::string> kCommands = {"eigenstates", "thermal-map", "thermal-cuts", "alpha-sweep",
                                                   "disorder",    "oracle",      "validate"};

struct RunConfig {
  std::string command;
  std::vector<int> L;
  std::vector<double> gamma;
  Grid h{0.0, 1.5, 301};
  Grid T{0.0, 0.6, 61};
  Grid alpha{0.0, 3.0, 13};
  double h_cut = 0.04;   ///< fixed field of the thermal-cuts T cut
  double T_cut = 0.025;  ///< fixed temperature of the thermal-cuts h cut
  std::vector<std::string> kind;
  std::vector<std::string> dist;
  std::vector<double> V;
  int samples = 100;
  std::uint64_t seed = kDefaultSeed;
  unsigned threads = 0;
  std::string out = ".";
  std::string suite = "all";  ///< validate only: all | properties | acceptance
  double tol_scale = 1.0;     ///< validate only: multiplies every tolerance

  bool operator==(const RunConfig&) const = default;
};

inline bool is_command(const std::string& c) {
  for (const auto& k : kCommands)
    if (k == c) return true;
  return false;
}

/// Fills per-command defaults for the list-valued fields left empty and checks
/// the result.
inline RunConfig resolve_config(RunConfig cfg) {
  if (!is_command(cfg.command)) throw std::invalid_argument("unknown command '" + cfg.command + "'");
  const std::string& c = cfg.command;
  if (cfg.L.empty()) {
    if (c == "eigenstates") cfg.L = {4};
    else if (c == "thermal-map") cfg.L = {40};
    else if (c == "thermal-cuts") cfg.L = {8, 16, 40};
    else if (c == "oracle") cfg.L = {4, 8, 16, 40};
    else cfg.L = {8};
  }
  if (cfg.gamma.empty()) {
    if (c == "thermal-map" || c == "alpha-sweep") cfg.gamma = {1.0, 0.0, -1.0};
    else if (c == "disorder") cfg.gamma = {1.0, -1.0};
    else cfg.gamma = {1.0};
  }
  if (cfg.kind.empty()) cfg.kind = {"diagonal", "offdiagonal"};
  if (cfg.dist.empty()) cfg.dist = {"p1", "p2"};
  if (cfg.V.empty()) cfg.V = Grid{0.0, 1.0, 21}.values();

  for (int L : cfg.L) {
    const int hi = (c == "alpha-sweep" || c == "disorder") ? kMaxDenseSpins : 64;
    if (L < 2 || L > hi) throw std::invalid_argument("L = " + std::to_string(L) + " outside [2, " + std::to_string(hi) + "]");
  }
  for (double g : cfg.gamma)
    if (!std::isfinite(g)) throw std::invalid_argument("gamma must be finite");
  for (const auto& k : cfg.kind) (void)parse_disorder_kind(k);
  for (const auto& d : cfg.dist) (void)parse_noise_dist(d);
  for (double v : cfg.V)
    if (!(v >= 0.0) || !std::isfinite(v)) throw std::invalid_argument("V values must be finite and >= 0");
  if (cfg.samples < 1) throw std::invalid_argument("samples must be >= 1");
  if (!(cfg.T.min >= 0.0)) throw std::invalid_argument("temperatures must be >= 0");
  if (!(cfg.alpha.min >= 0.0)) throw std::invalid_argument("alpha must be >= 0");
  if (!std::isfinite(cfg.h_cut) || !(cfg.T_cut >= 0.0)) throw std::invalid_argument("invalid cut values");
  if (cfg.suite != "all" && cfg.suite != "properties" && cfg.suite != "acceptance")
    throw std::invalid_argument("suite must be all|properties|acceptance");
  if (!(cfg.tol_scale >= 0.0)) throw std::invalid_argument("tol-scale must be >= 0");
  (void)cfg.h.values();
  (void)cfg.T.values();
  (void)cfg.alpha.values();
  return cfg;
}

namespace detail {

inline std::string fd(double x) { return format_double(x); }

}  // namespace detail

inline BellOptimizerOptions bell_options(const RunConfig& cfg) {
  BellOptimizerOptions o;
  o.seed = cfg.seed;
  return o;
}

inline LocalOptimizerOptions local_options(const RunConfig& cfg) {
  LocalOptimizerOptions o;
  o.seed = cfg.seed;
  return o;
}

/// Eigenstate sweep: every level v of every (L, gamma, h).
inline Table run_eigenstates(const RunConfig& cfg) {
  Table t{{"L", "gamma", "h", "v", "energy", "mz", "E", "logE", "Q", "beta", "psi", "Q_binomial", "Q_gaussian"}, {}};
  struct Point {
    int L;
    double gamma, h;
  };
  std::vector<Point> pts;
  for (int L : cfg.L)
    for (double g : cfg.gamma)
      for (double h : cfg.h.values()) pts.push_back({L, g, h});
  std::vector<std::vector<std::vector<std::string>>> blocks(pts.size());
  parallel_for(pts.size(), resolve_threads(cfg.threads), [&](std::size_t i) {
    const auto& p = pts[i];
    const Spectrum spec = solve_lmg({p.L, p.gamma, p.h});
    for (std::size_t v = 0; v < spec.size(); ++v) {
      const BellResult r = optimize_bell_symmetric(spec.states[v], bell_options(cfg));
      std::string qb = "nan", qg = "nan";
      if (p.gamma == 1.0) {
        const double m = std::round(spec.magnetization[v] + 0.5 * p.L) - 0.5 * p.L;
        qb = detail::fd(binomial_coherence(p.L, m).Q);
        qg = detail::fd(gaussian_coherence(p.L, m).Q);
      }
      blocks[i].push_back({format_int(p.L), detail::fd(p.gamma), detail::fd(p.h), format_int(static_cast<std::int64_t>(v)),
                           detail::fd(spec.energies[v]), detail::fd(spec.magnetization[v]), detail::fd(r.E), detail::fd(r.logE),
                           detail::fd(r.Q), detail::fd(r.theta_opt.beta), detail::fd(r.theta_opt.psi), qb, qg});
    }
  });
  for (auto& b : blocks)
    for (auto& r : b) t.add_row(std::move(r));
  return t;
}

namespace detail {

struct ThermalPoint {
  int L;
  double gamma, h, T;
  std::size_t spectrum;  ///< index into the spectrum cache
};

/// Solves each distinct (L, gamma, h) once, then evaluates the thermal points.
inline std::vector<BellResult> thermal_results(const RunConfig& cfg, const std::vector<ThermalPoint>& pts,
                                               const std::vector<LmgParams>& models) {
  std::vector<Spectrum> spectra(models.size());
  const unsigned threads = resolve_threads(cfg.threads);
  parallel_for(models.size(), threads, [&](std::size_t i) { spectra[i] = solve_lmg(models[i]); });
  std::vector<BellResult> out(pts.size());
  parallel_for(pts.size(), threads, [&](std::size_t i) {
    out[i] = thermal_bell(gibbs_state(spectra[pts[i].spectrum], pts[i].T), bell_options(cfg));
  });
  return out;
}

}  // namespace detail

/// Thermal correlator on the full (h, T) grid.
inline Table run_thermal_map(const RunConfig& cfg) {
  Table t{{"L", "gamma", "h", "T", "E", "Q"}, {}};
  std::vector<LmgParams> models;
  std::vector<detail::ThermalPoint> pts;
  for (int L : cfg.L)
    for (double g : cfg.gamma)
      for (double h : cfg.h.values()) {
        models.push_back({L, g, h});
        for (double T : cfg.T.values()) pts.push_back({L, g, h, T, models.size() - 1});
      }
  const auto res = detail::thermal_results(cfg, pts, models);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const auto& p = pts[i];
    t.add_row({format_int(p.L), detail::fd(p.gamma), detail::fd(p.h), detail::fd(p.T), detail::fd(res[i].E), detail::fd(res[i].Q)});
  }
  return t;
}

/// Two cuts per (L, gamma): Q(T) at h = h_cut and Q(h) at T = T_cut, with the
/// closed-form predictions alongside for gamma = 1 and even L.
inline Table run_thermal_cuts(const RunConfig& cfg) {
  Table t{{"cut", "L", "gamma", "h", "T", "E", "Q", "Q_sum", "Q_sum_gauss", "Q_env"}, {}};
  std::vector<LmgParams> models;
  std::vector<detail::ThermalPoint> pts;
  std::vector<std::string> cut;
  for (int L : cfg.L)
    for (double g : cfg.gamma) {
      models.push_back({L, g, cfg.h_cut});
      for (double T : cfg.T.values()) {
        pts.push_back({L, g, cfg.h_cut, T, models.size() - 1});
        cut.push_back("T");
      }
      for (double h : cfg.h.values()) {
        models.push_back({L, g, h});
        pts.push_back({L, g, h, cfg.T_cut, models.size() - 1});
        cut.push_back("h");
      }
    }
  const auto res = detail::thermal_results(cfg, pts, models);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const auto& p = pts[i];
    std::string qs = "nan", qsg = "nan", qe = "nan";
    if (p.gamma == 1.0 && p.L % 2 == 0) {
      if (p.T > 0.0) {
        qs = detail::fd(thermal_sum_oracle(p.L, p.h, p.T).Q);
        qsg = detail::fd(thermal_sum_oracle(p.L, p.h, p.T, ThermalAmplitude::gaussian).Q);
      }
      qe = detail::fd(envelope_oracle(p.L, p.h, p.T).Q);
    }
    t.add_row({cut[i], format_int(p.L), detail::fd(p.gamma), detail::fd(p.h), detail::fd(p.T), detail::fd(res[i].E),
               detail::fd(res[i].Q), qs, qsg, qe});
  }
  return t;
}

/// gamma = 0 is run at 1e-3 so that the ground doublet is split.
inline double alpha_sweep_gamma(double gamma) { return gamma == 0.0 ? 1e-3 : gamma; }

/// Power-law chain ground-state correlator over alpha, normalized to alpha = 0.
inline Table run_alpha_sweep(const RunConfig& cfg) {
  Table t{{"L", "gamma", "alpha", "Q", "Q_over_Q0", "E"}, {}};
  struct Point {
    int L;
    double gamma, alpha;
    std::size_t ref;
  };
  std::vector<Point> pts;
  std::vector<Point> refs;
  for (int L : cfg.L)
    for (double g : cfg.gamma) {
      const double ge = alpha_sweep_gamma(g);
      refs.push_back({L, ge, 0.0, 0});
      for (double a : cfg.alpha.values()) pts.push_back({L, ge, a, refs.size() - 1});
    }
  const unsigned threads = resolve_threads(cfg.threads);
  auto solve = [&](const Point& p) {
    return optimize_bell_local(ground_state(build_lattice_hamiltonian(power_law_params(p.L, p.gamma, p.alpha))).state,
                               local_options(cfg));
  };
  std::vector<BellResult> ref_res(refs.size()), res(pts.size());
  parallel_for(refs.size() + pts.size(), threads, [&](std::size_t i) {
    if (i < refs.size()) ref_res[i] = solve(refs[i]);
    else res[i - refs.size()] = solve(pts[i - refs.size()]);
  });
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const auto& p = pts[i];
    const double q0 = ref_res[p.ref].Q;
    t.add_row({format_int(p.L), detail::fd(p.gamma), detail::fd(p.alpha), detail::fd(res[i].Q), detail::fd(res[i].Q / q0),
               detail::fd(res[i].E)});
  }
  return t;
}

/// Disorder ensembles on the all-to-all chain at zero field.
inline Table run_disorder(const RunConfig& cfg) {
  Table t{{"L", "gamma", "kind", "dist", "V", "n_samples", "mean_rel", "std_rel", "seed"}, {}};
  const unsigned threads = resolve_threads(cfg.threads);
  for (int L : cfg.L)
    for (double g : cfg.gamma) {
      const LatticeParams clean = power_law_params(L, g, 0.0);
      const double q_clean = ground_bell_q(clean, local_options(cfg));
      if (!(q_clean > 0.0))
        throw std::domain_error("disorder: clean Q = " + format_double(q_clean) + " <= 0 at L = " + std::to_string(L) +
                                ", gamma = " + format_double(g) + "; the relative change is undefined there");
      for (const auto& k : cfg.kind)
        for (const auto& d : cfg.dist)
          for (double V : cfg.V) {
            const DisorderSpec spec{parse_disorder_kind(k), parse_noise_dist(d), V, cfg.samples, cfg.seed};
            const DisorderResult r = disorder_ensemble(clean, spec, threads, q_clean, local_options(cfg));
            t.add_row({format_int(L), detail::fd(g), to_string(spec.kind), to_string(spec.dist), detail::fd(V),
                       format_int(cfg.samples), detail::fd(r.mean_rel), detail::fd(r.std_rel), std::to_string(cfg.seed)});
          }
    }
  return t;
}

/// Closed-form gamma = 1 predictions per Dicke level at h = 0.
inline Table run_oracle(const RunConfig& cfg) {
  Table t{{"L", "m", "energy", "E_binomial", "Q_binomial", "Q_gaussian", "Q_linear"}, {}};
  for (int L : cfg.L) {
    const DickeBasis basis(L);
    for (Eigen::Index i = 0; i < basis.dim(); ++i) {
      const double m = basis.m(i);
      const double e = gamma1_energy(m, 0.0, L);
      const OracleValue b = binomial_coherence(L, m);
      t.add_row({format_int(L), detail::fd(m), detail::fd(e), detail::fd(b.E()), detail::fd(b.Q),
                 detail::fd(gaussian_coherence(L, m).Q), detail::fd(q_energy_linear(e, L))});
    }
  }
  return t;
}

/// Dispatches the sweep commands (everything except validate).
inline Table run_sweep(const RunConfig& cfg) {
  const std::string& c = cfg.command;
  if (c == "eigenstates") return run_eigenstates(cfg);
  if (c == "thermal-map") return run_thermal_map(cfg);
  if (c == "thermal-cuts") return run_thermal_cuts(cfg);
  if (c == "alpha-sweep") return run_alpha_sweep(cfg);
  if (c == "disorder") return run_disorder(cfg);
  if (c == "oracle") return run_oracle(cfg);
  throw std::invalid_argument("run_sweep: '" + c + "' is not a sweep command");
}

/// Expected row count of a resolved sweep config (product of grid cardinalities).
inline std::size_t expected_rows(const RunConfig& cfg) {
  const auto nL = cfg.L.size(), ng = cfg.gamma.size();
  const auto nh = static_cast<std::size_t>(cfg.h.steps), nT = static_cast<std::size_t>(cfg.T.steps);
  const std::string& c = cfg.command;
  if (c == "eigenstates") {
    std::size_t levels = 0;
    for (int L : cfg.L) levels += static_cast<std::size_t>(L + 1);
    return levels * ng * nh;
  }
  if (c == "thermal-map") return nL * ng * nh * nT;
  if (c == "thermal-cuts") return nL * ng * (nh + nT);
  if (c == "alpha-sweep") return nL * ng * static_cast<std::size_t>(cfg.alpha.steps);
  if (c == "disorder") return nL * ng * cfg.kind.size() * cfg.dist.size() * cfg.V.size();
  if (c == "oracle") {
    std::size_t n = 0;
    for (int L : cfg.L) n += static_cast<std::size_t>(L + 1);
    return n;
  }
  return 0;
}

}  // namespace spinbell
