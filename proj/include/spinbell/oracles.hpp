#pragma once

// Closed-form predictions for the Bell correlator of LMG states, used to
// cross-check the exact numerics. All correlator values are carried as log E
// so that large systems do not underflow.

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "bell.hpp"
#include "dicke.hpp"
#include "lmg.hpp"
#include "numeric.hpp"

namespace spinbell {

struct OracleValue {
  double logE = kNegInf;
  double Q = kNegInf;
  std::string valid_domain;

  double E() const { return std::exp(logE); }
};

inline OracleValue make_oracle(double logE, int L, std::string domain) {
  return {logE, q_from_logE(logE, L), std::move(domain)};
}

/// Exact gamma = 1 Dicke-state correlator: E = [C(L, m + L/2) / 2^L]^2.
inline OracleValue binomial_coherence(int L, double m) {
  if (L < 1) throw std::invalid_argument("binomial_coherence: L must be >= 1");
  const auto idx = DickeBasis(L).index_of(m);
  const double log_amp = log_binomial(L, static_cast<double>(idx)) - L * kLn2;
  return make_oracle(2.0 * log_amp, L, "exact for every Dicke state |S,m>");
}

/// Large-L Gaussian form E = 2/(pi L) exp(-4 m^2 / L).
inline OracleValue gaussian_coherence(int L, double m) {
  if (L < 2) throw std::invalid_argument("gaussian_coherence: L must be >= 2");
  return make_oracle(std::log(2.0 / (kPi * L)) - 4.0 * m * m / L, L, "|m| << L, L >> 1");
}

// Linear Q-energy relation Q = -alpha_lin E_m + beta_lin L + gamma_lin(L).
inline const double alpha_lin = 2.0 / kLn2;
inline constexpr double beta_lin = 1.0;
inline double gamma_lin(int L) { return std::log2(2.0 / (kPi * L)); }

inline double q_energy_linear(double energy, int L) {
  if (L < 2) throw std::invalid_argument("q_energy_linear: L must be >= 2");
  return -alpha_lin * energy + beta_lin * L + gamma_lin(L);
}

/// Amplitude used for |d_{m;S} d_{m;-S}| inside the thermal interference sum.
enum class ThermalAmplitude {
  binomial,  ///< exact C(L, m+L/2) / 2^L
  gaussian,  ///< sqrt(2/(pi L)) exp(-2 m^2 / L), the large-L form
};

/// Interference sum for the gamma = 1 Gibbs state,
///   E(T) = |sum_m (-1)^m exp(-E_m/T) a_m|^2 / Z^2,  Z = sum_m exp(-E_m/T),
/// with E_m the gamma = 1 parabola at field h. Even L only.
inline OracleValue thermal_sum_oracle(int L, double h, double T, ThermalAmplitude amp = ThermalAmplitude::binomial) {
  if (L < 2 || L % 2 != 0) throw std::invalid_argument("thermal_sum_oracle: requires even L >= 2");
  if (!(T > 0.0)) throw std::invalid_argument("thermal_sum_oracle: requires T > 0");
  const int S = L / 2;
  std::vector<double> boltz, terms;
  std::vector<int> sign;
  for (int m = -S; m <= S; ++m) {
    const double b = -gamma1_energy(m, h, L) / T;
    const double log_amp = amp == ThermalAmplitude::binomial ? log_binomial(L, m + S) - L * kLn2
                                                              : 0.5 * std::log(2.0 / (kPi * L)) - 2.0 * m * m / L;
    boltz.push_back(b);
    terms.push_back(b + log_amp);
    sign.push_back((m % 2 == 0) ? 1 : -1);
  }
  const double log_z = log_sum_exp(boltz);
  double peak = kNegInf;
  for (double t : terms) peak = std::max(peak, t);
  double acc = 0.0;
  for (std::size_t i = 0; i < terms.size(); ++i) acc += sign[i] * std::exp(terms[i] - peak);
  const double log_abs = safe_log(std::abs(acc));
  const double logE = log_abs == kNegInf ? kNegInf : 2.0 * (log_abs + peak - log_z);
  return make_oracle(logE, L,
                     amp == ThermalAmplitude::binomial ? "gamma = 1, even L, T > 0" : "gamma = 1, even L, T > 0, L >> 1");
}

/// Continuum (Gaussian-integral) envelope of the thermal sum.
inline OracleValue envelope_oracle(int L, double h, double T) {
  if (L < 1) throw std::invalid_argument("envelope_oracle: L must be >= 1");
  if (!(T >= 0.0)) throw std::invalid_argument("envelope_oracle: requires T >= 0");
  const double logE = std::log(kPi / 2.0) - std::log(L * (T + 1.0)) - h * h * L / (1.0 + T) -
                      kPi * kPi * L * T / (4.0 * (1.0 + T));
  return make_oracle(logE, L, "T << L");
}

/// Temperature at which the envelope crosses the classical bound; 0 once h^2 >= ln 2.
inline double t_crit(double h) {
  const double t = (kLn2 - h * h) / (kPi * kPi / 4.0 - kLn2);
  return t > 0.0 ? t : 0.0;
}

struct Tridiagonal {
  RVector diag;
  RVector off;  ///< off(k) couples entries k and k+1

  RMatrix dense() const {
    const auto n = diag.size();
    RMatrix m = diag.asDiagonal();
    for (Eigen::Index k = 0; k + 1 < n; ++k) m(k, k + 1) = m(k + 1, k) = off(k);
    return m;
  }

  RVector eigenvalues() const {
    Eigen::SelfAdjointEigenSolver<RMatrix> es;
    es.computeFromTridiagonal(diag, off, Eigen::EigenvaluesOnly);
    return es.eigenvalues();
  }
};

inline double z_of_m(double m, int L) { return 2.0 * m / L; }

inline double f_plus(double z, int L) { return std::sqrt(0.5 * (1.0 - z) * (0.5 * (1.0 + z) + 1.0 / L)); }
inline double f_minus(double z, int L) { return std::sqrt(0.5 * (1.0 + z) * (0.5 * (1.0 - z) + 1.0 / L)); }

/// gamma = 0 Hamiltonian written in the Sx eigenbasis: diagonal -(L/2) z_m^2,
/// hopping h L f_+(z_m) between m and m+1.
inline Tridiagonal sx_tridiagonal(int L, double h) {
  if (L < 2) throw std::invalid_argument("sx_tridiagonal: L must be >= 2");
  if (!std::isfinite(h)) throw std::invalid_argument("sx_tridiagonal: h must be finite");
  const double S = 0.5 * L;
  Tridiagonal t{RVector(L + 1), RVector(L)};
  for (int i = 0; i <= L; ++i) {
    const double z = z_of_m(i - S, L);
    t.diag(i) = -0.5 * L * z * z;
    if (i < L) t.off(i) = h * L * f_plus(z, L);
  }
  return t;
}

struct EffectivePotentialPoint {
  double z;
  double V;
  double kappa;
};

/// V_eff(z) = -sqrt(1 - z^2) + z^2 kappa / 2 with kappa = 1/h.
inline EffectivePotentialPoint effective_potential(double z, double h) {
  if (!(std::abs(z) <= 1.0)) throw std::invalid_argument("effective_potential: |z| must be <= 1");
  const double kappa = 1.0 / h;
  const double quad = z == 0.0 ? 0.0 : z * z * kappa / 2.0;
  return {z, -std::sqrt(1.0 - z * z) + quad, kappa};
}

/// Minima +-z0 with z0 = sqrt(1 - 1/kappa^2), present for |kappa| > 1.
inline std::optional<std::pair<double, double>> well_minima(double kappa) {
  if (!(std::abs(kappa) > 1.0)) return std::nullopt;
  const double z0 = std::sqrt(1.0 - 1.0 / (kappa * kappa));
  return std::make_pair(-z0, z0);
}

struct DoubletDiagnostics {
  double gap = 0.0;
  cplx coherence_ground;   ///< rephased to be real positive
  cplx coherence_excited;  ///< same phase applied
  std::pair<int, int> coherence_signs{0, 0};
  BellResult ground_bell;
};

/// Lowest gap and the relative sign of the GHZ coherences of the two lowest
/// eigenstates, both taken at the rotation that is optimal for the ground state.
inline DoubletDiagnostics doublet_diagnostics(const Spectrum& spec, const BellOptimizerOptions& opt = {}) {
  if (spec.size() < 2) throw std::invalid_argument("doublet_diagnostics: need at least two levels");
  DoubletDiagnostics d;
  d.gap = spec.energies[1] - spec.energies[0];
  d.ground_bell = optimize_bell_symmetric(spec.states[0], opt);
  const EulerFrame frame(spec.basis);
  const cplx c0 = frame.coherence(spec.states[0].amplitudes(), d.ground_bell.theta_opt);
  const cplx c1 = frame.coherence(spec.states[1].amplitudes(), d.ground_bell.theta_opt);
  const cplx phase = std::abs(c0) > 0.0 ? std::conj(c0) / std::abs(c0) : cplx(1.0);
  d.coherence_ground = c0 * phase;
  d.coherence_excited = c1 * phase;
  auto sgn = [](double x) { return x > 0.0 ? 1 : (x < 0.0 ? -1 : 0); };
  d.coherence_signs = {sgn(d.coherence_ground.real()), sgn(d.coherence_excited.real())};
  return d;
}

}  // namespace spinbell
