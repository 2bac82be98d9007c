#ifndef TFDCS_QUASIPROB_HPP
#define TFDCS_QUASIPROB_HPP

#include <complex>
#include <utility>
#include <vector>

#include "tfdcs/model.hpp"
#include "tfdcs/thermal.hpp"

namespace tfdcs::quasiprob {

/// Boltzmann weights p_n = exp(-beta E_n)/Z on the truncated basis; the
/// diagonal density operator of the canonical mixed state.
struct DiagonalDensity {
  std::vector<double> weights;
  double tail_weight = 0.0;
};

/// Product density (physical tensor tilde), stored as its two factors; full
/// (n_max+1)^2 matrices are never materialized since every whole-space
/// quantity factors.
struct WholeDensity {
  DiagonalDensity physical;
  DiagonalDensity tilde;
};

DiagonalDensity density_build(const DeformedModel& model, double beta,
                              const Truncation& trunc);

/// Partial trace of |0(beta)><0(beta)| over the tilde factor: the squared
/// Schmidt coefficients, elementwise equal to density_build.
DiagonalDensity partial_trace_tilde(const thermal::ThermalVacuum& tv);

/// sum_n p_n obs_diag[n] for a diagonal observable.
double thermal_average(const DeformedModel& model,
                       const std::vector<double>& obs_diag, double beta,
                       const Truncation& trunc);

/// Husimi Q-function of the single-factor mixed state in the BG coherent
/// representation:
/// Q(|z|^2; beta) = (1/Z) [1/pFq(t)] sum_n exp(-beta E_n) t^n / rho_BG(n),
/// with t = |z|^2 cosh^2 theta.
double husimi_q(const DeformedModel& model, std::complex<double> z,
                double beta, const Truncation& trunc = Truncation());

/// ln husimi_q evaluated directly at t = |z|^2 cosh^2 theta.
double husimi_q_log_t(const DeformedModel& model, double t, double beta,
                      const Truncation& trunc = Truncation());

/// ln sum_n exp(-beta E_n) t^n / rho_BG(n), the Husimi numerator before the
/// 1/Z and 1/pFq(t) factors. Well-defined for arbitrarily large t, which the
/// full Q-function is not once the normalization series leaves its term
/// budget.
double husimi_series_log(const DeformedModel& model, double t, double beta,
                         const Truncation& trunc = Truncation());

/// Glauber P-quasi-distribution for Linear spectra:
/// P(|z|^2; beta) = (e^{beta hw} - 1) G(t e^{beta hw}) / G(t),
/// with G the family's Meijer weight and t = |z|^2 cosh^2 theta. Reports an
/// out-of-range error where the denominator weight has underflowed.
double p_function_linear(const DeformedModel& model, std::complex<double> z,
                         double beta);

/// Stieltjes reconstruction check of the P-function: the n-th moment of
/// S(t) = (e^{beta hw} - 1) G(t e^{beta hw}) against
/// [1/Gamma(a/b)] [exp(-beta E_n)/Z] rho_BG(n). Returns (lhs, rhs).
std::pair<double, double> p_moment_check(const DeformedModel& model, int n,
                                         double beta,
                                         const Truncation& trunc = Truncation());

/// Thermal average evaluated through the diagonal P-representation: the
/// moment integrals of S(t) weighted by obs_diag[n] / rho_BG(n).
double average_via_p(const DeformedModel& model,
                     const std::vector<double>& obs_diag, double beta,
                     const Truncation& trunc = Truncation());

}  // namespace tfdcs::quasiprob

#endif
