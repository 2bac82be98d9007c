#ifndef TFDCS_COHERENT_HPP
#define TFDCS_COHERENT_HPP

#include <complex>
#include <functional>
#include <utility>
#include <vector>

#include "tfdcs/model.hpp"

namespace tfdcs::coherent {

enum class CsKind { BG, KP };

/// Thermal coherent state on the truncated Fock basis. Coefficients are
/// c_n = [z cosh(theta)]^n / sqrt(rho_kind(n) N) with N the kind-appropriate
/// hypergeometric normalization evaluated at |z|^2 cosh^2(theta).
struct ThermalCoherentState {
  CsKind kind = CsKind::BG;
  std::complex<double> z;
  double beta = 0.0;
  std::vector<std::complex<double>> coeffs;
  double norm_log = 0.0;
  double tail_weight = 0.0;
};

/// Product state (physical tensor tilde) with labels z and sigma_tilde.
struct TwoModeState {
  Eigen::MatrixXcd coeffs;  // rank-1 outer product, rows physical, cols tilde
  ThermalCoherentState physical;
  ThermalCoherentState tilde;
};

ThermalCoherentState cs_build(const DeformedModel& model, CsKind kind,
                              std::complex<double> z, double beta,
                              const Truncation& trunc);

/// ln of the normalization function: pFq(a;b;|z|^2 cosh^2 theta) for BG,
/// qFp(b;a;...) for KP.
double cs_norm_log(const DeformedModel& model, CsKind kind,
                   std::complex<double> z, double beta);

/// <z|z'> = F(conj(z) z' cosh^2 theta) / sqrt(F(|z|^2 ...) F(|z'|^2 ...)).
std::complex<double> overlap(const DeformedModel& model, CsKind kind,
                             std::complex<double> z, std::complex<double> zp,
                             double beta);

/// || a_minus c - z cosh(theta) c ||_2 excluding the truncation edge row.
/// Only BG states are annihilation eigenvectors; KP is rejected.
double eigen_residual(const DeformedModel& model, CsKind kind,
                      std::complex<double> z, double beta,
                      const Truncation& trunc);

/// Moment check of the resolution-of-identity measure: the integral of
/// Gamma(a/b) * meijer_weight(t) * t^n over (0, inf) against rho_BG(n).
/// Performed in the scaled variable t = |z|^2 cosh^2 theta, in which the
/// beta dependence cancels; the returned pair is (integral, rho_BG(n)).
std::pair<double, double> identity_moment_check(const DeformedModel& model,
                                                int n, double beta);

/// Ordered-product substitution rule: the expectation of F applied to the
/// ordered pair of thermal ladder operators in a BG state is
/// F(|z|^2 cosh^2 theta).
double doot_expect(const DeformedModel& model,
                   const std::function<double(double)>& func,
                   std::complex<double> z, double beta);

TwoModeState two_mode_build(const DeformedModel& model, CsKind kind,
                            std::complex<double> z,
                            std::complex<double> sigma_tilde, double beta,
                            const Truncation& trunc);

}  // namespace tfdcs::coherent

#endif
