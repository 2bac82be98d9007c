#include "tfdcs/coherent.hpp"

#include <cmath>

#include "tfdcs/errors.hpp"
#include "tfdcs/thermal.hpp"

namespace tfdcs::coherent {

namespace {

double rho_log(const DeformedModel& model, CsKind kind, int n) {
  return kind == CsKind::BG ? model.rho_bg_log(n) : model.rho_kp_log(n);
}

specfun::ParamLists norm_lists(const DeformedModel& model, CsKind kind) {
  return kind == CsKind::BG ? model.params() : model.params().swapped();
}

}  // namespace

double cs_norm_log(const DeformedModel& model, CsKind kind,
                   std::complex<double> z, double beta) {
  const double theta = thermal::theta_of_beta(model, beta);
  const double ch = std::cosh(theta);
  return specfun::hyp_pFq_log(norm_lists(model, kind), std::norm(z) * ch * ch);
}

ThermalCoherentState cs_build(const DeformedModel& model, CsKind kind,
                              std::complex<double> z, double beta,
                              const Truncation& trunc) {
  ThermalCoherentState state;
  state.kind = kind;
  state.z = z;
  state.beta = beta;
  state.norm_log = cs_norm_log(model, kind, z, beta);
  state.coeffs.assign(trunc.n_max + 1, std::complex<double>(0.0, 0.0));

  const double theta = thermal::theta_of_beta(model, beta);
  const std::complex<double> w = z * std::cosh(theta);
  const double abs_w = std::abs(w);
  if (abs_w == 0.0) {
    state.coeffs[0] = 1.0;
    state.tail_weight = 0.0;
    return state;
  }

  const double log_abs_w = std::log(abs_w);
  const std::complex<double> unit = w / abs_w;
  std::complex<double> phase(1.0, 0.0);
  double norm2 = 0.0;
  for (int n = 0; n <= trunc.n_max; ++n) {
    const double log_mag =
        n * log_abs_w - 0.5 * rho_log(model, kind, n) - 0.5 * state.norm_log;
    state.coeffs[n] = std::exp(log_mag) * phase;
    norm2 += std::norm(state.coeffs[n]);
    phase *= unit;
  }
  state.tail_weight = 1.0 - norm2;
  if (!(state.tail_weight < trunc.tail_tol)) {
    throw truncation_error("coherent-state tail weight exceeds tail_tol");
  }
  return state;
}

std::complex<double> overlap(const DeformedModel& model, CsKind kind,
                             std::complex<double> z, std::complex<double> zp,
                             double beta) {
  const double theta = thermal::theta_of_beta(model, beta);
  const double ch2 = std::cosh(theta) * std::cosh(theta);
  const specfun::ParamLists lists = norm_lists(model, kind);
  const specfun::HypSum numerator =
      specfun::hyp_pFq(lists, std::conj(z) * zp * ch2);
  const double denom_log = 0.5 * (specfun::hyp_pFq_log(lists, std::norm(z) * ch2) +
                                  specfun::hyp_pFq_log(lists, std::norm(zp) * ch2));
  return numerator.value * std::exp(-denom_log);
}

double eigen_residual(const DeformedModel& model, CsKind kind,
                      std::complex<double> z, double beta,
                      const Truncation& trunc) {
  if (kind != CsKind::BG) {
    throw domain_error(
        "eigen_residual is defined for BG states only; KP states are not "
        "annihilation eigenvectors");
  }
  const ThermalCoherentState state = cs_build(model, kind, z, beta, trunc);
  const double theta = thermal::theta_of_beta(model, beta);
  const std::complex<double> w = z * std::cosh(theta);

  // Row n of a_minus * c is sqrt(ladder_e(n+1)) c_{n+1}; the top row is the
  // truncation edge and carries no information about the eigen-relation.
  double sum2 = 0.0;
  for (int n = 0; n < trunc.n_max; ++n) {
    const std::complex<double> lhs =
        std::sqrt(model.ladder_e(n + 1)) * state.coeffs[n + 1];
    sum2 += std::norm(lhs - w * state.coeffs[n]);
  }
  return std::sqrt(sum2);
}

std::pair<double, double> identity_moment_check(const DeformedModel& model,
                                                int n, double beta) {
  if (n < 0 || n > 10) {
    throw domain_error("identity_moment_check supports n in 0..10");
  }
  (void)beta;  // the scaled integration variable absorbs the beta dependence
  const specfun::ParamLists& lists = model.params();
  const double gamma_log = model.gamma_ratio_log();
  const double rhs = std::exp(model.rho_bg_log(n));
  auto integrand = [&lists, gamma_log, n](double t) {
    const double log_val = gamma_log + specfun::meijer_weight_log(lists, t) +
                           n * std::log(t);
    return std::exp(log_val);
  };
  const specfun::QuadResult quad =
      specfun::quad_semiinfinite(integrand, 1e-8 * rhs);
  return {quad.value, rhs};
}

double doot_expect(const DeformedModel& model,
                   const std::function<double(double)>& func,
                   std::complex<double> z, double beta) {
  const double theta = thermal::theta_of_beta(model, beta);
  const double ch = std::cosh(theta);
  return func(std::norm(z) * ch * ch);
}

TwoModeState two_mode_build(const DeformedModel& model, CsKind kind,
                            std::complex<double> z,
                            std::complex<double> sigma_tilde, double beta,
                            const Truncation& trunc) {
  TwoModeState state;
  state.physical = cs_build(model, kind, z, beta, trunc);
  state.tilde = cs_build(model, kind, sigma_tilde, beta, trunc);
  const int dim = trunc.n_max + 1;
  Eigen::VectorXcd cz(dim), cs(dim);
  for (int n = 0; n < dim; ++n) {
    cz[n] = state.physical.coeffs[n];
    cs[n] = state.tilde.coeffs[n];
  }
  state.coeffs = cz * cs.transpose();
  return state;
}

}  // namespace tfdcs::coherent
