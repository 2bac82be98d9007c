#include "tfdcs/quasiprob.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "tfdcs/errors.hpp"

namespace tfdcs::quasiprob {

namespace {

double log_add_exp(double la, double lb) {
  if (la == -std::numeric_limits<double>::infinity()) return lb;
  if (lb == -std::numeric_limits<double>::infinity()) return la;
  const double hi = std::max(la, lb);
  return hi + std::log1p(std::exp(std::min(la, lb) - hi));
}

void require_linear(const DeformedModel& model, const char* op) {
  if (model.spectrum().kind != SpectrumKind::Linear) {
    throw unsupported_family_error(
        std::string(op) + " is defined for Linear spectra only");
  }
}

// ln of the n-th moment integrand of the P-function weight,
// S(t) t^n = (e^{beta hw} - 1) G(t e^{beta hw}) t^n.
double p_weight_moment(const DeformedModel& model, int n, double beta,
                       double quad_tol) {
  const double bw = beta * model.hbar_omega();
  const double scale = std::exp(bw);
  const double prefactor_log = std::log(std::expm1(bw));
  const specfun::ParamLists& lists = model.params();
  auto integrand = [&lists, prefactor_log, scale, n](double t) {
    const double log_val = prefactor_log +
                           specfun::meijer_weight_log(lists, t * scale) +
                           n * std::log(t);
    return std::exp(log_val);
  };
  return specfun::quad_semiinfinite(integrand, quad_tol).value;
}

}  // namespace

DiagonalDensity density_build(const DeformedModel& model, double beta,
                              const Truncation& trunc) {
  const double z = thermal::partition(model, beta, trunc);
  DiagonalDensity density;
  density.weights.resize(trunc.n_max + 1);
  double total = 0.0;
  for (int n = 0; n <= trunc.n_max; ++n) {
    density.weights[n] = std::exp(-beta * model.energy(n)) / z;
    total += density.weights[n];
  }
  density.tail_weight = 1.0 - total;
  if (!(density.tail_weight < trunc.tail_tol)) {
    throw truncation_error("density tail weight exceeds tail_tol");
  }
  return density;
}

DiagonalDensity partial_trace_tilde(const thermal::ThermalVacuum& tv) {
  DiagonalDensity density;
  density.weights.resize(tv.coeffs.size());
  for (std::size_t n = 0; n < tv.coeffs.size(); ++n) {
    density.weights[n] = tv.coeffs[n] * tv.coeffs[n];
  }
  density.tail_weight = tv.tail_weight;
  return density;
}

double thermal_average(const DeformedModel& model,
                       const std::vector<double>& obs_diag, double beta,
                       const Truncation& trunc) {
  if (obs_diag.size() != static_cast<std::size_t>(trunc.n_max + 1)) {
    throw dimension_error("observable diagonal must have length n_max + 1");
  }
  const DiagonalDensity density = density_build(model, beta, trunc);
  double avg = 0.0;
  for (int n = trunc.n_max; n >= 0; --n) {
    avg += density.weights[n] * obs_diag[n];
  }
  return avg;
}

double husimi_series_log(const DeformedModel& model, double t, double beta,
                         const Truncation& trunc) {
  if (!(t >= 0.0)) {
    throw domain_error("husimi_q requires a nonnegative squared label");
  }
  if (t == 0.0) {
    return -beta * model.energy(0);  // only the ground term survives
  }
  const double log_t = std::log(t);
  double sum_log = -std::numeric_limits<double>::infinity();
  for (int n = 0; n <= trunc.n_max; ++n) {
    const double term = -beta * model.energy(n) + n * log_t -
                        model.rho_bg_log(n);
    sum_log = log_add_exp(sum_log, term);
    if (term < sum_log - 45.0 && n > 0) break;  // remaining terms negligible
  }
  return sum_log;
}

double husimi_q_log_t(const DeformedModel& model, double t, double beta,
                      const Truncation& trunc) {
  const double series_log = husimi_series_log(model, t, beta, trunc);
  const double z_log = std::log(thermal::partition(model, beta, trunc));
  const double norm_log = specfun::hyp_pFq_log(model.params(), t);
  return series_log - z_log - norm_log;
}

double husimi_q(const DeformedModel& model, std::complex<double> z,
                double beta, const Truncation& trunc) {
  const double theta = thermal::theta_of_beta(model, beta);
  const double ch = std::cosh(theta);
  return std::exp(husimi_q_log_t(model, std::norm(z) * ch * ch, beta, trunc));
}

double p_function_linear(const DeformedModel& model, std::complex<double> z,
                         double beta) {
  require_linear(model, "p_function_linear");
  const double bw = beta * model.hbar_omega();
  const double prefactor = std::expm1(bw);
  const double theta = thermal::theta_of_beta(model, beta);
  const double ch = std::cosh(theta);
  const double t = std::norm(z) * ch * ch;
  if (t == 0.0) {
    // Both weights approach a common finite limit at the origin.
    return prefactor;
  }
  const double denom_log = specfun::meijer_weight_log(model.params(), t);
  if (denom_log == -std::numeric_limits<double>::infinity()) {
    throw out_of_range_error(
        "P-function denominator weight underflowed; |z|^2 cosh^2 theta is "
        "beyond the support cutoff");
  }
  const double num_log =
      specfun::meijer_weight_log(model.params(), t * std::exp(bw));
  return std::exp(std::log(prefactor) + num_log - denom_log);
}

std::pair<double, double> p_moment_check(const DeformedModel& model, int n,
                                         double beta,
                                         const Truncation& trunc) {
  require_linear(model, "p_moment_check");
  if (n < 0 || n > 8) {
    throw domain_error("p_moment_check supports n in 0..8");
  }
  const double z = thermal::partition(model, beta, trunc);
  const double rhs_log = -model.gamma_ratio_log() - beta * model.energy(n) -
                         std::log(z) + model.rho_bg_log(n);
  const double rhs = std::exp(rhs_log);
  const double lhs = p_weight_moment(model, n, beta, 1e-8 * rhs);
  return {lhs, rhs};
}

double average_via_p(const DeformedModel& model,
                     const std::vector<double>& obs_diag, double beta,
                     const Truncation& trunc) {
  require_linear(model, "average_via_p");
  if (obs_diag.empty()) {
    throw dimension_error("observable diagonal must be non-empty");
  }
  const double gamma_log = model.gamma_ratio_log();
  const std::size_t count = std::min(
      obs_diag.size(), static_cast<std::size_t>(trunc.n_max) + 1);
  double avg = 0.0;
  for (std::size_t n = 0; n < count; ++n) {
    // Gamma(a/b) M_n / rho_BG(n) reconstructs the n-th Boltzmann weight.
    const double weight_scale_log = gamma_log - model.rho_bg_log(static_cast<int>(n));
    const double moment_tol =
        1e-9 * std::max(1.0, std::exp(-weight_scale_log) *
                                 std::exp(-beta * model.energy(static_cast<int>(n))));
    const double moment =
        p_weight_moment(model, static_cast<int>(n), beta, moment_tol);
    const double weight = std::exp(weight_scale_log) * moment;
    avg += weight * obs_diag[n];
    if (weight < 1e-15 && n >= 16) break;  // weights decay geometrically
  }
  return avg;
}

}  // namespace tfdcs::quasiprob
