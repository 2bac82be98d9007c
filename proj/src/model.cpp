#include "tfdcs/model.hpp"

#include <cmath>
#include <string>

#include "tfdcs/errors.hpp"

namespace tfdcs {

namespace {

// Monotonicity is required by every Boltzmann tail bound, so non-monotone
// spectra are rejected as early as possible.
constexpr int kEagerMonotoneCheck = 256;

}  // namespace

Truncation::Truncation(int n_max_in, double tail_tol_in)
    : n_max(n_max_in), tail_tol(tail_tol_in) {
  if (n_max < 4) {
    throw domain_error("Truncation requires n_max >= 4");
  }
  if (!(tail_tol > 0.0)) {
    throw domain_error("Truncation requires tail_tol > 0");
  }
}

DeformedModel::DeformedModel(specfun::ParamLists params, double hbar_omega,
                             Spectrum spectrum)
    : params_(std::move(params)), hbar_omega_(hbar_omega), spectrum_(spectrum) {
  if (!(hbar_omega_ > 0.0)) {
    throw domain_error("DeformedModel requires hbar_omega > 0");
  }
  if (spectrum_.kind == SpectrumKind::Linear) {
    if (spectrum_.E0 < 0.0) {
      throw domain_error("Linear spectrum requires E0 >= 0");
    }
  } else {
    spectrum_.E0 = 0.0;
  }
  double prev = spectrum_e(0);
  for (int n = 1; n <= kEagerMonotoneCheck; ++n) {
    const double cur = spectrum_e(n);
    if (!(cur > prev)) {
      throw domain_error("spectrum_e must be strictly increasing; violated at n=" +
                         std::to_string(n));
    }
    prev = cur;
  }
}

double DeformedModel::deformation_f(int n) const {
  double num = 1.0;
  for (double bj : params_.b) num *= bj - 1.0 + n;
  double den = 1.0;
  for (double ai : params_.a) {
    const double factor = ai - 1.0 + n;
    if (factor == 0.0) {
      throw singularity_error("deformation_f denominator vanishes at n=" +
                              std::to_string(n));
    }
    den *= factor;
  }
  return num / den;
}

double DeformedModel::ladder_e(int n) const {
  if (n <= 0) return 0.0;
  return n * deformation_f(n);
}

double DeformedModel::spectrum_e(int n) const {
  if (spectrum_.kind == SpectrumKind::Linear) {
    return n + spectrum_.E0 / hbar_omega_;
  }
  return ladder_e(n);
}

double DeformedModel::energy(int n) const {
  return hbar_omega_ * spectrum_e(n);
}

double DeformedModel::rho_bg_log(int n) const {
  if (n == 0) return 0.0;
  double r = specfun::pochhammer_log(1.0, n);  // ln n!
  for (double bj : params_.b) r += specfun::pochhammer_log(bj, n);
  for (double ai : params_.a) r -= specfun::pochhammer_log(ai, n);
  return r;
}

double DeformedModel::rho_kp_log(int n) const {
  if (n == 0) return 0.0;
  double r = specfun::pochhammer_log(1.0, n);
  for (double ai : params_.a) r += specfun::pochhammer_log(ai, n);
  for (double bj : params_.b) r -= specfun::pochhammer_log(bj, n);
  return r;
}

double DeformedModel::gamma_ratio_log() const {
  double r = 0.0;
  for (double ai : params_.a) r += specfun::log_gamma(ai);
  for (double bj : params_.b) r -= specfun::log_gamma(bj);
  return r;
}

LadderMatrices ladder_matrices(const DeformedModel& model,
                               const Truncation& trunc) {
  const int dim = trunc.n_max + 1;
  LadderMatrices mats;
  mats.a_minus = Eigen::MatrixXd::Zero(dim, dim);
  for (int n = 1; n < dim; ++n) {
    mats.a_minus(n - 1, n) = std::sqrt(model.ladder_e(n));
  }
  mats.a_plus = mats.a_minus.transpose();
  return mats;
}

}  // namespace tfdcs
