#include "tfdcs/thermal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "tfdcs/errors.hpp"

namespace tfdcs::thermal {

namespace {

constexpr double kBetaOmegaFloor = 1e-12;

void check_beta(double beta) {
  if (!(beta > 0.0) || !std::isfinite(beta)) {
    throw domain_error("beta must be a finite positive real");
  }
}

// Boltzmann factors exp(-beta E_n), n = 0..n_max, with a geometric bound on
// the dropped tail. The bound exp(-beta E_{n_max+1}) / (1 - exp(-beta g))
// holds for increasing spectra whose gaps do not shrink; if gap shrinkage is
// detected, the smallest observed gap is used instead, which is conservative
// as long as the gaps stay above it.
struct BoltzmannSums {
  std::vector<double> factors;
  double sum = 0.0;
  double tail_bound = 0.0;
};

BoltzmannSums boltzmann_sums(const DeformedModel& model, double beta,
                             const Truncation& trunc) {
  BoltzmannSums out;
  out.factors.resize(trunc.n_max + 1);
  double prev_energy = model.energy(0);
  double min_gap = std::numeric_limits<double>::infinity();
  bool gaps_shrink = false;
  double prev_gap = 0.0;
  out.factors[0] = std::exp(-beta * prev_energy);
  out.sum = out.factors[0];
  for (int n = 1; n <= trunc.n_max + 1; ++n) {
    const double energy = model.energy(n);
    const double gap = energy - prev_energy;
    if (!(gap > 0.0)) {
      throw domain_error("spectrum_e must be strictly increasing; violated at n=" +
                         std::to_string(n));
    }
    if (n > 1 && gap < prev_gap) gaps_shrink = true;
    min_gap = std::min(min_gap, gap);
    prev_gap = gap;
    prev_energy = energy;
    if (n <= trunc.n_max) {
      out.factors[n] = std::exp(-beta * energy);
      out.sum += out.factors[n];
    } else {
      const double gap_for_bound = gaps_shrink ? min_gap : gap;
      const double r = std::exp(-beta * gap_for_bound);
      if (r >= 1.0) {
        throw truncation_error("tail ratio not below one");
      }
      out.tail_bound = std::exp(-beta * energy) / (1.0 - r);
    }
  }
  if (!(out.tail_bound < trunc.tail_tol * out.sum)) {
    throw truncation_error(
        "partition tail bound exceeds tail_tol times the truncated sum; "
        "raise n_max");
  }
  return out;
}

}  // namespace

double theta_of_beta(const DeformedModel& model, double beta) {
  check_beta(beta);
  const double bw = beta * model.hbar_omega();
  if (bw < kBetaOmegaFloor) {
    throw divergence_error("theta(beta) diverges as beta*hbar_omega -> 0");
  }
  const double x = std::exp(-0.5 * bw);
  return 0.5 * std::log((1.0 + x) / (1.0 - x));
}

double partition(const DeformedModel& model, double beta,
                 const Truncation& trunc) {
  check_beta(beta);
  const BoltzmannSums sums = boltzmann_sums(model, beta, trunc);
  const double z = sums.sum + sums.tail_bound;
  if (model.spectrum().kind == SpectrumKind::Linear) {
    const double bw = beta * model.hbar_omega();
    const double closed =
        std::exp(-beta * model.spectrum().E0) / (1.0 - std::exp(-bw));
    if (std::abs(z - closed) > 1e-10 * closed) {
      throw truncation_error(
          "partition sum disagrees with the Linear closed form");
    }
  }
  return z;
}

ThermalContext make_context(const DeformedModel& model, double beta,
                            const Truncation& trunc) {
  ThermalContext ctx;
  ctx.beta = beta;
  ctx.theta = theta_of_beta(model, beta);
  ctx.z_partition = partition(model, beta, trunc);
  return ctx;
}

ThermalVacuum thermal_vacuum(const DeformedModel& model, double beta,
                             const Truncation& trunc) {
  check_beta(beta);
  const BoltzmannSums sums = boltzmann_sums(model, beta, trunc);
  const double z = sums.sum + sums.tail_bound;
  ThermalVacuum tv;
  tv.coeffs.resize(sums.factors.size());
  double norm2 = 0.0;
  for (std::size_t n = 0; n < sums.factors.size(); ++n) {
    tv.coeffs[n] = std::sqrt(sums.factors[n] / z);
    norm2 += tv.coeffs[n] * tv.coeffs[n];
  }
  tv.tail_weight = 1.0 - norm2;
  if (!(tv.tail_weight < trunc.tail_tol)) {
    throw truncation_error("thermal vacuum tail weight exceeds tail_tol");
  }
  return tv;
}

double internal_energy(const DeformedModel& model, double beta,
                       const Truncation& trunc) {
  check_beta(beta);
  const BoltzmannSums sums = boltzmann_sums(model, beta, trunc);
  const double z = sums.sum + sums.tail_bound;
  double u = 0.0;
  for (int n = static_cast<int>(sums.factors.size()) - 1; n >= 0; --n) {
    u += sums.factors[n] * model.energy(n);
  }
  return u / z;
}

double free_energy(const DeformedModel& model, double beta,
                   const Truncation& trunc) {
  return -std::log(partition(model, beta, trunc)) / beta;
}

double vacuum_expect_num(const DeformedModel& model, double beta,
                         const Truncation& trunc) {
  const ThermalVacuum tv = thermal_vacuum(model, beta, trunc);
  double expect = 0.0;
  for (int n = static_cast<int>(tv.coeffs.size()) - 1; n >= 0; --n) {
    expect += tv.coeffs[n] * tv.coeffs[n] * model.spectrum_e(n);
  }
  return expect;
}

double bose_einstein(const DeformedModel& model, double beta) {
  check_beta(beta);
  const double bw = beta * model.hbar_omega();
  if (bw < kBetaOmegaFloor) {
    throw divergence_error("occupation diverges as beta*hbar_omega -> 0");
  }
  const double n_t = 1.0 / std::expm1(bw);
  const double sh = std::sinh(theta_of_beta(model, beta));
  if (std::abs(sh * sh - n_t) > 1e-12 * std::max(1.0, n_t)) {
    throw numeric_error("internal",
                        "sinh^2(theta) failed to reproduce the occupation");
  }
  return n_t;
}

BogoliubovOps bogoliubov_ops(const DeformedModel& model, double beta,
                             const Truncation& trunc) {
  const double theta = theta_of_beta(model, beta);
  const LadderMatrices ladder = ladder_matrices(model, trunc);
  BogoliubovOps ops;
  ops.theta = theta;
  const double ch = std::cosh(theta);
  const double sh = std::sinh(theta);
  ops.a_minus_beta = ch * ladder.a_minus - sh * ladder.a_plus;
  ops.a_plus_beta = ch * ladder.a_plus - sh * ladder.a_minus;
  return ops;
}

double thermal_expect_ApAm(const DeformedModel& model, double beta,
                           const Truncation& trunc) {
  check_beta(beta);
  const BoltzmannSums sums = boltzmann_sums(model, beta, trunc);
  const double z = sums.sum + sums.tail_bound;
  const double theta = theta_of_beta(model, beta);
  const double ch2 = std::cosh(theta) * std::cosh(theta);
  const double sh2 = std::sinh(theta) * std::sinh(theta);
  double expect = 0.0;
  for (int n = static_cast<int>(sums.factors.size()) - 1; n >= 0; --n) {
    expect += sums.factors[n] / z *
              (ch2 * model.spectrum_e(n) + sh2 * model.spectrum_e(n + 1));
  }
  if (model.spectrum().kind == SpectrumKind::Linear) {
    const double u_over_hw =
        internal_energy(model, beta, trunc) / model.hbar_omega();
    const double closed = sh2 + std::cosh(2.0 * theta) * u_over_hw;
    if (std::abs(expect - closed) > 1e-8 * std::max(1.0, std::abs(closed))) {
      throw numeric_error("internal",
                          "thermal expectation disagrees with the "
                          "constant-gap closed form");
    }
  }
  return expect;
}

double bogoliubov_vacuum_residual(const DeformedModel& model, double beta,
                                  const Truncation& trunc) {
  const ThermalVacuum tv = thermal_vacuum(model, beta, trunc);
  const BogoliubovOps ops = bogoliubov_ops(model, beta, trunc);
  Eigen::VectorXd c(tv.coeffs.size());
  for (std::size_t n = 0; n < tv.coeffs.size(); ++n) c[n] = tv.coeffs[n];
  return (ops.a_minus_beta * c).norm();
}

std::pair<double, double> thermal_qubit(double e0, double e1, double beta) {
  check_beta(beta);
  if (!(e1 > e0)) {
    throw degenerate_levels_error("thermal_qubit requires e1 > e0");
  }
  const double gap = beta * (e1 - e0);
  const double c0 = 1.0 / std::sqrt(1.0 + std::exp(-gap));
  const double c1 = 1.0 / std::sqrt(1.0 + std::exp(gap));
  return {c0, c1};
}

}  // namespace tfdcs::thermal
