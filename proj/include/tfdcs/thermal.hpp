#ifndef TFDCS_THERMAL_HPP
#define TFDCS_THERMAL_HPP

#include <utility>
#include <vector>

#include "tfdcs/model.hpp"

namespace tfdcs::thermal {

/// Temperature side of a computation: inverse temperature, Bogoliubov angle
/// and partition value, derived for one model under one truncation.
struct ThermalContext {
  double beta = 0.0;
  double theta = 0.0;
  double z_partition = 0.0;
};

/// Schmidt coefficients C_n = sqrt(exp(-beta E_n) / Z) of the thermal vacuum
/// on the truncated Fock basis, plus the relative weight the truncation drops.
struct ThermalVacuum {
  std::vector<double> coeffs;
  double tail_weight = 0.0;
};

/// Thermal ladder operators A_-(beta) = cosh(theta) a_- - sinh(theta) a_+ and
/// A_+(beta) = cosh(theta) a_+ - sinh(theta) a_-, acting on the physical index
/// only.
struct BogoliubovOps {
  Eigen::MatrixXd a_minus_beta;
  Eigen::MatrixXd a_plus_beta;
  double theta = 0.0;
};

/// theta(beta) = artanh(exp(-beta hbar_omega / 2)). Diverges as
/// beta hbar_omega -> 0; that direction is reported as a divergence error.
double theta_of_beta(const DeformedModel& model, double beta);

/// Z(beta) = sum_n exp(-beta E_n) extended by a geometric bound on the
/// discarded tail. Fails if the bound is not below tail_tol times the sum.
/// For Linear spectra the result is cross-checked against
/// exp(-beta E0) / (1 - exp(-beta hbar_omega)).
double partition(const DeformedModel& model, double beta,
                 const Truncation& trunc);

ThermalContext make_context(const DeformedModel& model, double beta,
                            const Truncation& trunc);

ThermalVacuum thermal_vacuum(const DeformedModel& model, double beta,
                             const Truncation& trunc);

/// U = sum_n p_n E_n, the canonical internal energy.
double internal_energy(const DeformedModel& model, double beta,
                       const Truncation& trunc);

/// F = -ln(Z)/beta.
double free_energy(const DeformedModel& model, double beta,
                   const Truncation& trunc);

/// <0(beta)| A_+ A_- |0(beta)> = sum_n p_n spectrum_e(n) = U / hbar_omega.
double vacuum_expect_num(const DeformedModel& model, double beta,
                         const Truncation& trunc);

/// n_T = 1 / (exp(beta hbar_omega) - 1); equal to sinh^2 theta(beta).
double bose_einstein(const DeformedModel& model, double beta);

BogoliubovOps bogoliubov_ops(const DeformedModel& model, double beta,
                             const Truncation& trunc);

/// sum_n p_n [cosh^2(theta) e(n) + sinh^2(theta) e(n+1)] over the energy
/// levels. For Linear spectra the closed form
/// sinh^2(theta) + cosh(2 theta) U / hbar_omega is asserted as a cross-check.
double thermal_expect_ApAm(const DeformedModel& model, double beta,
                           const Truncation& trunc);

/// || A_-(beta) |0(beta)> ||_2 over the truncated basis. Reported as a
/// diagnostic only; the thermal annihilator does not annihilate the thermal
/// vacuum under the matrix representation.
double bogoliubov_vacuum_residual(const DeformedModel& model, double beta,
                                  const Truncation& trunc);

/// Two-level thermal vacuum amplitudes
/// c0 = 1/sqrt(1 + exp(-beta (e1-e0))), c1 = 1/sqrt(1 + exp(+beta (e1-e0))).
std::pair<double, double> thermal_qubit(double e0, double e1, double beta);

}  // namespace tfdcs::thermal

#endif
