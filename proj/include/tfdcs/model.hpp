#ifndef TFDCS_MODEL_HPP
#define TFDCS_MODEL_HPP

#include <Eigen/Dense>

#include "tfdcs/specfun.hpp"

namespace tfdcs {

enum class SpectrumKind { Generalized, Linear };

/// Energy-spectrum choice. Generalized means E_n = hbar_omega * n * f(n);
/// Linear means E_n = hbar_omega * n + E0 with constant level spacing.
struct Spectrum {
  SpectrumKind kind = SpectrumKind::Generalized;
  double E0 = 0.0;  // ground-state offset, Linear only
};

/// Fock-space cutoff shared by every truncated series and matrix. A truncated
/// result is valid only if its discarded-tail weight stays below tail_tol.
struct Truncation {
  int n_max = 128;
  double tail_tol = 1e-12;

  Truncation() = default;
  Truncation(int n_max_in, double tail_tol_in);
};

/// Deformed-boson family: two positive parameter lists fixing the deformation
/// function f(n) = prod_j (b_j-1+n) / prod_i (a_i-1+n), an energy unit, and a
/// spectrum kind.
///
/// Two related level functions appear. ladder_e(n) = n f(n) is the ladder
/// algebra; it vanishes at n = 0, fixes the matrix elements sqrt(ladder_e(n))
/// and the structure constants rho(n) = prod_{j<=n} ladder_e(j). spectrum_e(n)
/// is the energy in units of hbar_omega: equal to ladder_e(n) for Generalized
/// spectra, and n + E0/hbar_omega for Linear ones.
class DeformedModel {
 public:
  DeformedModel(specfun::ParamLists params, double hbar_omega,
                Spectrum spectrum);

  const specfun::ParamLists& params() const { return params_; }
  double hbar_omega() const { return hbar_omega_; }
  const Spectrum& spectrum() const { return spectrum_; }

  /// f(n) = prod_j (b_j-1+n) / prod_i (a_i-1+n). Throws if a denominator
  /// factor vanishes (only possible at n = 0 with some a_i = 1; the limits
  /// ladder_e(0) = 0 and rho(0) = 1 are defined without it).
  double deformation_f(int n) const;

  /// Ladder-algebra level function n f(n); zero at n = 0.
  double ladder_e(int n) const;

  /// Energy in units of hbar_omega: ladder_e(n) for Generalized spectra,
  /// n + E0/hbar_omega for Linear ones.
  double spectrum_e(int n) const;

  /// E_n = hbar_omega * spectrum_e(n).
  double energy(int n) const;

  /// ln rho_BG(n) = ln n! + sum_j ln (b_j)_n - sum_i ln (a_i)_n.
  double rho_bg_log(int n) const;

  /// ln rho_KP(n) = ln [ n! prod_i (a_i)_n / prod_j (b_j)_n ]; dual to
  /// rho_BG via rho_BG(n) rho_KP(n) = (n!)^2.
  double rho_kp_log(int n) const;

  /// ln [ prod_i Gamma(a_i) / prod_j Gamma(b_j) ].
  double gamma_ratio_log() const;

 private:
  specfun::ParamLists params_;
  double hbar_omega_;
  Spectrum spectrum_;
};

/// Truncated ladder operators on the Fock basis 0..n_max. a_minus carries
/// <n-1|A_-|n> = sqrt(ladder_e(n)); a_plus is its exact transpose. The
/// product a_plus * a_minus is diagonal with entries ladder_e(n), and
/// a_minus * a_plus is diagonal with entries ladder_e(n+1) up to the
/// truncation edge.
struct LadderMatrices {
  Eigen::MatrixXd a_minus;
  Eigen::MatrixXd a_plus;
};

LadderMatrices ladder_matrices(const DeformedModel& model,
                               const Truncation& trunc);

}  // namespace tfdcs

#endif
