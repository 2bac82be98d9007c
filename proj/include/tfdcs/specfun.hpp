#ifndef TFDCS_SPECFUN_HPP
#define TFDCS_SPECFUN_HPP

#include <complex>
#include <functional>
#include <vector>

namespace tfdcs::specfun {

/// Upper bound on the number of entries in either parameter list. Keeps every
/// gamma argument produced by the moment formulas well inside the validated
/// range of log_gamma.
inline constexpr int kMaxParamCount = 8;

/// Parameter lists (a_1..a_p ; b_1..b_q) shared by the hypergeometric series,
/// the structure constants and the Meijer weights. All entries must be > 0.
struct ParamLists {
  std::vector<double> a;
  std::vector<double> b;

  ParamLists() = default;
  ParamLists(std::vector<double> a_in, std::vector<double> b_in);

  int p() const { return static_cast<int>(a.size()); }
  int q() const { return static_cast<int>(b.size()); }

  /// Lists with the roles of a and b exchanged.
  ParamLists swapped() const { return ParamLists(b, a); }
};

/// ln Gamma(x) for x > 0. Relative error <= 1e-13 on [0.5, 170].
double log_gamma(double x);

/// ln (x)_n = ln Gamma(x+n) - ln Gamma(x) for x > 0, n >= 0.
double pochhammer_log(double x, int n);

struct HypSum {
  std::complex<double> value;
  double tail_bound = 0.0;  // estimated magnitude of the dropped tail
  int terms = 0;            // number of series terms accumulated
};

/// Generalized hypergeometric series pFq(a; b; x) =
/// sum_n [prod (a_i)_n / prod (b_j)_n] x^n / n!.
///
/// Entire for p <= q; for p = q+1 requires |x| < 1. Terms are tracked in
/// log-magnitude/phase form alongside a compensated direct recursion; the sum
/// stops once the last term and its geometric tail estimate both drop below
/// 1e-17 of the accumulated magnitude.
HypSum hyp_pFq(const ParamLists& params, std::complex<double> x);

/// ln pFq(a; b; x) for real x >= 0, evaluated entirely in log space so that
/// arguments far beyond the overflow threshold of the linear-space sum remain
/// representable.
double hyp_pFq_log(const ParamLists& params, double x);

/// Modified Bessel function of the second kind K_nu(x), x > 0. Symmetric in
/// the order. Relative error <= 1e-10.
double bessel_k(double nu, double x);

/// Moment-problem weight G^{q+1,0}_{p,q+1}(t | a-1 ; 0, b-1) whose s-th moment
/// is Gamma(s) prod_j Gamma(b_j-1+s) / prod_i Gamma(a_i-1+s).
///
/// Closed forms: (p,q) = (0,0) gives exp(-t); (p,q) = (0,1) gives
/// 2 t^{(b1-1)/2} K_{b1-1}(2 sqrt(t)). Other families are rejected.
double meijer_weight(const ParamLists& params, double t);

/// ln meijer_weight(params, t); -inf where the weight underflows to zero.
double meijer_weight_log(const ParamLists& params, double t);

/// ln [ Gamma(s) prod_j Gamma(b_j-1+s) / prod_i Gamma(a_i-1+s) ], the
/// closed-form s-th moment of meijer_weight. Requires every gamma argument
/// to be positive.
double meijer_moment_rhs(const ParamLists& params, double s);

struct QuadResult {
  double value = 0.0;
  double abs_error = 0.0;  // accumulated error estimate
  long evaluations = 0;
};

/// Integral of f over (0, inf) for integrands with exponential or
/// Bessel-type decay. The interval is split at t = 1, the upper part is
/// mapped by t = 1/u, and each part is handled by adaptive bisection with a
/// fixed 15-point Gauss rule per panel. Panels whose magnitude estimate falls
/// below tol/100 are accepted as tail. Throws if the error estimate stalls
/// above tol.
QuadResult quad_semiinfinite(const std::function<double(double)>& f,
                             double tol);

}  // namespace tfdcs::specfun

#endif
