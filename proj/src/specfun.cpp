#include "tfdcs/specfun.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>

#include "tfdcs/errors.hpp"

namespace tfdcs::specfun {

namespace {

constexpr double kStopFraction = 1e-17;  // term / accumulated-magnitude cutoff
constexpr int kTermBudget = 10000;

void check_param_list(const std::vector<double>& v, const char* label) {
  if (v.size() > static_cast<std::size_t>(kMaxParamCount)) {
    throw domain_error(std::string("parameter list ") + label +
                       " longer than " + std::to_string(kMaxParamCount));
  }
  for (double x : v) {
    if (!(x > 0.0) || !std::isfinite(x)) {
      throw domain_error(std::string("parameter list ") + label +
                         " must contain finite positive entries");
    }
  }
}

void check_hyp_domain(const ParamLists& params, double abs_x) {
  const int p = params.p();
  const int q = params.q();
  if (p > q + 1) {
    throw divergence_error("pFq series has zero radius of convergence for p > q+1");
  }
  if (p == q + 1 && abs_x >= 1.0) {
    throw divergence_error("pFq series with p = q+1 requires |x| < 1");
  }
}

// log( prod (a_i + n) / prod (b_j + n) / (n + 1) ), the ratio of term n+1 to
// term n divided by x.
double term_log_ratio(const ParamLists& params, int n) {
  double r = -std::log1p(static_cast<double>(n));
  for (double ai : params.a) r += std::log(ai + n);
  for (double bj : params.b) r -= std::log(bj + n);
  return r;
}

double log_add_exp(double la, double lb) {
  if (la == -std::numeric_limits<double>::infinity()) return lb;
  if (lb == -std::numeric_limits<double>::infinity()) return la;
  const double hi = std::max(la, lb);
  const double lo = std::min(la, lb);
  return hi + std::log1p(std::exp(lo - hi));
}

}  // namespace

ParamLists::ParamLists(std::vector<double> a_in, std::vector<double> b_in)
    : a(std::move(a_in)), b(std::move(b_in)) {
  check_param_list(a, "a");
  check_param_list(b, "b");
}

double log_gamma(double x) {
  if (!(x > 0.0)) {
    throw domain_error("log_gamma requires x > 0");
  }
  return std::lgamma(x);
}

double pochhammer_log(double x, int n) {
  if (!(x > 0.0)) {
    throw domain_error("pochhammer_log requires x > 0");
  }
  if (n < 0) {
    throw domain_error("pochhammer_log requires n >= 0");
  }
  if (n == 0) return 0.0;
  return std::lgamma(x + n) - std::lgamma(x);
}

HypSum hyp_pFq(const ParamLists& params, std::complex<double> x) {
  const double abs_x = std::abs(x);
  if (abs_x == 0.0) {
    return HypSum{std::complex<double>(1.0, 0.0), 0.0, 1};
  }
  check_hyp_domain(params, abs_x);

  // Direct compensated recursion keeps full accuracy on alternating sums;
  // the parallel log-magnitude track supplies the stopping scale and stays
  // valid if the linear-space term ever leaves the representable range.
  std::complex<double> term(1.0, 0.0);
  std::complex<double> sum(1.0, 0.0);
  std::complex<double> comp(0.0, 0.0);  // Neumaier compensation
  double term_log = 0.0;
  const double log_abs_x = std::log(abs_x);

  double prev_mag = 1.0;
  for (int n = 0; n < kTermBudget; ++n) {
    const double lr = term_log_ratio(params, n);
    term_log += lr + log_abs_x;
    term *= x * std::exp(lr);

    // Neumaier-compensated accumulation, componentwise.
    const std::complex<double> t = sum + term;
    const double cr = (std::abs(sum.real()) >= std::abs(term.real()))
                          ? (sum.real() - t.real()) + term.real()
                          : (term.real() - t.real()) + sum.real();
    const double ci = (std::abs(sum.imag()) >= std::abs(term.imag()))
                          ? (sum.imag() - t.imag()) + term.imag()
                          : (term.imag() - t.imag()) + sum.imag();
    comp += std::complex<double>(cr, ci);
    sum = t;

    const double mag = std::exp(term_log);
    const double accum = std::max(std::abs(sum + comp),
                                  std::numeric_limits<double>::min());
    const double ratio = mag / prev_mag;
    const double tail = (ratio < 1.0)
                            ? mag * ratio / (1.0 - ratio)
                            : std::numeric_limits<double>::infinity();
    if (mag < kStopFraction * accum && tail < kStopFraction * accum) {
      return HypSum{sum + comp, tail, n + 2};
    }
    prev_mag = mag;
  }
  throw convergence_error("pFq stopping rule not met within the term budget");
}

double hyp_pFq_log(const ParamLists& params, double x) {
  if (!(x >= 0.0)) {
    throw domain_error("hyp_pFq_log requires x >= 0");
  }
  if (x == 0.0) return 0.0;
  check_hyp_domain(params, x);

  const double log_x = std::log(x);
  double term_log = 0.0;
  double sum_log = 0.0;  // ln 1
  double prev_log = 0.0;
  for (int n = 0; n < kTermBudget; ++n) {
    term_log += term_log_ratio(params, n) + log_x;
    sum_log = log_add_exp(sum_log, term_log);
    const double log_ratio = term_log - prev_log;
    const double log_stop = std::log(kStopFraction) + sum_log;
    if (term_log < log_stop && log_ratio < 0.0) {
      const double ratio = std::exp(log_ratio);
      const double tail_log = term_log + log_ratio - std::log1p(-ratio);
      if (tail_log < log_stop) return sum_log;
    }
    prev_log = term_log;
  }
  throw convergence_error("pFq stopping rule not met within the term budget");
}

double bessel_k(double nu, double x) {
  if (!(x > 0.0)) {
    throw domain_error("bessel_k requires x > 0");
  }
  return std::cyl_bessel_k(std::abs(nu), x);
}

double meijer_weight_log(const ParamLists& params, double t) {
  if (!(t > 0.0)) {
    throw domain_error("meijer_weight requires t > 0");
  }
  const int p = params.p();
  const int q = params.q();
  if (p == 0 && q == 0) {
    return -t;
  }
  if (p == 0 && q == 1) {
    const double nu = params.b[0] - 1.0;
    const double k = bessel_k(nu, 2.0 * std::sqrt(t));
    if (k <= 0.0) return -std::numeric_limits<double>::infinity();
    return std::log(2.0) + 0.5 * nu * std::log(t) + std::log(k);
  }
  throw unsupported_family_error(
      "meijer_weight has closed forms for (p,q) in {(0,0),(0,1)} only");
}

double meijer_weight(const ParamLists& params, double t) {
  return std::exp(meijer_weight_log(params, t));
}

double meijer_moment_rhs(const ParamLists& params, double s) {
  if (!(s > 0.0)) {
    throw domain_error("meijer_moment_rhs requires s > 0");
  }
  double r = std::lgamma(s);
  for (double bj : params.b) {
    const double arg = bj - 1.0 + s;
    if (!(arg > 0.0)) {
      throw domain_error("meijer_moment_rhs: gamma argument b_j-1+s <= 0");
    }
    r += std::lgamma(arg);
  }
  for (double ai : params.a) {
    const double arg = ai - 1.0 + s;
    if (!(arg > 0.0)) {
      throw domain_error("meijer_moment_rhs: gamma argument a_i-1+s <= 0");
    }
    r -= std::lgamma(arg);
  }
  return r;
}

namespace {

// 15-point Gauss-Legendre rule; nodes generated once by Newton iteration on
// the Legendre polynomial so no transcribed constants are involved.
struct Gauss15 {
  std::array<double, 15> x{};
  std::array<double, 15> w{};
  Gauss15() {
    constexpr int n = 15;
    for (int i = 0; i < n; ++i) {
      double xi = std::cos(M_PI * (i + 0.75) / (n + 0.5));
      for (int it = 0; it < 100; ++it) {
        double p0 = 1.0, p1 = xi;
        for (int k = 2; k <= n; ++k) {
          const double pk = ((2.0 * k - 1.0) * xi * p1 - (k - 1.0) * p0) / k;
          p0 = p1;
          p1 = pk;
        }
        const double dp = n * (xi * p1 - p0) / (xi * xi - 1.0);
        const double step = p1 / dp;
        xi -= step;
        if (std::abs(step) < 1e-16) break;
      }
      double p0 = 1.0, p1 = xi;
      for (int k = 2; k <= n; ++k) {
        const double pk = ((2.0 * k - 1.0) * xi * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = pk;
      }
      const double dp = n * (xi * p1 - p0) / (xi * xi - 1.0);
      x[i] = -xi;  // ascending order
      w[i] = 2.0 / ((1.0 - xi * xi) * dp * dp);
    }
  }
};

const Gauss15& gauss15_rule() {
  static const Gauss15 rule;
  return rule;
}

struct PanelIntegrator {
  const std::function<double(double)>& f;
  double tail_cut;  // magnitude below which a panel counts as decayed tail
  double value = 0.0;
  double err = 0.0;
  long evals = 0;

  double gauss(double a, double b) {
    const Gauss15& g = gauss15_rule();
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    double s = 0.0;
    for (int i = 0; i < 15; ++i) {
      s += g.w[i] * f(c + h * g.x[i]);
    }
    evals += 15;
    return s * h;
  }

  void refine(double a, double b, double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double left = gauss(a, m);
    const double right = gauss(m, b);
    const double diff = std::abs(left + right - whole);
    const double mag = std::max(std::abs(whole), std::abs(left + right));
    if (diff <= tol || mag < tail_cut || depth >= 48 ||
        diff <= 1e-15 * (std::abs(left) + std::abs(right))) {
      value += left + right;
      err += diff;
      return;
    }
    refine(a, m, left, 0.5 * tol, depth + 1);
    refine(m, b, right, 0.5 * tol, depth + 1);
  }

  void integrate(double a, double b, double tol) {
    refine(a, b, gauss(a, b), tol, 0);
  }
};

}  // namespace

QuadResult quad_semiinfinite(const std::function<double(double)>& f,
                             double tol) {
  if (!(tol > 0.0)) {
    throw domain_error("quad_semiinfinite requires tol > 0");
  }

  PanelIntegrator body{f, tol / 100.0};
  body.integrate(0.0, 1.0, 0.5 * tol);

  // t = 1/u maps (1, inf) onto (0, 1); the Jacobian is 1/u^2.
  auto mapped = [&f](double u) { return f(1.0 / u) / (u * u); };
  const std::function<double(double)> mapped_fn = mapped;
  PanelIntegrator tail{mapped_fn, tol / 100.0};
  tail.integrate(0.0, 1.0, 0.5 * tol);

  QuadResult result;
  result.value = body.value + tail.value;
  result.abs_error = body.err + tail.err;
  result.evaluations = body.evals + tail.evals;
  if (!std::isfinite(result.value) || result.abs_error > tol) {
    throw convergence_error("quad_semiinfinite error estimate stalled above tol");
  }
  return result;
}

}  // namespace tfdcs::specfun
