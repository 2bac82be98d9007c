#include "tfdcs/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <random>
#include <sstream>

#include <json.hpp>

#include "tfdcs/coherent.hpp"
#include "tfdcs/errors.hpp"
#include "tfdcs/quasiprob.hpp"
#include "tfdcs/specfun.hpp"
#include "tfdcs/thermal.hpp"

namespace tfdcs::verify {

namespace {

const double kBetaGrid[] = {0.5, std::log(4.0), 3.0};
const double kAbsGrid[] = {0.25, 0.5, 1.0, 2.0};
const double kPhaseGrid[] = {0.0, M_PI / 3.0, M_PI};

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double ms() const {
    return std::chrono::duration<double, std::milli>(
               std::chrono::steady_clock::now() - start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

struct Harness {
  Report& report;
  const Options& opts;
  std::string suite;

  double tol(double default_tol) const {
    return opts.tol_override > 0.0 ? opts.tol_override : default_tol;
  }

  void add(Check c) {
    c.suite = suite;
    report.checks.push_back(std::move(c));
  }

  void abs_check(const std::string& id, const std::string& name, double lhs,
                 double rhs, double tolerance, double runtime_ms = 0.0) {
    Check c;
    c.id = id;
    c.name = name;
    c.lhs = lhs;
    c.rhs = rhs;
    c.tolerance = tol(tolerance);
    c.mode = CheckMode::AbsDiff;
    c.pass = std::abs(lhs - rhs) <= c.tolerance;
    c.runtime_ms = runtime_ms;
    add(std::move(c));
  }

  void bound_check(const std::string& id, const std::string& name,
                   double value, double bound, double runtime_ms = 0.0) {
    Check c;
    c.id = id;
    c.name = name;
    c.lhs = value;
    c.rhs = 0.0;
    c.tolerance = tol(bound);
    c.mode = CheckMode::UpperBound;
    c.pass = value <= c.tolerance;
    c.runtime_ms = runtime_ms;
    add(std::move(c));
  }

  void info(const std::string& id, const std::string& name, double value) {
    Check c;
    c.id = id;
    c.name = name;
    c.lhs = value;
    c.mode = CheckMode::Info;
    c.pass = true;
    add(std::move(c));
  }

  void skip(const std::string& id, const std::string& name,
            const std::string& reason) {
    Check c;
    c.id = id;
    c.name = name;
    c.pass = true;
    c.skipped = true;
    c.reason = reason;
    add(std::move(c));
  }
};

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

Truncation raise_until_tail(const DeformedModel& model, coherent::CsKind kind,
                            std::complex<double> z, double beta,
                            const Truncation& base) {
  Truncation trunc = base;
  while (true) {
    try {
      coherent::cs_build(model, kind, z, beta, trunc);
      return trunc;
    } catch (const truncation_error&) {
      if (trunc.n_max >= 2048) throw;
      trunc.n_max = std::min(2048, 2 * trunc.n_max);
    }
  }
}

// Deterministic entries in [-1, 1] from raw generator bits, so the sequence
// is identical on every platform and run.
std::vector<double> random_diagonal(std::mt19937& rng, int length) {
  std::vector<double> obs(length);
  for (int i = 0; i < length; ++i) {
    obs[i] = -1.0 + 2.0 * (static_cast<double>(rng()) / 4294967295.0);
  }
  return obs;
}

void run_specfun_suite(Harness& h) {
  using specfun::ParamLists;

  const ParamLists families[] = {ParamLists({}, {}), ParamLists({}, {2.0})};
  const char* family_names[] = {"(p,q)=(0,0)", "(p,q)=(0,1), b=[2]"};
  for (int fi = 0; fi < 2; ++fi) {
    const ParamLists& lists = families[fi];
    for (int n = 0; n <= 10; ++n) {
      Stopwatch sw;
      const double rhs = std::exp(specfun::meijer_moment_rhs(lists, n + 1.0));
      auto integrand = [&lists, n](double t) {
        return std::exp(specfun::meijer_weight_log(lists, t) +
                        n * std::log(t));
      };
      const double lhs =
          specfun::quad_semiinfinite(integrand, 1e-8 * rhs).value;
      h.abs_check("specfun/moment-match",
                  std::string("weight moment n=") + std::to_string(n) + ", " +
                      family_names[fi],
                  lhs, rhs, 1e-6 * rhs, sw.ms());
    }
  }

  {
    const ParamLists collapse({1.7, 0.9}, {1.7, 0.9});
    const std::complex<double> grid[] = {
        {-2.0, 0.0}, {-1.0, 0.0}, {-0.5, 0.0}, {0.5, 0.0}, {1.0, 0.0},
        {2.5, 0.0},  {5.0, 0.0},  {10.0, 0.0}, {1.0, 1.7}, {0.0, 1.5}};
    double worst = 0.0;
    for (const auto& x : grid) {
      const std::complex<double> expect = std::exp(x);
      const double rel =
          std::abs(specfun::hyp_pFq(collapse, x).value - expect) /
          std::abs(expect);
      worst = std::max(worst, rel);
    }
    h.bound_check("specfun/exp-collapse",
                  "pFq with matched parameter lists against exp(x)", worst,
                  1e-12);
  }

  {
    double worst = 0.0;
    for (double x : {0.5, 1.0, 2.5}) {
      for (int n = 0; n <= 50; ++n) {
        const double step = specfun::pochhammer_log(x, n + 1) -
                            specfun::pochhammer_log(x, n);
        worst = std::max(worst, std::abs(step - std::log(x + n)));
      }
    }
    h.bound_check("specfun/pochhammer-step",
                  "Pochhammer increment against ln(x+n)", worst, 1e-12);
  }

  {
    const ParamLists lists({1.5}, {1.25, 2.5});
    const std::complex<double> x(0.8 * std::cos(2.2), 0.8 * std::sin(2.2));
    const auto direct = specfun::hyp_pFq(lists, x).value;
    const auto conjugated = specfun::hyp_pFq(lists, std::conj(x)).value;
    h.bound_check("specfun/conjugation",
                  "series value at conj(x) equals conjugated value",
                  std::abs(direct - std::conj(conjugated)), 0.0);
  }
}

void run_thermal_suite(Harness& h, const NamedModel& nm) {
  const DeformedModel& model = nm.model;
  const Truncation& trunc = h.opts.trunc;
  const double hw = model.hbar_omega();

  for (double beta : kBetaGrid) {
    const std::string where = " (" + nm.name + ", beta=" + fmt(beta) + ")";
    const double theta = thermal::theta_of_beta(model, beta);
    const double ch = std::cosh(theta);
    const double sh = std::sinh(theta);

    h.abs_check("thermal/theta-tanh", "tanh(theta) vs exp(-beta hw/2)" + where,
                std::tanh(theta), std::exp(-0.5 * beta * hw), 1e-12);
    h.abs_check("thermal/theta-hyperbolic",
                "cosh^2 - sinh^2 = 1" + where, ch * ch - sh * sh, 1.0, 1e-12);

    const thermal::ThermalVacuum tv = thermal::thermal_vacuum(model, beta, trunc);
    double norm2 = 0.0;
    for (double c : tv.coeffs) norm2 += c * c;
    h.bound_check("thermal/vacuum-normalization",
                  "thermal vacuum norm deficit" + where, 1.0 - norm2,
                  trunc.tail_tol);
    h.bound_check("thermal/vacuum-normalization-excess",
                  "thermal vacuum norm excess" + where, norm2 - 1.0, 1e-14);

    const double u = thermal::internal_energy(model, beta, trunc);
    const double step = 1e-5 * beta;
    const double lnz_plus =
        std::log(thermal::partition(model, beta + step, trunc));
    const double lnz_minus =
        std::log(thermal::partition(model, beta - step, trunc));
    const double dlnz = (lnz_plus - lnz_minus) / (2.0 * step);
    h.bound_check("thermal/energy-consistency",
                  "U against -d ln Z / d beta" + where,
                  std::abs(u + dlnz) / std::abs(u), 1e-6);

    const double f = thermal::free_energy(model, beta, trunc);
    const double f_plus = thermal::free_energy(model, beta + step, trunc);
    const double f_minus = thermal::free_energy(model, beta - step, trunc);
    const double ve = thermal::vacuum_expect_num(model, beta, trunc);
    const double ode_residual =
        beta * (f_plus - f_minus) / (2.0 * step) + f - hw * ve;
    h.bound_check("thermal/free-energy-ode",
                  "free-energy flow equation residual" + where,
                  std::abs(ode_residual) / std::abs(u), 1e-6);

    {
      Stopwatch sw;
      const thermal::BogoliubovOps ops =
          thermal::bogoliubov_ops(model, beta, trunc);
      const Eigen::MatrixXd product = ops.a_plus_beta * ops.a_minus_beta;
      double worst = 0.0;
      for (int n = 0; n <= trunc.n_max - 2; ++n) {
        const double rhs = ch * ch * model.ladder_e(n) +
                           sh * sh * model.ladder_e(n + 1);
        const double scale = std::max(1.0, std::abs(rhs));
        worst = std::max(worst, std::abs(product(n, n) - rhs) / scale);
      }
      h.bound_check("thermal/bogoliubov-diagonal",
                    "thermal number-operator diagonal" + where, worst, 1e-12,
                    sw.ms());
    }

    const double n_t = thermal::bose_einstein(model, beta);
    h.abs_check("thermal/occupation-sinh", "sinh^2(theta) vs n_T" + where,
                sh * sh, n_t, 1e-12 * std::max(1.0, n_t));
    h.abs_check("thermal/occupation-cosh", "cosh^2(theta) vs n_T + 1" + where,
                ch * ch, n_t + 1.0, 1e-12 * std::max(1.0, n_t + 1.0));

    const double expect = thermal::thermal_expect_ApAm(model, beta, trunc);
    if (model.spectrum().kind == SpectrumKind::Linear) {
      const double closed = sh * sh + std::cosh(2.0 * theta) * u / hw;
      h.abs_check("thermal/thermal-expectation-closed-form",
                  "thermal ladder expectation, constant-gap form" + where,
                  expect, closed, 1e-8 * std::max(1.0, std::abs(closed)));
    } else {
      h.skip("thermal/thermal-expectation-closed-form",
             "thermal ladder expectation, constant-gap form" + where,
             "closed form requires a constant level spacing");
    }

    h.info("thermal/bogoliubov-vacuum-residual",
           "|| A_-(beta) |0(beta)> ||" + where,
           thermal::bogoliubov_vacuum_residual(model, beta, trunc));
  }

  if (model.spectrum().kind == SpectrumKind::Linear) {
    // Heating from beta = 1 to beta = 0.1 must flatten the weight profile
    // monotonically.
    const Truncation hot_trunc(512, h.opts.trunc.tail_tol);
    double prev_gap = std::numeric_limits<double>::infinity();
    double worst_increase = -std::numeric_limits<double>::infinity();
    for (int i = 0; i <= 4; ++i) {
      const double beta = std::pow(10.0, -i / 4.0);  // 1 down to 0.1
      const thermal::ThermalVacuum tv =
          thermal::thermal_vacuum(model, beta, hot_trunc);
      double gap = 0.0;
      for (std::size_t n = 0; n + 1 < tv.coeffs.size(); ++n) {
        gap = std::max(gap, std::abs(tv.coeffs[n] * tv.coeffs[n] -
                                     tv.coeffs[n + 1] * tv.coeffs[n + 1]));
      }
      worst_increase = std::max(worst_increase, gap - prev_gap);
      prev_gap = gap;
    }
    h.bound_check("thermal/high-temperature-flattening",
                  "weight profile flattens as beta drops (" + nm.name + ")",
                  worst_increase, 0.0);
  }
}

void run_coherent_suite(Harness& h, const NamedModel& nm) {
  const DeformedModel& model = nm.model;
  const Truncation& trunc = h.opts.trunc;

  {
    double worst = 0.0;
    for (int n = 0; n <= 60; ++n) {
      const double duality = model.rho_bg_log(n) + model.rho_kp_log(n);
      worst = std::max(
          worst, std::abs(duality - 2.0 * specfun::pochhammer_log(1.0, n)));
    }
    h.bound_check("coherent/duality",
                  "structure-constant duality (" + nm.name + ")", worst,
                  1e-12);
  }

  if (model.params().p() == 0 && model.params().q() == 0) {
    double worst = 0.0;
    for (double beta : kBetaGrid) {
      const auto bg = coherent::cs_build(model, coherent::CsKind::BG,
                                         {0.8, 0.3}, beta, trunc);
      const auto kp = coherent::cs_build(model, coherent::CsKind::KP,
                                         {0.8, 0.3}, beta, trunc);
      for (int n = 0; n <= trunc.n_max; ++n) {
        worst = std::max(worst, std::abs(bg.coeffs[n] - kp.coeffs[n]));
      }
    }
    h.bound_check("coherent/canonical-collapse",
                  "BG and KP coincide for the oscillator (" + nm.name + ")",
                  worst, 1e-14);
  }

  for (double beta : kBetaGrid) {
    const std::string where = " (" + nm.name + ", beta=" + fmt(beta) + ")";
    const double theta = thermal::theta_of_beta(model, beta);
    const double ch = std::cosh(theta);

    std::vector<std::complex<double>> grid;
    for (double r : kAbsGrid) {
      for (double phi : kPhaseGrid) {
        grid.emplace_back(r * std::cos(phi), r * std::sin(phi));
      }
    }

    for (coherent::CsKind kind :
         {coherent::CsKind::BG, coherent::CsKind::KP}) {
      const char* kind_name = kind == coherent::CsKind::BG ? "BG" : "KP";

      double worst_overlap = 0.0;
      double worst_cauchy = 0.0;
      double worst_continuity = 0.0;
      bool any_point = false;
      for (std::size_t i = 0; i < grid.size(); ++i) {
        const std::complex<double> z = grid[i];
        const std::complex<double> zp = grid[(i + 5) % grid.size()];
        try {
          const auto state = coherent::cs_build(model, kind, z, beta, trunc);
          const auto other = coherent::cs_build(model, kind, zp, beta, trunc);
          std::complex<double> series(0.0, 0.0);
          for (int n = 0; n <= trunc.n_max; ++n) {
            series += std::conj(state.coeffs[n]) * other.coeffs[n];
          }
          const std::complex<double> closed =
              coherent::overlap(model, kind, z, zp, beta);
          worst_overlap = std::max(worst_overlap, std::abs(series - closed));
          worst_cauchy = std::max(worst_cauchy, std::abs(closed) - 1.0);

          const std::complex<double> dz =
              1e-6 * std::complex<double>(std::cos(M_PI / 7.0),
                                          std::sin(M_PI / 7.0));
          const auto shifted =
              coherent::cs_build(model, kind, z + dz, beta, trunc);
          double dist2 = 0.0;
          for (int n = 0; n <= trunc.n_max; ++n) {
            dist2 += std::norm(shifted.coeffs[n] - state.coeffs[n]);
          }
          double sup_e = 0.0;
          for (int n = 0; n <= trunc.n_max; ++n) {
            sup_e = std::max(sup_e, model.ladder_e(n + 1));
          }
          const double lipschitz = 10.0 * ch * std::sqrt(sup_e);
          worst_continuity =
              std::max(worst_continuity,
                       std::sqrt(dist2) - lipschitz * std::abs(dz));
          any_point = true;
        } catch (const divergence_error&) {
          // Outside the convergence disc of this kind's normalization.
        }
      }
      if (any_point) {
        h.bound_check("coherent/overlap-consistency",
                      std::string("series vs closed-form overlap, ") +
                          kind_name + where,
                      worst_overlap, 10.0 * trunc.tail_tol);
        h.bound_check("coherent/cauchy-schwarz",
                      std::string("overlap magnitude bound, ") + kind_name +
                          where,
                      worst_cauchy, 1e-12);
        h.bound_check("coherent/label-continuity",
                      std::string("Lipschitz label continuity, ") + kind_name +
                          where,
                      worst_continuity, 0.0);
      } else {
        h.skip("coherent/overlap-consistency",
               std::string("series vs closed-form overlap, ") + kind_name +
                   where,
               "normalization series diverges on the whole label grid");
      }
    }

    {
      double worst = 0.0;
      for (double r : kAbsGrid) {
        const std::complex<double> z(r, 0.0);
        const Truncation raised = raise_until_tail(
            model, coherent::CsKind::BG, z, beta,
            Truncation(trunc.n_max, 1e-12));
        worst = std::max(worst, coherent::eigen_residual(
                                    model, coherent::CsKind::BG, z, beta,
                                    raised));
      }
      h.bound_check("coherent/eigen-residual",
                    "annihilation eigen-relation residual" + where, worst,
                    1e-10);
    }
  }

  {
    Stopwatch sw;
    double worst_rel = 0.0;
    double worst_beta_dep = 0.0;
    for (int n = 0; n <= 8; ++n) {
      const auto at_first =
          coherent::identity_moment_check(model, n, kBetaGrid[0]);
      const auto at_second =
          coherent::identity_moment_check(model, n, kBetaGrid[2]);
      worst_rel = std::max(
          worst_rel, std::abs(at_first.first - at_first.second) /
                         at_first.second);
      worst_beta_dep =
          std::max(worst_beta_dep,
                   std::abs(at_first.first - at_second.first) /
                       at_first.second);
    }
    h.bound_check("coherent/identity-moments",
                  "resolution-of-identity moments (" + nm.name + ")",
                  worst_rel, 1e-6, sw.ms());
    h.bound_check("coherent/identity-moments-scale-invariance",
                  "moment integrals independent of beta (" + nm.name + ")",
                  worst_beta_dep, 1e-10);
  }
}

void run_quasiprob_suite(Harness& h, const NamedModel& nm) {
  const DeformedModel& model = nm.model;
  const Truncation& trunc = h.opts.trunc;
  const bool linear = model.spectrum().kind == SpectrumKind::Linear;

  for (double beta : kBetaGrid) {
    const std::string where = " (" + nm.name + ", beta=" + fmt(beta) + ")";

    const auto density = quasiprob::density_build(model, beta, trunc);
    double total = 0.0;
    for (double w : density.weights) total += w;
    h.abs_check("quasiprob/trace", "density trace plus tail" + where,
                total + density.tail_weight, 1.0, 1e-14);

    const auto tv = thermal::thermal_vacuum(model, beta, trunc);
    const auto reduced = quasiprob::partial_trace_tilde(tv);
    double worst = 0.0;
    for (int n = 0; n <= trunc.n_max; ++n) {
      const double scale =
          std::max({reduced.weights[n], density.weights[n], 1e-300});
      worst = std::max(
          worst, std::abs(reduced.weights[n] - density.weights[n]) / scale);
    }
    h.bound_check("quasiprob/purification",
                  "partial trace against Boltzmann weights" + where, worst,
                  1e-12);

    {
      std::mt19937 rng(0x5eedu);
      double worst_obs = 0.0;
      for (int k = 0; k < 5; ++k) {
        const auto obs = random_diagonal(rng, trunc.n_max + 1);
        double vacuum_side = 0.0;
        for (int n = 0; n <= trunc.n_max; ++n) {
          vacuum_side += tv.coeffs[n] * tv.coeffs[n] * obs[n];
        }
        const double average = quasiprob::thermal_average(model, obs, beta, trunc);
        worst_obs = std::max(worst_obs, std::abs(vacuum_side - average));
      }
      h.bound_check("quasiprob/tfd-equivalence",
                    "pure-state vs mixed-state averages" + where, worst_obs,
                    1e-12);
    }

    h.abs_check("quasiprob/q-at-origin", "Q(0) against ground weight" + where,
                quasiprob::husimi_q(model, {0.0, 0.0}, beta, trunc),
                density.weights[0], 1e-12 * density.weights[0]);

    {
      // The pFq factor of the measure cancels the 1/pFq inside Q. The
      // cancellation is verified pointwise below, then applied analytically
      // so the quadrature tail never drives the normalization series beyond
      // its term budget.
      double worst_reduction = 0.0;
      for (double t : {0.3, 2.0, 9.0}) {
        const double full = specfun::hyp_pFq_log(model.params(), t) +
                            quasiprob::husimi_q_log_t(model, t, beta, trunc);
        const double reduced =
            quasiprob::husimi_series_log(model, t, beta, trunc) -
            std::log(thermal::partition(model, beta, trunc));
        worst_reduction = std::max(worst_reduction, std::abs(full - reduced));
      }
      h.bound_check("quasiprob/q-integrand-reduction",
                    "measure/Q normalization cancellation" + where,
                    worst_reduction, 1e-13);

      Stopwatch sw;
      const double gamma_log = model.gamma_ratio_log();
      const double z_log =
          std::log(thermal::partition(model, beta, trunc));
      auto integrand = [&model, &trunc, gamma_log, z_log, beta](double t) {
        const double log_val =
            gamma_log + specfun::meijer_weight_log(model.params(), t) +
            quasiprob::husimi_series_log(model, t, beta, trunc) - z_log;
        return std::exp(log_val);
      };
      const double q_mass = specfun::quad_semiinfinite(integrand, 1e-8).value;
      h.abs_check("quasiprob/q-normalization",
                  "Husimi mass over the identity measure" + where, q_mass, 1.0,
                  1e-6, sw.ms());
    }

    if (linear) {
      if (beta < 2.0) {  // the two P-reconstruction grid points
        Stopwatch sw;
        double worst_p = 0.0;
        for (int n = 0; n <= 8; ++n) {
          const auto check = quasiprob::p_moment_check(model, n, beta, trunc);
          worst_p = std::max(
              worst_p, std::abs(check.first - check.second) / check.second);
        }
        h.bound_check("quasiprob/p-reconstruction",
                      "P-function moment reconstruction" + where, worst_p,
                      1e-5, sw.ms());
      }
    } else {
      h.skip("quasiprob/p-reconstruction",
             "P-function moment reconstruction" + where,
             "P-function requires a Linear spectrum");
    }
  }

  if (linear) {
    Stopwatch sw;
    const double beta = kBetaGrid[0];
    std::vector<double> ones(trunc.n_max + 1, 1.0);
    h.abs_check("quasiprob/average-via-p",
                "trace through the P representation (" + nm.name + ")",
                quasiprob::average_via_p(model, ones, beta, trunc), 1.0, 1e-5,
                sw.ms());
    std::vector<double> energies(trunc.n_max + 1);
    for (int n = 0; n <= trunc.n_max; ++n) energies[n] = model.energy(n);
    const double u = thermal::internal_energy(model, beta, trunc);
    h.abs_check("quasiprob/average-via-p-energy",
                "internal energy through the P representation (" + nm.name +
                    ")",
                quasiprob::average_via_p(model, energies, beta, trunc), u,
                1e-5 * std::abs(u), sw.ms());
  } else {
    h.skip("quasiprob/average-via-p",
           "trace through the P representation (" + nm.name + ")",
           "P-function requires a Linear spectrum");
  }

  if (linear && model.params().p() == 0 && model.params().q() == 0) {
    const double beta = kBetaGrid[1];
    const double theta = thermal::theta_of_beta(model, beta);
    const double ch2 = std::cosh(theta) * std::cosh(theta);
    const double bw = beta * model.hbar_omega();
    double worst = 0.0;
    for (double r : {0.0, 0.3, 0.8, 1.5}) {
      const double t = r * r * ch2;
      const double closed = std::expm1(bw) * std::exp(-t * std::expm1(bw));
      const double value =
          quasiprob::p_function_linear(model, {r, 0.0}, beta);
      worst = std::max(worst, std::abs(value - closed) / closed);
    }
    h.bound_check("quasiprob/p-closed-form",
                  "exponential-family P-function closed form (" + nm.name +
                      ")",
                  worst, 1e-12);

    // Occupation form: the same values written through the mean occupation,
    // (1/n) exp(-t/n) with 1/n = e^{beta hw} - 1, computed along an
    // independent path.
    const double n_occ = thermal::bose_einstein(model, beta);
    double worst_occ = 0.0;
    for (double r : {0.3, 0.8, 1.5}) {
      const double t = r * r * ch2;
      const double occ_form = std::exp(-t / n_occ) / n_occ;
      const double value = quasiprob::p_function_linear(model, {r, 0.0}, beta);
      worst_occ = std::max(worst_occ, std::abs(value - occ_form) / occ_form);
    }
    h.bound_check("quasiprob/p-occupation-form",
                  "P-function through the mean occupation (" + nm.name + ")",
                  worst_occ, 1e-12);
  }

  {
    // Whole-space Husimi value through the two-mode machinery against the
    // product of single-factor values.
    const double beta = kBetaGrid[1];
    const std::complex<double> z(0.6, 0.2), sigma(0.3, -0.5);
    const auto two_mode = coherent::two_mode_build(
        model, coherent::CsKind::BG, z, sigma, beta, trunc);
    const quasiprob::WholeDensity whole{
        quasiprob::density_build(model, beta, trunc),
        quasiprob::density_build(model, beta, trunc)};
    double q_joint = 0.0;
    for (int n = 0; n <= trunc.n_max; ++n) {
      double row = 0.0;
      for (int m = 0; m <= trunc.n_max; ++m) {
        row += whole.tilde.weights[m] * std::norm(two_mode.coeffs(n, m));
      }
      q_joint += whole.physical.weights[n] * row;
    }
    const double q_product =
        quasiprob::husimi_q(model, z, beta, trunc) *
        quasiprob::husimi_q(model, sigma, beta, trunc);
    h.abs_check("quasiprob/q-factorization",
                "two-mode Husimi value against factor product (" + nm.name +
                    ")",
                q_joint, q_product, 1e-9 * q_product);
  }

  if (linear) {
    // Joint P moments factor over the two labels.
    const double beta = kBetaGrid[0];
    const int n = 2, m = 3;
    const auto mn = quasiprob::p_moment_check(model, n, beta, trunc);
    const auto mm = quasiprob::p_moment_check(model, m, beta, trunc);
    h.abs_check("quasiprob/p-factorization",
                "joint P moment against factor product (" + nm.name + ")",
                mn.first * mm.first, mn.second * mm.second,
                1e-5 * mn.second * mm.second);
  }
}

}  // namespace

int Report::passed() const {
  int count = 0;
  for (const auto& c : checks) {
    if (!c.skipped && c.pass) ++count;
  }
  return count;
}

int Report::failed() const {
  int count = 0;
  for (const auto& c : checks) {
    if (!c.skipped && !c.pass) ++count;
  }
  return count;
}

int Report::skipped() const {
  int count = 0;
  for (const auto& c : checks) {
    if (c.skipped) ++count;
  }
  return count;
}

std::vector<NamedModel> reference_battery() {
  using specfun::ParamLists;
  std::vector<NamedModel> battery;
  battery.push_back(
      {"ho-linear", DeformedModel(ParamLists({}, {}), 1.0,
                                  Spectrum{SpectrumKind::Linear, 0.5})});
  battery.push_back(
      {"ho-generalized", DeformedModel(ParamLists({}, {}), 1.0,
                                       Spectrum{SpectrumKind::Generalized})});
  battery.push_back(
      {"bessel-generalized",
       DeformedModel(ParamLists({}, {2.0}), 1.0,
                     Spectrum{SpectrumKind::Generalized})});
  battery.push_back(
      {"bessel-linear", DeformedModel(ParamLists({}, {2.0}), 1.0,
                                      Spectrum{SpectrumKind::Linear, 0.0})});
  return battery;
}

Report run_suites(const std::string& suite,
                  const std::vector<NamedModel>& models, const Options& opts) {
  Report report;
  Harness h{report, opts, ""};

  const bool all = suite == "all";
  bool known = all;
  if (all || suite == "specfun") {
    h.suite = "specfun";
    run_specfun_suite(h);
    known = true;
  }
  if (all || suite == "thermal") {
    h.suite = "thermal";
    for (const auto& nm : models) run_thermal_suite(h, nm);
    known = true;
  }
  if (all || suite == "coherent") {
    h.suite = "coherent";
    for (const auto& nm : models) run_coherent_suite(h, nm);
    known = true;
  }
  if (all || suite == "quasiprob") {
    h.suite = "quasiprob";
    for (const auto& nm : models) run_quasiprob_suite(h, nm);
    known = true;
  }
  if (!known) {
    throw config_error("unknown suite '" + suite +
                       "'; expected specfun, thermal, coherent, quasiprob or "
                       "all");
  }
  return report;
}

std::string report_to_json(const Report& report, const std::string& suite,
                           const std::string& model_label) {
  nlohmann::ordered_json doc;
  doc["schema_version"] = 1;
  doc["suite"] = suite;
  doc["models"] = model_label;
  nlohmann::ordered_json checks = nlohmann::ordered_json::array();
  for (const auto& c : report.checks) {
    nlohmann::ordered_json entry;
    entry["suite"] = c.suite;
    entry["id"] = c.id;
    entry["name"] = c.name;
    if (c.skipped) {
      entry["status"] = "skip";
      entry["reason"] = c.reason;
    } else {
      entry["status"] = c.pass ? "pass" : "fail";
      entry["lhs"] = c.lhs;
      entry["rhs"] = c.rhs;
      entry["tolerance"] = c.tolerance;
      entry["mode"] = c.mode == CheckMode::AbsDiff
                          ? "abs-diff"
                          : (c.mode == CheckMode::UpperBound ? "upper-bound"
                                                             : "info");
    }
    checks.push_back(std::move(entry));
  }
  doc["checks"] = std::move(checks);
  doc["summary"] = {{"total", report.checks.size()},
                    {"passed", report.passed()},
                    {"failed", report.failed()},
                    {"skipped", report.skipped()},
                    {"pass", report.pass()}};
  return doc.dump(2) + "\n";
}

}  // namespace tfdcs::verify
