// Acceptance suite: runs every gate criterion over the reference battery and
// prints one PASS/FAIL line per criterion, including the measured runtime
// against its budget. Exits nonzero if any criterion fails.

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "tfdcs/coherent.hpp"
#include "tfdcs/errors.hpp"
#include "tfdcs/quasiprob.hpp"
#include "tfdcs/thermal.hpp"
#include "tfdcs/verify.hpp"

using namespace tfdcs;

namespace {

const double kBetaGrid[] = {0.5, std::log(4.0), 3.0};
const Truncation kTrunc;

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) {
      pass = false;
      detail = what;
    }
  }
};

int g_failures = 0;

void run_criterion(int index, const std::string& title, double budget_ms,
                   const std::function<void(Outcome&)>& body) {
  Outcome outcome;
  const auto start = std::chrono::steady_clock::now();
  try {
    body(outcome);
  } catch (const std::exception& e) {
    outcome.pass = false;
    outcome.detail = std::string("exception: ") + e.what();
  }
  const double elapsed =
      std::chrono::duration<double, std::milli>(
          std::chrono::steady_clock::now() - start)
          .count();
  if (outcome.pass && elapsed >= budget_ms) {
    outcome.pass = false;
    outcome.detail = "runtime budget exceeded";
  }
  if (!outcome.pass) ++g_failures;
  std::printf("%s criterion %2d: %s [%.2f ms / %.0f ms]%s%s\n",
              outcome.pass ? "PASS" : "FAIL", index, title.c_str(), elapsed,
              budget_ms, outcome.detail.empty() ? "" : " -- ",
              outcome.detail.c_str());
}

double rel(double a, double b) {
  return std::abs(a - b) / std::max(std::abs(b), 1e-300);
}

Truncation tight_tail(const DeformedModel& model, coherent::CsKind kind,
                      std::complex<double> z, double beta) {
  Truncation trunc(kTrunc.n_max, 1e-12);
  while (true) {
    try {
      coherent::cs_build(model, kind, z, beta, trunc);
      return trunc;
    } catch (const truncation_error&) {
      if (trunc.n_max >= 2048) throw;
      trunc = Truncation(2 * trunc.n_max, trunc.tail_tol);
    }
  }
}

}  // namespace

int main() {
  const auto battery = verify::reference_battery();
  const auto& m0 = battery[0].model;   // linear, E0 = 1/2
  const auto& m1 = battery[2].model;   // Bessel family, generalized
  const auto& m1l = battery[3].model;  // Bessel family, linear

  run_criterion(1, "theta consistency", 1.0, [&](Outcome& o) {
    for (const auto& nm : battery) {
      for (double beta : kBetaGrid) {
        const double theta = thermal::theta_of_beta(nm.model, beta);
        o.require(std::abs(std::tanh(theta) - std::exp(-0.5 * beta)) <= 1e-12,
                  "tanh(theta) mismatch at " + nm.name);
        const double ch = std::cosh(theta), sh = std::sinh(theta);
        o.require(std::abs(ch * ch - sh * sh - 1.0) <= 1e-12,
                  "hyperbolic identity at " + nm.name);
      }
    }
  });

  run_criterion(2, "thermal-vacuum normalization", 10.0, [&](Outcome& o) {
    for (const auto& nm : battery) {
      for (double beta : kBetaGrid) {
        const auto tv = thermal::thermal_vacuum(nm.model, beta, kTrunc);
        double norm2 = 0.0;
        for (double c : tv.coeffs) norm2 += c * c;
        o.require(norm2 >= 1.0 - 1e-12 && norm2 <= 1.0 + 1e-15,
                  "norm " + std::to_string(norm2) + " at " + nm.name);
      }
    }
  });

  run_criterion(3, "Bose-Einstein closure", 10.0, [&](Outcome& o) {
    for (double beta : kBetaGrid) {
      const double n_t = 1.0 / std::expm1(beta);
      const double expect = thermal::vacuum_expect_num(m0, beta, kTrunc);
      o.require(std::abs(expect - (n_t + 0.5)) <= 1e-10,
                "ladder expectation vs n_T + 1/2");
      const double sh = std::sinh(thermal::theta_of_beta(m0, beta));
      o.require(std::abs(sh * sh - n_t) <= 1e-12, "sinh^2 theta vs n_T");
    }
  });

  run_criterion(4, "thermodynamic identity", 50.0, [&](Outcome& o) {
    for (const auto& nm : battery) {
      for (double beta : kBetaGrid) {
        const double h = 1e-5 * beta;
        const double u = thermal::internal_energy(nm.model, beta, kTrunc);
        const double dlnz =
            (std::log(thermal::partition(nm.model, beta + h, kTrunc)) -
             std::log(thermal::partition(nm.model, beta - h, kTrunc))) /
            (2.0 * h);
        o.require(std::abs(u + dlnz) / std::abs(u) <= 1e-6,
                  "energy identity at " + nm.name);

        const double f = thermal::free_energy(nm.model, beta, kTrunc);
        const double df = (thermal::free_energy(nm.model, beta + h, kTrunc) -
                           thermal::free_energy(nm.model, beta - h, kTrunc)) /
                          (2.0 * h);
        const double ve = thermal::vacuum_expect_num(nm.model, beta, kTrunc);
        o.require(std::abs(beta * df + f - ve) <= 1e-6 * std::abs(u),
                  "free-energy flow at " + nm.name);
      }
    }
  });

  run_criterion(5, "Bogoliubov diagonal identity", 100.0, [&](Outcome& o) {
    for (const auto& nm : battery) {
      for (double beta : kBetaGrid) {
        const auto ops = thermal::bogoliubov_ops(nm.model, beta, kTrunc);
        const Eigen::MatrixXd product = ops.a_plus_beta * ops.a_minus_beta;
        const double ch2 = std::pow(std::cosh(ops.theta), 2);
        const double sh2 = std::pow(std::sinh(ops.theta), 2);
        for (int n = 0; n <= kTrunc.n_max - 2; ++n) {
          const double expect = ch2 * nm.model.ladder_e(n) +
                                sh2 * nm.model.ladder_e(n + 1);
          o.require(std::abs(product(n, n) - expect) <=
                        1e-12 * std::max(1.0, std::abs(expect)),
                    "diagonal element at " + nm.name);
        }
      }
    }
    for (const DeformedModel* model : {&m0, &m1l}) {
      for (double beta : kBetaGrid) {
        const double theta = thermal::theta_of_beta(*model, beta);
        const double closed =
            std::pow(std::sinh(theta), 2) +
            std::cosh(2.0 * theta) *
                thermal::internal_energy(*model, beta, kTrunc);
        o.require(std::abs(thermal::thermal_expect_ApAm(*model, beta, kTrunc) -
                           closed) <= 1e-8,
                  "constant-gap closed form");
      }
    }
  });

  run_criterion(6, "BG eigen-relation", 200.0, [&](Outcome& o) {
    for (const auto& nm : battery) {
      for (double beta : kBetaGrid) {
        for (double r : {0.25, 0.5, 1.0, 2.0}) {
          const std::complex<double> z(r, 0.0);
          const Truncation trunc =
              tight_tail(nm.model, coherent::CsKind::BG, z, beta);
          const double residual = coherent::eigen_residual(
              nm.model, coherent::CsKind::BG, z, beta, trunc);
          o.require(residual <= 1e-10,
                    "residual " + std::to_string(residual) + " at " + nm.name);
        }
      }
    }
  });

  run_criterion(7, "duality and canonical collapse", 10.0, [&](Outcome& o) {
    for (const auto& nm : battery) {
      for (int n = 0; n <= 60; ++n) {
        const double two_log_fact = 2.0 * specfun::pochhammer_log(1.0, n);
        o.require(std::abs(nm.model.rho_bg_log(n) + nm.model.rho_kp_log(n) -
                           two_log_fact) <= 1e-12 *
                      std::max(1.0, two_log_fact),
                  "duality at " + nm.name);
      }
    }
    const std::complex<double> z(0.8, 0.3);
    for (double beta : kBetaGrid) {
      const auto bg = coherent::cs_build(m0, coherent::CsKind::BG, z, beta,
                                         kTrunc);
      const auto kp = coherent::cs_build(m0, coherent::CsKind::KP, z, beta,
                                         kTrunc);
      for (int n = 0; n <= kTrunc.n_max; ++n) {
        o.require(std::abs(bg.coeffs[n] - kp.coeffs[n]) <= 1e-14,
                  "kind collapse on the oscillator");
      }
    }
  });

  run_criterion(8, "resolution-of-identity moments", 5000.0, [&](Outcome& o) {
    for (const DeformedModel* model : {&m0, &m1}) {
      for (int n = 0; n <= 8; ++n) {
        const auto first = coherent::identity_moment_check(*model, n, 0.5);
        o.require(rel(first.first, first.second) <= 1e-6,
                  "moment n=" + std::to_string(n));
        const auto second = coherent::identity_moment_check(*model, n, 3.0);
        o.require(std::abs(first.first - second.first) <=
                      1e-10 * first.second,
                  "beta dependence in moment n=" + std::to_string(n));
      }
    }
  });

  run_criterion(9, "overlap laws", 100.0, [&](Outcome& o) {
    const std::complex<double> labels[] = {
        {0.25, 0.0}, {0.35, 0.35}, {-0.5, 0.2}, {0.0, 0.9}, {1.0, -0.4}};
    for (const auto& nm : battery) {
      for (double beta : kBetaGrid) {
        for (std::size_t i = 0; i < 5; ++i) {
          const auto z = labels[i];
          const auto zp = labels[(i + 2) % 5];
          const auto s1 =
              coherent::cs_build(nm.model, coherent::CsKind::BG, z, beta,
                                 kTrunc);
          const auto s2 =
              coherent::cs_build(nm.model, coherent::CsKind::BG, zp, beta,
                                 kTrunc);
          std::complex<double> series(0.0, 0.0);
          for (int n = 0; n <= kTrunc.n_max; ++n) {
            series += std::conj(s1.coeffs[n]) * s2.coeffs[n];
          }
          const auto closed =
              coherent::overlap(nm.model, coherent::CsKind::BG, z, zp, beta);
          o.require(std::abs(series - closed) <= 1e-10,
                    "series vs closed overlap at " + nm.name);
          o.require(std::abs(closed) <= 1.0 + 1e-12,
                    "overlap magnitude bound at " + nm.name);
        }
      }
    }
    for (double beta : kBetaGrid) {
      const double ch2 =
          std::pow(std::cosh(thermal::theta_of_beta(m0, beta)), 2);
      const std::complex<double> z(0.9, 0.2), zp(-0.3, 0.6);
      const auto ov = coherent::overlap(m0, coherent::CsKind::BG, z, zp, beta);
      o.require(std::abs(std::norm(ov) - std::exp(-std::norm(z - zp) * ch2)) <=
                    1e-10,
                "Gaussian overlap law");
    }
  });

  run_criterion(10, "purification and TFD equivalence", 50.0, [&](Outcome& o) {
    for (const auto& nm : battery) {
      for (double beta : kBetaGrid) {
        const auto tv = thermal::thermal_vacuum(nm.model, beta, kTrunc);
        const auto reduced = quasiprob::partial_trace_tilde(tv);
        const auto direct = quasiprob::density_build(nm.model, beta, kTrunc);
        for (int n = 0; n <= kTrunc.n_max; ++n) {
          o.require(std::abs(reduced.weights[n] - direct.weights[n]) <=
                        1e-12 * std::max(direct.weights[n], 1e-300),
                    "weights at " + nm.name);
        }
        std::mt19937 rng(0xacce97u);
        for (int k = 0; k < 5; ++k) {
          std::vector<double> obs(kTrunc.n_max + 1);
          for (auto& v : obs) v = -1.0 + 2.0 * (rng() / 4294967295.0);
          double vacuum_side = 0.0;
          for (int n = 0; n <= kTrunc.n_max; ++n) {
            vacuum_side += tv.coeffs[n] * tv.coeffs[n] * obs[n];
          }
          const double average =
              quasiprob::thermal_average(nm.model, obs, beta, kTrunc);
          o.require(std::abs(vacuum_side - average) <= 1e-12,
                    "observable average at " + nm.name);
        }
      }
    }
  });

  run_criterion(11, "Q and P distributions", 10000.0, [&](Outcome& o) {
    for (const auto& nm : battery) {
      for (double beta : kBetaGrid) {
        const auto density = quasiprob::density_build(nm.model, beta, kTrunc);
        const double q0 = quasiprob::husimi_q(nm.model, {0.0, 0.0}, beta,
                                              kTrunc);
        o.require(std::abs(q0 - density.weights[0]) <=
                      1e-12 * density.weights[0],
                  "Q at the origin at " + nm.name);

        const double gamma_log = nm.model.gamma_ratio_log();
        const double z_log =
            std::log(thermal::partition(nm.model, beta, kTrunc));
        const auto& model = nm.model;
        auto integrand = [&model, gamma_log, z_log, beta](double t) {
          return std::exp(gamma_log +
                          specfun::meijer_weight_log(model.params(), t) +
                          quasiprob::husimi_series_log(model, t, beta, kTrunc) -
                          z_log);
        };
        const double mass = specfun::quad_semiinfinite(integrand, 1e-8).value;
        o.require(std::abs(mass - 1.0) <= 1e-6,
                  "Husimi mass at " + nm.name);
      }
    }
    for (const DeformedModel* model : {&m0, &m1l}) {
      for (double beta : {0.5, std::log(4.0)}) {
        for (int n = 0; n <= 8; ++n) {
          const auto check = quasiprob::p_moment_check(*model, n, beta, kTrunc);
          o.require(rel(check.first, check.second) <= 1e-5,
                    "P moment n=" + std::to_string(n));
        }
      }
    }
  });

  run_criterion(12, "thermal qubit", 1.0, [&](Outcome& o) {
    double prev_c0 = 0.0, prev_c1 = 1.0;
    for (int i = 0; i < 100; ++i) {
      const double beta = 0.01 * std::pow(10.0, 4.0 * i / 99.0);  // to 100
      const auto [c0, c1] = thermal::thermal_qubit(0.0, 1.0, beta);
      o.require(std::abs(c0 * c0 + c1 * c1 - 1.0) <= 1e-15,
                "amplitude normalization");
      if (i > 0) {
        o.require(c0 >= prev_c0 && c1 <= prev_c1, "monotone approach");
      }
      prev_c0 = c0;
      prev_c1 = c1;
    }
    const auto [hot0, hot1] = thermal::thermal_qubit(0.0, 1.0, 0.01);
    o.require(std::abs(hot0 - 1.0 / std::sqrt(2.0)) <= 2e-3 &&
                  std::abs(hot1 - 1.0 / std::sqrt(2.0)) <= 2e-3,
              "high-temperature limit");
    const auto [cold0, cold1] = thermal::thermal_qubit(0.0, 1.0, 100.0);
    o.require(std::abs(cold0 - 1.0) <= 1e-15 && cold1 <= 1e-15,
              "low-temperature limit");
  });

  run_criterion(13, "CLI determinism", 30000.0, [&](Outcome& o) {
    const std::string cli = TFDCS_CLI_PATH;
    const std::string out1 = "/tmp/tfdcs_accept_report_1.json";
    const std::string out2 = "/tmp/tfdcs_accept_report_2.json";
    for (const auto& [out, idx] :
         {std::pair{out1, 1}, std::pair{out2, 2}}) {
      const std::string cmd =
          cli + " verify --suite all --out " + out + " 2>/dev/null";
      const int status = std::system(cmd.c_str());
      o.require(WIFEXITED(status) && WEXITSTATUS(status) == 0,
                "verify run " + std::to_string(idx) + " exit code");
    }
    std::ifstream f1(out1, std::ios::binary), f2(out2, std::ios::binary);
    std::stringstream b1, b2;
    b1 << f1.rdbuf();
    b2 << f2.rdbuf();
    o.require(b1.str().size() > 0 && b1.str() == b2.str(),
              "reports differ between runs");
  });

  std::printf("%s: %d criterion(s) failed\n",
              g_failures == 0 ? "ACCEPTANCE PASS" : "ACCEPTANCE FAIL",
              g_failures);
  return g_failures == 0 ? 0 : 1;
}
