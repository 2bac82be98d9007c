// Command-line front end: model ingestion, quantity evaluation, grid sweeps
// with CSV/JSON emission, and the verification suites with pass/fail exit
// semantics. Exit codes: 0 success, 1 failed verification, 2 malformed
// configuration, 3 numeric failure.

#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "tfdcs/coherent.hpp"
#include "tfdcs/errors.hpp"
#include "tfdcs/model_json.hpp"
#include "tfdcs/quasiprob.hpp"
#include "tfdcs/thermal.hpp"
#include "tfdcs/verify.hpp"

namespace {

using namespace tfdcs;

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

struct BetaSpec {
  double start = 0.0;
  double stop = 0.0;
  int count = 1;
  bool geometric = false;
  bool is_range = false;

  std::vector<double> grid() const {
    if (!is_range) return {start};
    std::vector<double> out(count);
    for (int i = 0; i < count; ++i) {
      const double f = static_cast<double>(i) / (count - 1);
      out[i] = geometric ? start * std::pow(stop / start, f)
                         : start + f * (stop - start);
    }
    return out;
  }
};

BetaSpec parse_beta(const std::string& text, bool geometric) {
  BetaSpec spec;
  spec.geometric = geometric;
  const auto first = text.find(':');
  if (first == std::string::npos) {
    try {
      spec.start = std::stod(text);
    } catch (const std::exception&) {
      throw config_error("--beta expects a number or start:stop:count");
    }
    if (!(spec.start > 0.0)) {
      throw config_error("--beta must be positive");
    }
    return spec;
  }
  const auto second = text.find(':', first + 1);
  if (second == std::string::npos) {
    throw config_error("--beta range must be start:stop:count");
  }
  try {
    spec.start = std::stod(text.substr(0, first));
    spec.stop = std::stod(text.substr(first + 1, second - first - 1));
    spec.count = std::stoi(text.substr(second + 1));
  } catch (const std::exception&) {
    throw config_error("--beta range must be start:stop:count with numbers");
  }
  spec.is_range = true;
  if (!(spec.start > 0.0) || !(spec.start < spec.stop) || spec.count < 2) {
    throw config_error(
        "--beta range requires 0 < start < stop and count >= 2");
  }
  return spec;
}

struct OutputTarget {
  std::string path;  // empty means stdout

  void write(const std::string& text) const {
    if (path.empty()) {
      std::fwrite(text.data(), 1, text.size(), stdout);
      return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
      throw config_error("cannot open output file: " + path);
    }
    out << text;
  }
};

struct CommonOpts {
  std::string model_path;
  std::string beta_text = "1";
  bool geometric = false;
  int n_max = 128;
  double tail_tol = 1e-12;
  std::string format = "csv";
  std::string out_path;

  Truncation truncation() const {
    try {
      return Truncation(n_max, tail_tol);
    } catch (const numeric_error& e) {
      throw config_error(e.what());
    }
  }
};

void add_common(CLI::App* cmd, CommonOpts& opts, bool needs_model) {
  auto* model = cmd->add_option("--model", opts.model_path,
                                "model JSON file");
  if (needs_model) model->required();
  cmd->add_option("--beta", opts.beta_text,
                  "inverse temperature, value or start:stop:count");
  cmd->add_flag("--geometric", opts.geometric,
                "use a geometric beta grid instead of a linear one");
  cmd->add_option("--n-max", opts.n_max, "Fock-space cutoff")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--tail-tol", opts.tail_tol, "truncation tail tolerance")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--format", opts.format, "output format")
      ->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--out", opts.out_path, "output file (default stdout)");
}

double scalar_quantity(const DeformedModel& model, const std::string& name,
                       double beta, const Truncation& trunc) {
  if (name == "theta") return thermal::theta_of_beta(model, beta);
  if (name == "partition") return thermal::partition(model, beta, trunc);
  if (name == "internal-energy")
    return thermal::internal_energy(model, beta, trunc);
  if (name == "free-energy") return thermal::free_energy(model, beta, trunc);
  if (name == "nT") return thermal::bose_einstein(model, beta);
  if (name == "vacuum-expect")
    return thermal::vacuum_expect_num(model, beta, trunc);
  if (name == "thermal-expect")
    return thermal::thermal_expect_ApAm(model, beta, trunc);
  throw config_error("unknown quantity '" + name + "'");
}

const char* kScalarQuantities =
    "theta|partition|internal-energy|free-energy|nT|vacuum-expect|"
    "thermal-expect";

int cmd_eval(const CommonOpts& opts, const std::string& quantity) {
  const DeformedModel model = model_from_json_file(opts.model_path);
  const Truncation trunc = opts.truncation();
  const BetaSpec beta = parse_beta(opts.beta_text, opts.geometric);
  if (beta.is_range) {
    throw config_error("eval expects a single --beta; use scan for ranges");
  }

  std::ostringstream os;
  if (quantity == "thermal-vacuum") {
    auto tv = thermal::thermal_vacuum(model, beta.start, trunc);
    while (tv.coeffs.size() > 1 && tv.coeffs.back() == 0.0) {
      tv.coeffs.pop_back();  // underflowed tail rows carry no information
    }
    if (opts.format == "csv") {
      os << "n,coefficient,tail_weight\n";
      for (std::size_t n = 0; n < tv.coeffs.size(); ++n) {
        os << n << ',' << fmt17(tv.coeffs[n]) << ','
           << fmt17(tv.tail_weight) << '\n';
      }
    } else {
      nlohmann::ordered_json doc;
      doc["quantity"] = quantity;
      doc["beta"] = beta.start;
      doc["coefficients"] = tv.coeffs;
      doc["tail_weight"] = tv.tail_weight;
      os << doc.dump(2) << '\n';
    }
  } else {
    const double value = scalar_quantity(model, quantity, beta.start, trunc);
    if (opts.format == "csv") {
      os << "quantity,beta,value\n"
         << quantity << ',' << fmt17(beta.start) << ',' << fmt17(value)
         << '\n';
    } else {
      nlohmann::ordered_json doc;
      doc["quantity"] = quantity;
      doc["beta"] = beta.start;
      doc["value"] = value;
      os << doc.dump(2) << '\n';
    }
  }
  OutputTarget{opts.out_path}.write(os.str());
  return 0;
}

int cmd_cs(const CommonOpts& opts, const std::string& kind_name, double z_re,
           double z_im) {
  const DeformedModel model = model_from_json_file(opts.model_path);
  const Truncation trunc = opts.truncation();
  const BetaSpec beta = parse_beta(opts.beta_text, opts.geometric);
  if (beta.is_range) {
    throw config_error("cs expects a single --beta");
  }
  const coherent::CsKind kind =
      kind_name == "bg" ? coherent::CsKind::BG : coherent::CsKind::KP;
  const auto state = coherent::cs_build(model, kind, {z_re, z_im}, beta.start,
                                        trunc);

  // Trailing coefficients that underflowed to exact zero carry no
  // information; the table ends at the last populated row.
  std::size_t rows = state.coeffs.size();
  while (rows > 1 && state.coeffs[rows - 1] == std::complex<double>(0.0)) {
    --rows;
  }

  std::ostringstream os;
  if (opts.format == "csv") {
    os << "n,re,im,abs2,norm_log,tail_weight\n";
    for (std::size_t n = 0; n < rows; ++n) {
      os << n << ',' << fmt17(state.coeffs[n].real()) << ','
         << fmt17(state.coeffs[n].imag()) << ','
         << fmt17(std::norm(state.coeffs[n])) << ',' << fmt17(state.norm_log)
         << ',' << fmt17(state.tail_weight) << '\n';
    }
  } else {
    nlohmann::ordered_json doc;
    doc["kind"] = kind_name;
    doc["beta"] = beta.start;
    doc["z"] = {{"re", z_re}, {"im", z_im}};
    doc["norm_log"] = state.norm_log;
    doc["tail_weight"] = state.tail_weight;
    nlohmann::ordered_json table = nlohmann::ordered_json::array();
    for (std::size_t n = 0; n < rows; ++n) {
      table.push_back({{"n", n},
                       {"re", state.coeffs[n].real()},
                       {"im", state.coeffs[n].imag()},
                       {"abs2", std::norm(state.coeffs[n])}});
    }
    doc["coefficients"] = std::move(table);
    os << doc.dump(2) << '\n';
  }
  OutputTarget{opts.out_path}.write(os.str());
  return 0;
}

int thread_budget(std::size_t jobs) {
  unsigned threads = std::thread::hardware_concurrency();
  if (threads == 0) threads = 1;
  if (const char* env = std::getenv("TFDCS_THREADS")) {
    try {
      const int cap = std::stoi(env);
      if (cap >= 1) threads = std::min<unsigned>(threads, cap);
    } catch (const std::exception&) {
      throw config_error("TFDCS_THREADS must be a positive integer");
    }
  }
  return static_cast<int>(std::min<std::size_t>(threads, jobs));
}

int cmd_scan(const CommonOpts& opts, const std::string& quantity_list) {
  const DeformedModel model = model_from_json_file(opts.model_path);
  const Truncation trunc = opts.truncation();
  const BetaSpec beta = parse_beta(opts.beta_text, opts.geometric);
  if (!beta.is_range) {
    throw config_error("scan requires --beta start:stop:count");
  }

  std::vector<std::string> quantities;
  std::stringstream names(quantity_list);
  std::string name;
  while (std::getline(names, name, ',')) {
    if (name == "thermal-vacuum") {
      throw config_error("thermal-vacuum is not a scannable scalar");
    }
    quantities.push_back(name);
  }
  if (quantities.empty()) {
    throw config_error("scan requires at least one quantity");
  }

  const std::vector<double> grid = beta.grid();
  std::vector<std::string> rows(grid.size());

  // Rows are computed concurrently but emitted in grid order. Sweeps retry
  // a failed truncation with a doubled cutoff before reporting the row error.
  auto compute_row = [&](std::size_t i) {
    std::ostringstream row;
    row << fmt17(grid[i]);
    std::string error;
    for (const auto& q : quantities) {
      if (!error.empty()) {
        row << ",nan";
        continue;
      }
      try {
        Truncation local = trunc;
        for (;;) {
          try {
            const double value = scalar_quantity(model, q, grid[i], local);
            row << ',' << fmt17(value);
            break;
          } catch (const truncation_error&) {
            if (local.n_max >= 2048) throw;
            local = Truncation(std::min(2048, 2 * local.n_max),
                               local.tail_tol);
          }
        }
      } catch (const numeric_error& e) {
        row << ",nan";
        error = e.kind();
      }
    }
    row << ',' << error << '\n';
    rows[i] = row.str();
  };

  const int workers = thread_budget(grid.size());
  if (workers <= 1) {
    for (std::size_t i = 0; i < grid.size(); ++i) compute_row(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next.fetch_add(1); i < grid.size();
             i = next.fetch_add(1)) {
          compute_row(i);
        }
      });
    }
    for (auto& t : pool) t.join();
  }

  std::ostringstream os;
  os << "beta";
  for (const auto& q : quantities) os << ',' << q;
  os << ",error\n";
  for (const auto& row : rows) os << row;
  OutputTarget{opts.out_path}.write(os.str());
  return 0;
}

int cmd_qubit(const CommonOpts& opts, double e0, double e1) {
  const BetaSpec beta = parse_beta(opts.beta_text, opts.geometric);
  std::ostringstream os;
  os << "beta,c0,c1,c0_sq,c1_sq\n";
  for (double b : beta.grid()) {
    const auto [c0, c1] = thermal::thermal_qubit(e0, e1, b);
    os << fmt17(b) << ',' << fmt17(c0) << ',' << fmt17(c1) << ','
       << fmt17(c0 * c0) << ',' << fmt17(c1 * c1) << '\n';
  }
  OutputTarget{opts.out_path}.write(os.str());
  return 0;
}

int cmd_verify(const CommonOpts& opts, const std::string& suite,
               double tol_override) {
  verify::Options vopts;
  vopts.tol_override = tol_override;
  vopts.trunc = opts.truncation();

  std::vector<verify::NamedModel> models;
  std::string model_label;
  if (opts.model_path.empty()) {
    models = verify::reference_battery();
    model_label = "reference-battery";
  } else {
    models.push_back({opts.model_path, model_from_json_file(opts.model_path)});
    model_label = opts.model_path;
  }

  const verify::Report report = verify::run_suites(suite, models, vopts);

  for (const auto& c : report.checks) {
    if (c.skipped) {
      std::fprintf(stderr, "SKIP %-42s %s (%s)\n", c.id.c_str(),
                   c.name.c_str(), c.reason.c_str());
    } else {
      std::fprintf(stderr, "%s %-42s %s (lhs=%.6g rhs=%.6g tol=%.3g, %.2f ms)\n",
                   c.pass ? "PASS" : "FAIL", c.id.c_str(), c.name.c_str(),
                   c.lhs, c.rhs, c.tolerance, c.runtime_ms);
    }
  }
  std::fprintf(stderr, "verify: %d passed, %d failed, %d skipped\n",
               report.passed(), report.failed(), report.skipped());

  OutputTarget{opts.out_path}.write(
      verify::report_to_json(report, suite, model_label));
  return report.pass() ? 0 : 1;
}

int cmd_model_print(const CommonOpts& opts) {
  const DeformedModel model = model_from_json_file(opts.model_path);
  OutputTarget{opts.out_path}.write(model_to_json(model));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "tfdcs: thermal vacua, deformed-boson coherent states and "
      "quasi-probability distributions on truncated Fock spaces"};
  app.require_subcommand(1);

  CommonOpts eval_opts, cs_opts, scan_opts, qubit_opts, verify_opts,
      print_opts;
  std::string eval_quantity, scan_quantities, cs_kind = "bg";
  std::string verify_suite = "all";
  double z_re = 0.0, z_im = 0.0, e0 = 0.0, e1 = 1.0, tol_override = 0.0;

  auto* eval_cmd = app.add_subcommand("eval", "evaluate one thermal quantity");
  add_common(eval_cmd, eval_opts, true);
  eval_cmd
      ->add_option("--quantity", eval_quantity,
                   std::string(kScalarQuantities) + "|thermal-vacuum")
      ->required();

  auto* cs_cmd =
      app.add_subcommand("cs", "emit thermal coherent-state coefficients");
  add_common(cs_cmd, cs_opts, true);
  cs_cmd->add_option("--kind", cs_kind, "coherent-state kind")
      ->check(CLI::IsMember({"bg", "kp"}));
  cs_cmd->add_option("--z-re", z_re, "Re z");
  cs_cmd->add_option("--z-im", z_im, "Im z");

  auto* scan_cmd =
      app.add_subcommand("scan", "sweep quantities over a beta grid");
  add_common(scan_cmd, scan_opts, true);
  scan_cmd
      ->add_option("--quantity", scan_quantities,
                   std::string("comma-separated list of ") + kScalarQuantities)
      ->required();

  auto* qubit_cmd =
      app.add_subcommand("qubit", "two-level thermal vacuum amplitudes");
  add_common(qubit_cmd, qubit_opts, false);
  qubit_cmd->add_option("--e0", e0, "lower level energy")->required();
  qubit_cmd->add_option("--e1", e1, "upper level energy")->required();

  auto* verify_cmd =
      app.add_subcommand("verify", "run the verification suites");
  add_common(verify_cmd, verify_opts, false);
  verify_cmd->add_option("--suite", verify_suite,
                         "specfun|thermal|coherent|quasiprob|all");
  verify_cmd
      ->add_option("--tol", tol_override, "override every check tolerance")
      ->check(CLI::PositiveNumber);

  auto* model_cmd = app.add_subcommand("model", "model-file utilities");
  model_cmd->require_subcommand(1);
  auto* print_cmd =
      model_cmd->add_subcommand("print", "echo a model file in canonical form");
  add_common(print_cmd, print_opts, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (eval_cmd->parsed()) return cmd_eval(eval_opts, eval_quantity);
    if (cs_cmd->parsed()) return cmd_cs(cs_opts, cs_kind, z_re, z_im);
    if (scan_cmd->parsed()) return cmd_scan(scan_opts, scan_quantities);
    if (qubit_cmd->parsed()) {
      if (!(e1 > e0)) {
        throw config_error("qubit requires e1 > e0");
      }
      return cmd_qubit(qubit_opts, e0, e1);
    }
    if (verify_cmd->parsed())
      return cmd_verify(verify_opts, verify_suite, tol_override);
    if (model_cmd->parsed()) return cmd_model_print(print_opts);
  } catch (const config_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const numeric_error& e) {
    std::fprintf(stderr, "numeric failure [%s]: %s\n", e.kind().c_str(),
                 e.what());
    return 3;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "unexpected failure: %s\n", e.what());
    return 3;
  }
  return 2;
}
