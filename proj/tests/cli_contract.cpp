// Exercises the command-line surface end to end: output formats, grid
// semantics, determinism, and the exit-code contract (0 ok, 1 failed
// verification, 2 malformed configuration, 3 numeric failure).

#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace {

const std::string kCli = TFDCS_CLI_PATH;
int g_failures = 0;

void expect(bool ok, const std::string& what) {
  if (!ok) {
    ++g_failures;
    std::fprintf(stderr, "FAIL: %s\n", what.c_str());
  }
}

struct RunResult {
  int exit_code = -1;
  std::string out;
};

RunResult run(const std::string& args, const std::string& env = "") {
  const std::string out_path = "/tmp/tfdcs_cli_test_stdout.txt";
  const std::string cmd =
      env + kCli + " " + args + " > " + out_path + " 2>/dev/null";
  const int status = std::system(cmd.c_str());
  RunResult result;
  if (WIFEXITED(status)) result.exit_code = WEXITSTATUS(status);
  std::ifstream in(out_path, std::ios::binary);
  std::stringstream buffer;
  buffer << in.rdbuf();
  result.out = buffer.str();
  return result;
}

std::string write_model(const std::string& name, const std::string& body) {
  const std::string path = "/tmp/tfdcs_cli_test_" + name + ".json";
  std::ofstream out(path);
  out << body;
  return path;
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> lines;
  std::stringstream ss(text);
  std::string line;
  while (std::getline(ss, line)) lines.push_back(line);
  return lines;
}

double field(const std::string& csv_line, int index) {
  std::stringstream ss(csv_line);
  std::string cell;
  for (int i = 0; i <= index; ++i) std::getline(ss, cell, ',');
  return std::stod(cell);
}

std::string to_arg(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

int main() {
  const std::string ho = write_model("ho", R"({
    "p": 0, "q": 0, "a": [], "b": [],
    "hbar_omega": 1.0,
    "spectrum": {"kind": "linear", "E0": 0.5}
  })");
  const std::string flat = write_model("flat", R"({
    "p": 0, "q": 0, "a": [], "b": [],
    "hbar_omega": 1.0,
    "spectrum": {"kind": "linear", "E0": 0.0}
  })");
  const std::string bessel_gen = write_model("bessel_gen", R"({
    "p": 0, "q": 1, "a": [], "b": [2.0],
    "hbar_omega": 1.0,
    "spectrum": {"kind": "generalized"}
  })");

  {
    const auto r = run("eval --model " + flat + " --quantity theta --beta " +
                       to_arg(std::log(4.0)));
    expect(r.exit_code == 0, "eval theta exit code");
    const auto lines = lines_of(r.out);
    expect(lines.size() == 2 && lines[0] == "quantity,beta,value",
           "eval theta table shape");
    expect(std::abs(field(lines[1], 2) - 0.5493061443340549) < 1e-12,
           "eval theta value");
  }

  {
    const auto r = run("eval --model " + flat + " --quantity nT --beta " +
                       to_arg(std::log(2.0)));
    expect(r.exit_code == 0 && std::abs(field(lines_of(r.out)[1], 2) - 1.0) <
                                   1e-13,
           "eval nT value");
  }

  {
    const auto r = run("eval --model " + flat +
                       " --quantity thermal-vacuum --beta 60");
    const auto lines = lines_of(r.out);
    expect(r.exit_code == 0 && lines.size() >= 2 && lines.size() < 20,
           "cold thermal vacuum is effectively a single entry");
    expect(std::abs(field(lines[1], 1) - 1.0) < 1e-12,
           "cold thermal vacuum ground coefficient");
  }

  {
    const auto r = run("cs --model " + flat +
                       " --kind bg --z-re 0 --z-im 0 --beta 1");
    const auto lines = lines_of(r.out);
    expect(r.exit_code == 0 && lines.size() == 2,
           "vacuum coherent state emits one row");
    expect(field(lines[1], 0) == 0.0 && field(lines[1], 1) == 1.0 &&
               field(lines[1], 2) == 0.0 && field(lines[1], 3) == 1.0,
           "vacuum coherent state row contents");
  }

  {
    // Poisson weights with mean |z cosh(theta)|^2 for the oscillator family
    const double beta = std::log(4.0);
    const auto r = run("cs --model " + flat + " --kind bg --z-re 0.6 --beta " +
                       to_arg(beta));
    expect(r.exit_code == 0, "cs exit code");
    const auto lines = lines_of(r.out);
    const double ch2 = 4.0 / 3.0;  // cosh^2 at tanh(theta) = 1/2
    const double mean = 0.36 * ch2;
    double fact = 1.0;
    for (int n = 0; n <= 6; ++n) {
      if (n > 0) fact *= n;
      const double poisson = std::exp(-mean) * std::pow(mean, n) / fact;
      expect(std::abs(field(lines[1 + n], 3) - poisson) < 1e-12,
             "cs Poisson weight at n=" + std::to_string(n));
    }
  }

  {
    const auto r = run("eval --model " + flat +
                       " --quantity partition --beta 2 --format json");
    expect(r.exit_code == 0, "eval json exit code");
    expect(r.out.find("\"quantity\": \"partition\"") != std::string::npos &&
               r.out.find("\"value\":") != std::string::npos,
           "eval json payload");
    const auto again = run("eval --model " + flat +
                           " --quantity partition --beta 2 --format json");
    expect(r.out == again.out, "eval json output deterministic");
  }

  {
    const auto r = run("qubit --e0 0 --e1 1 --beta " +
                       to_arg(std::log(3.0)));
    const auto lines = lines_of(r.out);
    expect(r.exit_code == 0 && lines.size() == 2, "qubit single-beta table");
    expect(std::abs(field(lines[1], 1) - std::sqrt(3.0) / 2.0) < 1e-12 &&
               std::abs(field(lines[1], 2) - 0.5) < 1e-12,
           "qubit amplitudes at beta gap ln 3");
    expect(std::abs(field(lines[1], 3) + field(lines[1], 4) - 1.0) < 1e-15,
           "qubit normalization");
  }

  {
    const auto r = run("scan --model " + ho +
                       " --quantity internal-energy --beta 0.1:10:3 "
                       "--geometric");
    const auto lines = lines_of(r.out);
    expect(r.exit_code == 0 && lines.size() == 4,
           "geometric scan emits header plus three rows");
    expect(lines[0] == "beta,internal-energy,error", "scan header");
    const double betas[] = {0.1, 1.0, 10.0};
    for (int i = 0; i < 3; ++i) {
      expect(std::abs(field(lines[1 + i], 0) - betas[i]) < 1e-12,
             "geometric grid point " + std::to_string(i));
      const double coth = 0.5 / std::tanh(0.5 * betas[i]);
      expect(std::abs(field(lines[1 + i], 1) - coth) < 1e-9,
             "scan energy matches the closed curve at row " +
                 std::to_string(i));
    }
  }

  {
    const auto serial = run("scan --model " + ho +
                                " --quantity partition,internal-energy "
                                "--beta 0.5:3:7",
                            "TFDCS_THREADS=1 ");
    const auto parallel = run("scan --model " + ho +
                                  " --quantity partition,internal-energy "
                                  "--beta 0.5:3:7",
                              "TFDCS_THREADS=4 ");
    expect(serial.exit_code == 0 && parallel.exit_code == 0 &&
               serial.out == parallel.out,
           "scan output independent of the thread budget");
    const auto again = run("scan --model " + ho +
                               " --quantity partition,internal-energy "
                               "--beta 0.5:3:7",
                           "TFDCS_THREADS=4 ");
    expect(parallel.out == again.out, "scan output deterministic across runs");
  }

  {
    const auto printed = run("model print --model " + bessel_gen);
    expect(printed.exit_code == 0, "model print exit code");
    const std::string echoed = write_model("echoed", printed.out);
    const auto reprinted = run("model print --model " + echoed);
    expect(reprinted.exit_code == 0 && reprinted.out == printed.out,
           "model print round trip is byte-identical");
  }

  // exit-code contract
  expect(run("eval --quantity theta --beta 1").exit_code == 2,
         "missing model file is a configuration error");
  expect(run("eval --model /nonexistent.json --quantity theta --beta 1")
                 .exit_code == 2,
         "unreadable model file is a configuration error");
  expect(run("eval --model " + flat + " --quantity entropy --beta 1")
                 .exit_code == 2,
         "unknown quantity is a configuration error");
  expect(run("eval --model " + flat + " --quantity theta --beta 1:2:5")
                 .exit_code == 2,
         "eval rejects beta ranges");
  expect(run("scan --model " + flat + " --quantity theta --beta 2:1:5")
                 .exit_code == 2,
         "scan rejects a reversed range");
  expect(run("eval --model " + flat + " --quantity theta --beta 1e-13")
                 .exit_code == 3,
         "theta divergence is a numeric failure");
  expect(run("qubit --e0 1 --e1 1 --beta 1").exit_code == 2,
         "degenerate qubit levels are a configuration error");
  expect(run("verify --model " + flat + " --suite spectral").exit_code == 2,
         "unknown suite is a configuration error");
  expect(run("eval --model " + flat + " --quantity theta --beta 1 --n-max 2")
                 .exit_code == 2,
         "cutoff below the minimum is a configuration error");

  {
    const auto r = run("verify --model " + ho + " --suite thermal --out " +
                       std::string("/tmp/tfdcs_cli_test_report.json"));
    expect(r.exit_code == 0, "thermal suite on the oscillator passes");
  }
  expect(run("verify --model " + ho + " --suite thermal --tol 1e-30")
                 .exit_code == 1,
         "impossible tolerance forces a failing report");
  {
    const auto r = run("verify --model " + bessel_gen + " --suite quasiprob");
    expect(r.exit_code == 0,
           "quasiprob suite on a generalized model passes with skips");
    expect(r.out.find("\"status\": \"skip\"") != std::string::npos,
           "generalized model reports P checks as skipped");
    expect(r.out.find("requires a Linear spectrum") != std::string::npos,
           "skip reason is stated");
  }

  if (g_failures == 0) {
    std::printf("cli contract: all checks passed\n");
    return 0;
  }
  std::printf("cli contract: %d check(s) failed\n", g_failures);
  return 1;
}
