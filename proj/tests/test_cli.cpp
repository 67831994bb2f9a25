// End-to-end checks of the command-line front end: spawns the built binary,
// inspects exit codes, stdout, and emitted files.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

namespace {

int failures = 0;

void check(bool ok, const std::string& what) {
  if (!ok) {
    ++failures;
    std::cout << "FAILED: " << what << "\n";
  }
}

struct RunResult {
  int exit_code = -1;
  std::string output;
};

RunResult run(const std::string& args) {
  const std::string out_path = "cli_test_stdout.txt";
  const std::string cmd = std::string(BTLAB_CLI_PATH) + " " + args + " > " + out_path + " 2>&1";
  const int status = std::system(cmd.c_str());
  RunResult r;
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::ifstream is(out_path);
  std::stringstream ss;
  ss << is.rdbuf();
  r.output = ss.str();
  std::filesystem::remove(out_path);
  return r;
}

std::string slurp(const std::string& path) {
  std::ifstream is(path);
  std::stringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream os(path);
  os << content;
}

}  // namespace

int main() {
  // airy-zeros: three rows matching the 5-decimal values.
  {
    const RunResult r = run("airy-zeros --count 3");
    check(r.exit_code == 0, "airy-zeros exit code");
    std::istringstream is(r.output);
    std::string line;
    std::getline(is, line);
    check(line == "n,z_n,abs_ai", "airy-zeros header");
    const double expected[3] = {-2.33811, -4.08795, -5.52056};
    for (int i = 0; i < 3; ++i) {
      std::getline(is, line);
      int n = 0;
      double z = 0.0, ai = 1.0;
      std::sscanf(line.c_str(), "%d,%lf,%lf", &n, &z, &ai);
      check(n == i + 1, "airy-zeros row index");
      check(std::abs(z - expected[i]) <= 1e-5, "airy-zeros value row " + std::to_string(i + 1));
      check(ai <= 1e-12, "airy-zeros |Ai(z_n)| row " + std::to_string(i + 1));
    }
  }
  {
    const RunResult r = run("airy-zeros --count 1");
    check(r.exit_code == 0, "airy-zeros single row exit");
    check(r.output.find("\n1,") != std::string::npos, "airy-zeros single row present");
  }
  {
    const RunResult r = run("airy-zeros --count 0");
    check(r.exit_code == 2, "airy-zeros count 0 is a usage error");
  }

  // numerical-range: virial values and containment.
  {
    const RunResult r = run("numerical-range");
    check(r.exit_code == 0, "numerical-range exit");
    check(r.output.find("a = 0.779369") != std::string::npos, "numerical-range a value");
    check(r.output.find("b = 1.558738") != std::string::npos, "numerical-range b value");
    check(r.output.find("containment(gamma=3) = true") != std::string::npos,
          "numerical-range containment");
    check(r.output.find("PASS") != std::string::npos, "numerical-range pass line");
  }

  // spectrum-1d oscillator: relative errors below 1e-3.
  {
    const RunResult r = run("spectrum-1d --operator oscillator --kappa 1 --h-param 0.01 --extent 4 "
                            "--n-points 4000 --k 3");
    check(r.exit_code == 0, "spectrum-1d oscillator exit");
    std::istringstream is(r.output);
    std::string line;
    std::getline(is, line);  // header
    int rows = 0;
    while (std::getline(is, line)) {
      double rel = 1.0;
      const auto pos = line.rfind(',');
      if (pos != std::string::npos) rel = std::stod(line.substr(pos + 1));
      check(rel < 1e-3, "oscillator relative error row");
      ++rows;
    }
    check(rows == 3, "oscillator row count");
  }

  // spectrum-1d schrodinger V = 0 on [0, pi]: n^2 Dirichlet values.
  {
    const RunResult r = run("spectrum-1d --operator schrodinger --h-param 1 --extent 3.14159265358979 "
                            "--n-points 2000 --k 3");
    check(r.exit_code == 0, "spectrum-1d laplacian exit");
    check(r.output.find("PASS") == std::string::npos, "laplacian prints a table, not a verdict");
    std::istringstream is(r.output);
    std::string line;
    std::getline(is, line);
    std::getline(is, line);
    double comp_re = 0.0;
    std::sscanf(line.c_str(), "%*d,%lf", &comp_re);
    check(std::abs(comp_re - 1.0) < 1e-3, "laplacian ground value ~ 1");
  }

  // usage error for an unknown operator.
  {
    const RunResult r = run("spectrum-1d --operator what");
    check(r.exit_code == 2, "spectrum-1d unknown operator is a usage error");
  }

  // print-defaults is byte-stable.
  {
    const RunResult a = run("--print-defaults");
    const RunResult b = run("--print-defaults");
    check(a.exit_code == 0, "print-defaults exit");
    check(a.output == b.output, "print-defaults deterministic");
    check(a.output.find("experiment = ") != std::string::npos, "print-defaults content");
  }

  // solve-2d on a coarse config: files appear, reruns are byte-identical.
  {
    std::filesystem::remove_all("cli_scratch");
    write_file("cli_solve.cfg",
               "experiment = \"separable\"\nn_list = 4\nnx = 48\nny = 40\nk = 1\n"
               "tol = 1e-10\noutdir = \"cli_scratch\"\nseed = 7\n");
    const RunResult r = run("solve-2d --config cli_solve.cfg");
    check(r.exit_code == 0, "solve-2d exit");
    check(std::filesystem::exists("cli_scratch/separable/4/eigen.json"), "eigen.json emitted");
    check(std::filesystem::exists("cli_scratch/separable/4/psi.csv"), "psi.csv emitted");
    check(std::filesystem::exists("cli_scratch/separable/4/widths.json"), "widths.json emitted");
    const std::string eigen1 = slurp("cli_scratch/separable/4/eigen.json");
    check(eigen1.find("schema_version") != std::string::npos, "eigen.json schema version");
    check(eigen1.find("config") != std::string::npos, "eigen.json embeds the config");
    const RunResult r2 = run("solve-2d --config cli_solve.cfg");
    check(r2.exit_code == 0, "solve-2d rerun exit");
    check(slurp("cli_scratch/separable/4/eigen.json") == eigen1, "solve-2d byte-stable rerun");
    std::filesystem::remove("cli_solve.cfg");
    std::filesystem::remove_all("cli_scratch");
  }

  // tiny 8x8 grid is degenerate but legal.
  {
    std::filesystem::remove_all("cli_scratch_tiny");
    write_file("cli_tiny.cfg",
               "experiment = \"separable\"\nn_list = 4\nnx = 8\nny = 8\nk = 1\n"
               "tol = 1e-10\noutdir = \"cli_scratch_tiny\"\nseed = 7\n");
    const RunResult r = run("solve-2d --config cli_tiny.cfg");
    check(r.exit_code == 0, "solve-2d tiny grid still runs");
    std::filesystem::remove("cli_tiny.cfg");
    std::filesystem::remove_all("cli_scratch_tiny");
  }

  // scaling-sweep needs >= 3 points for a fit: single point exits nonzero (3).
  {
    std::filesystem::remove_all("cli_scratch_single");
    write_file("cli_single.cfg",
               "experiment = \"separable\"\nn_list = 4\nnx = 40\nny = 32\nk = 1\n"
               "outdir = \"cli_scratch_single\"\n");
    const RunResult r = run("scaling-sweep --config cli_single.cfg");
    check(r.exit_code == 3, "single h-point sweep exits 3");
    std::filesystem::remove("cli_single.cfg");
    std::filesystem::remove_all("cli_scratch_single");
  }

  // assumption violation: exit 4, violated item named.
  {
    write_file("cli_bad.cfg",
               "experiment = \"custom\"\npotential = \"polynomial\"\n"
               "potential_params = -0.01, 0, 1\nalpha = \"constant\"\nn_list = 4\n"
               "nx = 32\nny = 24\noutdir = \"cli_scratch_bad\"\n");
    const RunResult r = run("solve-2d --config cli_bad.cfg");
    check(r.exit_code == 4, "assumption violation exit code");
    check(r.output.find("V(0)") != std::string::npos || r.output.find("V(x)") != std::string::npos,
          "violated assumption named");
    std::filesystem::remove("cli_bad.cfg");
    std::filesystem::remove_all("cli_scratch_bad");
  }

  if (failures == 0) {
    std::cout << "all cli checks passed\n";
    return 0;
  }
  std::cout << failures << " cli check(s) failed\n";
  return 1;
}
