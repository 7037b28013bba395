// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any FAIL.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracle_values.hpp"
#include "xidiv/divisibility.hpp"
#include "xidiv/io.hpp"
#include "xidiv/mixture.hpp"
#include "xidiv/pipeline.hpp"
#include "xidiv/scanner.hpp"
#include "xidiv/theta.hpp"
#include "xidiv/xi.hpp"

using namespace xidiv;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool ok = false;
  std::string detail;
};

int failures = 0;

void criterion(int id, const char* name, double time_limit_s, const std::function<Outcome()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const bool in_time = time_limit_s <= 0.0 || secs < time_limit_s;
  const bool ok = o.ok && in_time;
  if (!ok) ++failures;
  std::printf("%s %2d %-28s %s; %.2fs", ok ? "PASS" : "FAIL", id, name, o.detail.c_str(), secs);
  if (time_limit_s > 0.0) std::printf(" (limit %.0fs)", time_limit_s);
  std::printf("\n");
  std::fflush(stdout);
}

template <typename... Args>
std::string fmt(const char* f, Args... args) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

int main() {
  const NumericConfig cfg;

  criterion(1, "functional equation", 5.0, [&] {
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> re(0.0, 1.0), im(-30.0, 30.0);
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
      Complex s{re(rng), im(rng)};
      if (s.real() == 0.0) s = {0.5, s.imag()};
      worst = std::max(worst, std::abs(xi_direct(s, cfg) - xi_direct(1.0 - s, cfg)));
    }
    return Outcome{worst < 1e-10, fmt("max |xi(s)-xi(1-s)| = %.3g < %.0e", worst, 1e-10)};
  });

  criterion(2, "two-route Xi", 30.0, [&] {
    double worst = 0.0;
    for (double t : uniform_grid(0.0, 30.0, 0.25)) {
      worst = std::max(worst, std::abs(xi_eq1_value(t, cfg) - xi_direct(Complex{0.5, t}, cfg)));
    }
    return Outcome{worst < 1e-8, fmt("max route gap = %.3g < %.0e", worst, 1e-8)};
  });

  criterion(3, "Psi-transform route", 20.0, [&] {
    const Complex zs[] = {{0.0, 0.0},  {0.4, 0.0},   {-0.4, 0.0}, {0.2, 0.0},  {-0.2, 0.0},
                          {0.1, 0.1},  {0.3, 2.0},   {-0.25, 4.0}, {0.35, -3.0}, {-0.1, 6.0}};
    double worst = 0.0;
    for (Complex z : zs) {
      worst = std::max(worst, std::abs(xi_psi_transform(z, cfg).value - xi_direct(0.5 - z, cfg)));
    }
    return Outcome{worst < 1e-7, fmt("max |gap| over 10 z = %.3g < %.0e", worst, 1e-7)};
  });

  criterion(4, "theta identities", 0.0, [&] {
    double theta_worst = 0.0;
    for (double x : uniform_grid(0.05, 20.0, 0.05)) {
      theta_worst = std::max(theta_worst, theta_functional_residual(x, cfg));
    }
    double series_worst = 0.0;
    bool even = true;
    for (double u : uniform_grid(0.0, 5.0, 0.05)) {
      series_worst = std::max(series_worst, psi_kernel_series_residual(u, cfg));
      even = even && psi_kernel(u, cfg) == psi_kernel(-u, cfg);
    }
    const bool ok = theta_worst < 1e-12 && series_worst < 1e-8 && even;
    return Outcome{ok, fmt("theta residual %.3g < 1e-12, Psi series residual %.3g < 1e-8, %s",
                           theta_worst, series_worst, even ? "even" : "NOT even")};
  });

  criterion(5, "critical-line zeros", 60.0, [&] {
    const ZeroList z = scan_critical_line(0.0, 50.0, 0.05, cfg);
    const double expected[] = {oracle::kZero1, oracle::kZero2, oracle::kZero3};
    double worst = 0.0;
    for (int i = 0; i < 3 && i < static_cast<int>(z.zeros.size()); ++i) {
      worst = std::max(worst, std::abs(z.zeros[i].t - expected[i]));
    }
    const bool ok = z.zeros.size() == 10 && worst < 1e-6;
    return Outcome{ok, fmt("%zu zeros in [0,50] (want 10), first three off by %.3g",
                           z.zeros.size(), worst)};
  });

  criterion(6, "mixture positivity", 0.0, [&] {
    double lowest = 0.0;
    for (int n = 1; n <= 20; ++n) {
      const PiecewiseDensity g(n);
      for (int i = 1; i <= 5000; ++i) lowest = std::min(lowest, g(0.01 * i));
    }
    bool decreasing = true;
    for (int n = 1; n <= 20; ++n) {
      for (int k = 0; k < 30; ++k) {
        decreasing = decreasing && alternating_moment(n, k + 1) < alternating_moment(n, k);
      }
    }
    return Outcome{lowest >= -1e-15 && decreasing,
                   fmt("min g_n = %.3g >= -1e-15, a_{n,k} decreasing: %s", lowest,
                       decreasing ? "yes" : "no")};
  });

  criterion(7, "sign census", 0.0, [&] {
    const SignedMixtureMeasure m = build_signed_measure(16);
    bool all_negative = m.per_n.size() == 16;
    double largest = -std::numeric_limits<double>::infinity();
    for (const ChannelMass& c : m.per_n) {
      all_negative = all_negative && c.exponential_mass < 0.0;
      largest = std::max(largest, c.exponential_mass);
    }
    const std::string a = dump_json(json(run_step(StepId::S7, json::object(), cfg)));
    const std::string b = dump_json(json(run_step(StepId::S7, json::object(), cfg)));
    const bool ok = all_negative && a == b;
    return Outcome{ok, fmt("r=1 mass < 0 for n=1..16 (largest %.4g), report %s", largest,
                           a == b ? "deterministic" : "NOT deterministic")};
  });

  criterion(8, "Kristiansen property suite", 0.0, [&] {
    std::mt19937_64 rng(8);
    std::uniform_int_distribution<int> count(1, 8);
    std::uniform_real_distribution<double> scale(0.0, 5.0), weight(0.01, 1.0);
    const std::vector<double> grid{0.5, 0.75, 1.0, 1.5, 2.0, 3.0};
    int clean = 0;
    for (int i = 0; i < 50; ++i) {
      std::vector<MixtureScale> atoms(count(rng));
      for (auto& a : atoms) a = {scale(rng), weight(rng)};
      const DiscreteMixture mix(atoms);
      const CMReport r = cm_test([&](double s) { return kristiansen_lt(mix, s); }, grid, cfg);
      if (r.passed && r.violation_count == 0) ++clean;
    }
    NumericConfig k4 = cfg;
    k4.cm_order = 4;
    const CMReport control =
        cm_test([](double s) { return 1.0 / (1.0 + s * s); }, uniform_grid(0.25, 2.0, 0.25), k4);
    const bool ok = clean == 50 && !control.passed;
    return Outcome{ok, fmt("%d/50 mixtures CM at order 8, 1/(1+s^2) %s", clean,
                           control.passed ? "accepted" : "rejected")};
  });

  criterion(9, "pipeline", 300.0, [&] {
    const auto reports = run_all(cfg);
    bool ok = reports.size() == 10;
    for (const StepReport& r : reports) {
      const bool finite = std::isfinite(r.abs_residual) && std::isfinite(std::abs(r.lhs)) &&
                          std::isfinite(std::abs(r.rhs)) && !r.error;
      switch (r.step_id) {
        case StepId::S6:
        case StepId::S7:
        case StepId::S9:
        case StepId::S10:
          ok = ok && r.verdict == Verdict::measured_only && finite;
          break;
        case StepId::S1:
        case StepId::S2:
        case StepId::S3:
        case StepId::S4:
        case StepId::S5:
        case StepId::S8:
          ok = ok && r.verdict == Verdict::pass;
          break;
      }
    }
    NumericConfig negative = cfg;
    negative.quad_upper_cut = 1.0;
    const StepReport control = run_step(StepId::S3, json::object(), negative);
    const bool verdicts_ok = ok;
    ok = ok && control.verdict == Verdict::fail;
    return Outcome{ok, fmt("verdicts %s; negative control S3 residual %.3g -> %s",
                           verdicts_ok ? "as required" : "WRONG", control.abs_residual,
                           std::string(to_string(control.verdict)).c_str())};
  });

  criterion(10, "determinism", 0.0, [&] {
    const fs::path base = fs::temp_directory_path() / "xidiv_acceptance";
    fs::remove_all(base);
    const std::string cli = XIDIV_CLI_PATH;
    int files = 0, identical = 0;
    for (const char* dir : {"a", "b"}) {
      const std::string cmd = cli + " verify --all --out " + (base / dir).string() + " 2>/dev/null";
      if (std::system(cmd.c_str()) != 0) return Outcome{false, "verify --all exited nonzero"};
    }
    for (const auto& entry : fs::directory_iterator(base / "a")) {
      ++files;
      if (slurp(entry.path()) == slurp(base / "b" / entry.path().filename())) ++identical;
    }
    fs::remove_all(base);
    return Outcome{files == 11 && identical == files,
                   fmt("%d/%d report files byte-identical across two verify --all runs", identical,
                       files)};
  });

  std::printf("%s: %d criterion(s) failed\n", failures ? "FAIL" : "PASS", failures);
  return failures ? 1 : 0;
}
