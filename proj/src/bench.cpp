#include "corrtwo/bench.hpp"

#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <ostream>

#include "corrtwo/correlation.hpp"
#include "corrtwo/error.hpp"
#include "corrtwo/preprocess.hpp"
#include "corrtwo/simulate.hpp"

namespace corrtwo {

std::uint64_t result_bytes(std::size_t n1, std::size_t n2) {
  return 16ull * static_cast<std::uint64_t>(n1) * static_cast<std::uint64_t>(n2);
}

void check_result_memory(std::size_t n1, std::size_t n2) {
  const long pages = sysconf(_SC_PHYS_PAGES);
  const long page = sysconf(_SC_PAGE_SIZE);
  if (pages <= 0 || page <= 0) return;
  const auto physical = static_cast<std::uint64_t>(pages) * static_cast<std::uint64_t>(page);
  const long double exact = 16.0L * static_cast<long double>(n1) * static_cast<long double>(n2);
  const std::uint64_t need = result_bytes(n1, n2);
  if (exact > static_cast<long double>(physical)) {
    throw NumericError("a " + std::to_string(n1) + " x " + std::to_string(n2) + " result needs " +
                       (exact > static_cast<long double>(UINT64_MAX) ? std::string("more than 2^64")
                                                                    : std::to_string(need)) +
                       " bytes (16 * n1 * n2) but the machine has " +
                       std::to_string(physical) + "; reduce n or window the spectral axis");
  }
}

SpectralDataset bench_dataset(std::size_t m, std::size_t n, std::uint64_t seed) {
  const SimulationScenario s = default_scenario(n, m);
  return sim2ddata(s.kinetics, s.bands, s.spectral_axis, 1e-3, seed);
}

namespace {

bool identical(const CorrelationSpectra& a, const CorrelationSpectra& b) {
  const double scale = std::max({max_abs(a.sync), max_abs(a.async), 1e-300});
  const auto close = [&](const Matrix& x, const Matrix& y) {
    const auto& u = x.values();
    const auto& v = y.values();
    if (u.size() != v.size()) return false;
    for (std::size_t k = 0; k < u.size(); ++k)
      if (std::abs(u[k] - v[k]) > 1e-12 * scale) return false;
    return true;
  };
  return close(a.sync, b.sync) && close(a.async, b.async);
}

}  // namespace

BenchReport run_bench(const BenchConfig& cfg, std::ostream* log) {
  if (cfg.repeats < 3) throw UsageError("bench needs at least 3 repeats");
  if (cfg.sizes.empty()) throw UsageError("bench needs at least one size");
  if (cfg.workers.empty()) throw UsageError("bench needs at least one worker count");
  for (unsigned w : cfg.workers)
    if (w < 1) throw UsageError("worker counts must be positive");

  BenchReport report;
  const NormalizationSpec norm = default_normalization(cfg.engine);
  for (const BenchSize& size : cfg.sizes) {
    check_result_memory(size.n, size.n);
    const DynamicSpectra dyn =
        dynamic_spectra(bench_dataset(size.m, size.n, cfg.seed), PerturbationMean{});

    // Correctness gate: every worker count must reproduce the serial result.
    const CorrelationSpectra serial = correlate(cfg.engine, dyn, dyn, norm, 1);
    for (unsigned w : cfg.workers) {
      if (w == 1) continue;
      if (!identical(serial, correlate(cfg.engine, dyn, dyn, norm, w)))
        throw NumericError("worker-invariance gate failed for m=" + std::to_string(size.m) +
                           ", n=" + std::to_string(size.n) + ", workers=" + std::to_string(w));
    }

    for (unsigned w : cfg.workers) {
      (void)correlate(cfg.engine, dyn, dyn, norm, w);  // warm-up
      std::vector<double> times;
      for (int r = 0; r < cfg.repeats; ++r) {
        const auto t0 = std::chrono::steady_clock::now();
        const CorrelationSpectra out = correlate(cfg.engine, dyn, dyn, norm, w);
        const auto t1 = std::chrono::steady_clock::now();
        times.push_back(std::chrono::duration<double>(t1 - t0).count());
      }
      double mean = 0.0;
      for (double t : times) mean += t;
      mean /= static_cast<double>(times.size());
      double var = 0.0;
      for (double t : times) var += (t - mean) * (t - mean);
      const double sd = std::sqrt(var / static_cast<double>(times.size() - 1));
      report.rows.push_back({size.m, size.n, w, cfg.engine, mean, sd, cfg.repeats});
      if (log) {
        char line[160];
        std::snprintf(line, sizeof line, "m=%zu n=%zu workers=%u mean=%.6f s sd=%.6f s\n", size.m, size.n, w,
                      mean, sd);
        *log << line << std::flush;
      }
    }

    const unsigned most = *std::max_element(cfg.workers.begin(), cfg.workers.end());
    const auto find = [&](unsigned w) {
      for (const BenchRow& row : report.rows)
        if (row.m == size.m && row.n == size.n && row.workers == w) return row.mean_seconds;
      return 0.0;
    };
    const bool has_serial = std::find(cfg.workers.begin(), cfg.workers.end(), 1u) != cfg.workers.end();
    if (has_serial && most > 1) report.ratios.push_back({size.m, size.n, most, find(most) / find(1)});
  }
  return report;
}

std::string format_bench(const BenchReport& report) {
  std::string out;
  char line[200];
  std::snprintf(line, sizeof line, "%8s %8s %8s %8s %12s %12s %8s\n", "m", "n", "workers", "engine", "mean_s",
                "sd_s", "repeats");
  out += line;
  for (const BenchRow& r : report.rows) {
    std::snprintf(line, sizeof line, "%8zu %8zu %8u %8s %12.6f %12.6f %8d\n", r.m, r.n, r.workers,
                  std::string(to_string(r.engine)).c_str(), r.mean_seconds, r.std_seconds, r.repeats);
    out += line;
  }
  for (const BenchRatio& r : report.ratios) {
    std::snprintf(line, sizeof line, "ratio m=%zu n=%zu workers=%u/1: %.4f\n", r.m, r.n, r.workers, r.ratio);
    out += line;
  }
  return out;
}

}  // namespace corrtwo
