#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "corrtwo/dataset.hpp"

namespace corrtwo {

struct BenchSize {
  std::size_t m = 0, n = 0;
};

struct BenchConfig {
  std::vector<BenchSize> sizes;
  std::vector<unsigned> workers{1};
  int repeats = 10;
  Engine engine = Engine::Fourier;
  std::uint64_t seed = 1;
};

struct BenchRow {
  std::size_t m = 0, n = 0;
  unsigned workers = 1;
  Engine engine = Engine::Fourier;
  double mean_seconds = 0.0, std_seconds = 0.0;
  int repeats = 0;
};

/// Time with the most workers over time with one worker, per size.
struct BenchRatio {
  std::size_t m = 0, n = 0;
  unsigned workers = 1;
  double ratio = 0.0;
};

struct BenchReport {
  std::vector<BenchRow> rows;
  std::vector<BenchRatio> ratios;
};

/// Bytes held by one n1 x n2 complex result (two double matrices).
std::uint64_t result_bytes(std::size_t n1, std::size_t n2);

/// Throws NumericError when a result of this size cannot fit in physical
/// memory.
void check_result_memory(std::size_t n1, std::size_t n2);

/// The simulated dataset used for a benchmark cell.
SpectralDataset bench_dataset(std::size_t m, std::size_t n, std::uint64_t seed);

/// For every size: simulate, check that all worker counts give identical
/// spectra, then time the correlation alone (one warm-up run excluded).
/// Progress lines go to `log` when given.
BenchReport run_bench(const BenchConfig& cfg, std::ostream* log = nullptr);

std::string format_bench(const BenchReport& report);

}  // namespace corrtwo
