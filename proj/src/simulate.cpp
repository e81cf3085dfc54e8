#include "corrtwo/simulate.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "corrtwo/error.hpp"
#include "corrtwo/numfmt.hpp"
#include "corrtwo/preprocess.hpp"

namespace corrtwo {

Concentrations consecutive_first_order(double k1, double k2, double t, bool allow_equal_rates) {
  if (!(k1 > 0.0) || !(k2 > 0.0)) throw DataError("rate constants must be positive");
  if (!(t >= 0.0)) throw DataError("sample time must be non-negative");
  Concentrations c;
  c.a = std::exp(-k1 * t);
  if (k1 == k2) {
    if (!allow_equal_rates)
      throw DataError("k1 == k2: enable the equal-rate limit to simulate this case");
    c.b = k1 * t * std::exp(-k1 * t);
  } else {
    c.b = k1 / (k2 - k1) * (std::exp(-k1 * t) - std::exp(-k2 * t));
  }
  c.c = 1.0 - c.a - c.b;
  return c;
}

double band_profile(const BandSpec& band, double nu) {
  const double d = nu - band.center;
  const double w = band.width;
  if (band.shape == BandShape::Lorentzian) return w * w / (d * d + w * w);
  return std::exp(-(d * d) / (2.0 * w * w));
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

/// Standard normal variates by the Box-Muller transform on mt19937_64. The
/// engine's output sequence is fixed by the C++ standard, and the transform
/// is spelled out here, so the stream does not depend on the toolchain.
class NormalStream {
public:
  explicit NormalStream(std::uint64_t seed) : engine_(seed) {}

  double next() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double u1 = 1.0 - uniform();  // (0, 1]
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(theta);
    has_spare_ = true;
    return r * std::cos(theta);
  }

private:
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

const char* name(Species s) {
  switch (s) {
    case Species::A: return "A";
    case Species::B: return "B";
    case Species::C: return "C";
  }
  return "?";
}

}  // namespace

SpectralDataset sim2ddata(const KineticsSpec& kinetics, const std::vector<BandSpec>& bands,
                          const std::vector<double>& spectral_axis, double noise_sd,
                          std::uint64_t seed) {
  if (bands.empty()) throw DataError("simulation needs at least one band");
  if (spectral_axis.size() < 2) throw DataError("simulation needs n >= 2 spectral positions");
  if (kinetics.times.size() < 2) throw DataError("simulation needs at least two sample times");
  if (!(noise_sd >= 0.0)) throw DataError("noise standard deviation must be non-negative");
  for (const BandSpec& b : bands)
    if (!(b.width > 0.0) || !(b.amplitude > 0.0))
      throw DataError("band width and amplitude must be positive");

  const std::size_t m = kinetics.times.size(), n = spectral_axis.size();
  std::vector<std::vector<double>> profiles(bands.size(), std::vector<double>(n));
  for (std::size_t b = 0; b < bands.size(); ++b)
    for (std::size_t i = 0; i < n; ++i) profiles[b][i] = band_profile(bands[b], spectral_axis[i]);

  SpectralDataset ds;
  ds.spectral_axis = spectral_axis;
  ds.perturbation_axis = kinetics.times;
  ds.intensities = Matrix(m, n);
  ds.perturbation_label = "time";
  ds.spectral_label = "spectral position";
  for (std::size_t j = 0; j < m; ++j) {
    const Concentrations c =
        consecutive_first_order(kinetics.k1, kinetics.k2, kinetics.times[j], kinetics.allow_equal_rates);
    auto row = ds.intensities.row(j);
    for (std::size_t b = 0; b < bands.size(); ++b) {
      const double conc = bands[b].species == Species::A ? c.a
                          : bands[b].species == Species::B ? c.b
                                                           : c.c;
      const double scale = bands[b].amplitude * conc;
      for (std::size_t i = 0; i < n; ++i) row[i] += scale * profiles[b][i];
    }
    if (noise_sd > 0.0) {
      NormalStream noise(splitmix64(seed ^ splitmix64(j)));
      for (std::size_t i = 0; i < n; ++i) row[i] += noise_sd * noise.next();
    }
  }
  validate(ds);
  return ds;
}

SimulationScenario default_scenario(std::size_t n, std::size_t m) {
  SimulationScenario s;
  s.kinetics.k1 = 0.2;
  s.kinetics.k2 = 0.8;
  s.kinetics.times = equidistant_grid(0.0, 10.0, m);
  s.bands = {
      {1600.0, 10.0, BandShape::Lorentzian, Species::A, 1.0},
      {1650.0, 10.0, BandShape::Lorentzian, Species::B, 1.0},
      {1700.0, 10.0, BandShape::Lorentzian, Species::C, 1.0},
  };
  s.spectral_axis = equidistant_grid(1500.0, 1800.0, n);
  return s;
}

std::string describe(const SimulationScenario& s, double noise_sd, std::uint64_t seed) {
  std::string out;
  out += "model=consecutive-first-order\n";
  out += "k1=" + format_roundtrip(s.kinetics.k1) + "\n";
  out += "k2=" + format_roundtrip(s.kinetics.k2) + "\n";
  out += "m=" + std::to_string(s.kinetics.times.size()) + "\n";
  out += "t_min=" + format_roundtrip(s.kinetics.times.front()) + "\n";
  out += "t_max=" + format_roundtrip(s.kinetics.times.back()) + "\n";
  out += "n=" + std::to_string(s.spectral_axis.size()) + "\n";
  out += "nu_min=" + format_roundtrip(s.spectral_axis.front()) + "\n";
  out += "nu_max=" + format_roundtrip(s.spectral_axis.back()) + "\n";
  for (std::size_t b = 0; b < s.bands.size(); ++b) {
    const BandSpec& band = s.bands[b];
    out += "band" + std::to_string(b) + "=" + name(band.species) + "," +
           (band.shape == BandShape::Lorentzian ? "lorentzian" : "gaussian") + "," +
           format_roundtrip(band.center) + "," + format_roundtrip(band.width) + "," +
           format_roundtrip(band.amplitude) + "\n";
  }
  out += "noise_sd=" + format_roundtrip(noise_sd) + "\n";
  out += "seed=" + std::to_string(seed) + "\n";
  out += std::string("noise_generator=") + kNoiseGenerator + "\n";
  return out;
}

}  // namespace corrtwo
