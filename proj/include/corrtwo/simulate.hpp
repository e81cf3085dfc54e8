#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "corrtwo/dataset.hpp"

namespace corrtwo {

/// Consecutive first-order reaction A -> B -> C with rates k1, k2 sampled at
/// `times`.
struct KineticsSpec {
  double k1 = 0.2;
  double k2 = 0.8;
  std::vector<double> times;
  /// Use the analytic k1 == k2 limit instead of rejecting equal rates.
  bool allow_equal_rates = false;
};

enum class Species { A, B, C };
enum class BandShape { Lorentzian, Gaussian };

struct BandSpec {
  double center = 0.0;
  double width = 1.0;
  BandShape shape = BandShape::Lorentzian;
  Species species = Species::A;
  double amplitude = 1.0;
};

struct Concentrations {
  double a = 1.0, b = 0.0, c = 0.0;
};

/// cA = exp(-k1 t), cB = k1/(k2-k1) (exp(-k1 t) - exp(-k2 t)),
/// cC = 1 - cA - cB. With `allow_equal_rates` and k1 == k2, cB = k1 t exp(-k1 t).
Concentrations consecutive_first_order(double k1, double k2, double t,
                                       bool allow_equal_rates = false);

/// Band profile value at `nu`: Lorentzian w^2 / ((nu-c)^2 + w^2) or Gaussian
/// exp(-(nu-c)^2 / (2 w^2)).
double band_profile(const BandSpec& band, double nu);

/// Name and version of the noise generator; stored with simulated data.
inline constexpr const char* kNoiseGenerator = "mt19937_64+box-muller/v1";

/// Sum over bands of amplitude * c_species(t_j) * profile(nu_i) plus i.i.d.
/// normal noise. The noise of row j is drawn from its own stream seeded
/// from (seed, j), so output is bitwise reproducible for a given seed.
SpectralDataset sim2ddata(const KineticsSpec& kinetics, const std::vector<BandSpec>& bands,
                          const std::vector<double>& spectral_axis, double noise_sd,
                          std::uint64_t seed);

/// The fixed demonstration scenario: k1 = 0.2, k2 = 0.8, 100 equidistant
/// times on [0, 10], Lorentzian bands of width 10 and amplitude 1 for A, B
/// and C at 1600, 1650 and 1700 on `n` equidistant positions over [1500, 1800].
struct SimulationScenario {
  KineticsSpec kinetics;
  std::vector<BandSpec> bands;
  std::vector<double> spectral_axis;
};

SimulationScenario default_scenario(std::size_t n = 301, std::size_t m = 100);

/// Key-value description of a scenario (for metadata files).
std::string describe(const SimulationScenario& scenario, double noise_sd, std::uint64_t seed);

}  // namespace corrtwo
