#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "corrtwo/analysis.hpp"
#include "corrtwo/engine_ft.hpp"
#include "corrtwo/engine_ht.hpp"
#include "corrtwo/error.hpp"
#include "corrtwo/simulate.hpp"
#include "support.hpp"

using namespace corrtwo;

namespace {

DynamicSpectra simulated(std::size_t n = 301) {
  const SimulationScenario s = default_scenario(n, 100);
  return dynamic_spectra(sim2ddata(s.kinetics, s.bands, s.spectral_axis, 0, 0), PerturbationMean{});
}

}  // namespace

TEST_CASE("classifier rules") {
  const Verdict a = classify_cross_peak(1, 0.5, 1e-3);
  CHECK(a.direction == Direction::Same);
  CHECK(a.order == Order::Nu1Before);
  CHECK(to_string(a) == "same-direction/nu1-before-nu2");

  const Verdict b = classify_cross_peak(-1, 0.5, 1e-3);
  CHECK(b.direction == Direction::Opposite);
  CHECK(b.order == Order::Nu1After);

  const Verdict c = classify_cross_peak(0, 0, 1e-3);
  CHECK(c.indeterminate());
  CHECK(to_string(c) == "indeterminate");

  CHECK(classify_cross_peak(1, -0.5, 1e-3).order == Order::Nu1After);
  CHECK(classify_cross_peak(-1, -0.5, 1e-3).order == Order::Nu1Before);

  const Verdict d = classify_cross_peak(2, 5e-4, 1e-3);
  CHECK(d.direction == Direction::Same);
  CHECK(d.order == Order::None);

  const Verdict e = classify_cross_peak(1e-4, 0.5, 1e-3);
  CHECK(e.direction == Direction::None);
  CHECK(e.order == Order::Nu1Before);

  CHECK_THROWS_AS(classify_cross_peak(1, 1, 0), UsageError);
}

TEST_CASE("order flips with the sign of psi and ignores positive rescaling") {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> u(-1, 1);
  std::uniform_real_distribution<double> scale(1e-6, 1e6);
  for (int k = 0; k < 2000; ++k) {
    const double phi = u(rng), psi = u(rng), eps = 0.05;
    const Verdict v = classify_cross_peak(phi, psi, eps);
    if (std::abs(psi) > eps && v.order != Order::None) {
      const Verdict w = classify_cross_peak(phi, -psi, eps);
      CHECK(w.order != v.order);
      CHECK(w.order != Order::None);
      CHECK(w.direction == v.direction);
    }
    const double s = scale(rng);
    CHECK(classify_cross_peak(phi * s, psi * s, eps * s) == v);
  }
}

TEST_CASE("peak picking") {
  SUBCASE("zero matrices give an empty report") {
    const CorrelationSpectra c = correlate_ft(support::raw_dyn(Matrix(6, 5)));
    const PeakReport r = find_peaks(c, 0.05);
    CHECK(r.auto_peaks.empty());
    CHECK(r.cross_peaks.empty());
  }
  SUBCASE("a single dominant diagonal value is one auto peak") {
    Matrix y(4, 7);
    y(0, 3) = 1;
    y(1, 3) = -1;
    const CorrelationSpectra c = correlate_ft(support::dyn(y));
    const PeakReport r = find_peaks(c, 0.05);
    REQUIRE(r.auto_peaks.size() == 1);
    CHECK(r.auto_peaks[0].index == 3);
    CHECK(r.auto_peaks[0].nu == 1006.0);
    CHECK(r.cross_peaks.empty());
  }
  SUBCASE("threshold fraction must lie in (0, 1)") {
    const CorrelationSpectra c = correlate_ft(support::raw_dyn(Matrix(4, 3)));
    CHECK_THROWS_AS(find_peaks(c, 0.0), UsageError);
    CHECK_THROWS_AS(find_peaks(c, 1.0), UsageError);
  }
  SUBCASE("three simulated bands give auto peaks at their centers") {
    const PeakReport r = find_peaks(correlate_ft(simulated()), 0.01);
    REQUIRE(r.auto_peaks.size() == 3);
    CHECK(r.auto_peaks[0].nu == 1600.0);
    CHECK(r.auto_peaks[1].nu == 1650.0);
    CHECK(r.auto_peaks[2].nu == 1700.0);
    for (const AutoPeak& p : r.auto_peaks) CHECK(p.sync > 0);
    for (const CrossPeak& p : r.cross_peaks) CHECK(p.index1 < p.index2);
    CHECK(format_report(r).find("auto peaks: 3") != std::string::npos);
    CHECK(report_long_form(r).rfind("kind,nu1,nu2,sync,async,direction,order\n", 0) == 0);
  }
}

TEST_CASE("simulated consecutive reaction") {
  const CorrelationSpectra ft = correlate_ft(simulated());
  const double eps = default_dead_band(ft);

  const CrossPeak ab = classify_at(ft, 1600, 1650, eps);
  CHECK(ab.verdict.direction == Direction::Same);
  CHECK(ab.verdict.order == Order::Nu1Before);

  const CrossPeak ac = classify_at(ft, 1600, 1700, eps);
  CHECK(ac.verdict.direction == Direction::Opposite);
  CHECK(ac.verdict.order == Order::Nu1Before);

  // B against C: the mean-referenced B and C changes are anticorrelated and
  // the sign rules place B after C.
  const CrossPeak bc = classify_at(ft, 1650, 1700, eps);
  CHECK(ab.sync + bc.sync < 0);
  CHECK(bc.verdict.order == Order::Nu1After);
}

TEST_CASE("verdicts do not depend on the engine") {
  const DynamicSpectra d = simulated(121);
  const CorrelationSpectra ft = correlate_ft(d);
  const CorrelationSpectra ht = correlate_ht(d);
  const double top = max_abs(ft.async);
  const double eps_ft = default_dead_band(ft), eps_ht = default_dead_band(ht);
  std::size_t compared = 0;
  for (std::size_t i = 0; i < d.n(); ++i)
    for (std::size_t j = 0; j < d.n(); ++j) {
      if (std::abs(ft.async(i, j)) <= 0.1 * top) continue;
      ++compared;
      CHECK(classify_cross_peak(ft.sync(i, j), ft.async(i, j), eps_ft) ==
            classify_cross_peak(ht.sync(i, j), ht.async(i, j), eps_ht));
    }
  CHECK(compared > 100);
}

TEST_CASE("an earlier sigmoid transition reads as nu1 before nu2") {
  const std::size_t m = 41;
  Matrix y(m, 2);
  for (std::size_t j = 0; j < m; ++j) {
    const double t = static_cast<double>(j);
    y(j, 0) = 1 / (1 + std::exp(-(t - 12)));
    y(j, 1) = 1 / (1 + std::exp(-(t - 28)));
  }
  for (bool hilbert : {false, true}) {
    const DynamicSpectra d = support::dyn(y);
    const CorrelationSpectra c = hilbert ? correlate_ht(d) : correlate_ft(d);
    CHECK(c.async(0, 1) > 0);
    const Verdict v = classify_cross_peak(c.sync(0, 1), c.async(0, 1), default_dead_band(c));
    CHECK(v.direction == Direction::Same);
    CHECK(v.order == Order::Nu1Before);
  }
}
