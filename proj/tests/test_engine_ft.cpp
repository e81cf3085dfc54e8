#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "corrtwo/engine_ft.hpp"
#include "corrtwo/engine_ht.hpp"
#include "corrtwo/error.hpp"
#include "corrtwo/fft.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace corrtwo;

TEST_CASE("FFT matches the direct DFT for every length up to 64") {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-1, 1);
  for (std::size_t m = 1; m <= 64; ++m) {
    std::vector<double> x(m);
    for (double& v : x) v = u(rng);
    const auto want = oracle::dft(x);
    std::vector<std::complex<double>> got;
    FftPlan(m).forward_real(x, got);
    double scale = 0, err = 0;
    for (std::size_t k = 0; k < m; ++k) {
      scale = std::max(scale, std::abs(want[k]));
      err = std::max(err, std::abs(got[k] - want[k]));
    }
    CHECK_MESSAGE(err <= 1e-10 * scale, "m = " << m);
  }
  CHECK(is_power_of_two(64));
  CHECK_FALSE(is_power_of_two(48));
}

TEST_CASE("complex FFT of a non-power-of-two length") {
  std::vector<std::complex<double>> x{{1, 2}, {-1, 0.5}, {0, 0}, {3, -1}, {0.25, 0.75}};
  const FftPlan plan(5);
  auto y = x;
  plan.forward(y);
  for (std::size_t k = 0; k < 5; ++k) {
    std::complex<double> s = 0;
    for (std::size_t j = 0; j < 5; ++j) s += x[j] * std::polar(1.0, -2 * std::numbers::pi * double(j * k) / 5);
    CHECK(std::abs(y[k] - s) < 1e-12);
  }
}

TEST_CASE("half-spectrum weights") {
  const FourierWorkspace even(8, 1), odd(7, 1);
  CHECK(even.frequencies() == 5);
  CHECK(even.weights() == std::vector<double>{1, 2, 2, 2, 1});
  CHECK(odd.frequencies() == 4);
  CHECK(odd.weights() == std::vector<double>{1, 2, 2, 2});
}

TEST_CASE("channel transforms") {
  SUBCASE("zero column") {
    const FourierWorkspace f = dft_channels(support::raw_dyn(Matrix(8, 2)));
    for (std::size_t w = 0; w < f.frequencies(); ++w) CHECK(std::abs(f.at(w, 0)) == 0.0);
  }
  SUBCASE("cosine concentrates in bin 1") {
    Matrix y(8, 1);
    for (std::size_t j = 0; j < 8; ++j) y(j, 0) = std::cos(2 * std::numbers::pi * j / 8.0);
    const FourierWorkspace f = dft_channels(support::raw_dyn(y));
    CHECK(std::abs(f.at(1, 0)) == doctest::Approx(4.0).epsilon(1e-14));
    for (std::size_t w : {0, 2, 3, 4}) CHECK(std::abs(f.at(w, 0)) < 1e-12);
  }
  SUBCASE("the zero-frequency bin of real data is real; agreement with the direct DFT") {
    std::mt19937_64 rng(2);
    for (std::size_t m = 2; m <= 64; m += 3) {
      const Matrix y = oracle::random_matrix(m, 3, rng);
      const FourierWorkspace f = dft_channels(support::raw_dyn(y));
      for (std::size_t c = 0; c < 3; ++c) {
        const auto want = oracle::dft(oracle::column(y, c));
        double total = 0;
        for (std::size_t j = 0; j < m; ++j) total += std::abs(y(j, c));
        CHECK(std::abs(f.at(0, c).imag()) <= 1e-12 * total);
        for (std::size_t w = 0; w < f.frequencies(); ++w)
          CHECK(std::abs(f.at(w, c) - want[w]) <= 1e-10 * std::max(1.0, std::abs(want[w])));
      }
    }
  }
  SUBCASE("non-finite input") {
    Matrix y(4, 2);
    y(2, 1) = std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(dft_channels(support::raw_dyn(y)), NumericError);
  }
}

TEST_CASE("correlation against the direct-DFT oracle") {
  std::mt19937_64 rng(3);
  for (std::size_t m : {2, 3, 5, 8, 13, 16, 31}) {
    const DynamicSpectra a = support::dyn(oracle::random_matrix(m, 6, rng));
    const DynamicSpectra b = support::dyn(oracle::random_matrix(m, 4, rng));
    const CorrelationSpectra c = correlate_ft(a, b);
    Matrix re, im;
    oracle::fourier_spectra(a.values, b.values, 1.0 / (std::numbers::pi * (m - 1.0)), re, im);
    CHECK(c.sync.rows() == 6);
    CHECK(c.sync.cols() == 4);
    CHECK(oracle::rel_diff(c.sync, re) <= 1e-10);
    CHECK(oracle::max_diff(c.async, im) <= 1e-10 * std::max(max_abs(im), max_abs(re)));
    CHECK_FALSE(c.is_homo);
    CHECK(c.normalization == 1.0 / (std::numbers::pi * (m - 1.0)));
  }
}

TEST_CASE("Parseval: the real part is m times the direct sum") {
  std::mt19937_64 rng(4);
  for (std::size_t m : {4, 7, 10, 32}) {
    const DynamicSpectra d = support::dyn(oracle::random_matrix(m, 5, rng));
    const CorrelationSpectra c = correlate_ft(d, NormalizationSpec::unit());
    const Matrix direct = oracle::cross(d.values, d.values, static_cast<double>(m) / (m - 1.0));
    CHECK(oracle::rel_diff(c.sync, direct) <= 1e-10);
  }
}

TEST_CASE("zero input gives zero spectra") {
  const CorrelationSpectra c = correlate_ft(support::raw_dyn(Matrix(9, 3)));
  CHECK(max_abs(c.sync) == 0.0);
  CHECK(max_abs(c.async) == 0.0);
}

TEST_CASE("in-phase and quadrature sinusoids") {
  const std::size_t m = 16;
  SUBCASE("in phase") {
    const CorrelationSpectra c = correlate_ft(support::raw_dyn(support::sinusoids(m, {0.0, 0.0})));
    CHECK(c.sync(0, 1) > 0);
    CHECK(std::abs(c.async(0, 1)) <= 1e-10 * std::abs(c.sync(0, 1)));
  }
  SUBCASE("quarter-period shift") {
    const Matrix y = support::sinusoids(m, {0.0, std::numbers::pi / 2});
    const CorrelationSpectra c = correlate_ft(support::raw_dyn(y));
    CHECK(std::abs(c.sync(0, 1)) <= 1e-10 * std::abs(c.async(0, 1)));
    const Matrix reference = oracle::async_hilbert(y, y);
    CHECK(c.async(0, 1) != 0.0);
    CHECK((c.async(0, 1) > 0) == (reference(0, 1) > 0));
  }
}

TEST_CASE("output shape for a 6 x 145 input") {
  std::mt19937_64 rng(5);
  const CorrelationSpectra c = correlate_ft(support::dyn(oracle::random_matrix(6, 145, rng)));
  CHECK(c.sync.rows() == 145);
  CHECK(c.sync.cols() == 145);
  CHECK(c.async.rows() == 145);
  CHECK(c.async.cols() == 145);
  CHECK(c.is_homo);
}

TEST_CASE("homo results are exactly symmetric and skew-symmetric") {
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 10; ++trial) {
    const DynamicSpectra d = support::dyn(oracle::random_matrix(5 + trial * 3, 9, rng));
    const CorrelationSpectra c = correlate_ft(d);
    CHECK(c.sync == c.sync.transposed());
    Matrix neg = c.async.transposed();
    for (double& v : neg.values()) v = -v;
    CHECK(c.async == neg);
    for (std::size_t i = 0; i < 9; ++i) {
      CHECK(c.async(i, i) == 0.0);
      CHECK(c.sync(i, i) >= 0.0);
    }
  }
}

TEST_CASE("results do not depend on the worker count") {
  std::mt19937_64 rng(7);
  const DynamicSpectra a = support::dyn(oracle::random_matrix(37, 23, rng));
  const DynamicSpectra b = support::dyn(oracle::random_matrix(37, 11, rng));
  const CorrelationSpectra one = correlate_ft(a, b, NormalizationSpec::noda(), 1);
  for (unsigned w : {2u, 3u, 4u, 64u}) {
    const CorrelationSpectra many = correlate_ft(a, b, NormalizationSpec::noda(), w);
    CHECK(many.sync == one.sync);
    CHECK(many.async == one.async);
  }
}

TEST_CASE("hetero inputs must share the perturbation axis") {
  std::mt19937_64 rng(8);
  DynamicSpectra a = support::dyn(oracle::random_matrix(6, 3, rng));
  DynamicSpectra b = a;
  b.perturbation_axis[3] += 1e-9;
  try {
    correlate_ft(a, b);
    FAIL("expected an error");
  } catch (const DataError& e) {
    CHECK(std::string(e.what()).find("perturbation axis mismatch") != std::string::npos);
  }
}
