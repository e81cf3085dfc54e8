// Acceptance gate: one PASS/FAIL line per criterion. Exit status is nonzero
// when any criterion fails.
#include <Eigen/Dense>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <regex>
#include <string>
#include <thread>

#include "corrtwo/analysis.hpp"
#include "corrtwo/engine_ft.hpp"
#include "corrtwo/engine_ht.hpp"
#include "corrtwo/fft.hpp"
#include "corrtwo/interpolate.hpp"
#include "corrtwo/render.hpp"
#include "corrtwo/simulate.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace corrtwo;
using std::numbers::pi;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void trim() {
    while (detail.size() >= 2 && detail.compare(detail.size() - 2, 2, "; ") == 0) detail.resize(detail.size() - 2);
  }

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      trim();
      if (!detail.empty()) detail += "; ";
      detail += what;
    }
  }
};

char buf[512];

template <class... A>
std::string fmt(const char* f, A... a) {
  std::snprintf(buf, sizeof buf, f, a...);
  return buf;
}

Matrix scaled(const Matrix& a, double s) {
  Matrix out = a;
  for (double& v : out.values()) v *= s;
  return out;
}

Matrix frob_normalized(const Matrix& a) {
  const double f = frobenius(a);
  return f == 0 ? a : scaled(a, 1.0 / f);
}

double skew_error(const Matrix& a) {
  double d = 0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) d = std::max(d, std::abs(a(i, j) + a(j, i)));
  return d;
}

double sym_error(const Matrix& a) {
  double d = 0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) d = std::max(d, std::abs(a(i, j) - a(j, i)));
  return d;
}

struct Suite {
  std::vector<DynamicSpectra> sets;
};

// The shared random homo suite: 50 datasets, m in 4..32, n in 8..64.
const Suite& random_suite() {
  static const Suite suite = [] {
    Suite s;
    std::mt19937_64 rng(20240601);
    std::uniform_int_distribution<std::size_t> dm(4, 32), dn(8, 64);
    for (int k = 0; k < 50; ++k) {
      const std::size_t m = dm(rng);
      const std::size_t n = k < 10 ? 8 : dn(rng);
      s.sets.push_back(support::dyn(oracle::random_matrix(m, n, rng, -5, 5)));
    }
    return s;
  }();
  return suite;
}

Outcome shape() {
  Outcome o;
  std::mt19937_64 rng(1);
  const DynamicSpectra d = support::dyn(oracle::random_matrix(6, 145, rng, 0, 1));
  for (const CorrelationSpectra& c : {correlate_ft(d), correlate_ht(d)}) {
    o.require(c.sync.rows() == 145 && c.sync.cols() == 145, "sync not 145x145");
    o.require(c.async.rows() == 145 && c.async.cols() == 145, "async not 145x145");
  }
  o.detail = o.pass ? "sync and async 145x145 for both engines" : o.detail;
  return o;
}

Outcome symmetry() {
  Outcome o;
  double worst_sym = 0, worst_skew = 0, worst_diag = 0, worst_psd = 0;
  for (const DynamicSpectra& d : random_suite().sets) {
    for (const CorrelationSpectra& c : {correlate_ft(d), correlate_ht(d)}) {
      const double ms = max_abs(c.sync), ma = max_abs(c.async);
      worst_sym = std::max(worst_sym, sym_error(c.sync) / ms);
      worst_skew = std::max(worst_skew, skew_error(c.async) / ma);
      double diag_async = 0, min_diag = 0;
      for (std::size_t i = 0; i < d.n(); ++i) {
        diag_async = std::max(diag_async, std::abs(c.async(i, i)));
        min_diag = std::min(min_diag, c.sync(i, i));
      }
      worst_diag = std::max(worst_diag, diag_async / ma);
      o.require(min_diag >= -1e-12 * ms, "negative sync diagonal");
      if (d.n() <= 8) {
        const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(oracle::to_eigen(c.sync));
        const double low = es.eigenvalues().minCoeff();
        worst_psd = std::min(worst_psd, low / ms);
        o.require(low >= -1e-10 * ms, "sync not positive semidefinite");
      }
    }
  }
  o.require(worst_sym <= 1e-12, "sync asymmetry");
  o.require(worst_skew <= 1e-12, "async not skew-symmetric");
  o.require(worst_diag <= 1e-12, "async diagonal not zero");
  const std::string stats = fmt("max sym %.1e, skew %.1e, diag %.1e, min eig %.1e", worst_sym, worst_skew,
                                worst_diag, worst_psd);
  o.detail = o.detail.empty() ? stats : o.detail + "; " + stats;
  return o;
}

Outcome sync_equality() {
  Outcome o;
  double worst = 0;
  for (const DynamicSpectra& d : random_suite().sets) {
    const Matrix a = frob_normalized(correlate_ft(d).sync);
    const Matrix b = frob_normalized(correlate_ht(d).sync);
    worst = std::max(worst, oracle::max_diff(a, b));
  }
  o.require(worst <= 1e-10, "normalized sync differs");
  o.detail += (o.detail.empty() ? "" : "; ") + fmt("max elementwise %.2e over 50 datasets", worst);
  return o;
}

Outcome async_consistency() {
  Outcome o;
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> phase(0, 2 * pi), amp(0.5, 1.5);
  double worst_rel = 0;
  std::size_t sign_flips = 0, compared = 0;
  for (std::size_t m : {16, 24, 32, 48, 64}) {
    // Channels: fundamental sinusoid plus a weaker second harmonic.
    const std::size_t n = 40;
    Matrix y(m, n);
    for (std::size_t c = 0; c < n; ++c) {
      const double a = amp(rng), p1 = phase(rng), p2 = phase(rng);
      for (std::size_t j = 0; j < m; ++j) {
        const double th = 2 * pi * static_cast<double>(j) / static_cast<double>(m);
        y(j, c) = a * std::sin(th + p1) + 0.2 * std::sin(2 * th + p2);
      }
    }
    const DynamicSpectra d = support::dyn(y);
    const Matrix ft = frob_normalized(correlate_ft(d).async);
    const Matrix ht = frob_normalized(correlate_ht(d).async);
    double diff = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) diff += (ft(i, j) - ht(i, j)) * (ft(i, j) - ht(i, j));
    worst_rel = std::max(worst_rel, std::sqrt(diff));
    const double top = max_abs(ft);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        if (std::abs(ft(i, j)) <= 0.1 * top) continue;
        ++compared;
        if ((ft(i, j) > 0) != (ht(i, j) > 0)) ++sign_flips;
      }
  }
  o.require(worst_rel <= 0.05, "relative Frobenius difference above 5%");
  o.require(sign_flips == 0, "sign disagreement");
  o.detail += (o.detail.empty() ? "" : "; ") + fmt("max rel Frobenius %.4f, sign flips %zu of %zu", worst_rel,
                                                   sign_flips, compared);
  return o;
}

Outcome phase_cases() {
  Outcome o;
  const std::size_t m = 16;
  const DynamicSpectra in = support::raw_dyn(support::sinusoids(m, {0.0, 0.0}));
  const DynamicSpectra quad = support::raw_dyn(support::sinusoids(m, {0.0, pi / 2}));
  for (bool hilbert : {false, true}) {
    const char* name = hilbert ? "hilbert" : "fourier";
    const CorrelationSpectra a = hilbert ? correlate_ht(in) : correlate_ft(in);
    o.require(a.sync(0, 1) > 0, std::string(name) + " in-phase sync not positive");
    o.require(std::abs(a.async(0, 1)) <= 1e-10 * std::abs(a.sync(0, 1)), std::string(name) + " in-phase async");
    const CorrelationSpectra b = hilbert ? correlate_ht(quad) : correlate_ft(quad);
    o.require(std::abs(b.sync(0, 1)) <= 1e-10 * std::abs(b.async(0, 1)), std::string(name) + " quadrature sync");
    if (o.pass)
      o.detail += fmt("%s |Psi|/Phi %.1e, |Phi|/|Psi| %.1e; ", name, std::abs(a.async(0, 1)) / a.sync(0, 1),
                      std::abs(b.sync(0, 1)) / std::abs(b.async(0, 1)));
  }
  return o;
}

Outcome scaling() {
  Outcome o;
  std::mt19937_64 rng(6);
  double worst = 0, worst_diag = 0;
  for (int trial = 0; trial < 5; ++trial) {
    const Matrix y = oracle::random_matrix(10 + 3 * trial, 12, rng, 0, 4);
    const SpectralDataset ds = support::dataset(y);
    const DynamicSpectra d = dynamic_spectra(ds, PerturbationMean{});
    const auto sigma = stddev_spectrum(ds, PerturbationMean{});
    for (bool hilbert : {false, true}) {
      auto run = [&](const DynamicSpectra& x) { return hilbert ? correlate_ht(x) : correlate_ft(x); };
      const CorrelationSpectra base = run(d);
      for (double alpha : {0.0, 0.25, 0.5, 1.0}) {
        const CorrelationSpectra c = run(apply_scaling(d, sigma, alpha));
        Matrix ps(12, 12), pa(12, 12);
        for (std::size_t i = 0; i < 12; ++i)
          for (std::size_t j = 0; j < 12; ++j) {
            const double f = std::pow(sigma[i] * sigma[j], alpha);
            ps(i, j) = base.sync(i, j) / f;
            pa(i, j) = base.async(i, j) / f;
          }
        worst = std::max({worst, oracle::rel_diff(ps, c.sync), oracle::rel_diff(pa, c.async)});
        if (alpha == 1.0) {
          for (std::size_t i = 1; i < 12; ++i)
            worst_diag = std::max(worst_diag, std::abs(c.sync(i, i) - c.sync(0, 0)) / std::abs(c.sync(0, 0)));
        }
      }
    }
  }
  o.require(worst <= 1e-12, "pre/post scaling differ");
  o.require(worst_diag <= 1e-10, "Pearson diagonal not constant");
  o.detail += (o.detail.empty() ? "" : "; ") + fmt("max rel %.1e, Pearson diagonal spread %.1e", worst, worst_diag);
  return o;
}

Outcome sequencing() {
  Outcome o;
  const SimulationScenario s = default_scenario();
  const DynamicSpectra d =
      dynamic_spectra(sim2ddata(s.kinetics, s.bands, s.spectral_axis, 0, 0), PerturbationMean{});
  const CorrelationSpectra ft = correlate_ft(d), ht = correlate_ht(d);
  const double centers[3] = {1600, 1650, 1700};
  const char* names[3] = {"A", "B", "C"};
  for (int a = 0; a < 3; ++a)
    for (int b = a + 1; b < 3; ++b) {
      const CrossPeak pf = classify_at(ft, centers[a], centers[b], default_dead_band(ft));
      const CrossPeak ph = classify_at(ht, centers[a], centers[b], default_dead_band(ht));
      const std::string pair = std::string(names[a]) + names[b];
      o.detail += pair + " " + to_string(pf.verdict) + fmt(" (Phi %+.3g, Psi %+.3g); ", pf.sync, pf.async);
      o.require(pf.verdict == ph.verdict, pair + " verdict differs between engines");
      o.require(pf.verdict.order == Order::Nu1Before,
                pair + ": expected " + names[a] + " before " + names[b] + ", got " +
                    std::string(to_string(pf.verdict.order)));
    }
  return o;
}

Outcome interpolation() {
  Outcome o;
  std::mt19937_64 rng(8);
  double worst = 0;
  for (auto kind : {InterpolantKind::Linear, InterpolantKind::CubicSpline}) {
    for (std::size_t m : {4, 9, 33, 100}) {
      SpectralDataset ds = support::dataset(oracle::random_matrix(m, 7, rng));
      ds.perturbation_axis = support::iota_axis(m, 20.0, 0.5);
      worst = std::max(worst, oracle::rel_diff(ds.intensities, resample_equidistant(ds, m, kind).intensities));
    }
  }
  o.require(worst <= 1e-12, "resampled intensities differ");
  o.require(default_target_count(100) == 128, "default_target_count(100) != 128");
  o.detail += (o.detail.empty() ? "" : "; ") +
              fmt("max rel %.1e, default_target_count(100) = %zu", worst, default_target_count(100));
  return o;
}

Outcome workers() {
  Outcome o;
  const SimulationScenario s = default_scenario(4000, 100);
  const DynamicSpectra d =
      dynamic_spectra(sim2ddata(s.kinetics, s.bands, s.spectral_axis, 1e-3, 9), PerturbationMean{});
  using clock = std::chrono::steady_clock;
  auto timed = [&](unsigned w, double& seconds) {
    const auto t0 = clock::now();
    CorrelationSpectra c = correlate_ft(d, NormalizationSpec::noda(), w);
    seconds = std::chrono::duration<double>(clock::now() - t0).count();
    return c;
  };
  double t1 = 0, t2 = 0, t4 = 0;
  const CorrelationSpectra one = timed(1, t1);
  double worst = 0;
  {
    const CorrelationSpectra two = timed(2, t2);
    worst = std::max({worst, oracle::rel_diff(one.sync, two.sync), oracle::rel_diff(one.async, two.async)});
  }
  {
    const CorrelationSpectra four = timed(4, t4);
    worst = std::max({worst, oracle::rel_diff(one.sync, four.sync), oracle::rel_diff(one.async, four.async)});
  }
  o.require(t1 < 60.0, "serial run slower than 60 s");
  o.require(worst <= 1e-12, "worker counts disagree");
  const unsigned cores = std::thread::hardware_concurrency();
  std::string ratio;
  if (cores >= 4) {
    o.require(t4 / t1 < 1.0, "4-worker run not faster");
    ratio = fmt("ratio %.2f", t4 / t1);
  } else {
    ratio = fmt("ratio %.2f not checked (%u core%s)", t4 / t1, cores, cores == 1 ? "" : "s");
  }
  o.detail += (o.detail.empty() ? "" : "; ") +
              fmt("t1 %.2f s, t2 %.2f s, t4 %.2f s, max rel %.1e, ", t1, t2, t4, worst) + ratio;
  return o;
}

Outcome render() {
  Outcome o;
  const SimulationScenario s = default_scenario(60, 30);
  const CorrelationSpectra c = correlate_ft(
      dynamic_spectra(sim2ddata(s.kinetics, s.bands, s.spectral_axis, 0, 0), PerturbationMean{}));
  PlotSpec spec;
  spec.level_count = 8;
  for (PlotKind which : {PlotKind::Sync, PlotKind::Async}) {
    spec.which = which;
    const std::string a = render_plot(c, spec), b = render_plot(c, spec);
    o.require(a == b, "documents differ");
    const Matrix& z = which == PlotKind::Sync ? c.sync : c.async;
    const LevelScale scale = compute_levels(z, std::nullopt, 8);
    o.require(scale.levels.size() == 9, "N = 8 did not give 9 levels");
    const std::regex label(R"re(<text class="legend-label" data-quantile="([0-9.]+)"[^>]*>([^<]+)</text>)re");
    std::vector<std::pair<std::string, std::string>> found;
    for (auto it = std::sregex_iterator(a.begin(), a.end(), label); it != std::sregex_iterator(); ++it)
      found.emplace_back((*it)[1], (*it)[2]);
    o.require(found.size() == 2, "legend does not have exactly two labels");
    if (found.size() == 2) {
      const std::string q10 = fmt("%.1e", quantile(scale.drawn_levels, 0.1));
      const std::string q90 = fmt("%.1e", quantile(scale.drawn_levels, 0.9));
      o.require(found[0].first == "0.1" && found[0].second == q10, "10% label wrong");
      o.require(found[1].first == "0.9" && found[1].second == q90, "90% label wrong");
      o.detail += (which == PlotKind::Sync ? "sync legend " : "async legend ") + found[0].second + " / " +
                  found[1].second + "; ";
    }
  }
  return o;
}

Outcome oracles() {
  Outcome o;
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-1, 1);
  double fft_err = 0;
  for (std::size_t m = 1; m <= 64; ++m) {
    std::vector<double> x(m);
    for (double& v : x) v = u(rng);
    const auto want = oracle::dft(x);
    std::vector<std::complex<double>> got;
    FftPlan(m).forward_real(x, got);
    for (std::size_t k = 0; k < m; ++k) fft_err = std::max(fft_err, std::abs(got[k] - want[k]));
  }
  o.require(fft_err <= 1e-10, "FFT differs from DFT");
  bool exact = true;
  for (std::size_t m : {2, 3, 16, 100, 257}) exact = exact && hilbert_noda_matrix(m).values == oracle::noda_matrix(m);
  o.require(exact, "Hilbert-Noda entries not exact");
  double kin = 0;
  for (auto [k1, k2] : {std::pair{0.2, 0.8}, {1.0, 2.0}, {0.7, 0.1}})
    for (double t : {0.5, 2.0, 10.0}) {
      const Concentrations c = consecutive_first_order(k1, k2, t);
      const oracle::Conc r = oracle::kinetics_rk4(k1, k2, t);
      kin = std::max({kin, std::abs(c.a - r.a), std::abs(c.b - r.b), std::abs(c.c - r.c)});
    }
  o.require(kin <= 1e-8, "kinetics differ from RK4");
  o.detail += (o.detail.empty() ? "" : "; ") +
              fmt("FFT max err %.1e, Noda exact %s, kinetics max err %.1e", fft_err, exact ? "yes" : "no", kin);
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double budget;
    std::function<Outcome()> run;
  };
  const Criterion criteria[] = {
      {1, "shape reproduction", 1, shape},
      {2, "symmetry suite", 30, symmetry},
      {3, "cross-engine sync equality", 30, sync_equality},
      {4, "cross-engine async consistency", 30, async_consistency},
      {5, "phase cases", 1, phase_cases},
      {6, "scaling equivalence", 10, scaling},
      {7, "sequential order", 10, sequencing},
      {8, "interpolation", 1, interpolation},
      {9, "worker invariance and scaling", 600, workers},
      {10, "render determinism", 10, render},
      {11, "oracle suite", 30, oracles},
  };
  int failed = 0;
  for (const Criterion& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (seconds >= c.budget) o.require(false, fmt("runtime %.2f s over %.0f s", seconds, c.budget));
    if (!o.pass) ++failed;
    o.trim();
    std::printf("criterion %2d %s  %s [%.2f s] %s\n", c.id, o.pass ? "PASS" : "FAIL", c.name, seconds,
                o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(std::size(criteria)) - failed, std::size(criteria));
  return failed == 0 ? 0 : 1;
}
