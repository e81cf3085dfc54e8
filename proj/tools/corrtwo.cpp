// corrtwo: command-line front end.
//
// Exit codes: 0 success, 1 usage error, 2 data error, 3 numeric error.

#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "corrtwo/analysis.hpp"
#include "corrtwo/bench.hpp"
#include "corrtwo/error.hpp"
#include "corrtwo/numfmt.hpp"
#include "corrtwo/parallel.hpp"
#include "corrtwo/pipeline.hpp"
#include "corrtwo/render.hpp"
#include "corrtwo/simulate.hpp"

using namespace corrtwo;

namespace {

struct DataOptions {
  std::string input, input2, reference = "mean", reference2 = "mean";
  std::string resample, interpolant = "spline", engine = "fourier", norm, delimiter = "comma";
  std::optional<std::size_t> resample_common;
  double alpha = 0.0;
  bool substitute_zero_sigma = false, spectra_columns = false;
  unsigned workers = default_workers();
};

void add_data_options(CLI::App* cmd, DataOptions& o, bool input_required) {
  auto* in = cmd->add_option("--input", o.input, "Dataset file (perturbation rows, spectral header)");
  if (input_required) in->required();
  cmd->add_option("--input2", o.input2, "Second dataset for hetero correlation");
  cmd->add_option("--reference", o.reference, "mean | file:PATH");
  cmd->add_option("--reference2", o.reference2, "Reference of the second input: mean | file:PATH");
  cmd->add_option("--resample", o.resample, "Resample the perturbation axis to N points (or 'auto')");
  cmd->add_option("--resample-to-common", o.resample_common,
                  "Resample both inputs onto their shared perturbation range with N points");
  cmd->add_option("--interpolant", o.interpolant, "linear | spline")->check(CLI::IsMember({"linear", "spline"}));
  cmd->add_option("--alpha", o.alpha, "Scaling exponent (0 none, 0.5 Pareto, 1 Pearson)");
  cmd->add_flag("--substitute-zero-sigma", o.substitute_zero_sigma,
                "Scale zero-variance channels by 1 instead of failing");
  cmd->add_option("--engine", o.engine, "fourier | hilbert | both")
      ->check(CLI::IsMember({"fourier", "hilbert", "both"}));
  cmd->add_option("--norm", o.norm, "noda | unit | custom:C (default depends on the engine)");
  cmd->add_option("--workers", o.workers, "Worker threads (default CORRTWO_WORKERS or core count)");
  cmd->add_option("--delimiter", o.delimiter, "comma | tab | whitespace")
      ->check(CLI::IsMember({"comma", "tab", "whitespace"}));
  cmd->add_flag("--spectra-columns", o.spectra_columns, "Input holds one spectrum per column");
}

TableOptions table_options(const DataOptions& o) {
  TableOptions t;
  t.delimiter = o.delimiter == "tab" ? Delimiter::Tab : o.delimiter == "whitespace" ? Delimiter::Whitespace
                                                                                    : Delimiter::Comma;
  t.orientation = o.spectra_columns ? Orientation::SpectraColumns : Orientation::PerturbationRows;
  return t;
}

RunConfig run_config(const DataOptions& o) {
  RunConfig cfg;
  cfg.inputs.push_back(o.input);
  if (!o.input2.empty()) cfg.inputs.push_back(o.input2);
  cfg.table = table_options(o);
  cfg.reference = ReferenceChoice::parse(o.reference);
  cfg.reference2 = ReferenceChoice::parse(o.reference2);
  if (!o.resample.empty()) {
    if (o.resample == "auto") {
      cfg.resample = 0;
    } else {
      const auto v = parse_real(o.resample);
      if (!v || *v < 4 || *v != static_cast<double>(static_cast<std::size_t>(*v)))
        throw UsageError("--resample expects an integer >= 4 or 'auto'");
      cfg.resample = static_cast<std::size_t>(*v);
    }
  }
  cfg.resample_to_common = o.resample_common;
  cfg.interpolant = o.interpolant == "linear" ? InterpolantKind::Linear : InterpolantKind::CubicSpline;
  cfg.alpha = o.alpha;
  cfg.zero_variance = o.substitute_zero_sigma ? ZeroVariancePolicy::SubstituteUnit : ZeroVariancePolicy::Reject;
  cfg.engine = parse_engine_choice(o.engine);
  if (!o.norm.empty()) cfg.normalization = NormalizationSpec::parse(o.norm);
  cfg.workers = o.workers;
  return cfg;
}

Range parse_range(const std::string& text, const char* flag) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) throw UsageError(std::string(flag) + " expects LO,HI");
  const auto lo = parse_real(text.substr(0, comma));
  const auto hi = parse_real(text.substr(comma + 1));
  if (!lo || !hi) throw UsageError(std::string(flag) + " expects two numbers LO,HI");
  return {*lo, *hi};
}

struct PlotOptions {
  std::string plot = "sync", mode = "contour", cutout, xlim, ylim, zlim, xlab = "nu1", ylab = "nu2";
  int levels = 20;
  bool no_legend = false, no_diagonal = false;
};

void add_plot_options(CLI::App* cmd, PlotOptions& p) {
  cmd->add_option("--plot", p.plot, "sync | async")->check(CLI::IsMember({"sync", "async"}));
  cmd->add_option("--mode", p.mode, "contour | image")->check(CLI::IsMember({"contour", "image"}));
  cmd->add_option("--levels", p.levels, "Number of levels (raised to the next odd number)");
  cmd->add_option("--cutout", p.cutout, "LO,HI band left undrawn (LO <= 0 <= HI)");
  cmd->add_option("--xlim", p.xlim, "A,B open window on the first spectral axis");
  cmd->add_option("--ylim", p.ylim, "A,B open window on the second spectral axis");
  cmd->add_option("--zlim", p.zlim, "A,B intensity window");
  cmd->add_option("--xlab", p.xlab, "x axis label");
  cmd->add_option("--ylab", p.ylab, "y axis label");
  cmd->add_flag("--no-legend", p.no_legend, "Omit the color bar");
  cmd->add_flag("--no-diagonal", p.no_diagonal, "Omit the diagonal line");
}

PlotSpec plot_spec(const PlotOptions& p) {
  PlotSpec s;
  s.which = p.plot == "async" ? PlotKind::Async : PlotKind::Sync;
  s.mode = p.mode == "image" ? PlotMode::Image : PlotMode::Contour;
  s.level_count = p.levels;
  if (!p.cutout.empty()) s.cutout = parse_range(p.cutout, "--cutout");
  if (!p.xlim.empty()) s.xlim = parse_range(p.xlim, "--xlim");
  if (!p.ylim.empty()) s.ylim = parse_range(p.ylim, "--ylim");
  if (!p.zlim.empty()) s.zlim = parse_range(p.zlim, "--zlim");
  s.legend = !p.no_legend;
  if (p.no_diagonal) s.diagonal = false;
  s.xlab = p.xlab;
  s.ylab = p.ylab;
  s.validate();
  return s;
}

/// Correlation from --corr STEM, or computed from --input.
CorrelationSpectra obtain(const std::string& corr_stem, const DataOptions& data) {
  if (!corr_stem.empty()) return load_correlation(corr_stem);
  if (data.input.empty()) throw UsageError("give --corr STEM or --input FILE");
  return compute_correlation(run_config(data)).results.front();
}

int exit_code(ErrorKind k) {
  switch (k) {
    case ErrorKind::Usage: return 1;
    case ErrorKind::Data: return 2;
    case ErrorKind::Numeric: return 3;
  }
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"corrtwo: generalized 2D correlation spectroscopy"};
  app.set_version_flag("--version", kToolVersion);
  app.require_subcommand(1);

  // correlate
  DataOptions corr_data;
  std::string corr_out = "corr2d", corr_format = "matrix-pair", replay;
  PlotOptions corr_plot;
  bool corr_render = false;
  auto* correlate = app.add_subcommand("correlate", "Compute synchronous and asynchronous spectra");
  add_data_options(correlate, corr_data, false);
  correlate->add_option("--out", corr_out, "Output stem");
  correlate->add_option("--format", corr_format, "matrix-pair | long-form")
      ->check(CLI::IsMember({"matrix-pair", "long-form"}));
  correlate->add_option("--replay", replay, "Re-run the pipeline recorded in a .meta.json sidecar");
  correlate->add_flag("--render", corr_render, "Also write <stem>.<plot>.svg");
  add_plot_options(correlate, corr_plot);

  // simulate
  std::string sim_out = "sim";
  std::uint64_t seed = 1;
  double noise = 0.0, k1 = 0.2, k2 = 0.8;
  std::size_t sim_n = 301, sim_m = 100;
  bool equal_rates = false, gaussian = false;
  auto* simulate = app.add_subcommand("simulate", "Simulate A -> B -> C kinetics spectra");
  simulate->add_option("--out", sim_out, "Output stem (<stem>.csv, <stem>.sim.txt)");
  simulate->add_option("--seed", seed, "Noise seed");
  simulate->add_option("--noise", noise, "Noise standard deviation");
  simulate->add_option("--n", sim_n, "Spectral points");
  simulate->add_option("--m", sim_m, "Perturbation points");
  simulate->add_option("--k1", k1, "Rate constant of A -> B");
  simulate->add_option("--k2", k2, "Rate constant of B -> C");
  simulate->add_flag("--equal-rates", equal_rates, "Allow k1 == k2 (analytic limit)");
  simulate->add_flag("--gaussian", gaussian, "Gaussian instead of Lorentzian bands");

  // render
  DataOptions render_data;
  PlotOptions render_plot_opts;
  std::string render_corr, render_out = "plot.svg";
  auto* render = app.add_subcommand("render", "Write an SVG contour or image plot");
  add_data_options(render, render_data, false);
  add_plot_options(render, render_plot_opts);
  render->add_option("--corr", render_corr, "Stem of stored correlation tables");
  render->add_option("--out", render_out, "SVG file");

  // analyze
  DataOptions analyze_data;
  std::string analyze_corr, analyze_out;
  double threshold = 0.05, eps = 0.0;
  auto* analyze = app.add_subcommand("analyze", "Pick peaks and apply the sign rules");
  add_data_options(analyze, analyze_data, false);
  analyze->add_option("--corr", analyze_corr, "Stem of stored correlation tables");
  analyze->add_option("--threshold", threshold, "Peak threshold as a fraction of the maximum");
  analyze->add_option("--eps", eps, "Dead-band (default 1e-3 of the largest magnitude)");
  analyze->add_option("--out", analyze_out, "Write <stem>.peaks.csv");

  // bench
  std::string sizes = "100x200", workers_list, bench_engine = "fourier", bench_out;
  int repeats = 10;
  std::uint64_t bench_seed = 1;
  auto* bench = app.add_subcommand("bench", "Time correlation across sizes and worker counts");
  bench->add_option("--sizes", sizes, "Comma-separated MxN list");
  bench->add_option("--workers-list", workers_list, "Comma-separated worker counts (default 1 and all cores)");
  bench->add_option("--repeats", repeats, "Timed runs per cell (>= 3)");
  bench->add_option("--engine", bench_engine, "fourier | hilbert")->check(CLI::IsMember({"fourier", "hilbert"}));
  bench->add_option("--seed", bench_seed, "Simulation seed");
  bench->add_option("--out", bench_out, "Also write the report to this file");

  // info
  DataOptions info_data;
  auto* info = app.add_subcommand("info", "Summarize a dataset");
  info->add_option("--input", info_data.input, "Dataset file")->required();
  info->add_option("--delimiter", info_data.delimiter, "comma | tab | whitespace")
      ->check(CLI::IsMember({"comma", "tab", "whitespace"}));
  info->add_flag("--spectra-columns", info_data.spectra_columns, "Input holds one spectrum per column");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*correlate) {
      RunConfig cfg;
      if (!replay.empty()) {
        cfg = config_from_sidecar(read_text_file(replay));
        if (correlate->count("--workers")) cfg.workers = corr_data.workers;
      } else {
        if (corr_data.input.empty()) throw UsageError("correlate: --input is required");
        cfg = run_config(corr_data);
        cfg.format = corr_format == "long-form" ? CorrelationFormat::LongForm : CorrelationFormat::MatrixPair;
      }
      cfg.output_stem = corr_out;
      const CorrelateOutcome out = run_correlate(cfg);
      for (const std::string& f : out.files) std::cout << "wrote " << f << "\n";
      if (out.run.sync_delta) {
        std::cout << "sync_frobenius_delta=" << format_roundtrip(*out.run.sync_delta) << "\n";
        std::cout << "async_frobenius_delta=" << format_roundtrip(*out.run.async_delta) << "\n";
      }
      if (corr_render) {
        const std::string path = corr_out + "." + corr_plot.plot + ".svg";
        write_text_file(path, render_plot(out.run.results.front(), plot_spec(corr_plot), cfg.workers));
        std::cout << "wrote " << path << "\n";
      }
    } else if (*simulate) {
      SimulationScenario s = default_scenario(sim_n, sim_m);
      s.kinetics.k1 = k1;
      s.kinetics.k2 = k2;
      s.kinetics.allow_equal_rates = equal_rates;
      if (gaussian)
        for (BandSpec& b : s.bands) b.shape = BandShape::Gaussian;
      const SpectralDataset ds = sim2ddata(s.kinetics, s.bands, s.spectral_axis, noise, seed);
      write_text_file(sim_out + ".csv", write_dataset(ds));
      write_text_file(sim_out + ".sim.txt", describe(s, noise, seed));
      std::cout << "wrote " << sim_out << ".csv\nwrote " << sim_out << ".sim.txt\n";
    } else if (*render) {
      const PlotSpec spec = plot_spec(render_plot_opts);
      const CorrelationSpectra corr = obtain(render_corr, render_data);
      write_text_file(render_out, render_plot(corr, spec, render_data.workers));
      std::cout << "wrote " << render_out << "\n";
    } else if (*analyze) {
      const CorrelationSpectra corr = obtain(analyze_corr, analyze_data);
      const PeakReport report = find_peaks(corr, threshold, eps);
      std::cout << format_report(report);
      if (!analyze_out.empty()) {
        write_text_file(analyze_out + ".peaks.csv", report_long_form(report));
        std::cout << "wrote " << analyze_out << ".peaks.csv\n";
      }
    } else if (*bench) {
      BenchConfig cfg;
      cfg.repeats = repeats;
      cfg.seed = bench_seed;
      cfg.engine = bench_engine == "hilbert" ? Engine::Hilbert : Engine::Fourier;
      for (const std::string& item : CLI::detail::split(sizes, ',')) {
        const auto x = item.find('x');
        const auto m = x == std::string::npos ? std::nullopt : parse_real(item.substr(0, x));
        const auto n = x == std::string::npos ? std::nullopt : parse_real(item.substr(x + 1));
        if (!m || !n || *m < 2 || *n < 2) throw UsageError("--sizes expects entries like 100x4000");
        cfg.sizes.push_back({static_cast<std::size_t>(*m), static_cast<std::size_t>(*n)});
      }
      if (workers_list.empty()) {
        cfg.workers = {1};
        if (default_workers() > 1) cfg.workers.push_back(default_workers());
      } else {
        cfg.workers.clear();
        for (const std::string& item : CLI::detail::split(workers_list, ',')) {
          const auto w = parse_real(item);
          if (!w || *w < 1) throw UsageError("--workers-list expects positive integers");
          cfg.workers.push_back(static_cast<unsigned>(*w));
        }
      }
      const BenchReport report = run_bench(cfg, &std::cerr);
      const std::string text = format_bench(report);
      std::cout << text;
      if (!bench_out.empty()) write_text_file(bench_out, text);
    } else if (*info) {
      std::cout << format_info(run_info(info_data.input, table_options(info_data)));
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code(e.kind());
  } catch (const std::bad_alloc&) {
    std::cerr << "error: out of memory\n";
    return 3;
  }
  return 0;
}
