#include "corrtwo/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <new>
#include <utility>

#include <json.hpp>

#include "corrtwo/correlation.hpp"
#include "corrtwo/error.hpp"
#include "corrtwo/numfmt.hpp"

namespace corrtwo {

using nlohmann::json;

namespace {

[[noreturn]] void rethrow_in(const char* stage, const Error& e) {
  const std::string msg = std::string(stage) + ": " + e.what();
  switch (e.kind()) {
    case ErrorKind::Usage: throw UsageError(msg);
    case ErrorKind::Data: throw DataError(msg);
    case ErrorKind::Numeric: break;
  }
  throw NumericError(msg);
}

template <typename Fn>
auto in_stage(const char* stage, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const Error& e) {
    rethrow_in(stage, e);
  } catch (const std::bad_alloc&) {
    throw NumericError(std::string(stage) + ": out of memory");
  }
}

const char* delimiter_name(Delimiter d) {
  switch (d) {
    case Delimiter::Tab: return "tab";
    case Delimiter::Whitespace: return "whitespace";
    case Delimiter::Comma: break;
  }
  return "comma";
}

Delimiter parse_delimiter(const std::string& s) {
  if (s == "comma") return Delimiter::Comma;
  if (s == "tab") return Delimiter::Tab;
  if (s == "whitespace") return Delimiter::Whitespace;
  throw UsageError("unknown delimiter '" + s + "'");
}

double frobenius_delta(const Matrix& a, const Matrix& b) {
  const double fa = frobenius(a), fb = frobenius(b);
  if (fa == 0.0 && fb == 0.0) return 0.0;
  if (fa == 0.0 || fb == 0.0) return 1.0;
  double sum = 0.0;
  const auto& va = a.values();
  const auto& vb = b.values();
  for (std::size_t k = 0; k < va.size(); ++k) {
    const double d = va[k] / fa - vb[k] / fb;
    sum += d * d;
  }
  return std::sqrt(sum);
}

std::string engine_suffix(const RunConfig& cfg, Engine e) {
  if (cfg.engine != EngineChoice::Both) return "";
  return "." + std::string(to_string(e));
}

json doubles(const std::vector<double>& v) {
  json out = json::array();
  for (double x : v) out.push_back(x);
  return out;
}

}  // namespace

std::string ReferenceChoice::path() const {
  return text.rfind("file:", 0) == 0 ? text.substr(5) : std::string();
}

ReferenceChoice ReferenceChoice::parse(const std::string& text) {
  if (text == "mean") return {text};
  if (text.rfind("file:", 0) == 0 && text.size() > 5) return {text};
  throw UsageError("reference must be 'mean' or 'file:PATH', got '" + text + "'");
}

ReferenceSpec ReferenceChoice::load() const {
  if (is_mean()) return PerturbationMean{};
  const std::string content = read_text_file(path());
  const Delimiter d = content.find(',') != std::string::npos ? Delimiter::Comma : Delimiter::Whitespace;
  return ProvidedReference{parse_vector(content, d)};
}

std::string_view to_string(EngineChoice e) noexcept {
  switch (e) {
    case EngineChoice::Hilbert: return "hilbert";
    case EngineChoice::Both: return "both";
    case EngineChoice::Fourier: break;
  }
  return "fourier";
}

EngineChoice parse_engine_choice(const std::string& text) {
  if (text == "fourier") return EngineChoice::Fourier;
  if (text == "hilbert") return EngineChoice::Hilbert;
  if (text == "both") return EngineChoice::Both;
  throw UsageError("engine must be fourier, hilbert or both, got '" + text + "'");
}

void RunConfig::validate() const {
  if (inputs.empty() || inputs.size() > 2) throw UsageError("one or two inputs are required");
  if (workers < 1) throw UsageError("workers must be at least 1");
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw UsageError("alpha must lie in [0, 1]");
  if (resample_to_common && inputs.size() != 2)
    throw UsageError("--resample-to-common needs two inputs");
  if (resample_to_common && resample) throw UsageError("--resample and --resample-to-common exclude each other");
  if (resample_to_common && *resample_to_common < 4) throw UsageError("resample target must be at least 4");
  if (output_stem.empty()) throw UsageError("output stem is empty");
}

CorrelationRun compute_correlation(const RunConfig& cfg) {
  in_stage("config", [&] { cfg.validate(); });
  const bool hetero = cfg.inputs.size() == 2;

  std::vector<SpectralDataset> data;
  in_stage("parse", [&] {
    for (const std::string& path : cfg.inputs) data.push_back(read_dataset_file(path, cfg.table));
  });

  CorrelationRun run;
  in_stage("resample", [&] {
    if (cfg.resample_to_common) {
      const double lo = std::max(data[0].perturbation_axis.front(), data[1].perturbation_axis.front());
      const double hi = std::min(data[0].perturbation_axis.back(), data[1].perturbation_axis.back());
      if (!(lo < hi)) throw DataError("the inputs' perturbation ranges do not overlap");
      const auto grid = equidistant_grid(lo, hi, *cfg.resample_to_common);
      for (auto& ds : data) ds = resample_onto(ds, grid, cfg.interpolant);
      run.resampled_count = grid.size();
    } else if (cfg.resample) {
      const std::size_t target = *cfg.resample == 0 ? default_target_count(data[0].m()) : *cfg.resample;
      for (auto& ds : data) ds = resample_equidistant(ds, target, cfg.interpolant);
      run.resampled_count = target;
    }
  });

  std::vector<DynamicSpectra> dyn;
  in_stage("reference", [&] {
    dyn.push_back(dynamic_spectra(data[0], cfg.reference.load()));
    if (hetero) dyn.push_back(dynamic_spectra(data[1], cfg.reference2.load()));
  });

  in_stage("scale", [&] {
    if (cfg.alpha == 0.0) return;
    dyn[0] = apply_scaling(dyn[0], stddev_spectrum(data[0], cfg.reference.load()), cfg.alpha, cfg.zero_variance);
    if (hetero)
      dyn[1] = apply_scaling(dyn[1], stddev_spectrum(data[1], cfg.reference2.load()), cfg.alpha,
                             cfg.zero_variance);
  });
  run.m = dyn[0].m();
  run.substituted1 = dyn[0].substituted_channels;
  if (hetero) run.substituted2 = dyn[1].substituted_channels;
  run.non_mean_scaling = std::any_of(dyn.begin(), dyn.end(),
                                     [](const DynamicSpectra& d) { return d.scaled_with_non_mean_reference(); });

  in_stage("correlate", [&] {
    const DynamicSpectra& d2 = hetero ? dyn[1] : dyn[0];
    if (hetero) require_compatible(dyn[0], d2);
    std::vector<Engine> engines;
    if (cfg.engine != EngineChoice::Hilbert) engines.push_back(Engine::Fourier);
    if (cfg.engine != EngineChoice::Fourier) engines.push_back(Engine::Hilbert);
    for (Engine e : engines)
      run.results.push_back(
          correlate(e, dyn[0], d2, cfg.normalization.value_or(default_normalization(e)), cfg.workers));
    if (run.results.size() == 2) {
      run.sync_delta = frobenius_delta(run.results[0].sync, run.results[1].sync);
      run.async_delta = frobenius_delta(run.results[0].async, run.results[1].async);
    }
  });
  return run;
}

std::string sidecar_json(const RunConfig& cfg, const CorrelationRun& run) {
  json j;
  j["tool"] = "corrtwo";
  j["tool_version"] = kToolVersion;
  j["command"] = "correlate";
  j["inputs"] = cfg.inputs;
  j["delimiter"] = delimiter_name(cfg.table.delimiter);
  j["orientation"] = cfg.table.orientation == Orientation::PerturbationRows ? "perturbation-rows" : "spectra-columns";
  j["reference"] = cfg.reference.is_mean() ? "mean" : "file";
  if (!cfg.reference.is_mean()) j["reference_path"] = cfg.reference.path();
  if (cfg.inputs.size() == 2) {
    j["reference2"] = cfg.reference2.is_mean() ? "mean" : "file";
    if (!cfg.reference2.is_mean()) j["reference2_path"] = cfg.reference2.path();
  }
  j["resample"] = cfg.resample_to_common ? "common" : cfg.resample ? "equidistant" : "none";
  if (cfg.resample) j["resample_requested"] = *cfg.resample == 0 ? json("auto") : json(*cfg.resample);
  if (cfg.resample_to_common) j["resample_requested"] = *cfg.resample_to_common;
  j["resample_count"] = run.resampled_count;
  j["interpolant"] = cfg.interpolant == InterpolantKind::Linear ? "linear" : "spline";
  j["alpha"] = cfg.alpha;
  j["zero_variance"] = cfg.zero_variance == ZeroVariancePolicy::Reject ? "reject" : "substitute-unit";
  j["substituted_channels"] = run.substituted1;
  if (cfg.inputs.size() == 2) j["substituted_channels2"] = run.substituted2;
  j["non_mean_reference_scaling"] = run.non_mean_scaling;
  j["engine"] = to_string(cfg.engine);
  j["normalization"] = cfg.normalization ? cfg.normalization->describe() : "engine-default";
  j["workers"] = cfg.workers;
  j["format"] = cfg.format == CorrelationFormat::MatrixPair ? "matrix-pair" : "long-form";
  j["m"] = run.m;
  json results = json::array();
  for (const CorrelationSpectra& r : run.results) {
    json e;
    e["engine"] = to_string(r.engine);
    e["normalization_constant"] = r.normalization;
    e["homo"] = r.is_homo;
    e["n1"] = r.axis1.size();
    e["n2"] = r.axis2.size();
    e["scaling_exponent"] = r.scaling_exponent;
    e["suffix"] = engine_suffix(cfg, r.engine);
    e["ref1"] = doubles(r.ref1);
    e["ref2"] = doubles(r.ref2);
    results.push_back(e);
  }
  j["results"] = results;
  if (run.sync_delta) {
    j["comparison"] = {{"sync_frobenius_delta", *run.sync_delta}, {"async_frobenius_delta", *run.async_delta}};
  }
  return j.dump(2) + "\n";
}

RunConfig config_from_sidecar(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw DataError(std::string("sidecar is not valid JSON: ") + e.what());
  }
  try {
    RunConfig cfg;
    cfg.inputs = j.at("inputs").get<std::vector<std::string>>();
    cfg.table.delimiter = parse_delimiter(j.at("delimiter").get<std::string>());
    cfg.table.orientation = j.at("orientation").get<std::string>() == "spectra-columns" ? Orientation::SpectraColumns
                                                                                       : Orientation::PerturbationRows;
    if (j.at("reference").get<std::string>() == "file")
      cfg.reference = ReferenceChoice{"file:" + j.at("reference_path").get<std::string>()};
    if (j.contains("reference2") && j.at("reference2").get<std::string>() == "file")
      cfg.reference2 = ReferenceChoice{"file:" + j.at("reference2_path").get<std::string>()};
    const std::string resample = j.at("resample").get<std::string>();
    if (resample == "equidistant") {
      const json& req = j.at("resample_requested");
      cfg.resample = req.is_string() ? 0 : req.get<std::size_t>();
    } else if (resample == "common") {
      cfg.resample_to_common = j.at("resample_requested").get<std::size_t>();
    }
    cfg.interpolant = j.at("interpolant").get<std::string>() == "linear" ? InterpolantKind::Linear
                                                                       : InterpolantKind::CubicSpline;
    cfg.alpha = j.at("alpha").get<double>();
    cfg.zero_variance = j.at("zero_variance").get<std::string>() == "reject" ? ZeroVariancePolicy::Reject
                                                                           : ZeroVariancePolicy::SubstituteUnit;
    cfg.engine = parse_engine_choice(j.at("engine").get<std::string>());
    const std::string norm = j.at("normalization").get<std::string>();
    if (norm != "engine-default") cfg.normalization = NormalizationSpec::parse(norm);
    cfg.workers = j.at("workers").get<unsigned>();
    cfg.format = j.at("format").get<std::string>() == "long-form" ? CorrelationFormat::LongForm
                                                                  : CorrelationFormat::MatrixPair;
    return cfg;
  } catch (const json::exception& e) {
    throw DataError(std::string("sidecar is missing or mistypes a field: ") + e.what());
  }
}

CorrelateOutcome run_correlate(const RunConfig& cfg) {
  CorrelateOutcome out;
  out.run = compute_correlation(cfg);
  in_stage("write", [&] {
    for (const CorrelationSpectra& r : out.run.results) {
      const std::string base = cfg.output_stem + engine_suffix(cfg, r.engine);
      const CorrelationText text = write_correlation(r, cfg.format);
      if (cfg.format == CorrelationFormat::MatrixPair) {
        write_text_file(base + ".sync.csv", text.sync);
        write_text_file(base + ".async.csv", text.async);
        out.files.push_back(base + ".sync.csv");
        out.files.push_back(base + ".async.csv");
      } else {
        write_text_file(base + ".corr.csv", text.long_form);
        out.files.push_back(base + ".corr.csv");
      }
    }
    out.sidecar = sidecar_json(cfg, out.run);
    write_text_file(cfg.output_stem + ".meta.json", out.sidecar);
    out.files.push_back(cfg.output_stem + ".meta.json");
  });
  return out;
}

CorrelationSpectra load_correlation(const std::string& stem) {
  namespace fs = std::filesystem;
  CorrelationSpectra corr;
  if (fs::exists(stem + ".sync.csv")) {
    CorrelationText text;
    text.sync = read_text_file(stem + ".sync.csv");
    text.async = read_text_file(stem + ".async.csv");
    corr = read_correlation(text, CorrelationFormat::MatrixPair);
  } else if (fs::exists(stem + ".corr.csv")) {
    CorrelationText text;
    text.long_form = read_text_file(stem + ".corr.csv");
    corr = read_correlation(text, CorrelationFormat::LongForm);
  } else {
    throw DataError("no correlation tables found for stem '" + stem + "'");
  }

  // The sidecar sits next to the tables; with engine=both the stem carries
  // an engine suffix.
  std::string meta_path = stem + ".meta.json";
  std::string suffix;
  for (const char* e : {".fourier", ".hilbert"}) {
    const std::string s(e);
    if (!fs::exists(meta_path) && stem.size() > s.size() && stem.ends_with(s)) {
      meta_path = stem.substr(0, stem.size() - s.size()) + ".meta.json";
      suffix = s;
    }
  }
  if (!fs::exists(meta_path)) return corr;
  try {
    const json j = json::parse(read_text_file(meta_path));
    for (const json& r : j.at("results")) {
      if (r.at("suffix").get<std::string>() != suffix) continue;
      const auto ref1 = r.at("ref1").get<std::vector<double>>();
      const auto ref2 = r.at("ref2").get<std::vector<double>>();
      if (ref1.size() != corr.axis1.size() || ref2.size() != corr.axis2.size())
        throw DataError("sidecar references do not match the tables");
      corr.ref1 = ref1;
      corr.ref2 = ref2;
      corr.is_homo = r.at("homo").get<bool>();
      corr.normalization = r.at("normalization_constant").get<double>();
      corr.scaling_exponent = r.at("scaling_exponent").get<double>();
      corr.engine = r.at("engine").get<std::string>() == "hilbert" ? Engine::Hilbert : Engine::Fourier;
    }
  } catch (const json::exception& e) {
    throw DataError(meta_path + ": " + e.what());
  }
  return corr;
}

double spacing_ratio(const std::vector<double>& axis) {
  if (axis.size() < 3) return 1.0;
  double lo = std::abs(axis[1] - axis[0]), hi = lo;
  for (std::size_t k = 2; k < axis.size(); ++k) {
    const double gap = std::abs(axis[k] - axis[k - 1]);
    lo = std::min(lo, gap);
    hi = std::max(hi, gap);
  }
  // Gaps that agree to rounding count as equal.
  if (hi - lo <= 1e-9 * hi) return 1.0;
  return hi / lo;
}

DatasetInfo dataset_info(const SpectralDataset& ds) {
  DatasetInfo info;
  info.m = ds.m();
  info.n = ds.n();
  info.t_min = ds.perturbation_axis.front();
  info.t_max = ds.perturbation_axis.back();
  info.nu_first = ds.spectral_axis.front();
  info.nu_last = ds.spectral_axis.back();
  info.spectral_increasing = ds.spectral_axis.back() > ds.spectral_axis.front();
  info.perturbation_gap_ratio = spacing_ratio(ds.perturbation_axis);
  info.spectral_gap_ratio = spacing_ratio(ds.spectral_axis);
  info.suggested_resample = default_target_count(ds.m());
  return info;
}

DatasetInfo run_info(const std::string& path, const TableOptions& table) {
  return dataset_info(in_stage("parse", [&] { return read_dataset_file(path, table); }));
}

std::string format_info(const DatasetInfo& info) {
  std::string s;
  s += "m=" + std::to_string(info.m) + "\n";
  s += "n=" + std::to_string(info.n) + "\n";
  s += "perturbation_range=" + format_roundtrip(info.t_min) + ".." + format_roundtrip(info.t_max) + "\n";
  s += "spectral_range=" + format_roundtrip(info.nu_first) + ".." + format_roundtrip(info.nu_last) + "\n";
  s += std::string("spectral_order=") + (info.spectral_increasing ? "increasing" : "decreasing") + "\n";
  s += "perturbation_gap_ratio=" + format_roundtrip(info.perturbation_gap_ratio) + "\n";
  s += "perturbation_spacing_deviation=" + format_roundtrip(info.perturbation_gap_ratio - 1.0) + "\n";
  s += "spectral_gap_ratio=" + format_roundtrip(info.spectral_gap_ratio) + "\n";
  s += std::string("equidistant=") + (info.perturbation_gap_ratio == 1.0 ? "yes" : "no") + "\n";
  s += "suggested_resample=" + std::to_string(info.suggested_resample) + "\n";
  return s;
}

}  // namespace corrtwo
