#pragma once

#include <optional>
#include <string>
#include <vector>

#include "corrtwo/dataset.hpp"
#include "corrtwo/normalization.hpp"
#include "corrtwo/preprocess.hpp"
#include "corrtwo/render.hpp"

namespace corrtwo {

inline constexpr const char* kToolVersion = "1.0.0";

enum class EngineChoice { Fourier, Hilbert, Both };

/// Textual reference choice as given on the command line: "mean" or
/// "file:PATH".
struct ReferenceChoice {
  std::string text = "mean";

  bool is_mean() const { return text == "mean"; }
  std::string path() const;
  /// Loads the reference spectrum for file references.
  ReferenceSpec load() const;
  static ReferenceChoice parse(const std::string& text);
};

struct RunConfig {
  std::vector<std::string> inputs;  // one (homo) or two (hetero)
  TableOptions table;
  ReferenceChoice reference, reference2;
  /// Perturbation-axis resampling of each input; 0 selects the default count.
  std::optional<std::size_t> resample;
  /// Resample both inputs onto the shared perturbation range with N points.
  std::optional<std::size_t> resample_to_common;
  InterpolantKind interpolant = InterpolantKind::CubicSpline;
  double alpha = 0.0;
  ZeroVariancePolicy zero_variance = ZeroVariancePolicy::Reject;
  EngineChoice engine = EngineChoice::Fourier;
  /// Engine default (noda for fourier, unit for hilbert) when absent.
  std::optional<NormalizationSpec> normalization;
  unsigned workers = 1;
  std::string output_stem = "corr2d";
  CorrelationFormat format = CorrelationFormat::MatrixPair;

  void validate() const;
};

std::string_view to_string(EngineChoice e) noexcept;
EngineChoice parse_engine_choice(const std::string& text);

/// Engine results and the comparison summary when both engines ran.
struct CorrelationRun {
  std::vector<CorrelationSpectra> results;  // fourier first when both ran
  std::size_t m = 0;
  std::size_t resampled_count = 0;  // 0 when not resampled
  std::vector<std::size_t> substituted1, substituted2;
  bool non_mean_scaling = false;
  std::optional<double> sync_delta, async_delta;  // Frobenius-normalized
};

/// parse -> resample -> reference -> dynamic -> scale -> engine(s). Errors
/// carry the failing stage name and keep their kind.
CorrelationRun compute_correlation(const RunConfig& cfg);

struct CorrelateOutcome {
  CorrelationRun run;
  std::vector<std::string> files;
  std::string sidecar;
};

/// compute_correlation, then writes the result tables and <stem>.meta.json.
CorrelateOutcome run_correlate(const RunConfig& cfg);

/// The JSON sidecar describing `cfg` and `run`.
std::string sidecar_json(const RunConfig& cfg, const CorrelationRun& run);

/// Configuration recorded in a sidecar, for replays.
RunConfig config_from_sidecar(const std::string& json_text);

/// Reads <stem>.sync.csv / <stem>.async.csv or <stem>.corr.csv, taking the
/// references, engine and normalization from <stem>.meta.json when present.
CorrelationSpectra load_correlation(const std::string& stem);

/// max gap / min gap of an axis (1 when equidistant).
double spacing_ratio(const std::vector<double>& axis);

struct DatasetInfo {
  std::size_t m = 0, n = 0;
  double t_min = 0, t_max = 0, nu_first = 0, nu_last = 0;
  bool spectral_increasing = true;
  double perturbation_gap_ratio = 1.0, spectral_gap_ratio = 1.0;
  std::size_t suggested_resample = 0;
};

DatasetInfo run_info(const std::string& path, const TableOptions& table = {});
DatasetInfo dataset_info(const SpectralDataset& ds);
std::string format_info(const DatasetInfo& info);

}  // namespace corrtwo
