#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "corrtwo/matrix.hpp"

namespace corrtwo {

/// A perturbation-ordered series of spectra. Row j of `intensities` is the
/// spectrum recorded at `perturbation_axis[j]`; column i belongs to
/// `spectral_axis[i]`.
struct SpectralDataset {
  std::vector<double> spectral_axis;
  std::vector<double> perturbation_axis;
  Matrix intensities;
  std::string spectral_label;
  std::string perturbation_label;

  std::size_t m() const noexcept { return perturbation_axis.size(); }
  std::size_t n() const noexcept { return spectral_axis.size(); }

  friend bool operator==(const SpectralDataset&, const SpectralDataset&) = default;
};

/// Throws DataError when an invariant does not hold: m, n >= 2, strictly
/// monotonic spectral axis, strictly increasing perturbation axis, finite
/// values and matching dimensions.
void validate(const SpectralDataset& ds);

enum class Engine { Fourier, Hilbert };

std::string_view to_string(Engine e) noexcept;

struct CorrelationSpectra {
  std::vector<double> axis1;
  std::vector<double> axis2;
  Matrix sync;
  Matrix async;
  std::vector<double> ref1;
  std::vector<double> ref2;
  double normalization = 1.0;
  Engine engine = Engine::Fourier;
  bool is_homo = false;
  double scaling_exponent = 0.0;
};

enum class Delimiter { Comma, Tab, Whitespace };

/// `PerturbationRows` is the native layout: header row holds the spectral
/// axis, first column the perturbation axis. `SpectraColumns` is its
/// transpose.
enum class Orientation { PerturbationRows, SpectraColumns };

struct TableOptions {
  Delimiter delimiter = Delimiter::Comma;
  Orientation orientation = Orientation::PerturbationRows;
};

/// Parses a delimited table into a validated dataset.
///
/// The corner cell (top left) is optional; when present it may carry the
/// axis labels as "perturbation label|spectral label". Any error carries the
/// offending line, column and byte offset.
SpectralDataset parse_dataset(std::string_view text, const TableOptions& options = {});

std::string write_dataset(const SpectralDataset& ds, const TableOptions& options = {});

SpectralDataset read_dataset_file(const std::string& path, const TableOptions& options = {});

/// Reads a plain list of reals (one spectrum), separated by the delimiter or
/// by line breaks.
std::vector<double> parse_vector(std::string_view text, Delimiter delimiter = Delimiter::Comma);

enum class CorrelationFormat { MatrixPair, LongForm };

struct CorrelationText {
  std::string sync;   // matrix-pair only
  std::string async;  // matrix-pair only
  std::string long_form;
};

/// Serializes the two matrices. Matrix-pair tables use axis1 as row labels and
/// axis2 as column labels; long-form rows are "nu1,nu2,sync,async" with nu2
/// varying fastest. All numbers are written in shortest round-trip form.
CorrelationText write_correlation(const CorrelationSpectra& result, CorrelationFormat format);

/// Inverse of write_correlation for the tables' content (axes and matrices).
/// Reference spectra, normalization and engine live in the metadata sidecar;
/// here the references are zero-filled and the remaining fields defaulted.
CorrelationSpectra read_correlation(const CorrelationText& text, CorrelationFormat format);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, std::string_view content);

}  // namespace corrtwo
