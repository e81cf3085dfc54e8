#include "corrtwo/dataset.hpp"

#include <cmath>
#include <fstream>
#include <iterator>
#include <sstream>

#include "corrtwo/error.hpp"
#include "corrtwo/numfmt.hpp"

namespace corrtwo {

namespace {

struct Field {
  std::string_view text;
  TextLocation where;
};

struct Row {
  std::vector<Field> fields;
  TextLocation where;  // start of the line
};

bool is_blank(char c) { return c == ' ' || c == '\t' || c == '\r'; }

std::vector<Row> tokenize(std::string_view text, Delimiter delimiter) {
  std::vector<Row> rows;
  std::size_t pos = 0;
  std::size_t line_no = 0;
  // A UTF-8 byte order mark is not part of the first cell.
  if (text.substr(0, 3) == "\xEF\xBB\xBF") pos = 3;
  while (pos < text.size()) {
    ++line_no;
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    std::size_t first = 0;
    while (first < line.size() && is_blank(line[first])) ++first;
    if (first == line.size() || line[first] == '#') {
      pos = eol + 1;
      continue;
    }
    Row row;
    row.where = {pos, line_no, std::nullopt};
    auto push = [&](std::size_t begin, std::size_t end) {
      std::string_view cell = line.substr(begin, end - begin);
      while (!cell.empty() && is_blank(cell.back())) cell.remove_suffix(1);
      std::size_t lead = 0;
      while (lead < cell.size() && is_blank(cell[lead])) ++lead;
      cell.remove_prefix(lead);
      if (cell.size() >= 2 && cell.front() == '"' && cell.back() == '"')
        cell = cell.substr(1, cell.size() - 2);
      row.fields.push_back({cell, {pos + begin, line_no, row.fields.size() + 1}});
    };
    if (delimiter == Delimiter::Whitespace) {
      std::size_t i = 0;
      while (i < line.size()) {
        while (i < line.size() && is_blank(line[i])) ++i;
        if (i == line.size()) break;
        std::size_t start = i;
        while (i < line.size() && !is_blank(line[i])) ++i;
        push(start, i);
      }
    } else {
      const char sep = delimiter == Delimiter::Tab ? '\t' : ',';
      std::size_t start = 0;
      for (std::size_t i = 0; i <= line.size(); ++i) {
        if (i == line.size() || line[i] == sep) {
          push(start, i);
          start = i + 1;
        }
      }
    }
    rows.push_back(std::move(row));
    pos = eol + 1;
  }
  return rows;
}

double number_at(const Field& f) {
  if (f.text.empty() || f.text == "NA" || f.text == "NaN" || f.text == "nan")
    throw ParseError("missing value", f.where);
  auto v = parse_real(f.text);
  if (!v) throw ParseError("non-numeric cell '" + std::string(f.text) + "'", f.where);
  return *v;
}

TextLocation end_of(std::string_view text, const std::vector<Row>& rows) {
  TextLocation loc{text.size(), rows.empty() ? 0 : rows.back().where.line, std::nullopt};
  return loc;
}

/// A labelled numeric table: header values, row labels and body.
struct Table {
  std::string corner;
  std::vector<double> column_labels;
  std::vector<Field> column_fields;
  std::vector<double> row_labels;
  std::vector<Field> row_fields;
  Matrix body;
};

Table parse_table(std::string_view text, Delimiter delimiter) {
  auto rows = tokenize(text, delimiter);
  if (rows.empty()) throw ParseError("empty table", {0, 0, std::nullopt});
  if (rows.size() < 2) throw ParseError("table has a header but no data rows", end_of(text, rows));
  const Row& header = rows.front();
  const std::size_t width = rows[1].fields.size();
  if (width < 2) throw ParseError("data row needs a label and at least one value", rows[1].where);
  for (std::size_t r = 2; r < rows.size(); ++r) {
    if (rows[r].fields.size() != width) {
      throw ParseError("ragged row: expected " + std::to_string(width) + " fields, found " +
                           std::to_string(rows[r].fields.size()),
                       rows[r].where);
    }
  }
  Table t;
  std::size_t skip = 0;
  if (header.fields.size() == width) {
    t.corner = std::string(header.fields.front().text);
    skip = 1;
  } else if (header.fields.size() != width - 1) {
    throw ParseError("header has " + std::to_string(header.fields.size()) +
                         " fields but data rows have " + std::to_string(width),
                     header.where);
  }
  for (std::size_t c = skip; c < header.fields.size(); ++c) {
    t.column_fields.push_back(header.fields[c]);
    t.column_labels.push_back(number_at(header.fields[c]));
  }
  t.body = Matrix(rows.size() - 1, width - 1);
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& f = rows[r].fields;
    t.row_fields.push_back(f.front());
    t.row_labels.push_back(number_at(f.front()));
    for (std::size_t c = 1; c < width; ++c) t.body(r - 1, c - 1) = number_at(f[c]);
  }
  return t;
}

void check_strictly_monotonic(const std::vector<double>& axis, const std::vector<Field>& fields,
                              bool increasing_only, const char* name) {
  if (axis.size() < 2) return;
  const bool up = axis[1] > axis[0];
  for (std::size_t i = 1; i < axis.size(); ++i) {
    if (axis[i] == axis[i - 1])
      throw ParseError(std::string("duplicate ") + name + " value", fields[i].where);
    const bool step_up = axis[i] > axis[i - 1];
    if (increasing_only && !step_up)
      throw ParseError(std::string(name) + " must be strictly increasing", fields[i].where);
    if (step_up != up)
      throw ParseError(std::string(name) + " is not monotonic", fields[i].where);
  }
}

char separator(Delimiter d) {
  switch (d) {
    case Delimiter::Comma: return ',';
    case Delimiter::Tab: return '\t';
    case Delimiter::Whitespace: return ' ';
  }
  return ',';
}

void check_label(const std::string& label, Delimiter d) {
  const char sep = separator(d);
  for (char c : label) {
    if (c == sep || c == '\n' || c == '\r' || c == '|' ||
        (d == Delimiter::Whitespace && is_blank(c)))
      throw DataError("axis label '" + label + "' cannot be written with this delimiter");
  }
}

std::string matrix_table(const std::string& corner, const std::vector<double>& row_labels,
                         const std::vector<double>& col_labels, const Matrix& body, char sep) {
  std::string out;
  out.reserve((body.size() + row_labels.size() + col_labels.size()) * 12);
  out += corner;
  for (double v : col_labels) {
    if (!out.empty() || sep != ' ') out += sep;
    out += format_roundtrip(v);
  }
  out += '\n';
  for (std::size_t r = 0; r < body.rows(); ++r) {
    out += format_roundtrip(row_labels[r]);
    for (std::size_t c = 0; c < body.cols(); ++c) {
      out += sep;
      out += format_roundtrip(body(r, c));
    }
    out += '\n';
  }
  return out;
}

}  // namespace

std::string_view to_string(Engine e) noexcept {
  return e == Engine::Fourier ? "fourier" : "hilbert";
}

void validate(const SpectralDataset& ds) {
  const std::size_t m = ds.perturbation_axis.size();
  const std::size_t n = ds.spectral_axis.size();
  if (m < 2) throw DataError("dataset needs at least two spectra (m < 2), found " + std::to_string(m));
  if (n < 2) throw DataError("dataset needs at least two spectral positions (n < 2), found " + std::to_string(n));
  if (ds.intensities.rows() != m || ds.intensities.cols() != n) {
    throw DataError("intensity matrix is " + std::to_string(ds.intensities.rows()) + "x" +
                    std::to_string(ds.intensities.cols()) + " but axes imply " +
                    std::to_string(m) + "x" + std::to_string(n));
  }
  for (std::size_t j = 1; j < m; ++j) {
    if (!(ds.perturbation_axis[j] > ds.perturbation_axis[j - 1]))
      throw DataError("perturbation axis must be strictly increasing (index " + std::to_string(j) + ")");
  }
  const bool up = ds.spectral_axis[1] > ds.spectral_axis[0];
  for (std::size_t i = 1; i < n; ++i) {
    const double a = ds.spectral_axis[i - 1], b = ds.spectral_axis[i];
    if (a == b || (b > a) != up)
      throw DataError("spectral axis must be strictly monotonic (index " + std::to_string(i) + ")");
  }
  for (double v : ds.perturbation_axis)
    if (!std::isfinite(v)) throw DataError("perturbation axis holds a non-finite value");
  for (double v : ds.spectral_axis)
    if (!std::isfinite(v)) throw DataError("spectral axis holds a non-finite value");
  for (std::size_t j = 0; j < m; ++j)
    for (std::size_t i = 0; i < n; ++i)
      if (!std::isfinite(ds.intensities(j, i)))
        throw DataError("non-finite intensity at row " + std::to_string(j) + ", column " + std::to_string(i));
}

SpectralDataset parse_dataset(std::string_view text, const TableOptions& options) {
  Table t = parse_table(text, options.delimiter);
  SpectralDataset ds;
  std::vector<Field> spectral_fields, perturbation_fields;
  if (options.orientation == Orientation::PerturbationRows) {
    ds.spectral_axis = std::move(t.column_labels);
    spectral_fields = std::move(t.column_fields);
    ds.perturbation_axis = std::move(t.row_labels);
    perturbation_fields = std::move(t.row_fields);
    ds.intensities = std::move(t.body);
  } else {
    ds.spectral_axis = std::move(t.row_labels);
    spectral_fields = std::move(t.row_fields);
    ds.perturbation_axis = std::move(t.column_labels);
    perturbation_fields = std::move(t.column_fields);
    ds.intensities = t.body.transposed();
  }
  if (auto bar = t.corner.find('|'); bar != std::string::npos) {
    ds.perturbation_label = t.corner.substr(0, bar);
    ds.spectral_label = t.corner.substr(bar + 1);
  } else {
    ds.perturbation_label = t.corner;
  }
  const TextLocation end{text.size(), 0, std::nullopt};
  if (ds.m() < 2) {
    throw ParseError("dataset needs at least two spectra (m < 2), found " + std::to_string(ds.m()),
                     perturbation_fields.empty() ? end : perturbation_fields.back().where);
  }
  if (ds.n() < 2) {
    throw ParseError("dataset needs at least two spectral positions (n < 2), found " +
                         std::to_string(ds.n()),
                     spectral_fields.empty() ? end : spectral_fields.back().where);
  }
  check_strictly_monotonic(ds.spectral_axis, spectral_fields, false, "spectral axis");
  check_strictly_monotonic(ds.perturbation_axis, perturbation_fields, true, "perturbation axis");
  return ds;
}

std::string write_dataset(const SpectralDataset& ds, const TableOptions& options) {
  validate(ds);
  check_label(ds.perturbation_label, options.delimiter);
  check_label(ds.spectral_label, options.delimiter);
  std::string corner;
  if (!ds.spectral_label.empty()) corner = ds.perturbation_label + "|" + ds.spectral_label;
  else corner = ds.perturbation_label;
  const char sep = separator(options.delimiter);
  if (options.delimiter == Delimiter::Whitespace && corner.empty()) corner = "|";
  if (options.orientation == Orientation::PerturbationRows)
    return matrix_table(corner, ds.perturbation_axis, ds.spectral_axis, ds.intensities, sep);
  return matrix_table(corner, ds.spectral_axis, ds.perturbation_axis, ds.intensities.transposed(), sep);
}

SpectralDataset read_dataset_file(const std::string& path, const TableOptions& options) {
  return parse_dataset(read_text_file(path), options);
}

std::vector<double> parse_vector(std::string_view text, Delimiter delimiter) {
  std::vector<double> out;
  for (const Row& row : tokenize(text, delimiter))
    for (const Field& f : row.fields) out.push_back(number_at(f));
  if (out.empty()) throw ParseError("no values found", {0, 0, std::nullopt});
  return out;
}

CorrelationText write_correlation(const CorrelationSpectra& result, CorrelationFormat format) {
  const std::size_t n1 = result.axis1.size(), n2 = result.axis2.size();
  if (result.sync.rows() != n1 || result.sync.cols() != n2 || result.async.rows() != n1 ||
      result.async.cols() != n2)
    throw DataError("correlation matrices do not match their axes");
  CorrelationText out;
  if (format == CorrelationFormat::MatrixPair) {
    out.sync = matrix_table("sync", result.axis1, result.axis2, result.sync, ',');
    out.async = matrix_table("async", result.axis1, result.axis2, result.async, ',');
    return out;
  }
  std::string& s = out.long_form;
  s.reserve(n1 * n2 * 48 + 32);
  s += "nu1,nu2,sync,async\n";
  for (std::size_t i = 0; i < n1; ++i) {
    const std::string nu1 = format_roundtrip(result.axis1[i]);
    for (std::size_t j = 0; j < n2; ++j) {
      s += nu1;
      s += ',';
      s += format_roundtrip(result.axis2[j]);
      s += ',';
      s += format_roundtrip(result.sync(i, j));
      s += ',';
      s += format_roundtrip(result.async(i, j));
      s += '\n';
    }
  }
  return out;
}

CorrelationSpectra read_correlation(const CorrelationText& text, CorrelationFormat format) {
  CorrelationSpectra out;
  if (format == CorrelationFormat::MatrixPair) {
    Table s = parse_table(text.sync, Delimiter::Comma);
    Table a = parse_table(text.async, Delimiter::Comma);
    if (s.body.rows() != a.body.rows() || s.body.cols() != a.body.cols()) {
      throw DataError("dimension mismatch: sync is " + std::to_string(s.body.rows()) + "x" +
                      std::to_string(s.body.cols()) + ", async is " +
                      std::to_string(a.body.rows()) + "x" + std::to_string(a.body.cols()));
    }
    if (s.row_labels != a.row_labels || s.column_labels != a.column_labels)
      throw DataError("sync and async tables carry different axes");
    out.axis1 = std::move(s.row_labels);
    out.axis2 = std::move(s.column_labels);
    out.sync = std::move(s.body);
    out.async = std::move(a.body);
  } else {
    auto rows = tokenize(text.long_form, Delimiter::Comma);
    if (rows.empty()) throw ParseError("empty long-form table", {0, 0, std::nullopt});
    const Row& header = rows.front();
    const char* expected[] = {"nu1", "nu2", "sync", "async"};
    if (header.fields.size() != 4)
      throw ParseError("long-form header must be nu1,nu2,sync,async", header.where);
    for (std::size_t k = 0; k < 4; ++k)
      if (header.fields[k].text != expected[k])
        throw ParseError("long-form header must be nu1,nu2,sync,async", header.fields[k].where);
    struct Entry { double nu1, nu2, s, a; };
    std::vector<Entry> entries;
    entries.reserve(rows.size());
    for (std::size_t r = 1; r < rows.size(); ++r) {
      const auto& f = rows[r].fields;
      if (f.size() != 4)
        throw ParseError("expected 4 fields, found " + std::to_string(f.size()), rows[r].where);
      entries.push_back({number_at(f[0]), number_at(f[1]), number_at(f[2]), number_at(f[3])});
    }
    if (entries.empty()) throw ParseError("long-form table has no rows", end_of(text.long_form, rows));
    std::size_t n2 = 0;
    while (n2 < entries.size() && entries[n2].nu1 == entries[0].nu1) ++n2;
    if (entries.size() % n2 != 0)
      throw ParseError("incomplete grid: " + std::to_string(entries.size()) +
                           " rows is not a multiple of " + std::to_string(n2),
                       end_of(text.long_form, rows));
    const std::size_t n1 = entries.size() / n2;
    out.sync = Matrix(n1, n2);
    out.async = Matrix(n1, n2);
    for (std::size_t j = 0; j < n2; ++j) out.axis2.push_back(entries[j].nu2);
    for (std::size_t i = 0; i < n1; ++i) {
      out.axis1.push_back(entries[i * n2].nu1);
      for (std::size_t j = 0; j < n2; ++j) {
        const Entry& e = entries[i * n2 + j];
        if (e.nu1 != out.axis1[i] || e.nu2 != out.axis2[j])
          throw ParseError("long-form rows do not form a regular grid", rows[1 + i * n2 + j].where);
        out.sync(i, j) = e.s;
        out.async(i, j) = e.a;
      }
    }
  }
  out.ref1.assign(out.axis1.size(), 0.0);
  out.ref2.assign(out.axis2.size(), 0.0);
  return out;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open '" + path + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return std::move(ss).str();
}

void write_text_file(const std::string& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("unwritable sink '" + path + "'");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  out.flush();
  if (!out) throw DataError("failed while writing '" + path + "'");
}

}  // namespace corrtwo
