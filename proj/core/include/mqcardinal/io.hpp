#pragma once

// Serialization of grids, sequences, coefficient sets and study reports.
//
// Text formats use '.' as decimal separator, LF line endings and 17
// significant digits, so every binary64 value round-trips. JSON objects keep
// a fixed key order. The binary grid format is one JSON header line followed
// by the raw little-endian float64 values (see docs/formats.md).

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mqcardinal/analysis.hpp"
#include "mqcardinal/fundamental.hpp"
#include "mqcardinal/interpolate.hpp"

namespace mqc::io {

/// Shortest form is not used: always 17 significant digits, locale-free.
std::string format_double(double v);

/// Writes to `<path>.tmp` and renames over `path`.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);
std::string read_file(const std::filesystem::path& path);

/// "x,L" (d = 1) or "x1,x2,L" (d = 2) rows in increasing lexicographic x.
std::string grid_to_csv(const GridFunction& g);

/// Header line + '\n' + values as float64 little-endian, row-major.
std::string grid_to_binary(const GridFunction& g);
GridFunction grid_from_binary(std::string_view bytes);

/// "j,c" rows.
std::string coefficients_to_csv(const CoefficientSet& c);
std::string coefficients_to_json(const CoefficientSet& c, const MultiquadricParams& p);

/// "x,value,tail_bound" rows.
std::string series_to_csv(std::span<const double> xs, const SeriesResult& r);

/// Parses "j,y" rows with consecutive j (a header line is optional).
SampleSequence sequence_from_csv(std::string_view text);

std::string report_to_json(const StudyReport& r);
/// One column per metric of equal length, first column "index".
std::string report_metrics_to_csv(const StudyReport& r);

}  // namespace mqc::io
