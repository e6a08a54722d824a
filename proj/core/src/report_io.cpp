#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <system_error>

#include <json.hpp>

#include "mqcardinal/errors.hpp"
#include "mqcardinal/io.hpp"
#include "mqcardinal/version.hpp"

namespace mqc::io {

using ordered_json = nlohmann::ordered_json;

std::string format_double(double v) {
  std::array<char, 40> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::general, 17);
  if (res.ec != std::errc()) throw_validation("format_double: conversion failed");
  return {buf.data(), res.ptr};
}

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw_validation("cannot open '" + tmp.string() + "' for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw_validation("write to '" + tmp.string() + "' failed");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw_validation("cannot move output into place at '" + path.string() + "'");
  }
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw_validation("cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string series_to_csv(std::span<const double> xs, const SeriesResult& r) {
  if (xs.size() != r.values.size()) throw_validation("series_to_csv: size mismatch");
  std::string out = "x,value,tail_bound\n";
  for (std::size_t i = 0; i < xs.size(); ++i) {
    out += format_double(xs[i]) + ',' + format_double(r.values[i]) + ',' + format_double(r.tail_bounds[i]) + '\n';
  }
  return out;
}

SampleSequence sequence_from_csv(std::string_view text) {
  SampleSequence y;
  std::size_t pos = 0;
  long line_no = 0;
  bool first_row = true;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    const std::size_t comma = line.find(',');
    if (comma == std::string_view::npos) {
      throw_validation("sequence CSV line " + std::to_string(line_no) + ": expected 'j,y'");
    }
    const std::string_view js = line.substr(0, comma);
    const std::string_view ys = line.substr(comma + 1);
    long j = 0;
    double v = 0.0;
    const auto rj = std::from_chars(js.data(), js.data() + js.size(), j);
    const auto rv = std::from_chars(ys.data(), ys.data() + ys.size(), v);
    const bool ok = rj.ec == std::errc() && rj.ptr == js.data() + js.size() && rv.ec == std::errc() &&
                    rv.ptr == ys.data() + ys.size();
    if (!ok) {
      if (line_no == 1) continue;  // header
      throw_validation("sequence CSV line " + std::to_string(line_no) + ": cannot parse '" + std::string(line) + "'");
    }
    if (first_row) {
      y.first_index = j;
      first_row = false;
    } else if (j != y.last_index() + 1) {
      throw_validation("sequence CSV line " + std::to_string(line_no) + ": indices must be consecutive");
    }
    y.values.push_back(v);
  }
  if (y.values.empty()) throw_validation("sequence CSV contains no data rows");
  return y;
}

namespace {

ordered_json number(double v) {
  if (!std::isfinite(v)) return nullptr;
  return v;
}

ordered_json series_object(const std::vector<NamedSeries>& s) {
  ordered_json obj = ordered_json::object();
  for (const auto& [name, values] : s) {
    ordered_json arr = ordered_json::array();
    for (double v : values) arr.push_back(number(v));
    obj[name] = std::move(arr);
  }
  return obj;
}

}  // namespace

std::string report_to_json(const StudyReport& r) {
  ordered_json j;
  j["study_kind"] = std::string(to_string(r.kind));
  j["library_version"] = kVersion;
  j["params_swept"] = series_object(r.params_swept);
  j["metrics"] = series_object(r.metrics);
  ordered_json verdicts = ordered_json::array();
  for (const auto& v : r.verdicts) {
    ordered_json e;
    e["name"] = v.name;
    e["metric"] = v.metric;
    e["rule"] = std::string(to_string(v.rule));
    e["tolerance"] = number(v.tolerance);
    e["passed"] = v.passed;
    verdicts.push_back(std::move(e));
  }
  j["verdicts"] = std::move(verdicts);
  j["notes"] = r.notes;
  j["all_passed"] = r.all_passed();
  return j.dump(2) + '\n';
}

std::string report_metrics_to_csv(const StudyReport& r) {
  std::size_t rows = 0;
  for (const auto& m : r.metrics) rows = std::max(rows, m.second.size());
  std::string out = "index";
  for (const auto& m : r.metrics) out += ',' + m.first;
  out += '\n';
  for (std::size_t i = 0; i < rows; ++i) {
    out += std::to_string(i);
    for (const auto& m : r.metrics) {
      out += ',';
      if (i < m.second.size()) out += format_double(m.second[i]);
    }
    out += '\n';
  }
  return out;
}

}  // namespace mqc::io
