#include <bit>
#include <cstring>

#include <json.hpp>

#include "mqcardinal/errors.hpp"
#include "mqcardinal/io.hpp"
#include "mqcardinal/version.hpp"

namespace mqc::io {

using ordered_json = nlohmann::ordered_json;

namespace {

constexpr const char* kGridFormat = "mqcardinal-grid";

std::uint64_t to_little(std::uint64_t v) {
  if constexpr (std::endian::native == std::endian::little) return v;
  std::uint64_t r = 0;
  for (int i = 0; i < 8; ++i) r |= ((v >> (8 * i)) & 0xffu) << (8 * (7 - i));
  return r;
}

}  // namespace

std::string grid_to_csv(const GridFunction& g) {
  const int n = g.points_per_axis();
  const auto values = g.values();
  std::string out;
  if (g.dim() == 1) {
    out = "x,L\n";
    for (int m = 0; m < n; ++m) {
      out += format_double(g.node(m)) + ',' + format_double(values[static_cast<std::size_t>(m)]) + '\n';
    }
  } else if (g.dim() == 2) {
    out = "x1,x2,L\n";
    for (int a = 0; a < n; ++a) {
      const std::string x1 = format_double(g.node(a)) + ',';
      for (int b = 0; b < n; ++b) {
        const auto flat = static_cast<std::size_t>(a) * static_cast<std::size_t>(n) + static_cast<std::size_t>(b);
        out += x1 + format_double(g.node(b)) + ',' + format_double(values[flat]) + '\n';
      }
    }
  } else {
    throw_validation("grid_to_csv: CSV output supports d = 1 and d = 2");
  }
  return out;
}

std::string grid_to_binary(const GridFunction& g) {
  ordered_json h;
  h["format"] = kGridFormat;
  h["format_version"] = 1;
  h["library_version"] = kVersion;
  h["alpha"] = g.params().alpha();
  h["c"] = g.params().c();
  h["d"] = g.dim();
  h["M"] = g.grid().M;
  h["oversample"] = g.grid().oversample;
  h["points_per_axis"] = g.points_per_axis();
  h["spacing"] = g.spacing();
  h["first_node"] = g.node(0);
  h["layout"] = "row-major, last axis fastest";
  h["dtype"] = "float64";
  h["byte_order"] = "little";
  h["discretization_bound"] = g.discretization_bound();
  h["truncation_bound"] = g.truncation_bound();
  h["imag_residue"] = g.imag_residue();
  std::string out = h.dump() + '\n';
  const auto values = g.values();
  const std::size_t offset = out.size();
  out.resize(offset + values.size() * 8);
  for (std::size_t i = 0; i < values.size(); ++i) {
    const std::uint64_t le = to_little(std::bit_cast<std::uint64_t>(values[i]));
    std::memcpy(out.data() + offset + 8 * i, &le, 8);
  }
  return out;
}

GridFunction grid_from_binary(std::string_view bytes) {
  const std::size_t nl = bytes.find('\n');
  if (nl == std::string_view::npos) throw_validation("binary grid: missing header line");
  ordered_json h;
  try {
    h = ordered_json::parse(bytes.substr(0, nl));
  } catch (const nlohmann::json::exception& e) {
    throw_validation(std::string("binary grid: bad header: ") + e.what());
  }
  if (h.value("format", "") != kGridFormat) throw_validation("binary grid: unknown format");
  try {
    const auto p = MultiquadricParams::make(h.at("alpha").get<double>(), h.at("c").get<double>(), h.at("d").get<int>());
    GridSpec grid{h.at("M").get<int>(), h.at("oversample").get<int>(), h.at("d").get<int>()};
    const int n = h.at("points_per_axis").get<int>();
    if (n != grid.points_per_axis()) throw_validation("binary grid: header is inconsistent");
    std::size_t count = 1;
    for (int i = 0; i < grid.d; ++i) count *= static_cast<std::size_t>(n);
    const std::string_view payload = bytes.substr(nl + 1);
    if (payload.size() != count * 8) throw_validation("binary grid: payload size does not match header");
    std::vector<double> values(count);
    for (std::size_t i = 0; i < count; ++i) {
      std::uint64_t le = 0;
      std::memcpy(&le, payload.data() + 8 * i, 8);
      values[i] = std::bit_cast<double>(to_little(le));
    }
    return GridFunction(p, grid, std::move(values), h.at("discretization_bound").get<double>(),
                        h.at("truncation_bound").get<double>(), h.at("imag_residue").get<double>());
  } catch (const nlohmann::json::exception& e) {
    throw_validation(std::string("binary grid: bad header field: ") + e.what());
  }
}

std::string coefficients_to_csv(const CoefficientSet& c) {
  std::string out = "j,c\n";
  for (std::size_t i = 0; i < c.values.size(); ++i) {
    out += std::to_string(c.first_index + static_cast<long>(i)) + ',' + format_double(c.values[i]) + '\n';
  }
  return out;
}

std::string coefficients_to_json(const CoefficientSet& c, const MultiquadricParams& p) {
  ordered_json j;
  j["alpha"] = p.alpha();
  j["c"] = p.c();
  j["first_index"] = c.first_index;
  j["grid_size"] = c.grid_size;
  j["values"] = c.values;
  return j.dump(2) + '\n';
}

}  // namespace mqc::io
