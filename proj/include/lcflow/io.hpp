#pragma once

// Time-series CSV and binary field snapshots.
//
// Snapshot layout (all multi-byte values little-endian):
//   "ELCF"  version:u8(=1)  dim:u8  res:u32  length:f64  t:f64
//   u components, then d components; each res^dim f64 values in row-major
//   order with the last axis fastest.

#include <algorithm>
#include <array>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <span>
#include <sstream>
#include <string>
#include <system_error>
#include <vector>

#include "lcflow/diagnostics.hpp"

namespace lcflow {

inline constexpr std::string_view kTimeseriesHeader =
    "t,u_l2,grad_d_l2,omega_l2,omega_linf,grad_d_linf,hess_d_l2,energy,dissipation,"
    "monitor_integrand,monitor_accum,sphere_norm_err,sphere_identity_err";

namespace detail {

inline std::array<double DiagnosticsRecord::*, 13> record_columns() {
  return {&DiagnosticsRecord::t,           &DiagnosticsRecord::u_l2,
          &DiagnosticsRecord::grad_d_l2,   &DiagnosticsRecord::omega_l2,
          &DiagnosticsRecord::omega_linf,  &DiagnosticsRecord::grad_d_linf,
          &DiagnosticsRecord::hess_d_l2,   &DiagnosticsRecord::energy,
          &DiagnosticsRecord::dissipation, &DiagnosticsRecord::monitor_integrand,
          &DiagnosticsRecord::monitor_accum, &DiagnosticsRecord::sphere_norm_err,
          &DiagnosticsRecord::sphere_identity_err};
}

// Shortest decimal form that parses back to the same double.
inline void append_double(std::string& out, double v) {
  std::array<char, 32> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  out.append(buf.data(), ptr);
}

}  // namespace detail

/// CSV text for a history: the fixed header plus one row per record.
inline std::string format_timeseries(std::span<const DiagnosticsRecord> history) {
  std::string out(kTimeseriesHeader);
  out += '\n';
  const auto cols = detail::record_columns();
  for (const auto& r : history) {
    for (std::size_t c = 0; c < cols.size(); ++c) {
      if (c != 0) out += ',';
      detail::append_double(out, r.*cols[c]);
    }
    out += '\n';
  }
  return out;
}

inline void write_timeseries(std::span<const DiagnosticsRecord> history,
                             const std::filesystem::path& path) {
  const std::string text = format_timeseries(history);
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw IoError("cannot open '" + path.string() + "' for writing");
  f.write(text.data(), static_cast<std::streamsize>(text.size()));
  f.flush();
  if (!f) throw IoError("write failed for '" + path.string() + "'");
}

inline std::vector<DiagnosticsRecord> parse_timeseries(std::string_view text) {
  std::vector<DiagnosticsRecord> out;
  std::size_t pos = text.find('\n');
  if (pos == std::string_view::npos || text.substr(0, pos) != kTimeseriesHeader) {
    throw FormatError("time series header mismatch");
  }
  ++pos;
  const auto cols = detail::record_columns();
  int row = 1;
  while (pos < text.size()) {
    const auto nl = text.find('\n', pos);
    if (nl == std::string_view::npos) throw FormatError("unterminated row " + std::to_string(row));
    std::string_view line = text.substr(pos, nl - pos);
    pos = nl + 1;
    ++row;
    DiagnosticsRecord r;
    std::size_t field = 0;
    std::size_t start = 0;
    while (true) {
      const auto comma = line.find(',', start);
      const auto tok = line.substr(start, comma == std::string_view::npos ? line.size() - start
                                                                          : comma - start);
      if (field >= cols.size()) throw FormatError("too many columns on row " + std::to_string(row));
      double v = 0.0;
      auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
      if (ec != std::errc{} || ptr != tok.data() + tok.size()) {
        throw FormatError("bad number on row " + std::to_string(row));
      }
      r.*cols[field++] = v;
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    if (field != cols.size()) throw FormatError("too few columns on row " + std::to_string(row));
    out.push_back(r);
  }
  return out;
}

inline std::vector<DiagnosticsRecord> read_timeseries(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open '" + path.string() + "'");
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_timeseries(ss.str());
}

namespace detail {

template <typename T>
void put_le(std::vector<unsigned char>& out, T value) {
  auto bytes = std::bit_cast<std::array<unsigned char, sizeof(T)>>(value);
  if constexpr (std::endian::native == std::endian::big) std::ranges::reverse(bytes);
  out.insert(out.end(), bytes.begin(), bytes.end());
}

template <typename T>
T get_le(std::span<const unsigned char> in, std::size_t& pos) {
  if (pos + sizeof(T) > in.size()) throw FormatError("snapshot truncated");
  std::array<unsigned char, sizeof(T)> bytes{};
  std::memcpy(bytes.data(), in.data() + pos, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) std::ranges::reverse(bytes);
  pos += sizeof(T);
  return std::bit_cast<T>(bytes);
}

}  // namespace detail

inline constexpr std::array<unsigned char, 4> kSnapshotMagic{'E', 'L', 'C', 'F'};
inline constexpr unsigned char kSnapshotVersion = 1;

/// Expected snapshot size in bytes.
inline std::size_t snapshot_size(int dim, int res) {
  std::size_t n = 1;
  for (int a = 0; a < dim; ++a) n *= static_cast<std::size_t>(res);
  return 5 + 1 + 4 + 16 + static_cast<std::size_t>(dim + 3) * n * 8;
}

inline std::vector<unsigned char> encode_snapshot(const FluidState& s) {
  const Grid& g = s.grid();
  std::vector<unsigned char> out;
  out.reserve(snapshot_size(g.dim(), g.res()));
  out.insert(out.end(), kSnapshotMagic.begin(), kSnapshotMagic.end());
  out.push_back(kSnapshotVersion);
  out.push_back(static_cast<unsigned char>(g.dim()));
  detail::put_le<std::uint32_t>(out, static_cast<std::uint32_t>(g.res()));
  detail::put_le<double>(out, g.length());
  detail::put_le<double>(out, s.t());
  for (const Field* f : {&s.u(), &s.d()}) {
    for (double v : f->all_values()) detail::put_le<double>(out, v);
  }
  return out;
}

inline FluidState decode_snapshot(std::span<const unsigned char> in) {
  if (in.size() < 5 || !std::equal(kSnapshotMagic.begin(), kSnapshotMagic.end(), in.begin())) {
    throw FormatError("snapshot: bad magic");
  }
  if (in[4] != kSnapshotVersion) {
    throw FormatError("snapshot: unsupported version " + std::to_string(in[4]));
  }
  std::size_t pos = 5;
  const int dim = detail::get_le<std::uint8_t>(in, pos);
  const auto res = detail::get_le<std::uint32_t>(in, pos);
  const double length = detail::get_le<double>(in, pos);
  const double t = detail::get_le<double>(in, pos);
  if (dim != 2 && dim != 3) throw FormatError("snapshot: bad dim " + std::to_string(dim));
  if (res < 8 || res > (1u << 14) || (res & (res - 1)) != 0) {
    throw FormatError("snapshot: bad res " + std::to_string(res));
  }
  if (!(length > 0.0) || !std::isfinite(length)) throw FormatError("snapshot: bad length");
  if (in.size() != snapshot_size(dim, static_cast<int>(res))) {
    throw FormatError("snapshot: size " + std::to_string(in.size()) + " does not match header");
  }
  Grid g(dim, static_cast<int>(res), length);
  FluidState s(g, t);
  for (Field* f : {&s.u(), &s.d()}) {
    for (double& v : f->all_values()) v = detail::get_le<double>(in, pos);
  }
  return s;
}

inline void write_snapshot(const FluidState& s, const std::filesystem::path& path) {
  const auto bytes = encode_snapshot(s);
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw IoError("cannot open '" + path.string() + "' for writing");
  f.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  f.flush();
  if (!f) throw IoError("write failed for '" + path.string() + "'");
}

inline FluidState read_snapshot(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open '" + path.string() + "'");
  std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(f)),
                                   std::istreambuf_iterator<char>());
  return decode_snapshot(bytes);
}

}  // namespace lcflow
