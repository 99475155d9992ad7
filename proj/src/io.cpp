// Copyright (c) 2026 The lpeirl1 Authors.
// SPDX-License-Identifier: Apache-2.0

#include "io.hpp"

#include <array>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstring>
#include <fstream>
#include <map>
#include <sstream>
#include <vector>

#include "error.hpp"

namespace lpeirl1 {

namespace fs = std::filesystem;

std::string format_double(double v) {
  std::array<char, 64> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  if (ec != std::errc())
    fail(ErrorKind::InvalidInput, "cannot format floating-point value");
  return std::string(buf.data(), end);
}

double parse_double(std::string_view text, std::string_view what) {
  double v = 0.0;
  const char *first = text.data();
  const char *last = text.data() + text.size();
  if (!text.empty() && text.front() == '+')
    ++first;
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || text.empty())
    fail(ErrorKind::InvalidInput,
         std::string(what) + ": cannot parse '" + std::string(text) + "' as a number");
  return v;
}

std::string format_hex64(std::uint64_t v) {
  std::array<char, 17> buf{};
  std::snprintf(buf.data(), buf.size(), "%016llx",
                static_cast<unsigned long long>(v));
  return std::string(buf.data(), 16);
}

namespace {

std::uint64_t to_le(std::uint64_t v) {
  if constexpr (std::endian::native == std::endian::big)
    return __builtin_bswap64(v);
  return v;
}

void put_u64(std::ostream &os, std::uint64_t v) {
  v = to_le(v);
  os.write(reinterpret_cast<const char *>(&v), sizeof v);
}

std::uint64_t get_u64(std::istream &is) {
  std::uint64_t v = 0;
  is.read(reinterpret_cast<char *>(&v), sizeof v);
  return to_le(v);
}

std::ofstream open_out(const fs::path &path) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os)
    fail(ErrorKind::Io, "cannot open '" + path.string() + "' for writing");
  return os;
}

std::ifstream open_in(const fs::path &path) {
  std::ifstream is(path, std::ios::binary);
  if (!is)
    fail(ErrorKind::Io, "cannot open '" + path.string() + "' for reading");
  return is;
}

} // namespace

void write_matrix(const fs::path &path, const Matrix &M) {
  std::ostringstream os(std::ios::binary);
  os.write(kMatrixMagic.data(), static_cast<std::streamsize>(kMatrixMagic.size()));
  put_u64(os, static_cast<std::uint64_t>(M.rows()));
  put_u64(os, static_cast<std::uint64_t>(M.cols()));
  for (Index i = 0; i < M.rows(); ++i)
    for (Index j = 0; j < M.cols(); ++j)
      put_u64(os, std::bit_cast<std::uint64_t>(M(i, j)));
  write_text_file(path, os.str());
}

Matrix read_matrix(const fs::path &path) {
  auto is = open_in(path);
  std::array<char, 8> magic{};
  is.read(magic.data(), magic.size());
  if (!is || std::string_view(magic.data(), magic.size()) != kMatrixMagic)
    fail(ErrorKind::InvalidInput, "'" + path.string() + "' is not a matrix file");
  const std::uint64_t rows = get_u64(is);
  const std::uint64_t cols = get_u64(is);
  if (!is)
    fail(ErrorKind::InvalidInput, "'" + path.string() + "': truncated header");
  const auto payload = fs::file_size(path) - 24;
  if (cols != 0 && rows > payload / 8 / cols)
    fail(ErrorKind::InvalidInput, "'" + path.string() + "': truncated payload");
  if (payload != rows * cols * 8)
    fail(ErrorKind::InvalidInput, "'" + path.string() + "': payload size mismatch");
  Matrix M(static_cast<Index>(rows), static_cast<Index>(cols));
  for (Index i = 0; i < M.rows(); ++i)
    for (Index j = 0; j < M.cols(); ++j)
      M(i, j) = std::bit_cast<double>(get_u64(is));
  if (!is)
    fail(ErrorKind::InvalidInput, "'" + path.string() + "': truncated payload");
  return M;
}

void write_vector(const fs::path &path, const Vector &v) {
  write_matrix(path, Matrix(v));
}

Vector read_vector(const fs::path &path) {
  Matrix M = read_matrix(path);
  if (M.cols() != 1)
    fail(ErrorKind::InvalidInput,
         "'" + path.string() + "' holds a matrix, expected a column vector");
  return M.col(0);
}

void write_matrix_csv(const fs::path &path, const Matrix &M) {
  std::string out;
  for (Index i = 0; i < M.rows(); ++i) {
    for (Index j = 0; j < M.cols(); ++j) {
      if (j > 0)
        out += ',';
      out += format_double(M(i, j));
    }
    out += '\n';
  }
  write_text_file(path, out);
}

std::string file_checksum(const fs::path &path) {
  const std::string bytes = read_text_file(path);
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return format_hex64(h);
}

std::string trace_to_csv(const Trace &trace) {
  std::string out(kTraceHeader);
  out += '\n';
  for (const auto &r : trace.records) {
    out += std::to_string(r.k);
    for (double v : {r.F_eps, r.psi, r.step_norm, r.rel_step}) {
      out += ',';
      out += format_double(v);
    }
    out += ',';
    out += std::to_string(r.support_size);
    out += ',';
    out += format_double(r.eps_norm1);
    out += ',';
    if (r.mse)
      out += format_double(*r.mse);
    out += ',';
    if (r.stationarity)
      out += format_double(*r.stationarity);
    out += ',';
    out += format_hex64(r.support_hash);
    out += ',';
    out += format_hex64(r.sign_hash);
    out += ',';
    out += format_double(r.min_abs_nonzero);
    out += '\n';
  }
  return out;
}

void write_trace_csv(const fs::path &path, const Trace &trace) {
  write_text_file(path, trace_to_csv(trace));
}

namespace {

std::vector<std::string_view> split_commas(std::string_view line) {
  std::vector<std::string_view> cells;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    cells.push_back(line.substr(start, comma == std::string_view::npos
                                           ? std::string_view::npos
                                           : comma - start));
    if (comma == std::string_view::npos)
      break;
    start = comma + 1;
  }
  return cells;
}

std::uint64_t parse_hex64(std::string_view text, const std::string &where) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v, 16);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty())
    fail(ErrorKind::InvalidInput, where + ": malformed hash '" + std::string(text) + "'");
  return v;
}

long parse_long(std::string_view text, const std::string &where) {
  long v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty())
    fail(ErrorKind::InvalidInput,
         where + ": cannot parse '" + std::string(text) + "' as an integer");
  return v;
}

} // namespace

Trace parse_trace_csv(std::string_view text) {
  Trace trace;
  std::size_t pos = 0;
  long line_no = 0;
  std::map<std::string, std::size_t, std::less<>> column;
  std::size_t width = 0;
  auto next_line = [&](std::string_view &line) {
    if (pos >= text.size())
      return false;
    auto nl = text.find('\n', pos);
    if (nl == std::string_view::npos)
      nl = text.size();
    line = text.substr(pos, nl - pos);
    if (!line.empty() && line.back() == '\r')
      line.remove_suffix(1);
    pos = nl + 1;
    ++line_no;
    return true;
  };

  std::string_view line;
  if (!next_line(line))
    fail(ErrorKind::InvalidInput, "trace CSV: line 1: missing header");
  const auto header = split_commas(line);
  for (std::size_t i = 0; i < header.size(); ++i)
    column.emplace(std::string(header[i]), i);
  width = header.size();
  for (const char *required : {"k", "psi", "step_norm"})
    if (!column.count(required))
      fail(ErrorKind::InvalidInput, std::string("trace CSV: line 1: missing column '") +
                                        required + "'");

  long prev_k = 0;
  while (next_line(line)) {
    if (line.empty())
      continue;
    const std::string where = "trace CSV: line " + std::to_string(line_no);
    const auto cells = split_commas(line);
    if (cells.size() != width)
      fail(ErrorKind::InvalidInput, where + ": expected " + std::to_string(width) +
                                        " cells, found " + std::to_string(cells.size()));
    auto cell = [&](std::string_view name) -> std::optional<std::string_view> {
      auto it = column.find(name);
      if (it == column.end() || cells[it->second].empty())
        return std::nullopt;
      return cells[it->second];
    };
    auto number = [&](std::string_view name) -> std::optional<double> {
      auto c = cell(name);
      if (!c)
        return std::nullopt;
      const double v = parse_double(*c, where + ", column " + std::string(name));
      if (!std::isfinite(v))
        fail(ErrorKind::InvalidInput, where + ": non-finite " + std::string(name));
      return v;
    };

    IterationRecord r;
    auto k = cell("k");
    auto psi = number("psi");
    auto step = number("step_norm");
    if (!k || !psi || !step)
      fail(ErrorKind::InvalidInput, where + ": k, psi and step_norm are required");
    r.k = parse_long(*k, where);
    if (!trace.records.empty() && r.k <= prev_k)
      fail(ErrorKind::InvalidInput, where + ": k must be strictly increasing");
    prev_k = r.k;
    r.psi = *psi;
    r.step_norm = *step;
    r.F_eps = number("F_eps").value_or(0.0);
    r.rel_step = number("rel_step").value_or(0.0);
    if (auto s = cell("support_size"))
      r.support_size = parse_long(*s, where);
    r.eps_norm1 = number("eps_norm1").value_or(0.0);
    r.mse = number("mse");
    r.stationarity = number("stationarity");
    if (auto h = cell("support_hash"))
      r.support_hash = parse_hex64(*h, where);
    if (auto h = cell("sign_hash"))
      r.sign_hash = parse_hex64(*h, where);
    r.min_abs_nonzero = number("min_abs_nonzero").value_or(0.0);
    trace.records.push_back(r);
  }
  return trace;
}

Trace read_trace_csv(const fs::path &path) {
  return parse_trace_csv(read_text_file(path));
}

std::string read_text_file(const fs::path &path) {
  auto is = open_in(path);
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

void write_text_file(const fs::path &path, std::string_view text) {
  fs::path tmp = path;
  tmp += ".tmp";
  {
    auto os = open_out(tmp);
    os.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!os)
      fail(ErrorKind::Io, "write to '" + tmp.string() + "' failed");
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec)
    fail(ErrorKind::Io, "cannot move '" + tmp.string() + "' to '" + path.string() +
                            "': " + ec.message());
}

} // namespace lpeirl1
