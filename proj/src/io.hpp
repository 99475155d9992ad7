// Copyright (c) 2026 The lpeirl1 Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

#include "trace.hpp"
#include "types.hpp"

namespace lpeirl1 {

/// Shortest decimal that parses back to the same double.
std::string format_double(double v);
/// Strict full-string parse; throws InvalidInput naming `what`.
double parse_double(std::string_view text, std::string_view what);
std::string format_hex64(std::uint64_t v);

// Matrix container, all integers little-endian:
//   bytes 0..7   magic "LPEMAT01"
//   bytes 8..15  rows (uint64)
//   bytes 16..23 cols (uint64)
//   then rows*cols IEEE-754 binary64 values, row-major.
// Vectors are stored as n x 1 matrices.
inline constexpr std::string_view kMatrixMagic = "LPEMAT01";

void write_matrix(const std::filesystem::path &path, const Matrix &M);
Matrix read_matrix(const std::filesystem::path &path);
void write_vector(const std::filesystem::path &path, const Vector &v);
Vector read_vector(const std::filesystem::path &path);
/// Plain comma-separated export, one matrix row per line.
void write_matrix_csv(const std::filesystem::path &path, const Matrix &M);

/// FNV-1a 64 of the file's bytes as 16 hex digits.
std::string file_checksum(const std::filesystem::path &path);

/// Column order of trace CSV files. The first nine columns are the public
/// per-iteration contract; the trailing three carry what stabilization
/// analysis needs to be reproduced from the file alone.
inline constexpr std::string_view kTraceHeader =
    "k,F_eps,psi,step_norm,rel_step,support_size,eps_norm1,mse,stationarity,"
    "support_hash,sign_hash,min_abs_nonzero";

std::string trace_to_csv(const Trace &trace);
void write_trace_csv(const std::filesystem::path &path, const Trace &trace);
/// Parses a trace CSV; errors name the 1-based line. Columns are matched by
/// header name; k, psi and step_norm are required.
Trace parse_trace_csv(std::string_view text);
Trace read_trace_csv(const std::filesystem::path &path);

std::string read_text_file(const std::filesystem::path &path);
/// Writes via a temporary sibling and rename, so readers never see a
/// partially written file.
void write_text_file(const std::filesystem::path &path, std::string_view text);

} // namespace lpeirl1
