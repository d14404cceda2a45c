// Copyright 2026 The nbmf-anneal Authors
//
//    Licensed under the Apache License, Version 2.0 (the "License");
//    you may not use this file except in compliance with the License.
//    You may obtain a copy of the License at
//
//        http://www.apache.org/licenses/LICENSE-2.0
//
//    Unless required by applicable law or agreed to in writing, software
//    distributed under the License is distributed on an "AS IS" BASIS,
//    WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//    See the License for the specific language governing permissions and
//    limitations under the License.

#pragma once

// Matrix file formats.
//
// binary: "NBMF" magic, u16 version (=1), u32 rows, u32 cols, then rows*cols
//         IEEE-754 doubles, all little-endian, row-major.
// csv:    one matrix row per line, comma separated.
// pgm-dir: a directory of P5 PGM images; each image becomes one column
//          (pixels row-major, scaled by 1/maxval), columns ordered by filename.

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

#include "nbmf/matrix.hpp"

namespace nbmf {

enum class MatrixFormat { csv, binary, pgm_dir };

MatrixFormat parse_format(std::string_view name);
const char* to_string(MatrixFormat format);

DenseMatrix read_csv(const std::filesystem::path& path);
DenseMatrix parse_csv(std::string_view text, const std::string& source = "<memory>");
void write_csv(const std::filesystem::path& path, const DenseMatrix& m);

DenseMatrix read_binary(const std::filesystem::path& path);
void write_binary(const std::filesystem::path& path, const DenseMatrix& m);

DenseMatrix read_pgm_dir(const std::filesystem::path& dir);

/// Dispatches on format. Missing paths raise DataError naming the path.
DenseMatrix ingest(const std::filesystem::path& path, MatrixFormat format);
void export_matrix(const std::filesystem::path& path, const DenseMatrix& m, MatrixFormat format);

/// Hex SHA-256 of the bytes at `path`; for a directory, of the sorted
/// (filename, contents) sequence.
std::string fingerprint(const std::filesystem::path& path);

}  // namespace nbmf
