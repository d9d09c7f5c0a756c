// Copyright 2026 The EJOF Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Report serialization. Keys keep insertion order, doubles are printed as
// the shortest decimal that round-trips, and NaN or infinity become null,
// so equal inputs give byte-identical files.

#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "ejof/dynamics.hpp"
#include "ejof/lindblad.hpp"

namespace ejof::cli {

using Json = nlohmann::ordered_json;

/// Shortest round-trip decimal via std::to_chars.
std::string format_double(double x);

/// Two-space indented rendering with a trailing newline.
std::string render(const Json& j);

/// Hex SHA-256 of `bytes`.
std::string sha256_hex(const std::string& bytes);

Json complex_json(Complex z);
/// Row-major nested arrays of [re, im].
Json matrix_json(const Matrix& m);
Json check_json(const Check& c);
Json checks_json(const std::vector<Check>& checks);
/// {"residual", "tolerance", "pass"}; every numeric verdict goes through here.
Json verdict_json(double residual, double tolerance, bool pass);

/// Writes `text` to `path`, creating parent directories.
void write_file(const std::string& path, const std::string& text);

/// epsilon,tau,state_index,trace_distance
std::string error_table_csv(const ErrorTable& table);

}  // namespace ejof::cli
