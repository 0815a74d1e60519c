// Copyright 2026 The qnlb Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QNLB_TOOLS_COMMANDS_H
#define QNLB_TOOLS_COMMANDS_H

#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace qnlb::cli {

/// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

/// Bad arguments. The message states the valid range.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct CurvePoint {
    double p;
    int n;
    double qnlb_value;
    double nlb_value;
};

/// p = i / grid for i = 1..grid, so p = 0 is excluded and p = 1 included.
std::vector<double> open_grid(int grid);

/// {model, protocol, p, n, value, branch} as one JSON line.
std::string value_record(const std::string &model, const std::string &protocol, double p, int n);

/// Human-readable rendering of both summary tables, followed by notes.
std::string tables_text();
/// The same content as a JSON document.
std::string tables_json();

std::vector<CurvePoint> curve_points(int n, int grid);
/// Header p,n,qnlb_value,nlb_value; 10 significant digits; '\n' endings.
std::string curve_csv(const std::vector<CurvePoint> &points);

/// Writes one report line per p and returns kExitOk iff every report passes.
int certify(int n, const std::vector<double> &ps, std::ostream &out);

struct SolveRequest {
    int n = 1;
    double p = 0.5;
    double tol = 1e-5;
    std::size_t max_iterations = 200000;
    std::uint64_t seed = 0;
    bool warm = false;
    std::optional<std::string> program_path;
};
/// Returns the JSON result; kExitFailure is reported through `converged`.
std::string solve(const SolveRequest &request, bool *converged);

std::string program_json(int n, double p);

}  // namespace qnlb::cli

#endif  // QNLB_TOOLS_COMMANDS_H
