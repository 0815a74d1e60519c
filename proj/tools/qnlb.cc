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

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "commands.h"

namespace {

using namespace qnlb::cli;

int write_text(const std::string &text, const std::optional<std::string> &path) {
    if (!path) {
        std::cout << text;
        return kExitOk;
    }
    std::ofstream out(*path, std::ios::binary);
    if (!out) {
        std::cerr << "error: cannot open " << *path << " for writing\n";
        return kExitFailure;
    }
    out << text;
    if (!out) {
        std::cerr << "error: failed writing " << *path << "\n";
        return kExitFailure;
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Nonlocality distillation values, optimality certificates and Gram SDP solves"};
    app.require_subcommand(1);

    std::string model = "qnlb";
    std::string protocol = "protocolP";
    double p = 0.5;
    int n = 1;
    int grid = 0;
    double tol = 1e-5;
    std::optional<std::string> out_path;
    std::optional<std::string> program_path;
    bool as_json = false;
    bool warm = false;
    std::size_t max_iterations = 200000;
    std::uint64_t seed = 0;

    auto *value = app.add_subcommand("value", "Value of one protocol on one box family");
    value->add_option("--model", model, "nlb or qnlb")->check(CLI::IsMember({"nlb", "qnlb"}));
    value->add_option("--protocol", protocol, "parity or protocolP")->check(CLI::IsMember({"parity", "protocolP"}));
    value->add_option("--p", p, "odd-parity error probability in [0, 1]")->required();
    value->add_option("--n", n, "number of box copies")->required();

    auto *tables = app.add_subcommand("tables", "Print the distillability summary tables");
    tables->add_flag("--json", as_json, "emit JSON instead of text");

    auto *curve = app.add_subcommand("curve", "CSV of both protocol values over p in (0, 1]");
    curve->add_option("--n", n, "number of box copies")->required();
    curve->add_option("--grid", grid, "number of grid points, p = i/grid")->required();
    curve->add_option("--out", out_path, "output file (stdout if omitted)");

    auto *certify = app.add_subcommand("certify", "Verify optimality certificates (n <= 3)");
    certify->add_option("--n", n, "number of box copies: 1, 2 or 3")->required();
    auto *certify_p = certify->add_option("--p", p, "single point in (0, 1]");
    auto *certify_grid = certify->add_option("--grid", grid, "p = i/grid for i = 1..grid");
    certify_p->excludes(certify_grid);

    auto *solve = app.add_subcommand("solve", "Numerically solve the Gram program");
    solve->add_option("--n", n, "number of box copies (1..5)");
    solve->add_option("--p", p, "odd-parity error probability in [0, 1]");
    solve->add_option("--tol", tol, "objective tolerance (feasibility uses tol/10)");
    solve->add_option("--program", program_path, "solve an exported program file instead");
    solve->add_option("--max-iter", max_iterations, "iteration cap");
    solve->add_option("--seed", seed, "seed for the randomized start");
    solve->add_flag("--warm", warm, "start from the protocol's Gram matrix");

    auto *program = app.add_subcommand("program", "Export the Gram program as JSON");
    program->add_option("--n", n, "number of box copies (1..5)")->required();
    program->add_option("--p", p, "odd-parity error probability in [0, 1]")->required();
    program->add_option("--out", out_path, "output file (stdout if omitted)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (value->parsed()) {
            std::cout << value_record(model, protocol, p, n) << "\n";
            return kExitOk;
        }
        if (tables->parsed()) {
            std::cout << (as_json ? tables_json() + "\n" : tables_text());
            return kExitOk;
        }
        if (curve->parsed()) {
            return write_text(curve_csv(curve_points(n, grid)), out_path);
        }
        if (certify->parsed()) {
            if (certify_grid->count() > 0) {
                return qnlb::cli::certify(n, open_grid(grid), std::cout);
            }
            if (certify_p->count() == 0) {
                throw UsageError("certify needs --p or --grid");
            }
            return qnlb::cli::certify(n, {p}, std::cout);
        }
        if (solve->parsed()) {
            SolveRequest request{n, p, tol, max_iterations, seed, warm, program_path};
            bool converged = false;
            std::cout << qnlb::cli::solve(request, &converged) << "\n";
            return converged ? kExitOk : kExitFailure;
        }
        if (program->parsed()) {
            return write_text(program_json(n, p) + "\n", out_path);
        }
    } catch (const UsageError &e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFailure;
    }
    return kExitUsage;
}
