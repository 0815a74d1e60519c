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

#include "qnlb/solver.h"

#include <cmath>
#include <random>
#include <stdexcept>

#include "json.hpp"
#include "qnlb/json_format.h"

namespace qnlb {

namespace {

constexpr std::size_t kRhoUpdatePeriod = 50;
constexpr double kRhoImbalance = 10.0;
constexpr double kRhoFactor = 2.0;
constexpr double kStartPerturbation = 1e-3;

ComplexMatrix seeded_start(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> noise(-kStartPerturbation, kStartPerturbation);
    ComplexMatrix m = ComplexMatrix::identity(n);
    for (std::size_t i = 0; i < n; i++) {
        for (std::size_t j = i + 1; j < n; j++) {
            double v = noise(rng);
            m(i, j) = v;
            m(j, i) = v;
        }
    }
    return m;
}

}  // namespace

void SolveSettings::validate() const {
    if (!(objective_tolerance > 0.0) || !(feasibility_tolerance > 0.0)) {
        throw std::invalid_argument("SolveSettings: tolerances must be positive");
    }
    if (max_iterations == 0) {
        throw std::invalid_argument("SolveSettings: max_iterations must be positive");
    }
}

ComplexMatrix project_affine(const GramProgram &program, const ComplexMatrix &m) {
    std::size_t n = program.dimension();
    if (m.rows() != n || m.cols() != n) {
        throw std::invalid_argument("project_affine: dimension mismatch");
    }
    ComplexMatrix out = m;
    for (std::size_t i = 0; i < n; i++) {
        out(i, i) = 1.0;
    }
    for (const auto &cls : program.xor_classes()) {
        Complex mean{0.0, 0.0};
        for (const auto &pair : cls.pairs) {
            mean += 0.5 * (m(pair.row, pair.col) + m(pair.col, pair.row));
        }
        mean /= static_cast<double>(cls.pairs.size());
        for (const auto &pair : cls.pairs) {
            out(pair.row, pair.col) = mean;
            out(pair.col, pair.row) = mean;
        }
    }
    return out;
}

ComplexMatrix project_psd(const ComplexMatrix &m) {
    EigenResult eig = hermitian_eigen(m);
    std::size_t n = m.rows();
    ComplexMatrix out(n, n);
    for (std::size_t k = 0; k < n; k++) {
        double lambda = eig.eigenvalues[k];
        if (lambda <= 0.0) {
            continue;
        }
        for (std::size_t i = 0; i < n; i++) {
            Complex vi = eig.eigenvectors(i, k) * lambda;
            for (std::size_t j = 0; j < n; j++) {
                out(i, j) += vi * std::conj(eig.eigenvectors(j, k));
            }
        }
    }
    // Remove the rounding asymmetry of the rank-one sums.
    ComplexMatrix sym = (out + out.adjoint()) * Complex{0.5, 0.0};
    return sym;
}

SolveResult solve_primal(const GramProgram &program, const SolveSettings &settings,
                         const std::optional<ComplexMatrix> &start) {
    settings.validate();
    std::size_t n = program.dimension();
    ComplexMatrix z;
    if (start) {
        if (start->rows() != n || start->cols() != n) {
            throw std::invalid_argument("solve_primal: start matrix has the wrong dimension");
        }
        z = *start;
    } else {
        z = project_psd(project_affine(program, seeded_start(n, settings.seed)));
    }
    ComplexMatrix u(n, n);
    ComplexMatrix c = program.weights() * Complex{0.5, 0.0};
    double rho = 1.0;

    SolveResult result;
    double primal_residual = 0.0;
    double dual_residual = 0.0;
    std::size_t iter = 0;
    while (iter < settings.max_iterations) {
        iter++;
        ComplexMatrix x = project_affine(program, z - u + c * Complex{1.0 / rho, 0.0});
        ComplexMatrix z_next = project_psd(x + u);
        ComplexMatrix diff = x - z_next;
        u += diff;
        primal_residual = diff.norm_frobenius();
        dual_residual = rho * (z_next - z).norm_frobenius();
        z = std::move(z_next);
        if (primal_residual <= settings.feasibility_tolerance && dual_residual <= settings.objective_tolerance) {
            result.converged = true;
            break;
        }
        if (iter % kRhoUpdatePeriod == 0) {
            // U is the scaled dual variable Y / rho, so it rescales inversely.
            if (primal_residual > kRhoImbalance * dual_residual) {
                rho *= kRhoFactor;
                u *= Complex{1.0 / kRhoFactor, 0.0};
            } else if (dual_residual > kRhoImbalance * primal_residual) {
                rho /= kRhoFactor;
                u *= Complex{kRhoFactor, 0.0};
            }
        }
    }
    result.g_star = std::move(z);
    result.iterations = iter;
    result.value = primal_objective(result.g_star, program.weights());
    result.feasibility_residual = affine_residual(program, result.g_star);
    return result;
}

ComplexMatrix warm_start_from_protocol(const GramProgram &program, BoxParam param) {
    if (program.copies() > 3) {
        throw std::out_of_range("warm_start_from_protocol: supported for n <= 3");
    }
    return gram_from_protocol(program.copies(), param);
}

std::string result_to_json(const GramProgram &program, const SolveResult &result) {
    nlohmann::ordered_json doc;
    doc["n"] = program.copies();
    doc["p"] = round_significant(program.param().p());
    doc["value"] = round_significant(result.value);
    doc["iterations"] = result.iterations;
    doc["feasibility_residual"] = round_significant(result.feasibility_residual);
    doc["converged"] = result.converged;
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < result.g_star.rows(); i++) {
        nlohmann::ordered_json row = nlohmann::ordered_json::array();
        for (std::size_t j = 0; j < result.g_star.cols(); j++) {
            row.push_back(round_significant(result.g_star(i, j).real()));
        }
        rows.push_back(std::move(row));
    }
    doc["G_star"] = std::move(rows);
    return doc.dump();
}

}  // namespace qnlb
