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

#ifndef QNLB_SOLVER_H
#define QNLB_SOLVER_H

#include <cstdint>
#include <optional>
#include <string>

#include "qnlb/linalg.h"
#include "qnlb/sdp.h"

namespace qnlb {

struct SolveSettings {
    std::size_t max_iterations = 200000;
    /// Bound on the dual residual rho * |Z_k - Z_{k-1}|_F at termination.
    double objective_tolerance = 1e-5;
    /// Bound on the affine residual of the returned (PSD) iterate.
    double feasibility_tolerance = 1e-6;
    /// Seeds the perturbation of the identity start when no warm start is given.
    std::uint64_t seed = 0;

    /// Throws std::invalid_argument unless both tolerances are positive.
    void validate() const;
};

struct SolveResult {
    ComplexMatrix g_star;
    double value = 0;
    std::size_t iterations = 0;
    double feasibility_residual = 0;
    bool converged = false;
};

/// Maximizes Tr(G W)/2 over PSD G with unit diagonal and equal entries within
/// each XOR class.
///
/// The method is ADMM on the split "X in the affine set, Z in the PSD cone,
/// X = Z". Each iteration performs, in this order:
///
///   X <- Proj_affine(Z - U + W / (2 rho))   (closed form: unit diagonal,
///                                            class entries replaced by their mean)
///   Z <- Proj_psd(X + U)                    (eigenvalue clipping)
///   U <- U + X - Z
///
/// The penalty rho starts at 1 and is rescaled by 2 every 50 iterations when
/// the primal and dual residuals differ by more than a factor of 10 (U is
/// rescaled with it). The run stops once the primal residual |X - Z|_F is below
/// feasibility_tolerance and the dual residual rho |Z - Z_prev|_F is below
/// objective_tolerance. The PSD iterate Z is returned. Every step is a fixed
/// sequence of floating-point operations, so equal inputs give bit-identical
/// trajectories.
SolveResult solve_primal(const GramProgram &program, const SolveSettings &settings = {},
                         const std::optional<ComplexMatrix> &start = std::nullopt);

/// The protocol's Gram matrix, a feasible starting point (n <= 3).
ComplexMatrix warm_start_from_protocol(const GramProgram &program, BoxParam param);

/// Orthogonal projection onto the program's affine constraint set.
ComplexMatrix project_affine(const GramProgram &program, const ComplexMatrix &m);
/// Nearest PSD matrix in Frobenius norm.
ComplexMatrix project_psd(const ComplexMatrix &m);

/// {n, p, value, iterations, feasibility_residual, converged, G_star} with 10
/// significant digits.
std::string result_to_json(const GramProgram &program, const SolveResult &result);

}  // namespace qnlb

#endif  // QNLB_SOLVER_H
