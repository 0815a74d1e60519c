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

#ifndef QNLB_BOXES_H
#define QNLB_BOXES_H

#include <array>

#include "qnlb/linalg.h"

namespace qnlb {

/// Odd-parity probability p of a correlated box on input 11. q = 1 - p is
/// always derived, never stored.
class BoxParam {
   public:
    /// Throws std::invalid_argument unless 0 <= p <= 1.
    explicit BoxParam(double p);

    double p() const { return p_; }
    double q() const { return 1.0 - p_; }
    /// q - p, the parity bias of one box on input 11.
    double bias() const { return q() - p_; }

   private:
    double p_;
};

/// Conditional output distributions Pr[a, b | x, y] of a two-party binary box.
/// Input index is 2x + y, output index is 2a + b.
struct JointDistribution {
    std::array<std::array<double, 4>, 4> prob{};

    double operator()(int x, int y, int a, int b) const { return prob[2 * x + y][2 * a + b]; }
    double &operator()(int x, int y, int a, int b) { return prob[2 * x + y][2 * a + b]; }
};

bool is_normalized(const JointDistribution &dist, double tol = 1e-12);
/// Alice's marginal is independent of y and Bob's of x.
bool is_non_signalling(const JointDistribution &dist, double tol = 1e-12);

JointDistribution correlated_nlb(BoxParam param);

/// Sum over the four inputs of Pr[a^b == x&y] - Pr[a^b != x&y]; in [-4, 4].
double box_value(const JointDistribution &dist);

/// (|00> + |11>)/sqrt(2) as a 4x1 column.
ComplexMatrix bell_psi();
/// (|01> + |10>)/sqrt(2) as a 4x1 column.
ComplexMatrix bell_phi();

/// p|phi><phi| + q|psi><psi|.
ComplexMatrix rho(BoxParam param);

/// Two-qubit output state per input pair, indexed 2x + y.
struct QuantumBoxOutput {
    std::array<ComplexMatrix, 4> states;

    const ComplexMatrix &operator()(int x, int y) const { return states[2 * x + y]; }
};

QuantumBoxOutput correlated_qnlb(BoxParam param);

/// Reduced state of Bob (traces out the first qubit of a 4x4 state).
ComplexMatrix partial_trace_first(const ComplexMatrix &state);
/// Reduced state of Alice (traces out the second qubit of a 4x4 state).
ComplexMatrix partial_trace_second(const ComplexMatrix &state);

/// Hermitian, PSD and unit trace.
bool is_density_matrix(const ComplexMatrix &state, double tol = 1e-12);

/// Each party's reduced output state does not depend on the other's input bit.
bool is_non_signalling(const QuantumBoxOutput &out, double tol = 1e-12);

/// Outcome distribution when both parties measure in the computational basis.
JointDistribution measure_computational(const QuantumBoxOutput &out);

}  // namespace qnlb

#endif  // QNLB_BOXES_H
