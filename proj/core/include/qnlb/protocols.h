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

#ifndef QNLB_PROTOCOLS_H
#define QNLB_PROTOCOLS_H

#include <string_view>

#include "qnlb/boxes.h"
#include "qnlb/linalg.h"

namespace qnlb {

/// Copy count above which the dense (4^n-dimensional) evaluation paths refuse to run.
inline constexpr int kMaxDenseCopies = 5;
/// Copy count above which the brute-force parity evaluation refuses to run.
inline constexpr int kMaxParityBruteforceCopies = 20;

enum class Party { kAlice, kBob };
enum class PauliAxis { kZ, kX };

/// Which pair of generators the rotated observables live in.
enum class OperatorMode {
    kFullTensor,  ///< sigma_z^{(n)}, sigma_x^{(n)}: all copies used jointly.
    kSingleCopy,  ///< sigma_z, sigma_x on the first copy, identity elsewhere.
};

/// Range of p selecting the measurement angle and the closed-form value.
enum class ValueBranch {
    kMultiCopy,           ///< 0 < p < 1/2
    kSingleCopyRotated,   ///< 1/2 <= p < 2/3
    kSingleCopyAligned,   ///< 2/3 <= p <= 1
};

std::string_view branch_label(ValueBranch branch);

/// Throws std::invalid_argument for p == 0, which no branch covers.
ValueBranch protocol_branch(BoxParam param);
OperatorMode operator_mode(BoxParam param);

/// cos^2 of the measurement angle for n copies.
double cos_squared_angle(BoxParam param, int copies);
/// Measurement angle in [0, pi/2].
double phi_angle(BoxParam param, int copies);

struct ObservableSpec {
    Party party;
    int input_bit;
    int copies;
    BoxParam param;

    double angle() const { return phi_angle(param, copies); }
    OperatorMode mode() const { return operator_mode(param); }
};

/// The +-1-valued observable a party measures on its n output qubits.
///
///   Alice: cos(phi/2 + x phi) Z + (-1)^x sin(phi/2 + x phi) X
///   Bob:   cos(phi/2 + y phi) Z - (-1)^y sin(phi/2 + y phi) X
///
/// Dimension 2^n, limited to n <= 6.
ComplexMatrix observable(const ObservableSpec &spec);

/// Reorders a 4^n-dimensional vector or square matrix from per-copy ordering
/// (a1 b1 a2 b2 ...) to party ordering (a1 ... an b1 ... bn).
ComplexMatrix group_parties(const ComplexMatrix &interleaved, int copies);

/// |psi>^{(n)} in party ordering.
ComplexMatrix bell_psi_power(int copies);
/// rho^{(n)} in party ordering, built by dense Kronecker products.
ComplexMatrix rho_power(int copies, BoxParam param);

/// Tr(P^{(n)} (x) Q^{(n)} rho^{(n)}) from the per-copy factorization:
/// (Z,Z) -> (q-p)^n, (X,X) -> 1, mixed -> 0.
double trace_relation_closed(int copies, BoxParam param, PauliAxis left, PauliAxis right);
/// The same trace evaluated literally on dense 4^n-dimensional operators (n <= 5).
double trace_relation_dense(int copies, BoxParam param, PauliAxis left, PauliAxis right);

/// Three-branch closed form of the protocol's CHSH value.
double protocol_p_value_closed(int copies, BoxParam param);
/// 3 cos(phi) - ((1 + L) cos(3 phi) - (1 - L)) / 2, with L the ZZ trace relation
/// of the copies actually measured. Equals the closed form.
double protocol_p_value_raw(int copies, BoxParam param);

struct ValueBreakdown {
    double e00 = 0;
    double e01 = 0;
    double e10 = 0;
    double e11 = 0;

    double total() const { return e00 + e01 + e10 - e11; }
};

/// Dense evaluation: e00, e01, e10 on |psi>^{(n)} and e11 on rho^{(n)} (n <= 5).
ValueBreakdown protocol_p_value_dense(int copies, BoxParam param);

/// 3 - (q-p)^n for p < 1/2, else 2(1 + p).
double parity_value_closed(int copies, BoxParam param);

/// Output distribution of two boxes wired in parallel with both parties
/// XOR-ing their output bits.
JointDistribution xor_compose(const JointDistribution &first, const JointDistribution &second);

/// Best value over k = 1..n of the protocol that XORs the outputs of k
/// correlated boxes, computed by composing the exact joint distributions.
double parity_value_bruteforce(int copies, BoxParam param);

struct AsymptoticValues {
    double qnlb_limit;
    double nlb_limit;
};

/// n -> infinity values. On 0 < p < 1/2 these are (3 sqrt(3) + 1)/2 and 3; on
/// [1/2, 1] no distillation happens and the n-independent values are returned.
/// Throws for p == 0.
AsymptoticValues asymptotic_values(BoxParam param);

/// Checks 3 - l < (3+l)/2 sqrt((3+l)/(1+l)) + (1-l)/2 for 0 <= l < 1 in all
/// three of its equivalent forms (the last being 4k - k sqrt(k) - 8 < 0 with
/// k = 3 + l). Throws outside [0, 1).
bool separation_inequality_check(double l);

}  // namespace qnlb

#endif  // QNLB_PROTOCOLS_H
