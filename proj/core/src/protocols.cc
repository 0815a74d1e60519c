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

#include "qnlb/protocols.h"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace qnlb {

namespace {

void require_copies(int copies, int max_copies, const char *what) {
    if (copies < 1 || copies > max_copies) {
        std::ostringstream msg;
        msg << what << ": copy count must lie in [1, " << max_copies << "], got " << copies;
        throw std::out_of_range(msg.str());
    }
}

void require_positive_p(BoxParam param, const char *what) {
    if (param.p() <= 0.0) {
        throw std::invalid_argument(std::string(what) + ": p = 0 lies outside every branch (0 < p <= 1)");
    }
}

ComplexMatrix pauli(PauliAxis axis) {
    return axis == PauliAxis::kZ ? pauli_z() : pauli_x();
}

}  // namespace

std::string_view branch_label(ValueBranch branch) {
    switch (branch) {
        case ValueBranch::kMultiCopy:
            return "0<p<1/2";
        case ValueBranch::kSingleCopyRotated:
            return "1/2<=p<2/3";
        case ValueBranch::kSingleCopyAligned:
            return "2/3<=p<=1";
    }
    return "?";
}

ValueBranch protocol_branch(BoxParam param) {
    require_positive_p(param, "protocol_branch");
    double p = param.p();
    if (p < 0.5) {
        return ValueBranch::kMultiCopy;
    }
    if (3.0 * p < 2.0) {
        return ValueBranch::kSingleCopyRotated;
    }
    return ValueBranch::kSingleCopyAligned;
}

OperatorMode operator_mode(BoxParam param) {
    return param.p() < 0.5 ? OperatorMode::kFullTensor : OperatorMode::kSingleCopy;
}

double cos_squared_angle(BoxParam param, int copies) {
    require_copies(copies, 1 << 20, "cos_squared_angle");
    switch (protocol_branch(param)) {
        case ValueBranch::kMultiCopy: {
            double l = std::pow(param.bias(), copies);
            return 0.25 * (3.0 + l) / (1.0 + l);
        }
        case ValueBranch::kSingleCopyRotated:
            return std::min(1.0, (1.0 + param.q()) / (4.0 * param.q()));
        case ValueBranch::kSingleCopyAligned:
            return 1.0;
    }
    return 1.0;
}

double phi_angle(BoxParam param, int copies) {
    return std::acos(std::sqrt(cos_squared_angle(param, copies)));
}

ComplexMatrix observable(const ObservableSpec &spec) {
    require_copies(spec.copies, 6, "observable");
    if (spec.input_bit != 0 && spec.input_bit != 1) {
        throw std::invalid_argument("observable: input bit must be 0 or 1");
    }
    ComplexMatrix z;
    ComplexMatrix x;
    if (spec.mode() == OperatorMode::kFullTensor) {
        z = kron_power(pauli_z(), spec.copies);
        x = kron_power(pauli_x(), spec.copies);
    } else {
        ComplexMatrix rest = ComplexMatrix::identity(std::size_t{1} << (spec.copies - 1));
        z = kron(pauli_z(), rest);
        x = kron(pauli_x(), rest);
    }
    double phi = spec.angle();
    double theta = phi / 2 + spec.input_bit * phi;
    double sign = spec.input_bit == 0 ? 1.0 : -1.0;
    if (spec.party == Party::kBob) {
        sign = -sign;
    }
    return z * Complex{std::cos(theta), 0.0} + x * Complex{sign * std::sin(theta), 0.0};
}

ComplexMatrix group_parties(const ComplexMatrix &interleaved, int copies) {
    require_copies(copies, 12, "group_parties");
    std::size_t dim = std::size_t{1} << (2 * copies);
    bool is_vector = interleaved.cols() == 1;
    if (interleaved.rows() != dim || (!is_vector && interleaved.cols() != dim)) {
        throw std::invalid_argument("group_parties: expected dimension 4^n");
    }
    // perm[g] = per-copy index of the basis state with party-ordered index g.
    std::vector<std::size_t> perm(dim);
    for (std::size_t g = 0; g < dim; g++) {
        std::size_t a_bits = g >> copies;
        std::size_t b_bits = g & ((std::size_t{1} << copies) - 1);
        std::size_t i = 0;
        for (int k = 0; k < copies; k++) {
            std::size_t a = (a_bits >> (copies - 1 - k)) & 1;
            std::size_t b = (b_bits >> (copies - 1 - k)) & 1;
            i = (i << 2) | (a << 1) | b;
        }
        perm[g] = i;
    }
    ComplexMatrix out(interleaved.rows(), interleaved.cols());
    if (is_vector) {
        for (std::size_t g = 0; g < dim; g++) {
            out(g, 0) = interleaved(perm[g], 0);
        }
        return out;
    }
    for (std::size_t g = 0; g < dim; g++) {
        for (std::size_t h = 0; h < dim; h++) {
            out(g, h) = interleaved(perm[g], perm[h]);
        }
    }
    return out;
}

ComplexMatrix bell_psi_power(int copies) {
    return group_parties(kron_power(bell_psi(), copies), copies);
}

ComplexMatrix rho_power(int copies, BoxParam param) {
    require_copies(copies, kMaxDenseCopies, "rho_power");
    return group_parties(kron_power(rho(param), copies), copies);
}

double trace_relation_closed(int copies, BoxParam param, PauliAxis left, PauliAxis right) {
    require_copies(copies, 1 << 20, "trace_relation_closed");
    if (left != right) {
        return 0.0;
    }
    if (left == PauliAxis::kX) {
        return 1.0;
    }
    return std::pow(param.bias(), copies);
}

double trace_relation_dense(int copies, BoxParam param, PauliAxis left, PauliAxis right) {
    require_copies(copies, kMaxDenseCopies, "trace_relation_dense");
    ComplexMatrix op = kron(kron_power(pauli(left), copies), kron_power(pauli(right), copies));
    return trace_of_product(op, rho_power(copies, param)).real();
}

double protocol_p_value_closed(int copies, BoxParam param) {
    require_copies(copies, 1 << 20, "protocol_p_value_closed");
    double p = param.p();
    double q = param.q();
    switch (protocol_branch(param)) {
        case ValueBranch::kMultiCopy: {
            double l = std::pow(param.bias(), copies);
            double cos_phi = std::sqrt(cos_squared_angle(param, copies));
            return (3.0 + l) * cos_phi + 0.5 * (1.0 - l);
        }
        case ValueBranch::kSingleCopyRotated: {
            double cos_phi = std::sqrt(cos_squared_angle(param, copies));
            return 2.0 * (1.0 + q) * cos_phi + p;
        }
        case ValueBranch::kSingleCopyAligned:
            return 2.0 * (1.0 + p);
    }
    return 0.0;
}

double protocol_p_value_raw(int copies, BoxParam param) {
    require_copies(copies, 1 << 20, "protocol_p_value_raw");
    int measured = operator_mode(param) == OperatorMode::kFullTensor ? copies : 1;
    double l = trace_relation_closed(measured, param, PauliAxis::kZ, PauliAxis::kZ);
    double phi = phi_angle(param, copies);
    return 3.0 * std::cos(phi) - 0.5 * ((1.0 + l) * std::cos(3.0 * phi) - (1.0 - l));
}

ValueBreakdown protocol_p_value_dense(int copies, BoxParam param) {
    require_copies(copies, kMaxDenseCopies, "protocol_p_value_dense");
    require_positive_p(param, "protocol_p_value_dense");
    ComplexMatrix a0 = observable({Party::kAlice, 0, copies, param});
    ComplexMatrix a1 = observable({Party::kAlice, 1, copies, param});
    ComplexMatrix b0 = observable({Party::kBob, 0, copies, param});
    ComplexMatrix b1 = observable({Party::kBob, 1, copies, param});
    ComplexMatrix psi = bell_psi_power(copies);
    ComplexMatrix mixed = rho_power(copies, param);

    ValueBreakdown out;
    out.e00 = expectation(psi, kron(a0, b0)).real();
    out.e01 = expectation(psi, kron(a0, b1)).real();
    out.e10 = expectation(psi, kron(a1, b0)).real();
    out.e11 = trace_of_product(kron(a1, b1), mixed).real();
    return out;
}

double parity_value_closed(int copies, BoxParam param) {
    require_copies(copies, 1 << 20, "parity_value_closed");
    if (param.p() < 0.5) {
        return 3.0 - std::pow(param.bias(), copies);
    }
    return 2.0 * (1.0 + param.p());
}

JointDistribution xor_compose(const JointDistribution &first, const JointDistribution &second) {
    JointDistribution out;
    for (int in = 0; in < 4; in++) {
        for (int o1 = 0; o1 < 4; o1++) {
            for (int o2 = 0; o2 < 4; o2++) {
                out.prob[in][o1 ^ o2] += first.prob[in][o1] * second.prob[in][o2];
            }
        }
    }
    return out;
}

double parity_value_bruteforce(int copies, BoxParam param) {
    require_copies(copies, kMaxParityBruteforceCopies, "parity_value_bruteforce");
    JointDistribution single = correlated_nlb(param);
    JointDistribution wired = single;
    double best = box_value(wired);
    for (int k = 2; k <= copies; k++) {
        wired = xor_compose(wired, single);
        best = std::max(best, box_value(wired));
    }
    return best;
}

AsymptoticValues asymptotic_values(BoxParam param) {
    require_positive_p(param, "asymptotic_values");
    if (param.p() < 0.5) {
        return {0.5 * (3.0 * std::sqrt(3.0) + 1.0), 3.0};
    }
    return {protocol_p_value_closed(1, param), parity_value_closed(1, param)};
}

bool separation_inequality_check(double l) {
    if (!(l >= 0.0 && l < 1.0)) {
        throw std::invalid_argument("separation_inequality_check: l must lie in [0, 1)");
    }
    double k = 3.0 + l;
    bool original = 3.0 - l < 0.5 * (3.0 + l) * std::sqrt((3.0 + l) / (1.0 + l)) + 0.5 * (1.0 - l);
    bool squared = 4.0 * (1.0 + l) < (3.0 + l) * std::sqrt(3.0 + l);
    bool in_k = 4.0 * k - k * std::sqrt(k) - 8.0 < 0.0;
    return original && squared && in_k;
}

}  // namespace qnlb
