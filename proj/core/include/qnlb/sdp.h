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

#ifndef QNLB_SDP_H
#define QNLB_SDP_H

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qnlb/boxes.h"
#include "qnlb/linalg.h"

namespace qnlb {

inline constexpr int kMaxProgramCopies = 5;
inline constexpr int kMaxGramCopies = 4;

/// Row/column identities of the Gram program: x0, x1, y0, then one z_s per
/// n-bit string s, ordered by the integer value of s (z_{0..0} first).
class IndexMap {
   public:
    static constexpr std::size_t kX0 = 0;
    static constexpr std::size_t kX1 = 1;
    static constexpr std::size_t kY0 = 2;

    explicit IndexMap(int copies);

    int copies() const { return copies_; }
    std::size_t dimension() const { return 3 + (std::size_t{1} << copies_); }
    std::size_t z(std::uint32_t s) const { return 3 + s; }
    /// "x0", "x1", "y0", "z_010", ...
    std::string label(std::size_t index) const;

   private:
    int copies_;
};

struct IndexPair {
    std::size_t row;
    std::size_t col;

    bool operator==(const IndexPair &) const = default;
};

/// All unordered pairs {z_s, z_{s^d}} for one nonzero XOR value d. The Gram
/// entries of these pairs must be equal. pairs[0] is the representative
/// {z_0, z_d}; each further pair contributes one equality constraint.
struct XorClass {
    std::uint32_t xor_value;
    std::vector<IndexPair> pairs;
};

/// The n-copy primal program: maximize Tr(G W)/2 over PSD G with unit diagonal
/// and equal Gram entries within each XOR class.
class GramProgram {
   public:
    GramProgram(int copies, BoxParam param, ComplexMatrix weights, std::vector<XorClass> classes);

    int copies() const { return index_.copies(); }
    BoxParam param() const { return param_; }
    const IndexMap &index() const { return index_; }
    std::size_t dimension() const { return index_.dimension(); }
    const ComplexMatrix &weights() const { return weights_; }
    const std::vector<XorClass> &xor_classes() const { return classes_; }

    /// Number of equality constraints, (2^{n-1} - 1)(2^n - 1) for the built family.
    std::size_t constraint_count() const;
    /// dimension() + constraint_count().
    std::size_t dual_variable_count() const { return dimension() + constraint_count(); }

    /// Constraint pair k (in class order, representative excluded) and its class.
    struct Constraint {
        IndexPair representative;
        IndexPair other;
    };
    const std::vector<Constraint> &constraints() const { return constraints_; }

    /// Symmetric H_k: +1 on the representative pair, -1 on the constrained pair.
    ComplexMatrix constraint_matrix(std::size_t k) const;

   private:
    IndexMap index_;
    BoxParam param_;
    ComplexMatrix weights_;
    std::vector<XorClass> classes_;
    std::vector<Constraint> constraints_;
};

/// Builds W and the XOR classes for 1 <= n <= 5.
GramProgram build_program(int copies, BoxParam param);

/// Gram matrix of the vectors x0, x1, y0, z_s obtained from the protocol's
/// observables acting on |psi>^{(n)} (n <= 4, p > 0). Real part of the inner
/// products; primal feasible by construction.
ComplexMatrix gram_from_protocol(int copies, BoxParam param);

/// Tr(G W) / 2.
double primal_objective(const ComplexMatrix &gram, const ComplexMatrix &weights);

/// Largest violation of the program's affine constraints (unit diagonal and
/// XOR-class equalities) by `gram`.
double affine_residual(const GramProgram &program, const ComplexMatrix &gram);

/// Dual variables with the assembled constraint matrix
/// K = 2 (diag(mu) - sum_k tau_k H_k) - W.
struct DualCertificate {
    std::vector<double> mu;
    std::vector<double> tau;
    ComplexMatrix k;

    /// sum_i mu_i, which equals half the trace of K because W and every H_k
    /// have zero diagonal.
    double dual_value() const;
};

DualCertificate assemble_dual(const GramProgram &program, std::span<const double> mu, std::span<const double> tau);

/// Versioned JSON serialization of (n, p, W, XOR classes) with 1-based indices
/// in IndexMap order.
std::string program_to_json(const GramProgram &program);
GramProgram program_from_json(std::string_view text);

}  // namespace qnlb

#endif  // QNLB_SDP_H
