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

#ifndef QNLB_CERTIFICATES_H
#define QNLB_CERTIFICATES_H

#include <optional>
#include <string>
#include <vector>

#include "qnlb/boxes.h"
#include "qnlb/linalg.h"
#include "qnlb/sdp.h"

namespace qnlb {

/// Largest copy count with an explicit certificate.
inline constexpr int kMaxCertifiedCopies = 3;
/// Acceptance tolerance for certificate eigenvalues and duality gaps.
inline constexpr double kCertificateTolerance = 1e-9;

/// Split point between the head and tail blocks:
/// (1 + (q-p)^n)/2 for 0 < p <= 1/2 and 1 - p for 1/2 < p <= 1.
/// Throws std::invalid_argument for p == 0.
double cutoff_x(int copies, BoxParam param);

/// Single-copy dual solution. For p >= 2/3, mu = (1, p, 1, p/2, p/2);
/// below that mu = cos(phi) (1, q, 1, q, 0) + (0, p/2, 0, 0, p/2).
DualCertificate cert_n1(BoxParam param);

/// K = K1 + K2 with K2 = p (e_x1 + e_z1)(e_x1 + e_z1)^T and K1 zero on z1.
struct SingleCopySplit {
    ComplexMatrix k1;
    ComplexMatrix k2;
};
SingleCopySplit split_n1(BoxParam param);

/// Conjugates the leading 4x4 block of m by (H (x) 1) and reports whether it
/// decouples into two PSD 2x2 blocks (entries outside the blocks vanish and
/// each block passes is_psd_2x2).
bool conjugated_blocks_psd(const ComplexMatrix &m, double tol = kCertificateTolerance);

struct HeadBlock {
    double x = 0;
    double lambda1 = 0;
    double l1 = 0;
    /// Indexed (x0, x1, y0, z_0).
    ComplexMatrix w;
    /// lambda1 + l1, half the diagonal sum.
    double value = 0;

    /// (lambda1 - 1)(l1 + x) and (lambda1 + 1)(l1 - x); both must be >= 1.
    double first_inequality() const { return (lambda1 - 1) * (l1 + x); }
    double second_inequality() const { return (lambda1 + 1) * (l1 - x); }
};

struct TailBlock {
    /// n = 2: the 5x5 matrix on (x1, z_00, z_01, z_10, z_11).
    /// n = 3: the reduced 3x3 matrix.
    ComplexMatrix w;
    /// Contribution to the x1 diagonal slot of the dual solution.
    double value = 0;
};

/// Both reject p outside (0, 1) and copy counts other than 2 and 3.
HeadBlock cert_head(int copies, BoxParam param);
TailBlock cert_tail(int copies, BoxParam param);

/// The 5x5 three-copy tail after the two zero rows are dropped and columns of
/// equal Hamming weight are merged. The reduced 3x3 matrix keeps its rows and
/// columns 1, 3 and 4. Rejects p outside (0, 1).
ComplexMatrix tail_n3_symmetrized(BoxParam param);

/// Full 7x7 two-copy certificate obtained by adding the head (on x0, x1, y0,
/// z_00) and the tail (on x1, z_00, ..., z_11). Accepts 0 < p <= 1.
DualCertificate assemble_n2(BoxParam param);

struct HeadTailCertificate {
    int copies = 0;
    double p = 0;
    double x = 0;
    HeadBlock head;
    TailBlock tail;

    double total_value() const { return head.value + tail.value; }
};
HeadTailCertificate cert_head_tail(int copies, BoxParam param);

struct VerificationReport {
    int copies = 0;
    double p = 0;
    std::string range_branch;
    /// p = 1 for n >= 2 lies outside the certificate's stated range; it is
    /// checked as the limit of the p -> 1 construction.
    bool boundary = false;
    std::optional<double> min_eig_k;
    std::optional<double> min_eig_head;
    std::optional<double> min_eig_tail;
    std::optional<double> min_eig_tail_symmetrized;
    double dual_value = 0;
    double primal_value = 0;
    double gap = 0;
    bool pass = false;
    std::string note;
};

/// Builds the certificate for n in {1, 2, 3}, checks every block for PSD-ness
/// and compares the dual value with the protocol's closed-form value. Never
/// throws; an unsupported (n, p) produces a failing report with a note.
VerificationReport verify_optimality(int copies, BoxParam param);

struct HornCheck {
    std::vector<double> coeffs;
    bool horn = false;
    bool spectral = false;
    /// Number of trailing characteristic-polynomial coefficients treated as zero.
    std::size_t trailing_zeros = 0;

    bool agree() const { return horn == spectral; }
};
HornCheck horn_check(const ComplexMatrix &m, double tol = kPsdTolerance);

/// Horn criterion on the reduced three-copy tail; true iff it passes and agrees
/// with the spectral test.
bool horn_verify_tail_n3(BoxParam param);

/// One-line JSON rendering with 10 significant digits.
std::string report_to_json(const VerificationReport &report);

}  // namespace qnlb

#endif  // QNLB_CERTIFICATES_H
