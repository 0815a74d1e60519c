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

#include "qnlb/certificates.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "qnlb/json_format.h"
#include "qnlb/protocols.h"

namespace qnlb {

namespace {

void require_head_tail_copies(int copies, const char *what) {
    if (copies != 2 && copies != 3) {
        std::ostringstream msg;
        msg << what << ": head/tail certificates exist for n = 2 and n = 3 only, got " << copies;
        throw std::out_of_range(msg.str());
    }
}

void require_open_range(BoxParam param, const char *what) {
    if (param.p() <= 0.0 || param.p() >= 1.0) {
        std::ostringstream msg;
        msg << what << ": p must lie strictly inside (0, 1), got " << param.p();
        throw std::invalid_argument(msg.str());
    }
}

void require_positive(BoxParam param, const char *what) {
    if (param.p() <= 0.0) {
        throw std::invalid_argument(std::string(what) + ": p must be positive");
    }
}

bool aligned_range(BoxParam param) {
    return 3.0 * param.p() >= 2.0;
}

ComplexMatrix symmetric(std::initializer_list<std::initializer_list<double>> rows) {
    return ComplexMatrix::from_real(rows);
}

// The constructions below accept p = 1, which callers reach only as a
// boundary limit.
HeadBlock head_unchecked(int copies, BoxParam param) {
    HeadBlock head;
    head.x = cutoff_x(copies, param);
    double x = head.x;
    if (aligned_range(param)) {
        head.lambda1 = 2.0;
        head.l1 = 1.0 - x;
    } else {
        head.lambda1 = std::sqrt(1.0 + 1.0 / x);
        head.l1 = x * head.lambda1;
    }
    double a = head.lambda1;
    double l = head.l1;
    head.w = symmetric({
        {a, 0, -1, -1},
        {0, l, -1, x},
        {-1, -1, a, 0},
        {-1, x, 0, l},
    });
    head.value = a + l;
    return head;
}

ComplexMatrix tail_n2(BoxParam param) {
    double p = param.p();
    double q = param.q();
    double h = q / 2;
    ComplexMatrix w1;
    ComplexMatrix w2;
    if (p >= 0.5) {
        w1 = symmetric({
            {1, 0, 0, 0, 0},
            {0, h, -h, -h, -h},
            {0, -h, h, h, h},
            {0, -h, h, h, h},
            {0, -h, h, h, p - h},
        });
        w2 = symmetric({
            {0, q, -q, -q, -p},
            {q, 0, 0, 0, 0},
            {-q, 0, 0, 0, 0},
            {-q, 0, 0, 0, 0},
            {-p, 0, 0, 0, 0},
        });
    } else {
        double g = p / 2;
        w1 = symmetric({
            {2 * q, 0, 0, 0, 0},
            {0, h, -g, -g, -h},
            {0, -g, h, h, g},
            {0, -g, h, h, g},
            {0, -h, g, g, h},
        });
        w2 = symmetric({
            {0, p, -q, -q, -p},
            {p, 0, 0, 0, 0},
            {-q, 0, 0, 0, 0},
            {-q, 0, 0, 0, 0},
            {-p, 0, 0, 0, 0},
        });
    }
    return (w1 - w2) * Complex{p, 0.0};
}

ComplexMatrix tail_n3_reduced(BoxParam param) {
    double p = param.p();
    double q = param.q();
    double s = q * q + p * p;
    if (p <= 0.5) {
        return symmetric({
            {p * (3 * q * q + p * p), q * q * p, q * p * p},
            {q * q * p, 0.5 * std::pow(q, 4) * p / s, 0.25 * q * p * p},
            {q * p * p, 0.25 * q * p * p, 0.5 * q * q * std::pow(p, 3) / s},
        });
    }
    return symmetric({
        {p, q * q * p, q * p * p},
        {q * q * p, 0.5 * std::pow(q, 3) * p / s, 0.25 * q * q * p},
        {q * p * p, 0.25 * q * q * p, 0.5 * q * std::pow(p, 4) / s},
    });
}

ComplexMatrix tail_n3_five(BoxParam param) {
    double p = param.p();
    double q = param.q();
    double s = q * q + p * p;
    double p2 = p * p;
    double p3 = p2 * p;
    double q2 = q * q;
    if (p <= 0.5) {
        double c25 = 0.5 * q2 * p * (2 * p2 - q2) / s;
        return symmetric({
            {p * (3 * q2 + p2), -3 * q * p2, q2 * p, q * p2, p3},
            {-3 * q * p2, 4.5 * q2 * p3 / s, -0.75 * q * p2, -1.5 * q2 * p3 / s, -0.75 * q * p2},
            {q2 * p, -0.75 * q * p2, 0.5 * q2 * q2 * p / s, 0.25 * q * p2, c25},
            {q * p2, -1.5 * q2 * p3 / s, 0.25 * q * p2, 0.5 * q2 * p3 / s, 0.25 * q * p2},
            {p3, -0.75 * q * p2, c25, 0.25 * q * p2, 0.5 * p * (3 * q2 * q2 - 4 * q2 * p2 + 2 * p2 * p2) / s},
        });
    }
    double c12 = q2 * q - q;
    double c22 = 0.5 * q * p * (p3 - 2 * p + 2) / s;
    double c23 = -0.25 * q2 * p * (q2 + 4 * q * p + p2) / s;
    double c24 = -0.5 * q * p * (q2 * q + q * p2 + p3) / s;
    double c35 = 0.5 * q2 * p * (q2 - q * p + p2) / s;
    double c45 = -0.25 * q2 * p * (q2 - 4 * q * p + p2) / s;
    return symmetric({
        {p, c12, q2 * p, q * p2, p3},
        {c12, c22, c23, c24, -0.75 * q2 * p},
        {q2 * p, c23, 0.5 * q2 * q * p2 / s, 0.25 * q2 * p, c35},
        {q * p2, c24, 0.25 * q2 * p, 0.5 * q * p2 * p2 / s, c45},
        {p3, -0.75 * q2 * p, c35, c45, 0.5 * p2 * (7 * p3 - 13 * p2 + 11 * p - 3) / s},
    });
}

TailBlock tail_unchecked(int copies, BoxParam param) {
    TailBlock tail;
    if (copies == 2) {
        tail.w = tail_n2(param);
        tail.value = 0.5 * tail.w.trace().real();
    } else {
        tail.w = tail_n3_reduced(param);
        tail.value = tail.w(0, 0).real();
    }
    return tail;
}

DualCertificate assemble_n2_unchecked(BoxParam param) {
    GramProgram program = build_program(2, param);
    const IndexMap &index = program.index();
    HeadBlock head = head_unchecked(2, param);
    TailBlock tail = tail_unchecked(2, param);

    std::size_t n = program.dimension();
    ComplexMatrix k(n, n);
    std::array<std::size_t, 4> head_rows = {IndexMap::kX0, IndexMap::kX1, IndexMap::kY0, index.z(0)};
    std::array<std::size_t, 5> tail_rows = {IndexMap::kX1, index.z(0), index.z(1), index.z(2), index.z(3)};
    for (std::size_t i = 0; i < head_rows.size(); i++) {
        for (std::size_t j = 0; j < head_rows.size(); j++) {
            k(head_rows[i], head_rows[j]) += head.w(i, j);
        }
    }
    for (std::size_t i = 0; i < tail_rows.size(); i++) {
        for (std::size_t j = 0; j < tail_rows.size(); j++) {
            k(tail_rows[i], tail_rows[j]) += tail.w(i, j);
        }
    }

    // Read the dual variables back off K and rebuild it from them. This checks
    // that the sum really has the shape 2 (diag(mu) - sum tau_k H_k) - W.
    std::vector<double> mu(n);
    for (std::size_t i = 0; i < n; i++) {
        mu[i] = 0.5 * k(i, i).real();
    }
    std::vector<double> tau;
    for (const auto &c : program.constraints()) {
        tau.push_back(0.5 * k(c.other.row, c.other.col).real());
    }
    DualCertificate cert = assemble_dual(program, mu, tau);
    double mismatch = max_abs_diff(cert.k, k);
    if (mismatch > 1e-12) {
        std::ostringstream msg;
        msg << "assemble_n2: head + tail is not a dual matrix (mismatch " << mismatch << ")";
        throw std::logic_error(msg.str());
    }
    return cert;
}

std::string range_label(int copies, BoxParam param) {
    double p = param.p();
    if (copies == 1) {
        return aligned_range(param) ? "2/3<=p<=1" : "0<p<2/3";
    }
    if (p >= 1.0) {
        return "p=1";
    }
    if (aligned_range(param)) {
        return "2/3<=p<1";
    }
    bool lower = copies == 2 ? p < 0.5 : p <= 0.5;
    if (lower) {
        return copies == 2 ? "0<p<1/2" : "0<p<=1/2";
    }
    return copies == 2 ? "1/2<=p<2/3" : "1/2<p<2/3";
}

}  // namespace

double cutoff_x(int copies, BoxParam param) {
    if (copies < 1) {
        throw std::out_of_range("cutoff_x: copy count must be positive");
    }
    require_positive(param, "cutoff_x");
    if (param.p() <= 0.5) {
        return 0.5 * (1.0 + std::pow(param.bias(), copies));
    }
    return 1.0 - param.p();
}

DualCertificate cert_n1(BoxParam param) {
    require_positive(param, "cert_n1");
    double p = param.p();
    double q = param.q();
    std::vector<double> mu;
    if (aligned_range(param)) {
        mu = {1.0, p, 1.0, p / 2, p / 2};
    } else {
        double c = std::cos(phi_angle(param, 1));
        mu = {c, c * q + p / 2, c, c * q, p / 2};
    }
    return assemble_dual(build_program(1, param), mu, {});
}

SingleCopySplit split_n1(BoxParam param) {
    DualCertificate cert = cert_n1(param);
    double p = param.p();
    ComplexMatrix k2(5, 5);
    k2(1, 1) = p;
    k2(1, 4) = p;
    k2(4, 1) = p;
    k2(4, 4) = p;
    return {cert.k - k2, k2};
}

bool conjugated_blocks_psd(const ComplexMatrix &m, double tol) {
    if (m.rows() < 4 || m.cols() < 4) {
        throw std::invalid_argument("conjugated_blocks_psd: need at least a 4x4 matrix");
    }
    ComplexMatrix lead(4, 4);
    for (std::size_t i = 0; i < 4; i++) {
        for (std::size_t j = 0; j < 4; j++) {
            lead(i, j) = m(i, j);
        }
    }
    double h = 1.0 / std::sqrt(2.0);
    ComplexMatrix hadamard = ComplexMatrix::from_real({{h, h}, {h, -h}});
    ComplexMatrix u = kron(hadamard, ComplexMatrix::identity(2));
    ComplexMatrix c = u * lead * u;
    for (std::size_t i = 0; i < 4; i++) {
        for (std::size_t j = 0; j < 4; j++) {
            if (i / 2 != j / 2 && std::abs(c(i, j)) > tol) {
                return false;
            }
        }
    }
    return is_psd_2x2(c(0, 0).real(), c(0, 1).real(), c(1, 1).real(), tol) &&
           is_psd_2x2(c(2, 2).real(), c(2, 3).real(), c(3, 3).real(), tol);
}

HeadBlock cert_head(int copies, BoxParam param) {
    require_head_tail_copies(copies, "cert_head");
    require_open_range(param, "cert_head");
    return head_unchecked(copies, param);
}

TailBlock cert_tail(int copies, BoxParam param) {
    require_head_tail_copies(copies, "cert_tail");
    require_open_range(param, "cert_tail");
    return tail_unchecked(copies, param);
}

ComplexMatrix tail_n3_symmetrized(BoxParam param) {
    require_open_range(param, "tail_n3_symmetrized");
    return tail_n3_five(param);
}

DualCertificate assemble_n2(BoxParam param) {
    require_positive(param, "assemble_n2");
    return assemble_n2_unchecked(param);
}

HeadTailCertificate cert_head_tail(int copies, BoxParam param) {
    require_head_tail_copies(copies, "cert_head_tail");
    require_open_range(param, "cert_head_tail");
    HeadTailCertificate cert;
    cert.copies = copies;
    cert.p = param.p();
    cert.head = head_unchecked(copies, param);
    cert.tail = tail_unchecked(copies, param);
    cert.x = cert.head.x;
    return cert;
}

VerificationReport verify_optimality(int copies, BoxParam param) {
    VerificationReport report;
    report.copies = copies;
    report.p = param.p();
    if (copies < 1 || copies > kMaxCertifiedCopies) {
        report.note = "explicit certificates exist for n = 1, 2, 3 only";
        return report;
    }
    if (param.p() <= 0.0) {
        report.note = "p = 0 lies outside every certificate range";
        return report;
    }
    report.range_branch = range_label(copies, param);
    report.boundary = copies >= 2 && param.p() >= 1.0;

    bool blocks_ok = true;
    auto check = [&blocks_ok](const ComplexMatrix &m) {
        double e = min_eigenvalue(m);
        blocks_ok = blocks_ok && e >= -kCertificateTolerance;
        return e;
    };

    try {
        if (copies == 1) {
            DualCertificate cert = cert_n1(param);
            report.min_eig_k = check(cert.k);
            SingleCopySplit split = split_n1(param);
            bool split_ok = conjugated_blocks_psd(split.k1) && is_psd(split.k2, kCertificateTolerance);
            if (!split_ok) {
                blocks_ok = false;
                report.note = "K1 + K2 split is not blockwise PSD";
            }
            report.dual_value = cert.dual_value();
        } else {
            HeadBlock head = head_unchecked(copies, param);
            TailBlock tail = tail_unchecked(copies, param);
            report.min_eig_head = check(head.w);
            report.min_eig_tail = check(tail.w);
            if (copies == 2) {
                report.min_eig_k = check(assemble_n2_unchecked(param).k);
            } else {
                report.min_eig_tail_symmetrized = check(tail_n3_five(param));
            }
            report.dual_value = head.value + tail.value;
            if (report.boundary) {
                report.note = "p = 1 is checked as the limit of the p < 1 construction";
            }
        }
        report.primal_value = protocol_p_value_closed(copies, param);
    } catch (const std::exception &e) {
        report.note = e.what();
        return report;
    }
    report.gap = report.dual_value - report.primal_value;
    report.pass = blocks_ok && std::abs(report.gap) <= kCertificateTolerance;
    return report;
}

HornCheck horn_check(const ComplexMatrix &m, double tol) {
    HornCheck out;
    out.coeffs = char_poly_coeffs(m);
    out.horn = horn_psd_test(out.coeffs, tol);
    out.spectral = is_psd(m, tol);
    out.trailing_zeros = horn_trailing_zeros(out.coeffs, tol);
    return out;
}

bool horn_verify_tail_n3(BoxParam param) {
    require_open_range(param, "horn_verify_tail_n3");
    HornCheck check = horn_check(tail_n3_reduced(param));
    return check.horn && check.agree();
}

std::string report_to_json(const VerificationReport &report) {
    nlohmann::ordered_json doc;
    doc["n"] = report.copies;
    doc["p"] = round_significant(report.p);
    doc["range_branch"] = report.range_branch;
    doc["boundary"] = report.boundary;
    auto put = [&doc](const char *key, const std::optional<double> &v) {
        if (v) {
            doc[key] = round_significant(*v);
        }
    };
    put("min_eig_K", report.min_eig_k);
    put("min_eig_head", report.min_eig_head);
    put("min_eig_tail", report.min_eig_tail);
    put("min_eig_tail_symmetrized", report.min_eig_tail_symmetrized);
    doc["dual_value"] = round_significant(report.dual_value);
    doc["primal_value"] = round_significant(report.primal_value);
    doc["gap"] = round_significant(report.gap);
    doc["pass"] = report.pass;
    if (!report.note.empty()) {
        doc["note"] = report.note;
    }
    return doc.dump();
}

}  // namespace qnlb
