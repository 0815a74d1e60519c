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

#include <gtest/gtest.h>

#include <cmath>

#include "grid.h"
#include "json.hpp"
#include "qnlb/protocols.h"

using namespace qnlb;
using qnlb::testing::p_grid;

namespace {

std::size_t numerical_rank(const ComplexMatrix &m, double tol = 1e-9) {
    std::size_t rank = 0;
    for (double e : hermitian_eigen(m).eigenvalues) {
        rank += std::abs(e) > tol;
    }
    return rank;
}

}  // namespace

TEST(certificates, cutoff) {
    EXPECT_NEAR(cutoff_x(2, BoxParam(0.5)), 0.5, 1e-15);
    EXPECT_NEAR(cutoff_x(3, BoxParam(0.5 + 1e-12)), 0.5, 1e-11);
    EXPECT_NEAR(cutoff_x(2, BoxParam(0.8)), 0.2, 1e-15);
    EXPECT_NEAR(cutoff_x(3, BoxParam(0.2)), 0.5 * (1 + 0.216), 1e-15);
    EXPECT_EQ(cutoff_x(2, BoxParam(1.0)), 0.0);
    EXPECT_THROW(cutoff_x(2, BoxParam(0.0)), std::invalid_argument);
}

TEST(certificates, n1_examples) {
    DualCertificate c = cert_n1(BoxParam(0.8));
    EXPECT_NEAR(c.dual_value(), 3.6, 1e-12);
    EXPECT_GE(min_eigenvalue(c.k), -1e-9);
    EXPECT_EQ(c.mu, (std::vector<double>{1, 0.8, 1, 0.4, 0.4}));

    // Both branch formulas give 10/3 at p = 2/3.
    BoxParam edge(2.0 / 3.0);
    EXPECT_NEAR(cert_n1(edge).dual_value(), 10.0 / 3.0, 1e-12);
    double q = 1.0 / 3.0;
    double c_mid = std::sqrt((1 + q) / (4 * q));
    EXPECT_NEAR(c_mid, 1.0, 1e-12);
    EXPECT_NEAR(2 * (1 + q) * c_mid + 2.0 / 3.0, 10.0 / 3.0, 1e-12);

    BoxParam low(0.4);
    double cos_phi = std::sqrt((1 + low.q()) / (4 * low.q()));
    EXPECT_NEAR(cert_n1(low).dual_value(), 2 * (1 + low.q()) * cos_phi + 0.4, 1e-12);
    EXPECT_THROW(cert_n1(BoxParam(0.0)), std::invalid_argument);
}

TEST(certificates, n1_split_is_blockwise_psd) {
    for (double p : p_grid()) {
        SingleCopySplit split = split_n1(BoxParam(p));
        EXPECT_LE(max_abs_diff(split.k1 + split.k2, cert_n1(BoxParam(p)).k), 1e-15);
        for (std::size_t i = 0; i < 5; i++) {
            EXPECT_EQ(split.k1(4, i), Complex(0, 0));
        }
        EXPECT_TRUE(conjugated_blocks_psd(split.k1)) << "p=" << p;
        EXPECT_TRUE(is_psd(split.k1, 1e-9));
        EXPECT_TRUE(is_psd(split.k2, 1e-9));
        EXPECT_NEAR(hermitian_eigen(split.k2).eigenvalues.back(), 2 * p, 1e-12);
    }
}

TEST(certificates, head_examples) {
    HeadBlock h = cert_head(2, BoxParam(0.8));
    EXPECT_NEAR(h.x, 0.2, 1e-15);
    EXPECT_NEAR(h.value, 2.8, 1e-15);
    EXPECT_NEAR(h.value, 3 - h.x, 1e-15);

    HeadBlock m = cert_head(2, BoxParam(0.6));
    EXPECT_NEAR(m.value, std::sqrt(std::pow(1.4, 3) / 0.4), 1e-14);
    EXPECT_NEAR(m.value, 2.6191601707, 1e-10);
    EXPECT_NEAR(m.value + cert_tail(2, BoxParam(0.6)).value, 3.2191601707, 1e-10);
    EXPECT_NEAR(0.5 * m.w.trace().real(), m.value, 1e-15);

    EXPECT_THROW(cert_head(2, BoxParam(1.0)), std::invalid_argument);
    EXPECT_THROW(cert_head(2, BoxParam(0.0)), std::invalid_argument);
    EXPECT_THROW(cert_head(4, BoxParam(0.5)), std::out_of_range);
}

TEST(certificates, head_inequalities_and_psd_on_grid) {
    for (double p : p_grid()) {
        for (int n : {2, 3}) {
            HeadBlock h = cert_head(n, BoxParam(p));
            EXPECT_GE(h.first_inequality(), 1 - 1e-12) << "n=" << n << " p=" << p;
            EXPECT_GE(h.second_inequality(), 1 - 1e-12) << "n=" << n << " p=" << p;
            EXPECT_TRUE(conjugated_blocks_psd(h.w));
            EXPECT_TRUE(is_psd(h.w, 1e-9));
        }
    }
}

TEST(certificates, tail_examples) {
    EXPECT_NEAR(cert_tail(2, BoxParam(0.6)).value, 0.6, 1e-15);
    EXPECT_NEAR(cert_tail(2, BoxParam(0.25)).value, 0.375, 1e-15);
    TailBlock t3 = cert_tail(3, BoxParam(0.2));
    EXPECT_NEAR(t3.value, 0.392, 1e-15);
    EXPECT_NEAR(t3.value, 1 - cutoff_x(3, BoxParam(0.2)), 1e-15);
    EXPECT_THROW(cert_tail(3, BoxParam(1.0)), std::invalid_argument);
    EXPECT_THROW(tail_n3_symmetrized(BoxParam(0.0)), std::invalid_argument);
}

TEST(certificates, tail_properties_on_grid) {
    for (double p : p_grid()) {
        BoxParam b(p);
        for (int n : {2, 3}) {
            TailBlock t = cert_tail(n, b);
            EXPECT_NEAR(t.value, 1 - cutoff_x(n, b), 1e-12) << "n=" << n << " p=" << p;
            EXPECT_TRUE(is_psd(t.w, 1e-9));
        }
        // Third-largest eigenvalue vanishes. At p = 1/2 the two branch forms
        // coincide and the rank drops to 1.
        std::vector<double> eig = hermitian_eigen(cert_tail(2, b).w).eigenvalues;
        EXPECT_LE(eig[eig.size() - 3], 1e-9) << "p=" << p;
        EXPECT_EQ(numerical_rank(cert_tail(2, b).w), p == 0.5 ? 1u : 2u) << "p=" << p;
        ComplexMatrix five = tail_n3_symmetrized(b);
        EXPECT_TRUE(is_psd(five, 1e-9));
        EXPECT_LE(numerical_rank(five), 3u);
        EXPECT_LE(numerical_rank(cert_tail(3, b).w), 3u);
        // The reduced matrix keeps the first row entry of the 5x5 form.
        EXPECT_NEAR(five(0, 0).real(), cert_tail(3, b).value, 1e-15);
    }
}

TEST(certificates, symmetrized_column_relations) {
    for (double p : {0.1, 0.3, 0.45}) {
        ComplexMatrix m = tail_n3_symmetrized(BoxParam(p));
        for (std::size_t i = 0; i < 5; i++) {
            EXPECT_NEAR(m(i, 0).real(), 3 * m(i, 2).real() + m(i, 4).real(), 1e-14);
            EXPECT_NEAR(m(i, 1).real(), -3 * m(i, 3).real(), 1e-14);
        }
    }
    for (double p : {0.55, 0.7, 0.9}) {
        ComplexMatrix m = tail_n3_symmetrized(BoxParam(p));
        for (std::size_t i = 0; i < 5; i++) {
            EXPECT_NEAR(m(i, 1).real(), -2 * m(i, 2).real() - m(i, 3).real(), 1e-14);
        }
    }
}

TEST(certificates, n2_assembly) {
    for (double p : p_grid()) {
        BoxParam b(p);
        DualCertificate c = assemble_n2(b);
        ASSERT_EQ(c.k.rows(), 7u);
        EXPECT_EQ(c.tau.size(), 3u);
        EXPECT_NEAR(c.dual_value(), protocol_p_value_closed(2, b), 1e-12);
        EXPECT_GE(min_eigenvalue(c.k), -1e-9);
    }
    EXPECT_NEAR(assemble_n2(BoxParam(1.0)).dual_value(), 4.0, 1e-12);
}

TEST(certificates, verify_examples) {
    VerificationReport r3 = verify_optimality(3, BoxParam(0.25));
    double l = 0.125;
    double expected = (3 + l) * std::sqrt((3 + l) / (4 * (1 + l))) + 0.5 * (1 - l);
    EXPECT_NEAR(r3.dual_value, expected, 1e-12);
    EXPECT_LE(std::abs(r3.gap), 1e-9);
    EXPECT_TRUE(r3.pass);

    VerificationReport r2 = verify_optimality(2, BoxParam(0.6));
    EXPECT_NEAR(r2.dual_value, std::sqrt(std::pow(1.4, 3) / 0.4) + 0.6, 1e-12);
    EXPECT_TRUE(r2.pass);

    VerificationReport r75 = verify_optimality(2, BoxParam(0.75));
    EXPECT_NEAR(r75.dual_value, 3.5, 1e-12);
    EXPECT_EQ(r75.range_branch, "2/3<=p<1");
    EXPECT_TRUE(r75.pass);
}

TEST(certificates, verify_full_grid) {
    for (int n = 1; n <= 3; n++) {
        for (double p : p_grid()) {
            VerificationReport r = verify_optimality(n, BoxParam(p));
            EXPECT_TRUE(r.pass) << "n=" << n << " p=" << p << " " << report_to_json(r);
            EXPECT_FALSE(r.boundary);
        }
    }
}

TEST(certificates, verify_reports_instead_of_throwing) {
    VerificationReport four = verify_optimality(4, BoxParam(0.3));
    EXPECT_FALSE(four.pass);
    EXPECT_FALSE(four.note.empty());
    VerificationReport zero = verify_optimality(2, BoxParam(0.0));
    EXPECT_FALSE(zero.pass);
    VerificationReport one = verify_optimality(3, BoxParam(1.0));
    EXPECT_TRUE(one.boundary);
    EXPECT_TRUE(one.pass);
    EXPECT_EQ(one.range_branch, "p=1");
    EXPECT_FALSE(verify_optimality(1, BoxParam(1.0)).boundary);
}

TEST(certificates, horn_on_tails) {
    EXPECT_TRUE(horn_verify_tail_n3(BoxParam(0.3)));
    EXPECT_TRUE(horn_verify_tail_n3(BoxParam(0.7)));
    HornCheck c = horn_check(tail_n3_symmetrized(BoxParam(0.3)));
    EXPECT_TRUE(c.horn);
    EXPECT_TRUE(c.agree());
    // Rank 3 in dimension 5: two vanishing trailing coefficients.
    EXPECT_EQ(c.trailing_zeros, 2u);
    for (double p : p_grid()) {
        if (p >= 1.0) {
            continue;
        }
        EXPECT_TRUE(horn_verify_tail_n3(BoxParam(p))) << "p=" << p;
        EXPECT_TRUE(horn_check(tail_n3_symmetrized(BoxParam(p))).agree()) << "p=" << p;
    }
}

TEST(certificates, report_json_schema) {
    nlohmann::json one = nlohmann::json::parse(report_to_json(verify_optimality(1, BoxParam(0.5))));
    EXPECT_EQ(one["n"], 1);
    EXPECT_TRUE(one.contains("min_eig_K"));
    EXPECT_FALSE(one.contains("min_eig_head"));
    EXPECT_EQ(one["pass"], true);
    nlohmann::json three = nlohmann::json::parse(report_to_json(verify_optimality(3, BoxParam(0.5))));
    for (const char *key : {"p", "range_branch", "min_eig_head", "min_eig_tail", "dual_value", "primal_value", "gap"}) {
        EXPECT_TRUE(three.contains(key)) << key;
    }
    EXPECT_EQ(three["dual_value"], 3.098076211);
}
