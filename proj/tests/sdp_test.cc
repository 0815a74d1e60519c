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

#include "qnlb/sdp.h"

#include <gtest/gtest.h>

#include <bit>
#include <cmath>
#include <set>

#include "grid.h"
#include "json.hpp"
#include "qnlb/certificates.h"
#include "qnlb/protocols.h"

using namespace qnlb;
using qnlb::testing::p_grid;

TEST(sdp, index_map) {
    IndexMap m(3);
    EXPECT_EQ(m.dimension(), 11u);
    EXPECT_EQ(m.label(0), "x0");
    EXPECT_EQ(m.label(1), "x1");
    EXPECT_EQ(m.label(2), "y0");
    EXPECT_EQ(m.label(m.z(0)), "z_000");
    EXPECT_EQ(m.label(m.z(2)), "z_010");
    EXPECT_EQ(m.label(10), "z_111");
    EXPECT_THROW(m.label(11), std::out_of_range);
    std::set<std::string> labels;
    for (std::size_t i = 0; i < m.dimension(); i++) {
        labels.insert(m.label(i));
    }
    EXPECT_EQ(labels.size(), m.dimension());
}

TEST(sdp, n1_matches_printed_weights) {
    BoxParam b(0.3);
    double q = b.q();
    double p = b.p();
    ComplexMatrix expected = ComplexMatrix::from_real({
        {0, 0, 1, 1, 0},
        {0, 0, 1, -q, -p},
        {1, 1, 0, 0, 0},
        {1, -q, 0, 0, 0},
        {0, -p, 0, 0, 0},
    });
    GramProgram g = build_program(1, b);
    EXPECT_EQ(g.dimension(), 5u);
    EXPECT_EQ(g.constraint_count(), 0u);
    EXPECT_EQ(g.dual_variable_count(), 5u);
    EXPECT_LE(max_abs_diff(g.weights(), expected), 1e-15);
}

TEST(sdp, constraint_counts) {
    GramProgram two = build_program(2, BoxParam(0.3));
    EXPECT_EQ(two.dimension(), 7u);
    EXPECT_EQ(two.constraint_count(), 3u);
    EXPECT_EQ(two.dual_variable_count(), 10u);
    EXPECT_EQ(two.xor_classes().size(), 3u);
    GramProgram three = build_program(3, BoxParam(0.3));
    EXPECT_EQ(three.dimension(), 11u);
    EXPECT_EQ(three.constraint_count(), 21u);
    EXPECT_EQ(three.dual_variable_count(), 32u);
    EXPECT_EQ(three.xor_classes().size(), 7u);
    for (int n = 1; n <= kMaxProgramCopies; n++) {
        GramProgram g = build_program(n, BoxParam(0.4));
        std::size_t expected = ((std::size_t{1} << (n - 1)) - 1) * ((std::size_t{1} << n) - 1);
        EXPECT_EQ(g.constraint_count(), expected);
    }
    EXPECT_THROW(build_program(0, BoxParam(0.4)), std::out_of_range);
    EXPECT_THROW(build_program(6, BoxParam(0.4)), std::out_of_range);
}

TEST(sdp, weight_structure) {
    for (double p : p_grid()) {
        for (int n = 1; n <= kMaxProgramCopies; n++) {
            GramProgram g = build_program(n, BoxParam(p));
            const ComplexMatrix &w = g.weights();
            EXPECT_TRUE(w.is_hermitian(0.0));
            std::size_t nonzero_pairs = 0;
            for (std::size_t i = 0; i < w.rows(); i++) {
                EXPECT_EQ(w(i, i), Complex(0, 0));
                for (std::size_t j = i + 1; j < w.cols(); j++) {
                    nonzero_pairs += w(i, j) != Complex(0, 0);
                }
            }
            // p = 0 or 1 would zero some x1-z weights; the grid avoids both.
            EXPECT_EQ(nonzero_pairs, 3 + (std::size_t{1} << n));
            double x1_row = 0.0;
            for (std::size_t j = 0; j < w.cols(); j++) {
                x1_row += w(IndexMap::kX1, j).real();
            }
            EXPECT_NEAR(x1_row, 0.0, 1e-12);
        }
    }
}

TEST(sdp, xor_classes_partition_pairs) {
    GramProgram g = build_program(3, BoxParam(0.2));
    const IndexMap &m = g.index();
    std::set<std::pair<std::size_t, std::size_t>> seen;
    for (const auto &cls : g.xor_classes()) {
        ASSERT_EQ(cls.pairs.size(), 4u);
        EXPECT_EQ(cls.pairs.front(), (IndexPair{m.z(0), m.z(cls.xor_value)}));
        for (const auto &pair : cls.pairs) {
            std::uint32_t s = static_cast<std::uint32_t>(pair.row - 3);
            std::uint32_t t = static_cast<std::uint32_t>(pair.col - 3);
            EXPECT_EQ(s ^ t, cls.xor_value);
            EXPECT_LT(s, t);
            EXPECT_TRUE(seen.insert({pair.row, pair.col}).second);
        }
    }
    EXPECT_EQ(seen.size(), 28u);  // C(8, 2)
}

TEST(sdp, constraint_matrices) {
    GramProgram g = build_program(2, BoxParam(0.4));
    for (std::size_t k = 0; k < g.constraint_count(); k++) {
        ComplexMatrix h = g.constraint_matrix(k);
        const auto &c = g.constraints()[k];
        EXPECT_TRUE(h.is_hermitian(0.0));
        EXPECT_EQ(h(c.representative.row, c.representative.col), Complex(1, 0));
        EXPECT_EQ(h(c.other.col, c.other.row), Complex(-1, 0));
        EXPECT_EQ(h.trace(), Complex(0, 0));
    }
    EXPECT_THROW(g.constraint_matrix(3), std::out_of_range);
}

TEST(sdp, program_validation) {
    ComplexMatrix w = ComplexMatrix::from_real({{0, 1}, {0, 0}});
    EXPECT_THROW(GramProgram(1, BoxParam(0.5), w, {}), std::invalid_argument);
    ComplexMatrix asym(5, 5);
    asym(0, 1) = 1.0;
    EXPECT_THROW(GramProgram(1, BoxParam(0.5), asym, {}), std::invalid_argument);
    XorClass bad{1, {{3, 3}}};
    EXPECT_THROW(GramProgram(1, BoxParam(0.5), ComplexMatrix(5, 5), {bad}), std::invalid_argument);
}

TEST(sdp, gram_from_protocol_examples) {
    ComplexMatrix g1 = gram_from_protocol(1, BoxParam(0.3));
    for (std::size_t i = 0; i < g1.rows(); i++) {
        EXPECT_NEAR(g1(i, i).real(), 1.0, 1e-14);
    }
    ComplexMatrix g = gram_from_protocol(1, BoxParam(0.5));
    EXPECT_NEAR(g(IndexMap::kX0, IndexMap::kY0).real(), std::sqrt(3.0) / 2, 1e-14);

    GramProgram prog = build_program(2, BoxParam(0.25));
    EXPECT_LE(affine_residual(prog, gram_from_protocol(2, BoxParam(0.25))), 1e-14);
    EXPECT_THROW(gram_from_protocol(5, BoxParam(0.25)), std::out_of_range);
}

TEST(sdp, primal_objective_identity_and_feasibility) {
    GramProgram one = build_program(1, BoxParam(0.5));
    EXPECT_EQ(primal_objective(ComplexMatrix::identity(5), one.weights()), 0.0);
    for (double p : p_grid()) {
        for (int n = 1; n <= 3; n++) {
            BoxParam b(p);
            GramProgram prog = build_program(n, b);
            ComplexMatrix g = gram_from_protocol(n, b);
            EXPECT_NEAR(primal_objective(g, prog.weights()), protocol_p_value_closed(n, b), 1e-9);
            EXPECT_LE(affine_residual(prog, g), 1e-12);
            EXPECT_GE(min_eigenvalue(g), -1e-9);
        }
    }
    EXPECT_THROW(primal_objective(ComplexMatrix::identity(4), one.weights()), std::invalid_argument);
}

TEST(sdp, assemble_dual_examples) {
    BoxParam b(0.8);
    GramProgram one = build_program(1, b);
    std::vector<double> mu = {1, 0.8, 1, 0.4, 0.4};
    DualCertificate cert = assemble_dual(one, mu, {});
    EXPECT_NEAR(cert.dual_value(), 3.6, 1e-15);
    EXPECT_NEAR(0.5 * cert.k.trace().real(), cert.dual_value(), 1e-15);

    GramProgram three = build_program(3, BoxParam(0.3));
    std::vector<double> zeros_mu(three.dimension(), 0.0);
    std::vector<double> zeros_tau(three.constraint_count(), 0.0);
    DualCertificate zero = assemble_dual(three, zeros_mu, zeros_tau);
    EXPECT_LE(max_abs_diff(zero.k, three.weights() * Complex{-1, 0}), 0.0);
    EXPECT_EQ(zero.dual_value(), 0.0);

    BoxParam mid(0.6);
    double c = std::cos(phi_angle(mid, 1));
    std::vector<double> mu_mid = {c, c * 0.4 + 0.3, c, c * 0.4, 0.3};
    DualCertificate cert_mid = assemble_dual(build_program(1, mid), mu_mid, {});
    EXPECT_NEAR(cert_mid.dual_value(), 2 * 1.4 * c + 0.6, 1e-15);
    EXPECT_NEAR(cert_mid.dual_value(), 3.2191601707, 1e-10);

    EXPECT_THROW(assemble_dual(one, zeros_mu, {}), std::invalid_argument);
    EXPECT_THROW(assemble_dual(three, zeros_mu, mu), std::invalid_argument);
}

TEST(sdp, assemble_dual_matches_constraint_matrices) {
    GramProgram g = build_program(3, BoxParam(0.35));
    std::vector<double> mu(g.dimension());
    std::vector<double> tau(g.constraint_count());
    for (std::size_t i = 0; i < mu.size(); i++) {
        mu[i] = 0.1 * static_cast<double>(i) - 0.3;
    }
    for (std::size_t k = 0; k < tau.size(); k++) {
        tau[k] = std::sin(static_cast<double>(k));
    }
    ComplexMatrix inner = ComplexMatrix::diagonal(mu);
    for (std::size_t k = 0; k < tau.size(); k++) {
        inner -= g.constraint_matrix(k) * Complex{tau[k], 0};
    }
    ComplexMatrix expected = inner * Complex{2, 0} - g.weights();
    EXPECT_LE(max_abs_diff(assemble_dual(g, mu, tau).k, expected), 1e-12);
}

// Every PSD certificate bounds every feasible Gram matrix from above.
TEST(sdp, weak_duality) {
    for (double p : p_grid()) {
        BoxParam b(p);
        DualCertificate c1 = cert_n1(b);
        GramProgram one = build_program(1, b);
        EXPECT_GE(c1.dual_value(), primal_objective(gram_from_protocol(1, b), one.weights()) - 1e-9);
        DualCertificate c2 = assemble_n2(b);
        GramProgram two = build_program(2, b);
        EXPECT_GE(c2.dual_value(), primal_objective(gram_from_protocol(2, b), two.weights()) - 1e-9);
        // The identity Gram matrix is feasible too.
        EXPECT_GE(c2.dual_value(), primal_objective(ComplexMatrix::identity(7), two.weights()) - 1e-9);
    }
}

TEST(sdp, json_round_trip) {
    GramProgram g = build_program(3, BoxParam(0.3));
    std::string text = program_to_json(g);
    nlohmann::json doc = nlohmann::json::parse(text);
    EXPECT_EQ(doc["format"], "qnlb-gram-program");
    EXPECT_EQ(doc["index_base"], 1);
    EXPECT_EQ(doc["labels"][3], "z_000");
    EXPECT_EQ(doc["constraint_count"], 21);
    EXPECT_EQ(doc["xor_classes"][0]["xor"], "001");
    EXPECT_EQ(doc["xor_classes"][0]["pairs"][0][0], 4);

    GramProgram back = program_from_json(text);
    EXPECT_EQ(back.copies(), 3);
    EXPECT_EQ(back.param().p(), 0.3);
    EXPECT_EQ(back.weights(), g.weights());
    EXPECT_EQ(back.constraint_count(), g.constraint_count());
    ASSERT_EQ(back.xor_classes().size(), g.xor_classes().size());
    for (std::size_t k = 0; k < g.xor_classes().size(); k++) {
        EXPECT_EQ(back.xor_classes()[k].pairs, g.xor_classes()[k].pairs);
        EXPECT_EQ(back.xor_classes()[k].xor_value, g.xor_classes()[k].xor_value);
    }
}

TEST(sdp, json_rejects_malformed_input) {
    EXPECT_THROW(program_from_json("not json"), std::invalid_argument);
    EXPECT_THROW(program_from_json("{}"), std::invalid_argument);
    nlohmann::json doc = nlohmann::json::parse(program_to_json(build_program(1, BoxParam(0.5))));
    doc["weights"].erase(0);
    EXPECT_THROW(program_from_json(doc.dump()), std::invalid_argument);
    doc = nlohmann::json::parse(program_to_json(build_program(1, BoxParam(0.5))));
    doc["p"] = 1.5;
    EXPECT_THROW(program_from_json(doc.dump()), std::invalid_argument);
}
