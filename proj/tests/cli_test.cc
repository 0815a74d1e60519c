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

#include "commands.h"

#include <gtest/gtest.h>

#include <sstream>

#include "json.hpp"
#include "qnlb/json_format.h"

using namespace qnlb;
using namespace qnlb::cli;

TEST(json_format, significant_digits) {
    EXPECT_EQ(format_number(3.0980762113533), "3.098076211");
    EXPECT_EQ(format_number(0.05), "0.05");
    EXPECT_EQ(format_number(4.0), "4");
    EXPECT_EQ(format_number(-0.0), "0");
    EXPECT_EQ(format_number(1.5e-17), "1.5e-17");
    EXPECT_EQ(round_significant(2.9952337681970), 2.995233768);
}

TEST(cli, value_examples) {
    auto v = nlohmann::json::parse(value_record("qnlb", "protocolP", 0.5, 1));
    EXPECT_EQ(v["value"], 3.098076211);
    EXPECT_EQ(v["branch"], "1/2<=p<2/3");
    auto parity = nlohmann::json::parse(value_record("nlb", "parity", 0.7, 5));
    EXPECT_EQ(parity["value"], 3.4);
    auto one = nlohmann::json::parse(value_record("qnlb", "protocolP", 1.0, 2));
    EXPECT_EQ(one["value"], 4.0);
    EXPECT_EQ(one["branch"], "2/3<=p<=1");
    for (const char *key : {"model", "protocol", "p", "n", "value", "branch"}) {
        EXPECT_TRUE(v.contains(key));
    }
}

TEST(cli, value_usage_errors) {
    EXPECT_THROW(value_record("qnlb", "protocolP", 1.5, 1), UsageError);
    EXPECT_THROW(value_record("qnlb", "protocolP", 0.0, 1), UsageError);
    EXPECT_THROW(value_record("qnlb", "protocolP", 0.5, 0), UsageError);
    EXPECT_THROW(value_record("nlb", "protocolP", 0.5, 1), UsageError);
    EXPECT_THROW(value_record("pr", "parity", 0.5, 1), UsageError);
    EXPECT_NO_THROW(value_record("nlb", "parity", 0.0, 1));
}

TEST(cli, tables) {
    std::string text = tables_text();
    EXPECT_NE(text.find("3.098076211"), std::string::npos);
    EXPECT_NE(text.find("3-(q-p)^n"), std::string::npos);
    EXPECT_NE(text.find("no for n<=3"), std::string::npos);
    EXPECT_NE(text.find("2.828427125"), std::string::npos);
    auto doc = nlohmann::json::parse(tables_json());
    EXPECT_EQ(doc["nlb"].size(), 3u);
    EXPECT_EQ(doc["qnlb"].size(), 6u);
    EXPECT_EQ(doc["qnlb"][1]["asymptotic_value"], 3.098076211);
    EXPECT_EQ(doc["nlb"][1]["formula"], "3-(q-p)^n");
    EXPECT_EQ(doc["qnlb"][4]["distill"], "no for n<=3");
    EXPECT_EQ(doc["qnlb"][4]["formula"], "2(1+p)");
}

TEST(cli, curve) {
    std::vector<CurvePoint> pts = curve_points(3, 20);
    ASSERT_EQ(pts.size(), 20u);
    EXPECT_EQ(pts.front().p, 0.05);
    EXPECT_EQ(pts.back().p, 1.0);
    for (const auto &pt : pts) {
        EXPECT_GE(pt.qnlb_value, pt.nlb_value - 1e-12);
        if (pt.p >= 2.0 / 3.0) {
            EXPECT_NEAR(pt.qnlb_value, 2 * (1 + pt.p), 1e-12);
            EXPECT_NEAR(pt.nlb_value, 2 * (1 + pt.p), 1e-12);
        }
    }
    EXPECT_NEAR(pts[4].qnlb_value, 3.0416666667, 1e-9);
    EXPECT_NEAR(pts[4].nlb_value, 2.875, 1e-12);

    std::string csv = curve_csv(pts);
    EXPECT_EQ(csv.rfind("p,n,qnlb_value,nlb_value\n", 0), 0u);
    EXPECT_NE(csv.find("\n0.25,3,3.041666667,2.875\n"), std::string::npos);
    EXPECT_EQ(csv, curve_csv(curve_points(3, 20)));
    EXPECT_EQ(csv.find('\r'), std::string::npos);
    EXPECT_THROW(curve_points(3, 1), UsageError);
}

TEST(cli, certify) {
    std::ostringstream out;
    EXPECT_EQ(certify(2, {0.6}, out), kExitOk);
    auto r = nlohmann::json::parse(out.str());
    EXPECT_EQ(r["pass"], true);
    EXPECT_LE(std::abs(r["gap"].get<double>()), 1e-9);

    for (int n = 1; n <= 3; n++) {
        std::ostringstream grid_out;
        EXPECT_EQ(certify(n, open_grid(20), grid_out), kExitOk);
        std::istringstream lines(grid_out.str());
        std::string line;
        int count = 0;
        while (std::getline(lines, line)) {
            EXPECT_EQ(nlohmann::json::parse(line)["pass"], true) << line;
            count++;
        }
        EXPECT_EQ(count, 20);
    }
    std::ostringstream ignored;
    EXPECT_THROW(certify(4, {0.5}, ignored), UsageError);
    EXPECT_THROW(certify(2, {0.0}, ignored), UsageError);
}

TEST(cli, solve_and_program) {
    bool converged = false;
    SolveRequest req;
    req.n = 1;
    req.p = 0.9;
    auto doc = nlohmann::json::parse(solve(req, &converged));
    EXPECT_TRUE(converged);
    EXPECT_NEAR(doc["value"].get<double>(), 3.8, 1e-4);

    auto prog = nlohmann::json::parse(program_json(2, 0.25));
    EXPECT_EQ(prog["dimension"], 7);
    EXPECT_THROW(program_json(6, 0.25), UsageError);
    req.tol = 0;
    EXPECT_THROW(solve(req, &converged), UsageError);
    req.tol = 1e-5;
    req.program_path = "/nonexistent/program.json";
    EXPECT_THROW(solve(req, &converged), UsageError);
}
