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

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "qnlb/boxes.h"
#include "qnlb/certificates.h"
#include "qnlb/json_format.h"
#include "qnlb/protocols.h"
#include "qnlb/sdp.h"
#include "qnlb/solver.h"

namespace qnlb::cli {

namespace {

using ordered_json = nlohmann::ordered_json;

constexpr int kMaxClosedFormCopies = 1 << 20;

BoxParam parse_param(double p) {
    if (!(p >= 0.0 && p <= 1.0)) {
        std::ostringstream msg;
        msg << "--p must lie in [0, 1], got " << p;
        throw UsageError(msg.str());
    }
    return BoxParam(p);
}

void require_copies(int n, int max_copies) {
    if (n < 1 || n > max_copies) {
        std::ostringstream msg;
        msg << "--n must lie in [1, " << max_copies << "], got " << n;
        throw UsageError(msg.str());
    }
}

struct SpotValue {
    double p;
    int n;
    double value;
};

struct TableRow {
    std::string range;
    std::string distill;
    std::string formula;
    std::vector<SpotValue> spots;
    std::optional<double> asymptote;
};

std::vector<TableRow> nlb_rows() {
    std::vector<TableRow> rows;
    rows.push_back({"p=0", "no", "2", {{0.0, 1, parity_value_closed(1, BoxParam(0.0))}}, std::nullopt});
    TableRow mid{"0<p<1/2", "yes", "3-(q-p)^n", {}, 3.0};
    for (int n = 1; n <= 3; n++) {
        mid.spots.push_back({0.25, n, parity_value_closed(n, BoxParam(0.25))});
    }
    rows.push_back(mid);
    rows.push_back({"1/2<=p<=1",
                    "no",
                    "2(1+p)",
                    {{0.75, 1, parity_value_closed(1, BoxParam(0.75))}, {1.0, 1, parity_value_closed(1, BoxParam(1.0))}},
                    std::nullopt});
    return rows;
}

std::vector<TableRow> qnlb_rows() {
    auto spots = [](double p, std::initializer_list<int> ns) {
        std::vector<SpotValue> out;
        for (int n : ns) {
            out.push_back({p, n, protocol_p_value_closed(n, BoxParam(p))});
        }
        return out;
    };
    std::vector<TableRow> rows;
    rows.push_back({"p=0", "no", "2", {}, std::nullopt});
    rows.push_back({"0<p<1/2", "yes", "(3+(q-p)^n)cos(phi)+(1-(q-p)^n)/2", spots(0.25, {1, 2, 3}),
                    asymptotic_values(BoxParam(0.25)).qnlb_limit});
    rows.push_back({"p=1/2", "no for n<=3", "(3sqrt(3)+1)/2", spots(0.5, {1, 2, 3}), std::nullopt});
    rows.push_back({"1/2<p<2/3", "no for n<=3", "3cos(phi)-q*cos(3phi)+p", spots(0.6, {1, 2, 3}), std::nullopt});
    rows.push_back({"2/3<=p<1", "no for n<=3", "2(1+p)", spots(0.8, {1, 2, 3}), std::nullopt});
    rows.push_back({"p=1", "no", "4", spots(1.0, {1, 2, 3}), std::nullopt});
    return rows;
}

std::vector<std::string> table_notes() {
    return {
        "qNLB p=0: the table lists value 2, but the p->0+ limit of the protocol value is 2*sqrt(2) = " +
            format_number(2.0 * std::sqrt(2.0)) + "; p=0 is outside the protocol's range and is rejected by 'value'.",
        "qNLB 1/2<=p<1: 'no' is certified for n<=3 only; larger n is open.",
    };
}

ordered_json rows_json(const std::vector<TableRow> &rows) {
    ordered_json out = ordered_json::array();
    for (const auto &row : rows) {
        ordered_json r;
        r["range"] = row.range;
        r["distill"] = row.distill;
        r["formula"] = row.formula;
        ordered_json spots = ordered_json::array();
        for (const auto &s : row.spots) {
            spots.push_back({{"p", round_significant(s.p)}, {"n", s.n}, {"value", round_significant(s.value)}});
        }
        r["spot_values"] = std::move(spots);
        if (row.asymptote) {
            r["asymptotic_value"] = round_significant(*row.asymptote);
        }
        out.push_back(std::move(r));
    }
    return out;
}

void render_rows(std::ostringstream &out, const std::string &title, const std::vector<TableRow> &rows) {
    out << title << "\n";
    char line[256];
    std::snprintf(line, sizeof(line), "  %-11s %-13s %s\n", "range", "distill?", "value");
    out << line;
    for (const auto &row : rows) {
        std::snprintf(line, sizeof(line), "  %-11s %-13s %s\n", row.range.c_str(), row.distill.c_str(),
                      row.formula.c_str());
        out << line;
        for (const auto &s : row.spots) {
            out << "      p=" << format_number(s.p) << " n=" << s.n << ": " << format_number(s.value) << "\n";
        }
        if (row.asymptote) {
            out << "      n->infinity: " << format_number(*row.asymptote) << "\n";
        }
    }
}

}  // namespace

std::vector<double> open_grid(int grid) {
    if (grid < 2) {
        throw UsageError("--grid must be at least 2");
    }
    std::vector<double> ps;
    for (int i = 1; i <= grid; i++) {
        ps.push_back(static_cast<double>(i) / grid);
    }
    return ps;
}

std::string value_record(const std::string &model, const std::string &protocol, double p, int n) {
    if (model != "nlb" && model != "qnlb") {
        throw UsageError("--model must be 'nlb' or 'qnlb'");
    }
    if (protocol != "parity" && protocol != "protocolP") {
        throw UsageError("--protocol must be 'parity' or 'protocolP'");
    }
    if (model == "nlb" && protocol == "protocolP") {
        throw UsageError("protocolP measures quantum outputs; use --model qnlb");
    }
    BoxParam param = parse_param(p);
    require_copies(n, kMaxClosedFormCopies);

    double value = 0.0;
    std::string branch;
    if (protocol == "protocolP") {
        if (param.p() <= 0.0) {
            throw UsageError("protocolP is defined for 0 < p <= 1 (p = 0 is excluded)");
        }
        value = protocol_p_value_closed(n, param);
        branch = std::string(branch_label(protocol_branch(param)));
    } else {
        // Measuring a qNLB in the computational basis yields the correlated
        // NLB, so the parity protocol has the same value on both models.
        value = parity_value_closed(n, param);
        if (param.p() <= 0.0) {
            branch = "p=0";
        } else {
            branch = param.p() < 0.5 ? "0<p<1/2" : "1/2<=p<=1";
        }
    }
    ordered_json doc;
    doc["model"] = model;
    doc["protocol"] = protocol;
    doc["p"] = round_significant(p);
    doc["n"] = n;
    doc["value"] = round_significant(value);
    doc["branch"] = branch;
    return doc.dump();
}

std::string tables_text() {
    std::ostringstream out;
    render_rows(out, "Correlated NLBs, parity protocol", nlb_rows());
    out << "\n";
    render_rows(out, "Correlated qNLBs, Protocol P", qnlb_rows());
    out << "\nNotes:\n";
    for (const auto &note : table_notes()) {
        out << "  - " << note << "\n";
    }
    return out.str();
}

std::string tables_json() {
    ordered_json doc;
    doc["nlb"] = rows_json(nlb_rows());
    doc["qnlb"] = rows_json(qnlb_rows());
    doc["p0_limit_qnlb"] = round_significant(2.0 * std::sqrt(2.0));
    doc["notes"] = table_notes();
    return doc.dump(2);
}

std::vector<CurvePoint> curve_points(int n, int grid) {
    require_copies(n, kMaxClosedFormCopies);
    std::vector<CurvePoint> points;
    for (double p : open_grid(grid)) {
        BoxParam param(p);
        points.push_back({p, n, protocol_p_value_closed(n, param), parity_value_closed(n, param)});
    }
    return points;
}

std::string curve_csv(const std::vector<CurvePoint> &points) {
    std::string out = "p,n,qnlb_value,nlb_value\n";
    for (const auto &pt : points) {
        out += format_number(pt.p) + "," + std::to_string(pt.n) + "," + format_number(pt.qnlb_value) + "," +
               format_number(pt.nlb_value) + "\n";
    }
    return out;
}

int certify(int n, const std::vector<double> &ps, std::ostream &out) {
    if (n < 1 || n > kMaxCertifiedCopies) {
        std::ostringstream msg;
        msg << "unsupported n = " << n << ": explicit optimality certificates exist for n = 1, 2, 3 only";
        throw UsageError(msg.str());
    }
    for (double p : ps) {
        BoxParam param = parse_param(p);
        if (param.p() <= 0.0) {
            throw UsageError("--p must lie in (0, 1] for certify");
        }
    }
    bool all_pass = true;
    for (double p : ps) {
        VerificationReport report = verify_optimality(n, BoxParam(p));
        all_pass = all_pass && report.pass;
        out << report_to_json(report) << "\n";
    }
    return all_pass ? kExitOk : kExitFailure;
}

std::string solve(const SolveRequest &request, bool *converged) {
    if (!(request.tol > 0.0)) {
        throw UsageError("--tol must be positive");
    }
    std::optional<GramProgram> program;
    if (request.program_path) {
        std::ifstream in(*request.program_path);
        if (!in) {
            throw UsageError("cannot read program file " + *request.program_path);
        }
        std::stringstream buf;
        buf << in.rdbuf();
        try {
            program = program_from_json(buf.str());
        } catch (const std::exception &e) {
            throw UsageError(e.what());
        }
    } else {
        require_copies(request.n, kMaxProgramCopies);
        program = build_program(request.n, parse_param(request.p));
    }

    SolveSettings settings;
    settings.objective_tolerance = request.tol;
    settings.feasibility_tolerance = std::min(settings.feasibility_tolerance, request.tol / 10);
    settings.max_iterations = request.max_iterations;
    settings.seed = request.seed;
    std::optional<ComplexMatrix> start;
    if (request.warm) {
        if (program->copies() > 3 || program->param().p() <= 0.0) {
            throw UsageError("--warm needs n <= 3 and p > 0");
        }
        start = warm_start_from_protocol(*program, program->param());
    }
    SolveResult result = solve_primal(*program, settings, start);
    if (converged) {
        *converged = result.converged;
    }
    return result_to_json(*program, result);
}

std::string program_json(int n, double p) {
    require_copies(n, kMaxProgramCopies);
    return program_to_json(build_program(n, parse_param(p)));
}

}  // namespace qnlb::cli
