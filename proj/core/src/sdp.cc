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

#include <bit>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "qnlb/protocols.h"

namespace qnlb {

namespace {

constexpr std::string_view kProgramFormat = "qnlb-gram-program";
constexpr int kProgramVersion = 1;

std::string bit_string(std::uint32_t s, int width) {
    std::string out(static_cast<std::size_t>(width), '0');
    for (int k = 0; k < width; k++) {
        if ((s >> (width - 1 - k)) & 1) {
            out[static_cast<std::size_t>(k)] = '1';
        }
    }
    return out;
}

}  // namespace

IndexMap::IndexMap(int copies) : copies_(copies) {
    if (copies < 1 || copies > 16) {
        throw std::out_of_range("IndexMap: copy count must lie in [1, 16]");
    }
}

std::string IndexMap::label(std::size_t index) const {
    switch (index) {
        case kX0:
            return "x0";
        case kX1:
            return "x1";
        case kY0:
            return "y0";
        default:
            break;
    }
    if (index >= dimension()) {
        throw std::out_of_range("IndexMap::label: index out of range");
    }
    return "z_" + bit_string(static_cast<std::uint32_t>(index - 3), copies_);
}

GramProgram::GramProgram(int copies, BoxParam param, ComplexMatrix weights, std::vector<XorClass> classes)
    : index_(copies), param_(param), weights_(std::move(weights)), classes_(std::move(classes)) {
    std::size_t n = index_.dimension();
    if (weights_.rows() != n || weights_.cols() != n) {
        std::ostringstream msg;
        msg << "GramProgram: weight matrix must be " << n << "x" << n;
        throw std::invalid_argument(msg.str());
    }
    if (!weights_.is_hermitian(1e-12) || !weights_.is_real(1e-12)) {
        throw std::invalid_argument("GramProgram: weight matrix must be real symmetric");
    }
    for (const auto &cls : classes_) {
        if (cls.pairs.empty()) {
            throw std::invalid_argument("GramProgram: empty XOR class");
        }
        for (const auto &pair : cls.pairs) {
            if (pair.row >= n || pair.col >= n || pair.row == pair.col) {
                throw std::invalid_argument("GramProgram: XOR class pair out of range or on the diagonal");
            }
        }
        for (std::size_t k = 1; k < cls.pairs.size(); k++) {
            constraints_.push_back({cls.pairs.front(), cls.pairs[k]});
        }
    }
}

std::size_t GramProgram::constraint_count() const {
    return constraints_.size();
}

ComplexMatrix GramProgram::constraint_matrix(std::size_t k) const {
    if (k >= constraints_.size()) {
        throw std::out_of_range("constraint_matrix: index out of range");
    }
    const auto &c = constraints_[k];
    ComplexMatrix h(dimension(), dimension());
    h(c.representative.row, c.representative.col) = 1.0;
    h(c.representative.col, c.representative.row) = 1.0;
    h(c.other.row, c.other.col) = -1.0;
    h(c.other.col, c.other.row) = -1.0;
    return h;
}

GramProgram build_program(int copies, BoxParam param) {
    if (copies < 1 || copies > kMaxProgramCopies) {
        std::ostringstream msg;
        msg << "build_program: copy count must lie in [1, " << kMaxProgramCopies << "], got " << copies;
        throw std::out_of_range(msg.str());
    }
    IndexMap index(copies);
    std::size_t n = index.dimension();
    std::uint32_t strings = std::uint32_t{1} << copies;

    ComplexMatrix w(n, n);
    auto set = [&w](std::size_t i, std::size_t j, double v) {
        w(i, j) = v;
        w(j, i) = v;
    };
    set(IndexMap::kX0, IndexMap::kY0, 1.0);
    set(IndexMap::kX0, index.z(0), 1.0);
    set(IndexMap::kX1, IndexMap::kY0, 1.0);
    for (std::uint32_t s = 0; s < strings; s++) {
        int weight = std::popcount(s);
        double mass = std::pow(param.q(), copies - weight) * std::pow(param.p(), weight);
        set(IndexMap::kX1, index.z(s), -mass);
    }

    std::vector<XorClass> classes;
    for (std::uint32_t d = 1; d < strings; d++) {
        XorClass cls{d, {}};
        for (std::uint32_t s = 0; s < strings; s++) {
            if (s < (s ^ d)) {
                cls.pairs.push_back({index.z(s), index.z(s ^ d)});
            }
        }
        classes.push_back(std::move(cls));
    }
    return GramProgram(copies, param, std::move(w), std::move(classes));
}

ComplexMatrix gram_from_protocol(int copies, BoxParam param) {
    if (copies < 1 || copies > kMaxGramCopies) {
        std::ostringstream msg;
        msg << "gram_from_protocol: copy count must lie in [1, " << kMaxGramCopies << "], got " << copies;
        throw std::out_of_range(msg.str());
    }
    IndexMap index(copies);
    std::size_t side = std::size_t{1} << copies;
    ComplexMatrix eye = ComplexMatrix::identity(side);
    ComplexMatrix psi = bell_psi_power(copies);

    ComplexMatrix a0 = observable({Party::kAlice, 0, copies, param});
    ComplexMatrix a1 = observable({Party::kAlice, 1, copies, param});
    ComplexMatrix b0 = observable({Party::kBob, 0, copies, param});
    ComplexMatrix b1 = observable({Party::kBob, 1, copies, param});

    std::vector<ComplexMatrix> vectors;
    vectors.reserve(index.dimension());
    vectors.push_back(kron(a0, eye) * psi);
    vectors.push_back(kron(a1, eye) * psi);
    vectors.push_back(kron(eye, b0) * psi);
    for (std::uint32_t s = 0; s < side; s++) {
        ComplexMatrix flip = ComplexMatrix::identity(1);
        for (int k = 0; k < copies; k++) {
            bool bit = (s >> (copies - 1 - k)) & 1;
            flip = kron(flip, bit ? pauli_x() : ComplexMatrix::identity(2));
        }
        vectors.push_back(kron(eye, flip * b1 * flip) * psi);
    }

    std::size_t n = vectors.size();
    ComplexMatrix gram(n, n);
    for (std::size_t i = 0; i < n; i++) {
        for (std::size_t j = i; j < n; j++) {
            double g = inner(vectors[i], vectors[j]).real();
            gram(i, j) = g;
            gram(j, i) = g;
        }
    }
    return gram;
}

double primal_objective(const ComplexMatrix &gram, const ComplexMatrix &weights) {
    if (!gram.is_square() || gram.rows() != weights.rows() || gram.cols() != weights.cols()) {
        throw std::invalid_argument("primal_objective: dimension mismatch");
    }
    return 0.5 * trace_of_product(gram, weights).real();
}

double affine_residual(const GramProgram &program, const ComplexMatrix &gram) {
    if (gram.rows() != program.dimension() || gram.cols() != program.dimension()) {
        throw std::invalid_argument("affine_residual: dimension mismatch");
    }
    double worst = 0.0;
    for (std::size_t i = 0; i < gram.rows(); i++) {
        worst = std::max(worst, std::abs(gram(i, i) - Complex{1.0, 0.0}));
    }
    for (const auto &c : program.constraints()) {
        double rep = gram(c.representative.row, c.representative.col).real();
        double other = gram(c.other.row, c.other.col).real();
        worst = std::max(worst, std::abs(rep - other));
    }
    return worst;
}

double DualCertificate::dual_value() const {
    double total = 0.0;
    for (double m : mu) {
        total += m;
    }
    return total;
}

DualCertificate assemble_dual(const GramProgram &program, std::span<const double> mu, std::span<const double> tau) {
    std::size_t n = program.dimension();
    if (mu.size() != n) {
        std::ostringstream msg;
        msg << "assemble_dual: expected " << n << " diagonal weights, got " << mu.size();
        throw std::invalid_argument(msg.str());
    }
    if (tau.size() != program.constraint_count()) {
        std::ostringstream msg;
        msg << "assemble_dual: expected " << program.constraint_count() << " constraint weights, got "
            << tau.size();
        throw std::invalid_argument(msg.str());
    }
    ComplexMatrix inner_part = ComplexMatrix::diagonal(mu);
    const auto &constraints = program.constraints();
    for (std::size_t k = 0; k < constraints.size(); k++) {
        const auto &c = constraints[k];
        inner_part(c.representative.row, c.representative.col) -= tau[k];
        inner_part(c.representative.col, c.representative.row) -= tau[k];
        inner_part(c.other.row, c.other.col) += tau[k];
        inner_part(c.other.col, c.other.row) += tau[k];
    }
    DualCertificate cert;
    cert.mu.assign(mu.begin(), mu.end());
    cert.tau.assign(tau.begin(), tau.end());
    cert.k = inner_part * Complex{2.0, 0.0} - program.weights();
    return cert;
}

std::string program_to_json(const GramProgram &program) {
    using nlohmann::json;
    const auto &index = program.index();
    std::size_t n = program.dimension();

    json labels = json::array();
    for (std::size_t i = 0; i < n; i++) {
        labels.push_back(index.label(i));
    }
    json weights = json::array();
    for (std::size_t i = 0; i < n; i++) {
        json row = json::array();
        for (std::size_t j = 0; j < n; j++) {
            row.push_back(program.weights()(i, j).real());
        }
        weights.push_back(std::move(row));
    }
    json classes = json::array();
    for (const auto &cls : program.xor_classes()) {
        json pairs = json::array();
        for (const auto &pair : cls.pairs) {
            pairs.push_back({pair.row + 1, pair.col + 1});
        }
        classes.push_back({{"xor", bit_string(cls.xor_value, program.copies())}, {"pairs", std::move(pairs)}});
    }
    json doc = {
        {"format", kProgramFormat},
        {"version", kProgramVersion},
        {"copies", program.copies()},
        {"p", program.param().p()},
        {"dimension", n},
        {"index_base", 1},
        {"objective", "maximize trace(G*W)/2 subject to G psd, G_ii = 1, equal G entries within each xor class"},
        {"labels", std::move(labels)},
        {"weights", std::move(weights)},
        {"xor_classes", std::move(classes)},
        {"constraint_count", program.constraint_count()},
        {"dual_variable_count", program.dual_variable_count()},
    };
    return doc.dump(2);
}

GramProgram program_from_json(std::string_view text) {
    using nlohmann::json;
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error &e) {
        throw std::invalid_argument(std::string("program_from_json: ") + e.what());
    }
    try {
        if (doc.at("format").get<std::string>() != kProgramFormat) {
            throw std::invalid_argument("program_from_json: unexpected format tag");
        }
        if (doc.at("version").get<int>() != kProgramVersion) {
            throw std::invalid_argument("program_from_json: unsupported version");
        }
        int copies = doc.at("copies").get<int>();
        BoxParam param(doc.at("p").get<double>());
        IndexMap index(copies);
        std::size_t n = index.dimension();
        int base = doc.value("index_base", 1);

        const auto &rows = doc.at("weights");
        if (rows.size() != n) {
            throw std::invalid_argument("program_from_json: weight matrix has the wrong row count");
        }
        ComplexMatrix w(n, n);
        for (std::size_t i = 0; i < n; i++) {
            if (rows[i].size() != n) {
                throw std::invalid_argument("program_from_json: weight matrix has a ragged row");
            }
            for (std::size_t j = 0; j < n; j++) {
                w(i, j) = rows[i][j].get<double>();
            }
        }
        std::vector<XorClass> classes;
        for (const auto &cls : doc.at("xor_classes")) {
            std::string bits = cls.at("xor").get<std::string>();
            XorClass parsed{static_cast<std::uint32_t>(std::stoul(bits, nullptr, 2)), {}};
            for (const auto &pair : cls.at("pairs")) {
                long row = pair.at(0).get<long>() - base;
                long col = pair.at(1).get<long>() - base;
                if (row < 0 || col < 0) {
                    throw std::invalid_argument("program_from_json: negative index");
                }
                parsed.pairs.push_back({static_cast<std::size_t>(row), static_cast<std::size_t>(col)});
            }
            classes.push_back(std::move(parsed));
        }
        return GramProgram(copies, param, std::move(w), std::move(classes));
    } catch (const json::exception &e) {
        throw std::invalid_argument(std::string("program_from_json: ") + e.what());
    }
}

}  // namespace qnlb
