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

#include "qnlb/boxes.h"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace qnlb {

BoxParam::BoxParam(double p) : p_(p) {
    if (!(p >= 0.0 && p <= 1.0)) {
        std::ostringstream msg;
        msg << "box parameter p must lie in [0, 1], got " << p;
        throw std::invalid_argument(msg.str());
    }
}

bool is_normalized(const JointDistribution &dist, double tol) {
    for (const auto &row : dist.prob) {
        double total = 0.0;
        for (double v : row) {
            if (v < -tol) {
                return false;
            }
            total += v;
        }
        if (std::abs(total - 1.0) > tol) {
            return false;
        }
    }
    return true;
}

bool is_non_signalling(const JointDistribution &dist, double tol) {
    for (int a = 0; a < 2; a++) {
        for (int x = 0; x < 2; x++) {
            double m0 = dist(x, 0, a, 0) + dist(x, 0, a, 1);
            double m1 = dist(x, 1, a, 0) + dist(x, 1, a, 1);
            if (std::abs(m0 - m1) > tol) {
                return false;
            }
        }
    }
    for (int b = 0; b < 2; b++) {
        for (int y = 0; y < 2; y++) {
            double m0 = dist(0, y, 0, b) + dist(0, y, 1, b);
            double m1 = dist(1, y, 0, b) + dist(1, y, 1, b);
            if (std::abs(m0 - m1) > tol) {
                return false;
            }
        }
    }
    return true;
}

JointDistribution correlated_nlb(BoxParam param) {
    JointDistribution dist;
    for (int x = 0; x < 2; x++) {
        for (int y = 0; y < 2; y++) {
            if (x == 1 && y == 1) {
                dist(x, y, 0, 1) = param.p() / 2;
                dist(x, y, 1, 0) = param.p() / 2;
                dist(x, y, 0, 0) = param.q() / 2;
                dist(x, y, 1, 1) = param.q() / 2;
            } else {
                dist(x, y, 0, 0) = 0.5;
                dist(x, y, 1, 1) = 0.5;
            }
        }
    }
    return dist;
}

double box_value(const JointDistribution &dist) {
    double value = 0.0;
    for (int x = 0; x < 2; x++) {
        for (int y = 0; y < 2; y++) {
            for (int a = 0; a < 2; a++) {
                for (int b = 0; b < 2; b++) {
                    bool correct = (a ^ b) == (x & y);
                    value += correct ? dist(x, y, a, b) : -dist(x, y, a, b);
                }
            }
        }
    }
    return value;
}

ComplexMatrix bell_psi() {
    double h = 1.0 / std::sqrt(2.0);
    Complex v[4] = {h, 0.0, 0.0, h};
    return ComplexMatrix::column(v);
}

ComplexMatrix bell_phi() {
    double h = 1.0 / std::sqrt(2.0);
    Complex v[4] = {0.0, h, h, 0.0};
    return ComplexMatrix::column(v);
}

ComplexMatrix rho(BoxParam param) {
    ComplexMatrix psi = bell_psi();
    ComplexMatrix phi = bell_phi();
    return (phi * phi.adjoint()) * Complex{param.p(), 0.0} + (psi * psi.adjoint()) * Complex{param.q(), 0.0};
}

QuantumBoxOutput correlated_qnlb(BoxParam param) {
    ComplexMatrix psi = bell_psi();
    ComplexMatrix pure = psi * psi.adjoint();
    return QuantumBoxOutput{{pure, pure, pure, rho(param)}};
}

ComplexMatrix partial_trace_first(const ComplexMatrix &state) {
    if (state.rows() != 4 || state.cols() != 4) {
        throw std::invalid_argument("partial_trace_first: expected a 4x4 two-qubit state");
    }
    ComplexMatrix out(2, 2);
    for (int b = 0; b < 2; b++) {
        for (int bp = 0; bp < 2; bp++) {
            for (int a = 0; a < 2; a++) {
                out(b, bp) += state(2 * a + b, 2 * a + bp);
            }
        }
    }
    return out;
}

ComplexMatrix partial_trace_second(const ComplexMatrix &state) {
    if (state.rows() != 4 || state.cols() != 4) {
        throw std::invalid_argument("partial_trace_second: expected a 4x4 two-qubit state");
    }
    ComplexMatrix out(2, 2);
    for (int a = 0; a < 2; a++) {
        for (int ap = 0; ap < 2; ap++) {
            for (int b = 0; b < 2; b++) {
                out(a, ap) += state(2 * a + b, 2 * ap + b);
            }
        }
    }
    return out;
}

bool is_density_matrix(const ComplexMatrix &state, double tol) {
    if (!state.is_square() || !state.is_hermitian(tol)) {
        return false;
    }
    if (std::abs(state.trace() - Complex{1.0, 0.0}) > tol) {
        return false;
    }
    return is_psd(state, kPsdTolerance);
}

bool is_non_signalling(const QuantumBoxOutput &out, double tol) {
    for (int x = 0; x < 2; x++) {
        // Alice's reduced state must not depend on Bob's input y.
        if (max_abs_diff(partial_trace_second(out(x, 0)), partial_trace_second(out(x, 1))) > tol) {
            return false;
        }
    }
    for (int y = 0; y < 2; y++) {
        if (max_abs_diff(partial_trace_first(out(0, y)), partial_trace_first(out(1, y))) > tol) {
            return false;
        }
    }
    return true;
}

JointDistribution measure_computational(const QuantumBoxOutput &out) {
    JointDistribution dist;
    for (int x = 0; x < 2; x++) {
        for (int y = 0; y < 2; y++) {
            for (int k = 0; k < 4; k++) {
                dist.prob[2 * x + y][k] = out(x, y)(k, k).real();
            }
        }
    }
    return dist;
}

}  // namespace qnlb
