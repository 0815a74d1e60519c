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

#include "qnlb/linalg.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace qnlb {

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, Complex{0.0, 0.0}) {
}

ComplexMatrix ComplexMatrix::zeros(std::size_t rows, std::size_t cols) {
    return ComplexMatrix(rows, cols);
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; i++) {
        m(i, i) = 1.0;
    }
    return m;
}

ComplexMatrix ComplexMatrix::from_real(std::initializer_list<std::initializer_list<double>> rows) {
    std::size_t n_rows = rows.size();
    std::size_t n_cols = n_rows == 0 ? 0 : rows.begin()->size();
    ComplexMatrix m(n_rows, n_cols);
    std::size_t i = 0;
    for (const auto &row : rows) {
        if (row.size() != n_cols) {
            throw std::invalid_argument("from_real: ragged rows");
        }
        std::size_t j = 0;
        for (double v : row) {
            m(i, j++) = v;
        }
        i++;
    }
    return m;
}

ComplexMatrix ComplexMatrix::from_rows(const std::vector<std::vector<Complex>> &rows) {
    std::size_t n_cols = rows.empty() ? 0 : rows.front().size();
    ComplexMatrix m(rows.size(), n_cols);
    for (std::size_t i = 0; i < rows.size(); i++) {
        if (rows[i].size() != n_cols) {
            throw std::invalid_argument("from_rows: ragged rows");
        }
        std::copy(rows[i].begin(), rows[i].end(), m.data_.begin() + i * n_cols);
    }
    return m;
}

ComplexMatrix ComplexMatrix::column(std::span<const Complex> entries) {
    ComplexMatrix m(entries.size(), 1);
    std::copy(entries.begin(), entries.end(), m.data_.begin());
    return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> entries) {
    ComplexMatrix m(entries.size(), entries.size());
    for (std::size_t i = 0; i < entries.size(); i++) {
        m(i, i) = entries[i];
    }
    return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix out(cols_, rows_);
    for (std::size_t i = 0; i < rows_; i++) {
        for (std::size_t j = 0; j < cols_; j++) {
            out(j, i) = std::conj((*this)(i, j));
        }
    }
    return out;
}

ComplexMatrix ComplexMatrix::transpose() const {
    ComplexMatrix out(cols_, rows_);
    for (std::size_t i = 0; i < rows_; i++) {
        for (std::size_t j = 0; j < cols_; j++) {
            out(j, i) = (*this)(i, j);
        }
    }
    return out;
}

Complex ComplexMatrix::trace() const {
    if (!is_square()) {
        throw std::invalid_argument("trace: matrix is not square");
    }
    Complex t = 0.0;
    for (std::size_t i = 0; i < rows_; i++) {
        t += (*this)(i, i);
    }
    return t;
}

double ComplexMatrix::norm_inf() const {
    double best = 0.0;
    for (std::size_t i = 0; i < rows_; i++) {
        double row = 0.0;
        for (std::size_t j = 0; j < cols_; j++) {
            row += std::abs((*this)(i, j));
        }
        best = std::max(best, row);
    }
    return best;
}

double ComplexMatrix::norm_frobenius() const {
    double acc = 0.0;
    for (const auto &z : data_) {
        acc += std::norm(z);
    }
    return std::sqrt(acc);
}

double ComplexMatrix::max_abs() const {
    double best = 0.0;
    for (const auto &z : data_) {
        best = std::max(best, std::abs(z));
    }
    return best;
}

double ComplexMatrix::hermitian_defect() const {
    if (!is_square()) {
        return std::numeric_limits<double>::infinity();
    }
    double worst = 0.0;
    for (std::size_t i = 0; i < rows_; i++) {
        for (std::size_t j = i; j < cols_; j++) {
            worst = std::max(worst, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
        }
    }
    return worst;
}

bool ComplexMatrix::is_hermitian(double tol) const {
    return hermitian_defect() <= tol;
}

bool ComplexMatrix::is_real(double tol) const {
    return std::all_of(data_.begin(), data_.end(), [tol](const Complex &z) {
        return std::abs(z.imag()) <= tol;
    });
}

ComplexMatrix &ComplexMatrix::operator+=(const ComplexMatrix &other) {
    if (rows_ != other.rows_ || cols_ != other.cols_) {
        throw std::invalid_argument("matrix addition: shape mismatch");
    }
    for (std::size_t k = 0; k < data_.size(); k++) {
        data_[k] += other.data_[k];
    }
    return *this;
}

ComplexMatrix &ComplexMatrix::operator-=(const ComplexMatrix &other) {
    if (rows_ != other.rows_ || cols_ != other.cols_) {
        throw std::invalid_argument("matrix subtraction: shape mismatch");
    }
    for (std::size_t k = 0; k < data_.size(); k++) {
        data_[k] -= other.data_[k];
    }
    return *this;
}

ComplexMatrix &ComplexMatrix::operator*=(Complex scale) {
    for (auto &z : data_) {
        z *= scale;
    }
    return *this;
}

ComplexMatrix operator*(const ComplexMatrix &a, const ComplexMatrix &b) {
    if (a.cols() != b.rows()) {
        throw std::invalid_argument("matrix product: inner dimensions differ");
    }
    ComplexMatrix out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); i++) {
        for (std::size_t k = 0; k < a.cols(); k++) {
            Complex aik = a(i, k);
            if (aik == Complex{0.0, 0.0}) {
                continue;
            }
            for (std::size_t j = 0; j < b.cols(); j++) {
                out(i, j) += aik * b(k, j);
            }
        }
    }
    return out;
}

double max_abs_diff(const ComplexMatrix &a, const ComplexMatrix &b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw std::invalid_argument("max_abs_diff: shape mismatch");
    }
    double worst = 0.0;
    auto ea = a.entries();
    auto eb = b.entries();
    for (std::size_t k = 0; k < ea.size(); k++) {
        worst = std::max(worst, std::abs(ea[k] - eb[k]));
    }
    return worst;
}

ComplexMatrix pauli_x() {
    return ComplexMatrix::from_real({{0, 1}, {1, 0}});
}

ComplexMatrix pauli_z() {
    return ComplexMatrix::from_real({{1, 0}, {0, -1}});
}

ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b) {
    std::size_t rows = a.rows() * b.rows();
    std::size_t cols = a.cols() * b.cols();
    if (cols != 0 && rows > kMaxKronEntries / cols) {
        std::ostringstream msg;
        msg << "kron: result " << rows << "x" << cols << " exceeds " << kMaxKronEntries << " entries";
        throw std::length_error(msg.str());
    }
    ComplexMatrix out(rows, cols);
    for (std::size_t i = 0; i < a.rows(); i++) {
        for (std::size_t j = 0; j < a.cols(); j++) {
            Complex aij = a(i, j);
            if (aij == Complex{0.0, 0.0}) {
                continue;
            }
            for (std::size_t k = 0; k < b.rows(); k++) {
                for (std::size_t l = 0; l < b.cols(); l++) {
                    out(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
                }
            }
        }
    }
    return out;
}

ComplexMatrix kron_power(const ComplexMatrix &a, int count) {
    if (count < 0) {
        throw std::invalid_argument("kron_power: negative count");
    }
    ComplexMatrix out = ComplexMatrix::identity(1);
    for (int i = 0; i < count; i++) {
        out = kron(out, a);
    }
    return out;
}

ComplexMatrix kron_all(std::initializer_list<ComplexMatrix> factors) {
    ComplexMatrix out = ComplexMatrix::identity(1);
    for (const auto &f : factors) {
        out = kron(out, f);
    }
    return out;
}

Complex inner(const ComplexMatrix &u, const ComplexMatrix &v) {
    if (u.cols() != 1 || v.cols() != 1 || u.rows() != v.rows()) {
        throw std::invalid_argument("inner: expected column vectors of equal length");
    }
    Complex acc = 0.0;
    for (std::size_t i = 0; i < u.rows(); i++) {
        acc += std::conj(u(i, 0)) * v(i, 0);
    }
    return acc;
}

Complex expectation(const ComplexMatrix &v, const ComplexMatrix &m) {
    if (v.cols() != 1 || !m.is_square() || m.rows() != v.rows()) {
        throw std::invalid_argument("expectation: dimension mismatch");
    }
    Complex acc = 0.0;
    for (std::size_t i = 0; i < m.rows(); i++) {
        Complex vi = v(i, 0);
        if (vi == Complex{0.0, 0.0}) {
            continue;
        }
        Complex row = 0.0;
        for (std::size_t j = 0; j < m.cols(); j++) {
            row += m(i, j) * v(j, 0);
        }
        acc += std::conj(vi) * row;
    }
    return acc;
}

Complex trace_of_product(const ComplexMatrix &a, const ComplexMatrix &b) {
    if (a.cols() != b.rows() || a.rows() != b.cols()) {
        throw std::invalid_argument("trace_of_product: dimension mismatch");
    }
    Complex acc = 0.0;
    for (std::size_t i = 0; i < a.rows(); i++) {
        for (std::size_t k = 0; k < a.cols(); k++) {
            acc += a(i, k) * b(k, i);
        }
    }
    return acc;
}

namespace {

// Cyclic Jacobi on a dense real-symmetric matrix (row-major, n x n). On return
// the diagonal of `a` holds the eigenvalues and the columns of `v` the
// eigenvectors. Sweeps until the off-diagonal Frobenius mass drops below
// 1e-14 * ||A||_F.
void jacobi_symmetric(std::vector<double> &a, std::size_t n, std::vector<double> &v) {
    v.assign(n * n, 0.0);
    for (std::size_t i = 0; i < n; i++) {
        v[i * n + i] = 1.0;
    }
    double total = 0.0;
    for (double x : a) {
        total += x * x;
    }
    double threshold = 1e-14 * std::sqrt(total);
    auto off_mass = [&]() {
        double acc = 0.0;
        for (std::size_t i = 0; i < n; i++) {
            for (std::size_t j = 0; j < n; j++) {
                if (i != j) {
                    acc += a[i * n + j] * a[i * n + j];
                }
            }
        }
        return std::sqrt(acc);
    };

    constexpr int kMaxSweeps = 100;
    for (int sweep = 0; sweep < kMaxSweeps; sweep++) {
        if (off_mass() <= threshold) {
            return;
        }
        for (std::size_t p = 0; p + 1 < n; p++) {
            for (std::size_t q = p + 1; q < n; q++) {
                double apq = a[p * n + q];
                if (apq == 0.0) {
                    continue;
                }
                double theta = (a[q * n + q] - a[p * n + p]) / (2.0 * apq);
                double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                double c = 1.0 / std::sqrt(t * t + 1.0);
                double s = t * c;
                for (std::size_t k = 0; k < n; k++) {
                    double akp = a[k * n + p];
                    double akq = a[k * n + q];
                    a[k * n + p] = c * akp - s * akq;
                    a[k * n + q] = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; k++) {
                    double apk = a[p * n + k];
                    double aqk = a[q * n + k];
                    a[p * n + k] = c * apk - s * aqk;
                    a[q * n + k] = s * apk + c * aqk;
                }
                a[p * n + q] = 0.0;
                a[q * n + p] = 0.0;
                for (std::size_t k = 0; k < n; k++) {
                    double vkp = v[k * n + p];
                    double vkq = v[k * n + q];
                    v[k * n + p] = c * vkp - s * vkq;
                    v[k * n + q] = s * vkp + c * vkq;
                }
            }
        }
    }
    throw std::runtime_error("hermitian_eigen: Jacobi iteration did not converge");
}

std::vector<std::size_t> ascending_order(const std::vector<double> &values) {
    std::vector<std::size_t> order(values.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
        return values[i] < values[j];
    });
    return order;
}

EigenResult real_eigen(const ComplexMatrix &m) {
    std::size_t n = m.rows();
    std::vector<double> a(n * n);
    for (std::size_t i = 0; i < n; i++) {
        for (std::size_t j = 0; j < n; j++) {
            // Symmetrize; the caller has already bounded the defect.
            a[i * n + j] = 0.5 * (m(i, j).real() + m(j, i).real());
        }
    }
    std::vector<double> v;
    jacobi_symmetric(a, n, v);
    std::vector<double> diag(n);
    for (std::size_t i = 0; i < n; i++) {
        diag[i] = a[i * n + i];
    }
    auto order = ascending_order(diag);
    EigenResult out{std::vector<double>(n), ComplexMatrix(n, n)};
    for (std::size_t c = 0; c < n; c++) {
        out.eigenvalues[c] = diag[order[c]];
        for (std::size_t r = 0; r < n; r++) {
            out.eigenvectors(r, c) = v[r * n + order[c]];
        }
    }
    return out;
}

// The embedding [[Re, -Im], [Im, Re]] doubles every eigenvalue. Each complex
// eigenvector w appears as the real pair (Re w; Im w) and (-Im w; Re w), so
// within a cluster of 2m equal embedding eigenvalues the mapped complex vectors
// span exactly m dimensions. Pivoted Gram-Schmidt picks an orthonormal basis.
EigenResult complex_eigen(const ComplexMatrix &m) {
    std::size_t n = m.rows();
    std::size_t d = 2 * n;
    std::vector<double> a(d * d);
    for (std::size_t i = 0; i < n; i++) {
        for (std::size_t j = 0; j < n; j++) {
            Complex z = 0.5 * (m(i, j) + std::conj(m(j, i)));
            a[i * d + j] = z.real();
            a[i * d + (j + n)] = -z.imag();
            a[(i + n) * d + j] = z.imag();
            a[(i + n) * d + (j + n)] = z.real();
        }
    }
    std::vector<double> v;
    jacobi_symmetric(a, d, v);
    std::vector<double> diag(d);
    for (std::size_t i = 0; i < d; i++) {
        diag[i] = a[i * d + i];
    }
    auto order = ascending_order(diag);

    EigenResult out{std::vector<double>(n), ComplexMatrix(n, n)};
    for (std::size_t k = 0; k < n; k++) {
        out.eigenvalues[k] = 0.5 * (diag[order[2 * k]] + diag[order[2 * k + 1]]);
    }

    double scale = std::max(1.0, m.norm_frobenius());
    double cluster_tol = 1e-10 * scale;
    std::vector<std::pair<std::size_t, std::size_t>> clusters;  // [begin, end) in sorted order
    std::size_t begin = 0;
    for (std::size_t k = 1; k <= d; k++) {
        bool split = k == d || diag[order[k]] - diag[order[k - 1]] > cluster_tol;
        if (split && (k - begin) % 2 == 0) {
            clusters.emplace_back(begin, k);
            begin = k;
        }
    }

    std::vector<std::vector<Complex>> accepted;
    accepted.reserve(n);
    for (auto [lo, hi] : clusters) {
        std::vector<std::vector<Complex>> candidates;
        for (std::size_t k = lo; k < hi; k++) {
            std::size_t col = order[k];
            std::vector<Complex> w(n);
            for (std::size_t r = 0; r < n; r++) {
                w[r] = Complex{v[r * d + col], v[(r + n) * d + col]};
            }
            candidates.push_back(std::move(w));
        }
        std::vector<bool> used(candidates.size(), false);
        for (std::size_t pick = 0; pick < (hi - lo) / 2; pick++) {
            double best_norm = -1.0;
            std::size_t best = 0;
            std::vector<Complex> best_vec;
            for (std::size_t c = 0; c < candidates.size(); c++) {
                if (used[c]) {
                    continue;
                }
                std::vector<Complex> r = candidates[c];
                for (const auto &e : accepted) {
                    Complex proj = 0.0;
                    for (std::size_t i = 0; i < n; i++) {
                        proj += std::conj(e[i]) * r[i];
                    }
                    for (std::size_t i = 0; i < n; i++) {
                        r[i] -= proj * e[i];
                    }
                }
                double norm = 0.0;
                for (const auto &z : r) {
                    norm += std::norm(z);
                }
                norm = std::sqrt(norm);
                if (norm > best_norm) {
                    best_norm = norm;
                    best = c;
                    best_vec = std::move(r);
                }
            }
            used[best] = true;
            for (auto &z : best_vec) {
                z /= best_norm;
            }
            accepted.push_back(std::move(best_vec));
        }
    }
    for (std::size_t c = 0; c < n; c++) {
        for (std::size_t r = 0; r < n; r++) {
            out.eigenvectors(r, c) = accepted[c][r];
        }
    }
    return out;
}

}  // namespace

EigenResult hermitian_eigen(const ComplexMatrix &m) {
    if (!m.is_square()) {
        throw std::invalid_argument("hermitian_eigen: matrix is not square");
    }
    double defect = m.hermitian_defect();
    double allowed = 1e-10 * std::max(1.0, m.max_abs());
    if (defect > allowed) {
        std::ostringstream msg;
        msg << "hermitian_eigen: matrix is not Hermitian (symmetry defect " << defect << " > " << allowed << ")";
        throw std::invalid_argument(msg.str());
    }
    if (m.rows() == 0) {
        return {};
    }
    return m.is_real() ? real_eigen(m) : complex_eigen(m);
}

double min_eigenvalue(const ComplexMatrix &m) {
    auto eig = hermitian_eigen(m);
    if (eig.eigenvalues.empty()) {
        return 0.0;
    }
    return eig.eigenvalues.front();
}

bool is_psd(const ComplexMatrix &m, double tol) {
    return min_eigenvalue(m) >= -tol;
}

std::vector<double> char_poly_coeffs(const ComplexMatrix &m) {
    if (!m.is_square()) {
        throw std::invalid_argument("char_poly_coeffs: matrix is not square");
    }
    std::size_t n = m.rows();
    if (n > 8) {
        throw std::invalid_argument("char_poly_coeffs: dimension above 8; use the spectrum instead");
    }
    // M_k = A M_{k-1} + c_{k-1} I, c_k = -Tr(A M_k) / k.
    std::vector<double> coeffs(n + 1, 0.0);
    coeffs[0] = 1.0;
    ComplexMatrix mk = ComplexMatrix::zeros(n, n);
    ComplexMatrix eye = ComplexMatrix::identity(n);
    for (std::size_t k = 1; k <= n; k++) {
        mk = m * mk + eye * Complex{coeffs[k - 1], 0.0};
        Complex c = -trace_of_product(m, mk) / static_cast<double>(k);
        coeffs[k] = c.real();
    }
    return coeffs;
}

bool is_psd_2x2(double a, double b, double d, double tol) {
    return a >= -tol && d >= -tol && a * d - b * b >= -tol;
}

namespace {

// Bound on the spectral radius: |lambda| <= 2 max_k |c_k|^{1/k}.
double horn_radius(std::span<const double> coeffs) {
    double radius = 0.0;
    for (std::size_t k = 1; k < coeffs.size(); k++) {
        radius = std::max(radius, std::pow(std::abs(coeffs[k]), 1.0 / static_cast<double>(k)));
    }
    return 2.0 * radius;
}

bool horn_is_zero(std::span<const double> coeffs, std::size_t k, double radius, double tol) {
    return std::abs(coeffs[k]) <= tol * std::pow(radius, static_cast<double>(k));
}

}  // namespace

std::size_t horn_trailing_zeros(std::span<const double> coeffs, double tol) {
    if (coeffs.empty()) {
        return 0;
    }
    double radius = horn_radius(coeffs);
    std::size_t count = 0;
    for (std::size_t k = coeffs.size() - 1; k >= 1 && horn_is_zero(coeffs, k, radius, tol); k--) {
        count++;
    }
    return count;
}

bool horn_psd_test(std::span<const double> coeffs, double tol) {
    if (coeffs.empty()) {
        return true;
    }
    double radius = horn_radius(coeffs);
    std::size_t last = coeffs.size() - 1 - horn_trailing_zeros(coeffs, tol);
    for (std::size_t k = 1; k <= last; k++) {
        if (horn_is_zero(coeffs, k, radius, tol)) {
            return false;
        }
        bool expect_positive = k % 2 == 0;
        if ((coeffs[k] > 0) != expect_positive) {
            return false;
        }
    }
    return true;
}

}  // namespace qnlb
