#include "tsvar/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "tsvar/error.hpp"

namespace tsvar::linalg {

Matrix::Matrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
    if (data_.size() != rows_ * cols_) {
        throw std::invalid_argument("Matrix: data length " + std::to_string(data_.size()) +
                                    " does not match " + std::to_string(rows_) + "x" +
                                    std::to_string(cols_));
    }
}

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> rows)
    : rows_(rows.size()), cols_(rows.size() == 0 ? 0 : rows.begin()->size()) {
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
        if (r.size() != cols_) throw std::invalid_argument("Matrix: ragged initializer");
        data_.insert(data_.end(), r.begin(), r.end());
    }
}

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

Matrix Matrix::diagonal(std::span<const double> diag) {
    Matrix m(diag.size(), diag.size());
    for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
    return m;
}

std::vector<double> Matrix::column(std::size_t c) const {
    std::vector<double> out(rows_);
    for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
    return out;
}

Matrix Matrix::transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
}

bool Matrix::all_finite() const noexcept {
    return std::all_of(data_.begin(), data_.end(), [](double v) { return std::isfinite(v); });
}

double Matrix::max_abs() const noexcept {
    double m = 0.0;
    for (double v : data_) m = std::max(m, std::abs(v));
    return m;
}

Matrix& Matrix::operator+=(const Matrix& rhs) {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw std::invalid_argument("Matrix +=: shape mismatch");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += rhs.data_[i];
    return *this;
}

Matrix& Matrix::operator-=(const Matrix& rhs) {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw std::invalid_argument("Matrix -=: shape mismatch");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= rhs.data_[i];
    return *this;
}

Matrix& Matrix::operator*=(double s) noexcept {
    for (double& v : data_) v *= s;
    return *this;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("Matrix *: shape mismatch");
    Matrix out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const double aik = a(i, k);
            if (aik == 0.0) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
        }
    }
    return out;
}

Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
Matrix operator*(double s, Matrix m) { return m *= s; }

Matrix transpose_times(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows()) throw std::invalid_argument("transpose_times: shape mismatch");
    Matrix out(a.cols(), b.cols());
    for (std::size_t r = 0; r < a.rows(); ++r) {
        for (std::size_t i = 0; i < a.cols(); ++i) {
            const double ari = a(r, i);
            if (ari == 0.0) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += ari * b(r, j);
        }
    }
    return out;
}

namespace {

// Householder QR in place. On return the upper triangle of `a` holds R, and
// the reflectors have already been applied to `rhs` (so rhs holds Qᵀ·rhs).
// Throws on the first column whose pivot is below the rank tolerance.
std::vector<double> householder_qr(Matrix& a, Matrix& rhs) {
    const std::size_t n = a.rows();
    const std::size_t m = a.cols();
    std::vector<double> diag(m);
    std::vector<double> v(n);
    double largest = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
        double norm2 = 0.0;
        for (std::size_t i = j; i < n; ++i) norm2 += a(i, j) * a(i, j);
        const double norm = std::sqrt(norm2);
        const double alpha = a(j, j) > 0.0 ? -norm : norm;
        diag[j] = alpha;

        if (norm != 0.0) {
            // v = x − alpha·e1, normalized so that H = I − 2vvᵀ/(vᵀv)
            for (std::size_t i = j; i < n; ++i) v[i] = a(i, j);
            v[j] -= alpha;
            double vnorm2 = 0.0;
            for (std::size_t i = j; i < n; ++i) vnorm2 += v[i] * v[i];
            if (vnorm2 > 0.0) {
                for (std::size_t c = j + 1; c < m; ++c) {
                    double dot = 0.0;
                    for (std::size_t i = j; i < n; ++i) dot += v[i] * a(i, c);
                    const double f = 2.0 * dot / vnorm2;
                    for (std::size_t i = j; i < n; ++i) a(i, c) -= f * v[i];
                }
                for (std::size_t c = 0; c < rhs.cols(); ++c) {
                    double dot = 0.0;
                    for (std::size_t i = j; i < n; ++i) dot += v[i] * rhs(i, c);
                    const double f = 2.0 * dot / vnorm2;
                    for (std::size_t i = j; i < n; ++i) rhs(i, c) -= f * v[i];
                }
            }
        }
        a(j, j) = alpha;
        for (std::size_t i = j + 1; i < n; ++i) a(i, j) = 0.0;
        largest = std::max(largest, std::abs(alpha));
    }
    for (std::size_t j = 0; j < m; ++j) {
        if (std::abs(diag[j]) < kRankTolerance * largest || largest == 0.0) {
            throw SingularDesignError(j, "design matrix is rank deficient at column " +
                                             std::to_string(j));
        }
    }
    return diag;
}

// Solves R·x = b for upper-triangular R stored in the leading m×m block.
Matrix back_substitute(const Matrix& r, const Matrix& b, std::size_t m) {
    Matrix x(m, b.cols());
    for (std::size_t c = 0; c < b.cols(); ++c) {
        for (std::size_t ii = m; ii-- > 0;) {
            double s = b(ii, c);
            for (std::size_t k = ii + 1; k < m; ++k) s -= r(ii, k) * x(k, c);
            x(ii, c) = s / r(ii, ii);
        }
    }
    return x;
}

}  // namespace

LeastSquaresSolution solve_least_squares(const Matrix& design, const Matrix& targets) {
    const std::size_t n = design.rows();
    const std::size_t m = design.cols();
    if (targets.rows() != n) throw std::invalid_argument("solve_least_squares: row mismatch");
    if (m == 0) throw std::invalid_argument("solve_least_squares: empty design");
    if (n < m) {
        throw std::invalid_argument("solve_least_squares: " + std::to_string(n) +
                                    " rows cannot determine " + std::to_string(m) + " coefficients");
    }
    if (!design.all_finite() || !targets.all_finite()) {
        throw DataError("solve_least_squares: non-finite input");
    }

    Matrix r = design;
    Matrix qtb = targets;
    householder_qr(r, qtb);

    LeastSquaresSolution out;
    out.coefficients = back_substitute(r, qtb, m);

    out.residuals = targets;
    out.residuals -= design * out.coefficients;

    // R⁻¹ column by column, then (XᵀX)⁻¹ = R⁻¹·R⁻ᵀ.
    Matrix rinv(m, m);
    for (std::size_t c = 0; c < m; ++c) {
        for (std::size_t ii = c + 1; ii-- > 0;) {
            double s = (ii == c) ? 1.0 : 0.0;
            for (std::size_t k = ii + 1; k <= c; ++k) s -= r(ii, k) * rinv(k, c);
            rinv(ii, c) = s / r(ii, ii);
        }
    }
    Matrix inv(m, m);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = i; j < m; ++j) {
            double s = 0.0;
            for (std::size_t k = j; k < m; ++k) s += rinv(i, k) * rinv(j, k);
            inv(i, j) = s;
            inv(j, i) = s;
        }
    }
    out.normal_matrix_inverse = std::move(inv);
    return out;
}

Matrix cholesky_lower(const Matrix& m) {
    if (!m.is_square()) throw std::invalid_argument("cholesky_lower: matrix is not square");
    const std::size_t k = m.rows();
    const double scale = m.max_abs();
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < i; ++j) {
            if (std::abs(m(i, j) - m(j, i)) > 1e-10 * scale) {
                throw std::invalid_argument("cholesky_lower: matrix is not symmetric");
            }
        }
    }
    Matrix p(k, k);
    for (std::size_t j = 0; j < k; ++j) {
        double d = m(j, j);
        for (std::size_t c = 0; c < j; ++c) d -= p(j, c) * p(j, c);
        if (!(d > 0.0)) {
            throw NotPositiveDefiniteError(j, "matrix is not positive definite (pivot " +
                                                  std::to_string(j) + ")");
        }
        const double root = std::sqrt(d);
        p(j, j) = root;
        for (std::size_t i = j + 1; i < k; ++i) {
            double s = m(i, j);
            for (std::size_t c = 0; c < j; ++c) s -= p(i, c) * p(j, c);
            p(i, j) = s / root;
        }
    }
    return p;
}

double log_det_pd(const Matrix& m) {
    const Matrix p = cholesky_lower(m);
    double s = 0.0;
    for (std::size_t i = 0; i < p.rows(); ++i) s += std::log(p(i, i));
    return 2.0 * s;
}

Matrix solve_pd(const Matrix& m, const Matrix& b) {
    const Matrix p = cholesky_lower(m);
    const std::size_t k = p.rows();
    if (b.rows() != k) throw std::invalid_argument("solve_pd: shape mismatch");
    Matrix x = b;
    for (std::size_t c = 0; c < b.cols(); ++c) {
        for (std::size_t i = 0; i < k; ++i) {
            double s = x(i, c);
            for (std::size_t j = 0; j < i; ++j) s -= p(i, j) * x(j, c);
            x(i, c) = s / p(i, i);
        }
        for (std::size_t i = k; i-- > 0;) {
            double s = x(i, c);
            for (std::size_t j = i + 1; j < k; ++j) s -= p(j, i) * x(j, c);
            x(i, c) = s / p(i, i);
        }
    }
    return x;
}

Matrix solve_square(const Matrix& a, const Matrix& b) {
    if (!a.is_square()) throw std::invalid_argument("solve_square: matrix is not square");
    return solve_least_squares(a, b).coefficients;
}

double spectral_radius(const Matrix& m, double tol, std::size_t max_iter) {
    if (!m.is_square()) throw std::invalid_argument("spectral_radius: matrix is not square");
    if (m.empty()) return 0.0;

    auto frobenius = [](const Matrix& x) {
        double s = 0.0;
        for (double v : x.data()) s += v * v;
        return std::sqrt(s);
    };

    Matrix b = m;
    double norm = frobenius(b);
    if (norm == 0.0) return 0.0;
    b *= 1.0 / norm;
    double log_scale = std::log(norm);  // ln ‖M^(2^j)‖, with B_j = M^(2^j)/‖M^(2^j)‖
    double power = 1.0;                 // 2^j
    double estimate = norm;

    for (std::size_t it = 0; it < max_iter; ++it) {
        b = b * b;
        norm = frobenius(b);
        if (norm == 0.0) return 0.0;  // nilpotent
        b *= 1.0 / norm;
        log_scale = 2.0 * log_scale + std::log(norm);
        power *= 2.0;
        const double next = std::exp(log_scale / power);
        if (std::abs(next - estimate) <= tol * std::max(next, 1e-300)) return next;
        estimate = next;
    }
    throw ConvergenceError("spectral_radius: no convergence after " + std::to_string(max_iter) +
                           " squarings");
}

}  // namespace tsvar::linalg
