#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace tsvar::linalg {

/// Dense row-major matrix of doubles.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0);
    Matrix(std::size_t rows, std::size_t cols, std::vector<double> data);
    Matrix(std::initializer_list<std::initializer_list<double>> rows);

    [[nodiscard]] static Matrix identity(std::size_t n);
    [[nodiscard]] static Matrix diagonal(std::span<const double> diag);

    [[nodiscard]] std::size_t rows() const noexcept { return rows_; }
    [[nodiscard]] std::size_t cols() const noexcept { return cols_; }
    [[nodiscard]] bool empty() const noexcept { return data_.empty(); }
    [[nodiscard]] bool is_square() const noexcept { return rows_ == cols_; }

    double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    [[nodiscard]] std::span<double> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
    [[nodiscard]] std::span<const double> row(std::size_t r) const {
        return {data_.data() + r * cols_, cols_};
    }
    [[nodiscard]] std::vector<double> column(std::size_t c) const;

    [[nodiscard]] std::span<const double> data() const noexcept { return data_; }
    [[nodiscard]] std::span<double> data() noexcept { return data_; }

    [[nodiscard]] Matrix transpose() const;
    [[nodiscard]] bool all_finite() const noexcept;
    [[nodiscard]] double max_abs() const noexcept;

    Matrix& operator+=(const Matrix& rhs);
    Matrix& operator-=(const Matrix& rhs);
    Matrix& operator*=(double s) noexcept;

    friend bool operator==(const Matrix&, const Matrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

[[nodiscard]] Matrix operator*(const Matrix& a, const Matrix& b);
[[nodiscard]] Matrix operator+(Matrix a, const Matrix& b);
[[nodiscard]] Matrix operator-(Matrix a, const Matrix& b);
[[nodiscard]] Matrix operator*(double s, Matrix m);

/// aᵀ·b without materializing the transpose.
[[nodiscard]] Matrix transpose_times(const Matrix& a, const Matrix& b);

struct LeastSquaresSolution {
    Matrix coefficients;           ///< m × q
    Matrix residuals;              ///< n × q, targets − design·coefficients
    Matrix normal_matrix_inverse;  ///< (designᵀ·design)⁻¹, m × m
};

/// Relative threshold on |R_jj| / max|R_ii| below which a design is rank deficient.
inline constexpr double kRankTolerance = 1e-10;

/**
 * Least squares by Householder QR. Solves all q right-hand sides against one
 * factorization and derives (XᵀX)⁻¹ = R⁻¹R⁻ᵀ from the triangular factor.
 *
 * Throws SingularDesignError naming the first column whose R diagonal falls
 * below kRankTolerance × the largest one.
 */
[[nodiscard]] LeastSquaresSolution solve_least_squares(const Matrix& design, const Matrix& targets);

/// Lower Cholesky factor P with P·Pᵀ = m. Throws NotPositiveDefiniteError with the pivot index.
[[nodiscard]] Matrix cholesky_lower(const Matrix& m);

/// ln det m for symmetric positive definite m, from the Cholesky diagonal.
[[nodiscard]] double log_det_pd(const Matrix& m);

/// Solves m·x = b for symmetric positive definite m (b may hold several columns).
[[nodiscard]] Matrix solve_pd(const Matrix& m, const Matrix& b);

/// Solves the square system a·x = b via QR. Throws SingularDesignError when a is singular.
[[nodiscard]] Matrix solve_square(const Matrix& a, const Matrix& b);

/**
 * Largest eigenvalue modulus by repeated squaring: ρ = lim ‖M^(2^j)‖^(1/2^j).
 * Each square is renormalized and the log-scale accumulated, so the estimate
 * never overflows and works for complex-conjugate dominant pairs without
 * complex arithmetic. Iterates until successive estimates agree to `tol`
 * (relative); throws ConvergenceError after `max_iter` squarings.
 */
[[nodiscard]] double spectral_radius(const Matrix& m, double tol = 1e-12, std::size_t max_iter = 200);

}  // namespace tsvar::linalg
