#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "tsvar/frame.hpp"
#include "tsvar/linalg.hpp"

namespace tsvar::simulate {

/// A fully specified Gaussian VAR(p) data-generating process.
struct VarProcessSpec {
    std::vector<std::string> var_names;
    std::vector<double> intercept;           ///< ν, length K
    std::vector<linalg::Matrix> coef;        ///< A₁..A_p, each K × K
    linalg::Matrix innovation_cov;           ///< Σ_u, K × K positive definite
    std::size_t burn_in = 200;

    [[nodiscard]] std::size_t k() const noexcept { return var_names.size(); }
    [[nodiscard]] std::size_t p() const noexcept { return coef.size(); }
};

/// Kp × Kp companion matrix of A₁..A_p.
[[nodiscard]] linalg::Matrix companion_matrix(const std::vector<linalg::Matrix>& coef);

/// (I − ΣA_i)⁻¹ν.
[[nodiscard]] std::vector<double> unconditional_mean(const std::vector<double>& intercept,
                                                     const std::vector<linalg::Matrix>& coef);

/// Checks shapes, stability (companion spectral radius < 1) and Σ_u positive definiteness.
void validate(const VarProcessSpec& spec);

/**
 * Draws t observations from `spec`. The recursion starts at the unconditional
 * mean and discards `burn_in` steps. Innovations are Σ_u's Cholesky factor
 * times standard normals from CounterRng(seed, stream).
 */
[[nodiscard]] linalg::Matrix simulate_var_matrix(const VarProcessSpec& spec, std::size_t t,
                                                 std::uint64_t seed, std::uint64_t stream = 0);

[[nodiscard]] SeriesFrame simulate_var(const VarProcessSpec& spec, std::size_t t, std::uint64_t seed,
                                       std::uint64_t stream = 0);

[[nodiscard]] std::vector<double> white_noise(std::size_t t, std::uint64_t seed, double sd = 1.0);

/// Cumulative sum of white_noise(t, seed, 1).
[[nodiscard]] std::vector<double> random_walk(std::size_t t, std::uint64_t seed);

/// Reads a spec document: {var_names, p, intercept, coef, sigma_u, burn_in?}.
[[nodiscard]] VarProcessSpec read_spec(std::istream& in);
void write_spec(const VarProcessSpec& spec, std::ostream& out);

/// Start date used for simulated frames.
[[nodiscard]] Date default_start_date();

}  // namespace tsvar::simulate
