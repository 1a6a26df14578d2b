#pragma once

#include <array>
#include <cstdint>

namespace tsvar {

/**
 * Philox4x64-10 counter-based generator (Salmon et al., Random123).
 *
 * The 128-bit key is (seed, stream), so every (seed, stream) pair is an
 * independent substream addressable without generating any predecessor.
 * Bootstrap replication r uses stream r; results therefore do not depend on
 * thread scheduling. The block function matches numpy's `Philox` bit
 * generator bit-for-bit, and this algorithm is part of the stable output
 * contract: changing it changes every seeded result.
 *
 * Normals come from the Box-Muller transform on pairs of 53-bit uniforms,
 * which keeps outputs identical across standard libraries (unlike
 * std::normal_distribution).
 */
class CounterRng {
public:
    using Block = std::array<std::uint64_t, 4>;
    using Key = std::array<std::uint64_t, 2>;

    explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0) noexcept
        : key_{seed, stream} {}

    /// The raw Philox4x64-10 bijection.
    [[nodiscard]] static Block philox(Block counter, Key key) noexcept;

    std::uint64_t next_u64() noexcept;

    /// Uniform on the open interval (0, 1).
    double uniform() noexcept;

    /// Standard normal draw.
    double normal() noexcept;

private:
    Key key_;
    Block counter_{0, 0, 0, 0};
    Block buffer_{};
    int buffer_pos_ = 4;
    bool has_spare_normal_ = false;
    double spare_normal_ = 0.0;
};

}  // namespace tsvar
