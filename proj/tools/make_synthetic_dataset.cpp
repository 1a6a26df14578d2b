// Regenerates data/sleep.csv and data/mood.csv: a five-variable VAR(2) in which
// lower sleep scores raise next-days depressed and anxious mood, rounded to the
// integer scales of the two exports.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <string>

#include "tsvar/frame.hpp"
#include "tsvar/rng.hpp"
#include "tsvar/simulate.hpp"

using tsvar::linalg::Matrix;

int main(int argc, char** argv) {
    const std::string dir = argc > 1 ? argv[1] : "data";
    constexpr std::size_t kDays = 1455;
    constexpr std::size_t kMissingNight = 611;
    constexpr std::uint64_t kSeed = 20190201;

    Matrix a1(5, 5), a2(5, 5);
    a1(0, 0) = 0.55;
    a2(0, 0) = 0.08;
    a1(1, 0) = -0.0035;
    a2(1, 0) = -0.0050;
    a1(1, 1) = 0.40;
    a1(2, 0) = -0.0030;
    a2(2, 0) = -0.0035;
    a1(2, 2) = 0.35;
    a1(2, 1) = 0.10;
    a1(3, 3) = 0.30;
    a1(4, 4) = 0.25;
    const std::vector<double> mean{74.0, -0.35, -0.40, -0.30, -0.45};
    const std::vector<double> sd{9.5, 0.55, 0.55, 0.55, 0.50};

    Matrix sigma(5, 5);
    for (std::size_t i = 0; i < 5; ++i) sigma(i, i) = sd[i] * sd[i];
    sigma(1, 2) = sigma(2, 1) = 0.3 * sd[1] * sd[2];

    // ν = (I − A₁ − A₂)·μ places the unconditional mean at μ.
    std::vector<double> nu(5, 0.0);
    for (std::size_t i = 0; i < 5; ++i) {
        nu[i] = mean[i];
        for (std::size_t j = 0; j < 5; ++j) nu[i] -= (a1(i, j) + a2(i, j)) * mean[j];
    }

    const tsvar::simulate::VarProcessSpec spec{
        {"score", "depressed", "anxious", "irritable", "elevated"}, nu, {a1, a2}, sigma, 200};
    const Matrix latent = tsvar::simulate::simulate_var_matrix(spec, kDays, kSeed);
    const tsvar::Date start = tsvar::simulate::default_start_date();
    tsvar::CounterRng split(kSeed, 1);

    std::ofstream sleep(dir + "/sleep.csv");
    std::ofstream mood(dir + "/mood.csv");
    if (!sleep || !mood) {
        std::cerr << "cannot write into " << dir << '\n';
        return 1;
    }
    sleep << "date,score\n";
    mood << "date,depressed,anxious,irritable,elevated\n";
    for (std::size_t d = 0; d < kDays; ++d) {
        const std::string date = tsvar::format_iso_date(start + std::chrono::days(d));
        if (d != kMissingNight) {
            const double score = std::clamp(std::round(latent(d, 0)), 1.0, 100.0);
            sleep << date << ',' << static_cast<int>(score) << '\n';
        }
        int level[4];
        bool any = false;
        for (std::size_t j = 0; j < 4; ++j) {
            level[j] = static_cast<int>(std::clamp(std::round(latent(d, j + 1)), 0.0, 3.0));
            any = any || level[j] > 0;
        }
        if (!any && d != 0 && d + 1 != kDays) continue;
        // Some days are logged in two entries; the export keeps both rows.
        if (any && split.uniform() < 0.15) {
            mood << date << ',' << level[0] << ',' << 0 << ',' << level[2] << ',' << 0 << '\n';
            mood << date << ',' << 0 << ',' << level[1] << ',' << 0 << ',' << level[3] << '\n';
        } else {
            mood << date << ',' << level[0] << ',' << level[1] << ',' << level[2] << ',' << level[3] << '\n';
        }
    }
    return 0;
}
