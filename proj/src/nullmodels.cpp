#include "disruptkit/nullmodels.hpp"

#include <cmath>
#include <stdexcept>

#include "disruptkit/rng.hpp"

namespace disruptkit {

void permute_values(std::span<double> values, std::uint64_t seed) {
    SplitMix64 rng(seed);
    fisher_yates(values, rng);
}

namespace {

// taus[r][k]: defined entries per grid point -> mean and population std.
std::vector<NullPoint> summarize(const std::vector<std::vector<double>>& taus,
                                 std::span<const double> percentiles) {
    std::vector<NullPoint> points(percentiles.size());
    for (std::size_t k = 0; k < percentiles.size(); ++k) {
        points[k].percentile = percentiles[k];
        std::uint64_t count = 0;
        double sum = 0.0;
        for (const auto& realization : taus) {
            if (is_defined(realization[k])) {
                ++count;
                sum += realization[k];
            }
        }
        if (count == 0) continue;
        const double mean = sum / static_cast<double>(count);
        double sq = 0.0;
        for (const auto& realization : taus) {
            if (is_defined(realization[k])) {
                const double delta = realization[k] - mean;
                sq += delta * delta;
            }
        }
        points[k].mean_tau = mean;
        points[k].std_tau = std::sqrt(sq / static_cast<double>(count));
    }
    return points;
}

}  // namespace

NullReport run_null_experiment(const ScoredVectors& population, Pivot pivot,
                               std::span<const double> grid, const NullConfig& config) {
    if (config.realizations < 1)
        throw std::invalid_argument("run_null_experiment: realizations must be >= 1");

    NullReport report{pivot, config.mode, NullScope::Global, config.master_seed,
                      config.realizations, {}};
    const bool shuffle_c5 = config.mode == NullMode::ShuffleC5;

    // The untouched side's rank never changes; build it once.
    const RankVector fixed_rank =
        rank_by(shuffle_c5 ? population.score : population.c5, population.ids);

    std::vector<std::vector<double>> taus;
    taus.reserve(config.realizations);
    std::vector<double> field;
    for (std::uint32_t r = 1; r <= config.realizations; ++r) {
        field.assign(shuffle_c5 ? population.c5.begin() : population.score.begin(),
                     shuffle_c5 ? population.c5.end() : population.score.end());
        permute_values(field, derive_seed(config.master_seed, r));
        const RankVector permuted_rank = rank_by(field, population.ids);

        const bool fixed_is_primary = (pivot == Pivot::Disruption) == shuffle_c5;
        const RankVector& primary = fixed_is_primary ? fixed_rank : permuted_rank;
        const RankVector& other = fixed_is_primary ? permuted_rank : fixed_rank;
        const auto points = percentile_sweep(primary, other, grid);
        auto& row = taus.emplace_back();
        row.reserve(points.size());
        for (const auto& p : points) row.push_back(p.tau);
    }
    report.points = summarize(taus, grid);
    return report;
}

NullReport run_null_experiment(std::span<const ScoredVectors> careers,
                               std::span<const std::string> author_ids, Pivot pivot,
                               const CareerGrid& grid, const NullConfig& config) {
    if (careers.size() != author_ids.size())
        throw std::invalid_argument("run_null_experiment: careers and author ids mismatch");
    if (config.realizations < 1)
        throw std::invalid_argument("run_null_experiment: realizations must be >= 1");

    NullReport report{pivot, config.mode, NullScope::PerAuthor, config.master_seed,
                      config.realizations, {}};
    const bool shuffle_c5 = config.mode == NullMode::ShuffleC5;

    std::vector<std::vector<double>> taus;
    taus.reserve(config.realizations);
    std::vector<std::vector<SweepPoint>> sweeps(careers.size());
    for (std::uint32_t r = 1; r <= config.realizations; ++r) {
        const std::uint64_t seed_r = derive_seed(config.master_seed, r);
        for (std::size_t a = 0; a < careers.size(); ++a) {
            ScoredVectors career = careers[a];
            auto& field = shuffle_c5 ? career.c5 : career.score;
            permute_values(field, derive_author_seed(seed_r, author_ids[a]));
            sweeps[a] = career_sweep(career, grid, pivot);
        }
        const AggregateCurve curve = aggregate_sweeps(sweeps);
        taus.push_back(curve.mean_tau);
    }
    report.points = summarize(taus, grid.percentiles);
    return report;
}

}  // namespace disruptkit
