#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "disruptkit/careers.hpp"
#include "disruptkit/rankstats.hpp"
#include "disruptkit/types.hpp"

namespace disruptkit {

enum class NullMode { ShuffleC5, ShuffleD };
enum class NullScope { Global, PerAuthor };

constexpr const char* to_string(NullMode mode) {
    return mode == NullMode::ShuffleC5 ? "shuffle_c5" : "shuffle_d";
}
constexpr const char* to_string(NullScope scope) {
    return scope == NullScope::Global ? "global" : "per_author";
}

struct NullConfig {
    NullMode mode = NullMode::ShuffleC5;
    NullScope scope = NullScope::Global;
    std::uint64_t master_seed = 1;
    std::uint32_t realizations = 20;
};

// Mean and population standard deviation of the per-realization tau at one
// grid point; kUndefined when no realization produced a defined tau.
struct NullPoint {
    double percentile = 0.0;
    double mean_tau = kUndefined;
    double std_tau = kUndefined;
};

struct NullReport {
    Pivot pivot = Pivot::Disruption;
    NullMode mode = NullMode::ShuffleC5;
    NullScope scope = NullScope::Global;
    std::uint64_t master_seed = 1;
    std::uint32_t realizations = 20;
    std::vector<NullPoint> points;
};

// In-place Fisher-Yates permutation driven by a SplitMix64 stream; fewer
// than two values is the identity.
void permute_values(std::span<double> values, std::uint64_t seed);

// Global-scope experiment: R times, permute the chosen field across the
// whole population with seed derive_seed(master_seed, r), rebuild the
// affected rank, and re-run the percentile sweep.
NullReport run_null_experiment(const ScoredVectors& population, Pivot pivot,
                               std::span<const double> grid, const NullConfig& config);

// Per-author-scope experiment: within every career, permute the field with
// a seed derived from (realization seed, author id), re-run the career
// sweeps, and aggregate across authors; mean/std are then taken over the
// per-realization aggregate curves.
NullReport run_null_experiment(std::span<const ScoredVectors> careers,
                               std::span<const std::string> author_ids, Pivot pivot,
                               const CareerGrid& grid, const NullConfig& config);

}  // namespace disruptkit
