#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "disruptkit/types.hpp"

namespace disruptkit {

inline constexpr int kPercentileBuckets = 100;

// Descending ranking of one value vector over a population of M members.
// Ranks are a strict permutation of [1, M]; ties broken by ascending
// tie-break id. `value` keeps the ranked values for tie diagnostics.
struct RankVector {
    std::vector<std::uint32_t> order;     // order[k] = member index at rank k+1
    std::vector<std::uint32_t> position;  // position[i] = 1-based rank of member i
    std::vector<double> value;            // value[i] = ranked value of member i

    std::size_t size() const { return order.size(); }
};

// One grid point of a cumulative-percentile sweep; tau is kUndefined when
// the subset is too small or a side's values are entirely tied.
struct SweepPoint {
    double percentile = 0.0;
    std::uint64_t subset_size = 0;
    double tau = kUndefined;
};

struct SweepReport {
    Pivot pivot = Pivot::Disruption;
    ScoreVariant variant = ScoreVariant::Raw;
    std::string year_group = "all";
    std::string null_tag = "none";
    std::vector<SweepPoint> points;
};

// Fraction of total c5 captured by each percentile bucket of a rank.
struct ShareCurve {
    std::vector<double> share;  // kPercentileBuckets entries
    bool degenerate = false;    // total c5 was zero; all shares forced to 0
};

// Aligned score/impact/id vectors for one ranked population — the whole
// corpus, a year group, or a single author's career.
struct ScoredVectors {
    std::vector<double> score;
    std::vector<double> c5;
    std::vector<std::string_view> ids;

    std::size_t size() const { return score.size(); }
};

// Rank members descending by value, ties by ascending id. Values must all
// be defined; ids must be aligned with values.
RankVector rank_by(std::span<const double> values, std::span<const std::string_view> ids);

// Kendall tau-b with tie corrections via O(n log n) exchange counting.
// Returns kUndefined when n < 2 or either side is entirely tied; throws
// std::invalid_argument on length mismatch.
double kendall_tau_b(std::span<const double> x, std::span<const double> y);

// For each percentile k in grid, take the top round(k*M/100) members
// (minimum 1) of primary and correlate their global positions in primary
// and other. Grid values outside (0,100] raise ConfigError.
std::vector<SweepPoint> percentile_sweep(const RankVector& primary, const RankVector& other,
                                         std::span<const double> grid);

// Bucket b in 1..100 holds members with primary rank in
// (round((b-1)M/100), round(bM/100)]; share(b) is the bucket's fraction of
// total c5. A zero total yields the degenerate all-zero curve.
ShareCurve citation_share_by_percentile(const RankVector& primary,
                                        std::span<const double> c5);

// Assign members to at most one inclusive year range each; ranges must not
// overlap (ConfigError otherwise). Returns member-index lists per group.
std::vector<std::vector<std::uint32_t>> year_group_split(std::span<const std::int32_t> years,
                                                         std::span<const YearRange> groups);

}  // namespace disruptkit
