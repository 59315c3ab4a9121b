#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "disruptkit/corpus.hpp"
#include "disruptkit/disruption.hpp"
#include "disruptkit/rankstats.hpp"
#include "disruptkit/types.hpp"

namespace disruptkit {

// An author's publication sequence. Papers are graph rows in ascending
// (year, external_id) order; max_gap is the largest year difference between
// consecutive publications (0 for a single paper).
struct CareerProfile {
    std::string author_id;
    std::vector<std::uint32_t> papers;
    int first_year = 0;
    int last_year = 0;
    std::uint32_t n_pubs = 0;
    int max_gap = 0;
};

struct EligibilityCriteria {
    YearRange start_window{1980, 2000};
    int min_span_years = 20;
    std::uint32_t min_pubs_exclusive = 10;  // "more than 10" is strict
    int max_gap_years = 5;
};

struct CareerGrid {
    std::vector<double> percentiles;

    // 1, then 5..100 in steps of 5.
    static CareerGrid defaults();
};

// One profile per distinct author id, ordered by ascending author id.
// Authorless papers contribute to no profile.
std::vector<CareerProfile> build_profiles(const CitationGraph& graph);

bool is_eligible(const CareerProfile& profile, const EligibilityCriteria& criteria);

// Keep profiles with first_year in start_window, span >= min_span_years,
// n_pubs > min_pubs_exclusive and max_gap <= max_gap_years.
std::vector<CareerProfile> filter_authors(std::vector<CareerProfile> profiles,
                                          const EligibilityCriteria& criteria);

// Keep profiles with n_pubs > min_pubs.
std::vector<CareerProfile> prolific_filter(std::vector<CareerProfile> profiles,
                                           std::uint32_t min_pubs = 100);

// Score/impact/id vectors for the author's papers that carry a defined
// score. The permutable unit for per-author nulls.
ScoredVectors extract_career(const CareerProfile& profile, const DisruptionTable& table,
                             const CitationGraph& graph, ScoreVariant variant);

// Percentile sweep over the author's own papers: ranks built within the
// career, subset size max(1, round(k*n/100)); tau kUndefined (missing) when
// the subset has < 2 papers or a side is entirely tied.
std::vector<SweepPoint> career_sweep(const ScoredVectors& career, const CareerGrid& grid,
                                     Pivot pivot = Pivot::Disruption);

// Per grid point: mean of defined taus across authors plus the count of
// contributing authors. Summation order is normalized, so the result is
// exactly independent of input order.
struct AggregateCurve {
    std::vector<double> percentiles;
    std::vector<double> mean_tau;       // kUndefined where no author contributed
    std::vector<std::uint64_t> counts;
};

AggregateCurve aggregate_sweeps(std::span<const std::vector<SweepPoint>> reports);

// Overlapping-bucket share curve: the paper at within-career disruption
// rank r covers percentile interval ((r-1)*100/n, r*100/n]; percentile p
// collects every paper whose interval intersects (p-1, p]. For n < 100 the
// buckets overlap and the curve sums to >= 1; for n >= 100 paper r falls in
// the single bucket ceil(r*100/n) and the curve sums to 1.
ShareCurve career_share_curve(const ScoredVectors& career);

}  // namespace disruptkit
