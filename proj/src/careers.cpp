#include "disruptkit/careers.hpp"

#include <algorithm>
#include <stdexcept>

namespace disruptkit {

CareerGrid CareerGrid::defaults() {
    CareerGrid grid;
    grid.percentiles.push_back(1.0);
    for (int k = 5; k <= 100; k += 5) grid.percentiles.push_back(k);
    return grid;
}

std::vector<CareerProfile> build_profiles(const CitationGraph& graph) {
    const std::size_t n_authors = graph.author_table.size();
    std::vector<std::uint64_t> counts(n_authors + 1, 0);
    for (const std::uint32_t a : graph.author_refs) ++counts[a + 1];
    for (std::size_t a = 0; a < n_authors; ++a) counts[a + 1] += counts[a];

    // Papers are visited in row order, which is (year, external_id) order,
    // so each author's list comes out already sorted.
    std::vector<std::uint32_t> papers(graph.author_refs.size());
    {
        std::vector<std::uint64_t> fill(counts.begin(), counts.end() - 1);
        for (std::uint32_t p = 0; p < graph.n_papers(); ++p)
            for (const std::uint32_t a : graph.authors_of(p)) papers[fill[a]++] = p;
    }

    std::vector<CareerProfile> profiles;
    profiles.reserve(n_authors);
    for (std::size_t a = 0; a < n_authors; ++a) {
        CareerProfile prof;
        prof.author_id = graph.author_table[a];
        prof.papers.assign(papers.begin() + static_cast<std::ptrdiff_t>(counts[a]),
                           papers.begin() + static_cast<std::ptrdiff_t>(counts[a + 1]));
        if (prof.papers.empty()) continue;
        prof.first_year = graph.year(prof.papers.front());
        prof.last_year = graph.year(prof.papers.back());
        prof.n_pubs = static_cast<std::uint32_t>(prof.papers.size());
        for (std::size_t i = 1; i < prof.papers.size(); ++i) {
            prof.max_gap = std::max(prof.max_gap, graph.year(prof.papers[i]) -
                                                      graph.year(prof.papers[i - 1]));
        }
        profiles.push_back(std::move(prof));
    }
    return profiles;
}

bool is_eligible(const CareerProfile& profile, const EligibilityCriteria& criteria) {
    return criteria.start_window.contains(profile.first_year) &&
           profile.last_year - profile.first_year >= criteria.min_span_years &&
           profile.n_pubs > criteria.min_pubs_exclusive &&
           profile.max_gap <= criteria.max_gap_years;
}

std::vector<CareerProfile> filter_authors(std::vector<CareerProfile> profiles,
                                          const EligibilityCriteria& criteria) {
    std::erase_if(profiles,
                  [&](const CareerProfile& p) { return !is_eligible(p, criteria); });
    return profiles;
}

std::vector<CareerProfile> prolific_filter(std::vector<CareerProfile> profiles,
                                           std::uint32_t min_pubs) {
    std::erase_if(profiles, [&](const CareerProfile& p) { return p.n_pubs <= min_pubs; });
    return profiles;
}

ScoredVectors extract_career(const CareerProfile& profile, const DisruptionTable& table,
                             const CitationGraph& graph, ScoreVariant variant) {
    const auto& scores = variant == ScoreVariant::Raw ? table.d : table.d_z;
    ScoredVectors career;
    for (const std::uint32_t p : profile.papers) {
        if (!is_defined(scores[p])) continue;
        career.score.push_back(scores[p]);
        career.c5.push_back(table.c5[p]);
        career.ids.push_back(graph.external_id(p));
    }
    return career;
}

std::vector<SweepPoint> career_sweep(const ScoredVectors& career, const CareerGrid& grid,
                                     Pivot pivot) {
    const RankVector by_score = rank_by(career.score, career.ids);
    const RankVector by_c5 = rank_by(career.c5, career.ids);
    const RankVector& primary = pivot == Pivot::Disruption ? by_score : by_c5;
    const RankVector& other = pivot == Pivot::Disruption ? by_c5 : by_score;
    return percentile_sweep(primary, other, grid.percentiles);
}

AggregateCurve aggregate_sweeps(std::span<const std::vector<SweepPoint>> reports) {
    AggregateCurve curve;
    if (reports.empty()) return curve;
    const std::size_t n_points = reports.front().size();
    for (const auto& r : reports) {
        if (r.size() != n_points)
            throw std::invalid_argument("aggregate_sweeps: reports use different grids");
    }

    curve.percentiles.resize(n_points);
    curve.mean_tau.assign(n_points, kUndefined);
    curve.counts.assign(n_points, 0);
    std::vector<double> taus;
    for (std::size_t k = 0; k < n_points; ++k) {
        curve.percentiles[k] = reports.front()[k].percentile;
        taus.clear();
        for (const auto& r : reports) {
            if (r[k].percentile != curve.percentiles[k])
                throw std::invalid_argument("aggregate_sweeps: reports use different grids");
            if (is_defined(r[k].tau)) taus.push_back(r[k].tau);
        }
        curve.counts[k] = taus.size();
        if (!taus.empty()) {
            // sorted summation: the mean is independent of report order
            std::sort(taus.begin(), taus.end());
            double sum = 0.0;
            for (const double t : taus) sum += t;
            curve.mean_tau[k] = sum / static_cast<double>(taus.size());
        }
    }
    return curve;
}

ShareCurve career_share_curve(const ScoredVectors& career) {
    const std::uint64_t n = career.size();
    ShareCurve curve;
    curve.share.assign(kPercentileBuckets, 0.0);
    if (n == 0) {
        curve.degenerate = true;
        return curve;
    }

    const RankVector by_score = rank_by(career.score, career.ids);
    double total = 0.0;
    for (const double v : career.c5) total += v;
    if (total == 0.0) {
        curve.degenerate = true;
        return curve;
    }

    for (std::uint64_t pos = 0; pos < n; ++pos) {
        const std::uint64_t r = pos + 1;  // within-career rank
        const double weight = career.c5[by_score.order[pos]] / total;
        if (n >= kPercentileBuckets) {
            const std::uint64_t b = (r * kPercentileBuckets + n - 1) / n;  // ceil
            curve.share[b - 1] += weight;
        } else {
            // interval ((r-1)*100/n, r*100/n] vs (p-1, p], compared in
            // integers to keep the overlap test exact
            for (std::uint64_t p = 1; p <= kPercentileBuckets; ++p) {
                if ((r - 1) * kPercentileBuckets < p * n && (p - 1) * n < r * kPercentileBuckets)
                    curve.share[p - 1] += weight;
            }
        }
    }
    return curve;
}

}  // namespace disruptkit
