#include "disruptkit/disruption.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "disruptkit/parallel.hpp"

namespace disruptkit {

namespace {

inline bool is_subsequent(int year, int focal_year, SubsequentRule rule) {
    return rule == SubsequentRule::Geq ? year >= focal_year : year > focal_year;
}

}  // namespace

GroupCounts classify_subsequent(const CitationGraph& graph, PaperId focal, SubsequentRule rule,
                                SubsequentScratch& scratch) {
    auto& stamp = scratch.stamp_;
    if (++scratch.epoch_ == 0) {
        std::fill(stamp.begin(), stamp.end(), 0u);
        scratch.epoch_ = 1;
    }
    const std::uint32_t epoch = scratch.epoch_;
    const int focal_year = graph.year(focal);

    std::uint32_t b_count = 0;
    for (const PaperId ref : graph.references(focal)) {
        for (const PaperId p : graph.citers(ref)) {
            if (p == focal || !is_subsequent(graph.year(p), focal_year, rule)) continue;
            if (stamp[p] != epoch) {
                stamp[p] = epoch;
                ++b_count;
            }
        }
    }

    std::uint32_t f_count = 0;
    std::uint32_t n_j = 0;
    for (const PaperId p : graph.citers(focal)) {
        if (!is_subsequent(graph.year(p), focal_year, rule)) continue;
        ++f_count;
        if (stamp[p] == epoch) ++n_j;
    }
    return {f_count - n_j, n_j, b_count - n_j};
}

GroupCounts classify_subsequent(const CitationGraph& graph, PaperId focal, SubsequentRule rule) {
    SubsequentScratch scratch(graph.n_papers());
    return classify_subsequent(graph, focal, rule, scratch);
}

double disruption_score(const GroupCounts& counts) {
    const std::uint64_t total = counts.total();
    if (total == 0) return kUndefined;
    return (static_cast<double>(counts.n_i) - static_cast<double>(counts.n_j)) /
           static_cast<double>(total);
}

double disruption_score_alt(const CitationGraph& graph, PaperId focal, SubsequentRule rule) {
    const int focal_year = graph.year(focal);
    const auto focal_refs = graph.references(focal);

    std::vector<PaperId> subsequent;
    for (const PaperId ref : focal_refs) {
        for (const PaperId p : graph.citers(ref)) {
            if (p != focal && is_subsequent(graph.year(p), focal_year, rule))
                subsequent.push_back(p);
        }
    }
    for (const PaperId p : graph.citers(focal)) {
        if (is_subsequent(graph.year(p), focal_year, rule)) subsequent.push_back(p);
    }
    std::sort(subsequent.begin(), subsequent.end());
    subsequent.erase(std::unique(subsequent.begin(), subsequent.end()), subsequent.end());
    if (subsequent.empty()) return kUndefined;

    // Flags recomputed from the out-adjacency, independent of the counting
    // route used by classify_subsequent.
    double sum = 0.0;
    for (const PaperId p : subsequent) {
        const bool f = graph.cites(p, focal);
        bool b = false;
        const auto p_refs = graph.references(p);
        auto it = focal_refs.begin();
        for (const PaperId r : p_refs) {
            while (it != focal_refs.end() && *it < r) ++it;
            if (it != focal_refs.end() && *it == r) {
                b = true;
                break;
            }
        }
        if (f) sum += b ? -1.0 : 1.0;
    }
    return sum / static_cast<double>(subsequent.size());
}

std::uint32_t five_year_citations(const CitationGraph& graph, PaperId focal, int window_years) {
    const int focal_year = graph.year(focal);
    std::uint32_t count = 0;
    for (const PaperId p : graph.citers(focal)) {
        const int delta = graph.year(p) - focal_year;
        if (delta >= 0 && delta <= window_years) ++count;
    }
    return count;
}

DisruptionTable compute_all_disruptions(const CitationGraph& graph, YearRange focal_window,
                                        SubsequentRule rule, int c5_window, unsigned threads) {
    const std::size_t n = graph.n_papers();
    DisruptionTable table;
    table.years.assign(graph.years.begin(), graph.years.end());
    table.counts.resize(n);
    table.d.assign(n, kUndefined);
    table.d_z.assign(n, kUndefined);
    table.c5.resize(n);

    parallel_for_blocks(n, resolve_threads(threads), [&](std::size_t begin, std::size_t end) {
        SubsequentScratch scratch(n);
        for (std::size_t p = begin; p < end; ++p) {
            const auto id = static_cast<PaperId>(p);
            table.c5[p] = five_year_citations(graph, id, c5_window);
            if (!focal_window.contains(graph.year(id))) continue;
            const GroupCounts counts = classify_subsequent(graph, id, rule, scratch);
            table.counts[p] = counts;
            table.d[p] = disruption_score(counts);
        }
    });
    return table;
}

void standardize_by_year(DisruptionTable& table) {
    struct YearStats {
        std::uint64_t count = 0;
        double sum = 0.0;
        double lo = 1.0, hi = -1.0;
        double mean = 0.0, sigma = 0.0;
        double sq = 0.0;
    };
    std::map<int, YearStats> by_year;

    const std::size_t n = table.n_papers();
    for (std::size_t p = 0; p < n; ++p) {
        if (!is_defined(table.d[p])) continue;
        auto& s = by_year[table.years[p]];
        ++s.count;
        s.sum += table.d[p];
        s.lo = std::min(s.lo, table.d[p]);
        s.hi = std::max(s.hi, table.d[p]);
    }
    for (auto& [year, s] : by_year) s.mean = s.sum / static_cast<double>(s.count);
    for (std::size_t p = 0; p < n; ++p) {
        if (!is_defined(table.d[p])) continue;
        auto& s = by_year[table.years[p]];
        const double delta = table.d[p] - s.mean;
        s.sq += delta * delta;
    }
    for (auto& [year, s] : by_year) {
        // lo == hi: every score identical, sigma is exactly zero regardless
        // of accumulated rounding in sq.
        s.sigma = s.lo == s.hi ? 0.0 : std::sqrt(s.sq / static_cast<double>(s.count));
    }
    for (std::size_t p = 0; p < n; ++p) {
        if (!is_defined(table.d[p])) continue;
        const auto& s = by_year.find(table.years[p])->second;
        table.d_z[p] = s.sigma > 0.0 ? (table.d[p] - s.mean) / s.sigma : 0.0;
    }
}

}  // namespace disruptkit
