#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "disruptkit/corpus.hpp"
#include "disruptkit/types.hpp"

namespace disruptkit {

// Counts of subsequent papers citing only the focal paper (n_i), both the
// focal paper and at least one of its references (n_j), or references only
// (n_k). Their sum is the size of the subsequent set.
struct GroupCounts {
    std::uint32_t n_i = 0;
    std::uint32_t n_j = 0;
    std::uint32_t n_k = 0;

    std::uint64_t total() const {
        return std::uint64_t{n_i} + n_j + n_k;
    }
    bool operator==(const GroupCounts&) const = default;
};

// Per-paper scores for one corpus, aligned with graph row ids. d and d_z are
// kUndefined for papers outside the focal window (or with an empty
// subsequent set); c5 is defined for every paper.
struct DisruptionTable {
    std::vector<std::int32_t> years;
    std::vector<GroupCounts> counts;
    std::vector<double> d;
    std::vector<double> d_z;
    std::vector<std::uint32_t> c5;

    std::size_t n_papers() const { return years.size(); }
};

// Reusable per-worker scratch for classify_subsequent: epoch-stamped marker
// array, O(n) once per worker instead of a clear per focal paper.
class SubsequentScratch {
  public:
    explicit SubsequentScratch(std::size_t n_papers) : stamp_(n_papers, 0) {}

    friend GroupCounts classify_subsequent(const CitationGraph& graph, PaperId focal,
                                           SubsequentRule rule, SubsequentScratch& scratch);

  private:
    std::vector<std::uint32_t> stamp_;
    std::uint32_t epoch_ = 0;
};

// Partition the subsequent set of `focal` — papers p != focal with
// year(p) >= year(focal) (or > under SubsequentRule::Gt) citing the focal
// paper or at least one of its references — by the (cites focal, cites a
// reference) flags. No time-window cutoff.
GroupCounts classify_subsequent(const CitationGraph& graph, PaperId focal, SubsequentRule rule,
                                SubsequentScratch& scratch);
GroupCounts classify_subsequent(const CitationGraph& graph, PaperId focal,
                                SubsequentRule rule = SubsequentRule::Geq);

// (n_i - n_j) / (n_i + n_j + n_k); kUndefined when the denominator is zero.
double disruption_score(const GroupCounts& counts);

// Same quantity via the alternative formula (1/n) * sum(-2*f_i*b_i + f_i)
// over the subsequent set, evaluated by direct adjacency membership tests.
// Kept as an independent route for equivalence checks.
double disruption_score_alt(const CitationGraph& graph, PaperId focal,
                            SubsequentRule rule = SubsequentRule::Geq);

// Citers of `focal` with 0 <= year(citer) - year(focal) <= window_years.
// Time-anomalous citers (negative delta) are excluded.
std::uint32_t five_year_citations(const CitationGraph& graph, PaperId focal,
                                  int window_years = 5);

// Score the whole corpus: counts and d for papers inside focal_window
// (kUndefined outside), c5 for every paper. d_z is left undefined; call
// standardize_by_year afterwards. Output is identical for any thread count.
DisruptionTable compute_all_disruptions(const CitationGraph& graph, YearRange focal_window,
                                        SubsequentRule rule = SubsequentRule::Geq,
                                        int c5_window = 5, unsigned threads = 0);

// Fill d_z as the per-publication-year z-score of d (population standard
// deviation) over papers with defined d; years with zero spread map to 0.
void standardize_by_year(DisruptionTable& table);

}  // namespace disruptkit
