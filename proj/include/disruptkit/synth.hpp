#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "disruptkit/corpus.hpp"
#include "disruptkit/disruption.hpp"
#include "disruptkit/types.hpp"

namespace disruptkit {

// Parameters for the two generator modes.
//
// Random mode: n_papers papers with years spread ascending over `years`;
// each paper draws refs_min..refs_max references from earlier papers,
// picking targets by preferential attachment with weight alpha, else
// uniformly. Used for oracle sweeps and load tests.
//
// Planted mode: n_papers focal papers in a single focal year, each citing
// one unique reference, plus shared citer papers one year later that
// realize exact per-focal (n_i, n_j, n_k) targets. Focals are spread over
// `levels` disruption levels (0 = one level per focal); the coupling rho
// links each focal's c5 to its disruption level: +1 monotone, -1
// antitone, |rho| < 1 shuffles a (1-|rho|) fraction of the c5 targets.
struct SynthParams {
    enum class Mode { Random, Planted };

    Mode mode = Mode::Random;
    std::uint64_t n_papers = 1000;
    YearRange years{1986, 2015};
    std::uint32_t refs_min = 1;
    std::uint32_t refs_max = 10;
    double alpha = 0.0;
    double rho = 1.0;
    std::uint32_t levels = 0;
    std::uint32_t author_pool = 0;  // random mode: >0 assigns 1..3 authors per paper
    std::uint64_t seed = 1;

    // Window selecting exactly the papers meant to be ranked.
    YearRange focal_window() const {
        return mode == Mode::Planted ? YearRange{years.lo + 1, years.lo + 1} : years;
    }
};

using SynthRecordSink = std::function<void(PaperRecord&&)>;
using SynthEdgeSink = std::function<void(const std::string&, const std::string&)>;

// Stream a corpus; either sink may be null. Deterministic for a given
// params.seed, so two passes (records-only, then edges-only) see the same
// corpus. Infeasible parameters raise GenerationError.
void generate_corpus(const SynthParams& params, const SynthRecordSink& record_sink,
                     const SynthEdgeSink& edge_sink);

// Materialized convenience form for tests and small corpora.
struct SynthCorpus {
    std::vector<PaperRecord> records;
    std::vector<std::pair<std::string, std::string>> edges;
    YearRange focal_window{0, 0};
};

SynthCorpus generate_corpus(const SynthParams& params);

// Naive CD reference: scan every paper, evaluate the (cites focal, cites a
// reference) flags by direct adjacency membership tests, apply the
// subsequent-year rule. Correctness over speed.
std::pair<GroupCounts, double> brute_force_cd(const CitationGraph& graph, PaperId focal,
                                              SubsequentRule rule = SubsequentRule::Geq);

// Naive tau-b by full pair enumeration with tie corrections.
double brute_force_kendall(std::span<const double> x, std::span<const double> y);

}  // namespace disruptkit
