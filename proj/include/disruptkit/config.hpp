#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "disruptkit/careers.hpp"
#include "disruptkit/corpus.hpp"
#include "disruptkit/nullmodels.hpp"
#include "disruptkit/synth.hpp"
#include "disruptkit/types.hpp"

namespace disruptkit {

enum class PivotChoice { Disruption, Impact, Both };

// Declarative pipeline configuration, read from a flat `key = value` file
// with `#` comments and dotted section keys. Unknown keys and constraint
// violations raise ConfigError naming the key.
struct PipelineConfig {
    // plumbing (excluded from the config hash)
    std::string out_dir = "out";
    unsigned threads = 0;  // 0 = resolve from environment/hardware
    std::string cache;     // empty = <out_dir>/corpus.dkg

    std::uint64_t seed = 1;

    // corpus
    std::string input_metadata;
    MetadataFormat metadata_format = MetadataFormat::Csv;
    std::string input_edges;
    EdgeFormat edges_format = EdgeFormat::Tsv;
    YearRange corpus_window{1986, 2015};

    // scoring
    std::optional<YearRange> focal_window;  // default: corpus_window
    SubsequentRule subsequent = SubsequentRule::Geq;
    int c5_window = 5;
    ScoreVariant variant = ScoreVariant::Raw;

    // sweeps
    PivotChoice sweep_pivot = PivotChoice::Both;
    std::vector<double> sweep_grid;  // default: 1..100 step 1
    std::vector<YearRange> year_groups;

    // careers
    EligibilityCriteria career_criteria;
    CareerGrid career_grid = CareerGrid::defaults();
    std::uint32_t prolific_min_pubs = 100;
    Pivot career_pivot = Pivot::Disruption;

    // null models
    NullMode null_mode = NullMode::ShuffleC5;
    NullScope null_scope = NullScope::Global;
    std::uint32_t null_realizations = 20;
    Pivot null_pivot = Pivot::Disruption;

    // synthetic generator
    SynthParams synth;

    std::string cache_path() const {
        return cache.empty() ? out_dir + "/corpus.dkg" : cache;
    }
    YearRange effective_focal_window() const {
        return focal_window.value_or(corpus_window);
    }

    // Sorted key=value serialization of every semantic field (defaults
    // included); out_dir, threads and cache are plumbing and excluded.
    std::string canonical() const;
    std::uint64_t config_hash() const;  // FNV-1a 64 over canonical()

    static PipelineConfig from_file(const std::string& path);
};

// Grid syntax: comma-separated items, each a number or an a:b:s progression
// (a, a+s, ..., capped at b). Exposed for tests.
std::vector<double> parse_grid(const std::string& text, const std::string& key);

// "A..B" inclusive year range.
YearRange parse_year_range(const std::string& text, const std::string& key);

}  // namespace disruptkit
