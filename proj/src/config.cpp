#include "disruptkit/config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

#include "disruptkit/report.hpp"
#include "disruptkit/rng.hpp"

namespace disruptkit {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return {};
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

[[noreturn]] void bad_value(const std::string& key, const std::string& value,
                            const std::string& constraint) {
    throw ConfigError("config key '" + key + "': value '" + value + "' " + constraint);
}

long long parse_int(const std::string& key, const std::string& value, long long lo,
                    long long hi) {
    char* end = nullptr;
    const long long v = std::strtoll(value.c_str(), &end, 10);
    if (end == value.c_str() || *end != '\0')
        bad_value(key, value, "must be an integer");
    if (v < lo || v > hi)
        bad_value(key, value,
                  "must be in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
    return v;
}

std::uint64_t parse_u64(const std::string& key, const std::string& value) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(value.c_str(), &end, 10);
    if (end == value.c_str() || *end != '\0' || value.front() == '-')
        bad_value(key, value, "must be a non-negative integer");
    return v;
}

double parse_real(const std::string& key, const std::string& value, double lo, double hi) {
    char* end = nullptr;
    const double v = std::strtod(value.c_str(), &end);
    if (end == value.c_str() || *end != '\0' || std::isnan(v))
        bad_value(key, value, "must be a real number");
    if (v < lo || v > hi)
        bad_value(key, value,
                  "must be in [" + format_double(lo) + ", " + format_double(hi) + "]");
    return v;
}

}  // namespace

YearRange parse_year_range(const std::string& text, const std::string& key) {
    const auto sep = text.find("..");
    if (sep == std::string::npos)
        bad_value(key, text, "must be an inclusive range 'A..B'");
    YearRange range;
    range.lo = static_cast<int>(parse_int(key, trim(text.substr(0, sep)), -100000, 100000));
    range.hi = static_cast<int>(parse_int(key, trim(text.substr(sep + 2)), -100000, 100000));
    if (range.lo > range.hi) bad_value(key, text, "must satisfy A <= B");
    return range;
}

std::vector<double> parse_grid(const std::string& text, const std::string& key) {
    std::vector<double> grid;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty()) bad_value(key, text, "contains an empty grid item");
        const auto c1 = item.find(':');
        if (c1 == std::string::npos) {
            grid.push_back(parse_real(key, item, 1e-9, 100.0));
            continue;
        }
        const auto c2 = item.find(':', c1 + 1);
        if (c2 == std::string::npos)
            bad_value(key, item, "must be a value or an 'a:b:s' progression");
        const double a = parse_real(key, trim(item.substr(0, c1)), 1e-9, 100.0);
        const double b = parse_real(key, trim(item.substr(c1 + 1, c2 - c1 - 1)), 1e-9, 100.0);
        const double s = parse_real(key, trim(item.substr(c2 + 1)), 1e-9, 100.0);
        for (double v = a; v <= b + 1e-9; v += s) grid.push_back(std::min(v, 100.0));
    }
    if (grid.empty()) bad_value(key, text, "must contain at least one percentile");
    for (std::size_t i = 1; i < grid.size(); ++i) {
        if (grid[i] <= grid[i - 1])
            bad_value(key, text, "percentiles must be strictly increasing");
    }
    return grid;
}

namespace {

std::vector<YearRange> parse_range_list(const std::string& text, const std::string& key) {
    std::vector<YearRange> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(parse_year_range(item, key));
    }
    return out;
}

std::string range_text(YearRange r) {
    return std::to_string(r.lo) + ".." + std::to_string(r.hi);
}

std::string grid_text(const std::vector<double>& grid) {
    std::string out;
    for (const double v : grid) {
        if (!out.empty()) out += ',';
        out += format_double(v);
    }
    return out;
}

void apply_key(PipelineConfig& cfg, const std::string& key, const std::string& value) {
    if (key == "out_dir") {
        cfg.out_dir = value;
    } else if (key == "threads") {
        cfg.threads = static_cast<unsigned>(parse_int(key, value, 0, 4096));
    } else if (key == "cache") {
        cfg.cache = value;
    } else if (key == "seed") {
        cfg.seed = parse_u64(key, value);
    } else if (key == "input.metadata") {
        cfg.input_metadata = value;
    } else if (key == "input.metadata_format") {
        if (value == "csv")
            cfg.metadata_format = MetadataFormat::Csv;
        else if (value == "jsonl")
            cfg.metadata_format = MetadataFormat::Jsonl;
        else if (value == "aminer")
            cfg.metadata_format = MetadataFormat::AminerJson;
        else
            bad_value(key, value, "must be one of csv|jsonl|aminer");
    } else if (key == "input.edges") {
        cfg.input_edges = value;
    } else if (key == "input.edges_format") {
        if (value == "tsv")
            cfg.edges_format = EdgeFormat::Tsv;
        else if (value == "aminer")
            cfg.edges_format = EdgeFormat::AminerJson;
        else
            bad_value(key, value, "must be one of tsv|aminer");
    } else if (key == "corpus.year_window") {
        cfg.corpus_window = parse_year_range(value, key);
    } else if (key == "score.focal_window") {
        cfg.focal_window = parse_year_range(value, key);
    } else if (key == "score.subsequent") {
        if (value == "geq")
            cfg.subsequent = SubsequentRule::Geq;
        else if (value == "gt")
            cfg.subsequent = SubsequentRule::Gt;
        else
            bad_value(key, value, "must be one of geq|gt");
    } else if (key == "score.c5_window") {
        cfg.c5_window = static_cast<int>(parse_int(key, value, 0, 1000));
    } else if (key == "score.variant") {
        if (value == "raw")
            cfg.variant = ScoreVariant::Raw;
        else if (value == "dz")
            cfg.variant = ScoreVariant::Standardized;
        else
            bad_value(key, value, "must be one of raw|dz");
    } else if (key == "sweep.pivot") {
        if (value == "disruption")
            cfg.sweep_pivot = PivotChoice::Disruption;
        else if (value == "impact")
            cfg.sweep_pivot = PivotChoice::Impact;
        else if (value == "both")
            cfg.sweep_pivot = PivotChoice::Both;
        else
            bad_value(key, value, "must be one of disruption|impact|both");
    } else if (key == "sweep.grid") {
        cfg.sweep_grid = parse_grid(value, key);
    } else if (key == "sweep.year_groups") {
        cfg.year_groups = parse_range_list(value, key);
    } else if (key == "careers.start_window") {
        cfg.career_criteria.start_window = parse_year_range(value, key);
    } else if (key == "careers.min_span") {
        cfg.career_criteria.min_span_years = static_cast<int>(parse_int(key, value, 0, 1000));
    } else if (key == "careers.min_pubs") {
        cfg.career_criteria.min_pubs_exclusive =
            static_cast<std::uint32_t>(parse_int(key, value, 0, 1000000));
    } else if (key == "careers.max_gap") {
        cfg.career_criteria.max_gap_years = static_cast<int>(parse_int(key, value, 0, 1000));
    } else if (key == "careers.grid") {
        cfg.career_grid.percentiles = parse_grid(value, key);
        if (cfg.career_grid.percentiles.back() != 100.0)
            bad_value(key, value, "must end at 100");
    } else if (key == "careers.prolific_min_pubs") {
        cfg.prolific_min_pubs = static_cast<std::uint32_t>(parse_int(key, value, 0, 1000000));
    } else if (key == "careers.pivot") {
        if (value == "disruption")
            cfg.career_pivot = Pivot::Disruption;
        else if (value == "impact")
            cfg.career_pivot = Pivot::Impact;
        else
            bad_value(key, value, "must be one of disruption|impact");
    } else if (key == "null.mode") {
        if (value == "shuffle_c5")
            cfg.null_mode = NullMode::ShuffleC5;
        else if (value == "shuffle_d")
            cfg.null_mode = NullMode::ShuffleD;
        else
            bad_value(key, value, "must be one of shuffle_c5|shuffle_d");
    } else if (key == "null.scope") {
        if (value == "global")
            cfg.null_scope = NullScope::Global;
        else if (value == "per_author")
            cfg.null_scope = NullScope::PerAuthor;
        else
            bad_value(key, value, "must be one of global|per_author");
    } else if (key == "null.realizations") {
        cfg.null_realizations = static_cast<std::uint32_t>(parse_int(key, value, 1, 1000000));
    } else if (key == "null.pivot") {
        if (value == "disruption")
            cfg.null_pivot = Pivot::Disruption;
        else if (value == "impact")
            cfg.null_pivot = Pivot::Impact;
        else
            bad_value(key, value, "must be one of disruption|impact");
    } else if (key == "synth.mode") {
        if (value == "random")
            cfg.synth.mode = SynthParams::Mode::Random;
        else if (value == "planted")
            cfg.synth.mode = SynthParams::Mode::Planted;
        else
            bad_value(key, value, "must be one of random|planted");
    } else if (key == "synth.n_papers") {
        cfg.synth.n_papers = parse_u64(key, value);
    } else if (key == "synth.years") {
        cfg.synth.years = parse_year_range(value, key);
    } else if (key == "synth.refs") {
        const YearRange r = parse_year_range(value, key);
        if (r.lo < 0) bad_value(key, value, "must be non-negative");
        cfg.synth.refs_min = static_cast<std::uint32_t>(r.lo);
        cfg.synth.refs_max = static_cast<std::uint32_t>(r.hi);
    } else if (key == "synth.alpha") {
        cfg.synth.alpha = parse_real(key, value, 0.0, 1.0);
    } else if (key == "synth.rho") {
        cfg.synth.rho = parse_real(key, value, -1.0, 1.0);
    } else if (key == "synth.levels") {
        cfg.synth.levels = static_cast<std::uint32_t>(parse_int(key, value, 0, 1u << 30));
    } else if (key == "synth.author_pool") {
        cfg.synth.author_pool = static_cast<std::uint32_t>(parse_int(key, value, 0, 1u << 30));
    } else {
        throw ConfigError("unknown config key '" + key + "'");
    }
}

}  // namespace

PipelineConfig PipelineConfig::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);

    PipelineConfig cfg;
    cfg.sweep_grid.clear();
    for (int k = 1; k <= 100; ++k) cfg.sweep_grid.push_back(k);

    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(line_no) +
                              " is not 'key = value': " + line);
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty())
            throw ConfigError("config line " + std::to_string(line_no) + " has an empty key");
        apply_key(cfg, key, value);
    }
    // the generator's seed follows the pipeline seed
    cfg.synth.seed = cfg.seed;
    return cfg;
}

std::string PipelineConfig::canonical() const {
    std::map<std::string, std::string> kv;
    kv["seed"] = std::to_string(seed);
    kv["input.metadata"] = input_metadata;
    kv["input.metadata_format"] = metadata_format == MetadataFormat::Csv      ? "csv"
                                  : metadata_format == MetadataFormat::Jsonl ? "jsonl"
                                                                             : "aminer";
    kv["input.edges"] = input_edges;
    kv["input.edges_format"] = edges_format == EdgeFormat::Tsv ? "tsv" : "aminer";
    kv["corpus.year_window"] = range_text(corpus_window);
    kv["score.focal_window"] = range_text(effective_focal_window());
    kv["score.subsequent"] = to_string(subsequent);
    kv["score.c5_window"] = std::to_string(c5_window);
    kv["score.variant"] = to_string(variant);
    kv["sweep.pivot"] = sweep_pivot == PivotChoice::Disruption ? "disruption"
                        : sweep_pivot == PivotChoice::Impact   ? "impact"
                                                               : "both";
    kv["sweep.grid"] = grid_text(sweep_grid);
    {
        std::string groups;
        for (const auto& g : year_groups) {
            if (!groups.empty()) groups += ',';
            groups += range_text(g);
        }
        kv["sweep.year_groups"] = groups;
    }
    kv["careers.start_window"] = range_text(career_criteria.start_window);
    kv["careers.min_span"] = std::to_string(career_criteria.min_span_years);
    kv["careers.min_pubs"] = std::to_string(career_criteria.min_pubs_exclusive);
    kv["careers.max_gap"] = std::to_string(career_criteria.max_gap_years);
    kv["careers.grid"] = grid_text(career_grid.percentiles);
    kv["careers.prolific_min_pubs"] = std::to_string(prolific_min_pubs);
    kv["careers.pivot"] = to_string(career_pivot);
    kv["null.mode"] = to_string(null_mode);
    kv["null.scope"] = to_string(null_scope);
    kv["null.realizations"] = std::to_string(null_realizations);
    kv["null.pivot"] = to_string(null_pivot);
    kv["synth.mode"] = synth.mode == SynthParams::Mode::Random ? "random" : "planted";
    kv["synth.n_papers"] = std::to_string(synth.n_papers);
    kv["synth.years"] = range_text(synth.years);
    kv["synth.refs"] =
        std::to_string(synth.refs_min) + ".." + std::to_string(synth.refs_max);
    kv["synth.alpha"] = format_double(synth.alpha);
    kv["synth.rho"] = format_double(synth.rho);
    kv["synth.levels"] = std::to_string(synth.levels);
    kv["synth.author_pool"] = std::to_string(synth.author_pool);

    std::string out;
    for (const auto& [key, value] : kv) {
        out += key;
        out += '=';
        out += value;
        out += '\n';
    }
    return out;
}

std::uint64_t PipelineConfig::config_hash() const {
    return fnv1a64(canonical());
}

}  // namespace disruptkit
