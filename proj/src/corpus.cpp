#include "disruptkit/corpus.hpp"

#include <algorithm>
#include <bit>
#include <cstring>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "disruptkit/rng.hpp"

namespace disruptkit {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.back() == '\r' || s.back() == '\n' || s.back() == ' ' || s.back() == '\t'))
        s.remove_suffix(1);
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    return s;
}

bool parse_year(std::string_view s, int& out) {
    s = trim(s);
    if (s.empty()) return false;
    int sign = 1;
    std::size_t i = 0;
    if (s[0] == '-') {
        sign = -1;
        i = 1;
        if (s.size() == 1) return false;
    }
    long v = 0;
    for (; i < s.size(); ++i) {
        if (s[i] < '0' || s[i] > '9') return false;
        v = v * 10 + (s[i] - '0');
        if (v > 1000000) return false;
    }
    out = static_cast<int>(sign * v);
    return true;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = s.find(sep, start);
        if (pos == std::string_view::npos) {
            out.push_back(s.substr(start));
            break;
        }
        out.push_back(s.substr(start, pos - start));
        start = pos + 1;
    }
    return out;
}

std::ifstream open_or_throw(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open file: " + path);
    return in;
}

// SAX walker for the AMiner-style dump: a JSON array of records carrying
// `id`, `year`, `authors[].id` and `references[]`. Numeric ids are rendered
// as decimal strings. Streams, so arbitrarily large dumps never build a DOM.
class AminerWalker : public nlohmann::json::json_sax_t {
  public:
    std::function<void(PaperRecord&&)> on_record;                       // may be null
    std::function<void(const std::string&, const std::string&)> on_edge;  // may be null
    std::uint64_t malformed = 0;

    bool start_object(std::size_t) override {
        ++object_depth_;
        if (object_depth_ == 1 && array_depth_ == 1) {
            record_ = PaperRecord{};
            record_valid_ = true;
            refs_.clear();
        }
        return true;
    }

    bool end_object() override {
        if (object_depth_ == 1 && array_depth_ == 1) {
            if (record_.external_id.empty()) {
                ++malformed;
            } else {
                if (on_edge) {
                    for (const auto& r : refs_) on_edge(record_.external_id, r);
                }
                if (on_record) on_record(std::move(record_));
            }
            record_valid_ = false;
        }
        --object_depth_;
        return true;
    }

    bool start_array(std::size_t) override {
        ++array_depth_;
        if (record_valid_ && object_depth_ == 1) {
            if (key_ == "references")
                in_refs_ = true;
            else if (key_ == "authors")
                in_authors_ = true;
        }
        return true;
    }

    bool end_array() override {
        if (array_depth_ == 2 && object_depth_ == 1) {
            in_refs_ = false;
            in_authors_ = false;
        }
        --array_depth_;
        return true;
    }

    bool key(string_t& val) override {
        key_ = val;
        return true;
    }

    bool string(string_t& val) override {
        scalar(val);
        return true;
    }
    bool number_integer(number_integer_t val) override {
        scalar(std::to_string(val));
        return true;
    }
    bool number_unsigned(number_unsigned_t val) override {
        scalar(std::to_string(val));
        return true;
    }
    bool number_float(number_float_t val, const string_t&) override {
        scalar(std::to_string(static_cast<long long>(val)));
        return true;
    }
    bool boolean(bool) override { return true; }
    bool null() override { return true; }
    bool binary(binary_t&) override { return true; }
    bool parse_error(std::size_t pos, const std::string&, const nlohmann::json::exception& ex) override {
        throw DataError("JSON parse error at byte " + std::to_string(pos) + ": " + ex.what());
    }

  private:
    void scalar(const std::string& val) {
        if (!record_valid_) return;
        if (in_refs_ && array_depth_ == 2) {
            refs_.push_back(val);
        } else if (in_authors_ && object_depth_ == 2 && key_ == "id") {
            record_.authors.push_back(val);
        } else if (object_depth_ == 1 && array_depth_ == 1) {
            if (key_ == "id") {
                record_.external_id = val;
            } else if (key_ == "year") {
                int y;
                if (parse_year(val, y)) record_.year = y;
            }
        }
    }

    PaperRecord record_;
    std::vector<std::string> refs_;
    std::string key_;
    int object_depth_ = 0;
    int array_depth_ = 0;
    bool record_valid_ = false;
    bool in_refs_ = false;
    bool in_authors_ = false;
};

void walk_aminer(const std::string& path, AminerWalker& walker) {
    std::ifstream in = open_or_throw(path);
    nlohmann::json::sax_parse(in, &walker);
}

}  // namespace

bool CitationGraph::cites(PaperId citing, PaperId cited) const {
    const auto refs = references(citing);
    return std::binary_search(refs.begin(), refs.end(), cited);
}

void load_edge_list(const std::string& path, EdgeFormat format, const EdgeSink& sink,
                    CorpusStats& stats) {
    if (format == EdgeFormat::Tsv) {
        std::ifstream in = open_or_throw(path);
        std::string line;
        while (std::getline(in, line)) {
            std::string_view v = line;
            if (!v.empty() && v.back() == '\r') v.remove_suffix(1);
            if (v.empty() || v.front() == '#') continue;
            const std::size_t tab = v.find('\t');
            if (tab == std::string_view::npos) {
                ++stats.malformed_edge_lines;
                continue;
            }
            const std::string_view citing = trim(v.substr(0, tab));
            const std::string_view cited = trim(v.substr(tab + 1));
            if (citing.empty() || cited.empty() || cited.find('\t') != std::string_view::npos) {
                ++stats.malformed_edge_lines;
                continue;
            }
            sink(citing, cited);
        }
    } else {
        AminerWalker walker;
        walker.on_edge = [&](const std::string& a, const std::string& b) { sink(a, b); };
        walk_aminer(path, walker);
        stats.malformed_edge_lines += walker.malformed;
    }
}

void load_metadata(const std::string& path, MetadataFormat format, const RecordSink& sink,
                   CorpusStats& stats) {
    switch (format) {
        case MetadataFormat::Csv: {
            std::ifstream in = open_or_throw(path);
            std::string line;
            do {
                if (!std::getline(in, line)) throw DataError("metadata CSV is empty: " + path);
            } while (trim(line).empty() || trim(line).front() == '#');
            const auto header = split(trim(line), ',');
            const char* required[] = {"id", "year", "authors"};
            for (std::size_t i = 0; i < 3; ++i) {
                if (header.size() <= i || trim(header[i]) != required[i])
                    throw DataError(std::string("metadata CSV missing required column: ") + required[i]);
            }
            while (std::getline(in, line)) {
                std::string_view v = line;
                if (!v.empty() && v.back() == '\r') v.remove_suffix(1);
                if (v.empty() || v.front() == '#') continue;
                const auto fields = split(v, ',');
                if (fields.size() != 3 || trim(fields[0]).empty()) {
                    ++stats.malformed_record_lines;
                    continue;
                }
                PaperRecord rec;
                rec.external_id = std::string(trim(fields[0]));
                int y;
                if (parse_year(fields[1], y)) rec.year = y;
                const std::string_view authors = trim(fields[2]);
                if (!authors.empty()) {
                    for (const auto a : split(authors, ';')) {
                        const auto t = trim(a);
                        if (!t.empty()) rec.authors.emplace_back(t);
                    }
                }
                sink(std::move(rec));
            }
            break;
        }
        case MetadataFormat::Jsonl: {
            std::ifstream in = open_or_throw(path);
            std::string line;
            while (std::getline(in, line)) {
                const auto v = trim(line);
                if (v.empty() || v.front() == '#') continue;
                nlohmann::json j = nlohmann::json::parse(v, nullptr, false);
                if (j.is_discarded() || !j.is_object() || !j.contains("id")) {
                    ++stats.malformed_record_lines;
                    continue;
                }
                PaperRecord rec;
                if (j["id"].is_string())
                    rec.external_id = j["id"].get<std::string>();
                else if (j["id"].is_number_integer())
                    rec.external_id = std::to_string(j["id"].get<long long>());
                else {
                    ++stats.malformed_record_lines;
                    continue;
                }
                if (j.contains("year") && j["year"].is_number_integer())
                    rec.year = j["year"].get<int>();
                if (j.contains("authors") && j["authors"].is_array()) {
                    for (const auto& a : j["authors"]) {
                        if (a.is_string()) rec.authors.push_back(a.get<std::string>());
                    }
                }
                sink(std::move(rec));
            }
            break;
        }
        case MetadataFormat::AminerJson: {
            AminerWalker walker;
            walker.on_record = [&](PaperRecord&& rec) { sink(std::move(rec)); };
            walk_aminer(path, walker);
            stats.malformed_record_lines += walker.malformed;
            break;
        }
    }
}

void GraphBuilder::finalize_papers(YearRange year_window, CorpusStats& stats) {
    stats.papers_read += records_.size();

    // First record with a given external_id wins; later ones are counted.
    // Probing reads id strings out of records_, so keeps are only moved out
    // after the whole dedup pass.
    std::vector<std::uint32_t> keep_index;
    keep_index.reserve(records_.size());
    {
        std::vector<std::uint32_t> seen_index;
        const std::size_t cap = std::bit_ceil(std::max<std::size_t>(records_.size() * 2, 16));
        seen_index.assign(cap, UINT32_MAX);
        const std::size_t mask = cap - 1;
        auto find_slot = [&](std::string_view id) {
            std::size_t slot = fnv1a64(id) & mask;
            while (seen_index[slot] != UINT32_MAX &&
                   records_[seen_index[slot]].external_id != id) {
                slot = (slot + 1) & mask;
            }
            return slot;
        };
        for (std::uint32_t i = 0; i < records_.size(); ++i) {
            const std::size_t slot = find_slot(records_[i].external_id);
            if (seen_index[slot] != UINT32_MAX) {
                ++stats.papers_duplicate_id;
                continue;
            }
            seen_index[slot] = i;
            if (!records_[i].year.has_value()) {
                ++stats.papers_missing_year;
                continue;
            }
            if (!year_window.contains(*records_[i].year)) {
                ++stats.papers_outside_window;
                continue;
            }
            keep_index.push_back(i);
        }
    }
    std::vector<PaperRecord> kept;
    kept.reserve(keep_index.size());
    for (const std::uint32_t i : keep_index) kept.push_back(std::move(records_[i]));

    std::sort(kept.begin(), kept.end(), [](const PaperRecord& a, const PaperRecord& b) {
        if (*a.year != *b.year) return *a.year < *b.year;
        return a.external_id < b.external_id;
    });
    records_ = std::move(kept);
    stats.papers_retained = records_.size();

    const std::size_t cap = std::bit_ceil(std::max<std::size_t>(records_.size() * 2, 16));
    id_index_.assign(cap, UINT32_MAX);
    const std::size_t mask = cap - 1;
    for (std::uint32_t i = 0; i < records_.size(); ++i) {
        std::size_t slot = fnv1a64(records_[i].external_id) & mask;
        while (id_index_[slot] != UINT32_MAX) slot = (slot + 1) & mask;
        id_index_[slot] = i;
    }
    papers_final_ = true;
}

PaperId GraphBuilder::lookup(std::string_view external_id) const {
    const std::size_t mask = id_index_.size() - 1;
    std::size_t slot = fnv1a64(external_id) & mask;
    while (id_index_[slot] != UINT32_MAX) {
        if (records_[id_index_[slot]].external_id == external_id) return id_index_[slot];
        slot = (slot + 1) & mask;
    }
    return kNoPaper;
}

void GraphBuilder::add_edge(std::string_view citing, std::string_view cited, CorpusStats& stats) {
    ++stats.edges_read;
    const PaperId a = lookup(citing);
    const PaperId b = lookup(cited);
    if (a == kNoPaper || b == kNoPaper) {
        ++stats.edges_dropped_dangling;
        return;
    }
    if (a == b) {
        ++stats.edges_dropped_selfloop;
        return;
    }
    edges_.emplace_back(a, b);
}

CitationGraph GraphBuilder::build(CorpusStats& stats) {
    if (records_.empty()) throw DataError("empty corpus: no papers retained");

    std::sort(edges_.begin(), edges_.end());
    const auto last = std::unique(edges_.begin(), edges_.end());
    stats.edges_dropped_duplicate += static_cast<std::uint64_t>(edges_.end() - last);
    edges_.erase(last, edges_.end());
    stats.edges_retained = edges_.size();

    const std::size_t n = records_.size();
    CitationGraph g;
    g.years.resize(n);
    g.external_ids.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        g.years[i] = *records_[i].year;
        g.external_ids[i] = std::move(records_[i].external_id);
    }

    g.out_offsets.assign(n + 1, 0);
    g.in_offsets.assign(n + 1, 0);
    for (const auto& [a, b] : edges_) {
        ++g.out_offsets[a + 1];
        ++g.in_offsets[b + 1];
    }
    for (std::size_t i = 0; i < n; ++i) {
        g.out_offsets[i + 1] += g.out_offsets[i];
        g.in_offsets[i + 1] += g.in_offsets[i];
    }
    g.out_targets.resize(edges_.size());
    g.in_targets.resize(edges_.size());
    {
        std::vector<std::uint64_t> out_pos(g.out_offsets.begin(), g.out_offsets.end() - 1);
        std::vector<std::uint64_t> in_pos(g.in_offsets.begin(), g.in_offsets.end() - 1);
        // edges_ is sorted by (citing, cited), so both fills stay ascending.
        for (const auto& [a, b] : edges_) {
            g.out_targets[out_pos[a]++] = b;
            g.in_targets[in_pos[b]++] = a;
        }
    }
    edges_.clear();
    edges_.shrink_to_fit();

    // Intern author ids into a sorted table.
    {
        std::vector<std::string> all;
        for (const auto& rec : records_)
            for (const auto& a : rec.authors) all.push_back(a);
        std::sort(all.begin(), all.end());
        all.erase(std::unique(all.begin(), all.end()), all.end());
        g.author_table = std::move(all);

        g.author_offsets.assign(n + 1, 0);
        for (std::size_t i = 0; i < n; ++i) {
            // per-paper dedupe so one paper never counts twice in a profile
            std::vector<std::uint32_t> ids;
            for (const auto& a : records_[i].authors) {
                const auto it = std::lower_bound(g.author_table.begin(), g.author_table.end(), a);
                ids.push_back(static_cast<std::uint32_t>(it - g.author_table.begin()));
            }
            std::sort(ids.begin(), ids.end());
            ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
            g.author_offsets[i + 1] = g.author_offsets[i] + ids.size();
            g.author_refs.insert(g.author_refs.end(), ids.begin(), ids.end());
        }
    }

    records_.clear();
    records_.shrink_to_fit();
    id_index_.clear();
    id_index_.shrink_to_fit();
    return g;
}

CitationGraph build_graph(std::vector<PaperRecord> records,
                          const std::vector<std::pair<std::string, std::string>>& edges,
                          YearRange year_window, CorpusStats& stats) {
    GraphBuilder builder;
    for (auto& r : records) builder.add_record(std::move(r));
    builder.finalize_papers(year_window, stats);
    for (const auto& [a, b] : edges) builder.add_edge(a, b, stats);
    return builder.build(stats);
}

namespace {

constexpr char kMagic[4] = {'D', 'K', 'G', '1'};
constexpr char kTrailer[4] = {'D', 'K', 'G', 'E'};
constexpr std::uint32_t kCacheVersion = 1;

static_assert(std::endian::native == std::endian::little,
              "cache writer assumes a little-endian host");

template <typename T>
void write_pod(std::ofstream& out, const T& v) {
    out.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
void write_vec(std::ofstream& out, const std::vector<T>& v) {
    out.write(reinterpret_cast<const char*>(v.data()),
              static_cast<std::streamsize>(v.size() * sizeof(T)));
}

template <typename T>
void read_pod(std::ifstream& in, T& v) {
    in.read(reinterpret_cast<char*>(&v), sizeof(T));
    if (!in) throw CacheFormatError("cache file truncated");
}

template <typename T>
void read_vec(std::ifstream& in, std::vector<T>& v, std::size_t count) {
    v.resize(count);
    in.read(reinterpret_cast<char*>(v.data()), static_cast<std::streamsize>(count * sizeof(T)));
    if (!in) throw CacheFormatError("cache file truncated");
}

void write_string_table(std::ofstream& out, const std::vector<std::string>& table) {
    std::vector<std::uint64_t> offsets(table.size() + 1, 0);
    for (std::size_t i = 0; i < table.size(); ++i) offsets[i + 1] = offsets[i] + table[i].size();
    write_vec(out, offsets);
    for (const auto& s : table) out.write(s.data(), static_cast<std::streamsize>(s.size()));
}

std::vector<std::string> read_string_table(std::ifstream& in, std::size_t count) {
    std::vector<std::uint64_t> offsets;
    read_vec(in, offsets, count + 1);
    std::string blob;
    blob.resize(offsets.back());
    in.read(blob.data(), static_cast<std::streamsize>(blob.size()));
    if (!in) throw CacheFormatError("cache file truncated");
    std::vector<std::string> table(count);
    for (std::size_t i = 0; i < count; ++i)
        table[i] = blob.substr(offsets[i], offsets[i + 1] - offsets[i]);
    return table;
}

}  // namespace

void save_cache(const CitationGraph& graph, const std::string& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw DataError("cannot write cache file: " + path);
    out.write(kMagic, 4);
    write_pod(out, kCacheVersion);
    write_pod(out, static_cast<std::uint64_t>(graph.n_papers()));
    write_pod(out, static_cast<std::uint64_t>(graph.n_edges()));
    write_pod(out, static_cast<std::uint64_t>(graph.author_table.size()));
    write_pod(out, static_cast<std::uint64_t>(graph.author_refs.size()));
    write_vec(out, graph.years);
    write_vec(out, graph.out_offsets);
    write_vec(out, graph.out_targets);
    write_vec(out, graph.in_offsets);
    write_vec(out, graph.in_targets);
    write_string_table(out, graph.external_ids);
    write_string_table(out, graph.author_table);
    write_vec(out, graph.author_offsets);
    write_vec(out, graph.author_refs);
    out.write(kTrailer, 4);
    if (!out) throw DataError("write failed for cache file: " + path);
}

CitationGraph load_cache(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open cache file: " + path);
    char magic[4];
    in.read(magic, 4);
    if (!in || std::memcmp(magic, kMagic, 4) != 0)
        throw CacheFormatError("bad cache magic, expected DKG1: " + path);
    std::uint32_t version;
    read_pod(in, version);
    if (version != kCacheVersion)
        throw CacheFormatError("unsupported cache version " + std::to_string(version));
    std::uint64_t n, m, n_authors, author_refs_len;
    read_pod(in, n);
    read_pod(in, m);
    read_pod(in, n_authors);
    read_pod(in, author_refs_len);

    CitationGraph g;
    read_vec(in, g.years, n);
    read_vec(in, g.out_offsets, n + 1);
    read_vec(in, g.out_targets, m);
    read_vec(in, g.in_offsets, n + 1);
    read_vec(in, g.in_targets, m);
    g.external_ids = read_string_table(in, n);
    g.author_table = read_string_table(in, n_authors);
    read_vec(in, g.author_offsets, n + 1);
    read_vec(in, g.author_refs, author_refs_len);

    char trailer[4];
    in.read(trailer, 4);
    if (!in || std::memcmp(trailer, kTrailer, 4) != 0)
        throw CacheFormatError("cache file truncated or corrupt: " + path);
    return g;
}

}  // namespace disruptkit
