#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "disruptkit/types.hpp"

namespace disruptkit {

struct PaperRecord {
    std::string external_id;
    std::optional<int> year;  // records without a year are excluded at build
    std::vector<std::string> authors;
};

struct CorpusStats {
    std::uint64_t papers_read = 0;
    std::uint64_t papers_retained = 0;
    std::uint64_t papers_missing_year = 0;
    std::uint64_t papers_outside_window = 0;
    std::uint64_t papers_duplicate_id = 0;
    std::uint64_t edges_read = 0;
    std::uint64_t edges_retained = 0;
    std::uint64_t edges_dropped_dangling = 0;
    std::uint64_t edges_dropped_duplicate = 0;
    std::uint64_t edges_dropped_selfloop = 0;
    std::uint64_t malformed_edge_lines = 0;
    std::uint64_t malformed_record_lines = 0;
};

// Immutable once built. CSR adjacency in both directions; references() are the
// papers a paper cites, citers() the papers citing it. Adjacency lists are
// sorted ascending with no duplicates and no self loops. PaperIds are assigned
// in ascending (year, external_id) order, so ids are non-decreasing in year.
// Safe for unrestricted concurrent reads.
struct CitationGraph {
    std::vector<int> years;
    std::vector<std::string> external_ids;

    std::vector<std::uint64_t> out_offsets;  // size n+1
    std::vector<PaperId> out_targets;
    std::vector<std::uint64_t> in_offsets;  // size n+1
    std::vector<PaperId> in_targets;

    // Author identifiers interned into a sorted table; per-paper author lists
    // hold indexes into it.
    std::vector<std::string> author_table;
    std::vector<std::uint64_t> author_offsets;  // size n+1
    std::vector<std::uint32_t> author_refs;

    std::size_t n_papers() const { return years.size(); }
    std::uint64_t n_edges() const { return out_targets.size(); }

    std::span<const PaperId> references(PaperId p) const {
        return {out_targets.data() + out_offsets[p], out_targets.data() + out_offsets[p + 1]};
    }
    std::span<const PaperId> citers(PaperId p) const {
        return {in_targets.data() + in_offsets[p], in_targets.data() + in_offsets[p + 1]};
    }
    std::span<const std::uint32_t> authors_of(PaperId p) const {
        return {author_refs.data() + author_offsets[p], author_refs.data() + author_offsets[p + 1]};
    }
    int year(PaperId p) const { return years[p]; }
    const std::string& external_id(PaperId p) const { return external_ids[p]; }

    bool cites(PaperId citing, PaperId cited) const;

    bool operator==(const CitationGraph&) const = default;
};

enum class EdgeFormat { Tsv, AminerJson };
enum class MetadataFormat { Csv, Jsonl, AminerJson };

using EdgeSink = std::function<void(std::string_view citing, std::string_view cited)>;
using RecordSink = std::function<void(PaperRecord&&)>;

// Streams every syntactically valid edge in file order; malformed lines are
// counted in stats and skipped. Throws DataError if the file cannot be read.
void load_edge_list(const std::string& path, EdgeFormat format, const EdgeSink& sink,
                    CorpusStats& stats);

// Streams paper records. Records without a parseable year are still emitted
// (with year unset) and counted; build_graph drops them. Throws DataError on
// unreadable files or on a missing required column/field.
void load_metadata(const std::string& path, MetadataFormat format, const RecordSink& sink,
                   CorpusStats& stats);

// Incremental builder used by the pipeline so edge endpoints resolve to dense
// ids on the fly instead of buffering id strings for tens of millions of edges.
class GraphBuilder {
  public:
    void add_record(PaperRecord&& rec) { records_.push_back(std::move(rec)); }

    // Sorts retained papers, assigns PaperIds; must run before add_edge.
    void finalize_papers(YearRange year_window, CorpusStats& stats);

    void add_edge(std::string_view citing, std::string_view cited, CorpusStats& stats);

    // Consumes the builder. Throws DataError if zero papers were retained.
    CitationGraph build(CorpusStats& stats);

  private:
    PaperId lookup(std::string_view external_id) const;

    std::vector<PaperRecord> records_;
    std::vector<std::pair<PaperId, PaperId>> edges_;
    // open-addressing index over records_ (keys live in records_)
    std::vector<std::uint32_t> id_index_;
    bool papers_final_ = false;
};

CitationGraph build_graph(std::vector<PaperRecord> records,
                          const std::vector<std::pair<std::string, std::string>>& edges,
                          YearRange year_window, CorpusStats& stats);

// Binary cache, little-endian, magic "DKG1". load(save(g)) == g field for
// field. Throws CacheFormatError on magic/version mismatch or truncation.
void save_cache(const CitationGraph& graph, const std::string& path);
CitationGraph load_cache(const std::string& path);

}  // namespace disruptkit
