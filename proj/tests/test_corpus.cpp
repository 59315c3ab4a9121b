#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <vector>

#include "disruptkit/corpus.hpp"
#include "test_util.hpp"

using namespace disruptkit;
using testutil::TempDir;
using testutil::write_file;

namespace {

std::vector<std::pair<std::string, std::string>> collect_edges(const std::string& path,
                                                               EdgeFormat format,
                                                               CorpusStats& stats) {
    std::vector<std::pair<std::string, std::string>> out;
    load_edge_list(path, format,
                   [&](std::string_view a, std::string_view b) { out.emplace_back(a, b); }, stats);
    return out;
}

std::vector<PaperRecord> collect_records(const std::string& path, MetadataFormat format,
                                         CorpusStats& stats) {
    std::vector<PaperRecord> out;
    load_metadata(path, format, [&](PaperRecord&& r) { out.push_back(std::move(r)); }, stats);
    return out;
}

}  // namespace

TEST_CASE("tsv edge list: valid, malformed, comments, whitespace") {
    TempDir dir("tsv");
    write_file(dir.file("e.tsv"),
               "# comment line\n"
               "a\tb\n"
               "\n"
               " c \t d \r\n"
               "no_tab_here\n"
               "x\ty\tz\n"
               "\tb\n"
               "a\t\n"
               "e\tf\n");
    CorpusStats stats;
    const auto edges = collect_edges(dir.file("e.tsv"), EdgeFormat::Tsv, stats);
    REQUIRE(edges.size() == 3);
    CHECK(edges[0] == std::pair<std::string, std::string>("a", "b"));
    CHECK(edges[1] == std::pair<std::string, std::string>("c", "d"));
    CHECK(edges[2] == std::pair<std::string, std::string>("e", "f"));
    CHECK(stats.malformed_edge_lines == 4);
}

TEST_CASE("tsv edge list: missing file throws DataError") {
    CorpusStats stats;
    CHECK_THROWS_AS(collect_edges("/nonexistent/edges.tsv", EdgeFormat::Tsv, stats), DataError);
}

TEST_CASE("csv metadata: parses ids, years, authors") {
    TempDir dir("csv");
    write_file(dir.file("m.csv"),
               "# stamp\n"
               "id,year,authors\n"
               "p1,1999,alice;bob\n"
               "p2,2001,\n"
               "p3,bad_year,carol\n"
               "p4,2000\n"
               ",2000,dave\n"
               "p5, 2002 , eve ; ; frank \n");
    CorpusStats stats;
    const auto recs = collect_records(dir.file("m.csv"), MetadataFormat::Csv, stats);
    REQUIRE(recs.size() == 4);
    CHECK(recs[0].external_id == "p1");
    CHECK(recs[0].year == 1999);
    CHECK(recs[0].authors == std::vector<std::string>{"alice", "bob"});
    CHECK(recs[1].authors.empty());
    CHECK(!recs[2].year.has_value());  // bad year still yields a record
    CHECK(recs[3].external_id == "p5");
    CHECK(recs[3].year == 2002);
    CHECK(recs[3].authors == std::vector<std::string>{"eve", "frank"});
    CHECK(stats.malformed_record_lines == 2);  // wrong field count, empty id
}

TEST_CASE("csv metadata: missing required column is fatal and names the column") {
    TempDir dir("csvhdr");
    write_file(dir.file("m.csv"), "id,yr,authors\np1,1999,\n");
    CorpusStats stats;
    try {
        collect_records(dir.file("m.csv"), MetadataFormat::Csv, stats);
        FAIL("expected DataError");
    } catch (const DataError& e) {
        CHECK(std::string(e.what()).find("year") != std::string::npos);
    }
}

TEST_CASE("jsonl metadata: objects, numeric ids, malformed lines") {
    TempDir dir("jsonl");
    write_file(dir.file("m.jsonl"),
               "{\"id\":\"p1\",\"year\":1999,\"authors\":[\"a1\",\"a2\"]}\n"
               "# comment\n"
               "{\"id\":42,\"year\":2000}\n"
               "not json at all\n"
               "{\"year\":2001}\n"
               "{\"id\":\"p3\",\"year\":\"noise\",\"authors\":\"notarray\"}\n");
    CorpusStats stats;
    const auto recs = collect_records(dir.file("m.jsonl"), MetadataFormat::Jsonl, stats);
    REQUIRE(recs.size() == 3);
    CHECK(recs[0].external_id == "p1");
    CHECK(recs[0].authors == std::vector<std::string>{"a1", "a2"});
    CHECK(recs[1].external_id == "42");
    CHECK(recs[1].year == 2000);
    CHECK(recs[2].external_id == "p3");
    CHECK(!recs[2].year.has_value());
    CHECK(recs[2].authors.empty());
    CHECK(stats.malformed_record_lines == 2);
}

TEST_CASE("aminer json: records, references, author ids, numeric id coercion") {
    TempDir dir("aminer");
    write_file(dir.file("dump.json"),
               "[\n"
               " {\"id\": \"A\", \"title\": \"t\", \"year\": 1995,\n"
               "  \"authors\": [{\"name\": \"X\", \"id\": 7}, {\"name\": \"Y\", \"id\": \"a9\"}],\n"
               "  \"references\": [\"B\", 12]},\n"
               " {\"id\": 12, \"year\": 1990, \"venue\": {\"id\": \"ignored\"}},\n"
               " {\"year\": 1991},\n"
               " {\"id\": \"B\", \"year\": 1992, \"references\": []}\n"
               "]\n");
    CorpusStats stats;
    const auto recs = collect_records(dir.file("dump.json"), MetadataFormat::AminerJson, stats);
    REQUIRE(recs.size() == 3);
    CHECK(recs[0].external_id == "A");
    CHECK(recs[0].year == 1995);
    CHECK(recs[0].authors == std::vector<std::string>{"7", "a9"});
    CHECK(recs[1].external_id == "12");
    CHECK(recs[1].authors.empty());  // venue.id must not leak into authors
    CHECK(recs[2].external_id == "B");
    CHECK(stats.malformed_record_lines == 1);  // record without id

    CorpusStats estats;
    const auto edges = collect_edges(dir.file("dump.json"), EdgeFormat::AminerJson, estats);
    REQUIRE(edges.size() == 2);
    CHECK(edges[0] == std::pair<std::string, std::string>("A", "B"));
    CHECK(edges[1] == std::pair<std::string, std::string>("A", "12"));
}

TEST_CASE("aminer json: syntax error throws DataError") {
    TempDir dir("aminerbad");
    write_file(dir.file("bad.json"), "[{\"id\": \"A\", }]");
    CorpusStats stats;
    CHECK_THROWS_AS(collect_records(dir.file("bad.json"), MetadataFormat::AminerJson, stats),
                    DataError);
}

TEST_CASE("build: ids assigned in (year, external_id) order") {
    CorpusStats stats;
    const auto g = testutil::make_graph(
        {{"z", 1990}, {"a", 1992}, {"m", 1990}, {"b", 1991}}, {}, &stats);
    REQUIRE(g.n_papers() == 4);
    CHECK(g.external_id(0) == "m");
    CHECK(g.external_id(1) == "z");
    CHECK(g.external_id(2) == "b");
    CHECK(g.external_id(3) == "a");
    CHECK(g.year(0) == 1990);
    CHECK(g.year(3) == 1992);
    CHECK(std::is_sorted(g.years.begin(), g.years.end()));
}

TEST_CASE("build: window filter, missing year, duplicate ids") {
    std::vector<PaperRecord> records;
    records.push_back({"in1", 1990, {}});
    records.push_back({"early", 1979, {}});
    records.push_back({"late", 2021, {}});
    records.push_back({"noyear", std::nullopt, {}});
    records.push_back({"in1", 1995, {}});  // duplicate id, first wins
    records.push_back({"in2", 2000, {}});
    CorpusStats stats;
    const auto g = build_graph(std::move(records), {}, {1980, 2020}, stats);
    CHECK(g.n_papers() == 2);
    CHECK(stats.papers_read == 6);
    CHECK(stats.papers_retained == 2);
    CHECK(stats.papers_missing_year == 1);
    CHECK(stats.papers_outside_window == 2);
    CHECK(stats.papers_duplicate_id == 1);
    CHECK(stats.papers_retained + stats.papers_missing_year + stats.papers_outside_window +
              stats.papers_duplicate_id ==
          stats.papers_read);
    // first record wins: year 1990 kept
    CHECK(g.year(static_cast<disruptkit::PaperId>(
              std::find(g.external_ids.begin(), g.external_ids.end(), "in1") -
              g.external_ids.begin())) == 1990);
}

TEST_CASE("build: dangling, self-loop, duplicate edges dropped and counted") {
    CorpusStats stats;
    const auto g = testutil::make_graph({{"a", 1990}, {"b", 1991}, {"c", 1992}},
                                        {{"b", "a"},
                                         {"b", "a"},   // duplicate
                                         {"c", "c"},   // self loop
                                         {"c", "gone"},  // dangling cited
                                         {"gone", "a"},  // dangling citing
                                         {"c", "a"},
                                         {"c", "b"}},
                                        &stats);
    CHECK(stats.edges_read == 7);
    CHECK(stats.edges_retained == 3);
    CHECK(stats.edges_dropped_duplicate == 1);
    CHECK(stats.edges_dropped_selfloop == 1);
    CHECK(stats.edges_dropped_dangling == 2);
    CHECK(stats.edges_retained + stats.edges_dropped_duplicate + stats.edges_dropped_selfloop +
              stats.edges_dropped_dangling ==
          stats.edges_read);
    CHECK(g.n_edges() == 3);
}

TEST_CASE("build: adjacency sorted both directions, cites() membership") {
    const auto g = testutil::make_graph(
        {{"a", 1990}, {"b", 1991}, {"c", 1992}, {"d", 1993}},
        {{"d", "b"}, {"d", "a"}, {"d", "c"}, {"c", "a"}, {"b", "a"}});
    const PaperId a = 0, b = 1, c = 2, d = 3;
    CHECK(std::vector<PaperId>(g.references(d).begin(), g.references(d).end()) ==
          std::vector<PaperId>{a, b, c});
    CHECK(std::vector<PaperId>(g.citers(a).begin(), g.citers(a).end()) ==
          std::vector<PaperId>{b, c, d});
    CHECK(g.references(a).empty());
    CHECK(g.citers(d).empty());
    CHECK(g.cites(d, a));
    CHECK(g.cites(b, a));
    CHECK(!g.cites(a, b));
    CHECK(!g.cites(a, d));
}

TEST_CASE("build: author interning dedupes within a paper") {
    std::vector<PaperRecord> records;
    records.push_back({"p1", 1990, {"w", "q", "w"}});
    records.push_back({"p2", 1991, {"q"}});
    records.push_back({"p3", 1992, {}});
    CorpusStats stats;
    const auto g = build_graph(std::move(records), {}, {1980, 2020}, stats);
    REQUIRE(g.author_table.size() == 2);
    CHECK(g.author_table[0] == "q");
    CHECK(g.author_table[1] == "w");
    const auto a1 = g.authors_of(0);
    REQUIRE(a1.size() == 2);  // "w" listed twice collapses to one entry
    CHECK(g.author_table[a1[0]] == "q");
    CHECK(g.author_table[a1[1]] == "w");
    CHECK(g.authors_of(1).size() == 1);
    CHECK(g.authors_of(2).empty());
}

TEST_CASE("build: empty corpus throws DataError") {
    std::vector<PaperRecord> records;
    records.push_back({"only", 1900, {}});
    CorpusStats stats;
    CHECK_THROWS_AS(build_graph(std::move(records), {}, {1980, 2020}, stats), DataError);
}

TEST_CASE("cache: round trip preserves every field") {
    TempDir dir("cache");
    std::vector<PaperRecord> records;
    records.push_back({"a", 1990, {"au1", "au2"}});
    records.push_back({"b", 1991, {"au2"}});
    records.push_back({"c", 1992, {}});
    CorpusStats stats;
    const auto g =
        build_graph(std::move(records), {{"b", "a"}, {"c", "a"}, {"c", "b"}}, {1980, 2020}, stats);
    const auto path = dir.file("g.dkg");
    save_cache(g, path);
    const auto g2 = load_cache(path);
    CHECK(g2 == g);
}

TEST_CASE("cache: truncation and bad magic raise CacheFormatError") {
    TempDir dir("cachebad");
    const auto g = testutil::make_graph({{"a", 1990}, {"b", 1991}}, {{"b", "a"}});
    const auto path = dir.file("g.dkg");
    save_cache(g, path);

    auto bytes = testutil::read_file(path);
    SUBCASE("truncated payload") {
        write_file(path, bytes.substr(0, bytes.size() / 2));
        CHECK_THROWS_AS(load_cache(path), CacheFormatError);
    }
    SUBCASE("missing trailer") {
        write_file(path, bytes.substr(0, bytes.size() - 4));
        CHECK_THROWS_AS(load_cache(path), CacheFormatError);
    }
    SUBCASE("bad magic") {
        bytes[0] = 'X';
        write_file(path, bytes);
        CHECK_THROWS_AS(load_cache(path), CacheFormatError);
    }
    SUBCASE("unsupported version") {
        bytes[4] = 99;
        write_file(path, bytes);
        CHECK_THROWS_AS(load_cache(path), CacheFormatError);
    }
    SUBCASE("missing file is DataError, not format error") {
        CHECK_THROWS_AS(load_cache(dir.file("absent.dkg")), DataError);
    }
}

TEST_CASE("cache: CacheFormatError maps to data-error exit class") {
    // the CLI maps DataError to one exit code; format errors must be a subclass
    CHECK_THROWS_AS(throw CacheFormatError("x"), DataError);
}
