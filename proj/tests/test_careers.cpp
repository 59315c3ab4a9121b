#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "disruptkit/careers.hpp"
#include "test_util.hpp"

using namespace disruptkit;

namespace {

CitationGraph authored_graph(
    const std::vector<std::tuple<std::string, int, std::vector<std::string>>>& papers,
    const std::vector<std::pair<std::string, std::string>>& edges = {}) {
    std::vector<PaperRecord> records;
    for (const auto& [id, year, authors] : papers) records.push_back({id, year, authors});
    CorpusStats stats;
    return build_graph(std::move(records), edges, {-100000, 100000}, stats);
}

// Owns the id strings a ScoredVectors views into.
struct CareerFixture {
    std::vector<std::string> store;
    ScoredVectors vec;

    CareerFixture(std::vector<double> score, std::vector<double> c5) {
        vec.score = std::move(score);
        vec.c5 = std::move(c5);
        for (std::size_t i = 0; i < vec.score.size(); ++i)
            store.push_back("w" + std::to_string(100000 + i));
        for (const auto& s : store) vec.ids.emplace_back(s);
    }
};

CareerProfile profile(const std::string& id, int first, int last, std::uint32_t pubs, int gap) {
    CareerProfile p;
    p.author_id = id;
    p.first_year = first;
    p.last_year = last;
    p.n_pubs = pubs;
    p.max_gap = gap;
    return p;
}

}  // namespace

TEST_CASE("build_profiles: one profile per author, papers in row order") {
    const auto g = authored_graph({{"p1", 1991, {"bob"}},
                                   {"p2", 1990, {"alice", "bob"}},
                                   {"p3", 1990, {"bob"}},
                                   {"p4", 1992, {}}});
    const auto profiles = build_profiles(g);
    REQUIRE(profiles.size() == 2);  // authorless p4 contributes nothing
    CHECK(profiles[0].author_id == "alice");
    CHECK(profiles[1].author_id == "bob");

    const auto& bob = profiles[1];
    CHECK(bob.n_pubs == 3);
    CHECK(bob.first_year == 1990);
    CHECK(bob.last_year == 1991);
    REQUIRE(bob.papers.size() == 3);
    // ascending (year, external_id): p2(1990), p3(1990), p1(1991)
    CHECK(g.external_id(bob.papers[0]) == "p2");
    CHECK(g.external_id(bob.papers[1]) == "p3");
    CHECK(g.external_id(bob.papers[2]) == "p1");
    CHECK(std::is_sorted(bob.papers.begin(), bob.papers.end()));
}

TEST_CASE("build_profiles: max_gap spans the largest hole, single paper gives 0") {
    const auto g = authored_graph({{"a", 1990, {"w"}},
                                   {"b", 1992, {"w"}},
                                   {"c", 1999, {"w"}},
                                   {"d", 1995, {"solo"}}});
    const auto profiles = build_profiles(g);
    REQUIRE(profiles.size() == 2);
    CHECK(profiles[1].author_id == "w");
    CHECK(profiles[1].max_gap == 7);  // 1992 -> 1999
    CHECK(profiles[0].max_gap == 0);
}

TEST_CASE("build_profiles: same-year papers leave max_gap untouched") {
    const auto g = authored_graph({{"a", 1990, {"w"}}, {"b", 1990, {"w"}}, {"c", 1991, {"w"}}});
    const auto profiles = build_profiles(g);
    REQUIRE(profiles.size() == 1);
    CHECK(profiles[0].max_gap == 1);
    CHECK(profiles[0].n_pubs == 3);
}

TEST_CASE("is_eligible: every clause at its boundary") {
    const EligibilityCriteria crit;  // 1980..2000, span >= 20, pubs > 10, gap <= 5

    CHECK(is_eligible(profile("edge_all", 1980, 2000, 11, 5), crit));
    CHECK(!is_eligible(profile("starts_1979", 1979, 2000, 11, 5), crit));
    CHECK(is_eligible(profile("starts_2000", 2000, 2020, 11, 5), crit));
    CHECK(!is_eligible(profile("starts_2001", 2001, 2021, 11, 5), crit));
    CHECK(!is_eligible(profile("span_19", 1980, 1999, 11, 5), crit));
    CHECK(is_eligible(profile("span_21", 1980, 2001, 11, 5), crit));
    CHECK(!is_eligible(profile("pubs_10", 1980, 2000, 10, 5), crit));
    CHECK(is_eligible(profile("pubs_11", 1980, 2000, 11, 5), crit));
    CHECK(is_eligible(profile("gap_5", 1985, 2005, 30, 5), crit));
    CHECK(!is_eligible(profile("gap_6", 1985, 2005, 30, 6), crit));
    CHECK(is_eligible(profile("comfortable", 1990, 2012, 45, 2), crit));
    CHECK(!is_eligible(profile("fails_everything", 1975, 1994, 3, 9), crit));
}

TEST_CASE("is_eligible: relaxing the criteria never shrinks the eligible set") {
    std::mt19937_64 rng(21);
    EligibilityCriteria strict;
    EligibilityCriteria loose;
    loose.start_window = {1970, 2010};
    loose.min_span_years = 10;
    loose.min_pubs_exclusive = 5;
    loose.max_gap_years = 8;
    for (int i = 0; i < 500; ++i) {
        const int first = 1960 + static_cast<int>(rng() % 60);
        const auto p = profile("a", first, first + static_cast<int>(rng() % 40),
                               static_cast<std::uint32_t>(rng() % 30), static_cast<int>(rng() % 10));
        if (is_eligible(p, strict)) CHECK(is_eligible(p, loose));
    }
}

TEST_CASE("filter_authors and prolific_filter apply their predicates") {
    std::vector<CareerProfile> profiles = {
        profile("yes", 1985, 2010, 40, 3),
        profile("gap", 1985, 2010, 40, 7),
        profile("prolific", 1985, 2010, 101, 2),
        profile("exactly_100", 1985, 2010, 100, 2),
    };
    const auto eligible = filter_authors(profiles, EligibilityCriteria{});
    REQUIRE(eligible.size() == 3);
    CHECK(eligible[0].author_id == "yes");
    CHECK(eligible[1].author_id == "prolific");
    CHECK(eligible[2].author_id == "exactly_100");

    const auto prolific = prolific_filter(eligible, 100);
    REQUIRE(prolific.size() == 1);  // exactly 100 is not "more than 100"
    CHECK(prolific[0].author_id == "prolific");
}

TEST_CASE("extract_career: defined scores only, variant selects the column") {
    const auto g = authored_graph({{"r", 1989, {}},
                                   {"p1", 1990, {"w"}},
                                   {"p2", 1991, {"w"}},
                                   {"p3", 1992, {"w"}}},
                                  {{"p1", "r"}, {"p2", "p1"}, {"p3", "p1"}});
    auto table = compute_all_disruptions(g, {1990, 1991});
    standardize_by_year(table);
    const auto profiles = build_profiles(g);
    REQUIRE(profiles.size() == 1);

    const auto raw = extract_career(profiles[0], table, g, ScoreVariant::Raw);
    REQUIRE(raw.size() == 2);  // p3 is outside the focal window
    CHECK(raw.ids[0] == "p1");
    CHECK(raw.ids[1] == "p2");
    CHECK(raw.score[0] == table.d[1]);
    CHECK(raw.c5[0] == static_cast<double>(table.c5[1]));

    const auto dz = extract_career(profiles[0], table, g, ScoreVariant::Standardized);
    CHECK(dz.score[0] == table.d_z[1]);
}

TEST_CASE("career_sweep: monotone careers reach tau exactly 1") {
    CareerFixture fix({0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0, 1.1, 1.2},
                      {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12});
    const auto points = career_sweep(fix.vec, CareerGrid::defaults(), Pivot::Disruption);
    REQUIRE(points.size() == CareerGrid::defaults().percentiles.size());
    CHECK(points[0].percentile == 1.0);
    CHECK(points[0].subset_size == 1);
    CHECK(!is_defined(points[0].tau));  // a single paper has no rank correlation
    for (std::size_t i = 1; i < points.size(); ++i) {
        if (points[i].subset_size < 2) continue;
        CHECK(points[i].tau == 1.0);
    }
    CHECK(points.back().subset_size == 12);
}

TEST_CASE("career_sweep: equals a direct percentile sweep over career ranks") {
    std::mt19937_64 rng(31);
    std::vector<double> score(57), c5(57);
    for (std::size_t i = 0; i < score.size(); ++i) {
        score[i] = static_cast<double>(rng() % 15) / 7.0;
        c5[i] = static_cast<double>(rng() % 25);
    }
    CareerFixture fix(score, c5);
    const auto grid = CareerGrid::defaults();
    for (const auto pivot : {Pivot::Disruption, Pivot::Impact}) {
        const auto points = career_sweep(fix.vec, grid, pivot);
        const auto score_rank = rank_by(fix.vec.score, fix.vec.ids);
        const auto c5_rank = rank_by(fix.vec.c5, fix.vec.ids);
        const auto& primary = pivot == Pivot::Disruption ? score_rank : c5_rank;
        const auto& other = pivot == Pivot::Disruption ? c5_rank : score_rank;
        const auto direct = percentile_sweep(primary, other, grid.percentiles);
        REQUIRE(points.size() == direct.size());
        for (std::size_t i = 0; i < points.size(); ++i) {
            CHECK(points[i].subset_size == direct[i].subset_size);
            if (!is_defined(points[i].tau)) {
                CHECK(!is_defined(direct[i].tau));
            } else {
                CHECK(points[i].tau == direct[i].tau);
            }
        }
    }
}

TEST_CASE("career_sweep: empty career yields all-missing points") {
    CareerFixture fix({}, {});
    const auto points = career_sweep(fix.vec, CareerGrid::defaults());
    REQUIRE(points.size() == CareerGrid::defaults().percentiles.size());
    for (const auto& pt : points) {
        CHECK(pt.subset_size == 0);
        CHECK(!is_defined(pt.tau));
    }
}

TEST_CASE("aggregate_sweeps: means, counts, and missing handling") {
    std::vector<std::vector<SweepPoint>> reports(3);
    reports[0] = {{50.0, 5, 0.2}, {100.0, 10, 0.6}};
    reports[1] = {{50.0, 4, 0.4}, {100.0, 8, kUndefined}};
    reports[2] = {{50.0, 2, kUndefined}, {100.0, 4, kUndefined}};
    const auto agg = aggregate_sweeps(reports);
    REQUIRE(agg.percentiles == std::vector<double>{50.0, 100.0});
    CHECK(agg.mean_tau[0] == doctest::Approx(0.3).epsilon(1e-15));
    CHECK(agg.counts[0] == 2);
    CHECK(agg.mean_tau[1] == 0.6);
    CHECK(agg.counts[1] == 1);

    reports[0][1].tau = kUndefined;
    reports[1][0].tau = kUndefined;
    reports[0][0].tau = kUndefined;
    const auto none = aggregate_sweeps(std::vector<std::vector<SweepPoint>>{reports[0]});
    CHECK(!is_defined(none.mean_tau[0]));
    CHECK(none.counts[0] == 0);
}

TEST_CASE("aggregate_sweeps: mismatched grids are rejected") {
    std::vector<std::vector<SweepPoint>> reports(2);
    reports[0] = {{50.0, 5, 0.2}};
    reports[1] = {{60.0, 5, 0.2}};
    CHECK_THROWS_AS(aggregate_sweeps(reports), std::invalid_argument);
    reports[1] = {{50.0, 5, 0.2}, {100.0, 5, 0.1}};
    CHECK_THROWS_AS(aggregate_sweeps(reports), std::invalid_argument);
}

TEST_CASE("aggregate_sweeps: mean is bit-identical under author reordering") {
    std::mt19937_64 rng(55);
    std::vector<std::vector<SweepPoint>> reports;
    for (int a = 0; a < 60; ++a) {
        const double tau = (static_cast<double>(rng() % 2001) - 1000.0) / 1000.0;
        reports.push_back({{25.0, 10, tau}, {100.0, 40, tau / 3.0}});
    }
    auto shuffled = reports;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    const auto a = aggregate_sweeps(reports);
    const auto b = aggregate_sweeps(shuffled);
    REQUIRE(a.mean_tau.size() == b.mean_tau.size());
    for (std::size_t i = 0; i < a.mean_tau.size(); ++i) {
        CHECK(a.mean_tau[i] == b.mean_tau[i]);
        CHECK(a.counts[i] == b.counts[i]);
    }
}

TEST_CASE("career_share_curve: single paper covers every percentile") {
    CareerFixture fix({0.4}, {9});
    const auto curve = career_share_curve(fix.vec);
    CHECK(!curve.degenerate);
    for (const double s : curve.share) CHECK(s == 1.0);
}

TEST_CASE("career_share_curve: short careers overlap and sum above 1") {
    CareerFixture fix({1, 2, 3, 4, 5, 6, 7, 8, 9, 10}, {5, 1, 0, 2, 8, 3, 1, 0, 4, 6});
    const auto curve = career_share_curve(fix.vec);
    double sum = 0.0;
    for (const double s : curve.share) sum += s;
    CHECK(sum > 1.0);
    // each of the 10 papers covers a 10-percentile interval, so the total
    // coverage is exactly tenfold
    CHECK(sum == doctest::Approx(10.0).epsilon(1e-9));
}

TEST_CASE("career_share_curve: exactly 100 papers maps rank r to bucket r") {
    std::vector<double> score(100), c5(100);
    for (std::size_t i = 0; i < 100; ++i) {
        score[i] = 100.0 - static_cast<double>(i);  // rank = i + 1
        c5[i] = static_cast<double>(i % 7);
    }
    CareerFixture fix(score, c5);
    const auto curve = career_share_curve(fix.vec);
    double total = 0.0;
    for (const double v : c5) total += v;
    double sum = 0.0;
    for (std::size_t b = 0; b < curve.share.size(); ++b) {
        CHECK(curve.share[b] == doctest::Approx(c5[b] / total).epsilon(1e-12));
        sum += curve.share[b];
    }
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("career_share_curve: long careers use disjoint buckets summing to 1") {
    std::mt19937_64 rng(77);
    std::vector<double> score(150), c5(150);
    for (std::size_t i = 0; i < 150; ++i) {
        score[i] = static_cast<double>(rng() % 90);
        c5[i] = static_cast<double>(rng() % 12);
    }
    CareerFixture fix(score, c5);
    const auto curve = career_share_curve(fix.vec);

    // naive recount with the ceil rule over the career's disruption rank
    const auto rank = rank_by(fix.vec.score, fix.vec.ids);
    double total = 0.0;
    for (const double v : c5) total += v;
    std::vector<double> naive(kPercentileBuckets, 0.0);
    for (std::size_t i = 0; i < 150; ++i) {
        const auto r = rank.position[i];
        const auto b = (r * 100 + 150 - 1) / 150;  // ceil(r * 100 / n)
        naive[b - 1] += c5[i] / total;
    }
    double sum = 0.0;
    for (std::size_t b = 0; b < curve.share.size(); ++b) {
        CHECK(curve.share[b] == doctest::Approx(naive[b]).epsilon(1e-12));
        sum += curve.share[b];
    }
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("career_share_curve: rule switches exactly at 100 papers") {
    auto sum_for = [](std::size_t n) {
        std::vector<double> score(n), c5(n, 1.0);
        for (std::size_t i = 0; i < n; ++i) score[i] = static_cast<double>(i);
        CareerFixture fix(score, c5);
        const auto curve = career_share_curve(fix.vec);
        double sum = 0.0;
        for (const double s : curve.share) sum += s;
        return sum;
    };
    CHECK(sum_for(99) > 1.0 + 1e-9);
    CHECK(sum_for(100) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(sum_for(101) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("career_share_curve: zero-impact careers are degenerate") {
    CareerFixture fix({1, 2, 3}, {0, 0, 0});
    const auto curve = career_share_curve(fix.vec);
    CHECK(curve.degenerate);
    for (const double s : curve.share) CHECK(s == 0.0);

    CareerFixture empty({}, {});
    CHECK(career_share_curve(empty.vec).degenerate);
}
