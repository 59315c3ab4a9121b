#include "disruptkit/pipeline.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>

#include "disruptkit/report.hpp"
#include "disruptkit/svg.hpp"

namespace disruptkit {

namespace fs = std::filesystem;

namespace {

ReportStamp stamp_of(const PipelineConfig& config) {
    return {config.config_hash(), config.seed};
}

void ensure_dir(const std::string& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw DataError("cannot create output directory " + dir + ": " + ec.message());
}

CitationGraph load_graph(const PipelineConfig& config) {
    const std::string path = config.cache_path();
    if (!fs::exists(path))
        throw PrerequisiteError("corpus cache " + path +
                                " not found; run 'disruptkit ingest' first");
    return load_cache(path);
}

DisruptionTable score_corpus(const PipelineConfig& config, const CitationGraph& graph) {
    DisruptionTable table =
        compute_all_disruptions(graph, config.effective_focal_window(), config.subsequent,
                                config.c5_window, config.threads);
    standardize_by_year(table);
    return table;
}

// The ranked population: papers with a defined score, in graph row order.
struct Population {
    std::vector<std::uint32_t> rows;
    ScoredVectors vec;
};

Population build_population(const CitationGraph& graph, const DisruptionTable& table,
                            ScoreVariant variant) {
    const auto& scores = variant == ScoreVariant::Raw ? table.d : table.d_z;
    Population pop;
    for (std::uint32_t p = 0; p < graph.n_papers(); ++p) {
        if (!is_defined(scores[p])) continue;
        pop.rows.push_back(p);
        pop.vec.score.push_back(scores[p]);
        pop.vec.c5.push_back(table.c5[p]);
        pop.vec.ids.push_back(graph.external_id(p));
    }
    return pop;
}

std::vector<Pivot> selected_pivots(PivotChoice choice) {
    switch (choice) {
        case PivotChoice::Disruption: return {Pivot::Disruption};
        case PivotChoice::Impact: return {Pivot::Impact};
        default: return {Pivot::Disruption, Pivot::Impact};
    }
}

std::string group_label(YearRange range) {
    return std::to_string(range.lo) + "-" + std::to_string(range.hi);
}

void sweep_population(const ScoredVectors& vec, const PipelineConfig& config,
                      const std::string& group, std::vector<SweepReport>& reports) {
    const RankVector by_score = rank_by(vec.score, vec.ids);
    const RankVector by_c5 = rank_by(vec.c5, vec.ids);
    for (const Pivot pivot : selected_pivots(config.sweep_pivot)) {
        const RankVector& primary = pivot == Pivot::Disruption ? by_score : by_c5;
        const RankVector& other = pivot == Pivot::Disruption ? by_c5 : by_score;
        SweepReport report;
        report.pivot = pivot;
        report.variant = config.variant;
        report.year_group = group;
        report.points = percentile_sweep(primary, other, config.sweep_grid);
        reports.push_back(std::move(report));
    }
}

SvgSeries curve_series(std::string label, std::span<const double> xs,
                       std::span<const double> ys) {
    SvgSeries series{std::move(label), {}};
    for (std::size_t i = 0; i < xs.size(); ++i) series.points.emplace_back(xs[i], ys[i]);
    return series;
}

SvgSeries sweep_series(std::string label, const SweepReport& report) {
    SvgSeries series{std::move(label), {}};
    for (const auto& p : report.points) series.points.emplace_back(p.percentile, p.tau);
    return series;
}

SvgSeries share_series(std::string label, const ShareCurve& curve) {
    SvgSeries series{std::move(label), {}};
    for (std::size_t b = 0; b < curve.share.size(); ++b)
        series.points.emplace_back(static_cast<double>(b + 1), curve.share[b]);
    return series;
}

}  // namespace

void cmd_ingest(const PipelineConfig& config) {
    if (config.input_metadata.empty())
        throw ConfigError("config key 'input.metadata': a metadata path is required for ingest");
    if (config.input_edges.empty())
        throw ConfigError("config key 'input.edges': an edge-list path is required for ingest");

    GraphBuilder builder;
    CorpusStats stats;
    load_metadata(config.input_metadata, config.metadata_format,
                  [&](PaperRecord&& rec) { builder.add_record(std::move(rec)); }, stats);
    builder.finalize_papers(config.corpus_window, stats);
    load_edge_list(config.input_edges, config.edges_format,
                   [&](std::string_view citing, std::string_view cited) {
                       builder.add_edge(citing, cited, stats);
                   },
                   stats);
    const CitationGraph graph = builder.build(stats);

    ensure_dir(config.out_dir);
    const fs::path cache_path(config.cache_path());
    if (cache_path.has_parent_path()) ensure_dir(cache_path.parent_path().string());
    save_cache(graph, cache_path.string());
    write_ingest_report(config.out_dir + "/ingest_stats.csv", stamp_of(config), stats);
}

void cmd_score(const PipelineConfig& config) {
    const CitationGraph graph = load_graph(config);
    const DisruptionTable table = score_corpus(config, graph);
    ensure_dir(config.out_dir);
    write_scores_csv(config.out_dir + "/scores.csv", stamp_of(config), graph, table);
}

void cmd_sweep(const PipelineConfig& config) {
    const CitationGraph graph = load_graph(config);
    const DisruptionTable table = score_corpus(config, graph);
    const Population pop = build_population(graph, table, config.variant);
    const ReportStamp stamp = stamp_of(config);

    std::vector<SweepReport> reports;
    sweep_population(pop.vec, config, "all", reports);

    if (!config.year_groups.empty()) {
        std::vector<std::int32_t> years;
        years.reserve(pop.rows.size());
        for (const auto row : pop.rows) years.push_back(graph.year(row));
        const auto groups = year_group_split(years, config.year_groups);
        for (std::size_t g = 0; g < groups.size(); ++g) {
            ScoredVectors sub;
            for (const auto member : groups[g]) {
                sub.score.push_back(pop.vec.score[member]);
                sub.c5.push_back(pop.vec.c5[member]);
                sub.ids.push_back(pop.vec.ids[member]);
            }
            if (sub.size() > 0)
                sweep_population(sub, config, group_label(config.year_groups[g]), reports);
        }
    }

    const RankVector by_score = rank_by(pop.vec.score, pop.vec.ids);
    const RankVector by_c5 = rank_by(pop.vec.c5, pop.vec.ids);
    const ShareCurve share_d = citation_share_by_percentile(by_score, pop.vec.c5);
    const ShareCurve share_c = citation_share_by_percentile(by_c5, pop.vec.c5);
    if (share_d.degenerate)
        std::cerr << "warning: total c5 is zero; share curves are all zero\n";

    ensure_dir(config.out_dir);
    write_sweep_csv(config.out_dir + "/sweep.csv", stamp, reports);
    write_share_csv(config.out_dir + "/share_disruption.csv", stamp, share_d);
    write_share_csv(config.out_dir + "/share_impact.csv", stamp, share_c);

    std::vector<SvgSeries> sweep_plot;
    for (const auto& report : reports)
        sweep_plot.push_back(sweep_series(
            std::string(to_string(report.pivot)) + " pivot / " + report.year_group, report));
    const double zero_line[] = {0.0};
    write_svg_chart(config.out_dir + "/sweep.svg", stamp, "Rank correlation by top percentile",
                    "top percentile of pivot rank", "Kendall tau", sweep_plot, zero_line);

    const SvgSeries share_plot[] = {share_series("disruption rank", share_d),
                                    share_series("impact rank", share_c)};
    const double baseline[] = {0.01};
    write_svg_chart(config.out_dir + "/share.svg", stamp, "Citation share by percentile",
                    "percentile", "share of c5", share_plot, baseline);
}

void cmd_careers(const PipelineConfig& config) {
    const CitationGraph graph = load_graph(config);
    const DisruptionTable table = score_corpus(config, graph);
    const ReportStamp stamp = stamp_of(config);

    const std::vector<CareerProfile> profiles = build_profiles(graph);
    ensure_dir(config.out_dir);
    write_career_report_csv(config.out_dir + "/careers.csv", stamp, profiles,
                            config.career_criteria);

    const std::vector<CareerProfile> eligible =
        filter_authors(profiles, config.career_criteria);

    std::vector<std::vector<SweepPoint>> sweeps_all, sweeps_prolific;
    ShareCurve share_all, share_prolific;
    share_all.share.assign(kPercentileBuckets, 0.0);
    share_prolific.share.assign(kPercentileBuckets, 0.0);
    std::uint64_t sharers_all = 0, sharers_prolific = 0;
    for (const auto& prof : eligible) {
        const ScoredVectors career = extract_career(prof, table, graph, config.variant);
        const bool prolific = prof.n_pubs > config.prolific_min_pubs;
        auto points = career_sweep(career, config.career_grid, config.career_pivot);
        if (prolific) sweeps_prolific.push_back(points);
        sweeps_all.push_back(std::move(points));

        const ShareCurve curve = career_share_curve(career);
        if (!curve.degenerate) {
            ++sharers_all;
            for (int b = 0; b < kPercentileBuckets; ++b) share_all.share[b] += curve.share[b];
            if (prolific) {
                ++sharers_prolific;
                for (int b = 0; b < kPercentileBuckets; ++b)
                    share_prolific.share[b] += curve.share[b];
            }
        }
    }
    for (int b = 0; b < kPercentileBuckets; ++b) {
        if (sharers_all > 0) share_all.share[b] /= static_cast<double>(sharers_all);
        if (sharers_prolific > 0)
            share_prolific.share[b] /= static_cast<double>(sharers_prolific);
    }
    share_all.degenerate = sharers_all == 0;
    share_prolific.degenerate = sharers_prolific == 0;

    const AggregateCurve curve_all = aggregate_sweeps(sweeps_all);
    const AggregateCurve curve_prolific = aggregate_sweeps(sweeps_prolific);

    write_career_curves_csv(config.out_dir + "/career_curves.csv", stamp, config.career_pivot,
                            config.variant, curve_all, curve_prolific);
    write_career_share_csv(config.out_dir + "/career_share.csv", stamp, share_all,
                           share_prolific);

    const SvgSeries curve_plot[] = {
        curve_series("all eligible", curve_all.percentiles, curve_all.mean_tau),
        curve_series("prolific", curve_prolific.percentiles, curve_prolific.mean_tau)};
    const double zero_line[] = {0.0};
    write_svg_chart(config.out_dir + "/career_curves.svg", stamp,
                    "Mean career rank correlation", "top percentile of career rank",
                    "mean Kendall tau", curve_plot, zero_line);

    const SvgSeries share_plot[] = {share_series("all eligible", share_all),
                                    share_series("prolific", share_prolific)};
    const double baseline[] = {0.01};
    write_svg_chart(config.out_dir + "/career_share.svg", stamp,
                    "Mean career citation share", "percentile", "share of c5", share_plot,
                    baseline);
}

void cmd_null(const PipelineConfig& config) {
    const CitationGraph graph = load_graph(config);
    const DisruptionTable table = score_corpus(config, graph);
    const ReportStamp stamp = stamp_of(config);
    const NullConfig null_config{config.null_mode, config.null_scope, config.seed,
                                 config.null_realizations};

    NullReport report;
    std::vector<double> observed_x, observed_y;
    if (config.null_scope == NullScope::Global) {
        const Population pop = build_population(graph, table, config.variant);
        report = run_null_experiment(pop.vec, config.null_pivot, config.sweep_grid, null_config);

        const RankVector by_score = rank_by(pop.vec.score, pop.vec.ids);
        const RankVector by_c5 = rank_by(pop.vec.c5, pop.vec.ids);
        const bool d_pivot = config.null_pivot == Pivot::Disruption;
        const auto observed = percentile_sweep(d_pivot ? by_score : by_c5,
                                               d_pivot ? by_c5 : by_score, config.sweep_grid);
        for (const auto& p : observed) {
            observed_x.push_back(p.percentile);
            observed_y.push_back(p.tau);
        }
    } else {
        const std::vector<CareerProfile> eligible =
            filter_authors(build_profiles(graph), config.career_criteria);
        std::vector<ScoredVectors> careers;
        std::vector<std::string> author_ids;
        std::vector<std::vector<SweepPoint>> sweeps;
        for (const auto& prof : eligible) {
            careers.push_back(extract_career(prof, table, graph, config.variant));
            author_ids.push_back(prof.author_id);
            sweeps.push_back(career_sweep(careers.back(), config.career_grid,
                                          config.null_pivot));
        }
        report = run_null_experiment(careers, author_ids, config.null_pivot,
                                     config.career_grid, null_config);
        const AggregateCurve observed = aggregate_sweeps(sweeps);
        observed_x = observed.percentiles;
        observed_y = observed.mean_tau;
    }

    ensure_dir(config.out_dir);
    write_null_csv(config.out_dir + "/null.csv", stamp, report);

    std::vector<SvgSeries> plot;
    plot.push_back(curve_series("observed", observed_x, observed_y));
    SvgSeries mean{"null mean", {}}, hi{"null mean+std", {}}, lo{"null mean-std", {}};
    for (const auto& p : report.points) {
        mean.points.emplace_back(p.percentile, p.mean_tau);
        const bool ok = is_defined(p.mean_tau) && is_defined(p.std_tau);
        hi.points.emplace_back(p.percentile, ok ? p.mean_tau + p.std_tau : kUndefined);
        lo.points.emplace_back(p.percentile, ok ? p.mean_tau - p.std_tau : kUndefined);
    }
    plot.push_back(std::move(mean));
    plot.push_back(std::move(hi));
    plot.push_back(std::move(lo));
    const double zero_line[] = {0.0};
    write_svg_chart(config.out_dir + "/null.svg", stamp, "Null model overlay",
                    "top percentile of pivot rank", "Kendall tau", plot, zero_line);
}

void cmd_synth(const PipelineConfig& config) {
    ensure_dir(config.out_dir);
    const ReportStamp stamp = stamp_of(config);

    std::ofstream meta(config.out_dir + "/synth_metadata.csv", std::ios::binary | std::ios::trunc);
    std::ofstream edges(config.out_dir + "/synth_edges.tsv", std::ios::binary | std::ios::trunc);
    if (!meta || !edges) throw DataError("cannot write synth outputs in " + config.out_dir);
    meta << stamp.line() << '\n' << "id,year,authors\n";
    edges << stamp.line() << '\n';

    generate_corpus(
        config.synth,
        [&](PaperRecord&& rec) {
            meta << rec.external_id << ',' << (rec.year ? std::to_string(*rec.year) : "") << ',';
            for (std::size_t i = 0; i < rec.authors.size(); ++i) {
                if (i) meta << ';';
                meta << rec.authors[i];
            }
            meta << '\n';
        },
        [&](const std::string& citing, const std::string& cited) {
            edges << citing << '\t' << cited << '\n';
        });
    if (!meta || !edges) throw DataError("write failed for synth outputs in " + config.out_dir);

    std::ofstream params(config.out_dir + "/synth_params.txt",
                         std::ios::binary | std::ios::trunc);
    if (!params) throw DataError("cannot write synth params file");
    params << stamp.line() << '\n' << config.canonical();
    if (!params) throw DataError("write failed for synth params file");
}

}  // namespace disruptkit
