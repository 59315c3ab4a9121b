#include "disruptkit/report.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>

namespace disruptkit {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.15g", v);
    if (std::strtod(buf, nullptr) != v) std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string format_field(double v) {
    return is_defined(v) ? format_double(v) : std::string();
}

std::string ReportStamp::line() const {
    char buf[96];
    std::snprintf(buf, sizeof(buf), "# disruptkit %s config=%016llx seed=%llu", kVersion,
                  static_cast<unsigned long long>(config_hash),
                  static_cast<unsigned long long>(seed));
    return buf;
}

namespace {

std::ofstream open_out(const std::string& path, const ReportStamp& stamp) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw DataError("cannot write output file: " + path);
    out << stamp.line() << '\n';
    return out;
}

}  // namespace

void write_ingest_report(const std::string& path, const ReportStamp& stamp,
                         const CorpusStats& stats) {
    auto out = open_out(path, stamp);
    out << "metric,value\n";
    out << "papers_read," << stats.papers_read << '\n';
    out << "papers_retained," << stats.papers_retained << '\n';
    out << "papers_missing_year," << stats.papers_missing_year << '\n';
    out << "papers_outside_window," << stats.papers_outside_window << '\n';
    out << "papers_duplicate_id," << stats.papers_duplicate_id << '\n';
    out << "edges_read," << stats.edges_read << '\n';
    out << "edges_retained," << stats.edges_retained << '\n';
    out << "edges_dropped_dangling," << stats.edges_dropped_dangling << '\n';
    out << "edges_dropped_duplicate," << stats.edges_dropped_duplicate << '\n';
    out << "edges_dropped_selfloop," << stats.edges_dropped_selfloop << '\n';
    out << "malformed_edge_lines," << stats.malformed_edge_lines << '\n';
    out << "malformed_record_lines," << stats.malformed_record_lines << '\n';
    if (!out) throw DataError("write failed: " + path);
}

void write_scores_csv(const std::string& path, const ReportStamp& stamp,
                      const CitationGraph& graph, const DisruptionTable& table) {
    auto out = open_out(path, stamp);
    out << "external_id,year,n_i,n_j,n_k,d,d_z,c5\n";
    for (std::size_t p = 0; p < table.n_papers(); ++p) {
        const auto& c = table.counts[p];
        out << graph.external_ids[p] << ',' << table.years[p] << ',' << c.n_i << ',' << c.n_j
            << ',' << c.n_k << ',' << format_field(table.d[p]) << ','
            << format_field(table.d_z[p]) << ',' << table.c5[p] << '\n';
    }
    if (!out) throw DataError("write failed: " + path);
}

void write_sweep_csv(const std::string& path, const ReportStamp& stamp,
                     std::span<const SweepReport> reports) {
    auto out = open_out(path, stamp);
    out << "pivot,score_variant,year_group,null_tag,percentile,subset_size,tau\n";
    for (const auto& report : reports) {
        for (const auto& point : report.points) {
            out << to_string(report.pivot) << ',' << to_string(report.variant) << ','
                << report.year_group << ',' << report.null_tag << ','
                << format_double(point.percentile) << ',' << point.subset_size << ','
                << format_field(point.tau) << '\n';
        }
    }
    if (!out) throw DataError("write failed: " + path);
}

void write_share_csv(const std::string& path, const ReportStamp& stamp,
                     const ShareCurve& curve) {
    auto out = open_out(path, stamp);
    out << "percentile,share\n";
    for (std::size_t b = 0; b < curve.share.size(); ++b)
        out << b + 1 << ',' << format_double(curve.share[b]) << '\n';
    if (!out) throw DataError("write failed: " + path);
}

void write_career_report_csv(const std::string& path, const ReportStamp& stamp,
                             std::span<const CareerProfile> profiles,
                             const EligibilityCriteria& criteria) {
    auto out = open_out(path, stamp);
    out << "author_id,first_year,last_year,n_pubs,eligible\n";
    for (const auto& prof : profiles) {
        out << prof.author_id << ',' << prof.first_year << ',' << prof.last_year << ','
            << prof.n_pubs << ',' << (is_eligible(prof, criteria) ? 1 : 0) << '\n';
    }
    if (!out) throw DataError("write failed: " + path);
}

namespace {

void write_curve_rows(std::ofstream& out, Pivot pivot, ScoreVariant variant,
                      const AggregateCurve& curve, const char* population) {
    for (std::size_t k = 0; k < curve.percentiles.size(); ++k) {
        out << to_string(pivot) << ',' << to_string(variant) << ",all,none,"
            << format_double(curve.percentiles[k]) << ',' << curve.counts[k] << ','
            << format_field(curve.mean_tau[k]) << ',' << population << '\n';
    }
}

}  // namespace

void write_career_curves_csv(const std::string& path, const ReportStamp& stamp, Pivot pivot,
                             ScoreVariant variant, const AggregateCurve& all,
                             const AggregateCurve& prolific) {
    auto out = open_out(path, stamp);
    out << "pivot,score_variant,year_group,null_tag,percentile,subset_size,tau,population\n";
    write_curve_rows(out, pivot, variant, all, "all");
    write_curve_rows(out, pivot, variant, prolific, "prolific");
    if (!out) throw DataError("write failed: " + path);
}

void write_career_share_csv(const std::string& path, const ReportStamp& stamp,
                            const ShareCurve& all, const ShareCurve& prolific) {
    auto out = open_out(path, stamp);
    out << "percentile,share,population\n";
    for (std::size_t b = 0; b < all.share.size(); ++b)
        out << b + 1 << ',' << format_double(all.share[b]) << ",all\n";
    for (std::size_t b = 0; b < prolific.share.size(); ++b)
        out << b + 1 << ',' << format_double(prolific.share[b]) << ",prolific\n";
    if (!out) throw DataError("write failed: " + path);
}

void write_null_csv(const std::string& path, const ReportStamp& stamp,
                    const NullReport& report) {
    auto out = open_out(path, stamp);
    out << "pivot,mode,scope,percentile,mean_tau,std_tau,realizations,master_seed\n";
    for (const auto& point : report.points) {
        out << to_string(report.pivot) << ',' << to_string(report.mode) << ','
            << to_string(report.scope) << ',' << format_double(point.percentile) << ','
            << format_field(point.mean_tau) << ',' << format_field(point.std_tau) << ','
            << report.realizations << ',' << report.master_seed << '\n';
    }
    if (!out) throw DataError("write failed: " + path);
}

}  // namespace disruptkit
