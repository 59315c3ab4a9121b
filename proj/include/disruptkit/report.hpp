#pragma once

#include <cstdint>
#include <ostream>
#include <span>
#include <string>

#include "disruptkit/careers.hpp"
#include "disruptkit/corpus.hpp"
#include "disruptkit/disruption.hpp"
#include "disruptkit/nullmodels.hpp"
#include "disruptkit/rankstats.hpp"
#include "disruptkit/types.hpp"

namespace disruptkit {

// Shortest decimal form that round-trips to the same double.
std::string format_double(double v);

// format_double, or the empty field for kUndefined.
std::string format_field(double v);

// First line of every output file; no timestamps, so identical runs emit
// byte-identical files.
struct ReportStamp {
    std::uint64_t config_hash = 0;
    std::uint64_t seed = 0;

    std::string line() const;  // "# disruptkit <version> config=<hex> seed=<seed>"
};

void write_ingest_report(const std::string& path, const ReportStamp& stamp,
                         const CorpusStats& stats);

// external_id,year,n_i,n_j,n_k,d,d_z,c5 in graph row order.
void write_scores_csv(const std::string& path, const ReportStamp& stamp,
                      const CitationGraph& graph, const DisruptionTable& table);

// pivot,score_variant,year_group,null_tag,percentile,subset_size,tau
void write_sweep_csv(const std::string& path, const ReportStamp& stamp,
                     std::span<const SweepReport> reports);

// percentile,share
void write_share_csv(const std::string& path, const ReportStamp& stamp,
                     const ShareCurve& curve);

// author_id,first_year,last_year,n_pubs,eligible
void write_career_report_csv(const std::string& path, const ReportStamp& stamp,
                             std::span<const CareerProfile> profiles,
                             const EligibilityCriteria& criteria);

// sweep schema plus population column; subset_size carries the number of
// contributing authors
void write_career_curves_csv(const std::string& path, const ReportStamp& stamp, Pivot pivot,
                             ScoreVariant variant, const AggregateCurve& all,
                             const AggregateCurve& prolific);

// percentile,share,population
void write_career_share_csv(const std::string& path, const ReportStamp& stamp,
                            const ShareCurve& all, const ShareCurve& prolific);

// pivot,mode,scope,percentile,mean_tau,std_tau,realizations,master_seed
void write_null_csv(const std::string& path, const ReportStamp& stamp,
                    const NullReport& report);

}  // namespace disruptkit
