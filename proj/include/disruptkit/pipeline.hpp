#pragma once

#include "disruptkit/config.hpp"

namespace disruptkit {

// Pipeline commands. Each throws ConfigError / PrerequisiteError /
// DataError (or subclasses) on failure; the CLI maps those to exit codes.

// Load metadata + edges, build the graph, write the binary cache and an
// ingest stats report.
void cmd_ingest(const PipelineConfig& config);

// Score the cached corpus and export the per-paper table.
void cmd_score(const PipelineConfig& config);

// Percentile sweeps (configured pivots, plus per year group) and citation
// share curves, with SVG charts.
void cmd_sweep(const PipelineConfig& config);

// Author profiles, eligibility report, aggregated career curves and career
// share curves for the eligible and prolific populations.
void cmd_careers(const PipelineConfig& config);

// Seeded permutation experiment; CSV plus an SVG overlaying the observed
// curve on the null mean +/- std band.
void cmd_null(const PipelineConfig& config);

// Generate a synthetic corpus into metadata CSV + edge TSV files the
// ingest command can consume directly.
void cmd_synth(const PipelineConfig& config);

}  // namespace disruptkit
