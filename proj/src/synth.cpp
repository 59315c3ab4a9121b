#include "disruptkit/synth.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <cstdio>
#include <numeric>

#include "disruptkit/rng.hpp"

namespace disruptkit {

namespace {

std::string make_id(const char* prefix, std::uint64_t n) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%s%07llu", prefix, static_cast<unsigned long long>(n));
    return buf;
}

void generate_random(const SynthParams& params, const SynthRecordSink& record_sink,
                     const SynthEdgeSink& edge_sink) {
    const std::uint64_t n = params.n_papers;
    if (params.refs_min > params.refs_max)
        throw GenerationError("refs_min exceeds refs_max");
    if (params.refs_min > 0 && params.refs_min > n - 1)
        throw GenerationError("refs_min exceeds available earlier papers");
    if (params.years.lo > params.years.hi) throw GenerationError("empty year range");

    const std::uint64_t span = static_cast<std::uint64_t>(params.years.hi - params.years.lo) + 1;
    auto year_of = [&](std::uint64_t t) {
        return params.years.lo + static_cast<int>(t * span / n);
    };

    SplitMix64 rng(mix64(params.seed));
    std::vector<std::string> ids(n);
    for (std::uint64_t t = 0; t < n; ++t) ids[t] = make_id("p", t + 1);

    std::vector<std::uint32_t> pa_pool;  // one endpoint per citation received
    std::vector<std::uint32_t> targets;
    std::vector<std::uint32_t> author_ids;
    for (std::uint64_t t = 0; t < n; ++t) {
        if (record_sink) {
            PaperRecord rec;
            rec.external_id = ids[t];
            rec.year = year_of(t);
            if (params.author_pool > 0) {
                const std::uint32_t want =
                    std::min<std::uint32_t>(1 + static_cast<std::uint32_t>(rng.next_below(3)),
                                            params.author_pool);
                author_ids.clear();
                while (author_ids.size() < want) {
                    const auto a = static_cast<std::uint32_t>(rng.next_below(params.author_pool));
                    if (std::find(author_ids.begin(), author_ids.end(), a) == author_ids.end())
                        author_ids.push_back(a);
                }
                for (const auto a : author_ids) rec.authors.push_back(make_id("a", a + 1));
            }
            record_sink(std::move(rec));
        } else if (params.author_pool > 0) {
            // burn the same RNG draws so both passes see one corpus
            const std::uint32_t want =
                std::min<std::uint32_t>(1 + static_cast<std::uint32_t>(rng.next_below(3)),
                                        params.author_pool);
            author_ids.clear();
            while (author_ids.size() < want) {
                const auto a = static_cast<std::uint32_t>(rng.next_below(params.author_pool));
                if (std::find(author_ids.begin(), author_ids.end(), a) == author_ids.end())
                    author_ids.push_back(a);
            }
        }

        const std::uint64_t range = params.refs_max - params.refs_min + 1;
        const std::uint64_t want = std::min<std::uint64_t>(params.refs_min + rng.next_below(range), t);
        targets.clear();
        if (want == t) {
            targets.resize(t);
            std::iota(targets.begin(), targets.end(), 0u);
        } else {
            std::uint64_t attempts = 0;
            const std::uint64_t max_attempts = 20 * want + 50;
            while (targets.size() < want && attempts < max_attempts) {
                ++attempts;
                std::uint32_t cand;
                if (params.alpha > 0.0 && !pa_pool.empty() && rng.next_unit() < params.alpha)
                    cand = pa_pool[rng.next_below(pa_pool.size())];
                else
                    cand = static_cast<std::uint32_t>(rng.next_below(t));
                if (std::find(targets.begin(), targets.end(), cand) == targets.end())
                    targets.push_back(cand);
            }
            // deterministic fallback: sweep forward from a random start
            std::uint32_t cand = t ? static_cast<std::uint32_t>(rng.next_below(t)) : 0;
            while (targets.size() < want) {
                if (std::find(targets.begin(), targets.end(), cand) == targets.end())
                    targets.push_back(cand);
                cand = static_cast<std::uint32_t>((cand + 1) % t);
            }
        }
        std::sort(targets.begin(), targets.end());
        for (const auto target : targets) {
            if (edge_sink) edge_sink(ids[t], ids[target]);
            pa_pool.push_back(target);
        }
    }
}

void generate_planted(const SynthParams& params, const SynthRecordSink& record_sink,
                      const SynthEdgeSink& edge_sink) {
    const std::uint64_t m = params.n_papers;
    if (m < 1) throw GenerationError("planted mode needs at least one focal paper");
    if (!(params.rho >= -1.0 && params.rho <= 1.0))
        throw GenerationError("rho outside [-1,1]");
    const std::uint64_t levels =
        params.levels == 0 || params.levels > m ? m : params.levels;

    // Focal t sits at level l with signed offset s = 2l - 2*ceil(L/2); its
    // score is s / (4L) regardless of the c5 target c = 2L +/- s, realized
    // as n_i = (c+s)/2, n_j = (c-s)/2, n_k = 4L - c. Citer papers are
    // shared: the u-th citer of a kind serves every focal whose
    // corresponding count is >= u, which keeps the paper count ~2M + O(L).
    const std::int64_t big_l = static_cast<std::int64_t>(levels);
    const std::int64_t half = (big_l + 1) / 2;
    auto offset_of = [&](std::uint64_t t) {
        const std::int64_t level = 1 + static_cast<std::int64_t>((t - 1) * levels / m);
        return 2 * level - 2 * half;
    };

    std::vector<std::int64_t> c5_target(m);
    const bool antitone = params.rho < 0.0;
    for (std::uint64_t t = 1; t <= m; ++t) {
        const std::int64_t s = offset_of(t);
        c5_target[t - 1] = 2 * big_l + (antitone ? -s : s);
    }
    SplitMix64 rng(mix64(params.seed));
    const auto shuffled =
        static_cast<std::uint64_t>(std::llround((1.0 - std::abs(params.rho)) * static_cast<double>(m)));
    if (shuffled >= 2) {
        std::vector<std::uint64_t> idx(m);
        std::iota(idx.begin(), idx.end(), 0u);
        for (std::uint64_t i = 0; i < shuffled; ++i) {
            const std::uint64_t j = i + rng.next_below(m - i);
            std::swap(idx[i], idx[j]);
        }
        std::vector<std::int64_t> vals(shuffled);
        for (std::uint64_t i = 0; i < shuffled; ++i) vals[i] = c5_target[idx[i]];
        fisher_yates(std::span<std::int64_t>(vals), rng);
        for (std::uint64_t i = 0; i < shuffled; ++i) c5_target[idx[i]] = vals[i];
    }

    const int ref_year = params.years.lo;
    std::vector<std::string> ref_ids(m), focal_ids(m);
    for (std::uint64_t t = 0; t < m; ++t) {
        ref_ids[t] = make_id("r", t + 1);
        focal_ids[t] = make_id("f", t + 1);
    }

    std::vector<std::int64_t> n_i(m), n_j(m), n_k(m);
    std::int64_t max_i = 0, max_j = 0, max_k = 0;
    for (std::uint64_t t = 0; t < m; ++t) {
        const std::int64_t s = offset_of(t + 1);
        const std::int64_t c = c5_target[t];
        n_i[t] = (c + s) / 2;
        n_j[t] = (c - s) / 2;
        n_k[t] = 4 * big_l - c;
        assert(n_i[t] >= 0 && n_j[t] >= 0 && n_k[t] > 0 && (c + s) % 2 == 0);
        max_i = std::max(max_i, n_i[t]);
        max_j = std::max(max_j, n_j[t]);
        max_k = std::max(max_k, n_k[t]);
    }

    if (record_sink) {
        for (std::uint64_t t = 0; t < m; ++t)
            record_sink(PaperRecord{ref_ids[t], ref_year, {}});
        for (std::uint64_t t = 0; t < m; ++t)
            record_sink(PaperRecord{focal_ids[t], ref_year + 1, {}});
    }
    if (edge_sink) {
        for (std::uint64_t t = 0; t < m; ++t) edge_sink(focal_ids[t], ref_ids[t]);
    }

    const int citer_year = ref_year + 2;
    auto emit_citers = [&](const char* prefix, std::int64_t max_count,
                           const std::vector<std::int64_t>& need, bool cite_focal,
                           bool cite_ref) {
        for (std::int64_t u = 1; u <= max_count; ++u) {
            const std::string citer = make_id(prefix, static_cast<std::uint64_t>(u));
            if (record_sink) record_sink(PaperRecord{citer, citer_year, {}});
            if (!edge_sink) continue;
            for (std::uint64_t t = 0; t < m; ++t) {
                if (need[t] < u) continue;
                if (cite_focal) edge_sink(citer, focal_ids[t]);
                if (cite_ref) edge_sink(citer, ref_ids[t]);
            }
        }
    };
    emit_citers("ci", max_i, n_i, true, false);
    emit_citers("cj", max_j, n_j, true, true);
    emit_citers("ck", max_k, n_k, false, true);
}

}  // namespace

void generate_corpus(const SynthParams& params, const SynthRecordSink& record_sink,
                     const SynthEdgeSink& edge_sink) {
    if (params.n_papers < 1) throw GenerationError("n_papers must be >= 1");
    if (params.mode == SynthParams::Mode::Random)
        generate_random(params, record_sink, edge_sink);
    else
        generate_planted(params, record_sink, edge_sink);
}

SynthCorpus generate_corpus(const SynthParams& params) {
    SynthCorpus corpus;
    corpus.focal_window = params.focal_window();
    generate_corpus(
        params, [&](PaperRecord&& rec) { corpus.records.push_back(std::move(rec)); },
        [&](const std::string& citing, const std::string& cited) {
            corpus.edges.emplace_back(citing, cited);
        });
    return corpus;
}

std::pair<GroupCounts, double> brute_force_cd(const CitationGraph& graph, PaperId focal,
                                              SubsequentRule rule) {
    const int focal_year = graph.year(focal);
    const auto focal_refs = graph.references(focal);
    GroupCounts counts;
    for (PaperId p = 0; p < graph.n_papers(); ++p) {
        if (p == focal) continue;
        const int year = graph.year(p);
        if (rule == SubsequentRule::Geq ? year < focal_year : year <= focal_year) continue;
        const bool f = graph.cites(p, focal);
        bool b = false;
        for (const PaperId r : focal_refs) {
            if (graph.cites(p, r)) {
                b = true;
                break;
            }
        }
        if (f && b)
            ++counts.n_j;
        else if (f)
            ++counts.n_i;
        else if (b)
            ++counts.n_k;
    }
    return {counts, disruption_score(counts)};
}

double brute_force_kendall(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw std::invalid_argument("brute_force_kendall: length mismatch");
    const std::size_t n = x.size();
    if (n < 2) return kUndefined;

    std::uint64_t concordant = 0, discordant = 0, x_tie_only = 0, y_tie_only = 0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const bool tx = x[i] == x[j];
            const bool ty = y[i] == y[j];
            if (tx && ty) continue;
            if (tx)
                ++x_tie_only;
            else if (ty)
                ++y_tie_only;
            else if ((x[i] < x[j]) == (y[i] < y[j]))
                ++concordant;
            else
                ++discordant;
        }
    }
    const std::uint64_t den_x = concordant + discordant + y_tie_only;  // pairs untied in x
    const std::uint64_t den_y = concordant + discordant + x_tie_only;  // pairs untied in y
    if (den_x == 0 || den_y == 0) return kUndefined;
    const double num =
        static_cast<double>(static_cast<std::int64_t>(concordant) - static_cast<std::int64_t>(discordant));
    const double den = den_x == den_y ? static_cast<double>(den_x)
                                      : std::sqrt(static_cast<double>(den_x)) *
                                            std::sqrt(static_cast<double>(den_y));
    return std::clamp(num / den, -1.0, 1.0);
}

}  // namespace disruptkit
