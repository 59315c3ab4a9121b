#include "disruptkit/rankstats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace disruptkit {

RankVector rank_by(std::span<const double> values, std::span<const std::string_view> ids) {
    if (values.size() != ids.size())
        throw std::invalid_argument("rank_by: values and ids differ in length");
    const std::size_t n = values.size();
    RankVector rv;
    rv.order.resize(n);
    std::iota(rv.order.begin(), rv.order.end(), 0u);
    std::sort(rv.order.begin(), rv.order.end(), [&](std::uint32_t a, std::uint32_t b) {
        if (values[a] != values[b]) return values[a] > values[b];
        return ids[a] < ids[b];
    });
    rv.position.resize(n);
    for (std::uint32_t k = 0; k < n; ++k) rv.position[rv.order[k]] = k + 1;
    rv.value.assign(values.begin(), values.end());
    return rv;
}

namespace {

// Count pairs i<j with v[i] > v[j] (strict) by bottom-up merge sort.
std::uint64_t count_inversions(std::vector<double>& v, std::vector<double>& buf) {
    const std::size_t n = v.size();
    buf.resize(n);
    std::uint64_t inversions = 0;
    for (std::size_t width = 1; width < n; width *= 2) {
        for (std::size_t lo = 0; lo + width < n; lo += 2 * width) {
            const std::size_t mid = lo + width;
            const std::size_t hi = std::min(lo + 2 * width, n);
            std::size_t i = lo, j = mid, k = lo;
            while (i < mid && j < hi) {
                if (v[j] < v[i]) {
                    inversions += mid - i;
                    buf[k++] = v[j++];
                } else {
                    buf[k++] = v[i++];
                }
            }
            while (i < mid) buf[k++] = v[i++];
            while (j < hi) buf[k++] = v[j++];
            std::copy(buf.begin() + static_cast<std::ptrdiff_t>(lo),
                      buf.begin() + static_cast<std::ptrdiff_t>(hi),
                      v.begin() + static_cast<std::ptrdiff_t>(lo));
        }
    }
    return inversions;
}

std::uint64_t pairs(std::uint64_t t) {
    return t * (t - 1) / 2;
}

}  // namespace

double kendall_tau_b(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw std::invalid_argument("kendall_tau_b: length mismatch");
    const std::uint64_t n = x.size();
    if (n < 2) return kUndefined;

    std::vector<std::uint32_t> idx(n);
    std::iota(idx.begin(), idx.end(), 0u);
    std::sort(idx.begin(), idx.end(), [&](std::uint32_t a, std::uint32_t b) {
        if (x[a] != x[b]) return x[a] < x[b];
        return y[a] < y[b];
    });

    const std::uint64_t n0 = pairs(n);
    std::uint64_t n1 = 0;  // pairs tied in x
    std::uint64_t n3 = 0;  // pairs tied in both
    {
        std::uint64_t run_x = 1, run_xy = 1;
        for (std::uint64_t i = 1; i < n; ++i) {
            if (x[idx[i]] == x[idx[i - 1]]) {
                ++run_x;
                if (y[idx[i]] == y[idx[i - 1]]) {
                    ++run_xy;
                } else {
                    n3 += pairs(run_xy);
                    run_xy = 1;
                }
            } else {
                n1 += pairs(run_x);
                n3 += pairs(run_xy);
                run_x = run_xy = 1;
            }
        }
        n1 += pairs(run_x);
        n3 += pairs(run_xy);
    }

    std::vector<double> ys(n);
    for (std::uint64_t i = 0; i < n; ++i) ys[i] = y[idx[i]];
    std::vector<double> buf;
    const std::uint64_t dis = count_inversions(ys, buf);

    std::uint64_t n2 = 0;  // pairs tied in y (ys now sorted)
    {
        std::uint64_t run_y = 1;
        for (std::uint64_t i = 1; i < n; ++i) {
            if (ys[i] == ys[i - 1])
                ++run_y;
            else {
                n2 += pairs(run_y);
                run_y = 1;
            }
        }
        n2 += pairs(run_y);
    }

    if (n1 == n0 || n2 == n0) return kUndefined;  // a side is entirely tied
    const auto num = static_cast<double>(static_cast<std::int64_t>(n0 - n1 - n2 + n3) -
                                         2 * static_cast<std::int64_t>(dis));
    // equal tie corrections: take the exact integer root so that perfect
    // agreement yields exactly +/-1
    const double den = n1 == n2 ? static_cast<double>(n0 - n1)
                                : std::sqrt(static_cast<double>(n0 - n1)) *
                                      std::sqrt(static_cast<double>(n0 - n2));
    return std::clamp(num / den, -1.0, 1.0);
}

namespace {

std::uint64_t rank_cut(double percentile, std::uint64_t m) {
    return static_cast<std::uint64_t>(std::llround(percentile * static_cast<double>(m) / 100.0));
}

bool all_tied(std::span<const double> values, std::span<const std::uint32_t> subset) {
    for (std::size_t i = 1; i < subset.size(); ++i)
        if (values[subset[i]] != values[subset[0]]) return false;
    return true;
}

}  // namespace

std::vector<SweepPoint> percentile_sweep(const RankVector& primary, const RankVector& other,
                                         std::span<const double> grid) {
    if (primary.size() != other.size())
        throw std::invalid_argument("percentile_sweep: rank vectors cover different populations");
    const std::uint64_t m_total = primary.size();
    for (const double k : grid) {
        if (!(k > 0.0 && k <= 100.0))
            throw ConfigError("sweep grid percentile outside (0,100]: " + std::to_string(k));
    }

    std::vector<SweepPoint> points;
    points.reserve(grid.size());
    std::vector<double> xs, ys;
    for (const double k : grid) {
        const std::uint64_t m = std::min(std::max<std::uint64_t>(rank_cut(k, m_total), 1), m_total);
        SweepPoint point{k, m, kUndefined};
        const std::span<const std::uint32_t> subset(primary.order.data(), m);
        if (m >= 2 && !all_tied(primary.value, subset) && !all_tied(other.value, subset)) {
            xs.resize(m);
            ys.resize(m);
            for (std::uint64_t i = 0; i < m; ++i) {
                xs[i] = primary.position[subset[i]];
                ys[i] = other.position[subset[i]];
            }
            point.tau = kendall_tau_b(xs, ys);
        }
        points.push_back(point);
    }
    return points;
}

ShareCurve citation_share_by_percentile(const RankVector& primary, std::span<const double> c5) {
    if (primary.size() != c5.size())
        throw std::invalid_argument("citation_share_by_percentile: c5 not aligned with rank");
    const std::uint64_t m_total = primary.size();
    ShareCurve curve;
    curve.share.assign(kPercentileBuckets, 0.0);

    double total = 0.0;
    for (const double v : c5) total += v;
    if (total == 0.0) {
        curve.degenerate = true;
        return curve;
    }
    for (int b = 1; b <= kPercentileBuckets; ++b) {
        const std::uint64_t lo = rank_cut(b - 1, m_total);
        const std::uint64_t hi = rank_cut(b, m_total);
        double sum = 0.0;
        for (std::uint64_t pos = lo; pos < hi; ++pos) sum += c5[primary.order[pos]];
        curve.share[b - 1] = sum / total;
    }
    return curve;
}

std::vector<std::vector<std::uint32_t>> year_group_split(std::span<const std::int32_t> years,
                                                         std::span<const YearRange> groups) {
    for (const auto& g : groups) {
        if (g.lo > g.hi)
            throw ConfigError("year group with lo > hi: " + std::to_string(g.lo) + ".." +
                              std::to_string(g.hi));
    }
    std::vector<YearRange> sorted(groups.begin(), groups.end());
    std::sort(sorted.begin(), sorted.end(),
              [](const YearRange& a, const YearRange& b) { return a.lo < b.lo; });
    for (std::size_t i = 1; i < sorted.size(); ++i) {
        if (sorted[i].lo <= sorted[i - 1].hi)
            throw ConfigError("overlapping year groups: " + std::to_string(sorted[i - 1].lo) +
                              ".." + std::to_string(sorted[i - 1].hi) + " and " +
                              std::to_string(sorted[i].lo) + ".." + std::to_string(sorted[i].hi));
    }

    std::vector<std::vector<std::uint32_t>> out(groups.size());
    for (std::uint32_t i = 0; i < years.size(); ++i) {
        for (std::size_t g = 0; g < groups.size(); ++g) {
            if (groups[g].contains(years[i])) {
                out[g].push_back(i);
                break;
            }
        }
    }
    return out;
}

}  // namespace disruptkit
