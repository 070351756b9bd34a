#include "satev/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "satev/errors.hpp"
#include "satev/special_functions.hpp"

namespace satev {

std::size_t GroupedSample::total_count() const {
    std::size_t n = 0;
    for (const auto& g : groups) n += g.values.size();
    return n;
}

std::pair<std::vector<double>, std::vector<std::size_t>>
rank_with_ties(const std::vector<double>& values) {
    if (values.empty()) throw ValidationError("rank_with_ties: empty input");
    for (double v : values) {
        if (!std::isfinite(v)) throw NonFiniteInput("rank_with_ties: non-finite value");
    }
    const std::size_t n = values.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });

    std::vector<double> ranks(n);
    std::vector<std::size_t> tie_sizes;
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && values[order[j + 1]] == values[order[i]]) ++j;
        const double mid = 0.5 * static_cast<double>(i + j) + 1.0;
        for (std::size_t u = i; u <= j; ++u) ranks[order[u]] = mid;
        if (j > i) tie_sizes.push_back(j - i + 1);
        i = j + 1;
    }
    return {std::move(ranks), std::move(tie_sizes)};
}

namespace {

struct RankedSample {
    std::vector<double> ranks;          // pooled, group-major order
    std::vector<std::size_t> tie_sizes;
    std::vector<std::size_t> sizes;     // n_i
    std::vector<double> rank_sums;      // R_i
    std::size_t N = 0;
};

RankedSample pool_and_rank(const GroupedSample& sample) {
    if (sample.group_count() < 2) {
        throw TooFewGroups("kruskal_wallis: need at least 2 groups, got " +
                           std::to_string(sample.group_count()));
    }
    std::vector<double> pooled;
    RankedSample out;
    for (const auto& g : sample.groups) {
        if (g.values.empty()) {
            throw EmptyGroup("kruskal_wallis: empty group for candidate '" + g.candidate_id + "'");
        }
        out.sizes.push_back(g.values.size());
        pooled.insert(pooled.end(), g.values.begin(), g.values.end());
    }
    out.N = pooled.size();
    std::tie(out.ranks, out.tie_sizes) = rank_with_ties(pooled);

    std::size_t offset = 0;
    for (std::size_t n_i : out.sizes) {
        double sum = 0.0;
        for (std::size_t u = 0; u < n_i; ++u) sum += out.ranks[offset + u];
        out.rank_sums.push_back(sum);
        offset += n_i;
    }
    return out;
}

} // namespace

OmnibusResult kruskal_wallis(const GroupedSample& sample) {
    const RankedSample rs = pool_and_rank(sample);
    const double N = static_cast<double>(rs.N);
    const std::size_t k = sample.group_count();

    double tie_sum = 0.0;
    for (std::size_t t : rs.tie_sizes) {
        const double td = static_cast<double>(t);
        tie_sum += td * td * td - td;
    }
    const double correction = 1.0 - tie_sum / (N * N * N - N);

    OmnibusResult res;
    res.df = static_cast<int>(k) - 1;
    if (correction == 0.0) {
        // every observation identical
        res.H = 0.0;
        res.p = 1.0;
        res.significant_5pct = false;
        return res;
    }
    double sum_ratio = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
        sum_ratio += rs.rank_sums[i] * rs.rank_sums[i] / static_cast<double>(rs.sizes[i]);
    }
    const double h_raw = 12.0 / (N * (N + 1.0)) * sum_ratio - 3.0 * (N + 1.0);
    res.H = h_raw / correction;
    if (res.H < 0.0 && res.H > -1e-12) res.H = 0.0; // rounding guard near the all-tied limit
    res.p = chi_square_sf(res.H, res.df);
    res.significant_5pct = res.p < 0.05;
    return res;
}

std::vector<PosthocResult> conover_iman(const GroupedSample& sample,
                                        const OmnibusResult& omnibus) {
    const RankedSample rs = pool_and_rank(sample);
    const double N = static_cast<double>(rs.N);
    const std::size_t k = sample.group_count();
    const double m = 0.5 * static_cast<double>(k) * static_cast<double>(k - 1);

    double sum_sq = 0.0;
    for (double r : rs.ranks) sum_sq += r * r;
    const double s2 = (sum_sq - N * (N + 1.0) * (N + 1.0) / 4.0) / (N - 1.0);
    const bool degenerate = s2 <= 0.0 || rs.N <= k;

    std::vector<double> mean_rank(k), mean_value(k);
    for (std::size_t i = 0; i < k; ++i) {
        const auto& vals = sample.groups[i].values;
        mean_rank[i] = rs.rank_sums[i] / static_cast<double>(rs.sizes[i]);
        mean_value[i] = std::accumulate(vals.begin(), vals.end(), 0.0) /
                        static_cast<double>(vals.size());
    }

    std::vector<PosthocResult> out;
    out.reserve(static_cast<std::size_t>(m));
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = i + 1; j < k; ++j) {
            // higher mean contribution listed first; ties keep input order
            std::size_t hi = i, lo = j;
            if (mean_value[j] > mean_value[i]) std::swap(hi, lo);

            PosthocResult pr;
            pr.candidate_hi = sample.groups[hi].candidate_id;
            pr.candidate_lo = sample.groups[lo].candidate_id;
            if (degenerate) {
                pr.t_stat = 0.0;
                pr.p_raw = 1.0;
                pr.p_adj = 1.0;
            } else {
                const double shrink = (N - 1.0 - omnibus.H) / (N - static_cast<double>(k));
                const double se = std::sqrt(
                    s2 * shrink *
                    (1.0 / static_cast<double>(rs.sizes[hi]) + 1.0 / static_cast<double>(rs.sizes[lo])));
                const double diff = mean_rank[hi] - mean_rank[lo];
                if (se == 0.0) {
                    // H at its maximum: complete group separation
                    pr.t_stat = diff == 0.0 ? 0.0
                                            : std::copysign(
                                                  std::numeric_limits<double>::infinity(), diff);
                    pr.p_raw = diff == 0.0 ? 1.0 : 0.0;
                } else {
                    pr.t_stat = diff / se;
                    pr.p_raw = 2.0 * student_t_sf(std::fabs(pr.t_stat),
                                                  static_cast<int>(rs.N - k));
                }
                pr.p_adj = std::min(1.0, m * pr.p_raw);
            }
            pr.reject_1pct = pr.p_adj < 0.01;
            pr.reject_5pct = pr.p_adj < 0.05;
            out.push_back(std::move(pr));
        }
    }
    return out;
}

} // namespace satev
