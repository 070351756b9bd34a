#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace satev {

// One group of score contributions attributed to a candidate translation.
struct Group {
    std::string candidate_id;
    std::vector<double> values;
};

// k >= 2 groups, every group non-empty. N = sum of group sizes.
struct GroupedSample {
    std::vector<Group> groups;

    std::size_t group_count() const { return groups.size(); }
    std::size_t total_count() const;
};

struct OmnibusResult {
    double H = 0.0;          // tie-corrected statistic
    int df = 0;              // k - 1
    double p = 1.0;
    bool significant_5pct = false;
};

// One unordered pair, reported with the higher-mean group first.
struct PosthocResult {
    std::string candidate_hi;
    std::string candidate_lo;
    double t_stat = 0.0;
    double p_raw = 1.0;
    double p_adj = 1.0;      // Bonferroni: min(1, m * p_raw), m = k(k-1)/2
    bool reject_1pct = false;
    bool reject_5pct = false;
};

// Mid-rank assignment. Returns the rank vector (parallel to values) and the
// size of every tie group of two or more equal values.
std::pair<std::vector<double>, std::vector<std::size_t>>
rank_with_ties(const std::vector<double>& values);

// Tie-corrected Kruskal-Wallis: H = [(12/(N(N+1))) sum R_i^2/n_i - 3(N+1)] / C
// with C = 1 - sum(t^3 - t)/(N^3 - N). All observations identical (C = 0)
// yields H = 0, p = 1. p = chi_square_sf(H, k-1).
OmnibusResult kruskal_wallis(const GroupedSample& sample);

// Conover-Iman pairwise comparisons over pooled mid-ranks:
//   t = (Rbar_i - Rbar_j) / sqrt(S^2 * ((N-1-H)/(N-k)) * (1/n_i + 1/n_j))
// with S^2 = (1/(N-1)) (sum r^2 - N(N+1)^2/4). Two-sided p via Student-t with
// N-k degrees of freedom; Bonferroni over all k(k-1)/2 pairs. Computes
// unconditionally; the caller enforces omnibus gating. Degenerate variance
// (S^2 <= 0 or N <= k) reports every pair with t = 0, p = 1.
std::vector<PosthocResult> conover_iman(const GroupedSample& sample,
                                        const OmnibusResult& omnibus);

} // namespace satev
