#include "revsplit/twostage.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "internal.hpp"
#include "revsplit/mcf.hpp"
#include "revsplit/rng.hpp"
#include "revsplit/solver.hpp"

namespace revsplit {

using detail::bias_scale;
using detail::weight_int;

namespace {

// sorted, deduplicated, range-checked copy
std::vector<int> canon_subset(std::vector<int> v, int limit, const char* what) {
    std::sort(v.begin(), v.end());
    if (std::adjacent_find(v.begin(), v.end()) != v.end())
        throw ConfigError(std::string("duplicate ") + what + " index in subset");
    if (!v.empty() && (v.front() < 0 || v.back() >= limit))
        throw ConfigError(std::string(what) + " index out of range");
    return v;
}

std::vector<int> complement(const std::vector<int>& sorted_subset, int n) {
    std::vector<int> out;
    out.reserve(n - sorted_subset.size());
    size_t k = 0;
    for (int i = 0; i < n; ++i) {
        if (k < sorted_subset.size() && sorted_subset[k] == i)
            ++k;
        else
            out.push_back(i);
    }
    return out;
}

}  // namespace

TwoStageResult oracle_optimal(const SimilarityMatrix& s, const std::vector<int>& p2_in,
                              const LoadConfig& loads) {
    const int lam = s.n_reviewers, n = s.n_papers;
    const auto p2 = canon_subset(p2_in, n, "paper");
    if (static_cast<int>(p2.size()) != loads.p2_size(n))
        throw ConfigError("|P2| must equal beta*n");
    loads.check_supply(lam, n);

    // One circulation; each reviewer node fans into both paper banks, so the
    // combined stage load shares the ell_rev budget.
    const int k = static_cast<int>(p2.size());
    const int S = 0, T = 1, rev_base = 2, bank1_base = 2 + lam, bank2_base = 2 + lam + n;
    const int n_nodes = 2 + lam + n + k;
    NetworkSimplex ns(n_nodes);

    const std::int64_t n_edges = static_cast<std::int64_t>(lam) * (n + k);
    const std::int64_t scale = bias_scale(n_edges, n_nodes);

    for (int r = 0; r < lam; ++r) ns.add_arc(S, rev_base + r, 0, loads.ell_rev, 0);
    std::int64_t edge_idx = 0;
    const int first_pair_arc = lam;
    for (int r = 0; r < lam; ++r) {
        for (int p = 0; p < n; ++p) {
            std::int64_t cost = -(weight_int(s.at(r, p)) * scale);
            if (scale > 1) cost -= (n_edges - edge_idx);
            ns.add_arc(rev_base + r, bank1_base + p, 0, 1, cost);
            ++edge_idx;
        }
        for (int j = 0; j < k; ++j) {
            std::int64_t cost = -(weight_int(s.at(r, p2[j])) * scale);
            if (scale > 1) cost -= (n_edges - edge_idx);
            ns.add_arc(rev_base + r, bank2_base + j, 0, 1, cost);
            ++edge_idx;
        }
    }
    for (int p = 0; p < n; ++p) ns.add_arc(bank1_base + p, T, loads.ell_pap1, loads.ell_pap1, 0);
    for (int j = 0; j < k; ++j) ns.add_arc(bank2_base + j, T, loads.ell_pap2, loads.ell_pap2, 0);
    ns.add_arc(T, S, 0, static_cast<long long>(loads.ell_rev) * lam, 0);

    if (!ns.run()) throw InfeasibleError("joint oracle assignment infeasible");

    std::vector<std::pair<int, int>> pairs1, pairs2;
    for (int r = 0; r < lam; ++r) {
        const int base = first_pair_arc + r * (n + k);
        for (int p = 0; p < n; ++p)
            if (ns.flow(base + p) > 0) pairs1.push_back({r, p});
        for (int j = 0; j < k; ++j)
            if (ns.flow(base + n + j) > 0) pairs2.push_back({r, p2[j]});
    }
    TwoStageResult res;
    res.stage1 = make_assignment(s, std::move(pairs1));
    res.stage2 = make_assignment(s, std::move(pairs2));
    res.mean_sim = mean_similarity(res.stage1, res.stage2, loads, n);
    return res;
}

TwoStageResult split_value(const SimilarityMatrix& s, const std::vector<int>& r2_in,
                           const std::vector<int>& p2_in, const LoadConfig& loads) {
    const int lam = s.n_reviewers, n = s.n_papers;
    const auto r2 = canon_subset(r2_in, lam, "reviewer");
    const auto p2 = canon_subset(p2_in, n, "paper");
    if (static_cast<int>(p2.size()) != loads.p2_size(n))
        throw ConfigError("|P2| must equal beta*n");
    loads.check_split(lam, n, static_cast<int>(r2.size()));

    TwoStageResult res;
    MatchSpec spec1;
    spec1.reviewers = complement(r2, lam);
    spec1.papers.resize(n);
    std::iota(spec1.papers.begin(), spec1.papers.end(), 0);
    spec1.ell_rev = loads.ell_rev;
    spec1.ell_pap = loads.ell_pap1;
    try {
        res.stage1 = solve(s, spec1);
    } catch (const InfeasibleError& e) {
        throw InfeasibleError(std::string("stage one: ") + e.what());
    }
    MatchSpec spec2;
    spec2.reviewers = r2;
    spec2.papers = p2;
    spec2.ell_rev = loads.ell_rev;
    spec2.ell_pap = loads.ell_pap2;
    try {
        res.stage2 = solve(s, spec2);
    } catch (const InfeasibleError& e) {
        throw InfeasibleError(std::string("stage two: ") + e.what());
    }
    res.mean_sim = mean_similarity(res.stage1, res.stage2, loads, n);
    return res;
}

double suboptimality(const SimilarityMatrix& s, const std::vector<int>& r2,
                     const std::vector<int>& p2, const LoadConfig& loads) {
    return oracle_optimal(s, p2, loads).mean_sim - split_value(s, r2, p2, loads).mean_sim;
}

double q_prime(const SimilarityMatrix& s, const std::vector<int>& r2_in,
               const std::vector<int>& p2_in, const LoadConfig& loads) {
    const int lam = s.n_reviewers, n = s.n_papers;
    const auto r2 = canon_subset(r2_in, lam, "reviewer");
    const auto p2 = canon_subset(p2_in, n, "paper");

    MatchSpec spec1;
    spec1.reviewers = complement(r2, lam);
    spec1.papers.resize(n);
    std::iota(spec1.papers.begin(), spec1.papers.end(), 0);
    spec1.ell_rev = loads.ell_rev;
    spec1.ell_pap = loads.ell_pap1;
    spec1.pap_mode = PapMode::AtMost;
    MatchSpec spec2;
    spec2.reviewers = r2;
    spec2.papers = p2;
    spec2.ell_rev = loads.ell_rev;
    spec2.ell_pap = loads.ell_pap2;
    spec2.pap_mode = PapMode::AtMost;

    const Assignment a1 = solve(s, spec1);
    const Assignment a2 = solve(s, spec2);
    // fixed divisor, independent of the actual subset sizes
    return mean_similarity(a1, a2, loads, n);
}

SplitInstance draw_split(const SimilarityMatrix& s, const LoadConfig& loads, DrawMode mode,
                         const SplitParams& params, std::uint64_t seed) {
    const int lam = s.n_reviewers, n = s.n_papers;
    const int m2 = params.r2_size >= 0 ? params.r2_size : loads.default_r2_size(lam);
    const int k = params.p2_size >= 0 ? params.p2_size : loads.p2_size(n);
    if (m2 > lam) throw ConfigError("requested |R2| exceeds reviewer count");
    if (k > n) throw ConfigError("requested |P2| exceeds paper count");

    SplitInstance inst;
    inst.seed = seed;
    inst.draw_mode = mode;
    Rng rng(seed);

    const bool needs_scores = mode == DrawMode::ScoreTop || mode == DrawMode::ScoreMiddle;
    if (needs_scores && static_cast<int>(params.scores.size()) != n)
        throw ConfigError("score-based draw modes need one score per paper");

    switch (mode) {
        case DrawMode::UniformFixedSize:
            inst.r2 = rng.sample(lam, m2);
            inst.p2 = rng.sample(n, k);
            break;
        case DrawMode::IndependentInclusion: {
            const double pr = loads.beta / (1.0 + loads.beta);
            for (int r = 0; r < lam; ++r)
                if (rng.bernoulli(pr)) inst.r2.push_back(r);
            for (int p = 0; p < n; ++p)
                if (rng.bernoulli(loads.beta)) inst.p2.push_back(p);
            break;
        }
        case DrawMode::ScoreTop:
        case DrawMode::ScoreMiddle: {
            inst.r2 = rng.sample(lam, m2);
            std::vector<int> order(n);
            std::iota(order.begin(), order.end(), 0);
            std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
                return params.scores[a] < params.scores[b];
            });
            if (mode == DrawMode::ScoreTop) {
                inst.p2.assign(order.end() - k, order.end());
            } else {
                // window of k papers centered on the percentile paper
                const int center =
                    static_cast<int>(std::ceil(params.percentile * n - 1e-9)) - 1;
                const int start = std::clamp(center - k / 2, 0, n - k);
                inst.p2.assign(order.begin() + start, order.begin() + start + k);
            }
            std::sort(inst.p2.begin(), inst.p2.end());
            break;
        }
        case DrawMode::Explicit:
            inst.r2 = canon_subset(params.explicit_r2, lam, "reviewer");
            inst.p2 = canon_subset(params.explicit_p2, n, "paper");
            break;
    }
    return inst;
}

EstimatorResult estimate_f(const SimilarityMatrix& s, const std::vector<int>& r2,
                           const LoadConfig& loads, int n_samples, std::uint64_t seed,
                           DrawMode p2_mode, bool redraw_r2) {
    if (n_samples < 1) throw ConfigError("n_samples must be >= 1");
    if (p2_mode == DrawMode::Explicit)
        throw ConfigError("estimate_f needs a random draw mode");

    std::vector<double> values;
    values.reserve(n_samples);
    SplitParams params;
    for (int i = 0; i < n_samples; ++i) {
        const std::uint64_t si = derive_seed(seed, static_cast<std::uint64_t>(i));
        const SplitInstance inst = draw_split(s, loads, p2_mode, params, si);
        const std::vector<int>& r2_i = redraw_r2 ? inst.r2 : r2;
        if (p2_mode == DrawMode::IndependentInclusion) {
            // sizes vary, so score with the underload-tolerant Q'
            values.push_back(q_prime(s, r2_i, inst.p2, loads));
        } else {
            values.push_back(split_value(s, r2_i, inst.p2, loads).mean_sim);
        }
    }
    EstimatorResult res;
    res.n_samples = n_samples;
    res.seed = seed;
    res.mean = std::accumulate(values.begin(), values.end(), 0.0) / n_samples;
    if (n_samples == 1) {
        res.single_sample = true;
    } else {
        double ss = 0.0;
        for (double v : values) ss += (v - res.mean) * (v - res.mean);
        res.stderr_ = std::sqrt(ss / (n_samples - 1)) / std::sqrt(double(n_samples));
    }
    return res;
}

double sampled_objective(const SimilarityMatrix& s, const std::vector<int>& r2,
                         const LoadConfig& loads,
                         const std::vector<std::vector<int>>& samples) {
    if (samples.empty()) throw ConfigError("sampled_objective needs at least one sample");
    double total = 0.0;
    for (const auto& p2 : samples) total += split_value(s, r2, p2, loads).mean_sim;
    return total / static_cast<double>(samples.size());
}

namespace {

void best_r2_rec(const SimilarityMatrix& s, const LoadConfig& loads,
                 const std::vector<std::vector<int>>& samples, std::vector<int>& cur,
                 int next, int remaining, std::vector<int>& best, double& best_val) {
    if (remaining == 0) {
        const double v = sampled_objective(s, cur, loads, samples);
        if (v > best_val + kValueTol) {
            best_val = v;
            best = cur;
        }
        return;
    }
    for (int r = next; r <= s.n_reviewers - remaining; ++r) {
        cur.push_back(r);
        best_r2_rec(s, loads, samples, cur, r + 1, remaining - 1, best, best_val);
        cur.pop_back();
    }
}

}  // namespace

std::pair<std::vector<int>, double> brute_force_best_r2(
    const SimilarityMatrix& s, const LoadConfig& loads,
    const std::vector<std::vector<int>>& samples) {
    if (s.n_reviewers > 20) throw SizeError("too many reviewers for exhaustive search");
    if (samples.empty()) throw ConfigError("need at least one sample");
    const int m2 = loads.default_r2_size(s.n_reviewers);
    std::vector<int> cur, best;
    double best_val = -1.0;
    best_r2_rec(s, loads, samples, cur, 0, m2, best, best_val);
    if (best_val < 0) throw InfeasibleError("no feasible reviewer split found");
    return {best, best_val};
}

TwoStageResult paper_split_value(const SimilarityMatrix& s, const std::vector<int>& r2_in,
                                 const std::vector<int>& p2_in, const LoadConfig& loads) {
    const int lam = s.n_reviewers, n = s.n_papers;
    const auto r2 = canon_subset(r2_in, lam, "reviewer");
    const auto p2 = canon_subset(p2_in, n, "paper");

    TwoStageResult res;
    MatchSpec spec1;
    spec1.reviewers = complement(r2, lam);
    spec1.papers = complement(p2, n);
    spec1.ell_rev = loads.ell_rev;
    spec1.ell_pap = loads.ell_pap1;
    try {
        res.stage1 = solve(s, spec1);
    } catch (const InfeasibleError& e) {
        throw InfeasibleError(std::string("stage one: ") + e.what());
    }
    MatchSpec spec2;
    spec2.reviewers = r2;
    spec2.papers = p2;
    spec2.ell_rev = loads.ell_rev;
    spec2.ell_pap = loads.ell_pap2;
    try {
        res.stage2 = solve(s, spec2);
    } catch (const InfeasibleError& e) {
        throw InfeasibleError(std::string("stage two: ") + e.what());
    }
    const long long divisor =
        static_cast<long long>(loads.ell_pap1) * (n - static_cast<int>(p2.size())) +
        static_cast<long long>(loads.ell_pap2) * static_cast<int>(p2.size());
    if (divisor <= 0) throw ConfigError("empty problem: zero total review count");
    res.mean_sim = (res.stage1.value + res.stage2.value) / static_cast<double>(divisor);
    return res;
}

}  // namespace revsplit
