#include "revsplit/constructions.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

#include "revsplit/rng.hpp"

namespace revsplit {

namespace {

bool nearly_integral(double x) { return std::abs(x - std::round(x)) <= 1e-9; }

// Smallest z with z^k >= n, computed in integers to dodge pow() rounding.
int grid_side(int n, int k) {
    int z = 1;
    while (true) {
        long long pw = 1;
        bool enough = false;
        for (int i = 0; i < k; ++i) {
            pw *= z;
            if (pw >= n) {
                enough = true;
                break;
            }
        }
        if (enough || pw >= n) return z;
        ++z;
    }
}

}  // namespace

SimilarityMatrix LowRankFactors::induced() const {
    SimilarityMatrix s = SimilarityMatrix::zeros(static_cast<int>(reviewer_vectors.size()),
                                                 static_cast<int>(paper_vectors.size()));
    for (int r = 0; r < s.n_reviewers; ++r)
        for (int p = 0; p < s.n_papers; ++p) {
            double dot = 0.0;
            for (int i = 0; i < k; ++i) dot += reviewer_vectors[r][i] * paper_vectors[p][i];
            s.at(r, p) = std::min(1.0, std::max(0.0, dot));
        }
    return s;
}

SimilarityMatrix gen_thm2(int n_papers, double beta) {
    if (n_papers < 1) throw ConfigError("need at least one paper");
    if (!(beta > 0.0) || beta > 1.0 + 1e-12) throw ConfigError("beta must lie in (0,1]");
    if (!nearly_integral(beta * n_papers))
        throw ConfigError("beta*n must be integral for the counterexample instance");
    const int doubled = static_cast<int>(std::round(beta * n_papers));
    SimilarityMatrix s = SimilarityMatrix::zeros(n_papers + doubled, n_papers);
    for (int i = 0; i < n_papers; ++i) s.at(i, i) = 1.0;
    for (int i = 0; i < doubled; ++i) s.at(n_papers + i, i) = 1.0;
    return s;
}

SimilarityMatrix gen_thm4_groups(int n_papers, int k) {
    if (n_papers < 2) throw ConfigError("need at least two papers");
    if (k < 1) throw ConfigError("rank must be >= 1");
    if (2 * k > n_papers) throw ConfigError("rank too large: need k <= n/2");
    SimilarityMatrix s = SimilarityMatrix::zeros(2 * n_papers, n_papers);
    const int half = (n_papers + 1) / 2;
    for (int p = 0; p < half; ++p)
        for (int r = 0; r < 2 * half; ++r) s.at(r, p) = 1.0;
    for (int g = 1; g < k; ++g) {
        const int p = half + (g - 1);
        const int r0 = 2 * half + 2 * (g - 1);
        s.at(r0, p) = 1.0;
        s.at(r0 + 1, p) = 1.0;
    }
    return s;
}

LowRankFactors gen_thm4_grid(int n_papers, int k) {
    if (n_papers < 1) throw ConfigError("need at least one paper");
    if (k < 1) throw ConfigError("rank must be >= 1");
    const int z = grid_side(n_papers, k);
    const double side = 1.0 / std::sqrt(static_cast<double>(k));
    const double step = z > 1 ? side / (z - 1) : 0.0;

    LowRankFactors f;
    f.k = k;
    f.paper_vectors.reserve(n_papers);
    std::vector<int> digits(k, 0);
    for (int p = 0; p < n_papers; ++p) {
        std::vector<double> v(k);
        for (int i = 0; i < k; ++i) v[i] = digits[i] * step;
        f.paper_vectors.push_back(v);
        f.reviewer_vectors.push_back(v);
        f.reviewer_vectors.push_back(std::move(v));
        // lexicographic increment, last axis fastest
        for (int i = k - 1; i >= 0; --i) {
            if (++digits[i] < z) break;
            digits[i] = 0;
        }
    }
    return f;
}

Gadget3dm gen_3dm_gadget(const std::vector<std::array<int, 3>>& tuples, int s) {
    if (s < 1) throw ConfigError("universe size must be >= 1");
    if (tuples.empty()) throw ConfigError("tuple set is empty");
    if (static_cast<int>(tuples.size()) < s)
        throw ConfigError("need at least s tuples for a feasible gadget");
    std::set<std::array<int, 3>> seen;
    for (const auto& t : tuples) {
        for (int coord : t)
            if (coord < 0 || coord >= s) throw ConfigError("tuple element out of range");
        if (!seen.insert(t).second) throw ConfigError("duplicate tuple");
    }

    const int nt = static_cast<int>(tuples.size());
    const int n = nt + 2 * s;       // 3s element papers + (|T|-s) dummies
    const int lambda = nt + 3 * s;  // 3s specialists + |T| tuple reviewers

    Gadget3dm g;
    g.sim = SimilarityMatrix::zeros(lambda, n);
    for (int i = 0; i < 3 * s; ++i) g.sim.at(i, i) = 1.0;
    for (int t = 0; t < nt; ++t) {
        const int r = 3 * s + t;
        g.sim.at(r, tuples[t][0]) = 1.0;
        g.sim.at(r, s + tuples[t][1]) = 1.0;
        g.sim.at(r, 2 * s + tuples[t][2]) = 1.0;
    }
    for (int p = 3 * s; p < n; ++p)
        for (int r = 0; r < lambda; ++r) g.sim.at(r, p) = 1.0;

    for (int block = 0; block < 3; ++block) {
        g.samples[block].resize(s);
        for (int i = 0; i < s; ++i) g.samples[block][i] = block * s + i;
    }
    g.loads.ell_rev = 1;
    g.loads.ell_pap1 = 1;
    g.loads.ell_pap2 = 1;
    g.loads.beta = static_cast<double>(s) / n;
    return g;
}

std::pair<LowRankFactors, SimilarityMatrix> gen_random_lowrank(int n_papers, int n_reviewers,
                                                               int k, std::uint64_t seed) {
    if (n_papers < 1 || n_reviewers < 1) throw ConfigError("empty instance");
    if (k < 1) throw ConfigError("rank must be >= 1");
    Rng rng(seed);
    const double scale = 1.0 / std::sqrt(static_cast<double>(k));
    LowRankFactors f;
    f.k = k;
    f.reviewer_vectors.resize(n_reviewers);
    for (auto& v : f.reviewer_vectors) {
        v.resize(k);
        for (double& x : v) x = rng.next_double() * scale;
    }
    f.paper_vectors.resize(n_papers);
    for (auto& v : f.paper_vectors) {
        v.resize(k);
        for (double& x : v) x = rng.next_double() * scale;
    }
    SimilarityMatrix s = f.induced();
    return {std::move(f), std::move(s)};
}

}  // namespace revsplit
