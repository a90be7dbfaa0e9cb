#include "revsplit/solver.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "revsplit/mcf.hpp"
#include "internal.hpp"

namespace revsplit {

using detail::bias_scale;
using detail::weight_int;

namespace {

bool nearly_integral(double x) { return std::abs(x - std::round(x)) <= 1e-9; }

struct SpecShape {
    int m = 0;         // reviewers
    int q = 0;         // papers
    int lb = 0;        // per-paper lower load
    int ub = 0;        // per-paper upper load
    long long bonus = 0;  // aggregate slack above lb*q (floor-ceil only)
};

SpecShape check_spec(const SimilarityMatrix& s, const MatchSpec& spec) {
    SpecShape sh;
    sh.m = static_cast<int>(spec.reviewers.size());
    sh.q = static_cast<int>(spec.papers.size());
    std::set<int> seen;
    for (int r : spec.reviewers) {
        if (r < 0 || r >= s.n_reviewers) throw ConfigError("reviewer index out of range");
        if (!seen.insert(r).second) throw ConfigError("duplicate reviewer in subset");
    }
    seen.clear();
    for (int p : spec.papers) {
        if (p < 0 || p >= s.n_papers) throw ConfigError("paper index out of range");
        if (!seen.insert(p).second) throw ConfigError("duplicate paper in subset");
    }
    if (spec.ell_rev < 1) throw ConfigError("ell_rev must be >= 1");
    if (!(spec.ell_pap > 0)) throw ConfigError("ell_pap must be positive");

    switch (spec.pap_mode) {
        case PapMode::Exact:
            if (!nearly_integral(spec.ell_pap))
                throw ConfigError("exact mode needs an integral ell_pap; use floor-ceil");
            sh.lb = sh.ub = static_cast<int>(std::round(spec.ell_pap));
            break;
        case PapMode::AtMost:
            if (!nearly_integral(spec.ell_pap))
                throw ConfigError("at-most mode needs an integral ell_pap");
            sh.lb = 0;
            sh.ub = static_cast<int>(std::round(spec.ell_pap));
            break;
        case PapMode::FloorCeil:
            sh.lb = static_cast<int>(std::floor(spec.ell_pap + 1e-9));
            sh.ub = static_cast<int>(std::ceil(spec.ell_pap - 1e-9));
            sh.bonus = static_cast<long long>(std::floor(spec.ell_pap * sh.q + 1e-9)) -
                       static_cast<long long>(sh.lb) * sh.q;
            break;
    }

    const long long supply = static_cast<long long>(spec.ell_rev) * sh.m;
    const long long demand = static_cast<long long>(sh.lb) * sh.q;
    if (demand > supply)
        throw InfeasibleError("required paper load " + std::to_string(demand) +
                              " exceeds reviewer capacity " + std::to_string(supply));
    return sh;
}

}  // namespace

MatchSpec MatchSpec::over_all(const SimilarityMatrix& s, int ell_rev, double ell_pap,
                              PapMode mode) {
    MatchSpec spec;
    spec.reviewers.resize(s.n_reviewers);
    std::iota(spec.reviewers.begin(), spec.reviewers.end(), 0);
    spec.papers.resize(s.n_papers);
    std::iota(spec.papers.begin(), spec.papers.end(), 0);
    spec.ell_rev = ell_rev;
    spec.ell_pap = ell_pap;
    spec.pap_mode = mode;
    return spec;
}

Assignment solve(const SimilarityMatrix& s, const MatchSpec& spec) {
    const SpecShape sh = check_spec(s, spec);
    std::set<std::pair<int, int>> excluded(spec.excluded.begin(), spec.excluded.end());

    // Circulation: S -> reviewers -> papers -> T -> S. Exact loads become
    // lower bounds on the paper->T arcs; the return arc closes the loop.
    const int S = 0, T = 1;
    const int rev_base = 2, pap_base = 2 + sh.m;
    const int n_nodes = 2 + sh.m + sh.q + (sh.bonus > 0 ? 1 : 0);
    const int bonus_node = 2 + sh.m + sh.q;
    NetworkSimplex ns(n_nodes);

    std::int64_t n_edges = 0;
    for (int i = 0; i < sh.m; ++i)
        for (int j = 0; j < sh.q; ++j)
            if (!excluded.count({spec.reviewers[i], spec.papers[j]})) ++n_edges;
    const std::int64_t scale = bias_scale(n_edges, n_nodes);

    for (int i = 0; i < sh.m; ++i) ns.add_arc(S, rev_base + i, 0, spec.ell_rev, 0);
    std::vector<std::pair<int, std::pair<int, int>>> pair_arcs;  // arc id -> global pair
    std::int64_t edge_idx = 0;
    for (int i = 0; i < sh.m; ++i) {
        for (int j = 0; j < sh.q; ++j) {
            const std::pair<int, int> pair{spec.reviewers[i], spec.papers[j]};
            if (excluded.count(pair)) continue;
            const std::int64_t w = weight_int(s.at(pair.first, pair.second));
            std::int64_t cost = -(w * scale);
            if (scale > 1) cost -= (n_edges - edge_idx);
            const int arc = ns.add_arc(rev_base + i, pap_base + j, 0, 1, cost);
            pair_arcs.push_back({arc, pair});
            ++edge_idx;
        }
    }
    for (int j = 0; j < sh.q; ++j) ns.add_arc(pap_base + j, T, sh.lb, sh.lb, 0);
    if (spec.pap_mode == PapMode::FloorCeil && sh.bonus > 0) {
        for (int j = 0; j < sh.q; ++j) ns.add_arc(pap_base + j, bonus_node, 0, sh.ub - sh.lb, 0);
        ns.add_arc(bonus_node, T, 0, sh.bonus, 0);
    } else if (spec.pap_mode == PapMode::AtMost) {
        for (int j = 0; j < sh.q; ++j) ns.add_arc(pap_base + j, T, 0, sh.ub - sh.lb, 0);
    }
    const long long max_total = static_cast<long long>(spec.ell_rev) * sh.m;
    ns.add_arc(T, S, 0, max_total, 0);

    if (!ns.run())
        throw InfeasibleError("no feasible assignment satisfies the loads and exclusions");

    std::vector<std::pair<int, int>> pairs;
    for (const auto& [arc, pair] : pair_arcs)
        if (ns.flow(arc) > 0) pairs.push_back(pair);
    return make_assignment(s, std::move(pairs));
}

namespace {

struct BruteState {
    const SimilarityMatrix* s;
    const MatchSpec* spec;
    SpecShape sh;
    std::set<std::pair<int, int>> excluded;
    std::vector<int> cap;                  // remaining reviewer capacity
    std::vector<std::pair<int, int>> cur;  // local (paper, reviewer) picks as global pairs
    long long cur_value = 0;
    long long bonus_left = 0;
    std::vector<long long> suffix_bound;   // optimistic value of papers j..q-1
    bool found = false;
    long long best_value = 0;
    std::vector<std::pair<int, int>> best_pairs;
};

void brute_paper(BruteState& st, int j);

void brute_choose(BruteState& st, int j, int start, int remaining) {
    if (remaining == 0) {
        brute_paper(st, j + 1);
        return;
    }
    const int m = st.sh.m;
    for (int i = start; i <= m - remaining; ++i) {
        if (st.cap[i] == 0) continue;
        const std::pair<int, int> pair{st.spec->reviewers[i], st.spec->papers[j]};
        if (st.excluded.count(pair)) continue;
        st.cap[i]--;
        st.cur.push_back(pair);
        st.cur_value += weight_int(st.s->at(pair.first, pair.second));
        brute_choose(st, j, i + 1, remaining - 1);
        st.cur_value -= weight_int(st.s->at(pair.first, pair.second));
        st.cur.pop_back();
        st.cap[i]++;
    }
}

void brute_paper(BruteState& st, int j) {
    if (j == st.sh.q) {
        auto pairs = st.cur;
        std::sort(pairs.begin(), pairs.end());
        if (!st.found || st.cur_value > st.best_value ||
            (st.cur_value == st.best_value && pairs < st.best_pairs)) {
            st.found = true;
            st.best_value = st.cur_value;
            st.best_pairs = std::move(pairs);
        }
        return;
    }
    if (st.found && st.cur_value + st.suffix_bound[j] < st.best_value) return;
    const bool can_extra = st.sh.ub > st.sh.lb &&
                           (st.spec->pap_mode != PapMode::FloorCeil || st.bonus_left > 0);
    const int lo = st.spec->pap_mode == PapMode::AtMost ? 0 : st.sh.lb;
    for (int take = lo; take <= (can_extra ? st.sh.ub : st.sh.lb); ++take) {
        const bool uses_bonus =
            st.spec->pap_mode == PapMode::FloorCeil && take > st.sh.lb;
        if (uses_bonus) st.bonus_left--;
        brute_choose(st, j, 0, take);
        if (uses_bonus) st.bonus_left++;
    }
}

}  // namespace

Assignment brute_force_solve(const SimilarityMatrix& s, const MatchSpec& spec) {
    if (static_cast<long long>(spec.reviewers.size()) * spec.papers.size() > 36)
        throw SizeError("instance too large for exhaustive solve");
    BruteState st;
    st.s = &s;
    st.spec = &spec;
    st.sh = check_spec(s, spec);
    st.excluded.insert(spec.excluded.begin(), spec.excluded.end());
    st.cap.assign(st.sh.m, spec.ell_rev);
    st.bonus_left = st.sh.bonus;

    // Optimistic per-paper bound: top ub admissible weights, capacities ignored.
    st.suffix_bound.assign(st.sh.q + 1, 0);
    for (int j = st.sh.q - 1; j >= 0; --j) {
        std::vector<long long> ws;
        for (int i = 0; i < st.sh.m; ++i) {
            const std::pair<int, int> pair{spec.reviewers[i], spec.papers[j]};
            if (!st.excluded.count(pair)) ws.push_back(weight_int(s.at(pair.first, pair.second)));
        }
        std::sort(ws.rbegin(), ws.rend());
        long long top = 0;
        for (int t = 0; t < std::min<int>(st.sh.ub, static_cast<int>(ws.size())); ++t)
            top += ws[t];
        st.suffix_bound[j] = st.suffix_bound[j + 1] + top;
    }

    brute_paper(st, 0);
    if (!st.found)
        throw InfeasibleError("no feasible assignment satisfies the loads and exclusions");
    return make_assignment(s, st.best_pairs);
}

Assignment extract_unit_matching(const SimilarityMatrix& s, const Assignment& a, int mu) {
    if (mu < 1) throw ConfigError("mu must be >= 1");
    if (a.empty()) return Assignment{};
    std::set<int> revs, paps;
    for (const auto& [r, p] : a.pairs) {
        revs.insert(r);
        paps.insert(p);
    }
    for (int load : a.reviewer_loads(s.n_reviewers))
        if (load > mu) throw ConfigError("reviewer load exceeds mu");
    for (int load : a.paper_loads(s.n_papers))
        if (load > mu) throw ConfigError("paper load exceeds mu");

    MatchSpec spec;
    spec.reviewers.assign(revs.begin(), revs.end());
    spec.papers.assign(paps.begin(), paps.end());
    spec.ell_rev = 1;
    spec.ell_pap = 1.0;
    spec.pap_mode = PapMode::AtMost;
    std::set<std::pair<int, int>> allowed(a.pairs.begin(), a.pairs.end());
    for (int r : spec.reviewers)
        for (int p : spec.papers)
            if (!allowed.count({r, p})) spec.excluded.push_back({r, p});
    return solve(s, spec);
}

}  // namespace revsplit
