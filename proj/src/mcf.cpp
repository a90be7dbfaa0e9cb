#include "revsplit/mcf.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace revsplit {

namespace {
constexpr std::int64_t kInf = std::int64_t{1} << 60;
}

NetworkSimplex::NetworkSimplex(int node_count)
    : node_count_(node_count), supply_(node_count, 0) {}

int NetworkSimplex::add_arc(int from, int to, Flow lower, Flow upper, Cost cost) {
    if (from < 0 || from >= node_count_ || to < 0 || to >= node_count_)
        throw std::out_of_range("arc endpoint out of range");
    if (lower < 0 || upper < lower) throw std::invalid_argument("bad arc bounds");
    arcs_.push_back({from, to, lower, upper, cost});
    return static_cast<int>(arcs_.size()) - 1;
}

void NetworkSimplex::add_supply(int node, Flow amount) { supply_[node] += amount; }

// Primal network simplex with the spanning-tree structure kept as
// parent/pred arrays plus a preorder thread list. Artificial big-M arcs to a
// root node form the initial basis; leftover flow on them signals
// infeasibility.
bool NetworkSimplex::run() {
    const int n = node_count_;
    const int root = n;
    const int num_nodes = n + 1;
    const int m = static_cast<int>(arcs_.size());
    const int num_arcs = m + n;  // user arcs + one artificial arc per node

    // Arc arrays; artificial arcs are appended after the user arcs.
    std::vector<int> src(num_arcs), dst(num_arcs);
    std::vector<Flow> cap(num_arcs), flow(num_arcs, 0);
    std::vector<Cost> cost(num_arcs);

    // Fold lower bounds into node imbalances (flow = lower + residual flow).
    std::vector<Flow> balance(num_nodes, 0);
    for (int i = 0; i < n; ++i) balance[i] = supply_[i];
    Cost max_abs_cost = 0;
    for (int e = 0; e < m; ++e) {
        const Arc& a = arcs_[e];
        src[e] = a.from;
        dst[e] = a.to;
        cap[e] = a.upper - a.lower;
        cost[e] = a.cost;
        balance[a.from] -= a.lower;
        balance[a.to] += a.lower;
        max_abs_cost = std::max(max_abs_cost, std::abs(a.cost));
    }
    const Cost big_m = (max_abs_cost + 1) * static_cast<Cost>(num_nodes);

    // Spanning tree state.
    std::vector<int> parent(num_nodes), pred(num_nodes), pred_dir(num_nodes);
    std::vector<int> thread(num_nodes), rev_thread(num_nodes);
    std::vector<int> succ_num(num_nodes), last_succ(num_nodes);
    std::vector<Cost> pi(num_nodes);
    // -1 = at upper bound, 0 = in tree, +1 = at lower bound; the sign makes
    // state*reduced_cost < 0 the entering condition for both bound states.
    std::vector<signed char> state(num_arcs, 1);

    for (int i = 0; i < n; ++i) {
        const int e = m + i;
        cap[e] = kInf;
        cost[e] = big_m;
        if (balance[i] >= 0) {
            src[e] = i;
            dst[e] = root;
            flow[e] = balance[i];
            pred_dir[i] = +1;  // arc points from node to parent
            pi[i] = -big_m;
        } else {
            src[e] = root;
            dst[e] = i;
            flow[e] = -balance[i];
            pred_dir[i] = -1;
            pi[i] = big_m;
        }
        state[e] = 0;
        parent[i] = root;
        pred[i] = e;
        thread[i] = i + 1 < n ? i + 1 : root;
        rev_thread[i] = i > 0 ? i - 1 : root;
        succ_num[i] = 1;
        last_succ[i] = i;
    }
    parent[root] = -1;
    pred[root] = -1;
    pred_dir[root] = 0;
    pi[root] = 0;
    thread[root] = n > 0 ? 0 : root;
    rev_thread[root] = n > 0 ? n - 1 : root;
    succ_num[root] = n + 1;
    last_succ[root] = n > 0 ? n - 1 : root;

    const int block_size =
        std::max(64, static_cast<int>(std::sqrt(static_cast<double>(num_arcs))));
    int next_arc = 0;

    std::vector<int> subtree, stack;  // scratch for pivots
    std::vector<int> child_head(num_nodes), child_next(num_nodes);

    while (true) {
        // Entering arc: best violation within a block, scanning cyclically.
        int in_arc = -1;
        Cost best = 0;
        int countdown = block_size;
        for (int scanned = 0; scanned < num_arcs; ++scanned) {
            const int e = next_arc + scanned < num_arcs ? next_arc + scanned
                                                        : next_arc + scanned - num_arcs;
            if (state[e] != 0) {
                const Cost violation =
                    static_cast<Cost>(state[e]) * (cost[e] + pi[src[e]] - pi[dst[e]]);
                if (violation < best) {
                    best = violation;
                    in_arc = e;
                }
            }
            if (--countdown == 0) {
                if (in_arc >= 0) {
                    next_arc = e + 1 < num_arcs ? e + 1 : 0;
                    break;
                }
                countdown = block_size;
            }
        }
        if (in_arc < 0) break;  // optimal

        // Direction of flow increase through the entering arc.
        const int first = state[in_arc] > 0 ? src[in_arc] : dst[in_arc];
        const int second = state[in_arc] > 0 ? dst[in_arc] : src[in_arc];

        // Join node: walk the endpoint with the smaller subtree upward.
        int join_u = first, join_v = second;
        while (join_u != join_v) {
            if (succ_num[join_u] < succ_num[join_v])
                join_u = parent[join_u];
            else
                join_v = parent[join_v];
        }
        const int join = join_u;

        // Leaving arc: bottleneck residual around the cycle. The cycle is
        // traversed first -> (in_arc) -> second -> join -> first, so tree
        // arcs on the first-side path carry flow against their pred
        // direction and arcs on the second-side path carry flow with it.
        Flow delta = cap[in_arc];
        int u_out = -1;
        int side = 0;  // 1 = first side, 2 = second side
        for (int u = first; u != join; u = parent[u]) {
            const int e = pred[u];
            const Flow d = pred_dir[u] > 0 ? flow[e] : cap[e] - flow[e];
            if (d < delta) {
                delta = d;
                u_out = u;
                side = 1;
            }
        }
        for (int u = second; u != join; u = parent[u]) {
            const int e = pred[u];
            const Flow d = pred_dir[u] > 0 ? cap[e] - flow[e] : flow[e];
            if (d <= delta) {
                delta = d;
                u_out = u;
                side = 2;
            }
        }

        // Augment around the cycle.
        if (delta > 0) {
            flow[in_arc] += static_cast<Flow>(state[in_arc]) * delta;
            for (int u = first; u != join; u = parent[u])
                flow[pred[u]] -= static_cast<Flow>(pred_dir[u]) * delta;
            for (int u = second; u != join; u = parent[u])
                flow[pred[u]] += static_cast<Flow>(pred_dir[u]) * delta;
        }

        if (u_out < 0) {
            // The entering arc itself is the bottleneck: it flips bounds.
            state[in_arc] = -state[in_arc];
            continue;
        }

        // The entering arc joins the basis; pred[u_out] leaves it. The
        // subtree below the leaving arc gets re-rooted at u_in and rehung
        // under v_in.
        const int u_in = side == 1 ? first : second;
        const int v_in = side == 1 ? second : first;
        const int out_arc = pred[u_out];
        state[out_arc] = flow[out_arc] == 0 ? +1 : -1;

        // Collect the detached subtree in preorder.
        subtree.clear();
        {
            const int stop = thread[last_succ[u_out]];
            for (int u = u_out; u != stop; u = thread[u]) subtree.push_back(u);
        }
        const int sub_size = static_cast<int>(subtree.size());

        // Splice the subtree out of the thread list and shrink the
        // intervals of the old ancestors.
        {
            const int before = rev_thread[u_out];
            const int after = thread[last_succ[u_out]];
            thread[before] = after;
            rev_thread[after] = before;
            const int old_last = last_succ[u_out];
            for (int v = parent[u_out]; v != -1; v = parent[v]) {
                succ_num[v] -= sub_size;
                if (last_succ[v] == old_last) last_succ[v] = before;
            }
        }

        // Reverse the stem path u_in -> ... -> u_out.
        {
            int stem = u_in;
            int new_parent = v_in;
            int new_pred = in_arc;
            int new_dir = src[in_arc] == u_in ? +1 : -1;
            while (true) {
                const int old_parent = stem == u_out ? -1 : parent[stem];
                const int old_pred = pred[stem];
                const int old_dir = pred_dir[stem];
                parent[stem] = new_parent;
                pred[stem] = new_pred;
                pred_dir[stem] = new_dir;
                if (stem == u_out) break;
                new_parent = stem;
                new_pred = old_pred;
                new_dir = -old_dir;
                stem = old_parent;
            }
        }

        // Rebuild the preorder of the re-rooted subtree by an explicit DFS.
        // Children are visited in reverse collection order, which keeps the
        // procedure deterministic.
        {
            for (int u : subtree) child_head[u] = -1;
            for (int u : subtree) {
                if (u == u_in) continue;
                const int p = parent[u];
                child_next[u] = child_head[p];
                child_head[p] = u;
            }
            // Iterative preorder DFS from u_in, rebuilding thread links and
            // subtree statistics.
            stack.clear();
            stack.push_back(u_in);
            int prev = v_in;
            const int continuation = thread[v_in];
            while (!stack.empty()) {
                const int u = stack.back();
                stack.pop_back();
                thread[prev] = u;
                rev_thread[u] = prev;
                prev = u;
                for (int c = child_head[u]; c != -1; c = child_next[c]) stack.push_back(c);
            }
            thread[prev] = continuation;
            rev_thread[continuation] = prev;
            const int new_last = prev;

            // Recompute succ_num/last_succ inside the subtree in reverse
            // preorder (descendants before ancestors). The first child met
            // this way is the parent's preorder-last child, so last_succ
            // only has to be taken over while it is still unset.
            for (int u = new_last; u != v_in; u = rev_thread[u]) {
                succ_num[u] = 1;
                last_succ[u] = u;
            }
            for (int u = new_last; u != u_in; u = rev_thread[u]) {
                const int p = parent[u];
                succ_num[p] += succ_num[u];
                if (last_succ[p] == p) last_succ[p] = last_succ[u];
            }

            // Grow the intervals of the new ancestors.
            for (int v = v_in; v != -1; v = parent[v]) {
                succ_num[v] += sub_size;
                if (last_succ[v] == v_in) last_succ[v] = new_last;
            }

            // Shift potentials of the whole moved subtree by one constant.
            const Cost target = pred_dir[u_in] > 0 ? pi[v_in] - cost[in_arc]
                                                   : pi[v_in] + cost[in_arc];
            const Cost shift = target - pi[u_in];
            if (shift != 0) {
                const int stop = thread[new_last];
                for (int u = thread[v_in]; u != stop; u = thread[u]) pi[u] += shift;
            }
        }
        state[in_arc] = 0;
    }

    // Any remaining artificial flow means the imbalances cannot be routed.
    for (int e = m; e < num_arcs; ++e)
        if (flow[e] != 0) return false;

    result_flow_.assign(m, 0);
    total_cost_ = 0;
    for (int e = 0; e < m; ++e) {
        result_flow_[e] = flow[e] + arcs_[e].lower;
        total_cost_ += result_flow_[e] * arcs_[e].cost;
    }
    return true;
}

}  // namespace revsplit
