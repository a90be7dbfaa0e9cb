#ifndef REVSPLIT_MCF_HPP
#define REVSPLIT_MCF_HPP

#include <cstdint>
#include <vector>

namespace revsplit {

/// Primal network simplex for min-cost flow with per-arc [lower, upper]
/// bounds and node supplies. Integer costs only; deterministic pivoting
/// (block search in fixed arc order, first index wins ties).
class NetworkSimplex {
  public:
    using Flow = std::int64_t;
    using Cost = std::int64_t;

    explicit NetworkSimplex(int node_count);

    int add_arc(int from, int to, Flow lower, Flow upper, Cost cost);
    void add_supply(int node, Flow amount);

    // Returns false when no feasible flow exists.
    bool run();

    Flow flow(int arc) const { return result_flow_[arc]; }
    Cost total_cost() const { return total_cost_; }

  private:
    struct Arc {
        int from, to;
        Flow lower, upper;
        Cost cost;
    };

    int node_count_;
    std::vector<Arc> arcs_;
    std::vector<Flow> supply_;
    std::vector<Flow> result_flow_;
    Cost total_cost_ = 0;
};

}  // namespace revsplit

#endif
