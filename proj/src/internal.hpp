#ifndef REVSPLIT_INTERNAL_HPP
#define REVSPLIT_INTERNAL_HPP

#include <cmath>
#include <cstdint>

namespace revsplit::detail {

constexpr double kWeightScale = 1e6;

inline std::int64_t weight_int(double w) { return std::llround(w * kWeightScale); }

// Lexicographic tie bias: each pair edge gets a secondary profit of
// (E - index), dominated by one similarity unit only when the blown-up
// costs still fit comfortably in 64 bits. On larger instances ties fall
// back to the deterministic pivot order alone.
inline std::int64_t bias_scale(std::int64_t n_edges, int n_nodes) {
    if (n_edges == 0) return 1;
    const __int128 scale = static_cast<__int128>(n_edges) * n_edges + 1;
    const __int128 max_cost = static_cast<__int128>(1000000) * scale + n_edges;
    const __int128 limit = static_cast<__int128>(1) << 60;
    if ((max_cost + 1) * (n_nodes + 2) * 4 < limit)
        return static_cast<std::int64_t>(scale);
    return 1;
}

}  // namespace revsplit::detail

#endif
