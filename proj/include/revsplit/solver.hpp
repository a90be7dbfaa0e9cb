#ifndef REVSPLIT_SOLVER_HPP
#define REVSPLIT_SOLVER_HPP

#include "revsplit/core.hpp"

namespace revsplit {

enum class PapMode {
    Exact,     // every paper gets exactly ell_pap reviewers
    AtMost,    // paper loads <= ell_pap, underload allowed
    FloorCeil, // floor(ell_pap) or ceil(ell_pap) per paper, total capped
};

/// One b-matching problem over subsets of a similarity matrix.
struct MatchSpec {
    std::vector<int> reviewers;  // global reviewer indices
    std::vector<int> papers;     // global paper indices
    int ell_rev = 1;
    double ell_pap = 1.0;
    PapMode pap_mode = PapMode::Exact;
    std::vector<std::pair<int, int>> excluded;  // forbidden (reviewer, paper)

    static MatchSpec over_all(const SimilarityMatrix& s, int ell_rev, double ell_pap,
                              PapMode mode = PapMode::Exact);
};

// Max-total-similarity b-matching via min-cost flow on 1e6-scaled integer
// costs. Deterministic: fixed arc order, and on small instances a
// lexicographic bias steers ties toward low (reviewer, paper) indices.
Assignment solve(const SimilarityMatrix& s, const MatchSpec& spec);

// Exhaustive oracle for desk-size instances (|reviewers|*|papers| <= 36).
// Ties broken toward the lexicographically smallest pair set.
Assignment brute_force_solve(const SimilarityMatrix& s, const MatchSpec& spec);

// Max-weight matching (all loads <= 1) restricted to a's pairs. The input
// must have reviewer and paper loads <= mu; the result has value >=
// value(a)/mu by the edge-coloring decomposition argument.
Assignment extract_unit_matching(const SimilarityMatrix& s, const Assignment& a, int mu);

}  // namespace revsplit

#endif
