#ifndef REVSPLIT_CONSTRUCTIONS_HPP
#define REVSPLIT_CONSTRUCTIONS_HPP

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

#include "revsplit/core.hpp"

namespace revsplit {

/// Rank-k factorization: S = reviewer_vectors . paper_vectors^T.
struct LowRankFactors {
    int k = 1;
    std::vector<std::vector<double>> reviewer_vectors;
    std::vector<std::vector<double>> paper_vectors;

    // Induced similarity matrix, entries clamped into [0,1].
    SimilarityMatrix induced() const;
};

// Counterexample instance: (1+beta)*n reviewers, paper i matches reviewer i
// with similarity 1, and additionally reviewer n+i when i < beta*n.
// Random split on it loses at least beta^4/(1+beta)^3 in expectation.
SimilarityMatrix gen_thm2(int n_papers, double beta);

// Block-ones group instance (2n reviewers, rank exactly k): one big group
// with ceil(n/2) papers and twice as many reviewers, then k-1 groups of one
// paper and two reviewers; leftovers are all-zero.
SimilarityMatrix gen_thm4_groups(int n_papers, int k);

// Grid instance: n paper vectors at distinct lexicographic grid points of
// [0, 1/sqrt(k)]^k with ceil(n^(1/k)) levels per axis, two reviewer vectors
// co-located with each paper vector.
LowRankFactors gen_thm4_grid(int n_papers, int k);

/// Hardness gadget built from a 3-dimensional matching instance.
struct Gadget3dm {
    SimilarityMatrix sim;
    // The three canonical second-stage samples: the X, Y and Z paper blocks.
    std::array<std::vector<int>, 3> samples;
    LoadConfig loads;  // all loads 1, beta = s/n
};

// tuples are (x,y,z) triples over three universes of size s each.
// Papers: s X-papers, s Y-papers, s Z-papers, then |T|-s dummies everyone
// can review. Reviewers: 3s specialists, then one per tuple.
Gadget3dm gen_3dm_gadget(const std::vector<std::array<int, 3>>& tuples, int s);

// Random nonnegative rank-<=k instance with factor entries uniform in
// [0, 1/sqrt(k)]; deterministic per seed.
std::pair<LowRankFactors, SimilarityMatrix> gen_random_lowrank(int n_papers, int n_reviewers,
                                                               int k, std::uint64_t seed);

}  // namespace revsplit

#endif
