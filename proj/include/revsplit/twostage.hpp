#ifndef REVSPLIT_TWOSTAGE_HPP
#define REVSPLIT_TWOSTAGE_HPP

#include <cstdint>
#include <optional>

#include "revsplit/core.hpp"

namespace revsplit {

struct TwoStageResult {
    Assignment stage1;
    Assignment stage2;
    double mean_sim = 0.0;
    std::optional<double> oracle_mean_sim;
    std::optional<double> fraction_of_oracle;
};

struct EstimatorResult {
    double mean = 0.0;
    double stderr_ = 0.0;
    int n_samples = 0;
    std::uint64_t seed = 0;
    bool single_sample = false;  // stderr reported as 0 by convention
};

/// Extra knobs for draw_split; negative sizes mean "use the default".
struct SplitParams {
    int r2_size = -1;
    int p2_size = -1;
    double percentile = 0.63;              // score-middle window center
    std::vector<double> scores;            // per-paper, score modes only
    std::vector<int> explicit_r2, explicit_p2;
};

// Jointly optimal (stage1, stage2) under a shared reviewer budget: one flow
// where each reviewer's capacity-ell_rev node feeds both paper banks.
// mean_sim = Q*(P2).
TwoStageResult oracle_optimal(const SimilarityMatrix& s, const std::vector<int>& p2,
                              const LoadConfig& loads);

// Two independent exact solves: stage1 on (R \ R2, P), stage2 on (R2, P2).
// mean_sim = Q(R2, P2).
TwoStageResult split_value(const SimilarityMatrix& s, const std::vector<int>& r2,
                           const std::vector<int>& p2, const LoadConfig& loads);

// Q*(P2) - Q(R2, P2); nonnegative up to tolerance.
double suboptimality(const SimilarityMatrix& s, const std::vector<int>& r2,
                     const std::vector<int>& p2, const LoadConfig& loads);

// Underload-tolerant variant Q' (both stages in at-most mode, same divisor
// as Q); defined for any subset sizes, submodular in R2.
double q_prime(const SimilarityMatrix& s, const std::vector<int>& r2,
               const std::vector<int>& p2, const LoadConfig& loads);

SplitInstance draw_split(const SimilarityMatrix& s, const LoadConfig& loads, DrawMode mode,
                         const SplitParams& params, std::uint64_t seed);

// Monte-Carlo estimate of f(R2) (fixed r2) or E_{R2}[f(R2)] (redraw_r2).
EstimatorResult estimate_f(const SimilarityMatrix& s, const std::vector<int>& r2,
                           const LoadConfig& loads, int n_samples, std::uint64_t seed,
                           DrawMode p2_mode = DrawMode::UniformFixedSize,
                           bool redraw_r2 = false);

// f-bar: average of Q(R2, P2^(i)) over the given samples.
double sampled_objective(const SimilarityMatrix& s, const std::vector<int>& r2,
                         const LoadConfig& loads,
                         const std::vector<std::vector<int>>& samples);

// Exhaustive argmax of sampled_objective over all R2 of the default size.
// Desk scale only (lambda <= 20).
std::pair<std::vector<int>, double> brute_force_best_r2(
    const SimilarityMatrix& s, const LoadConfig& loads,
    const std::vector<std::vector<int>>& samples);

// Variant where stage one covers only P \ P2; the mean divisor shrinks to
// ell_pap1*|P \ P2| + ell_pap2*|P2|.
TwoStageResult paper_split_value(const SimilarityMatrix& s, const std::vector<int>& r2,
                                 const std::vector<int>& p2, const LoadConfig& loads);

}  // namespace revsplit

#endif
