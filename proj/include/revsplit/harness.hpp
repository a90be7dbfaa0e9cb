#ifndef REVSPLIT_HARNESS_HPP
#define REVSPLIT_HARNESS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "revsplit/core.hpp"

namespace revsplit {

enum class Variant { Standard, PaperSplit };

struct ExperimentConfig {
    std::string dataset;  // path or generator spec, recorded verbatim
    std::vector<double> betas;
    int trials = 10;
    LoadConfig loads;  // beta field is overridden per run
    DrawMode p2_mode = DrawMode::UniformFixedSize;
    std::uint64_t seed = 0;
    Variant variant = Variant::Standard;
};

struct TrialRecord {
    double beta = 0.0;
    int trial = 0;
    std::uint64_t seed = 0;
    bool feasible = true;
    std::string skip_reason;
    double q = 0.0;
    double q_star = 0.0;
    double fraction = 0.0;  // Q / Q*
};

struct BetaSummary {
    double beta = 0.0;
    int n_trials = 0;
    double min_fraction = 0.0;
    double max_fraction = 0.0;
    double mean_fraction = 0.0;
};

struct ExperimentReport {
    ExperimentConfig config;
    std::vector<TrialRecord> records;
    std::vector<BetaSummary> summary;
    std::int64_t runtime_ms = 0;
};

ExperimentReport run_split_experiment(const SimilarityMatrix& s, const ExperimentConfig& cfg);

/// One row of the bound sweep; columns that do not apply hold NaN.
struct BoundsRow {
    long long mu = 1;
    bool feasible = true;
    std::string reason;
    double s_1 = 0.0;
    double s_mu = 0.0;
    double s_mu_disjoint = 0.0;  // A^(mu) avoiding the pairs of A^(1)
    double thm5_simple = 0.0;
    double thm5_general = 0.0;
    double thm5_exact = 0.0;
    double thm6_simple = 0.0;
    double thm6_general = 0.0;
    double thm6_exact = 0.0;
    double f_mean = 0.0;
    double f_stderr = 0.0;
};

struct BoundsReport {
    std::string dataset;
    std::vector<long long> mu_list;
    int trials = 10;
    std::uint64_t seed = 0;
    std::vector<BoundsRow> rows;
    std::int64_t runtime_ms = 0;
};

// beta = 1 throughout; loads (1,1,1) for the random-split estimate.
BoundsReport run_bounds_sweep(const SimilarityMatrix& s, const std::vector<long long>& mu_list,
                              int trials, std::uint64_t seed,
                              const std::string& dataset_label = "");

enum class EmitFormat { Json, Csv };

void emit(const ExperimentReport& report, const std::string& path, EmitFormat format);
void emit(const BoundsReport& report, const std::string& path, EmitFormat format);

std::string render(const ExperimentReport& report, EmitFormat format);
std::string render(const BoundsReport& report, EmitFormat format);

const char* to_string(DrawMode mode);
const char* to_string(Variant v);
DrawMode parse_draw_mode(const std::string& name);
Variant parse_variant(const std::string& name);

}  // namespace revsplit

#endif
