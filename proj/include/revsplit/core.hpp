#ifndef REVSPLIT_CORE_HPP
#define REVSPLIT_CORE_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace revsplit {

// Bad parameters or malformed inputs (CLI exit code 2).
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A load/counting constraint cannot be met (CLI exit code 3).
struct InfeasibleError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Instance too large for an exhaustive oracle.
struct SizeError : ConfigError {
    using ConfigError::ConfigError;
};

// File-level failures (CLI exit code 4).
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ParseError : IoError {
    using IoError::IoError;
};

constexpr double kValueTol = 1e-9;

/// Dense reviewer-by-paper score matrix with entries in [0,1].
/// Conflicts of interest are encoded as similarity 0.
struct SimilarityMatrix {
    int n_reviewers = 0;
    int n_papers = 0;
    std::vector<double> scores;  // row-major, n_reviewers x n_papers
    std::vector<std::string> reviewer_ids;
    std::vector<std::string> paper_ids;

    double at(int r, int p) const { return scores[static_cast<size_t>(r) * n_papers + p]; }
    double& at(int r, int p) { return scores[static_cast<size_t>(r) * n_papers + p]; }

    // All-zero matrix with generated "r#"/"p#" labels.
    static SimilarityMatrix zeros(int n_reviewers, int n_papers);
    // Convenience constructor from nested rows (sizes must agree).
    static SimilarityMatrix from_rows(const std::vector<std::vector<double>>& rows);
};

struct Violation {
    int row = -1;  // -1 when the violation is about a label, not an entry
    int col = -1;
    std::string what;
};

// Diagnostics, not failure: reports out-of-range/non-finite entries and
// duplicate or miscounted labels.
std::vector<Violation> validate(const SimilarityMatrix& s);
void validate_or_throw(const SimilarityMatrix& s);

/// Stage loads plus the second-stage paper fraction beta.
struct LoadConfig {
    int ell_rev = 6;
    int ell_pap1 = 2;
    int ell_pap2 = 2;
    double beta = 1.0;

    // beta*n, rejecting non-integral products.
    int p2_size(int n_papers) const;
    // floor(beta/(1+beta) * lambda); equals beta*n when lambda == (1+beta)*n.
    int default_r2_size(int n_reviewers) const;

    // Overall supply feasibility: ell_pap1*n + ell_pap2*beta*n <= ell_rev*lambda.
    void check_supply(int n_reviewers, int n_papers) const;
    // Per-stage feasibility once |R2| = m2 is fixed.
    void check_split(int n_reviewers, int n_papers, int m2) const;
};

/// Integral reviewer->paper incidence with its total similarity.
struct Assignment {
    std::vector<std::pair<int, int>> pairs;  // sorted (reviewer, paper)
    double value = 0.0;

    std::vector<int> reviewer_loads(int n_reviewers) const;
    std::vector<int> paper_loads(int n_papers) const;
    bool empty() const { return pairs.empty(); }
};

// Sorts/dedups pairs, range-checks them and recomputes the value from s.
Assignment make_assignment(const SimilarityMatrix& s, std::vector<std::pair<int, int>> pairs);

enum class DrawMode {
    UniformFixedSize,
    IndependentInclusion,
    ScoreTop,
    ScoreMiddle,
    Explicit,
};

/// A realized (R2, P2) split together with the RNG provenance that produced it.
struct SplitInstance {
    std::vector<int> r2;  // sorted reviewer indices
    std::vector<int> p2;  // sorted paper indices
    std::uint64_t seed = 0;
    DrawMode draw_mode = DrawMode::Explicit;
};

// (value(a1)+value(a2)) / (ell_pap1*n + ell_pap2*beta*n), in [0,1].
double mean_similarity(const Assignment& a1, const Assignment& a2, const LoadConfig& loads,
                       int n_papers);

}  // namespace revsplit

#endif
