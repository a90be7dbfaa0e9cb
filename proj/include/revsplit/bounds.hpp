#ifndef REVSPLIT_BOUNDS_HPP
#define REVSPLIT_BOUNDS_HPP

#include <utility>

#include "revsplit/core.hpp"

namespace revsplit {

/// Inputs shared by the Theorem 5/6 calculators. s_1 is only used on the
/// Theorem 6 path.
struct BoundInputs {
    double mu = 1.0;
    double beta = 1.0;
    double s_mu = 0.0;
    double s_1 = 0.0;
    // Rounding gap; negative means "derive from mu and beta"
    // (ceil(beta*mu) - floor(beta*mu) on the Theorem 5 path,
    // ceil(mu/4) - mu/4 on the Theorem 6 path).
    double eps = -1.0;
};

// E[min(X/ell, 1)] for X ~ Binom(N, p), summed exactly with a stable pmf
// recurrence started at the mode.
double binom_min_expectation(long long n_trials, double p, long long ell);

// Normal-approximation lower bound for the same kernel:
// 1 - sqrt(q/(2 pi N p)) - Phi((ell - Np)/sqrt(Npq)) * (1 - Np/ell).
// Requires Np <= ell, N >= 1 and p in (0,1).
double normal_min_expectation(double n_trials, double p, double ell);

// Theorem 5 closed form (integral beta*mu only).
double thm5_bound_simple(const BoundInputs& b);

// Generalized Theorem 5 closed form with the rounding-gap epsilon terms.
// Raw variant can go negative at small mu; the bound clamps into [0,1].
double thm5_general_raw(double mu, double beta);
double thm5_bound_general(const BoundInputs& b);

// Exact pre-approximation expression (three binomial kernels), integral mu.
double thm5_exact_raw(long long mu, double beta);
double thm5_bound_exact(const BoundInputs& b);

// Theorem 6 (beta = 1 only). The bracket/factor variants expose the raw
// round-two terms for the approximation-vs-exact sweep.
double thm6_bound_simple(const BoundInputs& b);
double thm6_general_bracket(double mu);
double thm6_bound_general(const BoundInputs& b);
double thm6_bound_exact_factor(long long mu);
double thm6_bound_exact(const BoundInputs& b);

// Optimal A^(mu): reviewer cap mu, paper load (1+beta)*mu (floor-ceil when
// non-integral), optionally excluding a previous assignment's pairs.
// Returns the assignment and s^(mu) = value / ((1+beta)*mu*n).
std::pair<Assignment, double> compute_s_mu(const SimilarityMatrix& s, const LoadConfig& loads,
                                           long long mu, const Assignment* exclude = nullptr);

}  // namespace revsplit

#endif
