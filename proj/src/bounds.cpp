#include "revsplit/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "revsplit/solver.hpp"

namespace revsplit {

namespace {

constexpr double kPi = 3.14159265358979323846;

bool nearly_integral(double x) { return std::abs(x - std::round(x)) <= 1e-9; }

// Tolerant floor/ceil so that 0.1*10 etc. land on the integer.
long long floor_i(double x) { return static_cast<long long>(std::floor(x + 1e-9)); }
long long ceil_i(double x) { return static_cast<long long>(std::ceil(x - 1e-9)); }

double clamp01(double x) { return std::min(1.0, std::max(0.0, x)); }

double norm_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

void check_common(const BoundInputs& b, bool need_s1) {
    if (b.mu < 1.0 - 1e-12) throw ConfigError("mu must be >= 1");
    if (!(b.beta > 0.0) || b.beta > 1.0 + 1e-12) throw ConfigError("beta must lie in (0,1]");
    if (b.s_mu < -kValueTol || b.s_mu > 1.0 + kValueTol)
        throw ConfigError("s_mu must lie in [0,1]");
    if (need_s1 && (b.s_1 < -kValueTol || b.s_1 > 1.0 + kValueTol))
        throw ConfigError("s_1 must lie in [0,1]");
}

void check_beta_one(const BoundInputs& b) {
    if (std::abs(b.beta - 1.0) > 1e-12)
        throw ConfigError("unsupported regime: Theorem 6 bounds require beta = 1");
}

double thm5_general_with_eps(double mu, double beta, double eps) {
    const double fl = static_cast<double>(floor_i((1.0 + beta) * mu));
    const double cl = static_cast<double>(ceil_i((1.0 + beta) * mu));
    const double ceil_bm = static_cast<double>(ceil_i(beta * mu));
    const double dev = std::sqrt(beta / (2.0 * kPi * (1.0 + beta) * fl)) *
                       (2.0 * std::sqrt(1.0 / (1.0 + beta)) + std::sqrt(1.0 - beta));
    const double bracket = 1.0 - dev - (1.0 + 2.0 * beta) * eps / ((1.0 + beta) * ceil_bm);
    return bracket * (1.0 - eps / cl);
}

double thm6_bracket_with_eps(double mu, double eps) {
    const double theta = static_cast<double>(ceil_i(mu / 4.0));
    return 1.0 - (std::sqrt(7.0) + std::sqrt(6.0)) / (2.0 * std::sqrt(kPi * mu)) -
           3.0 * eps / theta;
}

}  // namespace

double binom_min_expectation(long long n_trials, double p, long long ell) {
    if (n_trials < 0) throw ConfigError("negative trial count");
    if (p < 0.0 || p > 1.0) throw ConfigError("p must lie in [0,1]");
    if (ell < 1) throw ConfigError("ell must be >= 1");
    if (n_trials == 0 || p == 0.0) return 0.0;
    if (p == 1.0) return std::min(1.0, static_cast<double>(n_trials) / ell);

    const double n = static_cast<double>(n_trials);
    const double q = 1.0 - p;
    long long mode = static_cast<long long>(std::floor((n + 1.0) * p));
    mode = std::max<long long>(0, std::min(n_trials, mode));

    // pmf at the mode via one lgamma evaluation, then multiplicative
    // recurrences outward. Terms below 1e-18 are dropped; the mode pmf is
    // at least ~1/sqrt(N), so the truncation error is far below 1e-12.
    const double lf = std::lgamma(n + 1.0) - std::lgamma(mode + 1.0) -
                      std::lgamma(n - mode + 1.0) + mode * std::log(p) +
                      (n - mode) * std::log(q);
    const double f_mode = std::exp(lf);
    const auto term = [&](long long x, double f) {
        return f * std::min(1.0, static_cast<double>(x) / ell);
    };

    double sum = term(mode, f_mode);
    double f = f_mode;
    for (long long x = mode; x > 0 && f > 1e-18; --x) {
        f *= (x * q) / ((n - x + 1.0) * p);
        sum += term(x - 1, f);
    }
    f = f_mode;
    for (long long x = mode; x < n_trials && f > 1e-18; ++x) {
        f *= ((n - x) * p) / ((x + 1.0) * q);
        sum += term(x + 1, f);
    }
    return clamp01(sum);
}

double normal_min_expectation(double n_trials, double p, double ell) {
    if (n_trials < 1.0) throw ConfigError("need at least one trial");
    if (!(p > 0.0) || !(p < 1.0)) throw ConfigError("p must lie strictly in (0,1)");
    const double mean = n_trials * p;
    if (mean > ell + 1e-12) throw ConfigError("normal approximation needs N*p <= ell");
    const double q = 1.0 - p;
    const double sd = std::sqrt(mean * q);
    const double val = 1.0 - std::sqrt(q / (2.0 * kPi * mean)) -
                       norm_cdf((ell - mean) / sd) * (1.0 - mean / ell);
    return std::max(0.0, val);
}

double thm5_bound_simple(const BoundInputs& b) {
    check_common(b, false);
    if (!nearly_integral(b.beta * b.mu))
        throw ConfigError("beta*mu is not integral; use thm5_bound_general");
    const double dev = std::sqrt(b.beta / (2.0 * kPi * (1.0 + b.beta) * (1.0 + b.beta) * b.mu)) *
                       (2.0 * std::sqrt(1.0 / (1.0 + b.beta)) + std::sqrt(1.0 - b.beta));
    return b.s_mu * clamp01(1.0 - dev);
}

double thm5_general_raw(double mu, double beta) {
    const double eps = static_cast<double>(ceil_i(beta * mu) - floor_i(beta * mu));
    return thm5_general_with_eps(mu, beta, eps);
}

double thm5_bound_general(const BoundInputs& b) {
    check_common(b, false);
    const double raw = b.eps >= 0.0 ? thm5_general_with_eps(b.mu, b.beta, b.eps)
                                    : thm5_general_raw(b.mu, b.beta);
    return b.s_mu * clamp01(raw);
}

double thm5_exact_raw(long long mu, double beta) {
    if (mu < 1) throw ConfigError("mu must be >= 1");
    const long long n1 = floor_i((1.0 + beta) * mu);
    const long long ceil_bm = ceil_i(beta * mu);
    const double e1 = binom_min_expectation(n1, 1.0 / (1.0 + beta), mu);
    const double e2 = binom_min_expectation(n1, beta / (1.0 + beta), ceil_bm);
    const double e3 = binom_min_expectation(mu, beta, ceil_bm);
    const double scale = static_cast<double>(mu) / ceil_i((1.0 + beta) * mu);
    return scale * (e1 + beta * (e2 + e3 - 1.0));
}

double thm5_bound_exact(const BoundInputs& b) {
    check_common(b, false);
    if (!nearly_integral(b.mu)) throw ConfigError("exact bound needs integral mu");
    return b.s_mu * clamp01(thm5_exact_raw(std::llround(b.mu), b.beta));
}

double thm6_bound_simple(const BoundInputs& b) {
    check_common(b, true);
    check_beta_one(b);
    if (b.mu < 4.0 - 1e-12 || !nearly_integral(b.mu / 4.0))
        throw ConfigError("simple Theorem 6 bound needs mu divisible by 4");
    const double val = 0.75 * b.s_1 + (1.0 - 1.44 / std::sqrt(b.mu)) * 0.25 * b.s_mu;
    return clamp01(val);
}

double thm6_general_bracket(double mu) {
    if (mu < 1.0 - 1e-12) throw ConfigError("mu must be >= 1");
    const double theta = static_cast<double>(ceil_i(mu / 4.0));
    const double eps = theta - mu / 4.0;
    return thm6_bracket_with_eps(mu, eps);
}

double thm6_bound_general(const BoundInputs& b) {
    check_common(b, true);
    check_beta_one(b);
    const double bracket = b.eps >= 0.0 ? thm6_bracket_with_eps(b.mu, b.eps)
                                        : thm6_general_bracket(b.mu);
    return clamp01(0.75 * b.s_1 + 0.25 * b.s_mu * bracket);
}

double thm6_bound_exact_factor(long long mu) {
    if (mu < 1) throw ConfigError("mu must be >= 1");
    const long long theta = (mu + 3) / 4;
    const double e1 = binom_min_expectation(2 * mu, 0.125, theta);
    const double e2 = binom_min_expectation(mu, 0.25, theta);
    return 0.25 * (e1 + e2 - static_cast<double>(mu) / (4.0 * theta));
}

double thm6_bound_exact(const BoundInputs& b) {
    check_common(b, true);
    check_beta_one(b);
    if (!nearly_integral(b.mu)) throw ConfigError("exact bound needs integral mu");
    const double factor = thm6_bound_exact_factor(std::llround(b.mu));
    return clamp01(0.75 * b.s_1 + factor * b.s_mu);
}

std::pair<Assignment, double> compute_s_mu(const SimilarityMatrix& s, const LoadConfig& loads,
                                           long long mu, const Assignment* exclude) {
    if (mu < 1) throw ConfigError("mu must be >= 1");
    if (!(loads.beta > 0.0) || loads.beta > 1.0 + 1e-12)
        throw ConfigError("beta must lie in (0,1]");
    const double pap_load = (1.0 + loads.beta) * mu;
    const PapMode mode = nearly_integral(pap_load) ? PapMode::Exact : PapMode::FloorCeil;
    MatchSpec spec = MatchSpec::over_all(s, static_cast<int>(mu), pap_load, mode);
    if (exclude) spec.excluded = exclude->pairs;
    Assignment a = solve(s, spec);
    const double s_mu = a.value / (pap_load * s.n_papers);
    return {std::move(a), s_mu};
}

}  // namespace revsplit
