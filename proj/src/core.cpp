#include "revsplit/core.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace revsplit {

SimilarityMatrix SimilarityMatrix::zeros(int n_reviewers, int n_papers) {
    if (n_reviewers < 0 || n_papers < 0) throw ConfigError("negative matrix dimensions");
    SimilarityMatrix s;
    s.n_reviewers = n_reviewers;
    s.n_papers = n_papers;
    s.scores.assign(static_cast<size_t>(n_reviewers) * n_papers, 0.0);
    s.reviewer_ids.reserve(n_reviewers);
    s.paper_ids.reserve(n_papers);
    for (int r = 0; r < n_reviewers; ++r) s.reviewer_ids.push_back("r" + std::to_string(r));
    for (int p = 0; p < n_papers; ++p) s.paper_ids.push_back("p" + std::to_string(p));
    return s;
}

SimilarityMatrix SimilarityMatrix::from_rows(const std::vector<std::vector<double>>& rows) {
    const int nr = static_cast<int>(rows.size());
    const int np = nr == 0 ? 0 : static_cast<int>(rows[0].size());
    SimilarityMatrix s = zeros(nr, np);
    for (int r = 0; r < nr; ++r) {
        if (static_cast<int>(rows[r].size()) != np)
            throw ConfigError("ragged similarity rows");
        for (int p = 0; p < np; ++p) s.at(r, p) = rows[r][p];
    }
    return s;
}

std::vector<Violation> validate(const SimilarityMatrix& s) {
    std::vector<Violation> out;
    if (static_cast<int>(s.reviewer_ids.size()) != s.n_reviewers)
        out.push_back({-1, -1, "reviewer_ids length != n_reviewers"});
    if (static_cast<int>(s.paper_ids.size()) != s.n_papers)
        out.push_back({-1, -1, "paper_ids length != n_papers"});
    if (s.scores.size() != static_cast<size_t>(s.n_reviewers) * s.n_papers)
        out.push_back({-1, -1, "scores size != n_reviewers * n_papers"});

    std::set<std::string> seen;
    for (size_t i = 0; i < s.reviewer_ids.size(); ++i)
        if (!seen.insert(s.reviewer_ids[i]).second)
            out.push_back({static_cast<int>(i), -1, "duplicate reviewer id '" + s.reviewer_ids[i] + "'"});
    seen.clear();
    for (size_t i = 0; i < s.paper_ids.size(); ++i)
        if (!seen.insert(s.paper_ids[i]).second)
            out.push_back({-1, static_cast<int>(i), "duplicate paper id '" + s.paper_ids[i] + "'"});

    if (s.scores.size() == static_cast<size_t>(s.n_reviewers) * s.n_papers) {
        for (int r = 0; r < s.n_reviewers; ++r) {
            for (int p = 0; p < s.n_papers; ++p) {
                const double v = s.at(r, p);
                if (!std::isfinite(v))
                    out.push_back({r, p, "non-finite entry"});
                else if (v < 0.0 || v > 1.0)
                    out.push_back({r, p, "entry outside [0,1]"});
            }
        }
    }
    return out;
}

void validate_or_throw(const SimilarityMatrix& s) {
    const auto violations = validate(s);
    if (violations.empty()) return;
    std::string msg = "invalid similarity matrix:";
    const size_t shown = std::min<size_t>(violations.size(), 5);
    for (size_t i = 0; i < shown; ++i) {
        const auto& v = violations[i];
        msg += " (" + std::to_string(v.row) + "," + std::to_string(v.col) + ") " + v.what + ";";
    }
    if (violations.size() > shown)
        msg += " and " + std::to_string(violations.size() - shown) + " more";
    throw ConfigError(msg);
}

int LoadConfig::p2_size(int n_papers) const {
    if (beta <= 0.0 || beta > 1.0) throw ConfigError("beta must be in (0,1]");
    const double exact = beta * n_papers;
    const double rounded = std::round(exact);
    if (std::abs(exact - rounded) > 1e-9)
        throw ConfigError("beta*n is not integral (beta=" + std::to_string(beta) +
                          ", n=" + std::to_string(n_papers) + ")");
    return static_cast<int>(rounded);
}

int LoadConfig::default_r2_size(int n_reviewers) const {
    if (beta <= 0.0 || beta > 1.0) throw ConfigError("beta must be in (0,1]");
    // Round down so the remainder stays on the stage-one side.
    return static_cast<int>(std::floor(beta / (1.0 + beta) * n_reviewers + 1e-9));
}

void LoadConfig::check_supply(int n_reviewers, int n_papers) const {
    if (ell_rev <= 0 || ell_pap1 <= 0 || ell_pap2 <= 0)
        throw ConfigError("loads must be positive");
    const long long demand = static_cast<long long>(ell_pap1) * n_papers +
                             static_cast<long long>(ell_pap2) * p2_size(n_papers);
    const long long supply = static_cast<long long>(ell_rev) * n_reviewers;
    if (demand > supply)
        throw InfeasibleError("review demand " + std::to_string(demand) + " exceeds supply " +
                              std::to_string(supply));
}

void LoadConfig::check_split(int n_reviewers, int n_papers, int m2) const {
    check_supply(n_reviewers, n_papers);
    const long long stage2_demand = static_cast<long long>(ell_pap2) * p2_size(n_papers);
    if (static_cast<long long>(ell_rev) * m2 < stage2_demand)
        throw InfeasibleError("stage two infeasible: ell_rev*|R2| = " +
                              std::to_string(static_cast<long long>(ell_rev) * m2) + " < " +
                              std::to_string(stage2_demand));
    const long long stage1_demand = static_cast<long long>(ell_pap1) * n_papers;
    if (static_cast<long long>(ell_rev) * (n_reviewers - m2) < stage1_demand)
        throw InfeasibleError("stage one infeasible: ell_rev*|R1| = " +
                              std::to_string(static_cast<long long>(ell_rev) * (n_reviewers - m2)) +
                              " < " + std::to_string(stage1_demand));
}

std::vector<int> Assignment::reviewer_loads(int n_reviewers) const {
    std::vector<int> loads(n_reviewers, 0);
    for (const auto& [r, p] : pairs) loads[r]++;
    return loads;
}

std::vector<int> Assignment::paper_loads(int n_papers) const {
    std::vector<int> loads(n_papers, 0);
    for (const auto& [r, p] : pairs) loads[p]++;
    return loads;
}

Assignment make_assignment(const SimilarityMatrix& s, std::vector<std::pair<int, int>> pairs) {
    std::sort(pairs.begin(), pairs.end());
    pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
    Assignment a;
    a.pairs = std::move(pairs);
    for (const auto& [r, p] : a.pairs) {
        if (r < 0 || r >= s.n_reviewers || p < 0 || p >= s.n_papers)
            throw ConfigError("assignment pair out of range");
        a.value += s.at(r, p);
    }
    return a;
}

double mean_similarity(const Assignment& a1, const Assignment& a2, const LoadConfig& loads,
                       int n_papers) {
    const long long divisor = static_cast<long long>(loads.ell_pap1) * n_papers +
                              static_cast<long long>(loads.ell_pap2) * loads.p2_size(n_papers);
    if (divisor <= 0) throw ConfigError("empty problem: zero total review count");
    return (a1.value + a2.value) / static_cast<double>(divisor);
}

}  // namespace revsplit
