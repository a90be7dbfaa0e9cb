#include <algorithm>
#include <cmath>
#include <set>

#include "doctest.h"
#include "revsplit/constructions.hpp"
#include "revsplit/twostage.hpp"

using namespace revsplit;

namespace {

int count_ones(const SimilarityMatrix& s) {
    int c = 0;
    for (double v : s.scores)
        if (v == 1.0)
            ++c;
        else
            CHECK(v == 0.0);
    return c;
}

double l2_dist(const std::vector<double>& a, const std::vector<double>& b) {
    double d = 0.0;
    for (size_t i = 0; i < a.size(); ++i) d += (a[i] - b[i]) * (a[i] - b[i]);
    return std::sqrt(d);
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double d = 0.0;
    for (size_t i = 0; i < a.size(); ++i) d += a[i] * b[i];
    return d;
}

}  // namespace

TEST_CASE("counterexample instance") {
    SimilarityMatrix s = gen_thm2(2, 1.0);
    CHECK(s.n_reviewers == 4);
    CHECK(s.n_papers == 2);
    CHECK(s.at(0, 0) == 1.0);
    CHECK(s.at(1, 1) == 1.0);
    CHECK(s.at(2, 0) == 1.0);
    CHECK(s.at(3, 1) == 1.0);
    CHECK(count_ones(s) == 4);

    SUBCASE("one doubled paper") {
        const int n = 5;
        SimilarityMatrix t = gen_thm2(n, 1.0 / n);
        CHECK(t.n_reviewers == n + 1);
        CHECK(count_ones(t) == n + 1);
        CHECK(t.at(n, 0) == 1.0);
    }

    SUBCASE("non-integral beta*n rejected") {
        CHECK_THROWS_AS(gen_thm2(3, 0.5), ConfigError);
        CHECK_THROWS_AS(gen_thm2(4, 0.0), ConfigError);
    }

    SUBCASE("random split loses value on it") {
        // Small version of the Theorem 2 experiment; the full-size floor
        // check lives in the acceptance run.
        SimilarityMatrix t = gen_thm2(20, 1.0);
        LoadConfig loads;
        loads.ell_rev = loads.ell_pap1 = loads.ell_pap2 = 1;
        double total = 0.0;
        int trials = 0;
        for (std::uint64_t seed = 1; seed <= 60; ++seed) {
            SplitInstance inst =
                draw_split(t, loads, DrawMode::UniformFixedSize, SplitParams{}, seed);
            total += suboptimality(t, inst.r2, inst.p2, loads);
            ++trials;
        }
        CHECK(total / trials > 0.05);
    }
}

TEST_CASE("group instance") {
    SimilarityMatrix s = gen_thm4_groups(4, 2);
    CHECK(s.n_reviewers == 8);
    CHECK(s.n_papers == 4);
    for (int r = 0; r < 4; ++r)
        for (int p = 0; p < 2; ++p) CHECK(s.at(r, p) == 1.0);
    CHECK(s.at(4, 2) == 1.0);
    CHECK(s.at(5, 2) == 1.0);
    CHECK(count_ones(s) == 4 * 2 + 2);
    for (int r = 0; r < 8; ++r) CHECK(s.at(r, 3) == 0.0);

    SUBCASE("rank equals k") {
        for (auto [n, k] : std::vector<std::pair<int, int>>{{4, 2}, {6, 3}, {10, 1}, {9, 4}}) {
            SimilarityMatrix t = gen_thm4_groups(n, k);
            std::set<std::vector<double>> rows;
            for (int r = 0; r < t.n_reviewers; ++r) {
                std::vector<double> row(t.n_papers);
                for (int p = 0; p < t.n_papers; ++p) row[p] = t.at(r, p);
                if (std::any_of(row.begin(), row.end(), [](double v) { return v != 0.0; }))
                    rows.insert(row);
            }
            // distinct indicator rows of disjoint blocks: rank = #blocks
            CHECK(static_cast<int>(rows.size()) == k);
        }
    }

    SUBCASE("oracle achieves n + 2(k-1)") {
        const int n = 6, k = 3;
        SimilarityMatrix t = gen_thm4_groups(n, k);
        LoadConfig loads;
        loads.ell_rev = loads.ell_pap1 = loads.ell_pap2 = 1;
        std::vector<int> p2(n);
        for (int i = 0; i < n; ++i) p2[i] = i;
        TwoStageResult res = oracle_optimal(t, p2, loads);
        CHECK(res.mean_sim * 2 * n >= n + 2 * (k - 1) - 1e-9);
    }

    SUBCASE("oversized rank rejected") {
        CHECK_THROWS_AS(gen_thm4_groups(4, 3), ConfigError);
        CHECK(count_ones(gen_thm4_groups(6, 1)) == 6 * 3);  // single block only
    }
}

TEST_CASE("grid instance") {
    SUBCASE("k=1 spacing") {
        LowRankFactors f = gen_thm4_grid(3, 1);
        REQUIRE(f.paper_vectors.size() == 3);
        CHECK(f.paper_vectors[0][0] == doctest::Approx(0.0));
        CHECK(f.paper_vectors[1][0] == doctest::Approx(0.5));
        CHECK(f.paper_vectors[2][0] == doctest::Approx(1.0));
        CHECK(f.reviewer_vectors.size() == 6);
    }

    for (auto [n, k] : std::vector<std::pair<int, int>>{{5, 1}, {9, 2}, {8, 3}, {100, 2}}) {
        LowRankFactors f = gen_thm4_grid(n, k);
        SimilarityMatrix s = f.induced();
        CHECK(s.n_reviewers == 2 * n);
        CHECK(s.n_papers == n);
        for (double v : s.scores) {
            CHECK(v >= 0.0);
            CHECK(v <= 1.0);
        }
        // two co-located reviewers per paper; similarity = squared norm
        for (int p = 0; p < n; ++p) {
            CHECK(f.reviewer_vectors[2 * p] == f.paper_vectors[p]);
            CHECK(f.reviewer_vectors[2 * p + 1] == f.paper_vectors[p]);
            CHECK(s.at(2 * p, p) ==
                  doctest::Approx(dot(f.paper_vectors[p], f.paper_vectors[p])));
        }
        // norms within the factorization regime
        for (const auto& v : f.paper_vectors)
            CHECK(std::sqrt(dot(v, v)) <= std::pow(k, 0.25) + 1e-12);
        // distinct points, separated by the paper's grid gap
        const double gap = 1.0 / (2.0 * std::sqrt(k) * std::pow(n, 1.0 / k));
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q)
                CHECK(l2_dist(f.paper_vectors[p], f.paper_vectors[q]) >= gap - 1e-12);
        // co-located pairs beat cross pairs: 2<x,y> <= <x,x> + <y,y>
        for (int p = 0; p < std::min(n, 12); ++p)
            for (int q = 0; q < std::min(n, 12); ++q)
                CHECK(2.0 * dot(f.paper_vectors[p], f.paper_vectors[q]) <=
                      dot(f.paper_vectors[p], f.paper_vectors[p]) +
                          dot(f.paper_vectors[q], f.paper_vectors[q]) + 1e-12);
    }
}

TEST_CASE("3dm gadget") {
    SUBCASE("single tuple") {
        Gadget3dm g = gen_3dm_gadget({{{0, 0, 0}}}, 1);
        CHECK(g.sim.n_papers == 3);   // no dummies: |T| - s = 0
        CHECK(g.sim.n_reviewers == 4);
        CHECK(g.loads.beta == doctest::Approx(1.0 / 3));
        CHECK(g.samples[0] == std::vector<int>{0});
        CHECK(g.samples[1] == std::vector<int>{1});
        CHECK(g.samples[2] == std::vector<int>{2});
        // tuple reviewer sees all three element papers
        CHECK(g.sim.at(3, 0) == 1.0);
        CHECK(g.sim.at(3, 1) == 1.0);
        CHECK(g.sim.at(3, 2) == 1.0);
        auto [r2, best] = brute_force_best_r2(
            g.sim, g.loads, {g.samples[0], g.samples[1], g.samples[2]});
        CHECK(best == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(r2 == std::vector<int>{3});
    }

    SUBCASE("yes instance with a distractor") {
        // {(0,0,0),(1,1,1)} is a perfect matching; (0,1,1) is noise.
        Gadget3dm g = gen_3dm_gadget({{{0, 0, 0}, {1, 1, 1}, {0, 1, 1}}}, 2);
        CHECK(g.sim.n_papers == 7);
        CHECK(g.sim.n_reviewers == 9);
        auto [r2, best] = brute_force_best_r2(
            g.sim, g.loads, {g.samples[0], g.samples[1], g.samples[2]});
        CHECK(best == doctest::Approx(1.0).epsilon(1e-12));
    }

    SUBCASE("no instance") {
        // every tuple shares x = 0, so no two tuples cover X
        Gadget3dm g = gen_3dm_gadget({{{0, 0, 0}, {0, 1, 1}}}, 2);
        auto [r2, best] = brute_force_best_r2(
            g.sim, g.loads, {g.samples[0], g.samples[1], g.samples[2]});
        CHECK(best < 1.0 - 1e-9);
    }

    SUBCASE("dummy papers are universal") {
        Gadget3dm g = gen_3dm_gadget({{{0, 0, 0}, {1, 1, 1}, {0, 1, 0}}}, 2);
        for (int r = 0; r < g.sim.n_reviewers; ++r) CHECK(g.sim.at(r, 6) == 1.0);
    }

    SUBCASE("malformed input") {
        CHECK_THROWS_AS(gen_3dm_gadget({}, 1), ConfigError);
        CHECK_THROWS_AS(gen_3dm_gadget({{{0, 0, 1}}}, 1), ConfigError);
        CHECK_THROWS_AS(gen_3dm_gadget({{{0, 0, 0}, {0, 0, 0}}}, 1), ConfigError);
        CHECK_THROWS_AS(gen_3dm_gadget({{{0, 0, 0}}}, 2), ConfigError);  // |T| < s
    }
}

TEST_CASE("random low-rank instances") {
    auto [f1, s1] = gen_random_lowrank(8, 12, 3, 42);
    auto [f2, s2] = gen_random_lowrank(8, 12, 3, 42);
    CHECK(s1.scores == s2.scores);
    auto [f3, s3] = gen_random_lowrank(8, 12, 3, 43);
    CHECK(s1.scores != s3.scores);

    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        auto [f, s] = gen_random_lowrank(5, 7, 2, seed);
        for (double v : s.scores) {
            CHECK(v >= 0.0);
            CHECK(v <= 1.0);
        }
    }

    SUBCASE("rank one: all 2x2 minors vanish") {
        auto [f, s] = gen_random_lowrank(6, 9, 1, 7);
        for (int r1 = 0; r1 < s.n_reviewers; ++r1)
            for (int r2 = r1 + 1; r2 < s.n_reviewers; ++r2)
                for (int p1 = 0; p1 < s.n_papers; ++p1)
                    for (int p2 = p1 + 1; p2 < s.n_papers; ++p2)
                        CHECK(std::abs(s.at(r1, p1) * s.at(r2, p2) -
                                       s.at(r1, p2) * s.at(r2, p1)) <= 1e-9);
    }
}
