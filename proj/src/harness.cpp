#include "revsplit/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <set>

#include "json.hpp"
#include "revsplit/bounds.hpp"
#include "revsplit/mcf.hpp"
#include "revsplit/rng.hpp"
#include "revsplit/twostage.hpp"
#include "internal.hpp"

namespace revsplit {

namespace {

using ordered_json = nlohmann::ordered_json;

// Joint oracle for the paper-split variant: stage one covers only P \ P2,
// so papers appear in exactly one bank and a single flow with per-paper
// exact loads suffices.
double paper_split_oracle(const SimilarityMatrix& s, const std::vector<int>& p2,
                          const LoadConfig& loads) {
    std::set<int> in_p2(p2.begin(), p2.end());
    const int lam = s.n_reviewers, n = s.n_papers;
    const int S = 0, T = 1, rev_base = 2, pap_base = 2 + lam;
    NetworkSimplex ns(2 + lam + n);
    for (int r = 0; r < lam; ++r) ns.add_arc(S, rev_base + r, 0, loads.ell_rev, 0);
    std::vector<std::pair<int, std::pair<int, int>>> pair_arcs;
    for (int r = 0; r < lam; ++r)
        for (int p = 0; p < n; ++p)
            pair_arcs.push_back(
                {ns.add_arc(rev_base + r, pap_base + p, 0, 1, -detail::weight_int(s.at(r, p))),
                 {r, p}});
    long long divisor_terms = 0;
    for (int p = 0; p < n; ++p) {
        const int load = in_p2.count(p) ? loads.ell_pap2 : loads.ell_pap1;
        ns.add_arc(pap_base + p, T, load, load, 0);
        divisor_terms += load;
    }
    ns.add_arc(T, S, 0, static_cast<long long>(loads.ell_rev) * lam, 0);
    if (!ns.run()) throw InfeasibleError("paper-split oracle: loads are unsatisfiable");
    double value = 0.0;
    for (const auto& [arc, pair] : pair_arcs)
        if (ns.flow(arc) > 0) value += s.at(pair.first, pair.second);
    return value / static_cast<double>(divisor_terms);
}

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string csv_escape(const std::string& v) {
    if (v.find_first_of(",\"\n") == std::string::npos) return v;
    std::string out = "\"";
    for (char c : v) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

ordered_json config_json(const ExperimentConfig& cfg) {
    return ordered_json{{"dataset", cfg.dataset},
                        {"betas", cfg.betas},
                        {"trials", cfg.trials},
                        {"loads",
                         {{"ell_pap1", cfg.loads.ell_pap1},
                          {"ell_pap2", cfg.loads.ell_pap2},
                          {"ell_rev", cfg.loads.ell_rev}}},
                        {"p2_mode", to_string(cfg.p2_mode)},
                        {"seed", cfg.seed},
                        {"variant", to_string(cfg.variant)}};
}

}  // namespace

const char* to_string(DrawMode mode) {
    switch (mode) {
        case DrawMode::UniformFixedSize: return "uniform";
        case DrawMode::IndependentInclusion: return "independent";
        case DrawMode::ScoreTop: return "score-top";
        case DrawMode::ScoreMiddle: return "score-middle";
        case DrawMode::Explicit: return "explicit";
    }
    return "uniform";
}

const char* to_string(Variant v) {
    return v == Variant::PaperSplit ? "paper-split" : "standard";
}

DrawMode parse_draw_mode(const std::string& name) {
    if (name == "uniform") return DrawMode::UniformFixedSize;
    if (name == "independent") return DrawMode::IndependentInclusion;
    if (name == "score-top") return DrawMode::ScoreTop;
    if (name == "score-middle") return DrawMode::ScoreMiddle;
    if (name == "explicit") return DrawMode::Explicit;
    throw ConfigError("unknown draw mode: " + name);
}

Variant parse_variant(const std::string& name) {
    if (name == "standard") return Variant::Standard;
    if (name == "paper-split") return Variant::PaperSplit;
    throw ConfigError("unknown variant: " + name);
}

ExperimentReport run_split_experiment(const SimilarityMatrix& s, const ExperimentConfig& cfg) {
    if (cfg.trials < 1) throw ConfigError("trials must be >= 1");
    if (cfg.betas.empty()) throw ConfigError("need at least one beta");
    const auto t0 = std::chrono::steady_clock::now();

    ExperimentReport report;
    report.config = cfg;
    for (size_t bi = 0; bi < cfg.betas.size(); ++bi) {
        const double beta = cfg.betas[bi];
        LoadConfig loads = cfg.loads;
        loads.beta = beta;

        std::string skip;
        try {
            if (!(beta > 0.0) || beta > 1.0 + 1e-12) throw ConfigError("beta must lie in (0,1]");
            const int m2 = loads.default_r2_size(s.n_reviewers);
            loads.p2_size(s.n_papers);
            loads.check_split(s.n_reviewers, s.n_papers, m2);
        } catch (const std::runtime_error& e) {
            skip = e.what();
        }
        if (!skip.empty()) {
            TrialRecord rec;
            rec.beta = beta;
            rec.trial = -1;
            rec.feasible = false;
            rec.skip_reason = skip;
            report.records.push_back(rec);
            continue;
        }

        BetaSummary sum;
        sum.beta = beta;
        sum.min_fraction = 2.0;
        sum.max_fraction = -1.0;
        double total = 0.0;
        for (int t = 0; t < cfg.trials; ++t) {
            TrialRecord rec;
            rec.beta = beta;
            rec.trial = t;
            rec.seed = derive_seed(cfg.seed, static_cast<std::uint64_t>(t),
                                   static_cast<std::uint64_t>(bi));
            try {
                const SplitInstance inst =
                    draw_split(s, loads, cfg.p2_mode, SplitParams{}, rec.seed);
                if (cfg.variant == Variant::PaperSplit) {
                    rec.q = paper_split_value(s, inst.r2, inst.p2, loads).mean_sim;
                    rec.q_star = paper_split_oracle(s, inst.p2, loads);
                } else {
                    rec.q = split_value(s, inst.r2, inst.p2, loads).mean_sim;
                    rec.q_star = oracle_optimal(s, inst.p2, loads).mean_sim;
                }
                rec.fraction = rec.q_star > 0.0 ? rec.q / rec.q_star : 1.0;
            } catch (const InfeasibleError& e) {
                rec.feasible = false;
                rec.skip_reason = e.what();
            }
            if (rec.feasible) {
                sum.n_trials++;
                total += rec.fraction;
                sum.min_fraction = std::min(sum.min_fraction, rec.fraction);
                sum.max_fraction = std::max(sum.max_fraction, rec.fraction);
            }
            report.records.push_back(std::move(rec));
        }
        if (sum.n_trials > 0) {
            sum.mean_fraction = total / sum.n_trials;
            report.summary.push_back(sum);
        }
    }
    report.runtime_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                            std::chrono::steady_clock::now() - t0)
                            .count();
    return report;
}

BoundsReport run_bounds_sweep(const SimilarityMatrix& s, const std::vector<long long>& mu_list,
                              int trials, std::uint64_t seed, const std::string& dataset_label) {
    if (trials < 1) throw ConfigError("trials must be >= 1");
    if (mu_list.empty()) throw ConfigError("need at least one mu");
    const auto t0 = std::chrono::steady_clock::now();

    BoundsReport report;
    report.dataset = dataset_label;
    report.mu_list = mu_list;
    report.trials = trials;
    report.seed = seed;

    LoadConfig loads;
    loads.ell_rev = 1;
    loads.ell_pap1 = 1;
    loads.ell_pap2 = 1;
    loads.beta = 1.0;

    // E[f] does not depend on mu; estimate once over random (R2, P2) draws.
    double f_mean = std::numeric_limits<double>::quiet_NaN();
    double f_stderr = f_mean;
    std::string f_fail;
    try {
        const EstimatorResult est =
            estimate_f(s, {}, loads, trials, seed, DrawMode::UniformFixedSize, true);
        f_mean = est.mean;
        f_stderr = est.stderr_;
    } catch (const std::runtime_error& e) {
        f_fail = e.what();
    }

    for (long long mu : mu_list) {
        BoundsRow row;
        row.mu = mu;
        row.f_mean = f_mean;
        row.f_stderr = f_stderr;
        try {
            if (mu < 1) throw ConfigError("mu must be >= 1");
            auto [a1, s1] = compute_s_mu(s, loads, 1);
            auto [amu, smu] = compute_s_mu(s, loads, mu);
            row.s_1 = s1;
            row.s_mu = smu;

            BoundInputs b5;
            b5.mu = static_cast<double>(mu);
            b5.beta = 1.0;
            b5.s_mu = smu;
            row.thm5_simple = thm5_bound_simple(b5);
            row.thm5_general = thm5_bound_general(b5);
            row.thm5_exact = thm5_bound_exact(b5);

            // The Theorem 6 path additionally needs an A^(mu) disjoint from
            // A^(1); at saturated capacity that can fail even when the plain
            // mu-load assignment exists, so only its columns go dark.
            try {
                auto [adis, sdis] = compute_s_mu(s, loads, mu, &a1);
                row.s_mu_disjoint = sdis;
                BoundInputs b6 = b5;
                b6.s_1 = s1;
                b6.s_mu = sdis;
                row.thm6_simple = mu % 4 == 0 ? thm6_bound_simple(b6)
                                              : std::numeric_limits<double>::quiet_NaN();
                row.thm6_general = thm6_bound_general(b6);
                row.thm6_exact = thm6_bound_exact(b6);
            } catch (const InfeasibleError& e) {
                row.s_mu_disjoint = std::numeric_limits<double>::quiet_NaN();
                row.thm6_simple = row.thm6_general = row.thm6_exact = row.s_mu_disjoint;
                row.reason = std::string("thm6 path: ") + e.what();
            }
            if (!f_fail.empty()) {
                row.feasible = false;
                row.reason = f_fail;
            }
        } catch (const std::runtime_error& e) {
            row.feasible = false;
            row.reason = e.what();
        }
        report.rows.push_back(std::move(row));
    }
    report.runtime_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                            std::chrono::steady_clock::now() - t0)
                            .count();
    return report;
}

std::string render(const ExperimentReport& report, EmitFormat format) {
    if (format == EmitFormat::Json) {
        ordered_json j;
        j["config"] = config_json(report.config);
        j["records"] = ordered_json::array();
        for (const TrialRecord& r : report.records)
            j["records"].push_back(ordered_json{{"beta", r.beta},
                                                {"trial", r.trial},
                                                {"seed", r.seed},
                                                {"feasible", r.feasible},
                                                {"skip_reason", r.skip_reason},
                                                {"q", r.q},
                                                {"q_star", r.q_star},
                                                {"fraction", r.fraction}});
        j["summary"] = ordered_json::array();
        for (const BetaSummary& b : report.summary)
            j["summary"].push_back(ordered_json{{"beta", b.beta},
                                                {"n_trials", b.n_trials},
                                                {"min_fraction", b.min_fraction},
                                                {"max_fraction", b.max_fraction},
                                                {"mean_fraction", b.mean_fraction}});
        j["runtime_ms"] = report.runtime_ms;
        return j.dump(2) + "\n";
    }
    std::string out = "kind,beta,trial,seed,feasible,reason,q,q_star,fraction\n";
    for (const TrialRecord& r : report.records) {
        out += "record," + fmt_double(r.beta) + ',' + std::to_string(r.trial) + ',' +
               std::to_string(r.seed) + ',' + (r.feasible ? "1" : "0") + ',' +
               csv_escape(r.skip_reason) + ',' + fmt_double(r.q) + ',' + fmt_double(r.q_star) +
               ',' + fmt_double(r.fraction) + '\n';
    }
    out += "kind,beta,n_trials,min_fraction,max_fraction,mean_fraction\n";
    for (const BetaSummary& b : report.summary) {
        out += "summary," + fmt_double(b.beta) + ',' + std::to_string(b.n_trials) + ',' +
               fmt_double(b.min_fraction) + ',' + fmt_double(b.max_fraction) + ',' +
               fmt_double(b.mean_fraction) + '\n';
    }
    return out;
}

std::string render(const BoundsReport& report, EmitFormat format) {
    if (format == EmitFormat::Json) {
        ordered_json j;
        j["config"] = ordered_json{{"dataset", report.dataset},
                                   {"mu_list", report.mu_list},
                                   {"trials", report.trials},
                                   {"seed", report.seed}};
        j["records"] = ordered_json::array();
        for (const BoundsRow& r : report.rows)
            j["records"].push_back(ordered_json{{"mu", r.mu},
                                                {"feasible", r.feasible},
                                                {"reason", r.reason},
                                                {"s_1", r.s_1},
                                                {"s_mu", r.s_mu},
                                                {"s_mu_disjoint", r.s_mu_disjoint},
                                                {"thm5_simple", r.thm5_simple},
                                                {"thm5_general", r.thm5_general},
                                                {"thm5_exact", r.thm5_exact},
                                                {"thm6_simple", r.thm6_simple},
                                                {"thm6_general", r.thm6_general},
                                                {"thm6_exact", r.thm6_exact},
                                                {"f_mean", r.f_mean},
                                                {"f_stderr", r.f_stderr}});
        j["summary"] = ordered_json::array();
        j["runtime_ms"] = report.runtime_ms;
        return j.dump(2) + "\n";
    }
    std::string out =
        "mu,feasible,reason,s_1,s_mu,s_mu_disjoint,thm5_simple,thm5_general,thm5_exact,"
        "thm6_simple,thm6_general,thm6_exact,f_mean,f_stderr\n";
    for (const BoundsRow& r : report.rows) {
        out += std::to_string(r.mu) + ',' + (r.feasible ? "1" : "0") + ',' +
               csv_escape(r.reason) + ',' + fmt_double(r.s_1) + ',' + fmt_double(r.s_mu) + ',' +
               fmt_double(r.s_mu_disjoint) + ',' + fmt_double(r.thm5_simple) + ',' +
               fmt_double(r.thm5_general) + ',' + fmt_double(r.thm5_exact) + ',' +
               fmt_double(r.thm6_simple) + ',' + fmt_double(r.thm6_general) + ',' +
               fmt_double(r.thm6_exact) + ',' + fmt_double(r.f_mean) + ',' +
               fmt_double(r.f_stderr) + '\n';
    }
    return out;
}

namespace {

void write_file(const std::string& content, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path);
    out << content;
    if (!out) throw IoError("write failed: " + path);
}

}  // namespace

void emit(const ExperimentReport& report, const std::string& path, EmitFormat format) {
    write_file(render(report, format), path);
}

void emit(const BoundsReport& report, const std::string& path, EmitFormat format) {
    write_file(render(report, format), path);
}

}  // namespace revsplit
