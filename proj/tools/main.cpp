// revsplit: two-stage reviewer-split assignment toolkit CLI.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "revsplit/bounds.hpp"
#include "revsplit/constructions.hpp"
#include "revsplit/dataio.hpp"
#include "revsplit/harness.hpp"
#include "revsplit/rng.hpp"
#include "revsplit/solver.hpp"
#include "revsplit/twostage.hpp"

using namespace revsplit;
using ordered_json = nlohmann::ordered_json;

namespace {

struct LoadsOpt {
    int l1 = 2, l2 = 2, lrev = 6;
};

void add_loads_flag(CLI::App* cmd, LoadsOpt& loads) {
    cmd->add_option_function<std::string>(
           "--loads",
           [&loads](const std::string& v) {
               if (std::sscanf(v.c_str(), "%d,%d,%d", &loads.l1, &loads.l2, &loads.lrev) != 3)
                   throw CLI::ValidationError("--loads", "expected l1,l2,lrev");
           },
           "Stage loads as l1,l2,lrev (default 2,2,6)");
}

void write_out(const std::string& content, const std::string& out) {
    if (out.empty()) {
        std::cout << content;
        return;
    }
    std::ofstream f(out, std::ios::binary);
    if (!f) throw IoError("cannot write " + out);
    f << content;
}

PapMode parse_pap_mode(const std::string& name) {
    if (name == "exact") return PapMode::Exact;
    if (name == "atmost") return PapMode::AtMost;
    if (name == "floorceil") return PapMode::FloorCeil;
    throw ConfigError("unknown paper-load mode: " + name);
}

ordered_json assignment_json(const SimilarityMatrix& s, const Assignment& a) {
    ordered_json pairs = ordered_json::array();
    for (const auto& [r, p] : a.pairs) {
        ordered_json pair = ordered_json::array();
        pair.push_back(r < static_cast<int>(s.reviewer_ids.size()) ? s.reviewer_ids[r]
                                                                   : std::to_string(r));
        pair.push_back(p < static_cast<int>(s.paper_ids.size()) ? s.paper_ids[p]
                                                                : std::to_string(p));
        pairs.push_back(pair);
    }
    return ordered_json{{"value", a.value}, {"n_pairs", a.pairs.size()}, {"pairs", pairs}};
}

std::string assignment_csv(const SimilarityMatrix& s, const Assignment& a) {
    std::string out = "reviewer_id,paper_id\n";
    for (const auto& [r, p] : a.pairs) {
        out += (r < static_cast<int>(s.reviewer_ids.size()) ? s.reviewer_ids[r]
                                                            : std::to_string(r)) +
               "," +
               (p < static_cast<int>(s.paper_ids.size()) ? s.paper_ids[p] : std::to_string(p)) +
               "\n";
    }
    return out;
}

int run(int argc, char** argv) {
    CLI::App app{"Two-stage reviewer-split assignment toolkit"};
    app.require_subcommand(1);

    std::string input, out, format = "json", p2_mode = "uniform", variant = "standard";
    std::uint64_t seed = 0;
    double beta = 1.0;
    std::vector<double> betas;
    int trials = 10;
    LoadsOpt loads;

    // assign
    auto* assign = app.add_subcommand("assign", "Single-stage optimal assignment");
    std::string pap_mode = "exact";
    assign->add_option("--input", input, "Similarity CSV")->required();
    add_loads_flag(assign, loads);
    assign->add_option("--pap-mode", pap_mode, "Paper load mode: exact|atmost|floorceil");
    assign->add_option("--out", out, "Output path (default stdout)");
    assign->add_option("--format", format, "json|csv");

    // oracle
    auto* oracle = app.add_subcommand("oracle", "Jointly optimal two-stage assignment");
    oracle->add_option("--input", input, "Similarity CSV")->required();
    oracle->add_option("--beta", beta, "Second-stage paper fraction");
    oracle->add_option("--seed", seed, "P2 draw seed");
    oracle->add_option("--p2-mode", p2_mode, "uniform|independent|score-top|score-middle");
    add_loads_flag(oracle, loads);
    oracle->add_option("--out", out, "Output path (default stdout)");
    oracle->add_option("--format", format, "json|csv");

    // simulate
    auto* simulate = app.add_subcommand("simulate", "Random-split experiment vs the oracle");
    simulate->add_option("--input", input, "Similarity CSV")->required();
    simulate->add_option("--beta", betas, "Second-stage fractions (repeatable)");
    simulate->add_option("--trials", trials, "Trials per beta (default 10)");
    simulate->add_option("--seed", seed, "Master seed");
    simulate->add_option("--p2-mode", p2_mode, "P2 draw mode");
    simulate->add_option("--variant", variant, "standard|paper-split");
    add_loads_flag(simulate, loads);
    simulate->add_option("--out", out, "Output path (default stdout)");
    simulate->add_option("--format", format, "json|csv");

    // bounds
    auto* bounds = app.add_subcommand("bounds", "Theorem 5/6 bound sweep over mu");
    std::vector<long long> mu_list;
    int copies = 0;
    bounds->add_option("--input", input, "Similarity CSV")->required();
    bounds->add_option("--mu", mu_list, "Load scales (repeatable)")->required();
    bounds->add_option("--trials", trials, "Random splits for the E[f] estimate");
    bounds->add_option("--seed", seed, "Master seed");
    bounds->add_option("--copies", copies,
                       "Reviewer copies before the sweep (0 = auto when lambda < 2n)");
    bounds->add_option("--out", out, "Output path (default stdout)");
    bounds->add_option("--format", format, "json|csv");

    // gen
    auto* gen = app.add_subcommand("gen", "Write a synthetic instance as similarity CSV");
    std::string gen_variant = "thm2", tuples_path;
    int n = 10, k = 2, lambda = 0, universe = 0;
    gen->add_option("--variant", gen_variant, "thm2|thm4-groups|thm4-grid|3dm|lowrank");
    gen->add_option("--n", n, "Paper count");
    gen->add_option("--k", k, "Rank parameter");
    gen->add_option("--beta", beta, "thm2 fraction");
    gen->add_option("--lambda", lambda, "Reviewer count (lowrank)");
    gen->add_option("--seed", seed, "Generator seed (lowrank)");
    gen->add_option("--tuples", tuples_path, "3DM tuples file, lines x,y,z");
    gen->add_option("--s", universe, "3DM universe size");
    gen->add_option("--out", out, "Output path (default stdout)");

    // convert
    auto* convert = app.add_subcommand("convert", "Convert raw data to similarity CSV");
    std::string from = "bids", rev_areas_path, pap_areas_path;
    int total_areas = 25;
    convert->add_option("--from", from, "bids|areas");
    convert->add_option("--input", input, "Bids CSV (bids mode)");
    convert->add_option("--reviewer-areas", rev_areas_path, "Reviewer subject-area file");
    convert->add_option("--paper-areas", pap_areas_path, "Paper subject-area file");
    convert->add_option("--total-areas", total_areas, "Total subject areas (default 25)");
    convert->add_option("--out", out, "Output path (default stdout)");

    CLI11_PARSE(app, argc, argv);
    const EmitFormat fmt = format == "csv" ? EmitFormat::Csv : EmitFormat::Json;

    if (*assign) {
        const SimilarityMatrix s = load_similarity_csv(input);
        const Assignment a = solve(
            s, MatchSpec::over_all(s, loads.lrev, loads.l1, parse_pap_mode(pap_mode)));
        write_out(fmt == EmitFormat::Csv ? assignment_csv(s, a)
                                         : assignment_json(s, a).dump(2) + "\n",
                  out);
    } else if (*oracle) {
        const SimilarityMatrix s = load_similarity_csv(input);
        LoadConfig lc;
        lc.ell_rev = loads.lrev;
        lc.ell_pap1 = loads.l1;
        lc.ell_pap2 = loads.l2;
        lc.beta = beta;
        const SplitInstance inst =
            draw_split(s, lc, parse_draw_mode(p2_mode), SplitParams{}, seed);
        const TwoStageResult res = oracle_optimal(s, inst.p2, lc);
        ordered_json j{{"mean_similarity", res.mean_sim},
                       {"p2", inst.p2},
                       {"stage1", assignment_json(s, res.stage1)},
                       {"stage2", assignment_json(s, res.stage2)}};
        write_out(j.dump(2) + "\n", out);
    } else if (*simulate) {
        const SimilarityMatrix s = load_similarity_csv(input);
        ExperimentConfig cfg;
        cfg.dataset = input;
        cfg.betas = betas.empty() ? std::vector<double>{1.0} : betas;
        cfg.trials = trials;
        cfg.loads.ell_rev = loads.lrev;
        cfg.loads.ell_pap1 = loads.l1;
        cfg.loads.ell_pap2 = loads.l2;
        cfg.p2_mode = parse_draw_mode(p2_mode);
        cfg.seed = seed;
        cfg.variant = parse_variant(variant);
        write_out(render(run_split_experiment(s, cfg), fmt), out);
    } else if (*bounds) {
        SimilarityMatrix s = load_similarity_csv(input);
        int c = copies;
        if (c == 0 && s.n_reviewers < 2 * s.n_papers)
            c = (2 * s.n_papers + s.n_reviewers - 1) / s.n_reviewers;
        if (c > 1) s = split_reviewer_copies(s, c);
        write_out(render(run_bounds_sweep(s, mu_list, trials, seed, input), fmt), out);
    } else if (*gen) {
        SimilarityMatrix s;
        if (gen_variant == "thm2") {
            s = gen_thm2(n, beta);
        } else if (gen_variant == "thm4-groups") {
            s = gen_thm4_groups(n, k);
        } else if (gen_variant == "thm4-grid") {
            s = gen_thm4_grid(n, k).induced();
        } else if (gen_variant == "lowrank") {
            s = gen_random_lowrank(n, lambda > 0 ? lambda : 2 * n, k, seed).second;
        } else if (gen_variant == "3dm") {
            std::ifstream in(tuples_path);
            if (!in) throw IoError("cannot open " + tuples_path);
            std::vector<std::array<int, 3>> tuples;
            std::array<int, 3> t;
            char c1, c2;
            while (in >> t[0] >> c1 >> t[1] >> c2 >> t[2]) tuples.push_back(t);
            const Gadget3dm g = gen_3dm_gadget(tuples, universe);
            s = g.sim;
            std::cerr << "beta=" << g.loads.beta << " samples=X,Y,Z blocks of size " << universe
                      << "\n";
        } else {
            throw ConfigError("unknown generator variant: " + gen_variant);
        }
        save_similarity_csv(s, out.empty() ? "/dev/stdout" : out);
    } else if (*convert) {
        SimilarityMatrix s;
        if (from == "bids") {
            if (input.empty()) throw ConfigError("--input required for bids conversion");
            s = load_bids_csv(input);
        } else if (from == "areas") {
            if (rev_areas_path.empty() || pap_areas_path.empty())
                throw ConfigError("--reviewer-areas and --paper-areas required");
            const AreaList rv = load_subject_areas(rev_areas_path);
            const AreaList pv = load_subject_areas(pap_areas_path);
            s = subject_overlap_similarity(rv.areas, pv.areas, total_areas);
            s.reviewer_ids = rv.ids;
            s.paper_ids = pv.ids;
        } else {
            throw ConfigError("unknown conversion source: " + from);
        }
        save_similarity_csv(s, out.empty() ? "/dev/stdout" : out);
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const InfeasibleError& e) {
        std::cerr << "infeasible: " << e.what() << "\n";
        return 3;
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const IoError& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return 4;
    }
}
