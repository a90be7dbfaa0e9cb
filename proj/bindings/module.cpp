// Python bindings for the reviewer-split toolkit.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "revsplit/bounds.hpp"
#include "revsplit/constructions.hpp"
#include "revsplit/dataio.hpp"
#include "revsplit/harness.hpp"
#include "revsplit/solver.hpp"
#include "revsplit/twostage.hpp"

namespace py = pybind11;
using namespace revsplit;

namespace {

PapMode pap_mode_from(const std::string& name) {
    if (name == "exact") return PapMode::Exact;
    if (name == "atmost") return PapMode::AtMost;
    if (name == "floorceil") return PapMode::FloorCeil;
    throw ConfigError("unknown paper-load mode: " + name);
}

}  // namespace

PYBIND11_MODULE(_revsplit, m) {
    m.doc() = "Two-stage reviewer-split assignment toolkit";

    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<InfeasibleError>(m, "InfeasibleError", PyExc_RuntimeError);
    py::register_exception<IoError>(m, "IoError", PyExc_OSError);

    py::class_<SimilarityMatrix>(m, "SimilarityMatrix")
        .def(py::init(&SimilarityMatrix::from_rows), py::arg("rows"))
        .def_static("zeros", &SimilarityMatrix::zeros)
        .def_static("from_rows", &SimilarityMatrix::from_rows)
        .def_readonly("n_reviewers", &SimilarityMatrix::n_reviewers)
        .def_readonly("n_papers", &SimilarityMatrix::n_papers)
        .def_readwrite("reviewer_ids", &SimilarityMatrix::reviewer_ids)
        .def_readwrite("paper_ids", &SimilarityMatrix::paper_ids)
        .def("at", py::overload_cast<int, int>(&SimilarityMatrix::at, py::const_))
        .def("rows", [](const SimilarityMatrix& s) {
            std::vector<std::vector<double>> rows(s.n_reviewers);
            for (int r = 0; r < s.n_reviewers; ++r) {
                rows[r].resize(s.n_papers);
                for (int p = 0; p < s.n_papers; ++p) rows[r][p] = s.at(r, p);
            }
            return rows;
        });

    py::class_<LoadConfig>(m, "LoadConfig")
        .def(py::init([](int ell_rev, int ell_pap1, int ell_pap2, double beta) {
                 LoadConfig c;
                 c.ell_rev = ell_rev;
                 c.ell_pap1 = ell_pap1;
                 c.ell_pap2 = ell_pap2;
                 c.beta = beta;
                 return c;
             }),
             py::arg("ell_rev") = 6, py::arg("ell_pap1") = 2, py::arg("ell_pap2") = 2,
             py::arg("beta") = 1.0)
        .def_readwrite("ell_rev", &LoadConfig::ell_rev)
        .def_readwrite("ell_pap1", &LoadConfig::ell_pap1)
        .def_readwrite("ell_pap2", &LoadConfig::ell_pap2)
        .def_readwrite("beta", &LoadConfig::beta)
        .def("p2_size", &LoadConfig::p2_size)
        .def("default_r2_size", &LoadConfig::default_r2_size);

    py::class_<Assignment>(m, "Assignment")
        .def_readonly("pairs", &Assignment::pairs)
        .def_readonly("value", &Assignment::value)
        .def("reviewer_loads", &Assignment::reviewer_loads)
        .def("paper_loads", &Assignment::paper_loads);

    m.def(
        "solve",
        [](const SimilarityMatrix& s, int ell_rev, double ell_pap, const std::string& mode,
           const std::vector<std::pair<int, int>>& excluded) {
            MatchSpec spec = MatchSpec::over_all(s, ell_rev, ell_pap, pap_mode_from(mode));
            spec.excluded = excluded;
            return solve(s, spec);
        },
        py::arg("s"), py::arg("ell_rev"), py::arg("ell_pap"), py::arg("pap_mode") = "exact",
        py::arg("excluded") = std::vector<std::pair<int, int>>{});
    m.def(
        "brute_force_solve",
        [](const SimilarityMatrix& s, int ell_rev, double ell_pap, const std::string& mode) {
            return brute_force_solve(s, MatchSpec::over_all(s, ell_rev, ell_pap,
                                                            pap_mode_from(mode)));
        },
        py::arg("s"), py::arg("ell_rev"), py::arg("ell_pap"), py::arg("pap_mode") = "exact");
    m.def("extract_unit_matching", &extract_unit_matching);

    py::class_<TwoStageResult>(m, "TwoStageResult")
        .def_readonly("stage1", &TwoStageResult::stage1)
        .def_readonly("stage2", &TwoStageResult::stage2)
        .def_readonly("mean_sim", &TwoStageResult::mean_sim)
        .def_readonly("oracle_mean_sim", &TwoStageResult::oracle_mean_sim)
        .def_readonly("fraction_of_oracle", &TwoStageResult::fraction_of_oracle);

    py::class_<EstimatorResult>(m, "EstimatorResult")
        .def_readonly("mean", &EstimatorResult::mean)
        .def_readonly("stderr", &EstimatorResult::stderr_)
        .def_readonly("n_samples", &EstimatorResult::n_samples);

    py::class_<SplitInstance>(m, "SplitInstance")
        .def_readonly("r2", &SplitInstance::r2)
        .def_readonly("p2", &SplitInstance::p2)
        .def_readonly("seed", &SplitInstance::seed);

    m.def("oracle_optimal", &oracle_optimal);
    m.def("split_value", &split_value);
    m.def("suboptimality", &suboptimality);
    m.def("q_prime", &q_prime);
    m.def(
        "draw_split",
        [](const SimilarityMatrix& s, const LoadConfig& loads, const std::string& mode,
           std::uint64_t seed, const std::vector<double>& scores) {
            SplitParams params;
            params.scores = scores;
            return draw_split(s, loads, parse_draw_mode(mode), params, seed);
        },
        py::arg("s"), py::arg("loads"), py::arg("mode"), py::arg("seed"),
        py::arg("scores") = std::vector<double>{});
    m.def(
        "estimate_f",
        [](const SimilarityMatrix& s, const std::vector<int>& r2, const LoadConfig& loads,
           int n_samples, std::uint64_t seed, const std::string& p2_mode, bool redraw_r2) {
            return estimate_f(s, r2, loads, n_samples, seed, parse_draw_mode(p2_mode),
                              redraw_r2);
        },
        py::arg("s"), py::arg("r2"), py::arg("loads"), py::arg("n_samples"), py::arg("seed"),
        py::arg("p2_mode") = "uniform", py::arg("redraw_r2") = false);
    m.def("sampled_objective", &sampled_objective);
    m.def("brute_force_best_r2", &brute_force_best_r2);
    m.def("paper_split_value", &paper_split_value);

    py::class_<BoundInputs>(m, "BoundInputs")
        .def(py::init([](double mu, double beta, double s_mu, double s_1, double eps) {
                 BoundInputs b;
                 b.mu = mu;
                 b.beta = beta;
                 b.s_mu = s_mu;
                 b.s_1 = s_1;
                 b.eps = eps;
                 return b;
             }),
             py::arg("mu"), py::arg("beta"), py::arg("s_mu"), py::arg("s_1") = 0.0,
             py::arg("eps") = -1.0);
    m.def("binom_min_expectation", &binom_min_expectation);
    m.def("normal_min_expectation", &normal_min_expectation);
    m.def("thm5_bound_simple", &thm5_bound_simple);
    m.def("thm5_bound_general", &thm5_bound_general);
    m.def("thm5_bound_exact", &thm5_bound_exact);
    m.def("thm6_bound_simple", &thm6_bound_simple);
    m.def("thm6_bound_general", &thm6_bound_general);
    m.def("thm6_bound_exact", &thm6_bound_exact);
    m.def("thm6_bound_exact_factor", &thm6_bound_exact_factor);
    m.def(
        "compute_s_mu",
        [](const SimilarityMatrix& s, const LoadConfig& loads, long long mu,
           const Assignment* exclude) { return compute_s_mu(s, loads, mu, exclude); },
        py::arg("s"), py::arg("loads"), py::arg("mu"), py::arg("exclude") = nullptr);

    py::class_<LowRankFactors>(m, "LowRankFactors")
        .def_readonly("k", &LowRankFactors::k)
        .def_readonly("reviewer_vectors", &LowRankFactors::reviewer_vectors)
        .def_readonly("paper_vectors", &LowRankFactors::paper_vectors)
        .def("induced", &LowRankFactors::induced);
    py::class_<Gadget3dm>(m, "Gadget3dm")
        .def_readonly("sim", &Gadget3dm::sim)
        .def_readonly("samples", &Gadget3dm::samples)
        .def_readonly("loads", &Gadget3dm::loads);
    m.def("gen_thm2", &gen_thm2);
    m.def("gen_thm4_groups", &gen_thm4_groups);
    m.def("gen_thm4_grid", &gen_thm4_grid);
    m.def("gen_3dm_gadget", &gen_3dm_gadget);
    m.def("gen_random_lowrank", &gen_random_lowrank);

    m.def("load_similarity_csv", &load_similarity_csv);
    m.def("save_similarity_csv", &save_similarity_csv);
    m.def("load_bids_csv", &load_bids_csv);
    m.def("subject_overlap_similarity", &subject_overlap_similarity);
    m.def("split_reviewer_copies", &split_reviewer_copies);
    m.def("load_scores", &load_scores);

    m.def(
        "run_split_experiment",
        [](const SimilarityMatrix& s, const std::vector<double>& betas, int trials,
           const LoadConfig& loads, std::uint64_t seed, const std::string& p2_mode,
           const std::string& variant, const std::string& dataset) {
            ExperimentConfig cfg;
            cfg.dataset = dataset;
            cfg.betas = betas;
            cfg.trials = trials;
            cfg.loads = loads;
            cfg.seed = seed;
            cfg.p2_mode = parse_draw_mode(p2_mode);
            cfg.variant = parse_variant(variant);
            return render(run_split_experiment(s, cfg), EmitFormat::Json);
        },
        py::arg("s"), py::arg("betas"), py::arg("trials") = 10,
        py::arg("loads") = LoadConfig{}, py::arg("seed") = 0, py::arg("p2_mode") = "uniform",
        py::arg("variant") = "standard", py::arg("dataset") = "");
    m.def(
        "run_bounds_sweep",
        [](const SimilarityMatrix& s, const std::vector<long long>& mu_list, int trials,
           std::uint64_t seed) {
            return render(run_bounds_sweep(s, mu_list, trials, seed), EmitFormat::Json);
        },
        py::arg("s"), py::arg("mu_list"), py::arg("trials") = 10, py::arg("seed") = 0);
}
