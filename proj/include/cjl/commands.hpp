#pragma once

#include "cjl/distinguish.hpp"
#include "cjl/report.hpp"

namespace cjl {

// Structured sweep results shared by the CLI and the acceptance suite.

struct GPointRecord {
    std::string subfamily;  // "F_zeta", "G_zeta_lambda", "H_zeta", "generic", "degeneration"
    cx zeta{}, lambda{};
    std::uint64_t sub_seed = 0;
    double residual = 0;
    bool irreducible = false;
    int d1 = 0;
    int fox_rank = 0;
    int block_rank = 0;
    std::pair<cx, cx> det_star{};
    std::vector<double> degeneration_distances;
    bool pass = false;
    std::string error;
};

std::vector<GPointRecord> run_g_sample(int m, int n, int count, std::uint64_t seed,
                                       const Tolerances& tol, int threads);

struct HPointRecord {
    std::string kind;  // "fiber", "sigma", "generic"
    cx lambda{}, r{};
    std::uint64_t sub_seed = 0;
    double residual = 0, trace_check = 0, h1_check = 0, det_h_margin = 0, det_star_residual = 0;
    int d1 = 0;
    int fiber_count = -1;
    int expected_fiber = -1;
    bool pass = false;
    std::string error;
};

std::vector<HPointRecord> run_h_sample(int m, int n, int count, std::uint64_t seed,
                                       const Tolerances& tol, int threads);

struct SquarefreeRecord {
    int m = 0, n = 0;
    bool exact_squarefree = false;
    int distinct_roots = 0;
    int ell = 0;
    bool pass = false;
};

std::vector<SquarefreeRecord> run_squarefree_sweep(int m_max, int n_max);

struct GammaSweepResult {
    int pairs = 0;
    int matrices = 0;
    double max_identity_residual = 0;
    double max_power_residual = 0;
    bool pass = false;
};

GammaSweepResult run_gamma_sweep(std::uint64_t seed, int pairs = 10000, int k_cap = 40,
                                 int matrices = 500, double tol_identity = 1e-9,
                                 double tol_power = 1e-8);

struct DoubleRootSweepRecord {
    int m = 0, n = 0;
    int lambdas = 0;
    bool pass = false;
    std::string note;
};

std::vector<DoubleRootSweepRecord> run_double_root_sweep(int m_max, int n_max, std::uint64_t seed,
                                                         int grid = 50);

// Small jump/generic d1 probes; these make a broken rank tolerance visible in
// the lemma command.
struct RankCanaryRecord {
    int m = 0, n = 0;
    int d1_jump = 0;
    int d1_generic = 0;
    bool pass = false;
};

std::vector<RankCanaryRecord> run_rank_canaries(std::uint64_t seed, const Tolerances& tol);

// CLI entry points: fill a report and return the process exit code
// (0 pass, 1 verification failure; config errors throw std::invalid_argument).
struct CommandOutput {
    Json report = Json::object();
    int exit_code = 0;
};

CommandOutput cmd_verify_lemmas(const RunConfig& cfg);
CommandOutput cmd_sample(const RunConfig& cfg);
CommandOutput cmd_invariants(const RunConfig& cfg);
CommandOutput cmd_distinguish(const RunConfig& cfg);

}  // namespace cjl
