#include "cjl/commands.hpp"

#include <chrono>
#include <cmath>

namespace cjl {

namespace {

struct GJob {
    std::string subfamily;
    cx zeta{}, lambda{};
    bool lambda_fixed = false;
    std::uint64_t sub_seed = 0;
};

GPointRecord make_g_record(const GJob& job, int m, int n, const Tolerances& tol) {
    GPointRecord rec;
    rec.subfamily = job.subfamily;
    rec.zeta = job.zeta;
    rec.sub_seed = job.sub_seed;
    Rng rng(job.sub_seed);
    const GParams gp = g_params(m, n);
    const Presentation pres = g_presentation_wyz(m, n);
    try {
        if (job.subfamily == "degeneration") {
            std::vector<cx> seq;
            for (int k = 2; k <= 8; ++k)
                seq.push_back(job.zeta * (cx{1} + cx{std::pow(2.0, -k)}));
            const cx aprime = rng.disk(1.0);
            const cx cprime = std::abs(job.zeta - cx{1}) <= 1e-10
                                  ? cx{1.0 / n}
                                  : rng.annulus(0.4, 1.2);
            rec.lambda = seq.back();
            rec.pass = degeneration_check(n, job.zeta, aprime, cprime, seq,
                                          &rec.degeneration_distances);
            return rec;
        }
        if (job.subfamily == "generic") {
            const RepPoint rep = sample_generic_rep_G(gp, job.sub_seed);
            rec.lambda = rep.params.at("lambda");
            rec.residual = relator_residual(rep, pres);
            rec.irreducible = is_irreducible(rep);
            rec.d1 = d1_dim(pres, rep, tol.rank_ratio);
            rec.fox_rank = derivation_matrix(pres, rep).rank(tol.rank_ratio);
            rec.block_rank = rec.fox_rank;  // block comparison applies to jump families
            rec.det_star = {rep.images[2].det(), rep.images[1].det()};
            rec.pass = rec.residual <= tol.residual && rec.irreducible && rec.d1 == 2;
            return rec;
        }

        RepPoint rep;
        if (job.subfamily == "F_zeta") {
            for (int attempt = 0;; ++attempt) {
                try {
                    const cx lambda = sample_f_lambda(gp, job.zeta, rng);
                    rep = build_F_zeta(gp, complete_f_params(gp, job.zeta, lambda), tol);
                    break;
                } catch (const ConstraintError&) {
                    if (attempt >= 20) throw;
                }
            }
        } else if (job.subfamily == "G_zeta_lambda") {
            GZetaLambdaParams p;
            p.zeta = job.zeta;
            p.lambda = job.lambda;
            p.c = rng.disk(1.2);
            p.scale = rng.annulus(0.5, 1.5);
            rep = build_G_zeta_lambda(gp, p, tol);
        } else if (job.subfamily == "H_zeta") {
            HZetaGParams p;
            p.zeta = job.zeta;
            p.aprime = rng.disk(1.2);
            if (std::abs(job.zeta - cx{1}) <= 1e-10) {
                do {
                    p.cprime = rng.annulus(0.3, 1.2);
                } while (std::abs(p.cprime - cx{1.0 / (2.0 * n)}) < 0.05);
                p.d = cx{1} / (static_cast<double>(n) * p.cprime) - cx{1};
            } else {
                p.cprime = rng.annulus(0.3, 1.2);
                do {
                    p.d = rng.disk(1.6);
                } while (std::abs(p.d - cx{1}) < 0.3);
            }
            rep = build_H_zeta_G(n, p, tol);
        } else {
            throw std::runtime_error("unknown subfamily " + job.subfamily);
        }
        rec.lambda = rep.params.count("lambda") ? rep.params.at("lambda") : job.zeta;
        rec.residual = relator_residual(rep, pres);
        rec.irreducible = is_irreducible(rep);
        rec.d1 = d1_dim(pres, rep, tol.rank_ratio);
        rec.fox_rank = derivation_matrix(pres, rep).rank(tol.rank_ratio);
        const bool zeta_one = std::abs(job.zeta - cx{1}) <= 1e-10;
        rec.block_rank = g_condition_rank(rep, m, n, zeta_one, tol.rank_ratio);
        rec.det_star = {rep.images[2].det(), rep.images[1].det()};
        rec.pass = rec.residual <= tol.residual && rec.irreducible && rec.d1 == 3 &&
                   rec.fox_rank == rec.block_rank;
    } catch (const std::exception& e) {
        rec.error = e.what();
        rec.pass = false;
    }
    return rec;
}

}  // namespace

std::vector<GPointRecord> run_g_sample(int m, int n, int count, std::uint64_t seed,
                                       const Tolerances& tol, int threads) {
    const GParams gp = g_params(m, n);
    std::vector<GJob> jobs;
    auto push_jobs = [&](const std::string& subfamily, cx zeta, cx lambda, bool fixed, int how_many) {
        for (int i = 0; i < how_many; ++i) {
            GJob job;
            job.subfamily = subfamily;
            job.zeta = zeta;
            job.lambda = lambda;
            job.lambda_fixed = fixed;
            jobs.push_back(job);
        }
    };

    std::vector<cx> zetas_g{cx{1}};
    for (const cx z : roots_of_unity(gp.g)) zetas_g.push_back(z);
    for (const cx zeta : zetas_g) push_jobs("F_zeta", zeta, {}, false, count);

    const RootSet froots = poly_roots(f_poly(m, n).to_cpoly());
    for (const cx zeta : roots_of_unity(n)) {
        if (zeta_in_lambda_g(zeta, gp.g)) continue;
        for (const auto& root : froots.roots)
            push_jobs("G_zeta_lambda", zeta, root.value, true, count);
    }

    if (m == -n) {
        std::vector<cx> zetas_n{cx{1}};
        for (const cx z : roots_of_unity(n)) zetas_n.push_back(z);
        for (const cx zeta : zetas_n) {
            push_jobs("H_zeta", zeta, {}, false, count);
            push_jobs("degeneration", zeta, {}, false, 1);
        }
    }
    push_jobs("generic", {}, {}, false, count);

    for (std::size_t i = 0; i < jobs.size(); ++i) jobs[i].sub_seed = sub_seed(seed, i);

    std::vector<GPointRecord> records(jobs.size());
    parallel_cases(jobs.size(), threads, [&](std::size_t i) {
        records[i] = make_g_record(jobs[i], m, n, tol);
    });
    return records;
}

std::vector<HPointRecord> run_h_sample(int m, int n, int count, std::uint64_t seed,
                                       const Tolerances& tol, int threads) {
    if (m < 1 || n < 1) throw std::invalid_argument("run_h_sample: m, n must be positive");
    struct HJob {
        std::string kind;
        std::uint64_t sub_seed = 0;
    };
    std::vector<HJob> jobs;
    for (int i = 0; i < count; ++i) jobs.push_back({"fiber", 0});
    for (int i = 0; i < count; ++i) jobs.push_back({"generic", 0});
    for (std::size_t i = 0; i < jobs.size(); ++i) jobs[i].sub_seed = sub_seed(seed, i);

    std::vector<std::vector<HPointRecord>> buckets(jobs.size());
    const Presentation pres = h_presentation_xuz(m, n);
    parallel_cases(jobs.size(), threads, [&](std::size_t i) {
        const HJob& job = jobs[i];
        Rng rng(job.sub_seed);
        std::vector<HPointRecord>& out = buckets[i];
        try {
            if (job.kind == "generic") {
                HPointRecord rec;
                rec.kind = "generic";
                rec.sub_seed = job.sub_seed;
                const RepPoint rep = sample_generic_rep_H(m, n, job.sub_seed);
                rec.lambda = rep.params.at("lambda");
                rec.residual = relator_residual(rep, pres);
                rec.d1 = d1_dim(pres, rep, tol.rank_ratio);
                rec.pass = rec.residual <= tol.residual && rec.d1 == 2;
                out.push_back(std::move(rec));
                return;
            }
            // one lambda in R, its fiber count, and a sigma point per admissible root
            const cx lambda = sample_lambda_in_R(m, n, rng);
            const std::vector<cx> roots = admissible_roots(m, n, lambda);
            HPointRecord fiber;
            fiber.kind = "fiber";
            fiber.sub_seed = job.sub_seed;
            fiber.lambda = lambda;
            fiber.fiber_count = static_cast<int>(roots.size());
            fiber.expected_fiber = m;
            fiber.pass = fiber.fiber_count == m;
            out.push_back(fiber);
            for (const cx r : roots) {
                HPointRecord rec;
                rec.kind = "sigma";
                rec.sub_seed = job.sub_seed;
                rec.lambda = lambda;
                rec.r = r;
                try {
                    SigmaParams sp;
                    sp.m = m;
                    sp.n = n;
                    sp.lambda = lambda;
                    sp.r = r;
                    sp.a1 = rng.annulus(0.4, 1.4);
                    const auto [rep, report] = build_sigma(sp, tol);
                    rec.residual = report.residual;
                    rec.trace_check = report.trace_check;
                    rec.h1_check = report.h1_check;
                    rec.det_h_margin = report.det_h_margin;
                    rec.det_star_residual = report.det_star_residual;
                    rec.d1 = report.d1;
                    rec.pass = report.residual <= tol.residual && report.d1 == 3 &&
                               report.det_star_residual <= 1e-10;
                } catch (const std::exception& e) {
                    rec.error = e.what();
                    rec.pass = false;
                }
                out.push_back(std::move(rec));
            }
        } catch (const std::exception& e) {
            HPointRecord rec;
            rec.kind = job.kind;
            rec.sub_seed = job.sub_seed;
            rec.error = e.what();
            rec.pass = false;
            out.push_back(std::move(rec));
        }
    });
    std::vector<HPointRecord> records;
    for (auto& bucket : buckets)
        for (auto& rec : bucket) records.push_back(std::move(rec));
    return records;
}

std::vector<SquarefreeRecord> run_squarefree_sweep(int m_max, int n_max) {
    std::vector<SquarefreeRecord> out;
    for (int m = -m_max; m <= m_max; ++m) {
        if (m == 0) continue;
        for (int n = 1; n <= n_max; ++n) {
            SquarefreeRecord rec;
            rec.m = m;
            rec.n = n;
            rec.ell = std::max({m, n, n - m});
            rec.exact_squarefree = int_poly_squarefree(f_poly(m, n));
            const RootSet roots = poly_roots(f_poly(m, n).to_cpoly());
            rec.distinct_roots = static_cast<int>(roots.roots.size());
            rec.pass = rec.exact_squarefree && rec.distinct_roots == rec.ell;
            out.push_back(rec);
        }
    }
    return out;
}

GammaSweepResult run_gamma_sweep(std::uint64_t seed, int pairs, int k_cap, int matrices,
                                 double tol_identity, double tol_power) {
    GammaSweepResult result;
    result.pairs = pairs;
    result.matrices = matrices;
    Rng rng(sub_seed(seed, 0x9au));
    for (int i = 0; i < pairs; ++i) {
        const cx r = rng.disk(3.0);
        const long long k = rng.integer(-k_cap, k_cap);
        result.max_identity_residual =
            std::max(result.max_identity_residual, gamma_identities_residual(r, k));
    }
    for (int i = 0; i < matrices; ++i) {
        // random det-1 matrix
        const cx a = rng.annulus(0.4, 1.5), b = rng.disk(1.0), c = rng.disk(1.0);
        const Mat2 x{a, b, c, (cx{1} + b * c) / a};
        const cx r = x.tr();
        const long long k = rng.integer(-k_cap, k_cap);
        const Mat2 lhs = mat_pow(x, k);
        const Mat2 rhs = gamma_val(k, r) * x - gamma_val(k - 1, r) * Mat2::identity();
        const double res = (lhs - rhs).frobenius() / std::max(1.0, lhs.frobenius());
        result.max_power_residual = std::max(result.max_power_residual, res);
    }
    result.pass = result.max_identity_residual <= tol_identity &&
                  result.max_power_residual <= tol_power;
    return result;
}

std::vector<DoubleRootSweepRecord> run_double_root_sweep(int m_max, int n_max, std::uint64_t seed,
                                                         int grid) {
    std::vector<DoubleRootSweepRecord> out;
    for (int m = 1; m <= std::min(m_max, 5); ++m)
        for (int n = 1; n <= n_max; ++n) {
            DoubleRootSweepRecord rec;
            rec.m = m;
            rec.n = n;
            rec.lambdas = grid;
            Rng rng(sub_seed(seed, static_cast<std::uint64_t>(m * 97 + n)));
            std::vector<cx> lambdas;
            lambdas.reserve(static_cast<std::size_t>(grid));
            for (int i = 0; i < grid; ++i) lambdas.push_back(sample_lambda_in_R(m, n, rng, 0.02));
            const DoubleRootReport report = double_root_check(m, n, lambdas);
            rec.pass = report.ok;
            if (!report.ok)
                for (const auto& e : report.entries)
                    if (!e.ok) rec.note = e.note;
            out.push_back(rec);
        }
    return out;
}

std::vector<RankCanaryRecord> run_rank_canaries(std::uint64_t seed, const Tolerances& tol) {
    std::vector<RankCanaryRecord> out;
    for (auto [m, n] : {std::pair{1, 1}, {1, 2}, {-2, 2}}) {
        RankCanaryRecord rec;
        rec.m = m;
        rec.n = n;
        const GParams gp = g_params(m, n);
        const Presentation pres = g_presentation_wyz(m, n);
        try {
            Rng rng(sub_seed(seed, static_cast<std::uint64_t>(100 + m * 10 + n)));
            const cx lambda = sample_f_lambda(gp, cx{1}, rng);
            const RepPoint jump = build_F_zeta(gp, complete_f_params(gp, cx{1}, lambda), tol);
            rec.d1_jump = d1_dim(pres, jump, tol.rank_ratio);
            const RepPoint generic = sample_generic_rep_G(gp, sub_seed(seed, 7u));
            rec.d1_generic = d1_dim(pres, generic, tol.rank_ratio);
            rec.pass = rec.d1_jump == 3 && rec.d1_generic == 2;
        } catch (const std::exception&) {
            rec.pass = false;
        }
        out.push_back(rec);
    }
    return out;
}

namespace {

Json config_json(const RunConfig& cfg) {
    Json j = Json::object();
    j.set("seed", cfg.seed);
    j.set("family", cfg.family);
    j.set("m", cfg.m);
    j.set("n", cfg.n);
    j.set("m2", cfg.m2);
    j.set("n2", cfg.n2);
    j.set("count", cfg.count);
    j.set("tol_residual", cfg.tol_residual);
    j.set("tol_rank", cfg.tol_rank);
    j.set("tol_cluster", cfg.tol_cluster);
    return j;
}

struct Envelope {
    Json report = Json::object();
    Json cases = Json::array();
    int pass = 0, fail = 0;
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

    Envelope(const std::string& command, const RunConfig& cfg) {
        report.set("schema", 1);
        report.set("command", command);
        report.set("config", config_json(cfg));
    }

    void add(Json record, bool ok) {
        cases.push(std::move(record));
        ++(ok ? pass : fail);
    }

    CommandOutput finish(const RunConfig& cfg, int exit_on_fail = 1) {
        Json summary = Json::object();
        summary.set("cases", pass + fail);
        summary.set("pass", pass);
        summary.set("fail", fail);
        report.set("cases", std::move(cases));
        report.set("summary", std::move(summary));
        if (!cfg.no_timestamp) {
            const double ms = std::chrono::duration<double, std::milli>(
                                  std::chrono::steady_clock::now() - start)
                                  .count();
            report.set("wall_time_ms", ms);
        }
        CommandOutput out;
        out.report = std::move(report);
        out.exit_code = fail > 0 ? exit_on_fail : 0;
        return out;
    }
};

Tolerances tolerances_of(const RunConfig& cfg) {
    Tolerances tol;
    tol.residual = cfg.tol_residual;
    tol.rank_ratio = cfg.tol_rank;
    tol.cluster = cfg.tol_cluster;
    return tol;
}

}  // namespace

CommandOutput cmd_verify_lemmas(const RunConfig& cfg) {
    cfg.validate();
    const int m_max = cfg.m > 0 ? cfg.m : 6;
    const int n_max = cfg.n > 0 ? cfg.n : 6;
    if (cfg.m < 0 || cfg.n < 0)
        throw std::invalid_argument("verify-lemmas: grid bounds must be positive");
    Envelope env("verify-lemmas", cfg);
    int index = 0;

    for (const auto& rec : run_squarefree_sweep(m_max, n_max)) {
        Json j = Json::object();
        j.set("index", index++);
        j.set("kind", "squarefree");
        j.set("m", rec.m);
        j.set("n", rec.n);
        j.set("exact_squarefree", rec.exact_squarefree);
        j.set("distinct_roots", rec.distinct_roots);
        j.set("ell", rec.ell);
        j.set("pass", rec.pass);
        env.add(std::move(j), rec.pass);
    }

    const GammaSweepResult gamma = run_gamma_sweep(cfg.seed);
    {
        Json j = Json::object();
        j.set("index", index++);
        j.set("kind", "gamma-identities");
        j.set("pairs", gamma.pairs);
        j.set("matrices", gamma.matrices);
        j.set("max_identity_residual", gamma.max_identity_residual);
        j.set("max_power_residual", gamma.max_power_residual);
        j.set("pass", gamma.pass);
        env.add(std::move(j), gamma.pass);
    }

    for (const auto& rec : run_double_root_sweep(m_max, n_max, cfg.seed)) {
        Json j = Json::object();
        j.set("index", index++);
        j.set("kind", "h-root-multiplicity");
        j.set("m", rec.m);
        j.set("n", rec.n);
        j.set("lambdas", rec.lambdas);
        if (!rec.note.empty()) j.set("note", rec.note);
        j.set("pass", rec.pass);
        env.add(std::move(j), rec.pass);
    }

    for (const auto& rec : run_rank_canaries(cfg.seed, tolerances_of(cfg))) {
        Json j = Json::object();
        j.set("index", index++);
        j.set("kind", "rank-canary");
        j.set("m", rec.m);
        j.set("n", rec.n);
        j.set("d1_jump", rec.d1_jump);
        j.set("d1_generic", rec.d1_generic);
        j.set("pass", rec.pass);
        env.add(std::move(j), rec.pass);
    }
    return env.finish(cfg);
}

CommandOutput cmd_sample(const RunConfig& cfg) {
    cfg.validate();
    if (cfg.family != "G" && cfg.family != "H")
        throw std::invalid_argument("sample: --family must be G or H");
    Envelope env("sample", cfg);
    int index = 0;
    if (cfg.family == "G") {
        if (cfg.m == 0 || cfg.n <= 0) throw std::invalid_argument("sample: need nonzero m and positive n");
        for (const auto& rec :
             run_g_sample(cfg.m, cfg.n, cfg.count, cfg.seed, tolerances_of(cfg), cfg.effective_threads())) {
            Json j = Json::object();
            j.set("index", index++);
            j.set("subfamily", rec.subfamily);
            j.set("zeta", rec.zeta);
            j.set("lambda", rec.lambda);
            j.set("sub_seed", rec.sub_seed);
            if (rec.subfamily == "degeneration") {
                Json d = Json::array();
                for (double v : rec.degeneration_distances) d.push(v);
                j.set("fingerprint_distances", std::move(d));
            } else {
                j.set("residual", rec.residual);
                j.set("irreducible", rec.irreducible);
                j.set("d1", rec.d1);
                j.set("fox_rank", rec.fox_rank);
                j.set("block_rank", rec.block_rank);
                Json ds = Json::array();
                ds.push(rec.det_star.first);
                ds.push(rec.det_star.second);
                j.set("det_star", std::move(ds));
            }
            if (!rec.error.empty()) j.set("error", rec.error);
            j.set("pass", rec.pass);
            env.add(std::move(j), rec.pass);
        }
    } else {
        if (cfg.m <= 0 || cfg.n <= 0) throw std::invalid_argument("sample: need positive m, n for H");
        for (const auto& rec :
             run_h_sample(cfg.m, cfg.n, cfg.count, cfg.seed, tolerances_of(cfg), cfg.effective_threads())) {
            Json j = Json::object();
            j.set("index", index++);
            j.set("kind", rec.kind);
            j.set("lambda", rec.lambda);
            j.set("sub_seed", rec.sub_seed);
            if (rec.kind == "fiber") {
                j.set("fiber_count", rec.fiber_count);
                j.set("expected", rec.expected_fiber);
            } else if (rec.kind == "sigma") {
                j.set("r", rec.r);
                j.set("residual", rec.residual);
                j.set("trace_check", rec.trace_check);
                j.set("h1_check", rec.h1_check);
                j.set("det_h_margin", rec.det_h_margin);
                j.set("det_star_residual", rec.det_star_residual);
                j.set("d1", rec.d1);
            } else {
                j.set("residual", rec.residual);
                j.set("d1", rec.d1);
            }
            if (!rec.error.empty()) j.set("error", rec.error);
            j.set("pass", rec.pass);
            env.add(std::move(j), rec.pass);
        }
    }
    return env.finish(cfg);
}

CommandOutput cmd_invariants(const RunConfig& cfg) {
    cfg.validate();
    if (cfg.family != "G" && cfg.family != "H")
        throw std::invalid_argument("invariants: --family must be G or H");
    Envelope env("invariants", cfg);
    Json j = Json::object();
    j.set("index", 0);
    j.set("family", cfg.family);
    j.set("m", cfg.m);
    j.set("n", cfg.n);
    if (cfg.family == "G") {
        const InvariantProfileG p = invariant_profile_G(cfg.m, cfg.n);  // validates m, n
        Json prof = Json::object();
        prof.set("anti_diagonal", p.anti_diagonal);
        prof.set("g", p.g);
        prof.set("sum_abs", p.sum_abs);
        prof.set("ell", p.ell);
        prof.set("count_c_cstar", p.count_c_cstar);
        prof.set("two_dim_fiber_components", p.two_dim_fiber_components);
        j.set("profile", std::move(prof));
    } else {
        const InvariantProfileH p = invariant_profile_H(cfg.m, cfg.n, cfg.seed);
        Json prof = Json::object();
        prof.set("m", p.m_measured);
        prof.set("punctures", p.punctures);
        prof.set("parity_class", p.parity == ParityClass::MEquals1
                                     ? "m_equals_1"
                                     : (p.parity == ParityClass::MEven ? "m_even" : "m_odd_ge_3"));
        j.set("profile", std::move(prof));
    }
    j.set("pass", true);
    env.add(std::move(j), true);
    return env.finish(cfg);
}

CommandOutput cmd_distinguish(const RunConfig& cfg) {
    cfg.validate();
    if (cfg.family != "G" && cfg.family != "H")
        throw std::invalid_argument("distinguish: --family must be G or H");
    Envelope env("distinguish", cfg);
    const Verdict verdict = cfg.family == "G" ? distinguish_G(cfg.m, cfg.n, cfg.m2, cfg.n2)
                                              : distinguish_H(cfg.m, cfg.n, cfg.m2, cfg.n2, cfg.seed);
    Json j = Json::object();
    j.set("index", 0);
    j.set("family", cfg.family);
    j.set("left_m", cfg.m);
    j.set("left_n", cfg.n);
    j.set("right_m", cfg.m2);
    j.set("right_n", cfg.n2);
    j.set("distinguished", verdict.distinguished);
    Json w = Json::array();
    for (const auto& witness : verdict.witnesses) {
        Json wj = Json::object();
        wj.set("invariant", witness.name);
        wj.set("left", witness.left);
        wj.set("right", witness.right);
        w.push(std::move(wj));
    }
    j.set("witnesses", std::move(w));
    j.set("pass", true);
    env.add(std::move(j), true);
    // the verdict is data, not a failure
    CommandOutput out = env.finish(cfg);
    out.exit_code = 0;
    return out;
}

}  // namespace cjl
