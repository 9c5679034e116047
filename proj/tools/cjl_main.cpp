#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>

#include "cjl/commands.hpp"

namespace {

void add_common_flags(CLI::App* sub, cjl::RunConfig& cfg) {
    sub->add_option("--seed", cfg.seed, "PRNG seed (every case records its sub-seed)");
    sub->add_option("--tol-residual", cfg.tol_residual, "relator residual bound");
    sub->add_option("--tol-rank", cfg.tol_rank, "sigma2/sigma1 rank-deficiency threshold");
    sub->add_option("--out", cfg.out_path, "write the JSON report to this path instead of stdout");
    sub->add_flag("--no-timestamp", cfg.no_timestamp, "omit wall-time fields (byte-stable output)");
}

int emit(const cjl::CommandOutput& out, const cjl::RunConfig& cfg) {
    const std::string text = out.report.dump(2) + "\n";
    if (cfg.out_path.empty()) {
        std::fputs(text.c_str(), stdout);
    } else {
        std::ofstream file(cfg.out_path, std::ios::binary);
        if (!file) {
            std::fprintf(stderr, "error: cannot open %s\n", cfg.out_path.c_str());
            return 2;
        }
        file << text;
    }
    return out.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"cohomology jump loci of the parafree families G_{m,n} and H_{m,n}"};
    app.require_subcommand(1);

    cjl::RunConfig cfg;

    auto* verify = app.add_subcommand("verify-lemmas",
                                      "squarefreeness, gamma identities, root multiplicities");
    auto* verify_m = verify->add_option("--m", cfg.m, "|m| grid bound (default 6)");
    auto* verify_n = verify->add_option("--n", cfg.n, "n grid bound (default 6)");
    add_common_flags(verify, cfg);

    auto* sample = app.add_subcommand("sample", "construct and verify family points");
    sample->add_option("--family", cfg.family, "G or H")->required();
    sample->add_option("--m", cfg.m, "first parameter")->required();
    sample->add_option("--n", cfg.n, "second parameter")->required();
    sample->add_option("--count", cfg.count, "points per subfamily (default 20)");
    add_common_flags(sample, cfg);

    auto* invariants = app.add_subcommand("invariants", "emit the invariant profile");
    invariants->add_option("--family", cfg.family, "G or H")->required();
    invariants->add_option("--m", cfg.m, "first parameter")->required();
    invariants->add_option("--n", cfg.n, "second parameter")->required();
    add_common_flags(invariants, cfg);

    auto* distinguish = app.add_subcommand("distinguish", "compare two parameter pairs");
    distinguish->add_option("--family", cfg.family, "G or H")->required();
    distinguish->add_option("--m", cfg.m, "left m")->required();
    distinguish->add_option("--n", cfg.n, "left n")->required();
    distinguish->add_option("--m2", cfg.m2, "right m")->required();
    distinguish->add_option("--n2", cfg.n2, "right n")->required();
    add_common_flags(distinguish, cfg);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    try {
        cjl::CommandOutput out;
        if (verify->parsed()) {
            if ((verify_m->count() && cfg.m <= 0) || (verify_n->count() && cfg.n <= 0))
                throw std::invalid_argument("verify-lemmas: grid bounds must be >= 1");
            out = cjl::cmd_verify_lemmas(cfg);
        } else if (sample->parsed()) {
            out = cjl::cmd_sample(cfg);
        } else if (invariants->parsed()) {
            out = cjl::cmd_invariants(cfg);
        } else {
            out = cjl::cmd_distinguish(cfg);
        }
        return emit(out, cfg);
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
