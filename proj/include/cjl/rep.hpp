#pragma once

#include <array>
#include <functional>
#include <map>
#include <string>

#include "cjl/fox.hpp"
#include "cjl/numerics.hpp"
#include "cjl/word.hpp"

namespace cjl {

enum class FamilyTag { Generic, FZeta, GZetaLambda, HZetaG, SigmaH, Free };

// A representation into GL(2,C): one matrix per generator, plus metadata about
// which construction produced it.
struct RepPoint {
    std::vector<Mat2> images;
    FamilyTag tag = FamilyTag::Generic;
    std::map<std::string, cx> params;

    const Mat2& image(std::size_t i) const { return images.at(i); }
};

Mat2 word_eval(const std::vector<Mat2>& images, const Word& w);
inline Mat2 word_eval(const RepPoint& rep, const Word& w) { return word_eval(rep.images, w); }

// |rho(lhs) - rho(rhs)| in Frobenius norm; 0 for a free presentation.
double relator_residual(const RepPoint& rep, const Presentation& p);

// False iff the images share an eigenvector (within rel_tol); scalar images
// are transparent. All-scalar representations count as reducible.
bool is_irreducible(const RepPoint& rep, double rel_tol = 1e-8);

// Rank of the stacked (rho(g_i) - 1) column pairs; 2 iff no common fixed vector.
int inner_rank(const RepPoint& rep, double rank_ratio = kRankRatioTol);

// The 2 x 2k linear system cutting out derivations with values in C^2:
// block j is the evaluated Fox derivative of the relator by generator j.
struct DerivationSystem {
    std::array<cx, 12> matrix{};  // row major, 2 x (2 * generator_count)
    std::size_t cols = 0;
    RepPoint source;

    int rank(double rank_ratio = kRankRatioTol) const {
        return mat_rank(std::span<const cx>(matrix.data(), 2 * cols), cols, rank_ratio);
    }
};

DerivationSystem derivation_matrix(const Presentation& p, const RepPoint& rep);

// dim H^1 = 2k - rank(relator system) - 2 for an irreducible representation of
// a k-generator, <=1-relator group. Throws on reducible input.
int d1_dim(const Presentation& p, const RepPoint& rep, double rank_ratio = kRankRatioTol);

// Traces of rho(w) for each word (default list for k generators: singles,
// pairs, the full product), followed by det of each generator image.
std::vector<cx> character_fingerprint(const RepPoint& rep, const std::vector<Word>& words = {});

double fingerprint_distance(const std::vector<cx>& a, const std::vector<cx>& b);

// Numerical soundness check of a generator map source -> target: for `trials`
// sampled target representations the induced images must satisfy the source
// relator within tol. Not a proof, but wrong maps fail immediately.
bool check_homomorphism(const std::vector<Word>& images, const Presentation& source,
                        const std::function<std::vector<Mat2>(std::uint64_t)>& target_sampler,
                        int trials, double tol = kResidualTol);

}  // namespace cjl
