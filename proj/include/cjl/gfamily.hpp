#pragma once

#include <optional>
#include <span>

#include "cjl/errors.hpp"
#include "cjl/intpoly.hpp"
#include "cjl/rep.hpp"
#include "cjl/rng.hpp"

namespace cjl {

// Everything for the family G_{m,n} = <x,y,z | x = [z^m,x][z^n,y]>, worked in
// the (w, y, z) generators with w = z^m x. Jump points are the rank-1 locus of
// the relator's derivation system; the subfamilies below parametrize it.

struct GParams {
    int m = 1;       // nonzero
    int n = 1;       // positive
    int g = 1;       // gcd(|m|, n)
    int ell = 1;     // max{m, n, n-m}
};
GParams g_params(int m, int n);

struct Tolerances {
    double residual = kResidualTol;
    double rank_ratio = kRankRatioTol;
    double cluster = kClusterTol;
};

// z = d(lambda, zeta), w = [[1/th_n, b],[c, lambda^m/th_m]], y = [[a',b'],[1, th_n b]]
// with th_k = lambda^k - 1. Constraints: lambda^n != 1 != lambda^m;
// b c = lambda^m (1/(th_n th_m) - 1); (a',b') a nonzero left kernel row of
// (v - lambda^n); for zeta = 1 additionally b = n lambda^m/((n lambda^m + m) th_n).
struct FZetaParams {
    cx zeta, lambda, b, c, aprime, bprime;
};

// z = d(lambda, zeta) with f(lambda) = 0, zeta^n = 1 != zeta^m,
// w = [[lambda^{m-n}, 0],[c, lambda^n zeta^m]], y = [[a',b'],[1,0]].
struct GZetaLambdaParams {
    cx zeta, lambda, c, scale;
};

// m = -n branch over z = p(zeta), zeta^n = 1:
// w = [[0,-n],[1/n,d]], y = [[a', n a' d - n^2 c'/(d-1)],[c', n c' d]].
struct HZetaGParams {
    cx zeta, aprime, cprime, d;
};

enum class FiberShape { Torus, Node };

struct InvariantProfileG {
    bool anti_diagonal = false;        // m == -n
    int g = 0;                         // gcd
    int sum_abs = 0;                   // n + |m|
    int ell = 0;                       // max{m, n, n-m}
    int count_c_cstar = 0;             // (n-g) * ell
    int two_dim_fiber_components = 0;  // n-1 when m == -n, else 0
};

// f(lambda) = lambda^{n+m} - lambda^n - lambda^m cleared of its power of
// lambda (and sign-normalized), so the constant term is nonzero.
IntPoly f_poly(int m, int n);

// Distinct-root count of f: max{m, n, n-m}; cross-checked against the
// numerically computed roots.
int ell(int m, int n);

// Relative |f(lambda)| against the evaluation magnitude.
double f_residual(int m, int n, cx lambda);

// Derive the dependent F-family parameters from (zeta, lambda, b); for
// zeta = 1 the value of b is forced and the argument is ignored.
FZetaParams complete_f_params(const GParams& gp, cx zeta, cx lambda, cx b = cx{1});
// Node-fiber branches over f(lambda) = 0: branch 0 -> (b,c) = (b,0), branch 1 -> (0,c).
FZetaParams complete_f_params_node(const GParams& gp, cx zeta, cx lambda, int branch, cx value = cx{1});

RepPoint build_F_zeta(const GParams& gp, const FZetaParams& p, const Tolerances& tol = {});
RepPoint build_G_zeta_lambda(const GParams& gp, const GZetaLambdaParams& p, const Tolerances& tol = {});
RepPoint build_H_zeta_G(int n, const HZetaGParams& p, const Tolerances& tol = {});

// Contrast points: an irreducible representation with generic z = d(lambda, mu),
// trace-matched w, y from the eigenrows of v. Generically d1 = 2.
RepPoint sample_generic_rep_G(const GParams& gp, std::uint64_t seed);

// Same construction for arbitrary integer exponents (used to sample target
// representations when testing generator maps); returns (x, y, z) images.
std::vector<Mat2> sample_generic_g_xyz(int m, int n, std::uint64_t seed);

FiberShape fiber_shape(const GParams& gp, cx lambda);

// The F-family point (for m = -n) that degenerates onto the p(zeta) branch.
RepPoint build_varrho(int n, cx zeta, cx lambda, cx aprime, cx cprime, const Tolerances& tol = {});

// True iff the characters of varrho_{lambda} converge to the character of
// sigma_{a',c',0} linearly in |lambda - zeta| (ratio in [0.3, 0.7] per halving).
bool degeneration_check(int n, cx zeta, cx aprime, cx cprime, std::span<const cx> lambda_seq,
                        std::vector<double>* distances = nullptr);

InvariantProfileG invariant_profile_G(int m, int n);

// The 2x6 block [a | b | c] with a = e + w - z^m, b = w^2 - z^m w z^-n,
// c = z^m [-m]_z + z^m w z^-n [n]_z - w^2 y^-1 z^-n [n]_z; its rank decides
// the jump. With zeta = 1 only the second column of c is decisive.
std::array<cx, 12> g_condition_blocks(const RepPoint& rep, int m, int n);
int g_condition_rank(const RepPoint& rep, int m, int n, bool zeta_is_one,
                     double rank_ratio = kRankRatioTol);

// |tr(v) - tr(z^n)| with v = z^n w^-1 z^-m w^2 (the y-solvability condition).
double trace_condition_residual_G(const RepPoint& rep, int n, int m);

// Admissible lambda sampler for F points: annulus, kept away from the
// excluded powers so constructed matrices stay well conditioned.
cx sample_f_lambda(const GParams& gp, cx zeta, Rng& rng);

bool zeta_in_lambda_g(cx zeta, int g);

}  // namespace cjl
