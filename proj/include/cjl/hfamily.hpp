#pragma once

#include <span>

#include "cjl/errors.hpp"
#include "cjl/gfamily.hpp"
#include "cjl/poly.hpp"
#include "cjl/rep.hpp"
#include "cjl/rng.hpp"

namespace cjl {

// Everything for H_{m,n} = <x,y,z | x = [x^m,z^n][y,z]>, worked in the
// (x, u, z) generators with u = yz. Throughout, gamma_k is the trace
// recursion gamma_{k+1} = r gamma_k - gamma_{k-1}, gamma_0 = 0, gamma_1 = 1,
// so that x^k = gamma_k x - gamma_{k-1} for det-1 x with tr x = r.

// Computed by the recursion (stable for |k| <= 200; throws beyond).
cx gamma_val(long long k, cx r);

// Max relative residual over k <= k_max of the recursion identities
//   gamma_{k+1} - r gamma_k + gamma_{k-1} = 0
//   gamma_{k+1}^2 + gamma_k^2 - r gamma_{k+1} gamma_k = 1
//   gamma_k^2 - gamma_{k+1} gamma_{k-1} = 1
//   gamma_{k+1} gamma_k - gamma_{k+2} gamma_{k-1} = r
//   (2-r) gamma_{k+1} gamma_k = (1 + gamma_k - gamma_{k+1})(1 + gamma_{k+1} - gamma_k)
double gamma_identities_check(cx r, int k_max);

// Residual of the same identities at a single k.
double gamma_identities_residual(cx r, long long k);

// The degree-m monic polynomial in r whose roots carry the jump points over
// z = d(lambda, 1): gamma_{m+1} + gamma_m + th_{2n+1}/(th_{n+1} th_n).
CPoly h_lambda_poly(int m, int n, cx lambda);

// (2-r)/(1 + gamma_m - gamma_{m+1}), extended across r = 2 by its limit
// 2/((m+1)m).
cx delta_r(int m, cx r);

// Distinct roots of h_lambda surviving the open exclusions: the gamma pair
// stays away from (1,0) and (0,-1), and delta_r gamma_m + th_{n+1} + th_n != 0.
std::vector<cx> admissible_roots(int m, int n, cx lambda);

struct SigmaParams {
    int m = 1, n = 1;
    cx lambda, r, a1;
};

struct HVerificationReport {
    double residual = 0;       // |rho(lhs) - rho(rhs)| of the relator
    int d1 = 0;
    double trace_check = 0;    // residual of the trace condition on v
    double h1_check = 0;       // residual of the (c',d') kernel condition
    double det_h_margin = 0;   // |det h|, must stay away from 0
    bool irreducible = false;
    std::pair<cx, cx> det_star;           // (det z, det u) target values
    double det_star_residual = 0;         // against the matrices themselves
};

// The jump representation sigma_{lambda,r,a1} (b = 1 normalization), verified.
std::pair<RepPoint, HVerificationReport> build_sigma(const SigmaParams& p, const Tolerances& tol = {});

// (lambda, (1-lambda) a1 / (2n+1)).
std::pair<cx, cx> det_star_sigma(const SigmaParams& p);

// Points deleted from C* in the image of det_star: the n-th and (n+1)-th
// roots of unity, plus the roots of lambda^{n+1} + lambda^n - 1 (m = 1) or
// lambda^{n+1} + lambda^n - 2 (m even).
std::vector<cx> puncture_set(int m, int n);
int puncture_count(int m, int n);
bool r_membership(int m, int n, cx lambda, double tol = 1e-6);

// Random admissible lambda for R, kept `margin` away from every puncture.
cx sample_lambda_in_R(int m, int n, Rng& rng, double margin = 0.05);

// Irreducible contrast point with z = d(lambda, 1), trace-matched x, u from
// the eigenrows of v; generically d1 = 2.
RepPoint sample_generic_rep_H(int m, int n, std::uint64_t seed);

// Same construction for arbitrary integer exponents, returned as (x, y, z)
// images with y = u z^-1 (used to sample targets of generator maps).
std::vector<Mat2> sample_generic_h_xyz(int m, int n, std::uint64_t seed);

struct DoubleRootReport {
    struct Entry {
        cx lambda;
        int max_multiplicity = 1;
        bool ok = true;
        std::string note;
    };
    std::vector<Entry> entries;
    bool ok = true;
};

// Root-cluster audit of h_lambda over a lambda grid: no triple roots; any
// double root r must satisfy m gamma_{m+1} = (m+1) gamma_m, r != +-2 and
// gamma_{m+1} gamma_m != 0.
DoubleRootReport double_root_check(int m, int n, std::span<const cx> lambdas);

enum class ParityClass { MEquals1, MEven, MOddGe3 };

struct InvariantProfileH {
    int m_measured = 0;   // generic det_star fiber cardinality
    int punctures = 0;
    ParityClass parity = ParityClass::MEquals1;
};

InvariantProfileH invariant_profile_H(int m, int n, std::uint64_t seed = 0xC0FFEEu);

// Grid search over z = p(1): starting from resolution^3 seeds for (c, d, r),
// project x onto the trace-condition locus, complete u from the eigenrows,
// and record the minimal rank of the derivation system. The jump would need
// rank <= 1; the search must come back with 2.
struct ParabolicSearchResult {
    int min_rank = 2;
    double min_sigma_ratio = 1.0;  // smallest sigma2/sigma1 seen
    long solved_cases = 0;
    long total_cases = 0;
};
ParabolicSearchResult parabolic_exclusion_search(int m, int n, int resolution = 30);

}  // namespace cjl
