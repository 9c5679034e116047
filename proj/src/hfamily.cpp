#include "cjl/hfamily.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

namespace cjl {

namespace {

constexpr double kExclusionTol = 1e-6;  // open-condition filters
constexpr double kGuardTol = 1e-8;      // hard validity guards

Presentation xuz(int m, int n) { return h_presentation_xuz(m, n); }

Mat2 v_of(const Mat2& z, const Mat2& x, int m, int n) {
    return mat_pow(z, -n - 1) * mat_pow(x, -m) * mat_pow(z, n) * mat_pow(x, m + 1);
}

// h = z^-n-1 x^-m [n]_z + [-n-1]_z
Mat2 h_of(const Mat2& z, const Mat2& x, int m, int n) {
    return mat_pow(z, -n - 1) * mat_pow(x, -m) * bracket(n, z) + bracket(-n - 1, z);
}

}  // namespace

cx gamma_val(long long k, cx r) {
    if (k > 200 || k < -200) throw std::invalid_argument("gamma_val: |k| must be <= 200");
    const bool neg = k < 0;
    if (neg) k = -k;  // gamma_{-k} = -gamma_k
    cx prev{0}, cur{1};
    if (k == 0) return cx{0};
    for (long long i = 1; i < k; ++i) {
        const cx next = r * cur - prev;
        prev = cur;
        cur = next;
    }
    return neg ? -cur : cur;
}

double gamma_identities_residual(cx r, long long k) {
    const cx gm1 = gamma_val(k - 1, r), g0 = gamma_val(k, r), g1 = gamma_val(k + 1, r),
             g2 = gamma_val(k + 2, r);
    // residuals are relative to the size of the terms entering each identity;
    // that is the precision the evaluation can reach
    auto rel = [](cx lhs, cx rhs, double term_scale) {
        return std::abs(lhs - rhs) / std::max(1.0, term_scale);
    };
    const double a1 = std::abs(g1), a0 = std::abs(g0), am1 = std::abs(gm1), a2 = std::abs(g2);
    const double ar = std::abs(r);
    double worst = rel(g1 + gm1, r * g0, std::max({a1, am1, ar * a0}));
    worst = std::max(worst, rel(g1 * g1 + g0 * g0 - r * g1 * g0, cx{1},
                                std::max({a1 * a1, a0 * a0, ar * a1 * a0})));
    worst = std::max(worst, rel(g0 * g0 - g1 * gm1, cx{1}, std::max(a0 * a0, a1 * am1)));
    worst = std::max(worst, rel(g1 * g0 - g2 * gm1, r, std::max({a1 * a0, a2 * am1, ar})));
    worst = std::max(worst, rel((cx{2} - r) * g1 * g0, (cx{1} + g0 - g1) * (cx{1} + g1 - g0),
                                std::max((2 + ar) * a1 * a0, (1 + a0 + a1) * (1 + a1 + a0))));
    return worst;
}

double gamma_identities_check(cx r, int k_max) {
    if (k_max > 60) throw std::invalid_argument("gamma_identities_check: k_max must be <= 60");
    double worst = 0;
    for (int k = -k_max; k <= k_max; ++k)
        worst = std::max(worst, gamma_identities_residual(r, k));
    return worst;
}

CPoly h_lambda_poly(int m, int n, cx lambda) {
    if (m < 1 || n < 1) throw std::invalid_argument("h_lambda_poly: m, n must be positive");
    const cx th_n = theta(lambda, n), th_n1 = theta(lambda, n + 1);
    if (std::abs(th_n) <= kGuardTol || std::abs(th_n1) <= kGuardTol)
        throw ConstraintError("lambda-excluded", "lambda^n = 1 or lambda^{n+1} = 1 is excluded");
    // gamma_k as polynomials in r
    CPoly prev = CPoly::constant(cx{0});
    CPoly cur = CPoly::constant(cx{1});
    const CPoly r_mono = CPoly::monomial(1);
    for (int i = 1; i <= m; ++i) {
        CPoly next = r_mono * cur - prev;
        prev = std::move(cur);
        cur = std::move(next);
    }
    // now cur = gamma_{m+1}, prev = gamma_m
    CPoly h = cur + prev;
    h += CPoly::constant(theta(lambda, 2 * n + 1) / (th_n1 * th_n));
    return h;
}

cx delta_r(int m, cx r) {
    const double mm = static_cast<double>(m);
    if (std::abs(r - cx{2}) <= 1e-8) return cx{2.0 / ((mm + 1.0) * mm)};
    const cx omega = cx{1} + gamma_val(m, r) - gamma_val(m + 1, r);
    if (omega == cx{0}) throw std::domain_error("delta_r: 1 + gamma_m - gamma_{m+1} vanishes away from r = 2");
    return (cx{2} - r) / omega;
}

std::vector<cx> admissible_roots(int m, int n, cx lambda) {
    const CPoly h = h_lambda_poly(m, n, lambda);
    const RootSet rs = poly_roots(h);
    const cx th_n = theta(lambda, n), th_n1 = theta(lambda, n + 1);
    std::vector<cx> out;
    for (const auto& root : rs.roots) {
        const cx r = root.value;
        const cx gm = gamma_val(m, r), gm1 = gamma_val(m + 1, r);
        if (std::hypot(std::abs(gm1 - cx{1}), std::abs(gm)) <= kExclusionTol) continue;
        if (std::hypot(std::abs(gm1), std::abs(gm + cx{1})) <= kExclusionTol) continue;
        if (std::abs(delta_r(m, r) * gm + th_n1 + th_n) <= kExclusionTol) continue;
        out.push_back(r);
    }
    return out;
}

std::pair<cx, cx> det_star_sigma(const SigmaParams& p) {
    return {p.lambda, (cx{1} - p.lambda) * p.a1 / static_cast<double>(2 * p.n + 1)};
}

std::pair<RepPoint, HVerificationReport> build_sigma(const SigmaParams& p, const Tolerances& tol) {
    const int m = p.m, n = p.n;
    if (m < 1 || n < 1) throw std::invalid_argument("build_sigma: m, n must be positive");
    if (p.a1 == cx{0}) throw ConstraintError("a1-zero", "a1 must be nonzero");
    const cx th_n = theta(p.lambda, n), th_n1 = theta(p.lambda, n + 1);
    if (std::abs(th_n) <= kGuardTol || std::abs(th_n1) <= kGuardTol)
        throw ConstraintError("lambda-excluded", "lambda^n = 1 or lambda^{n+1} = 1 is excluded");
    const cx gm = gamma_val(m, p.r), gm1 = gamma_val(m + 1, p.r);
    const cx kconst = theta(p.lambda, 2 * n + 1) / (th_n1 * th_n);
    if (std::abs(gm1 + gm + kconst) > 1e-9 * std::max(1.0, std::abs(kconst)))
        throw ConstraintError("jump-equation", "r is not a root of the jump polynomial");
    if (std::hypot(std::abs(gm1 - cx{1}), std::abs(gm)) <= kExclusionTol ||
        std::hypot(std::abs(gm1), std::abs(gm + cx{1})) <= kExclusionTol)
        throw ConstraintError("gamma-pair-excluded", "(gamma_{m+1}, gamma_m) hits an excluded pair");
    const cx delta = delta_r(m, p.r);
    if (std::abs(delta * gm + th_n1 + th_n) <= kExclusionTol)
        throw ConstraintError("transversality", "delta_r gamma_m + th_{n+1} + th_n vanishes");

    const double two_n1 = static_cast<double>(2 * n + 1);
    const cx ln = cpow(p.lambda, n);
    const Mat2 z = Mat2::diag(p.lambda, cx{1});
    const Mat2 x{cx{1} + delta * (cx{1} / th_n + gm1), cx{1},
                 delta * (delta * (gm + cpow(p.lambda, 2 * n + 1) / (th_n1 * th_n)) - cx{2}),
                 cx{1} - delta * (ln / th_n + gm)};
    const Mat2 u{p.a1 * (cx{1} - p.lambda + p.lambda * delta * (ln * gm1 - gm) / th_n1),
                 p.a1 * (gm / ln - gm1),
                 -cpow(p.lambda, n + 1) * delta / th_n1 / two_n1, cx{1} / two_n1};

    RepPoint rep;
    rep.images = {x, u, z};
    rep.tag = FamilyTag::SigmaH;
    rep.params = {{"lambda", p.lambda}, {"r", p.r}, {"a1", p.a1}};

    HVerificationReport report;
    report.residual = relator_residual(rep, xuz(m, n));
    report.irreducible = is_irreducible(rep);
    report.d1 = report.irreducible ? d1_dim(xuz(m, n), rep, tol.rank_ratio) : -1;
    report.trace_check = std::abs((x.a - cx{1}) / p.lambda + (x.d - cx{1}) -
                                  th_n1 * th_n * gm1 * gm * x.b * x.c / cpow(p.lambda, n + 1));
    const Mat2 h = h_of(z, x, m, n);
    const cx cp = u.c, dp = u.d;
    report.h1_check = std::abs(cp * (th_n * (gm * x.a - gm1) + th_n1) / cpow(p.lambda, n + 1) +
                               dp * th_n * gm * x.c);
    report.det_h_margin = std::abs(h.det());
    report.det_star = det_star_sigma(p);
    report.det_star_residual = std::max(std::abs(z.det() - report.det_star.first),
                                        std::abs(u.det() - report.det_star.second));

    if (report.residual > tol.residual)
        throw ConstraintError("residual", "relator residual " + std::to_string(report.residual));
    if (!report.irreducible) throw ConstraintError("irreducibility", "sigma point is reducible");
    if (report.d1 != 3)
        throw ConstraintError("rank", "sigma point has d1 = " + std::to_string(report.d1));
    if (report.trace_check > tol.residual)
        throw ConstraintError("residual", "trace condition residual " + std::to_string(report.trace_check));
    if (report.h1_check > tol.residual)
        throw ConstraintError("residual", "kernel condition residual " + std::to_string(report.h1_check));
    if (report.det_h_margin <= kExclusionTol)
        throw ConstraintError("transversality", "det h too close to zero");
    if (report.det_star_residual > 1e-10)
        throw ConstraintError("residual", "det_star formula disagrees with the matrices");
    return {rep, report};
}

std::vector<cx> puncture_set(int m, int n) {
    if (m < 1 || n < 1) throw std::invalid_argument("puncture_set: m, n must be positive");
    std::vector<cx> points;
    auto add_unity = [&points](int k) {
        points.push_back(cx{1});
        for (const cx z : roots_of_unity(k)) points.push_back(z);
    };
    add_unity(n);
    add_unity(n + 1);
    if (m == 1 || m % 2 == 0) {
        // lambda^{n+1} + lambda^n - (1 or 2)
        std::vector<cx> coeffs(static_cast<std::size_t>(n + 2), cx{0});
        coeffs[0] = m == 1 ? cx{-1} : cx{-2};
        coeffs[static_cast<std::size_t>(n)] = cx{1};
        coeffs[static_cast<std::size_t>(n + 1)] = cx{1};
        const RootSet rs = poly_roots(CPoly(std::move(coeffs)));
        for (const auto& root : rs.roots)
            if (std::abs(root.value) > 1e-12) points.push_back(root.value);
    }
    // cluster the union
    std::vector<cx> distinct;
    for (const cx z : points) {
        bool found = false;
        for (const cx w : distinct)
            if (std::abs(z - w) <= 1e-7) {
                found = true;
                break;
            }
        if (!found) distinct.push_back(z);
    }
    std::sort(distinct.begin(), distinct.end(), [](cx a, cx b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
    return distinct;
}

int puncture_count(int m, int n) { return static_cast<int>(puncture_set(m, n).size()); }

bool r_membership(int m, int n, cx lambda, double tol) {
    if (std::abs(lambda) == 0.0) throw std::invalid_argument("r_membership: lambda must be nonzero");
    for (const cx p : puncture_set(m, n))
        if (std::abs(lambda - p) <= tol) return false;
    return true;
}

cx sample_lambda_in_R(int m, int n, Rng& rng, double margin) {
    const std::vector<cx> punctures = puncture_set(m, n);
    for (int attempt = 0; attempt < 500; ++attempt) {
        const cx lambda = rng.annulus(0.5, 2.0);
        bool ok = true;
        for (const cx p : punctures)
            if (std::abs(lambda - p) < margin) {
                ok = false;
                break;
            }
        if (ok) return lambda;
    }
    throw std::runtime_error("sample_lambda_in_R: no admissible lambda after 500 attempts");
}

namespace {

std::optional<cx> solve_trace_for_a_h(const Mat2& z, int m, int n, cx b, cx c, cx trace_target, cx a0) {
    auto value = [&](cx a) {
        const Mat2 x{a, b, c, (cx{1} + b * c) / a};
        return v_of(z, x, m, n).tr() - trace_target;
    };
    cx a = a0;
    for (int it = 0; it < 60; ++it) {
        const cx f = value(a);
        if (std::abs(f) <= 1e-13 * std::max(1.0, std::abs(trace_target))) return a;
        const double h = 1e-7 * (1.0 + std::abs(a));
        const cx df = (value(a + h) - value(a - h)) / (2 * h);
        if (!is_finite(df) || std::abs(df) < 1e-300) return std::nullopt;
        const cx step = f / df;
        if (!is_finite(step)) return std::nullopt;
        a -= step;
        if (std::abs(a) < 1e-8) a += cx{0.05, 0.05};
    }
    return std::nullopt;
}

std::pair<cx, cx> left_kernel_row(const Mat2& s) {
    const Mat2 adj = s.adjugate();
    const double r1 = std::norm(adj.a) + std::norm(adj.b);
    const double r2 = std::norm(adj.c) + std::norm(adj.d);
    if (r1 >= r2) return {adj.a, adj.b};
    return {adj.c, adj.d};
}

std::optional<RepPoint> try_generic_h(int m, int n, Rng& rng) {
    const cx lambda = rng.annulus(0.75, 1.35);
    if (std::abs(lambda - cx{1}) < 0.1) return std::nullopt;
    const cx li = cx{1} / lambda;
    const Mat2 z = Mat2::diag(lambda, cx{1});
    const cx b = rng.annulus(0.4, 1.2), c = rng.annulus(0.4, 1.2);
    const auto a = solve_trace_for_a_h(z, m, n, b, c, li + cx{1}, rng.annulus(0.5, 1.4));
    if (!a) return std::nullopt;
    const Mat2 x{*a, b, c, (cx{1} + b * c) / *a};
    const Mat2 v = v_of(z, x, m, n);
    if (is_scalar(v, 1e-8)) return std::nullopt;
    auto [ap, bp] = left_kernel_row(v - Mat2::diag(li, li));
    auto [cp, dp] = left_kernel_row(v - Mat2::identity());
    const Mat2 u{ap, bp, cp, dp};
    if (std::abs(u.det()) < 1e-8 * std::max(1.0, u.frobenius())) return std::nullopt;
    RepPoint rep;
    rep.images = {x, u, z};
    rep.tag = FamilyTag::Generic;
    rep.params = {{"lambda", lambda}, {"b", b}, {"c", c}, {"a", *a}};
    if (relator_residual(rep, xuz(m, n)) > 1e-10) return std::nullopt;
    if (!is_irreducible(rep)) return std::nullopt;
    return rep;
}

}  // namespace

RepPoint sample_generic_rep_H(int m, int n, std::uint64_t seed) {
    if (m < 1 || n < 1) throw std::invalid_argument("sample_generic_rep_H: m, n must be positive");
    Rng rng(sub_seed(seed, 0x68u));
    for (int attempt = 0; attempt < 50; ++attempt) {
        auto rep = try_generic_h(m, n, rng);
        if (!rep) continue;
        if (d1_dim(xuz(m, n), *rep) != 2) continue;
        return *rep;
    }
    throw std::runtime_error("sample_generic_rep_H: no generic point after 50 attempts");
}

std::vector<Mat2> sample_generic_h_xyz(int m, int n, std::uint64_t seed) {
    Rng rng(sub_seed(seed, 0x79u));
    for (int attempt = 0; attempt < 50; ++attempt) {
        auto rep = try_generic_h(m, n, rng);
        if (!rep) continue;
        const Mat2 y = rep->images[1] * rep->images[2].inverse();  // y = u z^-1
        return {rep->images[0], y, rep->images[2]};
    }
    throw std::runtime_error("sample_generic_h_xyz: no generic point after 50 attempts");
}

DoubleRootReport double_root_check(int m, int n, std::span<const cx> lambdas) {
    DoubleRootReport report;
    for (const cx lambda : lambdas) {
        DoubleRootReport::Entry e;
        e.lambda = lambda;
        const RootSet rs = poly_roots(h_lambda_poly(m, n, lambda));
        for (const auto& root : rs.roots) e.max_multiplicity = std::max(e.max_multiplicity, root.multiplicity);
        if (e.max_multiplicity >= 3) {
            e.ok = false;
            e.note = "triple root";
        }
        for (const auto& root : rs.roots) {
            if (root.multiplicity != 2) continue;
            const cx r = root.value;
            const cx gm = gamma_val(m, r), gm1 = gamma_val(m + 1, r);
            const double mm = static_cast<double>(m);
            if (std::abs(mm * gm1 - (mm + 1) * gm) > 1e-6 * std::max(1.0, std::abs(gm1) + std::abs(gm))) {
                e.ok = false;
                e.note = "double root violates m gamma_{m+1} = (m+1) gamma_m";
            }
            if (std::abs(r - cx{2}) <= 1e-6 || std::abs(r + cx{2}) <= 1e-6) {
                e.ok = false;
                e.note = "double root at r = +-2";
            }
            if (std::abs(gm1 * gm) <= 1e-12) {
                e.ok = false;
                e.note = "double root with gamma_{m+1} gamma_m = 0";
            }
        }
        report.ok = report.ok && e.ok;
        report.entries.push_back(std::move(e));
    }
    return report;
}

InvariantProfileH invariant_profile_H(int m, int n, std::uint64_t seed) {
    if (m < 1 || n < 1) throw std::invalid_argument("invariant_profile_H: m, n must be positive");
    Rng rng(sub_seed(seed ^ (static_cast<std::uint64_t>(m) << 32 | static_cast<std::uint64_t>(n)), 0x85u));
    constexpr int kSamples = 20;
    std::vector<int> counts;
    counts.reserve(kSamples);
    for (int i = 0; i < kSamples; ++i) {
        const cx lambda = sample_lambda_in_R(m, n, rng);
        counts.push_back(static_cast<int>(admissible_roots(m, n, lambda).size()));
    }
    std::map<int, int> freq;
    for (int c : counts) ++freq[c];
    int mode = counts[0], best = 0;
    for (const auto& [value, count] : freq)
        if (count > best) {
            best = count;
            mode = value;
        }
    if (best < (kSamples * 4) / 5) throw std::runtime_error("non-generic sampling");
    InvariantProfileH prof;
    prof.m_measured = mode;
    prof.punctures = puncture_count(m, n);
    prof.parity = m == 1 ? ParityClass::MEquals1 : (m % 2 == 0 ? ParityClass::MEven : ParityClass::MOddGe3);
    return prof;
}

ParabolicSearchResult parabolic_exclusion_search(int m, int n, int resolution) {
    ParabolicSearchResult result;
    const Mat2 z = Mat2::parabolic(cx{1});
    const Presentation pres = xuz(m, n);
    constexpr double golden = 2.399963229728653;
    auto axis = [&](int j, double lo, double hi, double phase) {
        const double t = resolution > 1 ? static_cast<double>(j) / (resolution - 1) : 0.0;
        return std::polar(lo + (hi - lo) * t, golden * j + phase);
    };
    for (int jc = 0; jc < resolution; ++jc)
        for (int jd = 0; jd < resolution; ++jd)
            for (int jr = 0; jr < resolution; ++jr) {
                ++result.total_cases;
                const cx c_seed = axis(jc, 0.25, 2.2, 0.31);
                const cx d = axis(jd, 0.08, 2.0, 1.17);
                const cx r = axis(jr, 0.05, 2.8, 2.03);
                // project onto the trace-condition locus: solve tr(v(c)) = 2
                auto value = [&](cx c) {
                    const Mat2 x{r - d, ((r - d) * d - cx{1}) / c, c, d};
                    return v_of(z, x, m, n).tr() - cx{2};
                };
                cx c = c_seed;
                bool solved = false;
                for (int it = 0; it < 40; ++it) {
                    const cx f = value(c);
                    if (std::abs(f) <= 1e-12) {
                        solved = true;
                        break;
                    }
                    const double h = 1e-7 * (1.0 + std::abs(c));
                    const cx df = (value(c + h) - value(c - h)) / (2 * h);
                    if (!is_finite(df) || std::abs(df) < 1e-300) break;
                    const cx step = f / df;
                    if (!is_finite(step)) break;
                    c -= step;
                    if (std::abs(c) < 1e-6) c += cx{0.01, 0.01};
                }
                if (!solved) continue;
                const Mat2 x{r - d, ((r - d) * d - cx{1}) / c, c, d};
                const Mat2 v = v_of(z, x, m, n);
                if (is_scalar(v, 1e-10)) continue;
                // u rows from u v = z^-1 u: (c',d') in the left 1-eigenrow of v,
                // (a',b') solving (a',b')(v - e) = -(c',d')
                auto [cp, dp] = left_kernel_row(v - Mat2::identity());
                const double cpn = std::hypot(std::abs(cp), std::abs(dp));
                if (cpn < 1e-12) continue;
                cp /= cpn;
                dp /= cpn;
                // orthogonal complement row
                const cx kp1 = -std::conj(dp), kp2 = std::conj(cp);
                const cx act1 = kp1 * (v.a - cx{1}) + kp2 * v.c;
                const cx act2 = kp1 * v.b + kp2 * (v.d - cx{1});
                // alpha * (act1, act2) = -(cp, dp)
                const cx denom = std::norm(act1) + std::norm(act2);
                if (std::abs(denom) < 1e-20) continue;
                const cx alpha = -(std::conj(act1) * cp + std::conj(act2) * dp) / denom;
                const Mat2 u{alpha * kp1, alpha * kp2, cp, dp};
                if (std::abs(u.det()) < 1e-10) continue;
                RepPoint rep;
                rep.images = {x, u, z};
                if (relator_residual(rep, pres) > 1e-8) continue;
                ++result.solved_cases;
                const DerivationSystem sys = derivation_matrix(pres, rep);
                auto [s1, s2] = singular_values_2xk(std::span<const cx>(sys.matrix.data(), 12), 2, 6);
                const double ratio = s1 > 0 ? s2 / s1 : 0.0;
                result.min_sigma_ratio = std::min(result.min_sigma_ratio, ratio);
                result.min_rank = std::min(result.min_rank, sys.rank());
            }
    return result;
}

}  // namespace cjl
