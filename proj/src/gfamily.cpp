#include "cjl/gfamily.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "cjl/poly.hpp"

namespace cjl {

namespace {

constexpr double kMembershipTol = 1e-10;  // zeta^k == 1 decisions
constexpr double kExclusionTol = 1e-8;    // open-condition guards at build time

Presentation wyz(int m, int n) { return g_presentation_wyz(m, n); }

// left kernel row of a (numerically singular) 2x2: the larger adjugate row
std::pair<cx, cx> left_kernel_row(const Mat2& s) {
    const Mat2 adj = s.adjugate();
    const double r1 = std::norm(adj.a) + std::norm(adj.b);
    const double r2 = std::norm(adj.c) + std::norm(adj.d);
    if (r1 >= r2) return {adj.a, adj.b};
    return {adj.c, adj.d};
}

Mat2 v_of(const Mat2& z, const Mat2& w, int m, int n) {
    return mat_pow(z, n) * w.inverse() * mat_pow(z, -m) * w * w;
}

void verify_jump_point(const RepPoint& rep, int m, int n, const Tolerances& tol) {
    const double res = relator_residual(rep, wyz(m, n));
    if (res > tol.residual)
        throw ConstraintError("residual", "relator residual " + std::to_string(res) + " exceeds bound");
    if (!is_irreducible(rep)) throw ConstraintError("irreducibility", "constructed point is reducible");
    const int d1 = d1_dim(wyz(m, n), rep, tol.rank_ratio);
    if (d1 != 3)
        throw ConstraintError("rank", "constructed point has d1 = " + std::to_string(d1) + ", expected 3");
}

}  // namespace

GParams g_params(int m, int n) {
    if (m == 0) throw std::invalid_argument("g_params: m must be nonzero");
    if (n <= 0) throw std::invalid_argument("g_params: n must be positive");
    GParams gp;
    gp.m = m;
    gp.n = n;
    gp.g = static_cast<int>(std::gcd(std::abs(m), n));
    gp.ell = std::max({m, n, n - m});
    return gp;
}

bool zeta_in_lambda_g(cx zeta, int g) {
    return std::abs(cpow(zeta, g) - cx{1}) <= kMembershipTol;
}

IntPoly f_poly(int m, int n) {
    if (m == 0) throw std::invalid_argument("f_poly: m must be nonzero");
    if (n <= 0) throw std::invalid_argument("f_poly: n must be positive");
    std::map<int, long> terms;
    terms[n + m] += 1;
    terms[n] -= 1;
    terms[m] -= 1;
    int lo = terms.begin()->first;
    int hi = terms.rbegin()->first;
    std::vector<mpz_class> coeffs(static_cast<std::size_t>(hi - lo) + 1, mpz_class(0));
    for (const auto& [e, c] : terms) coeffs[static_cast<std::size_t>(e - lo)] = c;
    IntPoly p{std::move(coeffs)};
    if (p.leading() < 0) {
        std::vector<mpz_class> neg(p.coeffs());
        for (auto& z : neg) z = -z;
        p = IntPoly(std::move(neg));
    }
    return p;
}

double f_residual(int m, int n, cx lambda) {
    const IntPoly f = f_poly(m, n);
    double scale = 0;
    cx acc{0}, p{1};
    for (const auto& c : f.coeffs()) {
        const double cd = c.get_d();
        acc += cd * p;
        scale += std::abs(cd) * std::abs(p);
        p *= lambda;
    }
    return std::abs(acc) / std::max(1.0, scale);
}

int ell(int m, int n) {
    const GParams gp = g_params(m, n);
    const IntPoly f = f_poly(m, n);
    const RootSet roots = poly_roots(f.to_cpoly());
    const int distinct = static_cast<int>(roots.roots.size());
    if (distinct != gp.ell)
        throw std::runtime_error("ell: root count " + std::to_string(distinct) +
                                 " disagrees with max{m,n,n-m} = " + std::to_string(gp.ell));
    return gp.ell;
}

FZetaParams complete_f_params(const GParams& gp, cx zeta, cx lambda, cx b) {
    const int m = gp.m, n = gp.n;
    const cx th_n = theta(lambda, n), th_m = theta(lambda, m);
    FZetaParams p;
    p.zeta = zeta;
    p.lambda = lambda;
    if (std::abs(zeta - cx{1}) <= kMembershipTol) {
        const cx lm = cpow(lambda, m);
        const cx denom = (static_cast<double>(n) * lm + static_cast<double>(m)) * th_n;
        if (std::abs(denom) <= kExclusionTol)
            throw ConstraintError("b-normalization", "lambda^m = -m/n leaves no valid b at zeta = 1");
        p.b = static_cast<double>(n) * lm / denom;
    } else {
        p.b = b;
    }
    const cx q = cpow(lambda, m) * (cx{1} / (th_n * th_m) - cx{1});
    if (p.b == cx{0}) throw ConstraintError("determinant-balance", "b = 0 requires the node branch helper");
    p.c = q / p.b;
    const Mat2 z = Mat2::diag(lambda, zeta);
    const Mat2 w{cx{1} / th_n, p.b, p.c, cpow(lambda, m) / th_m};
    const Mat2 v = v_of(z, w, m, n);
    auto [ap, bp] = left_kernel_row(v - Mat2::diag(cpow(lambda, n), cpow(lambda, n)));
    p.aprime = ap;
    p.bprime = bp;
    return p;
}

FZetaParams complete_f_params_node(const GParams& gp, cx zeta, cx lambda, int branch, cx value) {
    if (f_residual(gp.m, gp.n, lambda) > 1e-9)
        throw ConstraintError("determinant-balance", "node branches exist only over f(lambda) = 0");
    if (value == cx{0}) throw ConstraintError("determinant-balance", "branch value must be nonzero");
    FZetaParams p;
    if (branch == 0) {
        p = complete_f_params(gp, zeta, lambda, value);
        p.c = cx{0};
    } else {
        p.zeta = zeta;
        p.lambda = lambda;
        p.b = cx{0};
        p.c = value;
        const Mat2 z = Mat2::diag(lambda, zeta);
        const Mat2 w{cx{1} / theta(lambda, gp.n), p.b, p.c, cpow(lambda, gp.m) / theta(lambda, gp.m)};
        const Mat2 v = v_of(z, w, gp.m, gp.n);
        const cx ln = cpow(lambda, gp.n);
        auto [ap, bp] = left_kernel_row(v - Mat2::diag(ln, ln));
        p.aprime = ap;
        p.bprime = bp;
    }
    return p;
}

RepPoint build_F_zeta(const GParams& gp, const FZetaParams& p, const Tolerances& tol) {
    const int m = gp.m, n = gp.n;
    if (!zeta_in_lambda_g(p.zeta, gp.g))
        throw ConstraintError("zeta-membership", "zeta^gcd(m,n) must equal 1");
    const cx th_n = theta(p.lambda, n), th_m = theta(p.lambda, m);
    if (std::abs(th_n) <= kExclusionTol || std::abs(th_m) <= kExclusionTol)
        throw ConstraintError("spectral-exclusion", "lambda^n = 1 or lambda^m = 1 is excluded");
    const cx q = cpow(p.lambda, m) * (cx{1} / (th_n * th_m) - cx{1});
    if (std::abs(p.b * p.c - q) > 1e-9 * std::max(1.0, std::abs(q)))
        throw ConstraintError("determinant-balance", "b*c != lambda^m*(1/(th_n th_m) - 1)");
    const bool zeta_one = std::abs(p.zeta - cx{1}) <= kMembershipTol;
    if (zeta_one) {
        const cx lm = cpow(p.lambda, m);
        const cx ratio = lm + static_cast<double>(m) / static_cast<double>(n);
        if (std::abs(ratio) <= kExclusionTol)
            throw ConstraintError("b-normalization", "lambda^m = -m/n is excluded at zeta = 1");
        const cx b_forced = static_cast<double>(n) * lm /
                            ((static_cast<double>(n) * lm + static_cast<double>(m)) * th_n);
        if (std::abs(p.b - b_forced) > 1e-9 * std::max(1.0, std::abs(b_forced)))
            throw ConstraintError("b-normalization", "zeta = 1 forces b = n lambda^m/((n lambda^m+m) th_n)");
    }

    const Mat2 z = Mat2::diag(p.lambda, p.zeta);
    const Mat2 w{cx{1} / th_n, p.b, p.c, cpow(p.lambda, m) / th_m};
    const Mat2 y{p.aprime, p.bprime, cx{1}, th_n * p.b};
    const Mat2 v = v_of(z, w, m, n);
    const cx ln = cpow(p.lambda, n);
    const double kernel_res =
        std::hypot(std::abs(p.aprime * (v.a - ln) + p.bprime * v.c),
                   std::abs(p.aprime * v.b + p.bprime * (v.d - ln)));
    const double kernel_scale = std::hypot(std::abs(p.aprime), std::abs(p.bprime));
    if (kernel_scale == 0.0) throw ConstraintError("eigenrow", "(a',b') must be nonzero");
    if (kernel_res > 1e-9 * std::max(1.0, kernel_scale * v.frobenius()))
        throw ConstraintError("eigenrow", "(a',b') is not in the left kernel of (v - lambda^n)");

    RepPoint rep;
    rep.images = {w, y, z};
    rep.tag = FamilyTag::FZeta;
    rep.params = {{"lambda", p.lambda}, {"zeta", p.zeta}, {"b", p.b},
                  {"c", p.c},           {"aprime", p.aprime}, {"bprime", p.bprime}};
    verify_jump_point(rep, m, n, tol);
    return rep;
}

RepPoint build_G_zeta_lambda(const GParams& gp, const GZetaLambdaParams& p, const Tolerances& tol) {
    const int m = gp.m, n = gp.n;
    if (std::abs(p.zeta - cx{1}) <= kMembershipTol)
        throw ConstraintError("zeta-one-excluded", "zeta = 1 admits no such point (rank would exceed 1)");
    if (std::abs(cpow(p.zeta, n) - cx{1}) > kMembershipTol)
        throw ConstraintError("zeta-membership", "zeta^n must equal 1");
    if (std::abs(cpow(p.zeta, m) - cx{1}) <= kMembershipTol)
        throw ConstraintError("contained-in-F", "zeta^m = 1 gives a point already in the F family");
    if (f_residual(m, n, p.lambda) > 1e-9)
        throw ConstraintError("determinant-balance", "lambda must be a root of f");
    if (p.scale == cx{0}) throw ConstraintError("eigenrow", "scale must be nonzero");

    const cx zm = cpow(p.zeta, m);
    const cx th_n = theta(p.lambda, n);
    const cx ap = p.scale * ((cpow(p.lambda, m - 2 * n) / zm - theta(p.lambda, -2 * n)) * p.c);
    const cx bp = p.scale * (zm * th_n);
    if (std::abs(ap) + std::abs(bp) == 0.0) throw ConstraintError("eigenrow", "(a',b') must be nonzero");

    const Mat2 z = Mat2::diag(p.lambda, p.zeta);
    const Mat2 w{cpow(p.lambda, m - n), cx{0}, p.c, cpow(p.lambda, n) * zm};
    const Mat2 y{ap, bp, cx{1}, cx{0}};
    RepPoint rep;
    rep.images = {w, y, z};
    rep.tag = FamilyTag::GZetaLambda;
    rep.params = {{"lambda", p.lambda}, {"zeta", p.zeta}, {"c", p.c}, {"scale", p.scale},
                  {"aprime", ap},       {"bprime", bp}};
    verify_jump_point(rep, m, n, tol);
    return rep;
}

RepPoint build_H_zeta_G(int n, const HZetaGParams& p, const Tolerances& tol) {
    if (n <= 0) throw std::invalid_argument("build_H_zeta_G: n must be positive");
    const int m = -n;
    if (std::abs(cpow(p.zeta, n) - cx{1}) > kMembershipTol)
        throw ConstraintError("zeta-membership", "zeta^n must equal 1");
    if (std::abs(p.d - cx{1}) <= kExclusionTol)
        throw ConstraintError("d-equals-one", "d = 1 is excluded");
    if (p.cprime == cx{0}) throw ConstraintError("cprime-zero", "c' must be nonzero");
    const double nn = static_cast<double>(n);
    if (std::abs(p.zeta - cx{1}) <= kMembershipTol) {
        if (std::abs(nn * p.cprime * (p.d + cx{1}) - cx{1}) > 1e-9)
            throw ConstraintError("zeta-one-balance", "zeta = 1 requires n c' (d+1) = 1");
        if (std::abs(p.cprime - cx{1.0 / (2 * nn)}) <= kExclusionTol)
            throw ConstraintError("cprime-excluded", "c' = 1/(2n) is excluded at zeta = 1");
    }

    const Mat2 z = Mat2::parabolic(p.zeta);
    const Mat2 w{cx{0}, cx{-nn}, cx{1.0 / nn}, p.d};
    const Mat2 y{p.aprime, nn * p.aprime * p.d - nn * nn * p.cprime / (p.d - cx{1}),
                 p.cprime, nn * p.cprime * p.d};
    RepPoint rep;
    rep.images = {w, y, z};
    rep.tag = FamilyTag::HZetaG;
    rep.params = {{"zeta", p.zeta}, {"aprime", p.aprime}, {"cprime", p.cprime}, {"d", p.d}};
    verify_jump_point(rep, m, n, tol);
    return rep;
}

namespace {

// Solve tr(v(a)) = target with w(a) = [[a, b],[c, (det_target + b c)/a]].
std::optional<cx> solve_trace_for_a(const Mat2& z, int m, int n, cx b, cx c, cx det_target,
                                    cx trace_target, cx a0) {
    auto value = [&](cx a) {
        const Mat2 w{a, b, c, (det_target + b * c) / a};
        return v_of(z, w, m, n).tr() - trace_target;
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
        if (std::abs(a) < 1e-8) a += cx{0.05, 0.05};  // keep away from the pole
    }
    return std::nullopt;
}

std::optional<RepPoint> try_generic_g(int m, int n, Rng& rng) {
    const cx lambda = rng.annulus(0.75, 1.35);
    const cx mu = rng.annulus(0.75, 1.35);
    const cx ln = cpow(lambda, n), mn = cpow(mu, n);
    if (std::abs(ln - mn) < 0.05) return std::nullopt;  // need two distinct eigenrows
    const Mat2 z = Mat2::diag(lambda, mu);
    const cx b = rng.annulus(0.4, 1.2), c = rng.annulus(0.4, 1.2);
    const cx det_target = cpow(lambda * mu, m);
    const auto a = solve_trace_for_a(z, m, n, b, c, det_target, ln + mn, rng.annulus(0.5, 1.4));
    if (!a) return std::nullopt;
    const Mat2 w{*a, b, c, (det_target + b * c) / *a};
    const Mat2 v = v_of(z, w, m, n);
    if (is_scalar(v, 1e-8)) return std::nullopt;
    auto [a1, b1] = left_kernel_row(v - Mat2::diag(ln, ln));
    auto [c1, d1] = left_kernel_row(v - Mat2::diag(mn, mn));
    const Mat2 y{a1, b1, c1, d1};
    if (std::abs(y.det()) < 1e-8 * std::max(1.0, y.frobenius())) return std::nullopt;
    RepPoint rep;
    rep.images = {w, y, z};
    rep.tag = FamilyTag::Generic;
    rep.params = {{"lambda", lambda}, {"mu", mu}, {"b", b}, {"c", c}, {"a", *a}};
    if (relator_residual(rep, wyz(m, n)) > 1e-10) return std::nullopt;
    if (!is_irreducible(rep)) return std::nullopt;
    return rep;
}

}  // namespace

RepPoint sample_generic_rep_G(const GParams& gp, std::uint64_t seed) {
    Rng rng(sub_seed(seed, 0x47u));
    for (int attempt = 0; attempt < 50; ++attempt) {
        auto rep = try_generic_g(gp.m, gp.n, rng);
        if (!rep) continue;
        if (d1_dim(wyz(gp.m, gp.n), *rep) != 2) continue;
        return *rep;
    }
    throw std::runtime_error("sample_generic_rep_G: no generic point after 50 attempts");
}

std::vector<Mat2> sample_generic_g_xyz(int m, int n, std::uint64_t seed) {
    if (m == 0 || n == 0) throw std::invalid_argument("sample_generic_g_xyz: m, n must be nonzero");
    Rng rng(sub_seed(seed, 0x58u));
    for (int attempt = 0; attempt < 50; ++attempt) {
        auto rep = try_generic_g(m, n, rng);
        if (!rep) continue;
        // convert (w, y, z) to (x, y, z) with x = z^-m w
        const Mat2 x = mat_pow(rep->images[2], -m) * rep->images[0];
        return {x, rep->images[1], rep->images[2]};
    }
    throw std::runtime_error("sample_generic_g_xyz: no generic point after 50 attempts");
}

FiberShape fiber_shape(const GParams& gp, cx lambda) {
    const cx th_n = theta(lambda, gp.n), th_m = theta(lambda, gp.m);
    if (std::abs(th_n) <= kExclusionTol || std::abs(th_m) <= kExclusionTol)
        throw ConstraintError("spectral-exclusion", "lambda^n = 1 or lambda^m = 1 is excluded");
    return f_residual(gp.m, gp.n, lambda) <= 1e-9 ? FiberShape::Node : FiberShape::Torus;
}

RepPoint build_varrho(int n, cx zeta, cx lambda, cx aprime, cx cprime, const Tolerances& tol) {
    const double nn = static_cast<double>(n);
    const cx th_n = theta(lambda, n);
    if (std::abs(th_n) <= kExclusionTol)
        throw ConstraintError("spectral-exclusion", "lambda^n = 1 is inadmissible for varrho");
    const cx ln = cpow(lambda, n);
    const cx denom = ln + cx{1} / ln - cx{1};
    if (std::abs(denom) <= kExclusionTol)
        throw ConstraintError("spectral-exclusion", "lambda^n + lambda^-n = 1 is inadmissible");
    const cx u = nn * cprime / denom;
    const Mat2 z = Mat2::diag(lambda, zeta);
    const Mat2 w{cx{1} / th_n, -nn * cprime / (th_n * th_n), cx{1} / u, -cx{1} / th_n};
    // row 1 of y spans the lambda^n left eigenrow (1, -u/th_n)
    const Mat2 y{aprime + u / th_n, -(u / th_n) * (aprime + u / th_n), cx{1}, -nn * cprime / th_n};
    RepPoint rep;
    rep.images = {w, y, z};
    rep.tag = FamilyTag::FZeta;
    rep.params = {{"lambda", lambda}, {"zeta", zeta}, {"aprime", aprime}, {"cprime", cprime}};
    // Near the limit lambda -> zeta the entries of y grow like th_n^-2, so the
    // achievable residual is relative to the magnitude of the two sides.
    const Mat2 lhs = word_eval(rep, wyz(-n, n).relator_lhs);
    const Mat2 rhs = word_eval(rep, wyz(-n, n).relator_rhs);
    const double scale = std::max({1.0, lhs.frobenius(), rhs.frobenius()});
    const double res = (lhs - rhs).frobenius();
    if (res > tol.residual * scale)
        throw ConstraintError("residual", "varrho residual " + std::to_string(res) + " exceeds bound");
    return rep;
}

bool degeneration_check(int n, cx zeta, cx aprime, cx cprime, std::span<const cx> lambda_seq,
                        std::vector<double>* distances) {
    if (lambda_seq.size() < 3)
        throw std::invalid_argument("degeneration_check: need at least three lambda values");
    HZetaGParams sp;
    sp.zeta = zeta;
    sp.aprime = aprime;
    sp.cprime = cprime;
    sp.d = cx{0};
    const RepPoint sigma = build_H_zeta_G(n, sp);
    const auto target = character_fingerprint(sigma);

    std::vector<double> dist;
    dist.reserve(lambda_seq.size());
    for (const cx lambda : lambda_seq) {
        const RepPoint rho = build_varrho(n, zeta, lambda, aprime, cprime);
        dist.push_back(fingerprint_distance(character_fingerprint(rho), target));
    }
    if (distances) *distances = dist;
    for (std::size_t i = 0; i + 1 < dist.size(); ++i) {
        if (dist[i] <= 0) return false;
        const double ratio = dist[i + 1] / dist[i];
        if (ratio < 0.3 || ratio > 0.7) return false;
    }
    return true;
}

InvariantProfileG invariant_profile_G(int m, int n) {
    const GParams gp = g_params(m, n);
    InvariantProfileG prof;
    prof.anti_diagonal = (m == -n);
    prof.g = gp.g;
    prof.sum_abs = n + std::abs(m);
    prof.ell = ell(m, n);  // cross-checked against the root count
    prof.count_c_cstar = (n - gp.g) * gp.ell;
    prof.two_dim_fiber_components = prof.anti_diagonal ? n - 1 : 0;
    return prof;
}

std::array<cx, 12> g_condition_blocks(const RepPoint& rep, int m, int n) {
    const Mat2& w = rep.images[0];
    const Mat2& y = rep.images[1];
    const Mat2& z = rep.images[2];
    const Mat2 zm = mat_pow(z, m);
    const Mat2 zmn = zm * w * mat_pow(z, -n);  // z^m w z^-n
    const Mat2 a = Mat2::identity() + w - zm;
    const Mat2 b = w * w - zmn;
    const Mat2 c = zm * bracket(-m, z) + zmn * bracket(n, z) - w * w * y.inverse() * mat_pow(z, -n) * bracket(n, z);
    std::array<cx, 12> out{};
    const Mat2* blocks[3] = {&a, &b, &c};
    for (int j = 0; j < 3; ++j) {
        out[static_cast<std::size_t>(2 * j)] = blocks[j]->a;
        out[static_cast<std::size_t>(2 * j + 1)] = blocks[j]->b;
        out[static_cast<std::size_t>(6 + 2 * j)] = blocks[j]->c;
        out[static_cast<std::size_t>(6 + 2 * j + 1)] = blocks[j]->d;
    }
    return out;
}

int g_condition_rank(const RepPoint& rep, int m, int n, bool zeta_is_one, double rank_ratio) {
    const auto blocks = g_condition_blocks(rep, m, n);
    if (!zeta_is_one) return mat_rank(std::span<const cx>(blocks.data(), 12), 6, rank_ratio);
    // keep [a | b | c_*2]: drop column 4 (the first column of c)
    std::vector<cx> cols;
    cols.reserve(10);
    for (int row = 0; row < 2; ++row)
        for (int col = 0; col < 6; ++col)
            if (col != 4) cols.push_back(blocks[static_cast<std::size_t>(6 * row + col)]);
    return mat_rank(cols, 5, rank_ratio);
}

double trace_condition_residual_G(const RepPoint& rep, int n, int m) {
    const Mat2& w = rep.images[0];
    const Mat2& z = rep.images[2];
    const Mat2 v = v_of(z, w, m, n);
    return std::abs(v.tr() - mat_pow(z, n).tr());
}

cx sample_f_lambda(const GParams& gp, cx zeta, Rng& rng) {
    const bool zeta_one = std::abs(zeta - cx{1}) <= kMembershipTol;
    for (int attempt = 0; attempt < 200; ++attempt) {
        const cx lambda = rng.annulus(0.75, 1.35);
        if (std::abs(theta(lambda, gp.n)) < 0.1) continue;
        if (std::abs(theta(lambda, gp.m)) < 0.1) continue;
        if (zeta_one &&
            std::abs(cpow(lambda, gp.m) + static_cast<double>(gp.m) / static_cast<double>(gp.n)) < 0.05)
            continue;
        return lambda;
    }
    throw std::runtime_error("sample_f_lambda: no admissible lambda after 200 attempts");
}

}  // namespace cjl
