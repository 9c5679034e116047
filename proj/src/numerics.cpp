#include "cjl/numerics.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace cjl {

Mat2 mat_pow(const Mat2& m, long long k) {
    if (k == 0) return Mat2::identity();
    Mat2 base = k > 0 ? m : m.inverse();
    long long e = k > 0 ? k : -k;
    Mat2 acc = Mat2::identity();
    while (e > 0) {
        if (e & 1) acc = acc * base;
        base = base * base;
        e >>= 1;
    }
    return acc;
}

std::pair<cx, cx> eigenvalues(const Mat2& m) {
    const cx half_tr = m.tr() / 2.0;
    const cx disc = std::sqrt(half_tr * half_tr - m.det());
    cx l1 = half_tr + disc, l2 = half_tr - disc;
    if (std::abs(l2) > std::abs(l1)) std::swap(l1, l2);
    return {l1, l2};
}

namespace {

// Kernel vector of a (numerically) singular 2x2, via the larger adjugate column.
std::pair<cx, cx> kernel_vector(const Mat2& s) {
    const Mat2 adj = s.adjugate();
    const double n1 = std::norm(adj.a) + std::norm(adj.c);
    const double n2 = std::norm(adj.b) + std::norm(adj.d);
    if (n1 >= n2) return {adj.a, adj.c};
    return {adj.b, adj.d};
}

}  // namespace

std::vector<std::pair<cx, cx>> right_eigenvectors(const Mat2& m) {
    std::vector<std::pair<cx, cx>> out;
    if (is_scalar(m)) return out;
    auto [l1, l2] = eigenvalues(m);
    const double scale = std::max(1.0, m.frobenius());
    auto push_for = [&](cx lam) {
        const Mat2 s = m - Mat2::diag(lam, lam);
        auto v = kernel_vector(s);
        const double vn = std::hypot(std::abs(v.first), std::abs(v.second));
        if (vn > 1e-14 * scale) {
            out.emplace_back(v.first / vn, v.second / vn);
            return;
        }
        // adjugate vanished (defective direction); fall back to a row solve
        if (std::abs(s.a) + std::abs(s.b) > std::abs(s.c) + std::abs(s.d))
            out.emplace_back(-s.b, s.a);
        else
            out.emplace_back(-s.d, s.c);
        auto& w = out.back();
        const double wn = std::hypot(std::abs(w.first), std::abs(w.second));
        w = {w.first / wn, w.second / wn};
    };
    push_for(l1);
    if (std::abs(l1 - l2) > 1e-9 * std::max(1.0, std::abs(l1))) push_for(l2);
    return out;
}

cx bracket(long long k, cx r) {
    if (k == 0) return cx{0};
    if (k > 0) {
        cx acc{0}, p{1};
        for (long long j = 0; j < k; ++j) {
            acc += p;
            p *= r;
        }
        return acc;
    }
    if (std::abs(r) == 0.0) throw std::domain_error("bracket: negative power of zero");
    cx acc{0}, p{1};
    for (long long j = 0; j < -k; ++j) {
        acc += p;
        p *= r;
    }
    // p == r^{|k|} here
    return -acc / p;
}

Mat2 bracket(long long k, const Mat2& r) {
    if (k == 0) return Mat2::zero();
    if (k > 0) {
        Mat2 acc = Mat2::zero(), p = Mat2::identity();
        for (long long j = 0; j < k; ++j) {
            acc = acc + p;
            p = p * r;
        }
        return acc;
    }
    if (std::abs(r.det()) == 0.0) throw std::domain_error("bracket: negative power of a singular matrix");
    Mat2 acc = Mat2::zero(), p = Mat2::identity();
    for (long long j = 0; j < -k; ++j) {
        acc = acc + p;
        p = p * r;
    }
    return -(mat_pow(r, k) * acc);
}

std::vector<cx> roots_of_unity(int k) {
    if (k < 1) throw std::invalid_argument("roots_of_unity: k must be positive");
    std::vector<cx> out;
    out.reserve(static_cast<std::size_t>(k - 1));
    constexpr double two_pi = 6.283185307179586476925286766559;
    for (int j = 1; j < k; ++j) out.push_back(std::polar(1.0, two_pi * j / k));
    return out;
}

namespace {

// Householder-QR of a k x 2 matrix; returns the 2x2 upper-triangular factor.
// Working columnwise keeps the small singular value accurate to eps*sigma1,
// where a Gram-matrix route would lose it to cancellation.
std::array<cx, 4> qr_2cols(std::vector<cx>& col0, std::vector<cx>& col1) {
    const std::size_t k = col0.size();
    auto reflect = [&](std::size_t from, std::vector<cx>& pivot, std::vector<cx>* other) {
        double norm2 = 0;
        for (std::size_t i = from; i < k; ++i) norm2 += std::norm(pivot[i]);
        if (norm2 == 0.0) return;
        const double norm = std::sqrt(norm2);
        const cx alpha = pivot[from];
        const double aa = std::abs(alpha);
        const cx beta = -(aa > 0 ? alpha / aa : cx{1}) * norm;
        std::vector<cx> u(k, cx{0});
        for (std::size_t i = from; i < k; ++i) u[i] = pivot[i];
        u[from] -= beta;
        double un2 = 0;
        for (std::size_t i = from; i < k; ++i) un2 += std::norm(u[i]);
        if (un2 == 0.0) return;
        const double inv = 2.0 / un2;
        auto apply = [&](std::vector<cx>& w) {
            cx dot{0};
            for (std::size_t i = from; i < k; ++i) dot += std::conj(u[i]) * w[i];
            dot *= inv;
            for (std::size_t i = from; i < k; ++i) w[i] -= dot * u[i];
        };
        apply(pivot);
        if (other) apply(*other);
    };
    reflect(0, col0, &col1);
    if (k > 1) reflect(1, col1, nullptr);
    return {col0[0], col1[0], cx{0}, k > 1 ? col1[1] : cx{0}};
}

}  // namespace

std::pair<double, double> singular_values_2xk(std::span<const cx> entries, std::size_t rows,
                                              std::size_t cols) {
    if (rows * cols != entries.size()) throw std::invalid_argument("singular_values_2xk: shape mismatch");
    std::size_t k, two;
    bool row_pair = rows == 2;
    if (row_pair) {
        two = rows;
        k = cols;
    } else if (cols == 2) {
        two = cols;
        k = rows;
    } else {
        throw std::invalid_argument("singular_values_2xk: one dimension must be 2");
    }
    (void)two;
    std::vector<cx> c0(k), c1(k);
    for (std::size_t i = 0; i < k; ++i) {
        if (row_pair) {  // transpose of the 2 x k
            c0[i] = entries[i];
            c1[i] = entries[cols + i];
        } else {
            c0[i] = entries[2 * i];
            c1[i] = entries[2 * i + 1];
        }
        require_finite(c0[i], "singular_values_2xk");
        require_finite(c1[i], "singular_values_2xk");
    }
    const auto r = qr_2cols(c0, c1);
    // Singular values of the 2x2 triangular factor through the stable
    // sum/difference form: (s1 +- s2)^2 = |R|_F^2 +- 2|det R|.
    const double f2 = std::norm(r[0]) + std::norm(r[1]) + std::norm(r[2]) + std::norm(r[3]);
    const double dt = 2.0 * std::abs(r[0] * r[3] - r[1] * r[2]);
    const double sum = std::sqrt(std::max(0.0, f2 + dt));
    const double dif = std::sqrt(std::max(0.0, f2 - dt));
    return {(sum + dif) / 2.0, (sum - dif) / 2.0};
}

namespace {

int rank_from_singulars(double s1, double s2, double max_entry, double rank_ratio) {
    if (max_entry == 0.0 || s1 <= kRankZeroTol * max_entry) return 0;
    if (s2 <= rank_ratio * s1) return 1;
    return 2;
}

}  // namespace

int mat_rank(std::span<const cx> entries, std::size_t cols, double rank_ratio) {
    if (cols < 1 || cols > 6) throw std::invalid_argument("mat_rank: need 1 <= cols <= 6");
    double max_entry = 0;
    for (auto z : entries) {
        require_finite(z, "mat_rank");
        max_entry = std::max(max_entry, std::abs(z));
    }
    auto [s1, s2] = singular_values_2xk(entries, 2, cols);
    return rank_from_singulars(s1, s2, max_entry, rank_ratio);
}

int mat_rank_cols2(std::span<const cx> entries, std::size_t rows, double rank_ratio) {
    double max_entry = 0;
    for (auto z : entries) {
        require_finite(z, "mat_rank");
        max_entry = std::max(max_entry, std::abs(z));
    }
    auto [s1, s2] = singular_values_2xk(entries, rows, 2);
    return rank_from_singulars(s1, s2, max_entry, rank_ratio);
}

}  // namespace cjl
