#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace cjl {

using cx = std::complex<double>;

inline constexpr double kRankRatioTol = 1e-8;   // sigma_2/sigma_1 below this -> rank deficit
inline constexpr double kRankZeroTol = 1e-12;   // sigma_1 below this * max|entry| -> rank 0
inline constexpr double kClusterTol = 1e-7;     // relative root-cluster radius
inline constexpr double kResidualTol = 1e-9;    // relator / constraint residuals

inline bool is_finite(cx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

// Integer power by repeated squaring (matches the matrix power path).
inline cx cpow(cx z, long long k) {
    if (k == 0) return cx{1};
    cx base = k > 0 ? z : cx{1} / z;
    long long e = k > 0 ? k : -k;
    cx acc{1};
    while (e) {
        if (e & 1) acc *= base;
        base *= base;
        e >>= 1;
    }
    return acc;
}

// theta_k = lambda^k - 1
inline cx theta(cx lambda, long long k) { return cpow(lambda, k) - cx{1}; }

inline void require_finite(cx z, const char* what) {
    if (!is_finite(z)) throw std::invalid_argument(std::string(what) + ": non-finite value");
}

// 2x2 complex matrix, row major.
struct Mat2 {
    cx a{0}, b{0}, c{0}, d{0};  // [[a, b], [c, d]]

    static Mat2 identity() { return {1, 0, 0, 1}; }
    static Mat2 zero() { return {0, 0, 0, 0}; }
    static Mat2 diag(cx x, cx y) { return {x, 0, 0, y}; }
    // Jordan-type block [[x, x], [0, x]].
    static Mat2 parabolic(cx x) { return {x, x, 0, x}; }
    // Upper triangular [[x, v], [0, y]].
    static Mat2 upper(cx x, cx y, cx v) { return {x, v, 0, y}; }

    cx det() const { return a * d - b * c; }
    cx tr() const { return a + d; }

    Mat2 adjugate() const { return {d, -b, -c, a}; }

    Mat2 inverse() const {
        const cx dt = det();
        if (std::abs(dt) == 0.0) throw std::domain_error("Mat2::inverse: singular matrix");
        return {d / dt, -b / dt, -c / dt, a / dt};
    }

    double frobenius() const {
        return std::sqrt(std::norm(a) + std::norm(b) + std::norm(c) + std::norm(d));
    }

    double max_abs() const {
        return std::max(std::max(std::abs(a), std::abs(b)), std::max(std::abs(c), std::abs(d)));
    }

    friend Mat2 operator*(const Mat2& x, const Mat2& y) {
        return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d,
                x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
    }
    friend Mat2 operator+(const Mat2& x, const Mat2& y) {
        return {x.a + y.a, x.b + y.b, x.c + y.c, x.d + y.d};
    }
    friend Mat2 operator-(const Mat2& x, const Mat2& y) {
        return {x.a - y.a, x.b - y.b, x.c - y.c, x.d - y.d};
    }
    friend Mat2 operator*(cx s, const Mat2& x) { return {s * x.a, s * x.b, s * x.c, s * x.d}; }
    friend Mat2 operator-(const Mat2& x) { return {-x.a, -x.b, -x.c, -x.d}; }
};

Mat2 mat_pow(const Mat2& m, long long k);

// Eigenvalues, |lambda1| >= |lambda2|.
std::pair<cx, cx> eigenvalues(const Mat2& m);

// Right eigenvectors (as (v1,v2) pairs), one per distinct eigenvalue; a single
// entry for a non-scalar matrix with a repeated eigenvalue.
std::vector<std::pair<cx, cx>> right_eigenvectors(const Mat2& m);

inline bool is_scalar(const Mat2& m, double rel_tol = 1e-12) {
    const cx s = m.tr() / 2.0;
    const Mat2 diff = m - Mat2::diag(s, s);
    return diff.frobenius() <= rel_tol * std::max(1.0, m.frobenius());
}

// Geometric-series bracket: k>0 -> sum_{j<k} r^j, k<0 -> -r^k sum_{j<|k|} r^j, 0 -> 0.
cx bracket(long long k, cx r);
Mat2 bracket(long long k, const Mat2& r);

// All k-th roots of unity except 1, in increasing angle order (length k-1).
std::vector<cx> roots_of_unity(int k);

// Singular values of a 2 x k (or k x 2) complex matrix, entries row major.
// Returned with sigma1 >= sigma2 >= 0; computed through a QR step so that the
// small singular value is accurate to eps * sigma1 absolute.
std::pair<double, double> singular_values_2xk(std::span<const cx> entries, std::size_t rows,
                                              std::size_t cols);

// Numerical rank in {0,1,2} of a 2 x k matrix (k <= 6), entries row major.
int mat_rank(std::span<const cx> entries, std::size_t cols, double rank_ratio = kRankRatioTol);

// Rank of a k x 2 column-pair stack (same tolerance rules).
int mat_rank_cols2(std::span<const cx> entries, std::size_t rows,
                   double rank_ratio = kRankRatioTol);

}  // namespace cjl
