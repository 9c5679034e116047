#include "cjl/poly.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace cjl {

void CPoly::trim() {
    while (c_.size() > 1 && c_.back() == cx{0}) c_.pop_back();
    if (c_.empty()) c_.push_back(cx{0});
}

double CPoly::max_abs_coeff() const {
    double m = 0;
    for (auto z : c_) m = std::max(m, std::abs(z));
    return m;
}

cx CPoly::eval(cx x) const {
    cx acc{0};
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

CPoly CPoly::derivative() const {
    if (c_.size() <= 1) return CPoly();
    std::vector<cx> d(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = static_cast<double>(i) * c_[i];
    return CPoly(std::move(d));
}

CPoly& CPoly::operator+=(const CPoly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), cx{0});
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    trim();
    return *this;
}

CPoly& CPoly::operator-=(const CPoly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), cx{0});
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    trim();
    return *this;
}

CPoly& CPoly::operator*=(cx s) {
    for (auto& z : c_) z *= s;
    trim();
    return *this;
}

CPoly operator*(const CPoly& a, const CPoly& b) {
    std::vector<cx> out(a.c_.size() + b.c_.size() - 1, cx{0});
    for (std::size_t i = 0; i < a.c_.size(); ++i)
        for (std::size_t j = 0; j < b.c_.size(); ++j) out[i + j] += a.c_[i] * b.c_[j];
    return CPoly(std::move(out));
}

CPoly CPoly::shifted_up() const {
    std::vector<cx> out(c_.size() + 1, cx{0});
    for (std::size_t i = 0; i < c_.size(); ++i) out[i + 1] = c_[i];
    return CPoly(std::move(out));
}

namespace {

struct HornerPair {
    cx p, dp;
};

HornerPair eval_with_derivative(const std::vector<cx>& c, cx x) {
    cx p{0}, dp{0};
    for (auto it = c.rbegin(); it != c.rend(); ++it) {
        dp = dp * x + p;
        p = p * x + *it;
    }
    return {p, dp};
}

std::vector<cx> aberth(const std::vector<cx>& coeffs) {
    const int deg = static_cast<int>(coeffs.size()) - 1;
    // Fujiwara-style radius for initial guesses on a perturbed circle
    double radius = 0;
    for (int i = 0; i < deg; ++i) {
        const double q = std::abs(coeffs[i] / coeffs[deg]);
        if (q > 0) radius = std::max(radius, 2.0 * std::pow(q, 1.0 / (deg - i)));
    }
    if (radius == 0) radius = 0.5;
    const cx center = -coeffs[deg - 1] / (static_cast<double>(deg) * coeffs[deg]);
    constexpr double two_pi = 6.283185307179586476925286766559;
    std::vector<cx> z(deg);
    for (int j = 0; j < deg; ++j) {
        const double theta = two_pi * j / deg + 0.3927 + 1e-3 * j;
        z[j] = center + std::polar(radius * (1.0 + 2e-4 * j), theta);
    }

    const int max_iter = 600;
    for (int iter = 0; iter < max_iter; ++iter) {
        double max_step = 0;
        for (int j = 0; j < deg; ++j) {
            const auto [p, dp] = eval_with_derivative(coeffs, z[j]);
            if (p == cx{0}) continue;
            cx newton;
            if (dp == cx{0}) {
                z[j] += cx{1e-8 * (1.0 + std::abs(z[j])), 1e-8};
                max_step = 1;
                continue;
            }
            newton = p / dp;
            cx repulse{0};
            for (int k = 0; k < deg; ++k) {
                if (k == j) continue;
                cx diff = z[j] - z[k];
                if (std::abs(diff) < 1e-300) diff = cx{1e-12, 1e-12};
                repulse += cx{1} / diff;
            }
            const cx denom = cx{1} - newton * repulse;
            const cx step = std::abs(denom) < 1e-300 ? newton : newton / denom;
            z[j] -= step;
            max_step = std::max(max_step, std::abs(step) / std::max(1.0, std::abs(z[j])));
        }
        if (max_step <= 1e-13) break;
    }
    // polish (no-op on multiple roots, sharpens simple ones)
    for (auto& zj : z) {
        for (int t = 0; t < 2; ++t) {
            const auto [p, dp] = eval_with_derivative(coeffs, zj);
            if (dp == cx{0}) break;
            const cx step = p / dp;
            if (!is_finite(step)) break;
            zj -= step;
        }
    }
    return z;
}

}  // namespace

RootSet poly_roots(const CPoly& p, double cluster_rel) {
    for (auto z : p.coeffs()) require_finite(z, "poly_roots");
    if (p.degree() < 1) throw std::invalid_argument("poly_roots: constant polynomial");

    // exact zero roots first
    std::vector<cx> c = p.coeffs();
    int zero_mult = 0;
    while (c.size() > 1 && c.front() == cx{0}) {
        c.erase(c.begin());
        ++zero_mult;
    }

    std::vector<cx> approx;
    if (c.size() > 1) {
        double scale = 0;
        for (auto z : c) scale = std::max(scale, std::abs(z));
        for (auto& z : c) z /= scale;
        approx = aberth(c);
    }

    const int deg = static_cast<int>(approx.size());
    double mag = 0;
    for (auto z : approx) mag = std::max(mag, std::abs(z));
    if (zero_mult > 0) mag = std::max(mag, 1e-30);
    const double base_radius = cluster_rel * std::max(mag, 1e-300);

    // Newton inclusion disks: for a multiplicity-m cluster the approximations
    // land ~eps^{1/m} from the true root, so a fixed radius alone cannot see
    // them as one root. deg*|p/p'| is ~ the cluster spread there and ~eps for
    // well-separated simple roots.
    std::vector<double> incl(deg, 0.0);
    for (int j = 0; j < deg; ++j) {
        const auto [pv, dpv] = eval_with_derivative(c, approx[j]);
        incl[j] = dpv == cx{0} ? base_radius : std::min(static_cast<double>(deg) * std::abs(pv / dpv),
                                                        2e-3 * std::max(mag, 1e-300));
    }

    std::vector<int> parent(deg);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (int i = 0; i < deg; ++i)
        for (int j = i + 1; j < deg; ++j) {
            const double dist = std::abs(approx[i] - approx[j]);
            if (dist <= std::max(base_radius, incl[i] + incl[j])) parent[find(i)] = find(j);
        }

    RootSet out;
    out.cluster_radius = base_radius;
    std::vector<std::vector<int>> groups(deg);
    for (int i = 0; i < deg; ++i) groups[find(i)].push_back(i);
    for (auto& g : groups) {
        if (g.empty()) continue;
        cx centroid{0};
        for (int i : g) centroid += approx[i];
        centroid /= static_cast<double>(g.size());
        out.roots.push_back({centroid, static_cast<int>(g.size())});
    }
    if (zero_mult > 0) out.roots.push_back({cx{0}, zero_mult});

    // enforce pairwise separation > 2 * cluster_radius by further merging
    bool merged = true;
    while (merged) {
        merged = false;
        for (std::size_t i = 0; i < out.roots.size() && !merged; ++i)
            for (std::size_t j = i + 1; j < out.roots.size() && !merged; ++j) {
                if (std::abs(out.roots[i].value - out.roots[j].value) <= 2 * out.cluster_radius) {
                    const int mi = out.roots[i].multiplicity, mj = out.roots[j].multiplicity;
                    out.roots[i].value = (static_cast<double>(mi) * out.roots[i].value +
                                          static_cast<double>(mj) * out.roots[j].value) /
                                         static_cast<double>(mi + mj);
                    out.roots[i].multiplicity += mj;
                    out.roots.erase(out.roots.begin() + static_cast<std::ptrdiff_t>(j));
                    merged = true;
                }
            }
    }

    std::sort(out.roots.begin(), out.roots.end(), [](const RootSet::Root& x, const RootSet::Root& y) {
        if (x.value.real() != y.value.real()) return x.value.real() < y.value.real();
        return x.value.imag() < y.value.imag();
    });
    return out;
}

}  // namespace cjl
