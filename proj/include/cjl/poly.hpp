#pragma once

#include <vector>

#include "cjl/numerics.hpp"

namespace cjl {

// Dense complex polynomial, coefficients in ascending degree.
class CPoly {
  public:
    CPoly() : c_{cx{0}} {}
    explicit CPoly(std::vector<cx> coeffs) : c_(std::move(coeffs)) { trim(); }
    static CPoly constant(cx v) { return CPoly({v}); }
    static CPoly monomial(int degree, cx v = cx{1}) {
        std::vector<cx> c(static_cast<std::size_t>(degree) + 1, cx{0});
        c.back() = v;
        return CPoly(std::move(c));
    }

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.size() == 1 && c_[0] == cx{0}; }
    const std::vector<cx>& coeffs() const { return c_; }
    cx coeff(std::size_t i) const { return i < c_.size() ? c_[i] : cx{0}; }
    cx leading() const { return c_.back(); }
    double max_abs_coeff() const;

    cx eval(cx x) const;
    CPoly derivative() const;

    CPoly& operator+=(const CPoly& o);
    CPoly& operator-=(const CPoly& o);
    CPoly& operator*=(cx s);
    friend CPoly operator+(CPoly a, const CPoly& b) { return a += b; }
    friend CPoly operator-(CPoly a, const CPoly& b) { return a -= b; }
    friend CPoly operator*(cx s, CPoly a) { return a *= s; }
    friend CPoly operator*(const CPoly& a, const CPoly& b);
    // Multiply by x (degree shift).
    CPoly shifted_up() const;

  private:
    void trim();
    std::vector<cx> c_;
};

struct RootSet {
    struct Root {
        cx value;
        int multiplicity;
    };
    std::vector<Root> roots;
    double cluster_radius = 0;

    int total_multiplicity() const {
        int t = 0;
        for (auto& r : roots) t += r.multiplicity;
        return t;
    }
};

// Aberth-Ehrlich root finder with cluster detection. Nearby approximations are
// merged into one root when their Newton inclusion disks overlap or they fall
// within cluster_rel of each other (relative to the largest root magnitude);
// the cluster size becomes the multiplicity.
RootSet poly_roots(const CPoly& p, double cluster_rel = kClusterTol);

}  // namespace cjl
