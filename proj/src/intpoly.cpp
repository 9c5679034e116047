#include "cjl/intpoly.hpp"

#include <stdexcept>
#include <utility>

namespace cjl {

void IntPoly::trim() {
    while (c_.size() > 1 && c_.back() == 0) c_.pop_back();
    if (c_.empty()) c_.push_back(mpz_class(0));
}

IntPoly IntPoly::from_ints(std::vector<long> coeffs) {
    std::vector<mpz_class> c(coeffs.begin(), coeffs.end());
    return IntPoly(std::move(c));
}

IntPoly IntPoly::derivative() const {
    if (c_.size() <= 1) return IntPoly();
    std::vector<mpz_class> d(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * static_cast<long>(i);
    return IntPoly(std::move(d));
}

mpz_class IntPoly::content() const {
    mpz_class g = 0;
    for (const auto& z : c_) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), z.get_mpz_t());
    return g;
}

IntPoly IntPoly::primitive_part() const {
    if (is_zero()) return *this;
    mpz_class g = content();
    if (leading() < 0) g = -g;
    std::vector<mpz_class> out(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i) out[i] = c_[i] / g;
    return IntPoly(std::move(out));
}

IntPoly IntPoly::shifted_down(int k) const {
    if (k <= 0) return *this;
    if (degree() < k) throw std::invalid_argument("IntPoly::shifted_down: degree too small");
    for (int i = 0; i < k; ++i)
        if (c_[static_cast<std::size_t>(i)] != 0)
            throw std::invalid_argument("IntPoly::shifted_down: nonzero low coefficient");
    std::vector<mpz_class> out(c_.begin() + k, c_.end());
    return IntPoly(std::move(out));
}

CPoly IntPoly::to_cpoly() const {
    std::vector<cx> out(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i) out[i] = cx{c_[i].get_d(), 0.0};
    return CPoly(std::move(out));
}

namespace {

// Pseudo-remainder: lc(b)^(deg a - deg b + 1) * a  mod  b, computed exactly.
IntPoly pseudo_rem(IntPoly a, const IntPoly& b) {
    const int db = b.degree();
    const mpz_class& lb = b.leading();
    std::vector<mpz_class> r(a.coeffs());
    int da = static_cast<int>(r.size()) - 1;
    while (da >= db && !(r.size() == 1 && r[0] == 0)) {
        const mpz_class lead = r.back();
        for (auto& z : r) z *= lb;
        for (int i = 0; i <= db; ++i)
            r[static_cast<std::size_t>(da - db + i)] -= lead * b.coeffs()[static_cast<std::size_t>(i)];
        while (r.size() > 1 && r.back() == 0) r.pop_back();
        da = static_cast<int>(r.size()) - 1;
        if (da < db) break;
    }
    return IntPoly(std::move(r));
}

}  // namespace

IntPoly int_poly_gcd(IntPoly a, IntPoly b) {
    a = a.primitive_part();
    b = b.primitive_part();
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.degree() < b.degree()) std::swap(a, b);
    while (!b.is_zero()) {
        IntPoly r = pseudo_rem(a, b).primitive_part();
        a = std::move(b);
        b = std::move(r);
    }
    return a.primitive_part();
}

bool int_poly_squarefree(const IntPoly& p) {
    if (p.is_zero()) throw std::invalid_argument("int_poly_squarefree: zero polynomial");
    if (p.degree() < 1) throw std::invalid_argument("int_poly_squarefree: degree must be >= 1");
    if (p.constant_term() == 0) return false;
    return int_poly_gcd(p, p.derivative()).degree() == 0;
}

}  // namespace cjl
