#pragma once

#include <gmpxx.h>

#include <vector>

#include "cjl/poly.hpp"

namespace cjl {

// Exact-integer-coefficient polynomial, ascending degree. Coefficients are
// arbitrary precision so that pseudo-remainder sequences never overflow.
class IntPoly {
  public:
    IntPoly() : c_{mpz_class(0)} {}
    explicit IntPoly(std::vector<mpz_class> coeffs) : c_(std::move(coeffs)) { trim(); }
    static IntPoly from_ints(std::vector<long> coeffs);

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.size() == 1 && c_[0] == 0; }
    const std::vector<mpz_class>& coeffs() const { return c_; }
    const mpz_class& leading() const { return c_.back(); }
    mpz_class constant_term() const { return c_.front(); }

    IntPoly derivative() const;
    mpz_class content() const;
    IntPoly primitive_part() const;  // content divided out, leading coefficient made positive

    // Exact division by x^k; requires the k lowest coefficients to vanish.
    IntPoly shifted_down(int k) const;

    CPoly to_cpoly() const;
    cx eval(cx x) const { return to_cpoly().eval(x); }

    friend bool operator==(const IntPoly& a, const IntPoly& b) { return a.c_ == b.c_; }

  private:
    void trim();
    std::vector<mpz_class> c_;
};

// Exact gcd over Q (primitive pseudo-remainder sequence), returned primitive
// with positive leading coefficient.
IntPoly int_poly_gcd(IntPoly a, IntPoly b);

// True iff p has no repeated root and no root at zero. A zero constant term is
// rejected outright: Laurent-style inputs are expected to be normalized (the
// power of x divided out) before testing.
bool int_poly_squarefree(const IntPoly& p);

}  // namespace cjl
