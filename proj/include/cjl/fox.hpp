#pragma once

#include <map>

#include "cjl/numerics.hpp"
#include "cjl/word.hpp"

namespace cjl {

// Integer group-ring element: finite sum of coeff * word, words distinct.
class GroupRingElem {
  public:
    GroupRingElem() = default;
    static GroupRingElem one() { return single(Word(), 1); }
    static GroupRingElem single(const Word& w, long long coeff);

    const std::map<Word, long long>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    GroupRingElem& operator+=(const GroupRingElem& o);
    GroupRingElem& operator-=(const GroupRingElem& o);
    friend GroupRingElem operator+(GroupRingElem a, const GroupRingElem& b) { return a += b; }
    friend GroupRingElem operator-(GroupRingElem a, const GroupRingElem& b) { return a -= b; }

    // Left translation by a word.
    GroupRingElem left_mul(const Word& w) const;

    Mat2 eval(const std::vector<Mat2>& images) const;

  private:
    void add(const Word& w, long long c);
    std::map<Word, long long> terms_;
};

// Free differential: satisfies d(uv) = du + u dv, d(g) = 1, d(g^-1) = -g^-1.
GroupRingElem fox_derivative(const Word& w, int gen);

}  // namespace cjl
