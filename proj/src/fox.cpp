#include "cjl/fox.hpp"

namespace cjl {

GroupRingElem GroupRingElem::single(const Word& w, long long coeff) {
    GroupRingElem e;
    e.add(w, coeff);
    return e;
}

void GroupRingElem::add(const Word& w, long long c) {
    if (c == 0) return;
    auto it = terms_.find(w);
    if (it == terms_.end()) {
        terms_.emplace(w, c);
    } else {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

GroupRingElem& GroupRingElem::operator+=(const GroupRingElem& o) {
    for (const auto& [w, c] : o.terms_) add(w, c);
    return *this;
}

GroupRingElem& GroupRingElem::operator-=(const GroupRingElem& o) {
    for (const auto& [w, c] : o.terms_) add(w, -c);
    return *this;
}

GroupRingElem GroupRingElem::left_mul(const Word& w) const {
    GroupRingElem out;
    for (const auto& [t, c] : terms_) out.add(w * t, c);
    return out;
}

Mat2 GroupRingElem::eval(const std::vector<Mat2>& images) const {
    Mat2 acc = Mat2::zero();
    for (const auto& [w, c] : terms_) {
        Mat2 m = Mat2::identity();
        for (const auto& l : w.letters()) m = m * mat_pow(images.at(static_cast<std::size_t>(l.gen)), l.exp);
        acc = acc + cx{static_cast<double>(c), 0.0} * m;
    }
    return acc;
}

namespace {

// d(g^e)/dg: e>0 -> 1 + g + ... + g^{e-1}; e<0 -> -(g^e + ... + g^{-1}).
GroupRingElem power_derivative(int gen, long long e) {
    GroupRingElem out;
    if (e > 0) {
        for (long long j = 0; j < e; ++j) out += GroupRingElem::single(Word::generator(gen, j), 1);
    } else {
        for (long long j = e; j < 0; ++j) out -= GroupRingElem::single(Word::generator(gen, j), 1);
    }
    return out;
}

}  // namespace

GroupRingElem fox_derivative(const Word& w, int gen) {
    GroupRingElem acc;
    Word prefix;
    for (const auto& l : w.letters()) {
        if (l.gen == gen) acc += power_derivative(gen, l.exp).left_mul(prefix);
        prefix = prefix * Word::generator(l.gen, l.exp);
    }
    return acc;
}

}  // namespace cjl
