#include "cjl/distinguish.hpp"

namespace cjl {

namespace {

void compare(Verdict& v, const std::string& name, long long left, long long right) {
    if (left != right) v.witnesses.push_back({name, left, right});
}

}  // namespace

Verdict distinguish_G(int m, int n, int m2, int n2) {
    const InvariantProfileG a = invariant_profile_G(m, n);
    const InvariantProfileG b = invariant_profile_G(m2, n2);
    Verdict v;
    v.family = Family::G;
    compare(v, "anti_diagonal", a.anti_diagonal, b.anti_diagonal);
    compare(v, "two_dim_fiber_components", a.two_dim_fiber_components, b.two_dim_fiber_components);
    compare(v, "g", a.g, b.g);
    compare(v, "sum_abs", a.sum_abs, b.sum_abs);
    compare(v, "ell", a.ell, b.ell);
    compare(v, "count_c_cstar", a.count_c_cstar, b.count_c_cstar);
    v.distinguished = !v.witnesses.empty();
    return v;
}

Verdict distinguish_H_profiles(const InvariantProfileH& left, const InvariantProfileH& right) {
    Verdict v;
    v.family = Family::H;
    compare(v, "generic_fiber", left.m_measured, right.m_measured);
    compare(v, "puncture_count", left.punctures, right.punctures);
    v.distinguished = !v.witnesses.empty();
    return v;
}

Verdict distinguish_H(int m, int n, int m2, int n2, std::uint64_t seed) {
    return distinguish_H_profiles(invariant_profile_H(m, n, seed), invariant_profile_H(m2, n2, seed));
}

}  // namespace cjl
