#pragma once

#include <string>
#include <vector>

#include "cjl/gfamily.hpp"
#include "cjl/hfamily.hpp"

namespace cjl {

enum class Family { G, H };

// Outcome of comparing the invariant profiles of two parameter pairs.
// Witnesses list every differing invariant, in the order the deduction uses
// them; distinguished <=> witnesses nonempty.
struct Verdict {
    bool distinguished = false;
    struct Witness {
        std::string name;
        long long left = 0, right = 0;
    };
    std::vector<Witness> witnesses;
    Family family = Family::G;
};

Verdict distinguish_G(int m, int n, int m2, int n2);

// Uses the measured fiber cardinality (the sampled count), not the input m.
Verdict distinguish_H(int m, int n, int m2, int n2, std::uint64_t seed = 0xC0FFEEu);
Verdict distinguish_H_profiles(const InvariantProfileH& left, const InvariantProfileH& right);

}  // namespace cjl
