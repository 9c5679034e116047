#pragma once

#include <compare>
#include <string>
#include <vector>

namespace cjl {

// Free-group word in normal form: adjacent letters use distinct generators,
// all exponents nonzero. The empty word is the identity.
class Word {
  public:
    struct Letter {
        int gen;
        long long exp;
        friend auto operator<=>(const Letter&, const Letter&) = default;
    };

    Word() = default;
    explicit Word(std::vector<Letter> letters) : letters_(std::move(letters)) { normalize(); }
    static Word generator(int gen, long long exp = 1) { return Word({{gen, exp}}); }

    const std::vector<Letter>& letters() const { return letters_; }
    bool is_identity() const { return letters_.empty(); }
    std::size_t length() const { return letters_.size(); }
    int max_generator() const;

    Word inverse() const;
    Word pow(long long k) const;
    friend Word operator*(const Word& u, const Word& v);

    // Substitute each generator by the corresponding word.
    Word substitute(const std::vector<Word>& images) const;

    std::string str(const std::vector<std::string>& names) const;

    friend auto operator<=>(const Word&, const Word&) = default;

  private:
    void normalize();
    std::vector<Letter> letters_;
};

// One-relator presentation; the relator is kept as a lhs = rhs pair so that
// residuals can be measured as |rho(lhs) - rho(rhs)|.
struct Presentation {
    int generator_count = 0;
    std::vector<std::string> generator_names;
    Word relator_lhs;  // both empty <=> free group
    Word relator_rhs;
    bool has_relator = false;

    Word relator() const { return relator_lhs * relator_rhs.inverse(); }
    void validate() const;
};

Presentation free_presentation(int generators);

// G family <x,y,z | x = [z^m,x][z^n,y]>, generator order (x, y, z).
Presentation g_presentation_xyz(int m, int n);
// Same group after w = z^m x: z^n w^-1 z^-m w^2 = y^-1 z^n y, order (w, y, z).
Presentation g_presentation_wyz(int m, int n);

// H family <x,y,z | x = [x^m,z^n][y,z]>, generator order (x, y, z).
Presentation h_presentation_xyz(int m, int n);
// Same group after u = yz: z^-n-1 x^-m z^n x^m+1 = u^-1 z^-1 u, order (x, u, z).
Presentation h_presentation_xuz(int m, int n);

}  // namespace cjl
