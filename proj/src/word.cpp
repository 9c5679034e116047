#include "cjl/word.hpp"

#include <stdexcept>

namespace cjl {

void Word::normalize() {
    std::vector<Letter> out;
    for (const auto& l : letters_) {
        if (l.exp == 0) continue;
        if (!out.empty() && out.back().gen == l.gen) {
            out.back().exp += l.exp;
            if (out.back().exp == 0) out.pop_back();
        } else {
            out.push_back(l);
        }
    }
    letters_ = std::move(out);
}

int Word::max_generator() const {
    int m = -1;
    for (const auto& l : letters_) m = std::max(m, l.gen);
    return m;
}

Word Word::inverse() const {
    std::vector<Letter> out;
    out.reserve(letters_.size());
    for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) out.push_back({it->gen, -it->exp});
    Word w;
    w.letters_ = std::move(out);  // already normal
    return w;
}

Word Word::pow(long long k) const {
    if (k == 0) return Word();
    const Word base = k > 0 ? *this : inverse();
    Word acc;
    for (long long i = 0; i < (k > 0 ? k : -k); ++i) acc = acc * base;
    return acc;
}

Word operator*(const Word& u, const Word& v) {
    std::vector<Word::Letter> cat = u.letters_;
    cat.insert(cat.end(), v.letters_.begin(), v.letters_.end());
    return Word(std::move(cat));
}

Word Word::substitute(const std::vector<Word>& images) const {
    Word acc;
    for (const auto& l : letters_) {
        if (l.gen < 0 || l.gen >= static_cast<int>(images.size()))
            throw std::invalid_argument("Word::substitute: generator index out of range");
        acc = acc * images[static_cast<std::size_t>(l.gen)].pow(l.exp);
    }
    return acc;
}

std::string Word::str(const std::vector<std::string>& names) const {
    if (letters_.empty()) return "1";
    std::string out;
    for (const auto& l : letters_) {
        if (!out.empty()) out += ' ';
        out += names.at(static_cast<std::size_t>(l.gen));
        if (l.exp != 1) out += '^' + std::to_string(l.exp);
    }
    return out;
}

void Presentation::validate() const {
    if (generator_count <= 0) throw std::invalid_argument("Presentation: need at least one generator");
    if (static_cast<int>(generator_names.size()) != generator_count)
        throw std::invalid_argument("Presentation: name count mismatch");
    for (const Word* w : {&relator_lhs, &relator_rhs})
        for (const auto& l : w->letters())
            if (l.gen < 0 || l.gen >= generator_count)
                throw std::invalid_argument("Presentation: relator uses unknown generator");
}

Presentation free_presentation(int generators) {
    Presentation p;
    p.generator_count = generators;
    for (int i = 0; i < generators; ++i) p.generator_names.push_back("g" + std::to_string(i + 1));
    p.validate();
    return p;
}

namespace {
Word commutator(const Word& a, const Word& b) { return a.inverse() * b.inverse() * a * b; }
}  // namespace

Presentation g_presentation_xyz(int m, int n) {
    const Word x = Word::generator(0), y = Word::generator(1), z = Word::generator(2);
    Presentation p;
    p.generator_count = 3;
    p.generator_names = {"x", "y", "z"};
    p.relator_lhs = x;
    p.relator_rhs = commutator(z.pow(m), x) * commutator(z.pow(n), y);
    p.has_relator = true;
    p.validate();
    return p;
}

Presentation g_presentation_wyz(int m, int n) {
    const Word w = Word::generator(0), y = Word::generator(1), z = Word::generator(2);
    Presentation p;
    p.generator_count = 3;
    p.generator_names = {"w", "y", "z"};
    p.relator_lhs = z.pow(n) * w.inverse() * z.pow(-m) * w.pow(2);
    p.relator_rhs = y.inverse() * z.pow(n) * y;
    p.has_relator = true;
    p.validate();
    return p;
}

Presentation h_presentation_xyz(int m, int n) {
    const Word x = Word::generator(0), y = Word::generator(1), z = Word::generator(2);
    Presentation p;
    p.generator_count = 3;
    p.generator_names = {"x", "y", "z"};
    p.relator_lhs = x;
    p.relator_rhs = commutator(x.pow(m), z.pow(n)) * commutator(y, z);
    p.has_relator = true;
    p.validate();
    return p;
}

Presentation h_presentation_xuz(int m, int n) {
    const Word x = Word::generator(0), u = Word::generator(1), z = Word::generator(2);
    Presentation p;
    p.generator_count = 3;
    p.generator_names = {"x", "u", "z"};
    p.relator_lhs = z.pow(-n - 1) * x.pow(-m) * z.pow(n) * x.pow(m + 1);
    p.relator_rhs = u.inverse() * z.inverse() * u;
    p.has_relator = true;
    p.validate();
    return p;
}

}  // namespace cjl
