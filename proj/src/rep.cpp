#include "cjl/rep.hpp"

#include <cmath>
#include <stdexcept>

namespace cjl {

Mat2 word_eval(const std::vector<Mat2>& images, const Word& w) {
    Mat2 acc = Mat2::identity();
    for (const auto& l : w.letters()) acc = acc * mat_pow(images.at(static_cast<std::size_t>(l.gen)), l.exp);
    return acc;
}

double relator_residual(const RepPoint& rep, const Presentation& p) {
    if (!p.has_relator) return 0.0;
    const Mat2 lhs = word_eval(rep, p.relator_lhs);
    const Mat2 rhs = word_eval(rep, p.relator_rhs);
    return (lhs - rhs).frobenius();
}

bool is_irreducible(const RepPoint& rep, double rel_tol) {
    const Mat2* pivot = nullptr;
    for (const auto& m : rep.images) {
        if (!is_scalar(m)) {
            pivot = &m;
            break;
        }
    }
    if (!pivot) return false;  // abelian image, every line is invariant

    for (const auto& [v1, v2] : right_eigenvectors(*pivot)) {
        bool common = true;
        for (const auto& m : rep.images) {
            if (is_scalar(m)) continue;
            const cx u1 = m.a * v1 + m.b * v2;
            const cx u2 = m.c * v1 + m.d * v2;
            const double un = std::hypot(std::abs(u1), std::abs(u2));
            // component of m*v orthogonal to v (v is unit)
            const cx along = std::conj(v1) * u1 + std::conj(v2) * u2;
            const cx r1 = u1 - along * v1;
            const cx r2 = u2 - along * v2;
            if (std::hypot(std::abs(r1), std::abs(r2)) > rel_tol * std::max(un, 1e-300)) {
                common = false;
                break;
            }
        }
        if (common) return false;
    }
    return true;
}

int inner_rank(const RepPoint& rep, double rank_ratio) {
    std::vector<cx> stack;
    stack.reserve(rep.images.size() * 4);
    for (const auto& m : rep.images) {
        const Mat2 s = m - Mat2::identity();
        stack.push_back(s.a);
        stack.push_back(s.b);
        stack.push_back(s.c);
        stack.push_back(s.d);
    }
    return mat_rank_cols2(stack, 2 * rep.images.size(), rank_ratio);
}

DerivationSystem derivation_matrix(const Presentation& p, const RepPoint& rep) {
    if (!p.has_relator) throw std::invalid_argument("derivation_matrix: presentation has no relator");
    p.validate();
    if (static_cast<int>(rep.images.size()) != p.generator_count)
        throw std::invalid_argument("derivation_matrix: generator/image count mismatch");
    DerivationSystem sys;
    sys.cols = 2 * static_cast<std::size_t>(p.generator_count);
    sys.source = rep;
    const Word relator = p.relator();
    for (int g = 0; g < p.generator_count; ++g) {
        const Mat2 block = fox_derivative(relator, g).eval(rep.images);
        const std::size_t col = 2 * static_cast<std::size_t>(g);
        sys.matrix[col] = block.a;
        sys.matrix[col + 1] = block.b;
        sys.matrix[sys.cols + col] = block.c;
        sys.matrix[sys.cols + col + 1] = block.d;
    }
    return sys;
}

int d1_dim(const Presentation& p, const RepPoint& rep, double rank_ratio) {
    if (!is_irreducible(rep)) throw std::domain_error("d1 defined here only for irreducible points");
    const int k = p.generator_count;
    const int rank = p.has_relator ? derivation_matrix(p, rep).rank(rank_ratio) : 0;
    return 2 * k - rank - 2;
}

std::vector<cx> character_fingerprint(const RepPoint& rep, const std::vector<Word>& words) {
    std::vector<Word> list = words;
    const int k = static_cast<int>(rep.images.size());
    if (list.empty()) {
        for (int i = 0; i < k; ++i) list.push_back(Word::generator(i));
        for (int i = 0; i < k; ++i)
            for (int j = i + 1; j < k; ++j) list.push_back(Word::generator(i) * Word::generator(j));
        if (k > 2) {
            Word all;
            for (int i = 0; i < k; ++i) all = all * Word::generator(i);
            list.push_back(all);
        }
    }
    std::vector<cx> out;
    out.reserve(list.size() + rep.images.size());
    for (const auto& w : list) out.push_back(word_eval(rep, w).tr());
    if (words.empty())
        for (const auto& m : rep.images) out.push_back(m.det());
    return out;
}

double fingerprint_distance(const std::vector<cx>& a, const std::vector<cx>& b) {
    if (a.size() != b.size()) throw std::invalid_argument("fingerprint_distance: size mismatch");
    double s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += std::norm(a[i] - b[i]);
    return std::sqrt(s);
}

bool check_homomorphism(const std::vector<Word>& images, const Presentation& source,
                        const std::function<std::vector<Mat2>(std::uint64_t)>& target_sampler,
                        int trials, double tol) {
    source.validate();
    if (static_cast<int>(images.size()) != source.generator_count)
        throw std::invalid_argument("check_homomorphism: need one image word per generator");
    for (int t = 0; t < trials; ++t) {
        const std::vector<Mat2> target = target_sampler(static_cast<std::uint64_t>(t));
        std::vector<Mat2> induced;
        induced.reserve(images.size());
        for (const auto& w : images) induced.push_back(word_eval(target, w));
        const Mat2 lhs = word_eval(induced, source.relator_lhs);
        const Mat2 rhs = word_eval(induced, source.relator_rhs);
        if ((lhs - rhs).frobenius() > tol) return false;
    }
    return true;
}

}  // namespace cjl
