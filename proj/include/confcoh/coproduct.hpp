#pragma once

// The relabeling product delta* : H*(C_q) (x) H*(C_r) -> H*(C_{q+r}), its colored variant
// on C_{q,t} = C_{q+t} (the first q points lie on the knot, the last t are free), and the
// dual coproduct on admissible basis labels.

#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "arnold.hpp"
#include "errors.hpp"
#include "expression.hpp"

namespace confcoh {

// q points on the knot followed by t free points.
struct ColoredGrading {
    int q = 0;
    int t = 0;

    ColoredGrading() = default;
    ColoredGrading(int q_, int t_) : q(q_), t(t_)
    {
        if (q < 0 || t < 0)
            throw domain_error("colored grading needs q, t >= 0");
    }
    int total() const { return q + t; }
    auto operator<=>(const ColoredGrading&) const = default;
};

// Permutation of {1..q+t+r+s} that moves the r knot points of the right factor ahead of
// the t free points of the left factor.
class ShufflePermutation {
public:
    ShufflePermutation(int q, int t, int r, int s) : q_(q), t_(t), r_(r), s_(s)
    {
        if (q < 0 || t < 0 || r < 0 || s < 0)
            throw domain_error("sigma needs nonnegative arguments");
        const int total = q + t + r + s;
        image_.resize(total);
        preimage_.resize(total);
        for (int i = 1; i <= total; ++i) {
            int to = i;
            if (i >= q + t + 1 && i <= q + t + r)
                to = i - t;
            else if (i >= q + 1 && i <= q + t)
                to = i + r;
            image_[i - 1] = to;
            preimage_[to - 1] = i;
        }
    }

    int size() const { return static_cast<int>(image_.size()); }
    int operator()(int i) const { return image_.at(i - 1); }
    int inverse(int i) const { return preimage_.at(i - 1); }
    const std::vector<int>& images() const { return image_; }
    const std::vector<int>& preimages() const { return preimage_; }

    std::tuple<int, int, int, int> shape() const { return {q_, t_, r_, s_}; }

private:
    int q_, t_, r_, s_;
    std::vector<int> image_;
    std::vector<int> preimage_;
};

inline ShufflePermutation sigma(int q, int t, int r, int s) { return ShufflePermutation(q, t, r, s); }

namespace detail {
    inline void require_compatible(const RingParams& a, const RingParams& b)
    {
        if (a.n != b.n || !(a.coefficients == b.coefficients))
            throw domain_error("factors use different n or coefficients");
    }
} // namespace detail

// theta on C_q, eta on C_r  ->  theta * (eta with every index shifted by q) on C_{q+r}.
inline Element delta_star(const Element& theta, const Element& eta)
{
    detail::require_compatible(theta.params(), eta.params());
    const int q = theta.params().q;
    const RingParams target = theta.params().with_points(q + eta.params().q);
    Element left = relabel(theta, target, [](int i) { return i; });
    Element right = relabel(eta, target, [q](int i) { return i + q; });
    return multiply(left, right);
}

// Product on colored spaces: C_{q,t} x C_{r,s} -> C_{q+r,t+s}; delta* followed by sigma.
inline Element delta_star_colored(const Element& theta, ColoredGrading left, const Element& eta,
                                  ColoredGrading right)
{
    if (theta.params().q != left.total() || eta.params().q != right.total())
        throw domain_error("element point counts do not match their colored gradings");
    const Element plain = delta_star(theta, eta);
    const ShufflePermutation perm(left.q, left.t, right.q, right.t);
    return relabel(plain, plain.params(), [&perm](int i) { return perm(i); });
}

struct TensorTerm {
    ColoredGrading left_grading;
    ColoredGrading right_grading;
    Monomial left;
    Monomial right;
    Integer coefficient;

    friend bool operator==(const TensorTerm&, const TensorTerm&) = default;
};

// Finite sum of theta (x) eta over all splits of a source grading.
struct TensorSum {
    RingParams params; // n and coefficients; the point count is the source total Q+T
    ColoredGrading source;
    std::vector<TensorTerm> terms;

    Integer coefficient(ColoredGrading lg, const Monomial& l, ColoredGrading rg, const Monomial& r) const
    {
        for (const auto& term : terms)
            if (term.left_grading == lg && term.right_grading == rg && term.left == l && term.right == r)
                return term.coefficient;
        return 0;
    }

    // Grading arithmetic and degree additivity; throws on violation.
    void check_invariants() const
    {
        for (const auto& term : terms) {
            if (term.left_grading.q + term.right_grading.q != source.q ||
                term.left_grading.t + term.right_grading.t != source.t)
                throw domain_error("tensor term split does not add up to the source grading");
            if (term.left.max_index() > term.left_grading.total() ||
                term.right.max_index() > term.right_grading.total())
                throw domain_error("tensor factor exceeds its point count");
        }
    }
};

// Dual of delta_star_colored on the admissible basis. For each split (q,t,r,s) the label m
// is pulled back through sigma; it contributes theta (x) eta exactly when no generator
// straddles the cut between the first q+t and the last r+s points.
inline TensorSum coproduct(const Monomial& m, ColoredGrading source, const RingParams& params)
{
    if (m.max_index() > source.total())
        throw domain_error("monomial index exceeds Q+T = " + std::to_string(source.total()));
    TensorSum out{params.with_points(source.total()), source, {}};
    const bool odd = params.odd_generators();

    for (int q = 0; q <= source.q; ++q) {
        for (int t = 0; t <= source.t; ++t) {
            const int r = source.q - q;
            const int s = source.t - t;
            const int cut = q + t;
            const ShufflePermutation perm(q, t, r, s);

            // Pulled-back word in the original generator order of m.
            Word pulled;
            bool straddles = false;
            for (const auto& g : m.generators()) {
                int a = perm.inverse(g.i), b = perm.inverse(g.j);
                // sigma^{-1} is increasing on each block, so a < b whenever both lie in one block.
                if ((a <= cut) != (b <= cut)) {
                    straddles = true;
                    break;
                }
                pulled.push_back(Generator{a, b});
            }
            if (straddles)
                continue;

            // Order: low block sorted by larger index, then high block likewise.
            int parity = detail::sort_by_larger_index(pulled, odd);
            std::vector<Generator> low, high;
            for (const auto& g : pulled) {
                if (g.j <= cut)
                    low.push_back(g);
                else
                    high.push_back(Generator{g.i - cut, g.j - cut});
            }
            Integer c = params.coefficients.sign(parity);
            out.terms.push_back(
                {ColoredGrading(q, t), ColoredGrading(r, s), Monomial(std::move(low)), Monomial(std::move(high)), c});
        }
    }
    return out;
}

// Linear extension to an element of C_{Q,T}.
inline TensorSum coproduct(const Element& e, ColoredGrading source)
{
    if (e.params().q != source.total())
        throw domain_error("element point count does not match Q+T");
    std::map<std::tuple<ColoredGrading, ColoredGrading, Monomial, Monomial>, Integer> acc;
    for (const auto& [m, c] : e.terms()) {
        for (auto& term : coproduct(m, source, e.params()).terms) {
            auto& slot = acc[{term.left_grading, term.right_grading, term.left, term.right}];
            slot = e.params().coefficients.normalize(slot + c * term.coefficient);
        }
    }
    TensorSum out{e.params(), source, {}};
    for (auto& [key, c] : acc) {
        if (c == 0)
            continue;
        auto& [lg, rg, l, r] = key;
        out.terms.push_back({lg, rg, l, r, c});
    }
    std::stable_sort(out.terms.begin(), out.terms.end(), [](const TensorTerm& a, const TensorTerm& b) {
        return std::tie(a.left_grading, a.left, a.right) < std::tie(b.left_grading, b.left, b.right);
    });
    return out;
}

struct DualityMismatch {
    ColoredGrading left_grading, right_grading;
    Monomial left, right, target;
    Integer product_coefficient;
    Integer coproduct_coefficient;
};

// Compares, for every split of (Q,T) and every basis triple (theta, eta, m) of matching
// degree, the coefficient of m in delta_star_colored(theta, eta) with the coefficient of
// theta (x) eta in coproduct(m). Empty result <=> the coproduct matrix is the transpose.
inline std::vector<DualityMismatch> duality_mismatches(int Q, int T, const RingParams& params,
                                                       std::optional<int> degree = std::nullopt)
{
    const RingParams total = params.with_points(Q + T);
    std::map<Monomial, TensorSum> coproducts;
    for (const auto& m : basis(total, degree))
        coproducts.emplace(m, coproduct(m, ColoredGrading(Q, T), params));

    std::vector<DualityMismatch> mismatches;
    for (int q = 0; q <= Q; ++q) {
        for (int t = 0; t <= T; ++t) {
            const ColoredGrading lg(q, t), rg(Q - q, T - t);
            const RingParams lp = params.with_points(lg.total()), rp = params.with_points(rg.total());
            for (const auto& theta : basis(lp)) {
                for (const auto& eta : basis(rp)) {
                    const int d = theta.degree(params) + eta.degree(params);
                    if (degree && d != *degree)
                        continue;
                    const Element product =
                        delta_star_colored(Element::monomial(lp, theta), lg, Element::monomial(rp, eta), rg);
                    for (const auto& [m, dual] : coproducts) {
                        if (m.degree(params) != d)
                            continue;
                        Integer from_product = product.coefficient(m);
                        Integer from_coproduct = dual.coefficient(lg, theta, rg, eta);
                        if (from_product != from_coproduct)
                            mismatches.push_back({lg, rg, theta, eta, m, from_product, from_coproduct});
                    }
                }
            }
        }
    }
    return mismatches;
}

inline bool duality_matrix_check(int Q, int T, const RingParams& params, std::optional<int> degree = std::nullopt)
{
    return duality_mismatches(Q, T, params, degree).empty();
}

inline std::string to_string(const TensorTerm& term)
{
    return "(" + to_string(term.left) + ")_{" + std::to_string(term.left_grading.q) + "," +
           std::to_string(term.left_grading.t) + "} (x) (" + to_string(term.right) + ")_{" +
           std::to_string(term.right_grading.q) + "," + std::to_string(term.right_grading.t) + "}";
}

} // namespace confcoh
