#pragma once

// Graded ring H*(C_q(R^n)) presented by generators w(i,j) of degree n-1 and the
// relations
//     w(j,i) = (-1)^n w(i,j),    w(i,j)^2 = 0,
//     w(a,b) w(b,c) + w(b,c) w(c,a) + w(c,a) w(a,b) = 0.
// Elements are kept in the admissible basis: products w(i_1,j_1)...w(i_k,j_k)
// with j_1 < j_2 < ... < j_k.

#include <algorithm>
#include <compare>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "scalar.hpp"

namespace confcoh {

struct RingParams {
    int n = 3;
    int q = 0;
    Coefficients coefficients;

    RingParams() = default;
    RingParams(int n_, int q_, Coefficients c = {}) : n(n_), q(q_), coefficients(c)
    {
        if (n < 3)
            throw domain_error("ambient dimension n must be >= 3, got " + std::to_string(n));
        if (q < 0)
            throw domain_error("point count q must be >= 0, got " + std::to_string(q));
        if (coefficients.modulus && !is_prime(*coefficients.modulus))
            throw domain_error("coefficient modulus is not prime");
    }

    int generator_degree() const { return n - 1; }
    // Generators anticommute exactly when their degree n-1 is odd.
    bool odd_generators() const { return n % 2 == 0; }
    RingParams with_points(int points) const { return RingParams(n, points, coefficients); }

    bool operator==(const RingParams&) const = default;
};

struct Generator {
    int i = 0;
    int j = 0;

    auto operator<=>(const Generator&) const = default;
};

// (w(min,max), sign) with sign = (-1)^n when the pair came in reversed.
inline std::pair<Generator, int> canonicalize_generator(int i, int j, const RingParams& params)
{
    if (i == j)
        throw domain_error("w(" + std::to_string(i) + "," + std::to_string(j) + "): equal indices");
    if (i < 1 || j < 1 || i > params.q || j > params.q)
        throw domain_error("w(" + std::to_string(i) + "," + std::to_string(j) + "): index outside 1.." +
                           std::to_string(params.q));
    if (i < j)
        return {Generator{i, j}, 1};
    return {Generator{j, i}, params.n % 2 ? -1 : 1};
}

// An ordered product of canonical generators, not necessarily admissible.
using Word = std::vector<Generator>;

// Admissible monomial. Ordered by length first, then lexicographically on (i,j).
class Monomial {
public:
    Monomial() = default;

    explicit Monomial(std::vector<Generator> gens) : gens_(std::move(gens))
    {
        for (std::size_t k = 0; k < gens_.size(); ++k) {
            if (gens_[k].i < 1 || gens_[k].i >= gens_[k].j)
                throw domain_error("non-canonical generator in monomial");
            if (k > 0 && gens_[k - 1].j >= gens_[k].j)
                throw domain_error("monomial is not admissible (larger indices must strictly increase)");
        }
    }

    const std::vector<Generator>& generators() const { return gens_; }
    std::size_t length() const { return gens_.size(); }
    bool is_unit() const { return gens_.empty(); }
    int degree(const RingParams& params) const { return static_cast<int>(gens_.size()) * params.generator_degree(); }
    int max_index() const { return gens_.empty() ? 0 : gens_.back().j; }

    friend bool operator==(const Monomial&, const Monomial&) = default;
    friend bool operator<(const Monomial& a, const Monomial& b)
    {
        if (a.gens_.size() != b.gens_.size())
            return a.gens_.size() < b.gens_.size();
        return a.gens_ < b.gens_;
    }

private:
    std::vector<Generator> gens_;
};

struct WordTerm {
    Word word;
    Integer coefficient;
};

// Unreduced ring-linear combination of generator words.
struct FormalSum {
    RingParams params;
    std::vector<WordTerm> terms;
};

// Normal form: admissible monomials with nonzero coefficients.
class Element {
public:
    using TermMap = std::map<Monomial, Integer>;

    Element() = default;
    explicit Element(RingParams params) : params_(std::move(params)) {}

    static Element zero(const RingParams& params) { return Element(params); }
    static Element one(const RingParams& params) { return monomial(params, Monomial{}); }
    static Element monomial(const RingParams& params, const Monomial& m, Integer c = 1)
    {
        Element e(params);
        e.add_term(m, std::move(c));
        return e;
    }

    const RingParams& params() const { return params_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    Integer coefficient(const Monomial& m) const
    {
        auto it = terms_.find(m);
        return it == terms_.end() ? Integer(0) : it->second;
    }

    // Common degree of all terms; nullopt for zero or mixed-degree elements.
    std::optional<int> degree() const
    {
        std::optional<int> d;
        for (const auto& [m, c] : terms_) {
            int dm = m.degree(params_);
            if (d && *d != dm)
                return std::nullopt;
            d = dm;
        }
        return d;
    }

    std::set<int> degrees() const
    {
        std::set<int> out;
        for (const auto& [m, c] : terms_)
            out.insert(m.degree(params_));
        return out;
    }

    void add_term(const Monomial& m, Integer c)
    {
        if (m.max_index() > params_.q)
            throw domain_error("monomial index exceeds q = " + std::to_string(params_.q));
        auto& slot = terms_[m];
        slot = params_.coefficients.normalize(slot + c);
        if (slot == 0)
            terms_.erase(m);
    }

    Element& operator+=(const Element& other)
    {
        require_same(other);
        for (const auto& [m, c] : other.terms_)
            add_term(m, c);
        return *this;
    }
    Element& operator-=(const Element& other)
    {
        require_same(other);
        for (const auto& [m, c] : other.terms_)
            add_term(m, -c);
        return *this;
    }
    Element& operator*=(const Integer& s)
    {
        TermMap scaled;
        for (const auto& [m, c] : terms_) {
            Integer v = params_.coefficients.normalize(c * s);
            if (v != 0)
                scaled.emplace(m, std::move(v));
        }
        terms_ = std::move(scaled);
        return *this;
    }

    friend Element operator+(Element a, const Element& b) { return a += b; }
    friend Element operator-(Element a, const Element& b) { return a -= b; }
    friend Element operator-(Element a) { return a *= Integer(-1); }
    friend Element operator*(Integer s, Element a) { return a *= s; }

    friend bool operator==(const Element& a, const Element& b)
    {
        return a.params_ == b.params_ && a.terms_ == b.terms_;
    }

    void require_same(const Element& other) const
    {
        if (!(params_ == other.params_))
            throw domain_error("elements live in different rings (n, q or coefficients differ)");
    }

private:
    RingParams params_;
    TermMap terms_;
};

namespace detail {

    // Orders pending words so that the largest multiset of larger indices comes last.
    // Every rewrite replaces one larger index by a strictly smaller one, so popping the
    // last entry never revisits a word that can still receive contributions.
    struct PendingOrder {
        bool operator()(const Word& a, const Word& b) const
        {
            if (a.size() != b.size())
                return a.size() < b.size();
            for (std::size_t k = a.size(); k-- > 0;) {
                if (a[k].j != b[k].j)
                    return a[k].j < b[k].j;
            }
            return a < b;
        }
    };

    // Stable sort by larger index; returns the Koszul parity of the reordering
    // (always 0 for even-degree generators).
    inline int sort_by_larger_index(Word& w, bool odd)
    {
        int parity = 0;
        for (std::size_t k = 1; k < w.size(); ++k) {
            for (std::size_t m = k; m > 0 && w[m - 1].j > w[m].j; --m) {
                std::swap(w[m - 1], w[m]);
                parity ^= 1;
            }
        }
        return odd ? parity : 0;
    }

    inline void check_word(const Word& w, const RingParams& params)
    {
        for (const auto& g : w) {
            if (g.i < 1 || g.j > params.q || g.i >= g.j)
                throw domain_error("generator w(" + std::to_string(g.i) + "," + std::to_string(g.j) +
                                   ") is not canonical or exceeds q = " + std::to_string(params.q));
        }
    }

} // namespace detail

// Rewrites an arbitrary combination of generator words into the admissible basis.
inline Element reduce(const FormalSum& sum)
{
    const RingParams& params = sum.params;
    const auto& coeffs = params.coefficients;
    const bool odd = params.odd_generators();

    std::map<Word, Integer, detail::PendingOrder> pending;
    auto push = [&](Word w, Integer c) {
        int parity = detail::sort_by_larger_index(w, odd);
        if (parity)
            c = -c;
        for (std::size_t k = 1; k < w.size(); ++k)
            if (w[k - 1] == w[k])
                return; // square of a generator
        auto& slot = pending[std::move(w)];
        slot = coeffs.normalize(slot + c);
    };

    for (const auto& t : sum.terms) {
        detail::check_word(t.word, params);
        push(t.word, coeffs.normalize(t.coefficient));
    }

    Element result(params);
    while (!pending.empty()) {
        auto last = std::prev(pending.end());
        Word w = last->first;
        Integer c = last->second;
        pending.erase(last);
        if (c == 0)
            continue;

        std::size_t k = 1;
        while (k < w.size() && w[k - 1].j != w[k].j)
            ++k;
        if (k >= w.size()) {
            result.add_term(Monomial(std::move(w)), std::move(c));
            continue;
        }

        // w(a,j) w(b,j) = w(a,b) w(b,j) - w(a,b) w(a,j) for a < b < j. The same
        // identity holds for both parities of n once the pair is in (a,b) order.
        const Generator left = w[k - 1];
        const Generator right = w[k];
        const int a = std::min(left.i, right.i);
        const int b = std::max(left.i, right.i);
        const int j = left.j;
        if (left.i == b && odd)
            c = -c;

        Word w1 = w;
        w1[k - 1] = Generator{a, b};
        w1[k] = Generator{b, j};
        Word w2 = w;
        w2[k - 1] = Generator{a, b};
        w2[k] = Generator{a, j};
        push(std::move(w1), c);
        push(std::move(w2), -c);
    }
    return result;
}

inline Element reduce(const Element& e) { return e; }

inline FormalSum to_formal_sum(const Element& e)
{
    FormalSum s{e.params(), {}};
    for (const auto& [m, c] : e.terms())
        s.terms.push_back({m.generators(), c});
    return s;
}

// Cup product in H*(C_q).
inline Element multiply(const Element& a, const Element& b)
{
    a.require_same(b);
    FormalSum s{a.params(), {}};
    for (const auto& [ma, ca] : a.terms()) {
        for (const auto& [mb, cb] : b.terms()) {
            Word w = ma.generators();
            w.insert(w.end(), mb.generators().begin(), mb.generators().end());
            s.terms.push_back({std::move(w), ca * cb});
        }
    }
    return reduce(s);
}

inline Element operator*(const Element& a, const Element& b) { return multiply(a, b); }

// Applies the ring map w(i,j) -> w(f(i), f(j)) into H*(C_target), where f is injective.
// Reversed pairs are re-canonicalized with their sign and the result is reduced.
inline Element relabel(const Element& e, const RingParams& target, const std::function<int(int)>& f)
{
    if (e.params().n != target.n || !(e.params().coefficients == target.coefficients))
        throw domain_error("relabel target ring has different n or coefficients");
    FormalSum s{target, {}};
    for (const auto& [m, c] : e.terms()) {
        Word w;
        Integer coeff = c;
        for (const auto& g : m.generators()) {
            auto [gen, sign] = canonicalize_generator(f(g.i), f(g.j), target);
            if (sign < 0)
                coeff = -coeff;
            w.push_back(gen);
        }
        s.terms.push_back({std::move(w), std::move(coeff)});
    }
    return reduce(s);
}

// All admissible monomials (optionally of one cohomological degree) in ascending order.
// For each j in 2..q, either j is not a larger index or exactly one i < j is paired with it.
inline std::vector<Monomial> basis(const RingParams& params, std::optional<int> degree = std::nullopt)
{
    std::optional<std::size_t> length;
    if (degree) {
        if (*degree < 0 || *degree % params.generator_degree() != 0)
            return {};
        length = static_cast<std::size_t>(*degree / params.generator_degree());
    }

    std::vector<Monomial> out;
    std::vector<Generator> current;
    std::function<void(int)> extend = [&](int j) {
        if (length && current.size() > *length)
            return;
        if (j > params.q) {
            if (!length || current.size() == *length)
                out.emplace_back(current);
            return;
        }
        extend(j + 1);
        for (int i = 1; i < j; ++i) {
            current.push_back(Generator{i, j});
            extend(j + 1);
            current.pop_back();
        }
    };
    extend(2);
    std::sort(out.begin(), out.end());
    return out;
}

// Integer polynomial in one variable, dense by degree.
struct Polynomial {
    std::vector<Integer> coefficients;

    Integer at(int k) const
    {
        return k >= 0 && static_cast<std::size_t>(k) < coefficients.size() ? coefficients[k] : Integer(0);
    }
    Integer value_at_one() const
    {
        Integer s = 0;
        for (const auto& c : coefficients)
            s += c;
        return s;
    }
    int degree() const { return static_cast<int>(coefficients.size()) - 1; }

    bool operator==(const Polynomial&) const = default;

    std::string str(const std::string& var = "t") const
    {
        std::string out;
        for (std::size_t k = 0; k < coefficients.size(); ++k) {
            const Integer& c = coefficients[k];
            if (c == 0)
                continue;
            std::string mag = (c < 0 ? Integer(-c) : c).str();
            std::string term;
            if (k == 0)
                term = mag;
            else {
                std::string power = k == 1 ? var : var + "^" + std::to_string(k);
                term = mag == "1" ? power : mag + "*" + power;
            }
            if (out.empty())
                out = (c < 0 ? "-" : "") + term;
            else
                out += (c < 0 ? " - " : " + ") + term;
        }
        return out.empty() ? "0" : out;
    }
};

// Rank of H^k(C_q) for every k, counted over admissible monomials: each j in 2..q
// contributes either nothing or one of j-1 generators.
inline Polynomial poincare_polynomial(const RingParams& params)
{
    const int d = params.generator_degree();
    std::vector<Integer> by_length{1};
    for (int j = 2; j <= params.q; ++j) {
        std::vector<Integer> next(by_length.size() + 1, 0);
        for (std::size_t k = 0; k < by_length.size(); ++k) {
            next[k] += by_length[k];
            next[k + 1] += by_length[k] * (j - 1);
        }
        by_length = std::move(next);
    }
    Polynomial p;
    p.coefficients.assign(static_cast<std::size_t>(d) * (by_length.size() - 1) + 1, 0);
    for (std::size_t k = 0; k < by_length.size(); ++k)
        p.coefficients[k * d] = by_length[k];
    return p;
}

// Ranks of H^k(C_q / boundary; Q) = rank H_{nq-k}(C_q), keyed by k, nonzero entries only.
inline std::map<int, Integer> quotient_cohomology_dims(const RingParams& params)
{
    const Polynomial p = poincare_polynomial(params);
    const int top = params.n * params.q;
    std::map<int, Integer> dims;
    for (int k = 0; k <= p.degree(); ++k)
        if (p.at(k) != 0)
            dims[top - k] = p.at(k);
    return dims;
}

} // namespace confcoh
