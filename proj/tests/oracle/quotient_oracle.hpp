#pragma once

// Test-only oracle for one graded piece of H*(C_q(R^n)), computed without the library's
// rewriting: take the free graded-commutative algebra on w(i,j), i < j, truncated to
// products of `length` generators; span every relation instance (squares for odd n, and
// each three-term relation multiplied by every monomial of the complementary length);
// row-reduce over Q with non-admissible monomials as preferred pivots. The free columns
// that remain are the admissible monomials exactly when they form a basis of the quotient,
// and each pivot row then expresses a monomial in that basis.

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <utility>
#include <vector>

namespace oracle {

using Rational = boost::multiprecision::cpp_rational;
using Pair = std::pair<int, int>;
using PairWord = std::vector<Pair>;
using Projection = std::map<PairWord, Rational>;

class QuotientOracle {
public:
    QuotientOracle(int n, int q, int length) : n_(n), q_(q), length_(length)
    {
        for (int j = 2; j <= q; ++j)
            for (int i = 1; i < j; ++i)
                generators_.push_back({i, j});
        for (std::size_t g = 0; g < generators_.size(); ++g)
            index_of_[generators_[g]] = static_cast<int>(g);

        enumerate(length_, free_);
        // Non-admissible columns first so they become pivots whenever possible.
        std::stable_partition(free_.begin(), free_.end(), [&](const Key& k) { return !admissible(k); });
        for (std::size_t c = 0; c < free_.size(); ++c)
            column_[free_[c]] = static_cast<int>(c);

        build_relations();
        back_substitute();
    }

    std::size_t free_dimension() const { return free_.size(); }
    std::size_t relation_rank() const { return pivots_.size(); }
    std::size_t quotient_rank() const { return free_.size() - pivots_.size(); }

    std::size_t admissible_count() const
    {
        return static_cast<std::size_t>(std::count_if(free_.begin(), free_.end(), [&](const Key& k) { return admissible(k); }));
    }

    // True when every non-admissible monomial is a pivot, i.e. the admissible monomials
    // span the quotient (independence follows from quotient_rank == admissible_count).
    bool admissible_monomials_span() const
    {
        for (const auto& k : free_)
            if (!admissible(k) && !pivots_.count(column_.at(k)))
                return false;
        return true;
    }

    // Image of a product of generators (any order, any orientation) in the admissible basis.
    Projection project(const PairWord& word) const
    {
        std::vector<int> gens;
        int sign = 1;
        for (auto [i, j] : word) {
            if (i > j) {
                std::swap(i, j);
                if (n_ % 2)
                    sign = -sign;
            }
            gens.push_back(index_of_.at({i, j}));
        }
        auto normal = normalize(std::move(gens));
        Projection out;
        if (!normal)
            return out;
        sign *= normal->second;
        const int col = column_.at(normal->first);
        auto pivot = pivots_.find(col);
        if (pivot == pivots_.end()) {
            out[to_pairs(normal->first)] = sign;
            return out;
        }
        for (const auto& [c, v] : pivot->second) {
            if (c == col)
                continue;
            out[to_pairs(free_[c])] = -v * sign;
        }
        return out;
    }

private:
    using Key = std::vector<int>; // sorted generator indices
    using Row = std::map<int, Rational>;

    bool odd() const { return n_ % 2 == 0; }

    bool admissible(const Key& k) const
    {
        std::vector<int> larger;
        for (int g : k)
            larger.push_back(generators_[g].second);
        std::sort(larger.begin(), larger.end());
        return std::adjacent_find(larger.begin(), larger.end()) == larger.end();
    }

    PairWord to_pairs(const Key& k) const
    {
        PairWord w;
        for (int g : k)
            w.push_back(generators_[g]);
        std::sort(w.begin(), w.end(), [](const Pair& a, const Pair& b) { return a.second < b.second; });
        return w;
    }

    // Multisets (even-degree generators) or sets (odd-degree generators) of given size.
    void enumerate(int size, std::vector<Key>& out) const
    {
        Key current;
        std::function<void(int)> rec = [&](int from) {
            if (static_cast<int>(current.size()) == size) {
                out.push_back(current);
                return;
            }
            for (int g = from; g < static_cast<int>(generators_.size()); ++g) {
                current.push_back(g);
                rec(odd() ? g + 1 : g);
                current.pop_back();
            }
        };
        rec(0);
    }

    // Sorted key and Koszul sign, or nullopt when an odd generator repeats.
    std::optional<std::pair<Key, int>> normalize(Key gens) const
    {
        int sign = 1;
        for (std::size_t a = 1; a < gens.size(); ++a)
            for (std::size_t b = a; b > 0 && gens[b - 1] > gens[b]; --b) {
                std::swap(gens[b - 1], gens[b]);
                if (odd())
                    sign = -sign;
            }
        if (odd() && std::adjacent_find(gens.begin(), gens.end()) != gens.end())
            return std::nullopt;
        return std::make_pair(gens, sign);
    }

    int signed_generator(int a, int b, int& sign) const
    {
        if (a < b)
            return index_of_.at({a, b});
        if (n_ % 2)
            sign = -sign;
        return index_of_.at({b, a});
    }

    void add_product(Row& row, const std::vector<std::pair<Key, int>>& factors, const Key& tail) const
    {
        for (const auto& [prefix, s] : factors) {
            Key gens = prefix;
            gens.insert(gens.end(), tail.begin(), tail.end());
            auto normal = normalize(std::move(gens));
            if (!normal)
                continue;
            auto& v = row[column_.at(normal->first)];
            v += s * normal->second;
            if (v == 0)
                row.erase(column_.at(normal->first));
        }
    }

    void build_relations()
    {
        if (length_ < 2)
            return;
        std::vector<Key> tails;
        enumerate(length_ - 2, tails);

        std::vector<std::vector<std::pair<Key, int>>> relations;
        if (!odd())
            for (int g = 0; g < static_cast<int>(generators_.size()); ++g)
                relations.push_back({{{g, g}, 1}});
        for (int a = 1; a <= q_; ++a)
            for (int b = a + 1; b <= q_; ++b)
                for (int c = b + 1; c <= q_; ++c) {
                    // w(a,b) w(b,c) + w(b,c) w(c,a) + w(c,a) w(a,b)
                    std::vector<std::pair<Key, int>> rel;
                    const int cyc[3][2] = {{a, b}, {b, c}, {c, a}};
                    for (int k = 0; k < 3; ++k) {
                        int sign = 1;
                        int x = signed_generator(cyc[k][0], cyc[k][1], sign);
                        int y = signed_generator(cyc[(k + 1) % 3][0], cyc[(k + 1) % 3][1], sign);
                        rel.push_back({{x, y}, sign});
                    }
                    relations.push_back(std::move(rel));
                }

        for (const auto& rel : relations)
            for (const auto& tail : tails) {
                Row row;
                add_product(row, rel, tail);
                insert(std::move(row));
            }
    }

    void insert(Row row)
    {
        for (;;) {
            auto it = std::find_if(row.begin(), row.end(), [&](const auto& e) { return pivots_.count(e.first) > 0; });
            if (it == row.end())
                break;
            const int col = it->first;
            const Rational factor = it->second;
            for (const auto& [c, v] : pivots_.at(col)) {
                auto& slot = row[c];
                slot -= factor * v;
                if (slot == 0)
                    row.erase(c);
            }
        }
        if (row.empty())
            return;
        const int lead = row.begin()->first;
        const Rational inv = 1 / row.begin()->second;
        for (auto& [c, v] : row)
            v *= inv;
        pivots_.emplace(lead, std::move(row));
    }

    // Clears every pivot column from the other pivot rows (reduced row echelon form).
    void back_substitute()
    {
        for (auto p = pivots_.rbegin(); p != pivots_.rend(); ++p) {
            const int col = p->first;
            const Row& pivot = p->second;
            for (auto& [other_col, row] : pivots_) {
                if (other_col == col)
                    continue;
                auto it = row.find(col);
                if (it == row.end())
                    continue;
                const Rational factor = it->second;
                for (const auto& [c, v] : pivot) {
                    auto& slot = row[c];
                    slot -= factor * v;
                    if (slot == 0)
                        row.erase(c);
                }
            }
        }
    }

    int n_, q_, length_;
    std::vector<Pair> generators_;
    std::map<Pair, int> index_of_;
    std::vector<Key> free_;
    std::map<Key, int> column_;
    std::map<int, Row> pivots_;
};

} // namespace oracle
