#pragma once

// Stratification combinatorics of the compactified configuration space C_q.
// A stratum is labeled by a family of subsets of {1..q}, each of size >= 2, any two of
// which are disjoint or nested. The number of subsets is the codimension; the strata
// {S} of codimension one are the connected faces.

#include <algorithm>
#include <bit>
#include <cctype>
#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "errors.hpp"

namespace confcoh {

// Bit k-1 set <=> point k is a member.
using PointSet = std::uint64_t;

inline constexpr int max_ground_size = 63;

inline std::vector<int> members(PointSet s)
{
    std::vector<int> out;
    for (int k = 0; s; ++k, s >>= 1)
        if (s & 1)
            out.push_back(k + 1);
    return out;
}

inline int cardinality(PointSet s) { return std::popcount(s); }

inline bool compatible(PointSet a, PointSet b)
{
    const PointSet both = a & b;
    return both == 0 || both == a || both == b;
}

// Smaller sets first; equal sizes compare lexicographically on their sorted members.
inline bool point_set_less(PointSet a, PointSet b)
{
    if (a == b)
        return false;
    int ca = cardinality(a), cb = cardinality(b);
    if (ca != cb)
        return ca < cb;
    PointSet lowest = (a ^ b) & -(a ^ b);
    return (a & lowest) != 0;
}

struct StratumLabel {
    int ground = 0;
    std::vector<PointSet> family; // kept sorted by point_set_less

    StratumLabel() = default;
    StratumLabel(int ground_size, std::vector<PointSet> sets) : ground(ground_size), family(std::move(sets))
    {
        std::sort(family.begin(), family.end(), point_set_less);
    }

    int codimension() const { return static_cast<int>(family.size()); }
    bool contains(PointSet s) const { return std::find(family.begin(), family.end(), s) != family.end(); }

    friend bool operator==(const StratumLabel&, const StratumLabel&) = default;
    friend bool operator<(const StratumLabel& a, const StratumLabel& b)
    {
        if (a.ground != b.ground)
            return a.ground < b.ground;
        if (a.family.size() != b.family.size())
            return a.family.size() < b.family.size();
        return std::lexicographical_compare(a.family.begin(), a.family.end(), b.family.begin(), b.family.end(),
                                            point_set_less);
    }
};

inline bool is_valid(const StratumLabel& label)
{
    if (label.ground < 0 || label.ground > max_ground_size)
        return false;
    const PointSet ground_mask = label.ground == 0 ? 0 : (~PointSet{0} >> (64 - label.ground));
    for (std::size_t a = 0; a < label.family.size(); ++a) {
        const PointSet s = label.family[a];
        if (cardinality(s) < 2 || (s & ~ground_mask) != 0)
            return false;
        for (std::size_t b = a + 1; b < label.family.size(); ++b)
            if (s == label.family[b] || !compatible(s, label.family[b]))
                return false;
    }
    return true;
}

inline std::string to_string(PointSet s)
{
    std::string out = "{";
    bool first = true;
    for (int k : members(s)) {
        if (!first)
            out += ',';
        out += std::to_string(k);
        first = false;
    }
    return out + "}";
}

inline std::string to_string(const StratumLabel& label)
{
    std::string out = "{";
    for (std::size_t k = 0; k < label.family.size(); ++k) {
        if (k)
            out += ',';
        out += to_string(label.family[k]);
    }
    return out + "}";
}

// Parses "{{1,2},{1,2,3}}" on the ground set {1..ground}. Structural validity (size,
// nesting) is not checked here; that is is_valid's job.
inline StratumLabel parse_label(std::string_view text, int ground)
{
    std::size_t pos = 0;
    auto fail = [&](const std::string& what) {
        return parse_error(what + " at column " + std::to_string(pos + 1) + " of '" + std::string(text) + "'");
    };
    auto skip = [&] {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos])))
            ++pos;
    };
    auto expect = [&](char c) {
        skip();
        if (pos >= text.size() || text[pos] != c)
            throw fail(std::string("expected '") + c + "'");
        ++pos;
    };
    auto number = [&] {
        skip();
        std::size_t start = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
            ++pos;
        if (start == pos || pos - start > 3)
            throw fail("expected a point index");
        return std::stoi(std::string(text.substr(start, pos - start)));
    };
    auto peek = [&] {
        skip();
        return pos < text.size() ? text[pos] : '\0';
    };

    std::vector<PointSet> sets;
    expect('{');
    if (peek() != '}') {
        for (;;) {
            expect('{');
            PointSet s = 0;
            if (peek() != '}') {
                for (;;) {
                    int k = number();
                    if (k < 1 || k > ground)
                        throw fail("point " + std::to_string(k) + " outside 1.." + std::to_string(ground));
                    if (s & (PointSet{1} << (k - 1)))
                        throw fail("repeated point " + std::to_string(k));
                    s |= PointSet{1} << (k - 1);
                    if (peek() != ',')
                        break;
                    ++pos;
                }
            }
            expect('}');
            sets.push_back(s);
            if (peek() != ',')
                break;
            ++pos;
        }
    }
    expect('}');
    skip();
    if (pos != text.size())
        throw fail("trailing characters");
    return StratumLabel(ground, std::move(sets));
}

// All subsets of {1..ground} with at least two points, in point_set_less order.
inline std::vector<PointSet> admissible_subsets(int ground)
{
    if (ground < 0 || ground > max_ground_size)
        throw domain_error("ground set size must lie in 0.." + std::to_string(max_ground_size));
    if (ground > 24)
        throw domain_error("ground set too large to enumerate subsets");
    std::vector<PointSet> out;
    for (PointSet s = 0; s < (PointSet{1} << ground); ++s)
        if (cardinality(s) >= 2)
            out.push_back(s);
    std::sort(out.begin(), out.end(), point_set_less);
    return out;
}

// Every valid label on {1..ground}, optionally capped at a codimension, sorted.
inline std::vector<StratumLabel> enumerate_strata(int ground, std::optional<int> max_codim = std::nullopt)
{
    const std::vector<PointSet> subsets = admissible_subsets(ground);
    std::vector<StratumLabel> out;
    std::vector<PointSet> chosen;
    auto extend = [&](auto&& self, std::size_t from) -> void {
        out.emplace_back(ground, chosen);
        if (max_codim && static_cast<int>(chosen.size()) >= *max_codim)
            return;
        for (std::size_t k = from; k < subsets.size(); ++k) {
            const PointSet s = subsets[k];
            if (std::all_of(chosen.begin(), chosen.end(), [&](PointSet t) { return compatible(s, t); })) {
                chosen.push_back(s);
                self(self, k + 1);
                chosen.pop_back();
            }
        }
    };
    extend(extend, 0);
    std::sort(out.begin(), out.end());
    return out;
}

// The connected faces {S_1}, ..., {S_k} whose closures contain the stratum.
inline std::vector<StratumLabel> faces_containing(const StratumLabel& label)
{
    if (!is_valid(label))
        throw domain_error("invalid stratum label " + to_string(label));
    std::vector<StratumLabel> out;
    for (PointSet s : label.family)
        out.emplace_back(label.ground, std::vector<PointSet>{s});
    return out;
}

// Places b's points after a's: {S_1..S_k} u {T_1+q..T_l+q} on q+r points.
inline StratumLabel face_multiply(const StratumLabel& a, const StratumLabel& b)
{
    if (!is_valid(a) || !is_valid(b))
        throw domain_error("face_multiply needs valid labels");
    if (a.ground + b.ground > max_ground_size)
        throw domain_error("combined ground set too large");
    std::vector<PointSet> sets = a.family;
    for (PointSet t : b.family)
        sets.push_back(t << a.ground);
    return StratumLabel(a.ground + b.ground, std::move(sets));
}

// Strata graded by codimension; an edge S -> T when T = S u {one more subset}.
struct FacePoset {
    std::vector<StratumLabel> nodes;
    std::vector<std::pair<std::size_t, std::size_t>> covers;

    std::string to_dot() const
    {
        std::ostringstream os;
        os << "digraph strata {\n";
        for (const auto& node : nodes)
            os << "  \"" << to_string(node) << "\";\n";
        for (const auto& [from, to] : covers)
            os << "  \"" << to_string(nodes[from]) << "\" -> \"" << to_string(nodes[to]) << "\";\n";
        os << "}\n";
        return os.str();
    }
};

inline FacePoset face_poset(int ground, std::optional<int> max_codim = std::nullopt)
{
    FacePoset poset;
    poset.nodes = enumerate_strata(ground, max_codim);
    std::map<StratumLabel, std::size_t> index;
    for (std::size_t k = 0; k < poset.nodes.size(); ++k)
        index.emplace(poset.nodes[k], k);
    const std::vector<PointSet> subsets = admissible_subsets(ground);
    for (std::size_t k = 0; k < poset.nodes.size(); ++k) {
        const StratumLabel& node = poset.nodes[k];
        for (PointSet s : subsets) {
            if (node.contains(s))
                continue;
            std::vector<PointSet> bigger = node.family;
            bigger.push_back(s);
            auto it = index.find(StratumLabel(ground, std::move(bigger)));
            if (it != index.end())
                poset.covers.emplace_back(k, it->second);
        }
    }
    return poset;
}

struct FacesReport {
    int ground = 0;
    bool passed = true;
    std::size_t strata_checked = 0;
    std::size_t faces = 0;
    std::size_t face_pairs_checked = 0;
    std::vector<std::string> counterexamples;

    void fail(std::string what)
    {
        passed = false;
        if (counterexamples.size() < 50)
            counterexamples.push_back(std::move(what));
    }
};

// Checks the manifold-with-faces conditions on the label level:
//  (0) a codimension-k stratum lies in exactly k connected faces,
//  (1) every boundary stratum lies in some face,
//  (2) two distinct faces meet in a codimension-one stratum of each (or not at all).
inline FacesReport verify_faces_axioms(int ground)
{
    FacesReport report;
    report.ground = ground;

    const FacePoset poset = face_poset(ground);
    std::vector<PointSet> faces;
    std::map<StratumLabel, std::size_t> index;
    std::vector<std::vector<std::size_t>> up(poset.nodes.size());
    for (std::size_t k = 0; k < poset.nodes.size(); ++k) {
        index.emplace(poset.nodes[k], k);
        if (poset.nodes[k].codimension() == 1)
            faces.push_back(poset.nodes[k].family.front());
    }
    for (const auto& [from, to] : poset.covers)
        up[from].push_back(to);
    report.faces = faces.size();

    std::size_t minima = 0;
    for (const auto& node : poset.nodes) {
        ++report.strata_checked;
        if (!is_valid(node))
            report.fail("enumerated label " + to_string(node) + " is not valid");
        if (node.codimension() == 0)
            ++minima;

        // A stratum sits in the closure of the face {S} exactly when S belongs to its label.
        std::size_t containing = 0;
        for (PointSet s : faces)
            if (node.contains(s))
                ++containing;
        if (containing != static_cast<std::size_t>(node.codimension()))
            report.fail(to_string(node) + " has codimension " + std::to_string(node.codimension()) +
                        " but lies in " + std::to_string(containing) + " faces");
        if (node.codimension() >= 1 && containing == 0)
            report.fail(to_string(node) + " lies in no face");
        if (faces_containing(node).size() != containing)
            report.fail("faces_containing disagrees with the closure count at " + to_string(node));
    }
    if (minima != 1)
        report.fail("expected a unique open stratum, found " + std::to_string(minima));

    for (std::size_t a = 0; a < faces.size(); ++a) {
        for (std::size_t b = a + 1; b < faces.size(); ++b) {
            ++report.face_pairs_checked;
            const PointSet s = faces[a], t = faces[b];
            const StratumLabel meet(ground, {s, t});
            auto it = index.find(meet);
            if (!compatible(s, t)) {
                if (it != index.end())
                    report.fail("incompatible faces " + to_string(s) + ", " + to_string(t) + " share a stratum");
                continue;
            }
            if (it == index.end()) {
                report.fail("faces " + to_string(s) + ", " + to_string(t) + " do not meet in a stratum");
                continue;
            }
            for (PointSet face : {s, t}) {
                auto f = index.find(StratumLabel(ground, {face}));
                const auto& covers = up[f->second];
                if (std::find(covers.begin(), covers.end(), it->second) == covers.end())
                    report.fail(to_string(meet) + " is not codimension one inside the face {" + to_string(face) + "}");
            }
        }
    }
    return report;
}

} // namespace confcoh
