#pragma once

// Evaluation of configuration-space classes on connect-sums of knots. Knot homology
// classes are opaque labels; their pairings with dual-basis classes come from a
// user-supplied table. The connect-sum product formula expands
//     <beta, a1 # a2> = sum_i c_i <theta_i, a1> <eta_i, a2>
// over the coproduct sum_i c_i theta_i (x) eta_i of beta.

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "arnold.hpp"
#include "coproduct.hpp"
#include "errors.hpp"
#include "expression.hpp"
#include "scalar.hpp"

namespace confcoh {

struct ClassLabel {
    std::string name;
    int degree = 0;

    ClassLabel() = default;
    ClassLabel(std::string name_, int degree_ = 0) : name(std::move(name_)), degree(degree_)
    {
        if (name.empty())
            throw domain_error("class label needs a name");
        if (degree < 0)
            throw domain_error("class label degree must be >= 0");
    }
};

struct PairingKey {
    ColoredGrading grading;
    Monomial monomial;
    std::string class_name;

    friend bool operator<(const PairingKey& a, const PairingKey& b)
    {
        return std::tie(a.grading, a.monomial, a.class_name) < std::tie(b.grading, b.monomial, b.class_name);
    }
    friend bool operator==(const PairingKey&, const PairingKey&) = default;
};

inline std::string to_string(const PairingKey& key)
{
    return "<" + to_string(key.monomial) + "@(" + std::to_string(key.grading.q) + "," +
           std::to_string(key.grading.t) + ")|" + key.class_name + ">";
}

class PairingTable {
public:
    PairingTable() = default;
    explicit PairingTable(int n) : n_(n)
    {
        if (n < 3)
            throw domain_error("ambient dimension n must be >= 3");
    }

    int n() const { return n_; }
    RingParams params(int points) const { return RingParams(n_, points); }
    const std::map<PairingKey, Rational>& entries() const { return entries_; }
    bool empty() const { return entries_.empty(); }

    std::optional<Rational> find(const PairingKey& key) const
    {
        auto it = entries_.find(key);
        if (it == entries_.end())
            return std::nullopt;
        return it->second;
    }

    // Conflicting redefinition of a key is an error; an identical repeat is accepted.
    void set(const PairingKey& key, const Rational& value)
    {
        auto [it, inserted] = entries_.emplace(key, value);
        if (!inserted && it->second != value)
            throw domain_error("conflicting values for " + to_string(key) + ": " + confcoh::to_string(it->second) +
                               " and " + confcoh::to_string(value));
    }

    // Canonicalizes a monomial written in any order/orientation, e.g. w(2,1) = -w(1,2) for odd n;
    // the sign is absorbed into the value.
    void set(ColoredGrading grading, std::string_view monomial_text, const std::string& class_name,
             const Rational& value)
    {
        const Element e = parse_element(monomial_text, params(grading.total()));
        if (e.size() != 1)
            throw domain_error("pairing key '" + std::string(monomial_text) +
                               "' does not reduce to a single basis monomial");
        const auto& [m, c] = *e.terms().begin();
        set(PairingKey{grading, m, class_name}, value / Rational(c));
    }

    void declare_degree(const std::string& class_name, int degree)
    {
        auto [it, inserted] = class_degrees_.emplace(class_name, degree);
        if (!inserted && it->second != degree)
            throw domain_error("class '" + class_name + "' declared with degrees " + std::to_string(it->second) +
                               " and " + std::to_string(degree));
    }
    std::optional<int> class_degree(const std::string& class_name) const
    {
        auto it = class_degrees_.find(class_name);
        if (it == class_degrees_.end())
            return std::nullopt;
        return it->second;
    }

private:
    int n_ = 3;
    std::map<PairingKey, Rational> entries_;
    std::map<std::string, int> class_degrees_;
};

struct TableLoadOptions {
    int n = 3;
    // When set, an entry carrying "class_degree" must satisfy deg(monomial) - shift == class_degree.
    std::optional<int> degree_shift;
};

namespace detail {

    // 1-based line on which each element of the top-level JSON array starts.
    inline std::vector<std::size_t> top_level_element_lines(std::string_view text)
    {
        std::vector<std::size_t> lines;
        std::size_t line = 1;
        int depth = 0;
        bool in_string = false, escaped = false, expecting = false;
        for (char ch : text) {
            if (ch == '\n')
                ++line;
            if (in_string) {
                if (escaped)
                    escaped = false;
                else if (ch == '\\')
                    escaped = true;
                else if (ch == '"')
                    in_string = false;
                continue;
            }
            if (std::isspace(static_cast<unsigned char>(ch)))
                continue;
            if (depth == 1 && expecting && ch != ']') {
                lines.push_back(line);
                expecting = false;
            }
            switch (ch) {
            case '"':
                in_string = true;
                break;
            case '[':
            case '{':
                ++depth;
                if (depth == 1 && ch == '[')
                    expecting = true;
                break;
            case ']':
            case '}':
                --depth;
                break;
            case ',':
                if (depth == 1)
                    expecting = true;
                break;
            default:
                break;
            }
        }
        return lines;
    }

    inline std::size_t line_of_offset(std::string_view text, std::size_t offset)
    {
        std::size_t line = 1;
        for (std::size_t k = 0; k < offset && k < text.size(); ++k)
            if (text[k] == '\n')
                ++line;
        return line;
    }

} // namespace detail

// Document: a JSON array of {"q": int, "t": int, "monomial": "w(1,2)*w(3,4)", "class": "a1",
// "value": int | "p/q", optional "class_degree": int}. An empty document is an empty table.
inline PairingTable load_pairing_table(std::string_view document, const TableLoadOptions& options = {})
{
    PairingTable table(options.n);
    if (document.find_first_not_of(" \t\r\n") == std::string_view::npos)
        return table;

    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(document.begin(), document.end());
    }
    catch (const nlohmann::json::parse_error& e) {
        throw parse_error(std::string("invalid JSON: ") + e.what(), detail::line_of_offset(document, e.byte));
    }
    if (!doc.is_array())
        throw parse_error("pairing table must be a JSON array of records", 1);

    const auto lines = detail::top_level_element_lines(document);
    for (std::size_t k = 0; k < doc.size(); ++k) {
        const std::size_t line = k < lines.size() ? lines[k] : 0;
        const auto& rec = doc[k];
        try {
            if (!rec.is_object())
                throw parse_error("record is not an object");
            for (const char* field : {"q", "t", "monomial", "class", "value"})
                if (!rec.contains(field))
                    throw parse_error(std::string("missing field '") + field + "'");
            for (auto it = rec.begin(); it != rec.end(); ++it)
                if (it.key() != "q" && it.key() != "t" && it.key() != "monomial" && it.key() != "class" &&
                    it.key() != "value" && it.key() != "class_degree")
                    throw parse_error("unknown field '" + it.key() + "'");
            if (!rec["q"].is_number_integer() || !rec["t"].is_number_integer())
                throw parse_error("'q' and 't' must be integers");
            if (!rec["monomial"].is_string() || !rec["class"].is_string())
                throw parse_error("'monomial' and 'class' must be strings");

            const ColoredGrading grading(rec["q"].get<int>(), rec["t"].get<int>());
            const std::string cls = rec["class"].get<std::string>();
            if (cls.empty())
                throw parse_error("empty class name");

            Rational value;
            if (rec["value"].is_number_integer())
                value = Rational(Integer(rec["value"].dump()));
            else if (rec["value"].is_string())
                value = parse_rational(rec["value"].get<std::string>());
            else
                throw parse_error("'value' must be an integer or a \"p/q\" string");

            const std::string text = rec["monomial"].get<std::string>();
            if (rec.contains("class_degree")) {
                if (!rec["class_degree"].is_number_integer() || rec["class_degree"].get<int>() < 0)
                    throw parse_error("'class_degree' must be a nonnegative integer");
                const int class_degree = rec["class_degree"].get<int>();
                table.declare_degree(cls, class_degree);
                if (options.degree_shift) {
                    const Element e = parse_element(text, table.params(grading.total()));
                    for (int d : e.degrees())
                        if (d - *options.degree_shift != class_degree)
                            throw domain_error("degree mismatch: monomial degree " + std::to_string(d) +
                                               " minus shift " + std::to_string(*options.degree_shift) +
                                               " != class degree " + std::to_string(class_degree));
                }
            }
            table.set(grading, text, cls, value);
        }
        catch (const parse_error& e) {
            throw parse_error(std::string("record ") + std::to_string(k) + ": " + e.what(), line);
        }
        catch (const domain_error& e) {
            throw parse_error(std::string("record ") + std::to_string(k) + ": " + e.what(), line);
        }
    }
    return table;
}

struct EvalOptions {
    // Absent keys raise missing_entry_error instead of counting as zero.
    bool strict = false;
    // When set, requires deg a1 + deg a2 == deg(beta) - shift, deg(beta) being the
    // cohomological degree of the basis label.
    std::optional<int> degree_shift;
};

struct AuditTerm {
    TensorTerm term;
    Rational left_value;
    Rational right_value;
    Rational product; // coefficient * left_value * right_value
};

struct EvalResult {
    Rational value;
    std::vector<AuditTerm> terms;
    std::vector<std::string> warnings;

    // Exact agreement of value with the audited products.
    bool consistent() const
    {
        Rational s = 0;
        for (const auto& t : terms)
            s += t.product;
        return s == value;
    }
};

inline EvalResult eval_connect_sum(const Element& beta, ColoredGrading grading, const ClassLabel& a1,
                                   const ClassLabel& a2, const PairingTable& table, const EvalOptions& options = {})
{
    if (beta.params().n != table.n())
        throw domain_error("beta and the pairing table use different n");
    if (options.degree_shift) {
        auto d = beta.degree();
        if (!d)
            throw domain_error("degree check needs a homogeneous beta");
        if (a1.degree + a2.degree != *d - *options.degree_shift)
            throw domain_error("degree mismatch: deg a1 + deg a2 = " + std::to_string(a1.degree + a2.degree) +
                               " but deg beta - shift = " + std::to_string(*d - *options.degree_shift));
    }

    EvalResult result;
    auto lookup = [&](ColoredGrading g, const Monomial& m, const std::string& cls) -> Rational {
        const PairingKey key{g, m, cls};
        if (auto v = table.find(key))
            return *v;
        if (options.strict)
            throw missing_entry_error("missing pairing table entry " + to_string(key));
        result.warnings.push_back("missing entry " + to_string(key) + " treated as 0");
        return 0;
    };

    for (auto& term : coproduct(beta, grading).terms) {
        AuditTerm audit{term, lookup(term.left_grading, term.left, a1.name),
                        lookup(term.right_grading, term.right, a2.name), 0};
        audit.product = Rational(term.coefficient) * audit.left_value * audit.right_value;
        result.value += audit.product;
        result.terms.push_back(std::move(audit));
    }
    return result;
}

inline EvalResult eval_connect_sum(const Monomial& beta, ColoredGrading grading, const ClassLabel& a1,
                                   const ClassLabel& a2, const PairingTable& table, const EvalOptions& options = {})
{
    return eval_connect_sum(Element::monomial(table.params(grading.total()), beta), grading, a1, a2, table, options);
}

// The right-hand side of the product formula with pairings left symbolic:
// <theta@(q,t)|a1>*<eta@(r,s)|a2> + ...
inline std::string symbolic_formula(const EvalResult& result, const ClassLabel& a1, const ClassLabel& a2)
{
    std::string out;
    for (const auto& audit : result.terms) {
        const auto& term = audit.term;
        const bool negative = term.coefficient < 0;
        Integer mag = negative ? Integer(-term.coefficient) : term.coefficient;
        std::string body = (mag == 1 ? std::string() : mag.str() + "*") +
                           to_string(PairingKey{term.left_grading, term.left, a1.name}) + "*" +
                           to_string(PairingKey{term.right_grading, term.right, a2.name});
        if (out.empty())
            out = (negative ? "-" : "") + body;
        else
            out += (negative ? " - " : " + ") + body;
    }
    return out.empty() ? "0" : out;
}

// Support of H*(C_points / boundary) and the parity it is concentrated in.
struct ParitySpace {
    int points = 0;
    std::vector<int> degrees;
    int parity = 0;
};

// For a split N = a + b, the bracket pairing factors through
// H^1(S^1) (x) H^{deg beta - 1}(C_a/bdry ^ C_b/bdry), which vanishes when every degree of the
// smash product has parity different from deg beta - 1.
struct ParitySplit {
    int a = 0;
    int b = 0;
    int smash_parity = 0;
    int required_parity = 0;
    bool vanishes = false;
};

struct ParityCertificate {
    int n = 3;
    int total_points = 0;
    int beta_degree = 0; // degree of the dual class in H*(C_N / boundary)
    std::vector<ParitySpace> spaces;
    std::vector<ParitySplit> splits;
};

// Independent re-check of a certificate against quotient_cohomology_dims.
inline bool verify_certificate(const ParityCertificate& cert)
{
    if (cert.n % 2 == 0 || cert.spaces.size() != static_cast<std::size_t>(cert.total_points + 1))
        return false;
    for (const auto& space : cert.spaces) {
        const auto dims = quotient_cohomology_dims(RingParams(cert.n, space.points));
        std::vector<int> support;
        for (const auto& [k, rank] : dims)
            support.push_back(k);
        if (support != space.degrees)
            return false;
        for (int k : support)
            if (((k % 2) + 2) % 2 != space.parity)
                return false;
    }
    if (cert.splits.size() != static_cast<std::size_t>(cert.total_points + 1))
        return false;
    for (const auto& split : cert.splits) {
        if (split.a + split.b != cert.total_points || !split.vanishes)
            return false;
        const int smash = (cert.spaces[split.a].parity + cert.spaces[split.b].parity) % 2;
        if (smash != split.smash_parity || split.required_parity != (((cert.beta_degree - 1) % 2) + 2) % 2 ||
            smash == split.required_parity)
            return false;
    }
    return true;
}

struct BracketResult {
    Rational value;
    ParityCertificate certificate;
};

// <beta, xi_*([S^1] (x) a1 (x) a2)> = 0 for odd n: every H*(C_k / boundary) is concentrated in
// degrees of parity k*n, so no H^1(S^1) component survives.
inline BracketResult eval_bracket(const Monomial& beta, ColoredGrading grading, const ClassLabel& a1,
                                  const ClassLabel& a2, int n = 3)
{
    (void)a1;
    (void)a2;
    if (n % 2 == 0)
        throw unsupported_error("bracket vanishing certificate is only available for odd n (got n = " +
                                std::to_string(n) + ")");
    const RingParams params(n, grading.total());
    if (beta.max_index() > params.q)
        throw domain_error("beta index exceeds Q+T = " + std::to_string(params.q));

    ParityCertificate cert;
    cert.n = n;
    cert.total_points = params.q;
    cert.beta_degree = n * params.q - beta.degree(params);
    for (int k = 0; k <= params.q; ++k) {
        ParitySpace space;
        space.points = k;
        for (const auto& [deg, rank] : quotient_cohomology_dims(params.with_points(k)))
            space.degrees.push_back(deg);
        space.parity = (k * n) % 2;
        for (int deg : space.degrees)
            if (deg % 2 != space.parity)
                throw domain_error("parity concentration failed for C_" + std::to_string(k));
        cert.spaces.push_back(std::move(space));
    }
    const int required = (cert.beta_degree - 1) % 2 == 0 ? 0 : 1;
    for (int a = 0; a <= params.q; ++a) {
        ParitySplit split;
        split.a = a;
        split.b = params.q - a;
        split.smash_parity = (cert.spaces[a].parity + cert.spaces[split.b].parity) % 2;
        split.required_parity = required;
        split.vanishes = split.smash_parity != required;
        cert.splits.push_back(split);
    }
    return {Rational(0), std::move(cert)};
}

} // namespace confcoh
