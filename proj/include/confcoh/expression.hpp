#pragma once

// Text form of ring elements:  w(1,2)*w(3,4) - 2*w(1,3) + 5
//
//   expr   := ['+'|'-'] term (('+'|'-') term)*
//   term   := factor ('*' factor)*
//   factor := integer | 'w(' integer ',' integer ')'

#include <cctype>
#include <string>
#include <string_view>

#include "arnold.hpp"

namespace confcoh {

namespace detail {

    class ExpressionParser {
    public:
        ExpressionParser(std::string_view text, const RingParams& params) : text_(text), params_(params) {}

        FormalSum parse()
        {
            FormalSum sum{params_, {}};
            skip_space();
            if (at_end())
                throw error("empty expression");
            bool negative = false;
            if (peek() == '+' || peek() == '-') {
                negative = peek() == '-';
                ++pos_;
            }
            sum.terms.push_back(term(negative));
            skip_space();
            while (!at_end()) {
                char op = peek();
                if (op != '+' && op != '-')
                    throw error(std::string("unexpected '") + op + "'");
                ++pos_;
                sum.terms.push_back(term(op == '-'));
                skip_space();
            }
            return sum;
        }

    private:
        WordTerm term(bool negative)
        {
            WordTerm t{{}, negative ? Integer(-1) : Integer(1)};
            factor(t);
            skip_space();
            while (!at_end() && peek() == '*') {
                ++pos_;
                factor(t);
                skip_space();
            }
            return t;
        }

        void factor(WordTerm& t)
        {
            skip_space();
            if (at_end())
                throw error("expected a factor");
            if (std::isdigit(static_cast<unsigned char>(peek()))) {
                t.coefficient *= Integer(digits());
                return;
            }
            if (peek() != 'w')
                throw error(std::string("unexpected '") + peek() + "'");
            ++pos_;
            expect('(');
            int i = index();
            expect(',');
            int j = index();
            expect(')');
            if (i > params_.q || j > params_.q)
                throw error("index exceeds q = " + std::to_string(params_.q) + " in w(" + std::to_string(i) + "," +
                            std::to_string(j) + ")");
            if (i < 1 || j < 1 || i == j)
                throw error("invalid generator w(" + std::to_string(i) + "," + std::to_string(j) + ")");
            auto [gen, sign] = canonicalize_generator(i, j, params_);
            if (sign < 0)
                t.coefficient = -t.coefficient;
            t.word.push_back(gen);
        }

        int index()
        {
            std::string d = digits();
            if (d.size() > 6)
                throw error("index too large");
            return std::stoi(d);
        }

        std::string digits()
        {
            skip_space();
            std::size_t start = pos_;
            while (!at_end() && std::isdigit(static_cast<unsigned char>(peek())))
                ++pos_;
            if (start == pos_)
                throw error("expected a number");
            return std::string(text_.substr(start, pos_ - start));
        }

        void expect(char c)
        {
            skip_space();
            if (at_end() || peek() != c)
                throw error(std::string("expected '") + c + "'");
            ++pos_;
        }

        void skip_space()
        {
            while (!at_end() && std::isspace(static_cast<unsigned char>(peek())))
                ++pos_;
        }
        bool at_end() const { return pos_ >= text_.size(); }
        char peek() const { return text_[pos_]; }

        parse_error error(const std::string& what) const
        {
            return parse_error(what + " at column " + std::to_string(pos_ + 1) + " of '" + std::string(text_) + "'");
        }

        std::string_view text_;
        const RingParams& params_;
        std::size_t pos_ = 0;
    };

} // namespace detail

inline FormalSum parse_formal_sum(std::string_view text, const RingParams& params)
{
    return detail::ExpressionParser(text, params).parse();
}

inline Element parse_element(std::string_view text, const RingParams& params)
{
    return reduce(parse_formal_sum(text, params));
}

inline std::string to_string(const Monomial& m)
{
    if (m.is_unit())
        return "1";
    std::string out;
    for (const auto& g : m.generators()) {
        if (!out.empty())
            out += '*';
        out += "w(" + std::to_string(g.i) + "," + std::to_string(g.j) + ")";
    }
    return out;
}

// Terms are written leading-monomial first (descending monomial order).
inline std::string to_string(const Element& e)
{
    if (e.is_zero())
        return "0";
    std::string out;
    for (auto it = e.terms().rbegin(); it != e.terms().rend(); ++it) {
        const auto& [m, c] = *it;
        const bool negative = c < 0;
        Integer mag = negative ? Integer(-c) : c;
        std::string body;
        if (m.is_unit())
            body = mag.str();
        else if (mag == 1)
            body = to_string(m);
        else
            body = mag.str() + "*" + to_string(m);
        if (out.empty())
            out = (negative ? "-" : "") + body;
        else
            out += (negative ? " - " : " + ") + body;
    }
    return out;
}

} // namespace confcoh
