#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "errors.hpp"

namespace confcoh {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline bool is_prime(std::uint64_t p)
{
    if (p < 2)
        return false;
    for (std::uint64_t d = 2; d * d <= p; ++d)
        if (p % d == 0)
            return false;
    return true;
}

// Coefficient ring: the integers, or Z/p for a prime p.
struct Coefficients {
    std::optional<std::uint64_t> modulus;

    static Coefficients integers() { return {}; }
    static Coefficients mod(std::uint64_t p)
    {
        if (!is_prime(p))
            throw domain_error("coefficient modulus " + std::to_string(p) + " is not prime");
        return {p};
    }

    // Canonical representative: unchanged over Z, in [0, p) over Z/p.
    Integer normalize(Integer v) const
    {
        if (!modulus)
            return v;
        Integer p = *modulus;
        v %= p;
        if (v < 0)
            v += p;
        return v;
    }

    // The image of (-1)^e.
    Integer sign(int e) const { return normalize(e % 2 ? Integer(-1) : Integer(1)); }

    bool operator==(const Coefficients&) const = default;

    std::string name() const { return modulus ? "Z/" + std::to_string(*modulus) : "Z"; }
};

inline std::string to_string(const Integer& v) { return v.str(); }

inline std::string to_string(const Rational& v)
{
    auto num = boost::multiprecision::numerator(v);
    auto den = boost::multiprecision::denominator(v);
    if (den == 1)
        return num.str();
    return num.str() + "/" + den.str();
}

// Accepts "17", "-3", "4/6" (reduced on construction).
inline Rational parse_rational(std::string_view text)
{
    auto parse_int = [&](std::string_view s) -> Integer {
        std::size_t k = 0;
        if (!s.empty() && (s[0] == '-' || s[0] == '+'))
            k = 1;
        if (k == s.size())
            throw parse_error("malformed number '" + std::string(text) + "'");
        for (std::size_t i = k; i < s.size(); ++i)
            if (s[i] < '0' || s[i] > '9')
                throw parse_error("malformed number '" + std::string(text) + "'");
        return Integer(std::string(s[0] == '+' ? s.substr(1) : s));
    };
    auto slash = text.find('/');
    if (slash == std::string_view::npos)
        return Rational(parse_int(text));
    Integer num = parse_int(text.substr(0, slash));
    Integer den = parse_int(text.substr(slash + 1));
    if (den == 0)
        throw parse_error("zero denominator in '" + std::string(text) + "'");
    return Rational(num, den);
}

} // namespace confcoh
