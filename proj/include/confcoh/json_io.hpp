#pragma once

// JSON documents emitted by the command-line tool. Coefficients and pairing values are
// exact and always written as strings.

#include "json.hpp"

#include "arnold.hpp"
#include "coproduct.hpp"
#include "expression.hpp"
#include "pairing.hpp"
#include "strata.hpp"

namespace confcoh {

inline nlohmann::json to_json(const TensorTerm& term)
{
    return {{"q", term.left_grading.q},  {"t", term.left_grading.t}, {"r", term.right_grading.q},
            {"s", term.right_grading.t}, {"left", to_string(term.left)}, {"right", to_string(term.right)},
            {"coeff", term.coefficient.str()}};
}

inline nlohmann::json to_json(const TensorSum& sum)
{
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& term : sum.terms)
        terms.push_back(to_json(term));
    return terms;
}

// Reads back the records written by to_json(TensorSum).
inline TensorSum tensor_sum_from_json(const nlohmann::json& doc, const RingParams& params, ColoredGrading source)
{
    TensorSum sum{params.with_points(source.total()), source, {}};
    for (const auto& rec : doc) {
        const ColoredGrading lg(rec.at("q").get<int>(), rec.at("t").get<int>());
        const ColoredGrading rg(rec.at("r").get<int>(), rec.at("s").get<int>());
        auto single = [&](const std::string& text, ColoredGrading g) {
            const Element e = parse_element(text, params.with_points(g.total()));
            if (e.size() != 1 || e.terms().begin()->second != 1)
                throw parse_error("tensor factor '" + text + "' is not a basis monomial");
            return e.terms().begin()->first;
        };
        sum.terms.push_back({lg, rg, single(rec.at("left").get<std::string>(), lg),
                             single(rec.at("right").get<std::string>(), rg),
                             Integer(rec.at("coeff").get<std::string>())});
    }
    sum.check_invariants();
    return sum;
}

inline nlohmann::json to_json(const EvalResult& result, const ClassLabel& a1, const ClassLabel& a2)
{
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& audit : result.terms) {
        nlohmann::json rec = to_json(audit.term);
        rec["left_value"] = to_string(audit.left_value);
        rec["right_value"] = to_string(audit.right_value);
        rec["product"] = to_string(audit.product);
        terms.push_back(std::move(rec));
    }
    return {{"value", to_string(result.value)},
            {"a1", a1.name},
            {"a2", a2.name},
            {"formula", symbolic_formula(result, a1, a2)},
            {"terms", std::move(terms)},
            {"warnings", result.warnings}};
}

inline nlohmann::json to_json(const ParityCertificate& cert)
{
    nlohmann::json spaces = nlohmann::json::array();
    for (const auto& space : cert.spaces)
        spaces.push_back({{"points", space.points}, {"degrees", space.degrees}, {"parity", space.parity}});
    nlohmann::json splits = nlohmann::json::array();
    for (const auto& split : cert.splits)
        splits.push_back({{"a", split.a},
                          {"b", split.b},
                          {"smash_parity", split.smash_parity},
                          {"required_parity", split.required_parity},
                          {"vanishes", split.vanishes}});
    return {{"n", cert.n},
            {"points", cert.total_points},
            {"beta_degree", cert.beta_degree},
            {"quotient_support", std::move(spaces)},
            {"splits", std::move(splits)},
            {"valid", verify_certificate(cert)}};
}

inline nlohmann::json to_json(const FacesReport& report)
{
    return {{"q", report.ground},
            {"passed", report.passed},
            {"strata", report.strata_checked},
            {"faces", report.faces},
            {"face_pairs", report.face_pairs_checked},
            {"counterexamples", report.counterexamples}};
}

} // namespace confcoh
