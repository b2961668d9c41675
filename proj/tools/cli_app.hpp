#pragma once

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "confcoh/confcoh.hpp"

namespace confcoh::cli {

enum ExitCode : int {
    ok = 0,
    usage = 1,
    parse_failure = 2,
    domain_failure = 3,
    missing_entry = 4,
    unsupported = 5,
    io_failure = 6,
    check_failed = 7,
};

inline const char* exit_code_help =
    "Exit status: 0 success, 1 usage error, 2 parse error, 3 domain error, 4 missing pairing entry "
    "(--strict), 5 unsupported arguments, 6 unreadable file, 7 verification found a counterexample.";

namespace detail {

    inline ClassLabel parse_class(const std::string& text)
    {
        auto colon = text.rfind(':');
        if (colon == std::string::npos)
            return ClassLabel(text);
        std::string degree = text.substr(colon + 1);
        if (degree.empty() || degree.find_first_not_of("0123456789") != std::string::npos)
            throw parse_error("class label '" + text + "' must be NAME or NAME:DEGREE");
        return ClassLabel(text.substr(0, colon), std::stoi(degree));
    }

    inline Coefficients coefficients(std::optional<std::uint64_t> mod)
    {
        return mod ? Coefficients::mod(*mod) : Coefficients::integers();
    }

    inline Monomial single_monomial(const std::string& text, const RingParams& params)
    {
        const Element e = parse_element(text, params);
        if (e.size() != 1 || e.terms().begin()->second != 1)
            throw domain_error("'" + text + "' is not a single basis monomial (normal form: " + to_string(e) + ")");
        return e.terms().begin()->first;
    }

    inline std::string read_file(const std::string& path)
    {
        std::ifstream in(path, std::ios::binary);
        if (!in)
            throw std::ios_base::failure("cannot open '" + path + "'");
        std::ostringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }

    inline int report(std::ostream& err, ExitCode code, const std::string& kind, const std::string& message)
    {
        nlohmann::json rec = {{"error", kind}, {"message", message}, {"exit_code", static_cast<int>(code)}};
        err << rec.dump() << "\n";
        return code;
    }

} // namespace detail

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Exact cohomology of compactified configuration spaces C_q(R^n)", "confcoh"};
    app.footer(exit_code_help);
    app.require_subcommand(1);

    int q = 0, n = 3, Q = 0, T = 0;
    std::optional<std::uint64_t> mod;
    std::optional<int> degree, max_codim, degree_shift;
    std::string expression, table_path, a1_text, a2_text;
    bool dot = false, strict = false;
    int sq = 0, st = 0, sr = 0, ss = 0;

    auto* reduce_cmd = app.add_subcommand("reduce", "Normal form of an expression in H*(C_q)");
    reduce_cmd->add_option("expression", expression, "e.g. \"w(1,3)*w(2,3)\"")->required();
    reduce_cmd->add_option("--q", q, "number of points")->required();
    reduce_cmd->add_option("--n", n, "ambient dimension")->capture_default_str();
    reduce_cmd->add_option("--mod", mod, "work over Z/p");

    auto* basis_cmd = app.add_subcommand("basis", "Admissible monomial basis");
    basis_cmd->add_option("--q", q)->required();
    basis_cmd->add_option("--n", n)->capture_default_str();
    basis_cmd->add_option("--degree", degree, "restrict to one cohomological degree");

    auto* poincare_cmd = app.add_subcommand("poincare", "Poincare polynomial of C_q(R^n)");
    poincare_cmd->add_option("--q", q)->required();
    poincare_cmd->add_option("--n", n)->capture_default_str();

    auto* qdims_cmd = app.add_subcommand("qdims", "Ranks of H^k(C_q / boundary; Q)");
    qdims_cmd->add_option("--q", q)->required();
    qdims_cmd->add_option("--n", n)->capture_default_str();

    auto* strata_cmd = app.add_subcommand("strata", "Stratum labels of C_q");
    strata_cmd->add_option("--q", q, "ground set size")->required();
    strata_cmd->add_option("--max-codim", max_codim);
    strata_cmd->add_flag("--dot", dot, "emit the face poset in DOT format");

    auto* faces_cmd = app.add_subcommand("verify-faces", "Check the manifold-with-faces conditions");
    faces_cmd->add_option("--q", q)->required();

    auto* sigma_cmd = app.add_subcommand("sigma", "Shuffle permutation for C_{q,t} x C_{r,s}");
    sigma_cmd->add_option("q", sq)->required();
    sigma_cmd->add_option("t", st)->required();
    sigma_cmd->add_option("r", sr)->required();
    sigma_cmd->add_option("s", ss)->required();

    auto* coproduct_cmd = app.add_subcommand("coproduct", "Coproduct of a dual-basis class on C_{Q,T}");
    coproduct_cmd->add_option("expression", expression)->required();
    coproduct_cmd->add_option("--Q", Q, "points on the knot")->required();
    coproduct_cmd->add_option("--T", T, "free points")->required();
    coproduct_cmd->add_option("--n", n)->capture_default_str();

    auto* eval_cmd = app.add_subcommand("eval", "Evaluate on a connect-sum via the product formula");
    eval_cmd->add_option("--beta", expression)->required();
    eval_cmd->add_option("--Q", Q)->required();
    eval_cmd->add_option("--T", T)->required();
    eval_cmd->add_option("--table", table_path, "pairing table JSON")->required();
    eval_cmd->add_option("--a1", a1_text, "NAME or NAME:DEGREE")->required();
    eval_cmd->add_option("--a2", a2_text, "NAME or NAME:DEGREE")->required();
    eval_cmd->add_option("--n", n)->capture_default_str();
    eval_cmd->add_flag("--strict", strict, "absent table entries are errors");
    eval_cmd->add_option("--degree-shift", degree_shift, "enforce deg a1 + deg a2 = deg beta - shift");

    auto* bracket_cmd = app.add_subcommand("bracket", "Bracket pairing (vanishes by parity) with certificate");
    bracket_cmd->add_option("--beta", expression)->required();
    bracket_cmd->add_option("--Q", Q)->required();
    bracket_cmd->add_option("--T", T)->required();
    bracket_cmd->add_option("--a1", a1_text)->required();
    bracket_cmd->add_option("--a2", a2_text)->required();
    bracket_cmd->add_option("--n", n)->capture_default_str();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    }
    catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    }
    catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    }
    catch (const CLI::ParseError& e) {
        return detail::report(err, usage, "usage", e.what());
    }

    try {
        if (*reduce_cmd) {
            const RingParams params(n, q, detail::coefficients(mod));
            out << to_string(parse_element(expression, params)) << "\n";
        }
        else if (*basis_cmd) {
            for (const auto& m : basis(RingParams(n, q), degree))
                out << to_string(m) << "\n";
        }
        else if (*poincare_cmd) {
            out << poincare_polynomial(RingParams(n, q)).str() << "\n";
        }
        else if (*qdims_cmd) {
            nlohmann::json ranks = nlohmann::json::object();
            for (const auto& [k, rank] : quotient_cohomology_dims(RingParams(n, q)))
                ranks[std::to_string(k)] = rank.str();
            out << nlohmann::json{{"q", q}, {"n", n}, {"ranks", ranks}}.dump() << "\n";
        }
        else if (*strata_cmd) {
            if (q < 0)
                throw domain_error("q must be >= 0");
            if (dot)
                out << face_poset(q, max_codim).to_dot();
            else
                for (const auto& label : enumerate_strata(q, max_codim))
                    out << to_string(label) << "\n";
        }
        else if (*faces_cmd) {
            if (q < 0)
                throw domain_error("q must be >= 0");
            const FacesReport report = verify_faces_axioms(q);
            out << to_json(report).dump() << "\n";
            if (!report.passed)
                return check_failed;
        }
        else if (*sigma_cmd) {
            const ShufflePermutation perm = sigma(sq, st, sr, ss);
            out << nlohmann::json{{"q", sq}, {"t", st}, {"r", sr}, {"s", ss}, {"map", perm.images()}}.dump() << "\n";
        }
        else if (*coproduct_cmd) {
            const ColoredGrading g(Q, T);
            const Element e = parse_element(expression, RingParams(n, g.total()));
            out << to_json(coproduct(e, g)).dump() << "\n";
        }
        else if (*eval_cmd) {
            const ColoredGrading g(Q, T);
            const ClassLabel a1 = detail::parse_class(a1_text), a2 = detail::parse_class(a2_text);
            const PairingTable table = load_pairing_table(detail::read_file(table_path), TableLoadOptions{n, {}});
            const Element beta = parse_element(expression, RingParams(n, g.total()));
            const EvalResult result = eval_connect_sum(beta, g, a1, a2, table, EvalOptions{strict, degree_shift});
            out << to_json(result, a1, a2).dump() << "\n";
        }
        else if (*bracket_cmd) {
            const ColoredGrading g(Q, T);
            const ClassLabel a1 = detail::parse_class(a1_text), a2 = detail::parse_class(a2_text);
            if (n % 2 == 0)
                throw unsupported_error("bracket vanishing certificate is only available for odd n");
            const Monomial beta = detail::single_monomial(expression, RingParams(n, g.total()));
            const BracketResult result = eval_bracket(beta, g, a1, a2, n);
            out << nlohmann::json{{"value", to_string(result.value)}, {"certificate", to_json(result.certificate)}}.dump()
                << "\n";
        }
    }
    catch (const parse_error& e) {
        return detail::report(err, parse_failure, "parse", e.what());
    }
    catch (const domain_error& e) {
        return detail::report(err, domain_failure, "domain", e.what());
    }
    catch (const missing_entry_error& e) {
        return detail::report(err, missing_entry, "missing_entry", e.what());
    }
    catch (const unsupported_error& e) {
        return detail::report(err, unsupported, "unsupported", e.what());
    }
    catch (const std::ios_base::failure& e) {
        return detail::report(err, io_failure, "io", e.what());
    }
    return ok;
}

} // namespace confcoh::cli
