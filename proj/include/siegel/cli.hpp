/*
   Copyright 2026 The siegel-image Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#ifndef SIEGEL_CLI_HPP
#define SIEGEL_CLI_HPP

#include <cstdint>
#include <fstream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "arith.hpp"
#include "charpoly.hpp"
#include "hecke.hpp"
#include "imgsieve.hpp"
#include "polyring.hpp"
#include "redsieve.hpp"

namespace siegel::cli {

using nlohmann::json;

enum ExitCode : int { ok = 0, math_failure = 1, usage_error = 2 };

namespace detail {

inline json to_json(const IntPolynomial& f) {
    json arr = json::array();
    for (const auto& c : f.coefficients()) arr.push_back(c.get_str());
    return arr;
}

inline json to_json(const ModPolynomial& f) {
    json arr = json::array();
    for (auto c : f.coefficients()) arr.push_back(std::to_string(c));
    return arr;
}

inline json to_json(const ScaledPolynomial& f) {
    return {{"numerator", to_json(f.numerator())}, {"denom_base", f.denom_base()}, {"denom_exp", f.denom_exp()}};
}

inline json to_json(const Factorization& f) {
    json factors = json::array();
    for (const auto& pf : f.factors) factors.push_back(json::array({pf.prime.get_str(), pf.exponent}));
    return {{"sign", f.sign}, {"factors", factors}};
}

inline json to_json(const WitnessTrial& t) {
    json j = {{"p", t.p}, {"eliminates", t.eliminates}};
    if (t.legendre != 0) j["legendre"] = t.legendre;
    if (t.polynomial) j["polynomial"] = to_json(*t.polynomial);
    if (t.value_at_minus_one) j["value_at_minus_one"] = *t.value_at_minus_one;
    if (t.gcd_with_square) j["gcd_with_square"] = to_json(*t.gcd_with_square);
    if (t.divides_order_polynomial) j["divides_order_polynomial"] = *t.divides_order_polynomial;
    return j;
}

inline json to_json(const CaseElimination& e) {
    json j = {{"case", case_id(e.subgroup_case)}, {"eliminated", e.eliminated}, {"note", e.note}};
    j["method"] = e.method ? json(method_name(*e.method)) : json(nullptr);
    j["witness_p"] = e.witness_p ? json(*e.witness_p) : json(nullptr);
    json trials = json::array();
    for (const auto& t : e.trials) trials.push_back(to_json(t));
    j["trials"] = trials;
    return j;
}

inline json weight_json(const FormWeight& w) { return json::array({w.j(), w.k()}); }

inline FormWeight parse_weight(const std::string& text) {
    auto comma = text.find(',');
    if (comma == std::string::npos) throw std::invalid_argument("--weight expects j,k; got '" + text + "'");
    try {
        std::size_t used_j = 0, used_k = 0;
        int j = std::stoi(text.substr(0, comma), &used_j);
        int k = std::stoi(text.substr(comma + 1), &used_k);
        if (used_j != comma || used_k != text.size() - comma - 1) throw std::invalid_argument("trailing characters");
        return FormWeight(j, k);
    } catch (const std::logic_error&) {
        throw std::invalid_argument("--weight expects j,k; got '" + text + "'");
    }
}

inline std::string family_label(InvariantFamily f, const FormWeight& w, std::uint64_t p) {
    return std::string(1, family_letter(f)) + "_{" + std::to_string(w.j()) + "," + std::to_string(w.k()) + "}(" +
           std::to_string(p) + ")";
}

inline std::string join(const std::vector<BigInt>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + v[i].get_str();
    return s;
}

inline void print_certificate_text(std::ostream& out, const ImageCertificate& c) {
    out << "(j,k,ell) = (" << c.weight.j() << "," << c.weight.k() << "," << c.ell << "): " << verdict_name(c.verdict);
    if (c.failed_case) out << " (case " << case_id(*c.failed_case) << " not eliminated)";
    out << '\n';
    for (const auto& e : c.eliminations) {
        out << "  case " << case_id(e.subgroup_case) << ": ";
        if (e.eliminated) {
            out << method_name(*e.method);
            if (e.witness_p) out << " p = " << *e.witness_p;
        } else {
            out << "FAILED";
        }
        if (!e.note.empty()) out << " [" << e.note << "]";
        out << '\n';
        if (!e.eliminated)
            for (const auto& t : e.trials) {
                out << "    p = " << t.p;
                if (t.legendre) out << ", (p/ell) = " << t.legendre;
                if (t.value_at_minus_one) out << ", R_p(-1) mod ell = " << *t.value_at_minus_one;
                if (t.gcd_with_square) out << ", gcd = " << to_string(*t.gcd_with_square);
                if (t.divides_order_polynomial) out << ", R_p | Q^4: " << (*t.divides_order_polynomial ? "yes" : "no");
                out << '\n';
            }
    }
}

}  // namespace detail

/// Entry point for the command-line tool; returns the process exit status.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Frobenius data, reducibility sieves and image certificates for four genus-2 Siegel eigenforms"};
    app.require_subcommand(1);

    std::string weight_text, format = "text", traces_path;
    std::uint64_t prime = 0, ell = 0, lmax = 504;
    std::vector<std::uint64_t> primes, witnesses;
    bool expect_full = false, parallel = false;

    auto add_common = [&](CLI::App* sub, bool needs_weight) {
        auto* opt = sub->add_option("--weight", weight_text, "form weight j,k");
        if (needs_weight) opt->required();
        sub->add_option("--format", format, "output format")->check(CLI::IsMember({"text", "json"}));
        sub->add_option("--traces", traces_path, "extra trace data file (j,k,p,r,tau rows)");
    };

    auto* charpoly_cmd = app.add_subcommand("charpoly", "Frobenius characteristic polynomials at p");
    add_common(charpoly_cmd, true);
    charpoly_cmd->add_option("--prime", prime, "prime p")->required();

    auto* invariants_cmd = app.add_subcommand("invariants", "reducibility invariants A, B, C, D with factorizations");
    add_common(invariants_cmd, true);
    auto* inv_prime = invariants_cmd->add_option("--prime", prime, "prime p");
    invariants_cmd->add_option("--primes", primes, "comma-separated primes")->delimiter(',')->excludes(inv_prime);

    auto* tables_cmd = app.add_subcommand("tables", "factorization table of A, B, C, D");
    add_common(tables_cmd, true);
    tables_cmd->add_option("--primes", primes, "comma-separated primes (default 2,3)")->delimiter(',');

    auto* sieve_cmd = app.add_subcommand("sieve-reducible", "candidate primes for residual reducibility");
    add_common(sieve_cmd, true);
    sieve_cmd->add_option("--primes", primes, "comma-separated primes (default 2,3)")->delimiter(',');

    auto* certify_cmd = app.add_subcommand("certify", "image certificate for one ell");
    add_common(certify_cmd, true);
    certify_cmd->add_option("--ell", ell, "prime ell >= 7")->required();
    certify_cmd->add_option("--witnesses", witnesses, "comma-separated witness primes")->delimiter(',');
    certify_cmd->add_flag("--expect-full", expect_full, "exit 1 unless the verdict is FULL_IMAGE");

    auto* range_cmd = app.add_subcommand("certify-range", "image certificates for all primes 7 <= ell <= lmax");
    add_common(range_cmd, true);
    range_cmd->add_option("--lmax", lmax, "largest ell (default 504)");
    range_cmd->add_option("--witnesses", witnesses, "comma-separated witness primes")->delimiter(',');
    range_cmd->add_flag("--expect-full", expect_full, "exit 1 if any certificate is EXCEPTIONAL");
    range_cmd->add_flag("--parallel", parallel, "certify primes concurrently");

    auto* weil_cmd = app.add_subcommand("weil-check", "Weil-bound check of the Frobenius charpolys");
    add_common(weil_cmd, true);
    weil_cmd->add_option("--prime", prime, "prime p (default: every prime with data)");

    auto* weights_cmd = app.add_subcommand("weights", "tame inertia weights and the level-one cusp dimension");
    add_common(weights_cmd, true);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? ok : usage_error;
    }

    const bool as_json = format == "json";
    try {
        TraceTable traces = TraceTable::embedded();
        if (!traces_path.empty()) {
            std::ifstream in(traces_path);
            if (!in) throw DataError("cannot open trace file '" + traces_path + "'");
            traces = load_traces(in, traces);
        }
        const FormWeight w = detail::parse_weight(weight_text);
        json doc = {{"inputs", {{"weight", detail::weight_json(w)}}}, {"evidence", json::object()}};
        int status = ok;

        if (*charpoly_cmd) {
            doc["command"] = "charpoly";
            doc["inputs"]["prime"] = prime;
            FrobeniusData fd = frobenius_data(traces, w, prime);
            doc["result"] = {{"charpoly_V", detail::to_json(fd.charpoly_V)},
                             {"orthogonal_R", detail::to_json(fd.orthogonal_R)},
                             {"reduced_S", detail::to_json(fd.reduced_S)}};
            if (!as_json) out << to_string(fd.charpoly_V) << '\n';
        } else if (*invariants_cmd || *tables_cmd) {
            const bool table_mode = static_cast<bool>(*tables_cmd);
            if (prime != 0) primes = {prime};
            if (primes.empty()) primes = {2, 3};
            doc["command"] = table_mode ? "tables" : "invariants";
            doc["inputs"]["primes"] = primes;
            auto entries = invariant_table(traces, w, primes);
            json rows = json::array();
            for (const auto& e : entries)
                rows.push_back({{"family", std::string(1, family_letter(e.family))},
                                {"p", e.p},
                                {"value", e.value.get_str()},
                                {"factorization", detail::to_json(e.factorization)}});
            doc["result"] = {{"entries", rows}};
            if (!as_json && !table_mode) {
                for (const auto& e : entries)
                    out << detail::family_label(e.family, w, e.p) << " = " << e.value.get_str() << " = "
                        << to_string(e.factorization) << '\n';
            } else if (!as_json) {
                out << "Factorizations for (j,k) = (" << w.j() << "," << w.k() << ")\n";
                out << "p";
                for (auto p : primes) out << " | " << p;
                out << '\n';
                for (auto family : all_families) {
                    out << family_letter(family) << "_{" << w.j() << "," << w.k() << "}(p)";
                    for (const auto& e : entries)
                        if (e.family == family) out << " | " << to_string(e.factorization);
                    out << '\n';
                }
            }
        } else if (*sieve_cmd) {
            if (primes.empty()) primes = {2, 3};
            doc["command"] = "sieve-reducible";
            doc["inputs"]["primes"] = primes;
            CandidateReport report = reducible_candidates(traces, w, primes);
            json fams = json::array();
            for (const auto& fc : report.families) {
                json cands = json::array();
                for (const auto& c : fc.candidates) cands.push_back(c.get_str());
                fams.push_back({{"family", std::string(1, family_letter(fc.family))},
                                {"gcd", fc.gcd.get_str()},
                                {"candidates", cands}});
            }
            doc["result"] = {{"validity_bound", report.validity_bound}, {"families", fams}};
            if (!as_json) {
                out << "candidates ell > " << report.validity_bound << " for (j,k) = (" << w.j() << "," << w.k()
                    << ")\n";
                for (const auto& fc : report.families)
                    out << family_letter(fc.family) << ": gcd = " << to_string(factor(fc.gcd)) << "; candidates = {"
                        << detail::join(fc.candidates) << "}\n";
            }
        } else if (*certify_cmd || *range_cmd) {
            WitnessConfig config;
            if (!witnesses.empty()) config.orthogonal = config.twisted_cubic = config.exceptional = witnesses;
            std::vector<ImageCertificate> certs;
            if (*certify_cmd) {
                doc["command"] = "certify";
                doc["inputs"]["ell"] = ell;
                certs.push_back(certify(traces, w, ell, config));
            } else {
                doc["command"] = "certify-range";
                doc["inputs"]["lmax"] = lmax;
                certs = certify_range(traces, w, lmax, config, parallel);
            }
            if (!witnesses.empty()) doc["inputs"]["witnesses"] = witnesses;

            json verdicts = json::array(), evidence = json::array();
            for (const auto& c : certs) {
                verdicts.push_back({{"ell", c.ell},
                                    {"verdict", verdict_name(c.verdict)},
                                    {"failed_case", c.failed_case ? json(case_id(*c.failed_case)) : json(nullptr)}});
                json elims = json::array();
                for (const auto& e : c.eliminations) elims.push_back(detail::to_json(e));
                evidence.push_back({{"ell", c.ell}, {"eliminations", elims}});
                if (!as_json) detail::print_certificate_text(out, c);
                if (expect_full) {
                    if (*certify_cmd && c.verdict != Verdict::full_image) status = math_failure;
                    if (*range_cmd && c.verdict == Verdict::exceptional) status = math_failure;
                }
            }
            if (*certify_cmd) {
                doc["result"] = verdicts[0];
                doc["evidence"] = {{"eliminations", evidence[0]["eliminations"]}};
            } else {
                doc["result"] = {{"certificates", verdicts}};
                doc["evidence"] = {{"certificates", evidence}};
            }
        } else if (*weil_cmd) {
            doc["command"] = "weil-check";
            std::vector<std::uint64_t> ps = prime != 0 ? std::vector<std::uint64_t>{prime} : traces.primes_for(w);
            json rows = json::array();
            for (auto p : ps) {
                bool pass = weil_check(traces, w, p);
                rows.push_back({{"p", p}, {"pass", pass}});
                if (!as_json) out << "p = " << p << ": " << (pass ? "pass" : "FAIL") << '\n';
                if (!pass) status = math_failure;
            }
            doc["inputs"]["primes"] = ps;
            doc["result"] = {{"checks", rows}};
        } else if (*weights_cmd) {
            doc["command"] = "weights";
            WeightList inertia = inertia_weights(w);
            WeightList wedge = wedge_weights(inertia);
            const int cusp = cusp_dim_level1(w.j() + 2);
            doc["result"] = {{"motivic_weight", w.motivic_weight()},
                             {"inertia_weights", inertia.weights()},
                             {"wedge_weights", wedge.weights()},
                             {"cusp_dim_level1_j_plus_2", cusp}};
            if (!as_json) {
                auto list = [](const WeightList& l) {
                    std::string s;
                    for (std::size_t i = 0; i < l.size(); ++i) s += (i ? ", " : "") + std::to_string(l.weights()[i]);
                    return "{" + s + "}";
                };
                out << "motivic weight w = " << w.motivic_weight() << '\n'
                    << "inertia weights: " << list(inertia) << '\n'
                    << "exterior square weights: " << list(wedge) << '\n'
                    << "dim S_" << w.j() + 2 << "(SL_2(Z)) = " << cusp << '\n';
            }
        }

        if (as_json) out << doc.dump(2) << '\n';
        return status;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return usage_error;
    } catch (const DataError& e) {
        err << "error: " << e.what() << '\n';
        return usage_error;
    }
}

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    std::vector<const char*> argv;
    argv.reserve(args.size() + 1);
    argv.push_back("siegel-image");
    for (const auto& a : args) argv.push_back(a.c_str());
    return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace siegel::cli

#endif  // SIEGEL_CLI_HPP
