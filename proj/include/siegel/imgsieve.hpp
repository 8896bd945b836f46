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

#ifndef SIEGEL_IMGSIEVE_HPP
#define SIEGEL_IMGSIEVE_HPP

#include <algorithm>
#include <cstdint>
#include <future>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "arith.hpp"
#include "charpoly.hpp"
#include "hecke.hpp"
#include "polyring.hpp"

namespace siegel {

/// Maximal subgroups of PGSp_4(F_ell) that the residual image must avoid,
/// grouped the way they are eliminated.
enum class SubgroupCase {
    irreducibility,  // (1)-(2): stabilizer of a line or an isotropic plane
    orthogonal,      // (3)-(4): stabilizer of a non-degenerate line or plane of H
    twisted_cubic,   // (5): stabilizer of a twisted cubic
    exceptional,     // (6)-(7): the finite exceptional groups
};

inline const char* case_id(SubgroupCase c) {
    switch (c) {
        case SubgroupCase::irreducibility: return "1-2";
        case SubgroupCase::orthogonal: return "3-4";
        case SubgroupCase::twisted_cubic: return "5";
        case SubgroupCase::exceptional: return "6-7";
    }
    return "?";
}

enum class Method { weight_bound, witness, assumption };

inline const char* method_name(Method m) {
    switch (m) {
        case Method::weight_bound: return "weight-bound";
        case Method::witness: return "witness";
        case Method::assumption: return "assumption";
    }
    return "?";
}

/// One auxiliary prime tried against one case. Fields not relevant to the
/// case are left empty.
struct WitnessTrial {
    std::uint64_t p = 0;
    /// Legendre symbol (p / ell); orthogonal case only.
    int legendre = 0;
    /// R_p mod ell (orthogonal, exceptional) or the quartic R_p/(t-1) mod ell (twisted cubic).
    std::optional<ModPolynomial> polynomial;
    std::optional<std::uint64_t> value_at_minus_one;
    std::optional<ModPolynomial> gcd_with_square;
    std::optional<bool> divides_order_polynomial;
    bool eliminates = false;
};

/// Outcome of one case: eliminated (with a method), or a failure listing
/// every witness tried.
struct CaseElimination {
    explicit CaseElimination(SubgroupCase c) : subgroup_case(c) {}

    SubgroupCase subgroup_case;
    bool eliminated = false;
    std::optional<Method> method;
    std::optional<std::uint64_t> witness_p;
    std::vector<WitnessTrial> trials;
    std::string note;
};

struct WitnessConfig {
    std::vector<std::uint64_t> orthogonal = {2, 3, 5};
    std::vector<std::uint64_t> twisted_cubic = {2, 3, 5};
    std::vector<std::uint64_t> exceptional = {2, 3, 5, 13};
    /// When false, only witness searches are used.
    bool use_weight_bounds = true;
};

/// (t^16 - 1)(t^20 - 1)(t^24 - 1), raised to the fourth power, over Z.
inline const IntPolynomial& order_polynomial() {
    static const IntPolynomial q4 = [] {
        auto cyc = [](std::size_t n) { return IntPolynomial::monomial(1, n) - IntPolynomial{BigInt(1)}; };
        return pow(cyc(16) * cyc(20) * cyc(24), 4);
    }();
    return q4;
}

/// ell > 2w: eliminates cases (3)-(4) and (5).
inline bool orthogonal_weight_bound(const FormWeight& w, std::uint64_t ell) {
    return ell > 2 * static_cast<std::uint64_t>(w.motivic_weight());
}

/// ell - 1 >= 24w: eliminates cases (6)-(7).
inline bool exceptional_weight_bound(const FormWeight& w, std::uint64_t ell) {
    return ell - 1 >= 24 * static_cast<std::uint64_t>(w.motivic_weight());
}

/// True iff R_p mod ell divides Q(t)^4 in F_ell[t].
inline bool divides_order_polynomial(const TraceTable& traces, const FormWeight& w, std::uint64_t p,
                                     std::uint64_t ell) {
    return divides(reduce_mod(orthogonal_charpoly(traces, w, p), ell), reduce_mod(order_polynomial(), ell));
}

namespace detail {

inline void check_elimination_pre(const TraceTable& traces, const FormWeight& w, std::uint64_t ell,
                                  const std::vector<std::uint64_t>& witnesses) {
    if (ell < 7 || !is_prime(ell)) throw std::invalid_argument("ell must be a prime >= 7, got " + std::to_string(ell));
    if (!is_known_irreducible(w, ell))
        throw std::invalid_argument("residual representation " + to_string(w) + " mod " + std::to_string(ell) +
                                    " is not absolutely irreducible");
    for (auto p : witnesses) {
        if (p == ell) throw std::invalid_argument("witness " + std::to_string(p) + " equals ell");
        (void)traces.trace(w, p, 1);
        (void)traces.trace(w, p, 2);
    }
}

inline CaseElimination by_weight_bound(SubgroupCase c, std::string note) {
    CaseElimination e(c);
    e.eliminated = true;
    e.method = Method::weight_bound;
    e.note = std::move(note);
    return e;
}

inline void accept_witness(CaseElimination& e, std::uint64_t p) {
    e.eliminated = true;
    e.method = Method::witness;
    e.witness_p = p;
}

}  // namespace detail

/// Cases (3)-(4). A non-square p mod ell would force -1 to be a root of
/// R_p mod ell; a witness is such a p with R_p(-1) != 0 mod ell.
inline CaseElimination eliminate_orthogonal(const TraceTable& traces, const FormWeight& w, std::uint64_t ell,
                                            const std::vector<std::uint64_t>& witnesses,
                                            bool use_weight_bound = true) {
    detail::check_elimination_pre(traces, w, ell, witnesses);
    const auto mw = static_cast<std::uint64_t>(w.motivic_weight());
    if (use_weight_bound && orthogonal_weight_bound(w, ell))
        return detail::by_weight_bound(SubgroupCase::orthogonal,
                                       "ell > 2w: " + std::to_string(ell) + " > " + std::to_string(2 * mw));

    CaseElimination e(SubgroupCase::orthogonal);
    for (auto p : witnesses) {
        WitnessTrial trial;
        trial.p = p;
        trial.legendre = legendre_symbol(static_cast<std::int64_t>(p), ell);
        if (trial.legendre == -1) {
            ModPolynomial r = reduce_mod(orthogonal_charpoly(traces, w, p), ell);
            trial.value_at_minus_one = r.evaluate(ell - 1);
            trial.polynomial = std::move(r);
            trial.eliminates = *trial.value_at_minus_one != 0;
        }
        e.trials.push_back(std::move(trial));
        if (e.trials.back().eliminates) {
            detail::accept_witness(e, p);
            return e;
        }
    }
    e.note = "no non-square witness p with R_p(-1) != 0 mod " + std::to_string(ell);
    return e;
}

/// Case (5). Under this subgroup Q_p(t) and Q_p(t^2) share a root mod ell,
/// where Q_p = R_p/(t-1); a witness is a p for which they are coprime.
inline CaseElimination eliminate_twisted_cubic(const TraceTable& traces, const FormWeight& w, std::uint64_t ell,
                                               const std::vector<std::uint64_t>& witnesses,
                                               bool use_weight_bound = true) {
    detail::check_elimination_pre(traces, w, ell, witnesses);
    const auto mw = static_cast<std::uint64_t>(w.motivic_weight());
    if (use_weight_bound && orthogonal_weight_bound(w, ell))
        return detail::by_weight_bound(SubgroupCase::twisted_cubic,
                                       "ell > 2w: " + std::to_string(ell) + " > " + std::to_string(2 * mw));

    CaseElimination e(SubgroupCase::twisted_cubic);
    for (auto p : witnesses) {
        WitnessTrial trial;
        trial.p = p;
        ModPolynomial s = reduce_mod(reduced_quartic(traces, w, p), ell);
        ModPolynomial g = gcd(s, substitute_square(s));
        trial.eliminates = g.is_one();
        trial.polynomial = std::move(s);
        trial.gcd_with_square = std::move(g);
        e.trials.push_back(std::move(trial));
        if (e.trials.back().eliminates) {
            detail::accept_witness(e, p);
            return e;
        }
    }
    e.note = "Q_p(t) and Q_p(t^2) share a factor mod " + std::to_string(ell) + " for every witness";
    return e;
}

/// Cases (6)-(7). Every element of these groups has projective order dividing
/// 16, 20 or 24, so R_p mod ell would divide Q(t)^4; a witness is a p where it does not.
inline CaseElimination eliminate_exceptional(const TraceTable& traces, const FormWeight& w, std::uint64_t ell,
                                             const std::vector<std::uint64_t>& witnesses,
                                             bool use_weight_bound = true) {
    detail::check_elimination_pre(traces, w, ell, witnesses);
    const auto mw = static_cast<std::uint64_t>(w.motivic_weight());
    if (use_weight_bound && exceptional_weight_bound(w, ell))
        return detail::by_weight_bound(SubgroupCase::exceptional, "ell - 1 >= 24w: " + std::to_string(ell - 1) +
                                                                      " >= " + std::to_string(24 * mw));

    CaseElimination e(SubgroupCase::exceptional);
    const ModPolynomial q4 = reduce_mod(order_polynomial(), ell);
    for (auto p : witnesses) {
        WitnessTrial trial;
        trial.p = p;
        ModPolynomial r = reduce_mod(orthogonal_charpoly(traces, w, p), ell);
        trial.divides_order_polynomial = divides(r, q4);
        trial.eliminates = !*trial.divides_order_polynomial;
        trial.polynomial = std::move(r);
        e.trials.push_back(std::move(trial));
        if (e.trials.back().eliminates) {
            detail::accept_witness(e, p);
            return e;
        }
    }
    e.note = "R_p divides Q(t)^4 mod " + std::to_string(ell) + " for every witness";
    return e;
}

/// Re-checks an elimination from its recorded payload: the inequality for a
/// weight bound, or the Legendre symbol / value / gcd / division for a witness.
inline bool verify_elimination(const CaseElimination& e, const FormWeight& w, std::uint64_t ell) {
    if (!e.eliminated || !e.method) return false;
    switch (*e.method) {
        case Method::assumption:
            return e.subgroup_case == SubgroupCase::irreducibility && is_known_irreducible(w, ell);
        case Method::weight_bound:
            if (e.subgroup_case == SubgroupCase::exceptional) return exceptional_weight_bound(w, ell);
            if (e.subgroup_case == SubgroupCase::orthogonal || e.subgroup_case == SubgroupCase::twisted_cubic)
                return orthogonal_weight_bound(w, ell);
            return false;
        case Method::witness:
            break;
    }
    if (!e.witness_p) return false;
    auto it = std::find_if(e.trials.begin(), e.trials.end(), [&](const WitnessTrial& t) { return t.p == *e.witness_p; });
    if (it == e.trials.end() || !it->polynomial || it->polynomial->modulus() != ell || *e.witness_p == ell) return false;
    const ModPolynomial& poly = *it->polynomial;
    switch (e.subgroup_case) {
        case SubgroupCase::orthogonal:
            return legendre_symbol(static_cast<std::int64_t>(*e.witness_p), ell) == -1 && poly.degree() == 5 &&
                   poly.evaluate(ell - 1) != 0;
        case SubgroupCase::twisted_cubic:
            return poly.degree() == 4 && gcd(poly, substitute_square(poly)).is_one();
        case SubgroupCase::exceptional:
            return poly.degree() == 5 && !divides(poly, reduce_mod(order_polynomial(), ell));
        case SubgroupCase::irreducibility:
            return false;
    }
    return false;
}

/// As above, and additionally checks that the recorded polynomial is the
/// reduction of the trace data.
inline bool verify_elimination(const CaseElimination& e, const FormWeight& w, std::uint64_t ell,
                               const TraceTable& traces) {
    if (!verify_elimination(e, w, ell)) return false;
    if (e.method != Method::witness) return true;
    const auto& trial = *std::find_if(e.trials.begin(), e.trials.end(),
                                      [&](const WitnessTrial& t) { return t.p == *e.witness_p; });
    const ModPolynomial expected = e.subgroup_case == SubgroupCase::twisted_cubic
                                       ? reduce_mod(reduced_quartic(traces, w, trial.p), ell)
                                       : reduce_mod(orthogonal_charpoly(traces, w, trial.p), ell);
    return expected == *trial.polynomial;
}

enum class Verdict { full_image, exceptional, not_applicable };

inline const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::full_image: return "FULL_IMAGE";
        case Verdict::exceptional: return "EXCEPTIONAL";
        case Verdict::not_applicable: return "NOT_APPLICABLE";
    }
    return "?";
}

struct ImageCertificate {
    FormWeight weight;
    std::uint64_t ell;
    Verdict verdict;
    std::vector<CaseElimination> eliminations;
    std::optional<SubgroupCase> failed_case;
};

/// Runs every case for (w, ell). A witness equal to ell is dropped.
inline ImageCertificate certify(const TraceTable& traces, const FormWeight& w, std::uint64_t ell,
                                const WitnessConfig& config = {}) {
    if (ell < 7 || !is_prime(ell)) throw std::invalid_argument("certify: ell must be a prime >= 7");
    ImageCertificate cert{w, ell, Verdict::not_applicable, {}, std::nullopt};

    CaseElimination irreducible(SubgroupCase::irreducibility);
    if (!is_known_irreducible(w, ell)) {
        irreducible.note = "residual representation is reducible mod " + std::to_string(ell);
        cert.eliminations.push_back(std::move(irreducible));
        cert.failed_case = SubgroupCase::irreducibility;
        return cert;
    }
    irreducible.eliminated = true;
    irreducible.method = Method::assumption;
    irreducible.note = "absolutely irreducible (known status); self-dual split excluded since dim S_" +
                       std::to_string(w.j() + 2) + "(SL_2(Z)) = " + std::to_string(cusp_dim_level1(w.j() + 2));
    cert.eliminations.push_back(std::move(irreducible));

    auto without_ell = [ell](std::vector<std::uint64_t> ps) {
        ps.erase(std::remove(ps.begin(), ps.end(), ell), ps.end());
        return ps;
    };
    const bool wb = config.use_weight_bounds;
    cert.eliminations.push_back(eliminate_orthogonal(traces, w, ell, without_ell(config.orthogonal), wb));
    cert.eliminations.push_back(eliminate_twisted_cubic(traces, w, ell, without_ell(config.twisted_cubic), wb));
    cert.eliminations.push_back(eliminate_exceptional(traces, w, ell, without_ell(config.exceptional), wb));

    cert.verdict = Verdict::full_image;
    for (const auto& e : cert.eliminations)
        if (!e.eliminated) {
            cert.verdict = Verdict::exceptional;
            cert.failed_case = e.subgroup_case;
            break;
        }
    return cert;
}

/// Certificates for every prime 7 <= ell <= ell_max, ordered by ell.
inline std::vector<ImageCertificate> certify_range(const TraceTable& traces, const FormWeight& w,
                                                   std::uint64_t ell_max, const WitnessConfig& config = {},
                                                   bool parallel = false) {
    if (ell_max < 7) throw std::invalid_argument("certify_range: ell_max must be at least 7");
    std::vector<std::uint64_t> ells;
    for (std::uint64_t ell = 7; ell <= ell_max; ++ell)
        if (is_prime(ell)) ells.push_back(ell);

    std::vector<ImageCertificate> out;
    out.reserve(ells.size());
    if (!parallel) {
        for (auto ell : ells) out.push_back(certify(traces, w, ell, config));
        return out;
    }
    const std::size_t workers = std::max(1u, std::thread::hardware_concurrency());
    std::vector<std::future<std::vector<ImageCertificate>>> jobs;
    for (std::size_t t = 0; t < workers; ++t)
        jobs.push_back(std::async(std::launch::async, [&, t] {
            std::vector<ImageCertificate> part;
            for (std::size_t i = t; i < ells.size(); i += workers) part.push_back(certify(traces, w, ells[i], config));
            return part;
        }));
    std::vector<std::vector<ImageCertificate>> parts;
    for (auto& j : jobs) parts.push_back(j.get());
    for (std::size_t i = 0; i < ells.size(); ++i) out.push_back(std::move(parts[i % workers][i / workers]));
    return out;
}

}  // namespace siegel

#endif  // SIEGEL_IMGSIEVE_HPP
