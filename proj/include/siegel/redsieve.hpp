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

#ifndef SIEGEL_REDSIEVE_HPP
#define SIEGEL_REDSIEVE_HPP

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "arith.hpp"
#include "charpoly.hpp"
#include "hecke.hpp"

namespace siegel {

/// Reducibility patterns of the residual representation, each detected by
/// divisibility of one integer invariant:
///   A: a Galois-stable line with trivial action,
///   B: a stable line with action chi^(j+k-1),
///   C: a split into two planes, inertia weights {0, j+k-1} on the first,
///   D: a split into two planes, inertia weights {0, k-2} on the first.
enum class InvariantFamily { A, B, C, D };

inline constexpr std::array<InvariantFamily, 4> all_families = {InvariantFamily::A, InvariantFamily::B,
                                                                InvariantFamily::C, InvariantFamily::D};

inline char family_letter(InvariantFamily f) { return "ABCD"[static_cast<int>(f)]; }

inline BigInt invariant(const TraceTable& traces, const FormWeight& w, InvariantFamily family, std::uint64_t p) {
    const int j = w.j(), k = w.k();
    const BigInt& tau = traces.trace(w, p, 1);
    const BigInt c = middle_coefficient(traces, w, p);
    auto pp = [p](int e) { return big_pow(p, static_cast<unsigned long>(e)); };

    switch (family) {
        case InvariantFamily::A:
            return c - tau * (pp(2 * k + j - 3) + 1) + pp(4 * k + 2 * j - 6) + 1;
        case InvariantFamily::B:
            return pp(2 * k - 4) * (1 + pp(2 * j + 2)) - tau * pp(k - 2) * (1 + pp(j + 1)) + c;
        case InvariantFamily::C: {
            BigInt s = 1 + pp(k - 2);
            return (c - pp(j + k - 1) - pp(j + 3 * k - 5)) * s * s - pp(k - 2) * tau * tau;
        }
        case InvariantFamily::D: {
            BigInt s = 1 + pp(j + k - 1);
            return (c - pp(k - 2) - pp(2 * j + 3 * k - 4)) * s * s - pp(j + k - 1) * tau * tau;
        }
    }
    throw std::invalid_argument("invariant: unknown family");
}

struct InvariantEntry {
    InvariantFamily family;
    std::uint64_t p;
    BigInt value;
    Factorization factorization;
};

/// All (family, p) invariants, fully factored; ordered by family, then by p
/// in the order given.
inline std::vector<InvariantEntry> invariant_table(const TraceTable& traces, const FormWeight& w,
                                                   const std::vector<std::uint64_t>& primes) {
    std::vector<InvariantEntry> out;
    out.reserve(4 * primes.size());
    for (auto family : all_families)
        for (auto p : primes) {
            BigInt v = invariant(traces, w, family, p);
            if (v == 0) throw DataError("invariant " + std::string(1, family_letter(family)) + " vanishes at p = " +
                                        std::to_string(p) + "; it cannot be factored");
            out.push_back({family, p, v, factor(v)});
        }
    return out;
}

struct FamilyCandidates {
    InvariantFamily family;
    BigInt gcd;
    std::vector<BigInt> candidates;
};

struct CandidateReport {
    FormWeight weight;
    std::vector<std::uint64_t> primes_used;
    /// Candidates are primes strictly above this bound (j + 2k - 2).
    int validity_bound;
    std::array<FamilyCandidates, 4> families;
};

/// Primes ell > j+2k-2 dividing a family invariant at every supplied p.
inline CandidateReport reducible_candidates(const TraceTable& traces, const FormWeight& w,
                                            const std::vector<std::uint64_t>& primes) {
    if (primes.empty()) throw std::invalid_argument("reducible_candidates: at least one prime is required");
    const int bound = w.j() + 2 * w.k() - 2;
    CandidateReport report{w, primes, bound, {}};
    for (std::size_t f = 0; f < all_families.size(); ++f) {
        FamilyCandidates& fc = report.families[f];
        fc.family = all_families[f];
        fc.gcd = 0;
        for (auto p : primes) {
            BigInt v = abs(invariant(traces, w, fc.family, p));
            mpz_gcd(fc.gcd.get_mpz_t(), fc.gcd.get_mpz_t(), v.get_mpz_t());
        }
        if (fc.gcd == 0)
            throw DataError(std::string("invariant ") + family_letter(fc.family) +
                            " vanishes at every supplied prime; the sieve is inconclusive");
        for (const auto& pf : factor(fc.gcd).factors)
            if (pf.prime > bound) fc.candidates.push_back(pf.prime);
    }
    return report;
}

}  // namespace siegel

#endif  // SIEGEL_REDSIEVE_HPP
