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

#include <gtest/gtest.h>

#include <algorithm>
#include <array>
#include <string>
#include <tuple>

#include "reference_tables.hpp"
#include "siegel/redsieve.hpp"

namespace siegel {
namespace {

const TraceTable& traces() { return TraceTable::embedded(); }

InvariantFamily family_of(char c) { return static_cast<InvariantFamily>(c - 'A'); }

// The A_{6,8}(3) cell is printed with a dot missing ("54196568909" for 5419.6568909).
bool is_misprinted_cell(const testdata::PublishedFactorization& row) {
    return row.j == 6 && row.k == 8 && row.family == 'A' && row.p == 3;
}

TEST(Invariant, Examples) {
    EXPECT_EQ(invariant(traces(), FormWeight(6, 8), InvariantFamily::A, 2), BigInt("274877702145"));
    EXPECT_EQ(invariant(traces(), FormWeight(8, 8), InvariantFamily::C, 2), BigInt("-564243554304"));
    EXPECT_EQ(invariant(traces(), FormWeight(6, 8), InvariantFamily::B, 2), BigInt(66908160));
    EXPECT_EQ(to_string(factor(invariant(traces(), FormWeight(8, 8), InvariantFamily::C, 2))),
              "-2^13 · 3^2 · 17 · 23^3 · 37");
}

TEST(Invariant, FamiliesABCMatchPublishedTables) {
    for (const auto& row : testdata::factorization_tables) {
        if (row.family == 'D' || is_misprinted_cell(row)) continue;
        const FormWeight w(row.j, row.k);
        const BigInt v = invariant(traces(), w, family_of(row.family), row.p);
        EXPECT_EQ(factor(v), testdata::parse_published(row.text))
            << row.family << "_" << to_string(w) << "(" << row.p << ")";
    }
}

TEST(Invariant, MisprintedCellSplitsIntoTwoPrimes) {
    const BigInt v = invariant(traces(), FormWeight(6, 8), InvariantFamily::A, 3);
    EXPECT_EQ(to_string(factor(v)), "2^12 · 5 · 17 · 109 · 5419 · 6568909");
    EXPECT_FALSE(is_prime(BigInt("54196568909")));
}

TEST(Invariant, FamilyDFrozenValues) {
    const std::vector<std::tuple<int, int, std::uint64_t, std::string>> frozen = {
        {6, 8, 2, "-2^6 · 3^2 · 5 · 2731^2 · 2939 · 4567"},
        {8, 8, 2, "-2^6 · 3^2 · 5 · 59 · 499 · 17909 · 48594289"},
        {8, 8, 3, "-2^12 · 3^6 · 5 · 17 · 23 · 41 · 67 · 109 · 269 · 1621 · 40546015571"},
        {12, 6, 2, "-2^4 · 3^3 · 5^2 · 7 · 4591 · 128983 · 105489221"},
        {12, 6, 3, "-2^12 · 3^4 · 5^2 · 13 · 2389 · 31511 · 68800481 · 40339657513"},
        {4, 10, 2, "-2^8 · 3^4 · 5 · 11 · 1011052197943"},
        {4, 10, 3, "-2^12 · 3^8 · 5 · 11 · 19 · 128767 · 11722627332223"},
    };
    for (const auto& [j, k, p, text] : frozen)
        EXPECT_EQ(to_string(factor(invariant(traces(), FormWeight(j, k), InvariantFamily::D, p))), text);
    // The one D cell whose printed value agrees.
    EXPECT_EQ(factor(invariant(traces(), FormWeight(6, 8), InvariantFamily::D, 3)),
              testdata::parse_published("-2^{14}.3^{6}.5.11.116167.61722049878337"));
}

TEST(Invariant, AIsCharpolyAtOne) {
    for (const auto& w : embedded_weights)
        for (auto p : embedded_primes)
            EXPECT_EQ(invariant(traces(), w, InvariantFamily::A, p),
                      frobenius_charpoly(traces(), w, p).evaluate(BigInt(1)));
}

TEST(Invariant, BIsScaledCharpolyValue) {
    for (const auto& w : embedded_weights)
        for (auto p : embedded_primes) {
            const auto e = static_cast<unsigned long>(w.j() + w.k() - 1);
            const BigInt x = big_pow(p, e);
            const Rational value = Rational(frobenius_charpoly(traces(), w, p).evaluate(x)) / Rational(big_pow(p, 2 * e));
            EXPECT_EQ(Rational(invariant(traces(), w, InvariantFamily::B, p)), value);
        }
}

// Charpoly (X^2 - sX + p^e1)(X^2 - s p^(w-e1) X + p^(2w-e1)) as a trace table entry.
TraceTable split_table(const FormWeight& w, std::uint64_t p, long s, int e1) {
    const auto mw = w.motivic_weight();
    const BigInt pw_e1 = big_pow(p, static_cast<unsigned long>(mw - e1));
    const BigInt tau = s * (1 + pw_e1);
    const BigInt c = big_pow(p, static_cast<unsigned long>(2 * mw - e1)) + BigInt(s) * s * pw_e1 +
                     big_pow(p, static_cast<unsigned long>(e1));
    TraceTable t;
    t.insert(w, p, 1, tau);
    t.insert(w, p, 2, tau * tau - 2 * c);
    return t;
}

TEST(Invariant, SplitCharpolysAnnihilateCAndD) {
    for (int j = 0; j <= 12; j += 2)
        for (int k = 5; k <= 12; ++k)
            for (std::uint64_t p : {2ULL, 3ULL, 5ULL})
                for (long s : {-7L, 0L, 1L, 12L}) {
                    const FormWeight w(j, k);
                    TraceTable tc = split_table(w, p, s, j + k - 1);
                    EXPECT_EQ(invariant(tc, w, InvariantFamily::C, p), 0);
                    TraceTable td = split_table(w, p, s, k - 2);
                    EXPECT_EQ(invariant(td, w, InvariantFamily::D, p), 0)
                        << to_string(w) << " p=" << p << " s=" << s;
                }
}

TEST(InvariantTable, TwelveSixMatchesPublishedABC) {
    const FormWeight w(12, 6);
    auto table = invariant_table(traces(), w, {2, 3});
    ASSERT_EQ(table.size(), 8u);
    for (std::size_t i = 0; i < table.size(); ++i) {
        EXPECT_EQ(table[i].family, all_families[i / 2]);
        EXPECT_EQ(table[i].p, i % 2 ? 3u : 2u);
        EXPECT_EQ(table[i].factorization.value(), table[i].value);
    }
    for (const auto& row : testdata::factorization_tables)
        if (row.j == 12 && row.family != 'D') {
            const auto& e = table[static_cast<std::size_t>(2 * (row.family - 'A') + (row.p == 3))];
            EXPECT_EQ(e.factorization, testdata::parse_published(row.text));
        }
}

TEST(InvariantTable, EdgeCases) {
    auto b = invariant_table(traces(), FormWeight(4, 10), {2});
    EXPECT_EQ(b[1].factorization, testdata::parse_published("2^{12}.3^2.5.11.41"));
    EXPECT_TRUE(invariant_table(traces(), FormWeight(6, 8), {}).empty());
    EXPECT_THROW(invariant_table(traces(), FormWeight(6, 8), {11}), MissingTraceError);
    const FormWeight w(6, 8);
    TraceTable zero = split_table(w, 2, 1, w.j() + w.k() - 1);
    EXPECT_THROW(invariant_table(zero, w, {2}), DataError);
}

TEST(Candidates, Examples) {
    auto r88 = reducible_candidates(traces(), FormWeight(8, 8), {2, 3});
    EXPECT_EQ(r88.validity_bound, 22);
    EXPECT_TRUE(r88.families[0].candidates.empty());
    EXPECT_TRUE(r88.families[1].candidates.empty());
    EXPECT_EQ(r88.families[2].candidates, std::vector<BigInt>{23});
    EXPECT_TRUE(r88.families[3].candidates.empty());

    auto r410 = reducible_candidates(traces(), FormWeight(4, 10), {2, 3});
    EXPECT_EQ(r410.families[1].candidates, std::vector<BigInt>{41});
    for (int f : {0, 2, 3}) EXPECT_TRUE(r410.families[static_cast<std::size_t>(f)].candidates.empty());

    auto r68 = reducible_candidates(traces(), FormWeight(6, 8), {2, 3});
    for (const auto& fc : r68.families) EXPECT_TRUE(fc.candidates.empty());

    EXPECT_THROW(reducible_candidates(traces(), FormWeight(6, 8), {}), std::invalid_argument);
}

TEST(Candidates, AreVerifiedByDirectDivision) {
    for (const auto& w : embedded_weights) {
        const std::vector<std::uint64_t> primes = {2, 3, 5, 7, 13};
        auto report = reducible_candidates(traces(), w, primes);
        for (const auto& fc : report.families)
            for (const auto& ell : fc.candidates) {
                EXPECT_GT(ell, report.validity_bound);
                for (auto p : primes)
                    EXPECT_TRUE(mpz_divisible_p(invariant(traces(), w, fc.family, p).get_mpz_t(), ell.get_mpz_t()));
            }
    }
}

TEST(Candidates, GcdShrinksAsPrimesAreAdded) {
    for (const auto& w : embedded_weights) {
        std::vector<std::uint64_t> primes;
        std::array<BigInt, 4> previous{};
        for (auto p : embedded_primes) {
            primes.push_back(p);
            auto report = reducible_candidates(traces(), w, primes);
            for (std::size_t f = 0; f < 4; ++f) {
                if (previous[f] != 0) {
                    EXPECT_TRUE(mpz_divisible_p(previous[f].get_mpz_t(), report.families[f].gcd.get_mpz_t()));
                }
                previous[f] = report.families[f].gcd;
            }
        }
    }
}

TEST(Candidates, StableUnderMorePrimes) {
    for (const auto& w : embedded_weights) {
        auto small = reducible_candidates(traces(), w, {2, 3});
        auto large = reducible_candidates(traces(), w, {2, 3, 5, 7, 13});
        for (std::size_t f = 0; f < 4; ++f) EXPECT_EQ(small.families[f].candidates, large.families[f].candidates);
    }
}

TEST(Candidates, ListedReducibleExceptionsAboveBoundAreFound) {
    for (const auto& w : embedded_weights) {
        auto report = reducible_candidates(traces(), w, {2, 3, 5, 7, 13});
        for (auto ell : reducible_exceptions(w)) {
            if (static_cast<int>(ell) <= report.validity_bound) continue;
            bool found = false;
            for (const auto& fc : report.families)
                found = found || std::count(fc.candidates.begin(), fc.candidates.end(), to_big(ell)) > 0;
            EXPECT_TRUE(found) << to_string(w) << " ell=" << ell;
        }
    }
}

}  // namespace
}  // namespace siegel
