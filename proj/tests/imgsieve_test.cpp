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
#include <tuple>
#include <vector>

#include "siegel/imgsieve.hpp"

namespace siegel {
namespace {

const TraceTable& traces() { return TraceTable::embedded(); }

std::vector<std::uint64_t> primes_between(std::uint64_t lo, std::uint64_t hi) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t n = lo; n <= hi; ++n) {
        bool prime = n > 1;
        for (std::uint64_t d = 2; d * d <= n && prime; ++d) prime = n % d != 0;
        if (prime) out.push_back(n);
    }
    return out;
}

// Remainder of the integer polynomial f modulo the monic g over F_ell, schoolbook style
// on plain integers (ell small enough that products fit in 64 bits).
std::vector<std::int64_t> naive_remainder(std::vector<std::int64_t> f, std::vector<std::int64_t> g, std::int64_t ell) {
    auto red = [ell](std::int64_t x) { return ((x % ell) + ell) % ell; };
    for (auto& x : f) x = red(x);
    for (auto& x : g) x = red(x);
    while (!g.empty() && g.back() == 0) g.pop_back();
    // Make g monic by brute-force inverse of its leading coefficient.
    std::int64_t inv = 1;
    while (g.back() * inv % ell != 1) ++inv;
    for (auto& x : g) x = x * inv % ell;
    const std::size_t m = g.size();
    for (std::size_t top = f.size(); top >= m; --top) {
        const std::int64_t q = f[top - 1];
        const std::size_t shift = top - m;
        if (q != 0)
            for (std::size_t k = 0; k < m; ++k) f[shift + k] = red(f[shift + k] - q * g[k]);
    }
    f.resize(g.size() - 1);
    return f;
}

std::vector<std::int64_t> q4_coefficients() {
    // (t^16 - 1)(t^20 - 1)(t^24 - 1), fourth power, by repeated convolution.
    std::vector<std::int64_t> acc = {1};
    auto mul = [](const std::vector<std::int64_t>& a, const std::vector<std::int64_t>& b) {
        std::vector<std::int64_t> c(a.size() + b.size() - 1, 0);
        for (std::size_t i = 0; i < a.size(); ++i)
            for (std::size_t k = 0; k < b.size(); ++k) c[i + k] += a[i] * b[k];
        return c;
    };
    for (int rep = 0; rep < 4; ++rep)
        for (std::size_t n : {16u, 20u, 24u}) {
            std::vector<std::int64_t> cyc(n + 1, 0);
            cyc[0] = -1;
            cyc[n] = 1;
            acc = mul(acc, cyc);
        }
    return acc;
}

bool naive_divides_q4(const FormWeight& w, std::uint64_t p, std::uint64_t ell) {
    const ScaledPolynomial r = orthogonal_charpoly(traces(), w, p);
    const std::uint64_t inv_den = mod_inverse(powmod(p, r.denom_exp(), ell), ell);
    std::vector<std::int64_t> g;
    for (const auto& c : r.numerator().coefficients())
        g.push_back(static_cast<std::int64_t>(mulmod(mod_u64(c, ell), inv_den, ell)));
    auto rem = naive_remainder(q4_coefficients(), g, static_cast<std::int64_t>(ell));
    return std::all_of(rem.begin(), rem.end(), [](std::int64_t x) { return x == 0; });
}

TEST(OrderPolynomial, Shape) {
    const auto& q = order_polynomial();
    EXPECT_EQ(q.degree(), 240);
    EXPECT_EQ(q.evaluate(BigInt(1)), 0);
    std::vector<BigInt> expected;
    for (auto c : q4_coefficients()) expected.push_back(BigInt(static_cast<long>(c)));
    EXPECT_EQ(q, IntPolynomial(expected));
}

TEST(Orthogonal, Examples) {
    auto e43 = eliminate_orthogonal(traces(), FormWeight(6, 8), 43, {2, 3, 5});
    EXPECT_TRUE(e43.eliminated);
    EXPECT_EQ(e43.method, Method::weight_bound);

    auto e13 = eliminate_orthogonal(traces(), FormWeight(6, 8), 13, {2, 3, 5});
    EXPECT_FALSE(e13.eliminated);
    ASSERT_EQ(e13.trials.size(), 3u);
    EXPECT_EQ(e13.trials[0].legendre, -1);
    EXPECT_EQ(e13.trials[0].value_at_minus_one, 0u);
    EXPECT_EQ(e13.trials[1].legendre, 1);
    EXPECT_FALSE(e13.trials[1].value_at_minus_one.has_value());
    EXPECT_EQ(e13.trials[2].legendre, -1);
    EXPECT_EQ(e13.trials[2].value_at_minus_one, 0u);

    auto e17 = eliminate_orthogonal(traces(), FormWeight(4, 10), 17, {2, 3, 5});
    EXPECT_FALSE(e17.eliminated);
}

TEST(Orthogonal, WitnessWhenNonSquareAndNonZero) {
    for (const auto& w : embedded_weights)
        for (auto ell : primes_between(7, 2 * static_cast<std::uint64_t>(w.motivic_weight()))) {
            if (!is_known_irreducible(w, ell)) continue;
            std::vector<std::uint64_t> ws;
            for (std::uint64_t p : {2ULL, 3ULL, 5ULL})
                if (p != ell) ws.push_back(p);
            auto e = eliminate_orthogonal(traces(), w, ell, ws);
            // Oracle: R_p(-1) = -2 tau(p)^2 / p^w, so it vanishes mod ell iff ell | tau(p).
            bool expected = false;
            for (auto p : ws)
                expected = expected || (legendre_symbol(static_cast<std::int64_t>(p), ell) == -1 &&
                                        mod_u64(traces().trace(w, p, 1), ell) != 0);
            EXPECT_EQ(e.eliminated, expected) << to_string(w) << " ell=" << ell;
        }
}

TEST(TwistedCubic, Examples) {
    for (std::uint64_t ell : {7ULL, 11ULL}) {
        auto e = eliminate_twisted_cubic(traces(), FormWeight(8, 8), ell, {2, 3, 5});
        EXPECT_TRUE(e.eliminated);
        EXPECT_EQ(e.method, Method::witness);
        EXPECT_EQ(e.witness_p, 2u);
    }
    for (auto ell : primes_between(7, 41)) {
        if (!is_known_irreducible(FormWeight(8, 8), ell)) continue;
        EXPECT_EQ(eliminate_twisted_cubic(traces(), FormWeight(8, 8), ell, {2, 3, 5}).witness_p, 2u) << ell;
    }
    auto e47 = eliminate_twisted_cubic(traces(), FormWeight(12, 6), 47, {2, 3, 5});
    EXPECT_EQ(e47.method, Method::weight_bound);
}

TEST(Exceptional, Examples) {
    const FormWeight w(6, 8);
    auto only2 = eliminate_exceptional(traces(), w, 461, {2}, false);
    EXPECT_FALSE(only2.eliminated);
    EXPECT_EQ(only2.trials.at(0).divides_order_polynomial, true);

    auto three = eliminate_exceptional(traces(), w, 461, {2, 3, 5}, false);
    EXPECT_TRUE(three.eliminated);
    EXPECT_EQ(three.witness_p, 3u);

    auto bound = eliminate_exceptional(traces(), w, 461, {2});
    EXPECT_EQ(bound.method, Method::weight_bound);
    EXPECT_EQ(bound.note, "ell - 1 >= 24w: 460 >= 456");

    auto seven = eliminate_exceptional(traces(), w, 7, {2, 3, 5, 13});
    EXPECT_TRUE(seven.eliminated);
    EXPECT_EQ(seven.witness_p, 13u);
}

TEST(Exceptional, AgreesWithNaiveDivisionOracle) {
    for (const auto& w : embedded_weights)
        for (std::uint64_t p : {2ULL, 3ULL, 5ULL})
            for (auto ell : primes_between(7, 503)) {
                if (ell == p) continue;
                ASSERT_EQ(divides_order_polynomial(traces(), w, p, ell), naive_divides_q4(w, p, ell))
                    << to_string(w) << " p=" << p << " ell=" << ell;
            }
}

TEST(Exceptional, FailureSetsForSixEight) {
    const FormWeight w(6, 8);
    auto failures = [&](std::uint64_t p) {
        std::vector<std::uint64_t> out;
        for (auto ell : primes_between(7, 503))
            if (ell != p && naive_divides_q4(w, p, ell)) out.push_back(ell);
        return out;
    };
    // Oracle output, frozen. 89 is included: R_2 = (t-1)(t+1)^2(t^2-t+1) mod 89, all roots of order dividing 24.
    EXPECT_EQ(failures(2), (std::vector<std::uint64_t>{7, 11, 13, 17, 23, 47, 89, 103, 107, 109, 461}));
    EXPECT_EQ(failures(3), (std::vector<std::uint64_t>{7, 11, 17, 23, 359}));
    EXPECT_EQ(failures(5), (std::vector<std::uint64_t>{7, 11, 31}));

    // Witness p = 2 failure set restricted to irreducible ell.
    std::vector<std::uint64_t> from_sieve;
    for (auto ell : primes_between(7, 504)) {
        if (!is_known_irreducible(w, ell)) continue;
        if (!eliminate_exceptional(traces(), w, ell, {2}, false).eliminated) from_sieve.push_back(ell);
    }
    EXPECT_EQ(from_sieve, (std::vector<std::uint64_t>{7, 13, 23, 47, 89, 103, 107, 109, 461}));
}

TEST(Preconditions, AreEnforced) {
    const FormWeight w(6, 8);
    EXPECT_THROW(eliminate_orthogonal(traces(), w, 5, {2}), std::invalid_argument);
    EXPECT_THROW(eliminate_orthogonal(traces(), w, 15, {2}), std::invalid_argument);
    EXPECT_THROW(eliminate_orthogonal(traces(), w, 11, {2}), std::invalid_argument);
    EXPECT_THROW(eliminate_twisted_cubic(traces(), w, 13, {2, 13}), std::invalid_argument);
    EXPECT_THROW(eliminate_exceptional(traces(), w, 19, {11}), MissingTraceError);
    EXPECT_THROW(certify(traces(), w, 9), std::invalid_argument);
    EXPECT_THROW(certify_range(traces(), w, 5), std::invalid_argument);
}

TEST(Certify, Examples) {
    auto c13 = certify(traces(), FormWeight(6, 8), 13);
    EXPECT_EQ(c13.verdict, Verdict::exceptional);
    EXPECT_EQ(c13.failed_case, SubgroupCase::orthogonal);
    // 13 is dropped from the exceptional witnesses.
    for (const auto& t : c13.eliminations.back().trials) EXPECT_NE(t.p, 13u);

    auto c7 = certify(traces(), FormWeight(8, 8), 7);
    EXPECT_EQ(c7.verdict, Verdict::full_image);
    EXPECT_FALSE(c7.failed_case.has_value());
    EXPECT_EQ(c7.eliminations.front().method, Method::assumption);

    auto c17 = certify(traces(), FormWeight(8, 8), 17);
    EXPECT_EQ(c17.verdict, Verdict::not_applicable);
    EXPECT_EQ(c17.failed_case, SubgroupCase::irreducibility);

    for (const auto& w : embedded_weights) {
        auto big = certify(traces(), w, 1009);
        EXPECT_EQ(big.verdict, Verdict::full_image);
        ASSERT_EQ(big.eliminations.size(), 4u);
        for (std::size_t i = 1; i < 4; ++i) EXPECT_EQ(big.eliminations[i].method, Method::weight_bound);
    }
}

TEST(CertifyRange, VerdictsBelow504) {
    for (const auto& w : embedded_weights) {
        auto certs = certify_range(traces(), w, 504);
        EXPECT_EQ(certs.size(), primes_between(7, 504).size());
        for (const auto& c : certs) {
            const bool listed = !is_known_irreducible(w, c.ell);
            const bool exceptional_triple = (w == FormWeight(6, 8) && c.ell == 13) || (w == FormWeight(4, 10) && c.ell == 17);
            const Verdict expected =
                listed ? Verdict::not_applicable : exceptional_triple ? Verdict::exceptional : Verdict::full_image;
            EXPECT_EQ(c.verdict, expected) << to_string(w) << " ell=" << c.ell;
        }
    }
}

TEST(CertifyRange, EveryEliminationVerifies) {
    for (const auto& w : embedded_weights)
        for (const auto& c : certify_range(traces(), w, 504)) {
            for (const auto& e : c.eliminations) {
                if (!e.eliminated) continue;
                EXPECT_TRUE(verify_elimination(e, w, c.ell, traces())) << to_string(w) << " ell=" << c.ell;
                if (e.method == Method::weight_bound) {
                    EXPECT_TRUE(e.subgroup_case == SubgroupCase::exceptional ? exceptional_weight_bound(w, c.ell)
                                                                              : orthogonal_weight_bound(w, c.ell));
                }
            }
        }
}

TEST(Verify, RejectsTamperedEvidence) {
    const FormWeight w(8, 8);
    auto e = eliminate_twisted_cubic(traces(), w, 7, {2, 3, 5});
    ASSERT_TRUE(verify_elimination(e, w, 7));
    auto wrong_modulus = e;
    wrong_modulus.trials[0].polynomial = ModPolynomial(11, {1, 0, 0, 0, 1});
    EXPECT_FALSE(verify_elimination(wrong_modulus, w, 7));
    auto wrong_poly = e;
    wrong_poly.trials[0].polynomial = ModPolynomial(7, {1, 0, 1, 0, 1});  // t^4 + t^2 + 1 divides t^8 + t^4 + 1
    EXPECT_FALSE(verify_elimination(wrong_poly, w, 7, traces()));
    auto fake_bound = e;
    fake_bound.method = Method::weight_bound;
    EXPECT_FALSE(verify_elimination(fake_bound, w, 7));
    auto not_eliminated = e;
    not_eliminated.eliminated = false;
    EXPECT_FALSE(verify_elimination(not_eliminated, w, 7));
}

TEST(CertifyRange, ParallelMatchesSequential) {
    auto summary = [](const std::vector<ImageCertificate>& certs) {
        std::vector<std::tuple<std::uint64_t, int, int, std::vector<std::uint64_t>>> out;
        for (const auto& c : certs) {
            std::vector<std::uint64_t> ws;
            for (const auto& e : c.eliminations) ws.push_back(e.witness_p.value_or(0) * 10 + (e.method ? static_cast<std::uint64_t>(*e.method) + 1 : 0));
            out.emplace_back(c.ell, static_cast<int>(c.verdict), c.failed_case ? static_cast<int>(*c.failed_case) : -1,
                             ws);
        }
        return out;
    };
    for (const auto& w : embedded_weights)
        EXPECT_EQ(summary(certify_range(traces(), w, 504, {}, true)), summary(certify_range(traces(), w, 504)));
}

TEST(CertifyRange, NeverFullImageAtListedExceptions) {
    for (const auto& w : embedded_weights)
        for (const auto& c : certify_range(traces(), w, 504))
            if (!is_known_irreducible(w, c.ell)) {
                EXPECT_NE(c.verdict, Verdict::full_image);
            }
}

}  // namespace
}  // namespace siegel
