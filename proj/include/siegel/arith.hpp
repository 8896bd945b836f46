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

#ifndef SIEGEL_ARITH_HPP
#define SIEGEL_ARITH_HPP

#include <gmpxx.h>

#include <algorithm>
#include <array>
#include <cstdint>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace siegel {

using BigInt = mpz_class;
using Rational = mpq_class;

/// Thrown when input data (trace files, tables) is missing or inconsistent.
class DataError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

inline BigInt big_pow(const BigInt& base, unsigned long exp) {
    BigInt r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
    return r;
}

inline BigInt big_pow(std::uint64_t base, unsigned long exp) {
    BigInt r;
    mpz_ui_pow_ui(r.get_mpz_t(), base, exp);
    return r;
}

inline BigInt to_big(std::uint64_t v) {
    BigInt r;
    mpz_import(r.get_mpz_t(), 1, -1, sizeof v, 0, 0, &v);
    return r;
}

inline bool fits_u64(const BigInt& n) { return sgn(n) >= 0 && mpz_sizeinbase(n.get_mpz_t(), 2) <= 64; }

inline std::uint64_t to_u64(const BigInt& n) {
    if (!fits_u64(n)) throw std::out_of_range("value does not fit in 64 bits: " + n.get_str());
    std::uint64_t v = 0;
    mpz_export(&v, nullptr, -1, sizeof v, 0, 0, n.get_mpz_t());
    return v;
}

/// Non-negative residue of n modulo m (m > 0).
inline std::uint64_t mod_u64(const BigInt& n, std::uint64_t m) {
    BigInt r;
    mpz_fdiv_r(r.get_mpz_t(), n.get_mpz_t(), to_big(m).get_mpz_t());
    return to_u64(r);
}

__extension__ using uint128 = unsigned __int128;

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<uint128>(a) * b % m);
}

inline std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
    std::uint64_t result = 1 % m;
    base %= m;
    while (exp) {
        if (exp & 1) result = mulmod(result, base, m);
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    return result;
}

namespace detail {

/// Primes below 10^6, computed once.
inline const std::vector<std::uint32_t>& small_primes() {
    static const std::vector<std::uint32_t> primes = [] {
        constexpr std::uint32_t limit = 1'000'000;
        std::vector<bool> composite(limit, false);
        std::vector<std::uint32_t> out;
        out.reserve(78'498);
        for (std::uint32_t i = 2; i < limit; ++i) {
            if (composite[i]) continue;
            out.push_back(i);
            for (std::uint64_t m = std::uint64_t{i} * i; m < limit; m += i) composite[m] = true;
        }
        return out;
    }();
    return primes;
}

inline bool strong_probable_prime(const BigInt& n, const BigInt& base) {
    BigInt n_minus_1 = n - 1;
    BigInt d = n_minus_1;
    unsigned long s = mpz_scan1(d.get_mpz_t(), 0);
    mpz_fdiv_q_2exp(d.get_mpz_t(), d.get_mpz_t(), s);

    BigInt x;
    mpz_powm(x.get_mpz_t(), base.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
    if (x == 1 || x == n_minus_1) return true;
    for (unsigned long r = 1; r < s; ++r) {
        mpz_powm_ui(x.get_mpz_t(), x.get_mpz_t(), 2, n.get_mpz_t());
        if (x == n_minus_1) return true;
        if (x == 1) return false;
    }
    return false;
}

// x / 2 mod n for odd n, result in [0, n).
inline BigInt halve_mod(const BigInt& x, const BigInt& n) {
    BigInt y;
    mpz_fdiv_r(y.get_mpz_t(), x.get_mpz_t(), n.get_mpz_t());
    if (mpz_odd_p(y.get_mpz_t())) y += n;
    mpz_fdiv_q_2exp(y.get_mpz_t(), y.get_mpz_t(), 1);
    return y;
}

// Strong Lucas probable-prime test with Selfridge parameters (P = 1).
// n must be odd, > 2, and not a perfect square.
inline bool strong_lucas_probable_prime(const BigInt& n) {
    long d_param = 5;
    for (;;) {
        BigInt dd(d_param);
        int j = mpz_jacobi(dd.get_mpz_t(), n.get_mpz_t());
        if (j == -1) break;
        if (j == 0 && abs(dd) != n) return false;
        d_param = d_param > 0 ? -(d_param + 2) : -(d_param - 2);
    }
    const BigInt D(d_param);
    const BigInt Q = BigInt(1 - d_param) / 4;

    BigInt d = n + 1;
    unsigned long s = mpz_scan1(d.get_mpz_t(), 0);
    mpz_fdiv_q_2exp(d.get_mpz_t(), d.get_mpz_t(), s);

    auto reduce = [&n](BigInt& x) { mpz_fdiv_r(x.get_mpz_t(), x.get_mpz_t(), n.get_mpz_t()); };

    // Left-to-right binary ladder over the bits of d.
    BigInt U = 1, V = 1, Qk = Q;
    reduce(Qk);
    for (long bit = static_cast<long>(mpz_sizeinbase(d.get_mpz_t(), 2)) - 2; bit >= 0; --bit) {
        U = U * V;
        reduce(U);
        V = V * V - 2 * Qk;
        reduce(V);
        Qk = Qk * Qk;
        reduce(Qk);
        if (mpz_tstbit(d.get_mpz_t(), static_cast<mp_bitcnt_t>(bit))) {
            BigInt U1 = halve_mod(BigInt(U + V), n);
            BigInt V1 = halve_mod(BigInt(D * U + V), n);
            U = U1;
            V = V1;
            Qk = Qk * Q;
            reduce(Qk);
        }
    }
    if (U == 0 || V == 0) return true;
    for (unsigned long r = 1; r < s; ++r) {
        V = V * V - 2 * Qk;
        reduce(V);
        if (V == 0) return true;
        Qk = Qk * Qk;
        reduce(Qk);
    }
    return false;
}

}  // namespace detail

/// Primality test. Deterministic below 3317044064679887385961981 (Miller-Rabin on
/// the first thirteen prime bases, plus Baillie-PSW); above that bound 64
/// further Miller-Rabin rounds on fixed pseudo-random bases are added.
inline bool is_prime(const BigInt& n) {
    if (n < 2) return false;
    static constexpr std::array<unsigned, 13> bases = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41};
    for (unsigned p : bases) {
        if (n == p) return true;
        if (mpz_divisible_ui_p(n.get_mpz_t(), p)) return false;
    }
    if (n < 41 * 41) return true;

    for (unsigned p : bases)
        if (!detail::strong_probable_prime(n, BigInt(p))) return false;
    if (mpz_perfect_square_p(n.get_mpz_t())) return false;
    if (!detail::strong_lucas_probable_prime(n)) return false;

    static const BigInt deterministic_bound("3317044064679887385961981");
    if (n < deterministic_bound) return true;

    std::mt19937_64 rng(0x5eed1e9e0ddba11ULL);
    const BigInt range = n - 3;
    for (int round = 0; round < 64; ++round) {
        BigInt base;
        BigInt raw = to_big(rng()) * to_big(rng()) * to_big(rng());
        mpz_fdiv_r(base.get_mpz_t(), raw.get_mpz_t(), range.get_mpz_t());
        base += 2;
        if (!detail::strong_probable_prime(n, base)) return false;
    }
    return true;
}

inline bool is_prime(std::uint64_t n) { return is_prime(to_big(n)); }

/// Legendre symbol via Euler's criterion. For a composite odd modulus the
/// result is meaningless (not detected here).
inline int legendre_symbol(const BigInt& a, const BigInt& ell) {
    if (ell < 3 || mpz_even_p(ell.get_mpz_t()))
        throw std::invalid_argument("legendre_symbol: modulus must be an odd prime, got " + ell.get_str());
    BigInt r;
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), ell.get_mpz_t());
    if (r == 0) return 0;
    BigInt e = (ell - 1) / 2;
    mpz_powm(r.get_mpz_t(), r.get_mpz_t(), e.get_mpz_t(), ell.get_mpz_t());
    return r == 1 ? 1 : -1;
}

inline int legendre_symbol(std::int64_t a, std::uint64_t ell) { return legendre_symbol(BigInt(a), to_big(ell)); }

/// Inverse of a modulo the prime ell, in [1, ell-1].
inline BigInt mod_inverse(const BigInt& a, const BigInt& ell) {
    if (ell < 2) throw std::invalid_argument("mod_inverse: modulus must be prime, got " + ell.get_str());
    BigInt r;
    if (mpz_divisible_p(a.get_mpz_t(), ell.get_mpz_t()) || !mpz_invert(r.get_mpz_t(), a.get_mpz_t(), ell.get_mpz_t()))
        throw std::invalid_argument("mod_inverse: " + a.get_str() + " is not invertible modulo " + ell.get_str());
    return r;
}

inline std::uint64_t mod_inverse(std::uint64_t a, std::uint64_t ell) {
    return to_u64(mod_inverse(to_big(a), to_big(ell)));
}

struct PrimePower {
    BigInt prime;
    unsigned exponent = 0;

    friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

/// Signed prime factorization; primes strictly increasing.
struct Factorization {
    int sign = 1;
    std::vector<PrimePower> factors;

    BigInt value() const {
        BigInt v = sign;
        for (const auto& f : factors) v *= big_pow(f.prime, f.exponent);
        return v;
    }

    friend bool operator==(const Factorization&, const Factorization&) = default;
};

namespace detail {

inline std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b) {
    while (b) {
        a %= b;
        std::swap(a, b);
    }
    return a;
}

// Pollard rho with Brent's cycle detection and batched gcds. Returns a
// nontrivial factor of the odd composite n, or 0 if the offset failed.
inline BigInt pollard_brent(const BigInt& n, unsigned long offset) {
    constexpr unsigned long batch = 128;
    const BigInt c(offset);
    auto step = [&](BigInt& x) {
        x = x * x + c;
        mpz_fdiv_r(x.get_mpz_t(), x.get_mpz_t(), n.get_mpz_t());
    };

    BigInt y = 2, x, ys, q = 1, g = 1;
    unsigned long r = 1;
    while (g == 1) {
        x = y;
        for (unsigned long i = 0; i < r; ++i) step(y);
        unsigned long k = 0;
        while (k < r && g == 1) {
            ys = y;
            unsigned long lim = std::min(batch, r - k);
            for (unsigned long i = 0; i < lim; ++i) {
                step(y);
                q *= abs(BigInt(x - y));
                mpz_fdiv_r(q.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
            }
            mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
            k += lim;
        }
        r *= 2;
        if (r > (1ul << 26)) return 0;
    }
    if (g == n) {
        // Batch overshot; back up one step at a time.
        do {
            step(ys);
            BigInt diff = abs(BigInt(x - ys));
            mpz_gcd(g.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
        } while (g == 1);
    }
    return g == n ? BigInt(0) : g;
}

inline void split_composite(const BigInt& n, std::vector<BigInt>& primes_out) {
    if (is_prime(n)) {
        primes_out.push_back(n);
        return;
    }
    BigInt root;
    if (mpz_perfect_power_p(n.get_mpz_t())) {
        for (unsigned long e = mpz_sizeinbase(n.get_mpz_t(), 2); e >= 2; --e) {
            if (mpz_root(root.get_mpz_t(), n.get_mpz_t(), e)) {
                for (unsigned long i = 0; i < e; ++i) split_composite(root, primes_out);
                return;
            }
        }
    }
    for (unsigned long offset = 1;; ++offset) {
        BigInt d = pollard_brent(n, offset);
        if (d != 0) {
            split_composite(d, primes_out);
            split_composite(n / d, primes_out);
            return;
        }
    }
}

}  // namespace detail

/// Complete prime factorization: trial division to 10^6, then Pollard-Brent.
inline Factorization factor(const BigInt& n) {
    if (n == 0) throw std::invalid_argument("factor: cannot factor zero");
    Factorization out;
    out.sign = sgn(n) < 0 ? -1 : 1;
    BigInt rest = abs(n);
    std::vector<BigInt> found;

    const auto& primes = detail::small_primes();
    std::size_t checked = 0;
    for (std::uint32_t p : primes) {
        if (fits_u64(rest)) {
            std::uint64_t r = to_u64(rest);
            if (r == 1 || std::uint64_t{p} * p > r) break;
            if (r % p == 0) {
                do {
                    r /= p;
                    found.emplace_back(p);
                } while (r % p == 0);
                rest = to_big(r);
            }
        } else {
            while (mpz_divisible_ui_p(rest.get_mpz_t(), p)) {
                mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), p);
                found.emplace_back(p);
            }
        }
        if (++checked % 4096 == 0 && is_prime(rest)) break;
    }
    if (rest != 1) {
        if (rest <= BigInt(primes.back()) * primes.back() || is_prime(rest))
            found.push_back(rest);
        else
            detail::split_composite(rest, found);
    }

    std::sort(found.begin(), found.end());
    for (const auto& p : found) {
        if (!out.factors.empty() && out.factors.back().prime == p)
            ++out.factors.back().exponent;
        else
            out.factors.push_back({p, 1});
    }
    return out;
}

/// Renders as "-2^12 · 3^3 · 5 · 11^2"; the unit renders as "1" or "-1".
inline std::string to_string(const Factorization& f) {
    std::ostringstream os;
    if (f.sign < 0) os << '-';
    if (f.factors.empty()) os << '1';
    for (std::size_t i = 0; i < f.factors.size(); ++i) {
        if (i) os << " · ";
        os << f.factors[i].prime.get_str();
        if (f.factors[i].exponent > 1) os << '^' << f.factors[i].exponent;
    }
    return os.str();
}

}  // namespace siegel

#endif  // SIEGEL_ARITH_HPP
