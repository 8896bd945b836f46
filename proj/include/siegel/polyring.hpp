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

#ifndef SIEGEL_POLYRING_HPP
#define SIEGEL_POLYRING_HPP

#include <cstdint>
#include <initializer_list>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "arith.hpp"

namespace siegel {

/// Dense polynomial over the integers, ascending coefficients, no trailing zeros.
class IntPolynomial {
   public:
    IntPolynomial() = default;
    explicit IntPolynomial(std::vector<BigInt> coeffs) : coeffs_(std::move(coeffs)) { trim(); }
    IntPolynomial(std::initializer_list<BigInt> coeffs) : coeffs_(coeffs) { trim(); }

    static IntPolynomial monomial(const BigInt& c, std::size_t degree) {
        std::vector<BigInt> v(degree + 1);
        v[degree] = c;
        return IntPolynomial(std::move(v));
    }

    const std::vector<BigInt>& coefficients() const noexcept { return coeffs_; }
    bool is_zero() const noexcept { return coeffs_.empty(); }
    /// -1 for the zero polynomial.
    long degree() const noexcept { return static_cast<long>(coeffs_.size()) - 1; }
    BigInt coefficient(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : BigInt(0); }

    /// gcd of the coefficients (non-negative).
    BigInt content() const {
        BigInt g = 0;
        for (const auto& c : coeffs_) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
        return g;
    }

    Rational evaluate(const Rational& x) const {
        Rational acc = 0;
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + Rational(*it);
        acc.canonicalize();
        return acc;
    }

    BigInt evaluate(const BigInt& x) const {
        BigInt acc = 0;
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
        return acc;
    }

    IntPolynomial& operator+=(const IntPolynomial& rhs) {
        if (rhs.coeffs_.size() > coeffs_.size()) coeffs_.resize(rhs.coeffs_.size());
        for (std::size_t i = 0; i < rhs.coeffs_.size(); ++i) coeffs_[i] += rhs.coeffs_[i];
        trim();
        return *this;
    }

    IntPolynomial& operator-=(const IntPolynomial& rhs) {
        if (rhs.coeffs_.size() > coeffs_.size()) coeffs_.resize(rhs.coeffs_.size());
        for (std::size_t i = 0; i < rhs.coeffs_.size(); ++i) coeffs_[i] -= rhs.coeffs_[i];
        trim();
        return *this;
    }

    IntPolynomial& operator*=(const BigInt& s) {
        for (auto& c : coeffs_) c *= s;
        trim();
        return *this;
    }

    friend IntPolynomial operator+(IntPolynomial a, const IntPolynomial& b) { return a += b; }
    friend IntPolynomial operator-(IntPolynomial a, const IntPolynomial& b) { return a -= b; }
    friend IntPolynomial operator*(IntPolynomial a, const BigInt& s) { return a *= s; }

    friend IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<BigInt> out(a.coeffs_.size() + b.coeffs_.size() - 1);
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
            for (std::size_t k = 0; k < b.coeffs_.size(); ++k) out[i + k] += a.coeffs_[i] * b.coeffs_[k];
        return IntPolynomial(std::move(out));
    }

    /// Exact division by a scalar; throws if some coefficient is not divisible.
    IntPolynomial divide_exact(const BigInt& d) const {
        std::vector<BigInt> out = coeffs_;
        for (auto& c : out) {
            if (!mpz_divisible_p(c.get_mpz_t(), d.get_mpz_t()))
                throw std::invalid_argument("divide_exact: coefficient " + c.get_str() + " not divisible by " + d.get_str());
            mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), d.get_mpz_t());
        }
        return IntPolynomial(std::move(out));
    }

    friend bool operator==(const IntPolynomial&, const IntPolynomial&) = default;

   private:
    void trim() {
        while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
    }

    std::vector<BigInt> coeffs_;
};

inline IntPolynomial pow(const IntPolynomial& f, unsigned e) {
    IntPolynomial r{BigInt(1)};
    for (unsigned i = 0; i < e; ++i) r = r * f;
    return r;
}

/// Renders with variable `var`, highest degree first: "X^4 - 204800*X^2 + 274877906944".
inline std::string to_string(const IntPolynomial& f, const std::string& var = "X") {
    if (f.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (long i = f.degree(); i >= 0; --i) {
        const BigInt& c = f.coefficients()[static_cast<std::size_t>(i)];
        if (c == 0) continue;
        BigInt mag = abs(c);
        if (first)
            os << (sgn(c) < 0 ? "-" : "");
        else
            os << (sgn(c) < 0 ? " - " : " + ");
        first = false;
        if (i == 0) {
            os << mag.get_str();
            continue;
        }
        if (mag != 1) os << mag.get_str() << '*';
        os << var;
        if (i > 1) os << '^' << i;
    }
    return os.str();
}

/// numerator / base^exponent with base prime. Normalized: base does not
/// divide the content of the numerator unless exponent is zero.
class ScaledPolynomial {
   public:
    ScaledPolynomial() = default;
    ScaledPolynomial(IntPolynomial numerator, std::uint64_t denom_base, unsigned denom_exp)
        : numerator_(std::move(numerator)), base_(denom_base), exp_(denom_exp) {
        if (!is_prime(base_)) throw std::invalid_argument("ScaledPolynomial: denominator base must be prime");
        normalize();
    }

    const IntPolynomial& numerator() const noexcept { return numerator_; }
    std::uint64_t denom_base() const noexcept { return base_; }
    unsigned denom_exp() const noexcept { return exp_; }
    long degree() const noexcept { return numerator_.degree(); }

    BigInt denominator() const { return big_pow(base_, exp_); }

    /// Coefficient i as an exact rational.
    Rational coefficient(std::size_t i) const {
        Rational r(numerator_.coefficient(i), denominator());
        r.canonicalize();
        return r;
    }

    Rational evaluate(const Rational& x) const {
        Rational r = numerator_.evaluate(x) / Rational(denominator());
        r.canonicalize();
        return r;
    }

    friend ScaledPolynomial operator*(const ScaledPolynomial& a, const ScaledPolynomial& b) {
        if (a.base_ != b.base_ && a.exp_ != 0 && b.exp_ != 0)
            throw std::invalid_argument("ScaledPolynomial: denominator bases differ");
        std::uint64_t base = a.exp_ != 0 ? a.base_ : b.base_;
        return ScaledPolynomial(a.numerator_ * b.numerator_, base, a.exp_ + b.exp_);
    }

    friend bool operator==(const ScaledPolynomial& a, const ScaledPolynomial& b) {
        return a.numerator_ == b.numerator_ && a.exp_ == b.exp_ && (a.exp_ == 0 || a.base_ == b.base_);
    }

   private:
    void normalize() {
        if (numerator_.is_zero()) {
            exp_ = 0;
            return;
        }
        const BigInt p = to_big(base_);
        BigInt content = numerator_.content();
        unsigned strip = 0;
        while (strip < exp_ && mpz_divisible_p(content.get_mpz_t(), p.get_mpz_t())) {
            mpz_divexact(content.get_mpz_t(), content.get_mpz_t(), p.get_mpz_t());
            ++strip;
        }
        if (strip) {
            numerator_ = numerator_.divide_exact(big_pow(base_, strip));
            exp_ -= strip;
        }
    }

    IntPolynomial numerator_;
    std::uint64_t base_ = 2;
    unsigned exp_ = 0;
};

/// Dense polynomial over F_ell for a machine-word prime ell < 2^62.
class ModPolynomial {
   public:
    static constexpr std::uint64_t max_modulus = std::uint64_t{1} << 62;

    explicit ModPolynomial(std::uint64_t modulus) : modulus_(checked_modulus(modulus)) {}

    /// Coefficients are reduced into [0, modulus).
    ModPolynomial(std::uint64_t modulus, const std::vector<std::int64_t>& coeffs) : modulus_(checked_modulus(modulus)) {
        coeffs_.reserve(coeffs.size());
        const auto m = static_cast<std::int64_t>(modulus_);
        for (auto c : coeffs) coeffs_.push_back(static_cast<std::uint64_t>(((c % m) + m) % m));
        trim();
    }

    static ModPolynomial constant(std::uint64_t modulus, std::uint64_t c) {
        ModPolynomial f(modulus);
        f.coeffs_ = {c % modulus};
        f.trim();
        return f;
    }

    std::uint64_t modulus() const noexcept { return modulus_; }
    const std::vector<std::uint64_t>& coefficients() const noexcept { return coeffs_; }
    bool is_zero() const noexcept { return coeffs_.empty(); }
    bool is_one() const noexcept { return coeffs_.size() == 1 && coeffs_[0] == 1; }
    long degree() const noexcept { return static_cast<long>(coeffs_.size()) - 1; }
    std::uint64_t coefficient(std::size_t i) const noexcept { return i < coeffs_.size() ? coeffs_[i] : 0; }
    std::uint64_t leading() const noexcept { return coeffs_.empty() ? 0 : coeffs_.back(); }

    std::uint64_t evaluate(std::uint64_t x) const {
        x %= modulus_;
        std::uint64_t acc = 0;
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = (mulmod(acc, x, modulus_) + *it) % modulus_;
        return acc;
    }

    ModPolynomial monic() const {
        if (is_zero()) return *this;
        const std::uint64_t inv = inverse(leading());
        ModPolynomial r = with_coeffs(coeffs_);
        for (auto& c : r.coeffs_) c = mulmod(c, inv, modulus_);
        return r;
    }

    friend ModPolynomial operator+(const ModPolynomial& a, const ModPolynomial& b) {
        check_same(a, b);
        std::vector<std::uint64_t> out(std::max(a.coeffs_.size(), b.coeffs_.size()), 0);
        for (std::size_t i = 0; i < out.size(); ++i) out[i] = (a.coefficient(i) + b.coefficient(i)) % a.modulus_;
        return a.with_coeffs(std::move(out));
    }

    friend ModPolynomial operator-(const ModPolynomial& a, const ModPolynomial& b) {
        check_same(a, b);
        std::vector<std::uint64_t> out(std::max(a.coeffs_.size(), b.coeffs_.size()), 0);
        for (std::size_t i = 0; i < out.size(); ++i)
            out[i] = (a.coefficient(i) + a.modulus_ - b.coefficient(i)) % a.modulus_;
        return a.with_coeffs(std::move(out));
    }

    friend ModPolynomial operator*(const ModPolynomial& a, const ModPolynomial& b) {
        check_same(a, b);
        if (a.is_zero() || b.is_zero()) return ModPolynomial(a.modulus_, Unchecked{});
        std::vector<std::uint64_t> out(a.coeffs_.size() + b.coeffs_.size() - 1, 0);
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
            if (a.coeffs_[i] == 0) continue;
            for (std::size_t k = 0; k < b.coeffs_.size(); ++k)
                out[i + k] = (out[i + k] + mulmod(a.coeffs_[i], b.coeffs_[k], a.modulus_)) % a.modulus_;
        }
        return a.with_coeffs(std::move(out));
    }

    /// (q, r) with a = q*b + r and deg r < deg b.
    friend std::pair<ModPolynomial, ModPolynomial> divrem(const ModPolynomial& a, const ModPolynomial& b) {
        check_same(a, b);
        if (b.is_zero()) throw std::invalid_argument("ModPolynomial: division by the zero polynomial");
        const std::uint64_t m = a.modulus_;
        std::vector<std::uint64_t> rem = a.coeffs_;
        const std::size_t db = b.coeffs_.size() - 1;
        if (rem.size() <= db) return {ModPolynomial(m, Unchecked{}), a};
        std::vector<std::uint64_t> quot(rem.size() - db, 0);
        const std::uint64_t inv_lead = b.inverse(b.leading());
        for (std::size_t i = rem.size(); i-- > db;) {
            std::uint64_t c = mulmod(rem[i], inv_lead, m);
            if (c == 0) continue;
            quot[i - db] = c;
            for (std::size_t k = 0; k <= db; ++k) {
                std::uint64_t sub = mulmod(c, b.coeffs_[k], m);
                rem[i - db + k] = (rem[i - db + k] + m - sub) % m;
            }
        }
        rem.resize(db);
        return {a.with_coeffs(std::move(quot)), a.with_coeffs(std::move(rem))};
    }

    friend bool operator==(const ModPolynomial&, const ModPolynomial&) = default;

   private:
    struct Unchecked {};
    ModPolynomial(std::uint64_t modulus, Unchecked) : modulus_(modulus) {}

    ModPolynomial with_coeffs(std::vector<std::uint64_t> coeffs) const {
        ModPolynomial r(modulus_, Unchecked{});
        r.coeffs_ = std::move(coeffs);
        r.trim();
        return r;
    }

    static std::uint64_t checked_modulus(std::uint64_t m) {
        if (m >= max_modulus || !is_prime(m))
            throw std::invalid_argument("ModPolynomial: modulus must be a prime below 2^62, got " + std::to_string(m));
        return m;
    }

    static void check_same(const ModPolynomial& a, const ModPolynomial& b) {
        if (a.modulus_ != b.modulus_)
            throw std::invalid_argument("ModPolynomial: modulus mismatch (" + std::to_string(a.modulus_) + " vs " +
                                        std::to_string(b.modulus_) + ")");
    }

    std::uint64_t inverse(std::uint64_t a) const { return powmod(a, modulus_ - 2, modulus_); }

    void trim() {
        while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
    }

    std::uint64_t modulus_;
    std::vector<std::uint64_t> coeffs_;

    friend ModPolynomial reduce_mod(const IntPolynomial&, std::uint64_t);
    friend ModPolynomial substitute_square(const ModPolynomial&);
};

/// Monic gcd by the Euclidean algorithm; zero when both inputs are zero.
inline ModPolynomial gcd(ModPolynomial a, ModPolynomial b) {
    if (a.modulus() != b.modulus()) (void)(a + b);  // raises the mismatch error
    while (!b.is_zero()) {
        ModPolynomial r = divrem(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

/// True iff divisor | dividend in F_ell[t].
inline bool divides(const ModPolynomial& divisor, const ModPolynomial& dividend) {
    if (divisor.is_zero()) throw std::invalid_argument("divides: zero divisor");
    return divrem(dividend, divisor).second.is_zero();
}

/// f(t^2).
inline ModPolynomial substitute_square(const ModPolynomial& f) {
    ModPolynomial r(f.modulus_, ModPolynomial::Unchecked{});
    if (f.is_zero()) return r;
    r.coeffs_.assign(2 * f.coeffs_.size() - 1, 0);
    for (std::size_t i = 0; i < f.coeffs_.size(); ++i) r.coeffs_[2 * i] = f.coeffs_[i];
    return r;
}

inline ModPolynomial reduce_mod(const IntPolynomial& f, std::uint64_t ell) {
    ModPolynomial r(ell);
    r.coeffs_.reserve(f.coefficients().size());
    for (const auto& c : f.coefficients()) r.coeffs_.push_back(mod_u64(c, ell));
    r.trim();
    return r;
}

/// Coefficientwise reduction; ell must differ from the denominator base.
inline ModPolynomial reduce_mod(const ScaledPolynomial& f, std::uint64_t ell) {
    if (f.denom_exp() != 0 && f.denom_base() == ell)
        throw std::invalid_argument("reduce_mod: modulus " + std::to_string(ell) + " equals the denominator base");
    ModPolynomial num = reduce_mod(f.numerator(), ell);
    if (f.denom_exp() == 0) return num;
    const std::uint64_t inv = mod_inverse(powmod(f.denom_base(), f.denom_exp(), ell), ell);
    return num * ModPolynomial::constant(ell, inv);
}

inline std::string to_string(const ModPolynomial& f, const std::string& var = "t") {
    std::vector<BigInt> c;
    for (auto v : f.coefficients()) c.push_back(to_big(v));
    return to_string(IntPolynomial(std::move(c)), var);
}

}  // namespace siegel

#endif  // SIEGEL_POLYRING_HPP
