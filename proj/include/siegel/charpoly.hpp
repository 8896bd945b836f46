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

#ifndef SIEGEL_CHARPOLY_HPP
#define SIEGEL_CHARPOLY_HPP

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "arith.hpp"
#include "hecke.hpp"
#include "polyring.hpp"

namespace siegel {

/// (tau(p)^2 - tau(p^2)) / 2, the X^2 coefficient of the Frobenius charpoly.
/// An odd numerator means the trace data is corrupt.
inline BigInt middle_coefficient(const TraceTable& traces, const FormWeight& w, std::uint64_t p) {
    const BigInt& t1 = traces.trace(w, p, 1);
    const BigInt& t2 = traces.trace(w, p, 2);
    BigInt num = t1 * t1 - t2;
    if (mpz_odd_p(num.get_mpz_t()))
        throw DataError("tau(p)^2 - tau(p^2) is odd for weight " + to_string(w) + " at p = " + std::to_string(p));
    mpz_divexact_ui(num.get_mpz_t(), num.get_mpz_t(), 2);
    return num;
}

/// Characteristic polynomial of Frob_p on the 4-dimensional representation:
/// X^4 - tau X^3 + c X^2 - tau p^w X + p^(2w).
inline IntPolynomial frobenius_charpoly(const TraceTable& traces, const FormWeight& w, std::uint64_t p) {
    const BigInt& tau = traces.trace(w, p, 1);
    const BigInt c = middle_coefficient(traces, w, p);
    const auto mw = static_cast<unsigned long>(w.motivic_weight());
    return IntPolynomial{big_pow(p, 2 * mw), -tau * big_pow(p, mw), c, -tau, BigInt(1)};
}

/// The palindromic quartic t^4 - a t^3 + b t^2 - a t + 1 with
/// a = c / p^w - 2 and b = tau(p^2) / p^w + 2.
inline ScaledPolynomial reduced_quartic(const TraceTable& traces, const FormWeight& w, std::uint64_t p) {
    const auto mw = static_cast<unsigned>(w.motivic_weight());
    const BigInt pw = big_pow(p, mw);
    const BigInt a_num = middle_coefficient(traces, w, p) - 2 * pw;
    const BigInt b_num = traces.trace(w, p, 2) + 2 * pw;
    return ScaledPolynomial(IntPolynomial{pw, -a_num, b_num, -a_num, pw}, p, mw);
}

/// Frobenius charpoly on the 5-dimensional orthogonal piece of the exterior
/// square twisted by the inverse similitude: (t - 1) times reduced_quartic.
inline ScaledPolynomial orthogonal_charpoly(const TraceTable& traces, const FormWeight& w, std::uint64_t p) {
    const ScaledPolynomial linear(IntPolynomial{BigInt(-1), BigInt(1)}, p, 0);
    return linear * reduced_quartic(traces, w, p);
}

struct FrobeniusData {
    FormWeight weight;
    std::uint64_t p;
    IntPolynomial charpoly_V;
    ScaledPolynomial orthogonal_R;
    ScaledPolynomial reduced_S;
};

inline FrobeniusData frobenius_data(const TraceTable& traces, const FormWeight& w, std::uint64_t p) {
    return {w, p, frobenius_charpoly(traces, w, p), orthogonal_charpoly(traces, w, p), reduced_quartic(traces, w, p)};
}

namespace detail {

// Sign of u + v*sqrt(n) for n >= 0, exactly.
inline int sign_with_root(const BigInt& u, const BigInt& v, const BigInt& n) {
    const int su = sgn(u);
    const int sv = n == 0 ? 0 : sgn(v);
    if (su >= 0 && sv >= 0) return (su > 0 || sv > 0) ? 1 : 0;
    if (su <= 0 && sv <= 0) return (su < 0 || sv < 0) ? -1 : 0;
    const int cmp = sgn(BigInt(u * u - v * v * n));
    return su > 0 ? cmp : -cmp;
}

}  // namespace detail

/// True iff every root of the Frobenius charpoly has absolute value p^(w/2).
/// Substituting Y = X + p^w / X leaves Y^2 - tau Y + (c - 2 p^w); both of its
/// roots must be real and lie in [-2 p^(w/2), 2 p^(w/2)]. Exact integer tests only.
inline bool weil_check(const TraceTable& traces, const FormWeight& w, std::uint64_t p) {
    const BigInt& tau = traces.trace(w, p, 1);
    const BigInt pw = big_pow(p, static_cast<unsigned long>(w.motivic_weight()));
    const BigInt c = middle_coefficient(traces, w, p) - 2 * pw;

    if (sgn(BigInt(tau * tau - 4 * c)) < 0) return false;
    if (tau * tau > 16 * pw) return false;  // vertex tau/2 outside the interval
    // q(+-B) = 4 p^w + c -+ 2 tau sqrt(p^w)
    const BigInt u = 4 * pw + c;
    if (detail::sign_with_root(u, BigInt(-2 * tau), pw) < 0) return false;
    if (detail::sign_with_root(u, BigInt(2 * tau), pw) < 0) return false;
    return true;
}

/// Multiset of integer weights, kept sorted.
class WeightList {
   public:
    WeightList() = default;
    explicit WeightList(std::vector<int> weights) : weights_(std::move(weights)) {
        std::sort(weights_.begin(), weights_.end());
    }

    const std::vector<int>& weights() const noexcept { return weights_; }
    std::size_t size() const noexcept { return weights_.size(); }
    std::size_t multiplicity(int v) const {
        return static_cast<std::size_t>(std::count(weights_.begin(), weights_.end(), v));
    }

    friend bool operator==(const WeightList&, const WeightList&) = default;

   private:
    std::vector<int> weights_;
};

/// Tame inertia weights at ell of the residual representation: {0, k-2, j+k-1, j+2k-3}.
inline WeightList inertia_weights(const FormWeight& w) {
    return WeightList({0, w.k() - 2, w.j() + w.k() - 1, w.j() + 2 * w.k() - 3});
}

/// Pairwise sums k_i + k_j (i < j) of a four-element list: the weights on the
/// exterior square. No reduction modulo ell.
inline WeightList wedge_weights(const WeightList& in) {
    if (in.size() != 4)
        throw std::invalid_argument("wedge_weights: expected 4 weights, got " + std::to_string(in.size()));
    std::vector<int> out;
    const auto& v = in.weights();
    for (std::size_t a = 0; a < v.size(); ++a)
        for (std::size_t b = a + 1; b < v.size(); ++b) out.push_back(v[a] + v[b]);
    return WeightList(std::move(out));
}

/// Dimension of the space of level-one cusp forms of even weight m >= 4.
inline int cusp_dim_level1(int m) {
    if (m < 4 || m % 2 != 0)
        throw std::invalid_argument("cusp_dim_level1: weight must be even and at least 4, got " + std::to_string(m));
    return m % 12 == 2 ? m / 12 - 1 : m / 12;
}

}  // namespace siegel

#endif  // SIEGEL_CHARPOLY_HPP
