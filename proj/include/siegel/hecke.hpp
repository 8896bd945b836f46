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

#ifndef SIEGEL_HECKE_HPP
#define SIEGEL_HECKE_HPP

#include <algorithm>
#include <array>
#include <charconv>
#include <compare>
#include <cstdint>
#include <istream>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "arith.hpp"

namespace siegel {

/// Weight (j, k) of a vector-valued genus-2 Siegel cusp form: Sym^j (x) det^k.
class FormWeight {
   public:
    constexpr FormWeight(int j, int k) : j_(j), k_(k) {
        if (j < 0 || j % 2 != 0) throw std::invalid_argument("FormWeight: j must be even and non-negative");
        if (k < 5) throw std::invalid_argument("FormWeight: k must be at least 5");
    }

    constexpr int j() const noexcept { return j_; }
    constexpr int k() const noexcept { return k_; }
    /// Motivic weight w = j + 2k - 3.
    constexpr int motivic_weight() const noexcept { return j_ + 2 * k_ - 3; }

    friend constexpr auto operator<=>(const FormWeight&, const FormWeight&) = default;

   private:
    int j_;
    int k_;
};

inline std::string to_string(const FormWeight& w) {
    return "(" + std::to_string(w.j()) + "," + std::to_string(w.k()) + ")";
}

/// The four weights with one-dimensional cusp spaces treated here.
inline constexpr std::array<FormWeight, 4> embedded_weights = {FormWeight{6, 8}, FormWeight{8, 8}, FormWeight{12, 6},
                                                                FormWeight{4, 10}};

/// Primes at which traces are embedded for every weight.
inline constexpr std::array<std::uint64_t, 5> embedded_primes = {2, 3, 5, 7, 13};

class MissingTraceError : public DataError {
   public:
    MissingTraceError(const FormWeight& w, std::uint64_t p, unsigned r)
        : DataError("no data for tau_" + to_string(w) + "(" + std::to_string(p) + "^" + std::to_string(r) + ")") {}
};

class TraceParseError : public DataError {
   public:
    TraceParseError(std::size_t line, const std::string& what)
        : DataError("trace data line " + std::to_string(line) + ": " + what), line_(line) {}
    std::size_t line() const noexcept { return line_; }

   private:
    std::size_t line_;
};

namespace detail {

struct EmbeddedTrace {
    int j, k;
    std::uint64_t q;
    const char* tau;
};

// Hecke traces tau_{j,k}(q), q = p or p^2.
inline constexpr EmbeddedTrace embedded_traces[] = {
    {6, 8, 2, "0"},
    {6, 8, 3, "-27000"},
    {6, 8, 4, "409600"},
    {6, 8, 9, "333371700"},
    {6, 8, 5, "2843100"},
    {6, 8, 25, "-15923680827500"},
    {6, 8, 7, "-107822000"},
    {6, 8, 49, "-253514141409500"},
    {6, 8, 13, "9952079500"},
    {6, 8, 169, "-4843967045593944889100"},

    {8, 8, 2, "1344"},
    {8, 8, 3, "-6408"},
    {8, 8, 4, "348160"},
    {8, 8, 9, "748312020"},
    {8, 8, 5, "-30774900"},
    {8, 8, 25, "-395299890927500"},
    {8, 8, 7, "451366384"},
    {8, 8, 49, "-155544419215478300"},
    {8, 8, 13, "-328006712228"},
    {8, 8, 169, "-596184280686941758305260"},

    {12, 6, 2, "-240"},
    {12, 6, 3, "68040"},
    {12, 6, 4, "4276480"},
    {12, 6, 9, "-8215290540"},
    {12, 6, 5, "14765100"},
    {12, 6, 25, "722477627072500"},
    {12, 6, 7, "334972400"},
    {12, 6, 49, "-1126868422025500700"},
    {12, 6, 13, "91151149180"},
    {12, 6, 169, "-299941151717771094659180"},

    {4, 10, 2, "-1680"},
    {4, 10, 3, "55080"},
    {4, 10, 4, "-700160"},
    {4, 10, 9, "1854007380"},
    {4, 10, 5, "-7338900"},
    {4, 10, 25, "-904546757727500"},
    {4, 10, 7, "609422800"},
    {4, 10, 49, "-391120313742441500"},
    {4, 10, 13, "-263384451140"},
    {4, 10, 169, "323494600665947822387860"},
};

}  // namespace detail

/// Immutable map (weight, p, r) -> tau_{j,k}(p^r), r in {1, 2}.
class TraceTable {
   public:
    struct Key {
        FormWeight weight;
        std::uint64_t p;
        unsigned r;
        friend auto operator<=>(const Key&, const Key&) = default;
    };

    TraceTable() = default;

    static const TraceTable& embedded() {
        static const TraceTable table = [] {
            TraceTable t;
            for (const auto& e : detail::embedded_traces) {
                std::uint64_t p = e.q;
                unsigned r = 1;
                for (std::uint64_t d = 2; d * d <= e.q; ++d)
                    if (d * d == e.q) {
                        p = d;
                        r = 2;
                    }
                t.entries_.emplace(Key{FormWeight(e.j, e.k), p, r}, BigInt(e.tau));
            }
            return t;
        }();
        return table;
    }

    bool contains(const FormWeight& w, std::uint64_t p, unsigned r) const {
        return entries_.count(Key{w, p, r}) != 0;
    }

    const BigInt& trace(const FormWeight& w, std::uint64_t p, unsigned r) const {
        auto it = entries_.find(Key{w, p, r});
        if (it == entries_.end()) throw MissingTraceError(w, p, r);
        return it->second;
    }

    /// Inserts an entry; a conflicting existing value is a DataError.
    void insert(const FormWeight& w, std::uint64_t p, unsigned r, const BigInt& tau) {
        if (r != 1 && r != 2) throw std::invalid_argument("TraceTable: exponent must be 1 or 2");
        if (!is_prime(p)) throw std::invalid_argument("TraceTable: " + std::to_string(p) + " is not prime");
        auto [it, inserted] = entries_.emplace(Key{w, p, r}, tau);
        if (!inserted && it->second != tau)
            throw DataError("contradiction for tau_" + to_string(w) + "(" + std::to_string(p) + "^" + std::to_string(r) +
                            "): existing value " + it->second.get_str() + ", new value " + tau.get_str());
    }

    const std::map<Key, BigInt>& entries() const noexcept { return entries_; }
    std::size_t size() const noexcept { return entries_.size(); }

    /// Primes p with both tau(p) and tau(p^2) present for w, ascending.
    std::vector<std::uint64_t> primes_for(const FormWeight& w) const {
        std::vector<std::uint64_t> out;
        for (const auto& [key, tau] : entries_)
            if (key.weight == w && key.r == 1 && contains(w, key.p, 2)) out.push_back(key.p);
        return out;
    }

   private:
    std::map<Key, BigInt> entries_;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
    const auto ws = " \t\r\n";
    auto b = s.find_first_not_of(ws);
    if (b == std::string_view::npos) return {};
    auto e = s.find_last_not_of(ws);
    return s.substr(b, e - b + 1);
}

template <class Int>
Int parse_int(std::string_view field, std::size_t line, const char* name) {
    Int v{};
    auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
    if (ec != std::errc{} || ptr != field.data() + field.size())
        throw TraceParseError(line, std::string("invalid ") + name + " '" + std::string(field) + "'");
    return v;
}

}  // namespace detail

/// Reads "j,k,p,r,tau" rows ('#' lines and blank lines ignored) and merges
/// them into a copy of `base`.
inline TraceTable load_traces(std::istream& in, const TraceTable& base = TraceTable::embedded()) {
    TraceTable table = base;
    std::string raw;
    std::size_t line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string_view line = detail::trim(raw);
        if (line.empty() || line.front() == '#') continue;

        std::vector<std::string_view> fields;
        std::size_t start = 0;
        for (;;) {
            auto comma = line.find(',', start);
            fields.push_back(detail::trim(line.substr(start, comma - start)));
            if (comma == std::string_view::npos) break;
            start = comma + 1;
        }
        if (fields.size() != 5)
            throw TraceParseError(line_no, "expected 5 comma-separated fields, got " + std::to_string(fields.size()));

        const int j = detail::parse_int<int>(fields[0], line_no, "j");
        const int k = detail::parse_int<int>(fields[1], line_no, "k");
        const auto p = detail::parse_int<std::uint64_t>(fields[2], line_no, "p");
        const auto r = detail::parse_int<unsigned>(fields[3], line_no, "r");

        std::string_view tau_text = fields[4];
        std::string_view digits = tau_text;
        if (!digits.empty() && (digits.front() == '-' || digits.front() == '+')) digits.remove_prefix(1);
        if (digits.empty() || !std::all_of(digits.begin(), digits.end(), [](char c) { return c >= '0' && c <= '9'; }))
            throw TraceParseError(line_no, "invalid tau '" + std::string(tau_text) + "'");
        if (tau_text.front() == '+') tau_text.remove_prefix(1);

        try {
            table.insert(FormWeight(j, k), p, r, BigInt(std::string(tau_text)));
        } catch (const std::invalid_argument& e) {
            throw TraceParseError(line_no, e.what());
        } catch (const DataError& e) {
            throw DataError("trace data line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    return table;
}

/// Primes ell < 7 and the listed exceptions are residually reducible.
inline const std::vector<std::uint64_t>& reducible_exceptions(const FormWeight& w) {
    static const std::map<FormWeight, std::vector<std::uint64_t>> exceptions = {
        {FormWeight{6, 8}, {11, 17}},
        {FormWeight{8, 8}, {13, 17, 23}},
        {FormWeight{12, 6}, {7, 13, 19}},
        {FormWeight{4, 10}, {11, 19, 41}},
    };
    auto it = exceptions.find(w);
    if (it == exceptions.end())
        throw std::invalid_argument("no residual irreducibility data for weight " + to_string(w));
    return it->second;
}

/// Whether the residual representation mod ell is known to be absolutely irreducible.
inline bool is_known_irreducible(const FormWeight& w, std::uint64_t ell) {
    const auto& ex = reducible_exceptions(w);
    return ell >= 7 && std::find(ex.begin(), ex.end(), ell) == ex.end();
}

}  // namespace siegel

#endif  // SIEGEL_HECKE_HPP
