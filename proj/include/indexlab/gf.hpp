#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "indexlab/errors.hpp"

namespace indexlab {

/// Elements of GF(p^k) are stored as integers in [0, p^k): the base-p digits,
/// least significant first, are the coefficients of a polynomial of degree < k.
/// For k = 1 this coincides with integers mod p.
using FieldElement = std::uint64_t;

namespace detail {

inline bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// Polynomials over GF(p) as coefficient vectors, low degree first.
using PolyP = std::vector<std::uint32_t>;

inline void poly_trim(PolyP& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

// Remainder of a mod b over GF(p); b must be monic.
inline PolyP poly_mod(PolyP a, const PolyP& b, std::uint32_t p) {
    poly_trim(a);
    std::size_t db = b.size() - 1;
    while (a.size() > db) {
        std::uint32_t lead = a.back();
        std::size_t shift = a.size() - 1 - db;
        if (lead != 0) {
            for (std::size_t i = 0; i <= db; ++i) {
                std::uint64_t sub = static_cast<std::uint64_t>(lead) * b[i] % p;
                a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + p - sub) % p);
            }
        }
        a.pop_back();
        poly_trim(a);
        if (a.size() <= db) break;
    }
    return a;
}

inline bool poly_divides(const PolyP& d, const PolyP& a, std::uint32_t p) {
    return poly_mod(a, d, p).empty();
}

}  // namespace detail

/// A finite field GF(p^k), fixed by its canonical irreducible modulus: among
/// all monic irreducibles of degree k over GF(p), the one whose coefficient
/// tuple (c0..c_{k-1}) read as a base-p integer is smallest.
struct FieldSpec {
    std::uint64_t p = 2;   ///< prime characteristic
    std::uint32_t k = 1;   ///< extension degree
    std::uint64_t q = 2;   ///< p^k, cached
    std::vector<std::uint32_t> modulus;  ///< k+1 coefficients, low degree first, monic

    bool operator==(const FieldSpec& o) const { return p == o.p && k == o.k; }
    bool operator!=(const FieldSpec& o) const { return !(*this == o); }

    bool valid_element(FieldElement a) const { return a < q; }

    void check_element(FieldElement a) const {
        if (!valid_element(a)) throw std::invalid_argument("field element out of range");
    }

    FieldElement add(FieldElement a, FieldElement b) const {
        if (k == 1) {
            FieldElement s = a + b;
            return s >= p ? s - p : s;
        }
        FieldElement r = 0, w = 1;
        for (std::uint32_t i = 0; i < k; ++i) {
            std::uint64_t da = a % p, db = b % p;
            std::uint64_t ds = da + db;
            if (ds >= p) ds -= p;
            r += ds * w;
            a /= p;
            b /= p;
            w *= p;
        }
        return r;
    }

    FieldElement neg(FieldElement a) const {
        if (k == 1) return a == 0 ? 0 : p - a;
        FieldElement r = 0, w = 1;
        for (std::uint32_t i = 0; i < k; ++i) {
            std::uint64_t da = a % p;
            r += (da == 0 ? 0 : p - da) * w;
            a /= p;
            w *= p;
        }
        return r;
    }

    FieldElement sub(FieldElement a, FieldElement b) const { return add(a, neg(b)); }

    FieldElement mul(FieldElement a, FieldElement b) const {
        if (k == 1) return a * b % p;
        if (a == 0 || b == 0) return 0;
        // convolve digit vectors, then reduce modulo the canonical irreducible
        std::uint32_t da[17] = {0}, db[17] = {0};
        std::uint64_t conv[33] = {0};
        FieldElement t = a;
        for (std::uint32_t i = 0; i < k; ++i, t /= p) da[i] = static_cast<std::uint32_t>(t % p);
        t = b;
        for (std::uint32_t i = 0; i < k; ++i, t /= p) db[i] = static_cast<std::uint32_t>(t % p);
        for (std::uint32_t i = 0; i < k; ++i)
            for (std::uint32_t j = 0; j < k; ++j) conv[i + j] += static_cast<std::uint64_t>(da[i]) * db[j];
        // reduce degrees 2k-2 .. k using x^k = -(modulus minus leading term)
        for (std::uint32_t d = 2 * k - 2; d >= k && d < 33; --d) {
            std::uint64_t c = conv[d] % p;
            conv[d] = 0;
            if (c == 0) continue;
            for (std::uint32_t i = 0; i < k; ++i) {
                std::uint64_t sub_ = c * (modulus[i] % p) % p;
                conv[d - k + i] = (conv[d - k + i] + p - sub_) % p;
            }
        }
        FieldElement r = 0, w = 1;
        for (std::uint32_t i = 0; i < k; ++i) {
            r += (conv[i] % p) * w;
            w *= p;
        }
        return r;
    }

    FieldElement inv(FieldElement a) const {
        if (a == 0) throw std::invalid_argument("inverse of zero");
        check_element(a);
        if (k == 1) {
            // extended Euclid mod p
            std::int64_t t = 0, newt = 1;
            std::int64_t r = static_cast<std::int64_t>(p), newr = static_cast<std::int64_t>(a);
            while (newr != 0) {
                std::int64_t quot = r / newr;
                std::int64_t tmp = t - quot * newt;
                t = newt;
                newt = tmp;
                tmp = r - quot * newr;
                r = newr;
                newr = tmp;
            }
            if (t < 0) t += static_cast<std::int64_t>(p);
            return static_cast<FieldElement>(t);
        }
        // q <= 2^16 by construction: exhaustive search is fine
        for (FieldElement c = 1; c < q; ++c)
            if (mul(a, c) == 1) return c;
        throw std::logic_error("no inverse found (modulus not irreducible?)");
    }

    FieldElement pow(FieldElement a, std::uint64_t e) const {
        FieldElement r = 1;
        while (e != 0) {
            if (e & 1) r = mul(r, a);
            a = mul(a, a);
            e >>= 1;
        }
        return r;
    }

    std::string to_string() const {
        if (k == 1) return std::to_string(p);
        return std::to_string(p) + "^" + std::to_string(k);
    }
};

namespace detail {

inline bool is_irreducible(const PolyP& f, std::uint32_t p) {
    // monic degree-k polynomial; reducible iff it has a monic factor of
    // degree in [1, k/2], found by trial polynomial division
    std::size_t k = f.size() - 1;
    for (std::size_t d = 1; d <= k / 2; ++d) {
        std::uint64_t count = 1;
        for (std::size_t i = 0; i < d; ++i) count *= p;
        for (std::uint64_t lo = 0; lo < count; ++lo) {
            PolyP g(d + 1, 0);
            std::uint64_t t = lo;
            for (std::size_t i = 0; i < d; ++i, t /= p) g[i] = static_cast<std::uint32_t>(t % p);
            g[d] = 1;
            if (poly_divides(g, f, p)) return false;
        }
    }
    return true;
}

inline PolyP canonical_irreducible(std::uint64_t p, std::uint32_t k) {
    std::uint64_t count = 1;
    for (std::uint32_t i = 0; i < k; ++i) count *= p;
    for (std::uint64_t lo = 0; lo < count; ++lo) {
        PolyP f(k + 1, 0);
        std::uint64_t t = lo;
        for (std::uint32_t i = 0; i < k; ++i, t /= p) f[i] = static_cast<std::uint32_t>(t % p);
        f[k] = 1;
        if (is_irreducible(f, static_cast<std::uint32_t>(p))) return f;
    }
    throw std::logic_error("no irreducible polynomial found");
}

}  // namespace detail

/// Builds GF(p^k) with the canonical modulus. Fields larger than 2^16 are
/// rejected; nothing in this library needs them.
inline FieldSpec make_field(std::uint64_t p, std::uint32_t k) {
    if (!detail::is_prime_u64(p)) throw std::invalid_argument("field characteristic must be prime: " + std::to_string(p));
    if (k < 1) throw std::invalid_argument("extension degree must be >= 1");
    long double size = 1;
    for (std::uint32_t i = 0; i < k; ++i) size *= static_cast<long double>(p);
    if (size > 65536.0L) throw CapExceeded("field size p^k exceeds 2^16");
    FieldSpec f;
    f.p = p;
    f.k = k;
    f.q = 1;
    for (std::uint32_t i = 0; i < k; ++i) f.q *= p;
    f.modulus = detail::canonical_irreducible(p, k);
    return f;
}

inline FieldSpec make_prime_field(std::uint64_t p) { return make_field(p, 1); }

/// Parses the uniform field string "P" or "P^K" used by CLI flags and file
/// headers.
inline FieldSpec parse_field_spec(const std::string& text) {
    auto caret = text.find('^');
    auto parse_u64 = [](const std::string& s) -> std::uint64_t {
        if (s.empty()) throw std::invalid_argument("malformed field spec");
        for (char c : s)
            if (c < '0' || c > '9') throw std::invalid_argument("malformed field spec: " + s);
        if (s.size() > 10) throw std::invalid_argument("field spec out of range: " + s);
        return std::stoull(s);
    };
    std::uint64_t p;
    std::uint64_t k = 1;
    if (caret == std::string::npos) {
        p = parse_u64(text);
    } else {
        p = parse_u64(text.substr(0, caret));
        k = parse_u64(text.substr(caret + 1));
        if (k < 1) throw std::invalid_argument("extension degree must be >= 1");
        if (k > 16) throw CapExceeded("extension degree too large");
    }
    return make_field(p, static_cast<std::uint32_t>(k));
}

/// C(n, r) mod p via the full Lucas digit product. r > n yields 0.
inline std::uint64_t binomial_mod_p(std::uint64_t n, std::uint64_t r, std::uint64_t p) {
    if (!detail::is_prime_u64(p)) throw std::invalid_argument("binomial_mod_p: p must be prime");
    if (r > n) return 0;
    FieldSpec fp;
    fp.p = p;
    fp.k = 1;
    fp.q = p;
    std::uint64_t result = 1;
    while (n != 0 || r != 0) {
        std::uint64_t nd = n % p, rd = r % p;
        if (rd > nd) return 0;
        // C(nd, rd) mod p with nd < p: multiplicative formula with inverses
        std::uint64_t c = 1;
        for (std::uint64_t i = 1; i <= rd; ++i) {
            c = c * ((nd - i + 1) % p) % p;
            c = c * fp.inv(i % p) % p;
        }
        result = result * c % p;
        if (result == 0) return 0;
        n /= p;
        r /= p;
    }
    return result;
}

}  // namespace indexlab
