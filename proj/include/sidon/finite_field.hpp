#pragma once

// GF(p^m) with table-based logarithms. Elements are polynomials over GF(p)
// of degree < m, packed as base-p integers (coefficient of x^i is digit i).

#include <cstdint>
#include <string>
#include <vector>

#include "sidon/config.hpp"
#include "sidon/error.hpp"
#include "sidon/integer.hpp"

namespace sidon {

struct FieldElement {
    std::uint32_t value = 0;

    auto operator<=>(const FieldElement&) const = default;
};

class FiniteField {
public:
    /// Modulus: the monic irreducible of degree m whose coefficient list,
    /// read from the leading term down, is lexicographically smallest.
    /// Primitive element: the smallest packed value of full order.
    FiniteField(std::int64_t p, unsigned m, const Limits& limits = default_limits()) : p_(p), m_(m) {
        require(is_prime(p), ErrorCode::NotPrime, std::to_string(p) + " is not prime");
        require(m >= 1, ErrorCode::InvalidArgument, "extension degree must be at least 1");
        BigInt size = ipow(BigInt(p), m);
        require(size <= limits.max_field_order, ErrorCode::FieldTooLarge,
                "field order " + size.str() + " exceeds the configured bound");
        size_ = static_cast<std::uint32_t>(size);
        choose_modulus();
        build_tables();
    }

    std::int64_t characteristic() const { return p_; }
    unsigned degree() const { return m_; }
    std::uint32_t size() const { return size_; }

    /// Coefficients c_0..c_m of the monic modulus.
    const std::vector<std::int64_t>& modulus() const { return modulus_; }

    FieldElement zero() const { return {0}; }
    FieldElement one() const { return {1}; }
    FieldElement primitive() const { return primitive_; }

    FieldElement from_coeffs(const std::vector<std::int64_t>& coeffs) const {
        require(coeffs.size() <= m_, ErrorCode::InvalidArgument, "too many coefficients for field degree");
        std::uint32_t v = 0;
        for (std::size_t i = coeffs.size(); i-- > 0;)
            v = v * static_cast<std::uint32_t>(p_) + static_cast<std::uint32_t>(floor_mod(coeffs[i], p_));
        return {v};
    }

    std::vector<std::int64_t> coeffs(FieldElement a) const {
        std::vector<std::int64_t> c(m_);
        std::uint32_t v = a.value;
        for (unsigned i = 0; i < m_; ++i) {
            c[i] = v % p_;
            v /= static_cast<std::uint32_t>(p_);
        }
        return c;
    }

    FieldElement add(FieldElement a, FieldElement b) const {
        auto ca = coeffs(a), cb = coeffs(b);
        for (unsigned i = 0; i < m_; ++i) ca[i] = (ca[i] + cb[i]) % p_;
        return from_coeffs(ca);
    }

    FieldElement neg(FieldElement a) const {
        auto ca = coeffs(a);
        for (auto& c : ca) c = floor_mod(-c, p_);
        return from_coeffs(ca);
    }

    FieldElement sub(FieldElement a, FieldElement b) const { return add(a, neg(b)); }

    FieldElement mul(FieldElement a, FieldElement b) const {
        if (a.value == 0 || b.value == 0) return zero();
        return exp_[(log_[a.value] + log_[b.value]) % (size_ - 1)];
    }

    FieldElement pow(FieldElement a, std::int64_t e) const {
        if (a.value == 0) {
            require(e >= 0, ErrorCode::InvalidArgument, "zero has no inverse");
            return e == 0 ? one() : zero();
        }
        std::int64_t order = size_ - 1;
        return exp_[static_cast<std::size_t>(mul_mod(log_[a.value], floor_mod(e, order), order))];
    }

    FieldElement inverse(FieldElement a) const { return pow(a, -1); }

    /// a in [0, size-1) with primitive^a = x.
    std::int64_t dlog(FieldElement x) const {
        require(x.value != 0 && x.value < size_, ErrorCode::InvalidArgument, "discrete log of zero is undefined");
        return log_[x.value];
    }

    /// Powers of primitive, index a -> primitive^a.
    FieldElement exp(std::int64_t a) const { return exp_[static_cast<std::size_t>(floor_mod(a, size_ - 1))]; }

    /// Elements of the subfield GF(p^d), d | m: zero plus the powers of
    /// primitive^((p^m - 1)/(p^d - 1)).
    std::vector<FieldElement> subfield(unsigned d) const {
        require(d >= 1 && m_ % d == 0, ErrorCode::InvalidArgument, "subfield degree must divide field degree");
        std::int64_t q = 1;
        for (unsigned i = 0; i < d; ++i) q *= p_;
        std::int64_t step = (static_cast<std::int64_t>(size_) - 1) / (q - 1);
        std::vector<FieldElement> out{zero()};
        for (std::int64_t j = 0; j < q - 1; ++j) out.push_back(exp(j * step));
        return out;
    }

private:
    using Poly = std::vector<std::int64_t>;

    static void trim(Poly& a) {
        while (!a.empty() && a.back() == 0) a.pop_back();
    }

    Poly poly_mod(Poly a, const Poly& b) const {
        trim(a);
        const std::int64_t lead_inv = modular_inverse(b.back(), p_);
        while (a.size() >= b.size()) {
            std::int64_t f = mul_mod(a.back(), lead_inv, p_);
            std::size_t shift = a.size() - b.size();
            for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] = floor_mod(a[shift + i] - f * b[i], p_);
            trim(a);
        }
        return a;
    }

    Poly poly_mul(const Poly& a, const Poly& b) const {
        if (a.empty() || b.empty()) return {};
        Poly r(a.size() + b.size() - 1, 0);
        for (std::size_t i = 0; i < a.size(); ++i)
            for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p_;
        return r;
    }

    bool irreducible(const Poly& f) const {
        const unsigned deg = static_cast<unsigned>(f.size() - 1);
        for (unsigned d = 1; 2 * d <= deg; ++d) {
            std::int64_t count = 1;
            for (unsigned i = 0; i < d; ++i) count *= p_;
            for (std::int64_t low = 0; low < count; ++low) {
                Poly g(d + 1);
                std::int64_t v = low;
                for (unsigned i = 0; i < d; ++i) {
                    g[i] = v % p_;
                    v /= p_;
                }
                g[d] = 1;
                if (poly_mod(f, g).empty()) return false;
            }
        }
        return true;
    }

    void choose_modulus() {
        for (std::uint32_t low = 0; low < size_; ++low) {
            Poly f(m_ + 1);
            std::uint32_t v = low;
            for (unsigned i = 0; i < m_; ++i) {
                f[i] = v % p_;
                v /= static_cast<std::uint32_t>(p_);
            }
            f[m_] = 1;
            if (irreducible(f)) {
                modulus_ = f;
                return;
            }
        }
        fail(ErrorCode::InvalidArgument, "no irreducible polynomial found");
    }

    Poly slow_mul(const Poly& a, const Poly& b) const { return poly_mod(poly_mul(a, b), modulus_); }

    Poly slow_pow(Poly a, std::int64_t e) const {
        Poly r{1};
        while (e > 0) {
            if (e & 1) r = slow_mul(r, a);
            a = slow_mul(a, a);
            e >>= 1;
        }
        return r;
    }

    Poly unpack(std::uint32_t v) const {
        Poly c(m_);
        for (unsigned i = 0; i < m_; ++i) {
            c[i] = v % p_;
            v /= static_cast<std::uint32_t>(p_);
        }
        trim(c);
        return c;
    }

    std::uint32_t pack(Poly c) const {
        c.resize(m_, 0);
        std::uint32_t v = 0;
        for (std::size_t i = m_; i-- > 0;) v = v * static_cast<std::uint32_t>(p_) + static_cast<std::uint32_t>(c[i]);
        return v;
    }

    void build_tables() {
        const std::int64_t order = static_cast<std::int64_t>(size_) - 1;
        const auto primes = factorize(order);
        std::uint32_t gen = 0;
        for (std::uint32_t cand = 1; cand < size_; ++cand) {
            Poly c = unpack(cand);
            bool full = true;
            for (const auto& [q, e] : primes) {
                Poly t = slow_pow(c, order / q);
                if (t.size() == 1 && t[0] == 1) {
                    full = false;
                    break;
                }
            }
            if (full) {
                gen = cand;
                break;
            }
        }
        require(gen != 0, ErrorCode::InvalidArgument, "no primitive element found");
        primitive_ = {gen};

        exp_.resize(static_cast<std::size_t>(order));
        log_.assign(size_, -1);
        Poly g = unpack(gen);
        Poly cur{1};
        for (std::int64_t a = 0; a < order; ++a) {
            std::uint32_t v = pack(cur);
            exp_[static_cast<std::size_t>(a)] = {v};
            log_[v] = a;
            cur = slow_mul(cur, g);
        }
    }

    std::int64_t p_;
    unsigned m_;
    std::uint32_t size_ = 0;
    Poly modulus_;
    FieldElement primitive_;
    std::vector<FieldElement> exp_;
    std::vector<std::int64_t> log_;
};

} // namespace sidon
