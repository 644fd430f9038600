#pragma once

// Finite abelian groups in invariant-factor form: G = Z/d1 x ... x Z/dk with
// 2 <= d1 | d2 | ... | dk. Elements are coordinate vectors reduced modulo the
// factors. The empty factor list is the trivial group.

#include <string>
#include <vector>

#include "finsymp/errors.hpp"
#include "finsymp/intmat.hpp"
#include "finsymp/rational.hpp"

namespace finsymp {

struct Element {
    std::vector<long long> c;

    bool operator==(const Element&) const = default;
    bool operator<(const Element& o) const { return c < o.c; } // lexicographic
};

struct Group {
    std::vector<long long> factors;

    Group() = default;

    explicit Group(std::vector<long long> fs) : factors(std::move(fs)) {
        for (size_t i = 0; i < factors.size(); ++i) {
            if (factors[i] < 2)
                throw InvalidInput("group factor " + std::to_string(factors[i]) + " < 2");
            if (i + 1 < factors.size() && factors[i + 1] % factors[i] != 0)
                throw InvalidInput("group factors violate divisibility chain");
        }
    }

    size_t rank() const { return factors.size(); }

    long long order() const {
        long long n = 1;
        for (long long d : factors) {
            if (n > (1LL << 62) / d) throw InvalidInput("group order overflows");
            n *= d;
        }
        return n;
    }

    /// Largest factor; 1 for the trivial group. Every element order divides it.
    long long exponent() const { return factors.empty() ? 1 : factors.back(); }

    bool operator==(const Group&) const = default;

    Element zero() const { return Element{std::vector<long long>(rank(), 0)}; }

    Element reduce(std::vector<long long> v) const {
        if (v.size() != rank()) throw InvalidInput("element coordinate count mismatch");
        for (size_t i = 0; i < v.size(); ++i) v[i] = intmat::mod_floor(v[i], factors[i]);
        return Element{std::move(v)};
    }

    bool contains(const Element& x) const {
        if (x.c.size() != rank()) return false;
        for (size_t i = 0; i < x.c.size(); ++i)
            if (x.c[i] < 0 || x.c[i] >= factors[i]) return false;
        return true;
    }

    Element add(const Element& a, const Element& b) const {
        std::vector<long long> v(rank());
        for (size_t i = 0; i < rank(); ++i)
            v[i] = intmat::mod_floor(a.c[i] + b.c[i], factors[i]);
        return Element{std::move(v)};
    }

    Element sub(const Element& a, const Element& b) const {
        std::vector<long long> v(rank());
        for (size_t i = 0; i < rank(); ++i)
            v[i] = intmat::mod_floor(a.c[i] - b.c[i], factors[i]);
        return Element{std::move(v)};
    }

    Element neg(const Element& a) const {
        std::vector<long long> v(rank());
        for (size_t i = 0; i < rank(); ++i) v[i] = intmat::mod_floor(-a.c[i], factors[i]);
        return Element{std::move(v)};
    }

    Element scale(long long n, const Element& a) const {
        std::vector<long long> v(rank());
        for (size_t i = 0; i < rank(); ++i)
            v[i] = intmat::mod_floor((n % factors[i]) * a.c[i], factors[i]);
        return Element{std::move(v)};
    }

    Element unit(size_t i) const {
        auto z = zero();
        z.c.at(i) = 1;
        return z;
    }

    long long element_order(const Element& a) const {
        long long o = 1;
        for (size_t i = 0; i < rank(); ++i) {
            long long d = factors[i] / std::gcd(factors[i], a.c[i]);
            o = std::lcm(o, d);
        }
        return o;
    }

    /// Elements indexed 0..order()-1; the first coordinate is most significant,
    /// so ascending index is ascending lexicographic order.
    Element element_at(long long idx) const {
        std::vector<long long> v(rank());
        for (size_t i = rank(); i-- > 0;) {
            v[i] = idx % factors[i];
            idx /= factors[i];
        }
        return Element{std::move(v)};
    }

    long long index_of(const Element& x) const {
        long long idx = 0;
        for (size_t i = 0; i < rank(); ++i) idx = idx * factors[i] + x.c[i];
        return idx;
    }

    std::string str() const {
        std::string s = "Z(";
        for (size_t i = 0; i < factors.size(); ++i)
            s += (i ? "," : "") + std::to_string(factors[i]);
        return s + ")";
    }
};

/// The dual group: Hom(G, Q/Z) has the same invariant factors.
inline Group dualize(const Group& g) { return g; }

/// Evaluation pairing dual(G) x G -> Q/Z: <a,x> = sum a_i x_i / d_i.
inline QZ dual_pairing(const Group& g, const Element& a, const Element& x) {
    QZ v;
    for (size_t i = 0; i < g.rank(); ++i)
        v = v + QZ(a.c[i] * x.c[i], g.factors[i]);
    return v;
}

} // namespace finsymp
