#pragma once

// Central extensions of a finite abelian group by Q/Z presented by bilinear
// cocycles, the Heisenberg group of a polarized space, commutator forms, and
// polarization twists by quadratic functions.

#include <optional>
#include <utility>

#include "finsymp/forms.hpp"

namespace finsymp {

struct HeisenbergElement {
    QZ scalar;
    Element point;
    bool operator==(const HeisenbergElement&) const = default;
};

struct CentralExtension {
    Group base;
    BilinearForm cocycle;
    long long modulus; // every cocycle value lies in (1/modulus)Z/Z

    CentralExtension(Group b, BilinearForm c) : base(std::move(b)), cocycle(std::move(c)) {
        if (!(cocycle.left == base) || !(cocycle.right == base))
            throw InvalidInput("cocycle must be a square form on the base group");
        modulus = 1;
        for (auto& row : cocycle.gram)
            for (auto& v : row) modulus = lcm_ll(modulus, v.den);
    }
};

inline CentralExtension heisenberg_extension(const SymplecticSpace& s) {
    return CentralExtension(s.carrier, s.p);
}

/// (t,u)(t',u') = (t + t' + c(u,u'), u + u'). Associative because the cocycle
/// is biadditive.
inline HeisenbergElement extension_mul(const CentralExtension& ext, const HeisenbergElement& a,
                                       const HeisenbergElement& b) {
    return {a.scalar + b.scalar + ext.cocycle.eval(a.point, b.point),
            ext.base.add(a.point, b.point)};
}

inline HeisenbergElement extension_identity(const CentralExtension& ext) {
    return {QZ(), ext.base.zero()};
}

inline HeisenbergElement extension_inverse(const CentralExtension& ext,
                                           const HeisenbergElement& a) {
    Element m = ext.base.neg(a.point);
    return {-a.scalar - ext.cocycle.eval(a.point, m), m};
}

/// Multiplication in H(K, P), the Heisenberg group of the polarized space.
inline HeisenbergElement heisenberg_mul(const SymplecticSpace& s, const HeisenbergElement& a,
                                        const HeisenbergElement& b) {
    return {a.scalar + b.scalar + s.p.eval(a.point, b.point),
            s.carrier.add(a.point, b.point)};
}

/// omega(u,u') = c(u,u') - c(u',u); the extension is commutative iff zero.
inline BilinearForm commutator_form(const CentralExtension& ext) {
    return derived_alternating(ext.cocycle);
}

/// A bilinear cocycle with prescribed commutator form, built by placing omega
/// strictly below the diagonal of the gram matrix.
inline CentralExtension extension_from_form(const Group& q, const BilinearForm& omega) {
    if (!(omega.left == q) || !(omega.right == q))
        throw InvalidInput("commutator form must be a square form on the group");
    if (!is_alternating(omega)) throw InvalidInput("commutator form must be alternating");
    size_t k = q.rank();
    Gram g(k, std::vector<QZ>(k));
    for (size_t i = 0; i < k; ++i)
        for (size_t j = 0; j < i; ++j) g[i][j] = omega.gram[i][j];
    CentralExtension ext(q, BilinearForm(q, q, std::move(g)));
    if (!(commutator_form(ext) == omega))
        throw InvariantViolation("triangular cocycle misses its commutator form");
    return ext;
}

/// Trivialization of the extension over H: lambda with
/// lambda(u+u') - lambda(u) - lambda(u') = c(u,u') on H x H, so that
/// u -> (lambda(u), u) embeds H as a subgroup of the extension. Over Q/Z this
/// is solvable exactly when the commutator form vanishes on H.
inline std::optional<QuadraticFunction> splitting_of_extension(const CentralExtension& ext,
                                                               const Subgroup& h) {
    if (!(h.ambient() == ext.base)) throw InvalidInput("subgroup of a different base group");
    auto d = h.decompose();
    size_t r = d.orders.size();
    Gram polar(r, std::vector<QZ>(r));
    for (size_t a = 0; a < r; ++a)
        for (size_t b = 0; b < r; ++b) polar[a][b] = ext.cocycle.eval(d.gens[a], d.gens[b]);
    for (size_t a = 0; a < r; ++a)
        for (size_t b = 0; b < a; ++b)
            if (!(polar[a][b] == polar[b][a])) return std::nullopt; // commutator obstruction
    std::vector<QZ> vals(r);
    for (size_t a = 0; a < r; ++a) {
        long long o = d.orders[a];
        vals[a] = (-polar[a][a].times(o * (o - 1) / 2)).divided_by(o);
    }
    return QuadraticFunction(h, std::move(d), std::move(vals), std::move(polar));
}

/// The twisted space with polarization P + polar(q). The alternating form is
/// untouched, and (t,x) -> (t - q(x), x) is an isomorphism
/// H(K, P + polar(q)) -> H(K, P); note the map runs from the twisted group to
/// the original one.
inline SymplecticSpace twist_polarization(const SymplecticSpace& s, const QuadraticFunction& q) {
    if (!(q.domain() == Subgroup::full(s.carrier)))
        throw InvalidInput("twist needs a quadratic function on the full carrier");
    size_t k = s.carrier.rank();
    Gram extra(k, std::vector<QZ>(k));
    for (size_t i = 0; i < k; ++i)
        for (size_t j = 0; j < k; ++j)
            extra[i][j] = q.polar_eval(s.carrier.unit(i), s.carrier.unit(j));
    SymplecticSpace twisted =
        symplectic_space(s.carrier, s.p + BilinearForm(s.carrier, s.carrier, std::move(extra)));
    if (!(twisted.e == s.e)) throw InvariantViolation("twist changed the alternating form");
    return twisted;
}

/// The twist isomorphism (t,x) -> (t - q(x), x) from H(K, P + polar(q)) to H(K, P).
inline HeisenbergElement twist_map(const QuadraticFunction& q, const HeisenbergElement& h) {
    return {h.scalar - q.eval(h.point), h.point};
}

} // namespace finsymp
