#pragma once

// Schrodinger models: for a lagrangian pair (Y, alpha) over a polarized space,
// the constraint subspace of functions on K with f(y + x) determined by f(x),
// realized concretely on canonical coset representatives. Heisenberg elements
// act by exact permutation-phase matrices over a cyclotomic ring, and spaces
// of intertwining operators are computed by brute-force linear algebra.

#include <utility>

#include "finsymp/cyclotomic.hpp"
#include "finsymp/heisenberg.hpp"

namespace finsymp {

struct LagrangianPair {
    SymplecticSpace space;
    Subgroup y;
    QuadraticFunction alpha; // refines the polarization restricted to Y

    LagrangianPair(SymplecticSpace s, Subgroup lagrangian, QuadraticFunction a)
        : space(std::move(s)), y(std::move(lagrangian)), alpha(std::move(a)) {
        if (!(y.ambient() == space.carrier))
            throw InvalidInput("subgroup of a different carrier");
        if (classify_subgroup(space, y) != Classification::lagrangian)
            throw InvalidInput("the subgroup is not lagrangian");
        if (!(alpha.domain() == y))
            throw InvalidInput("refinement lives on a different subgroup");
        auto pts = y.elements();
        for (const auto& u : pts)
            for (const auto& v : pts)
                if (!(alpha.eval(space.carrier.add(u, v)) - alpha.eval(u) - alpha.eval(v) ==
                      space.p.eval(u, v)))
                    throw InvalidInput("quadratic function does not refine the polarization");
    }
};

inline bool same_space(const SymplecticSpace& a, const SymplecticSpace& b) {
    return a.carrier == b.carrier && a.p == b.p;
}

inline bool same_pair(const LagrangianPair& a, const LagrangianPair& b) {
    return same_space(a.space, b.space) && a.y == b.y &&
           a.alpha.generator_values() == b.alpha.generator_values() &&
           a.alpha.polar_gram() == b.alpha.polar_gram();
}

/// Least N with every phase of the model in (1/N)Z/Z.
inline long long model_modulus(const LagrangianPair& pair) {
    long long n = 1;
    for (auto& row : pair.space.p.gram)
        for (auto& v : row) n = lcm_ll(n, v.den);
    for (auto& v : pair.alpha.generator_values()) n = lcm_ll(n, v.den);
    for (auto& row : pair.alpha.polar_gram())
        for (auto& v : row) n = lcm_ll(n, v.den);
    return n;
}

struct ModelSpace {
    LagrangianPair pair;
    QuotientData cosets;             // K/Y, projection, lex-least representatives
    std::vector<Element> coset_reps; // basis order: quotient element index
    long long dimension;
    long long modulus;
};

inline ModelSpace model_space(const LagrangianPair& pair) {
    QuotientData qd = quotient(pair.space.carrier, pair.y);
    long long dim = qd.group.order();
    if (dim * dim != pair.space.carrier.order())
        throw InvariantViolation("model dimension squared misses the group order");
    std::vector<Element> reps = qd.coset_reps;
    return ModelSpace{pair, std::move(qd), std::move(reps), dim, model_modulus(pair)};
}

struct CosetSplit {
    Element y; // x - rep, an element of Y
    long long rep_index;
};

inline CosetSplit coset_split(const ModelSpace& ms, const Element& x) {
    long long qi = ms.cosets.group.index_of(ms.cosets.projection.apply(x));
    return {ms.pair.space.carrier.sub(x, ms.coset_reps[qi]), qi};
}

/// The transport phase: f(y + x) = chi(expansion_phase(y, x)) * f(x).
inline QZ expansion_phase(const ModelSpace& ms, const Element& y, const Element& x) {
    return -(ms.pair.space.p.eval(y, x)) - ms.pair.alpha.eval(y);
}

/// One value per coset representative determines the whole function on K.
/// Output is indexed by the carrier's element order.
inline std::vector<CycField::Poly> expand(const ModelSpace& ms, const CycField& f,
                                          const std::vector<CycField::Poly>& values) {
    if (static_cast<long long>(values.size()) != ms.dimension)
        throw InvalidInput("one value per coset representative required");
    const Group& k = ms.pair.space.carrier;
    std::vector<CycField::Poly> out(k.order());
    for (long long i = 0; i < k.order(); ++i) {
        auto sp = coset_split(ms, k.element_at(i));
        out[i] = f.mul(f.chi(expansion_phase(ms, sp.y, ms.coset_reps[sp.rep_index])),
                       values[sp.rep_index]);
    }
    return out;
}

inline std::vector<CycField::Poly> restrict_to_reps(const ModelSpace& ms, const CycField& f,
                                                    const std::vector<CycField::Poly>& fn) {
    const Group& k = ms.pair.space.carrier;
    if (static_cast<long long>(fn.size()) != k.order())
        throw InvalidInput("function must be defined on all of K");
    (void)f;
    std::vector<CycField::Poly> out(ms.dimension);
    for (long long l = 0; l < ms.dimension; ++l) out[l] = fn[k.index_of(ms.coset_reps[l])];
    return out;
}

/// Does a function on K lie in the constraint subspace?
inline bool satisfies_constraint(const ModelSpace& ms, const CycField& f,
                                 const std::vector<CycField::Poly>& fn) {
    auto again = expand(ms, f, restrict_to_reps(ms, f, fn));
    for (size_t i = 0; i < fn.size(); ++i)
        if (!f.equal(fn[i], again[i])) return false;
    return true;
}

struct ModelOperator {
    ModelSpace source;
    ModelSpace target;
    long long zeta_order;
    CycMat matrix; // rows index target representatives, columns source ones
};

/// The Heisenberg action (T_{(t,w)} f)(x) = chi(t + P(x,w)) f(x+w) written in
/// the representative basis; one nonzero entry per row.
inline ModelOperator act(const ModelSpace& ms, const HeisenbergElement& h) {
    const Group& k = ms.pair.space.carrier;
    if (!k.contains(h.point)) throw InvalidInput("acting element lives elsewhere");
    long long n = lcm_ll(ms.modulus, h.scalar.den);
    CycField f(n);
    CycMat m = cmat_zero(f, ms.dimension, ms.dimension);
    for (long long i = 0; i < ms.dimension; ++i) {
        const Element& ri = ms.coset_reps[i];
        auto sp = coset_split(ms, k.add(ri, h.point));
        QZ phase = h.scalar + ms.pair.space.p.eval(ri, h.point) +
                   expansion_phase(ms, sp.y, ms.coset_reps[sp.rep_index]);
        m[i][sp.rep_index] = f.chi(phase);
    }
    return ModelOperator{ms, ms, n, std::move(m)};
}

inline ModelOperator compose(const ModelOperator& after, const ModelOperator& before) {
    if (!same_pair(after.source.pair, before.target.pair))
        throw InvalidInput("operator composition across mismatched models");
    long long n = lcm_ll(after.zeta_order, before.zeta_order);
    CycField f(n);
    CycMat a = lift_entries(f, CycField(after.zeta_order), after.matrix);
    CycMat b = lift_entries(f, CycField(before.zeta_order), before.matrix);
    return ModelOperator{before.source, after.target, n, cmat_mul(f, a, b)};
}

/// Multiply by the root of unity chi(t).
inline ModelOperator scale(const ModelOperator& op, const QZ& t) {
    long long n = lcm_ll(op.zeta_order, t.den);
    CycField f(n);
    CycMat m = lift_entries(f, CycField(op.zeta_order), op.matrix);
    return ModelOperator{op.source, op.target, n, cmat_scale(f, m, f.chi(t))};
}

inline bool operator_equal(const ModelOperator& a, const ModelOperator& b) {
    long long n = lcm_ll(a.zeta_order, b.zeta_order);
    CycField f(n);
    return cmat_equal(f, lift_entries(f, CycField(a.zeta_order), a.matrix),
                      lift_entries(f, CycField(b.zeta_order), b.matrix));
}

struct HomSpace {
    long long zeta_order;
    std::vector<ModelOperator> basis; // maps from the first model to the second
    long long dimension() const { return static_cast<long long>(basis.size()); }
};

/// All M with M act_1(h) = act_2(h) M, solved exactly. Checking h over the
/// carrier's unit generators suffices: act is multiplicative and central
/// elements act by the same scalar on both sides.
inline HomSpace hom_space(const ModelSpace& ms1, const ModelSpace& ms2,
                          long long bound = 4096) {
    if (!same_space(ms1.pair.space, ms2.pair.space))
        throw InvalidInput("models over different spaces");
    long long d1 = ms1.dimension, d2 = ms2.dimension;
    if (d1 * d2 > bound) throw BoundExceeded(d1 * d2, bound);
    long long n = lcm_ll(ms1.modulus, ms2.modulus);
    CycField f(n);
    const Group& k = ms1.pair.space.carrier;
    CycMat rows;
    for (size_t g = 0; g < k.rank(); ++g) {
        HeisenbergElement h{QZ(), k.unit(g)};
        ModelOperator op1 = act(ms1, h), op2 = act(ms2, h);
        CycMat m1 = lift_entries(f, CycField(op1.zeta_order), op1.matrix);
        CycMat m2 = lift_entries(f, CycField(op2.zeta_order), op2.matrix);
        // unknown M is d2 x d1, flattened row-major
        for (long long r = 0; r < d2; ++r)
            for (long long c = 0; c < d1; ++c) {
                std::vector<CycField::Poly> row(d2 * d1, f.zero());
                for (long long s = 0; s < d1; ++s)
                    row[r * d1 + s] = f.add(row[r * d1 + s], m1[s][c]);
                for (long long s = 0; s < d2; ++s)
                    row[s * d1 + c] = f.sub(row[s * d1 + c], m2[r][s]);
                rows.push_back(std::move(row));
            }
    }
    HomSpace out{n, {}};
    for (auto& v : cmat_nullspace(f, rows)) {
        CycMat m(d2, std::vector<CycField::Poly>(d1));
        for (long long r = 0; r < d2; ++r)
            for (long long c = 0; c < d1; ++c) m[r][c] = v[r * d1 + c];
        out.basis.push_back(ModelOperator{ms1, ms2, n, std::move(m)});
    }
    return out;
}

} // namespace finsymp
