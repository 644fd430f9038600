#pragma once

// Canonical maps between Schrodinger models attached to two refined
// lagrangians: the mismatch character and its correction, the kernel-sum
// intertwiner, round-trip and triple-composition scalars, and the transform
// on a split model whose matrix is the character table of the base group.

#include "finsymp/quasisplit.hpp"
#include "finsymp/schrodinger.hpp"

namespace finsymp {

struct MatchReport {
    Subgroup intersection;      // Y meet Z
    QuadraticFunction mismatch; // beta - alpha there; always a character
    Subgroup h0;                // its kernel
    bool matched;               // mismatch identically zero
};

/// The difference of the two refinements on the intersection of their
/// lagrangians. Both refine the same polarization, so the difference is
/// additive; that is re-checked pointwise.
inline MatchReport mismatch_character(const LagrangianPair& p1, const LagrangianPair& p2) {
    if (!same_space(p1.space, p2.space))
        throw InvalidInput("pairs over different symplectic spaces");
    const Group& k = p1.space.carrier;
    Subgroup inter = intersect(p1.y, p2.y);
    Decomposition d = inter.decompose();
    size_t r = d.orders.size();
    std::vector<QZ> vals(r);
    for (size_t a = 0; a < r; ++a)
        vals[a] = p2.alpha.eval(d.gens[a]) - p1.alpha.eval(d.gens[a]);
    QuadraticFunction gamma(inter, d, std::move(vals), Gram(r, std::vector<QZ>(r)));
    auto pts = inter.elements();
    bool matched = true;
    std::vector<Element> ker;
    for (const auto& t : pts) {
        QZ g = gamma.eval(t);
        if (!(g == p2.alpha.eval(t) - p1.alpha.eval(t)))
            throw InvariantViolation("mismatch character is not additive");
        if (g.is_zero())
            ker.push_back(t);
        else
            matched = false;
    }
    for (const auto& t : pts)
        for (const auto& u : pts)
            if (!(gamma.eval(k.add(t, u)) == gamma.eval(t) + gamma.eval(u)))
                throw InvariantViolation("mismatch character is not additive");
    return MatchReport{std::move(inter), std::move(gamma), Subgroup(k, ker), matched};
}

struct MatchCorrection {
    LagrangianPair corrected; // second pair with the adjusted refinement
    Element v;                // carrier point with e(v, .) = the extension
    Element delta;            // the extension, as a point of the dual carrier
};

/// Extend the mismatch character to the whole carrier through the dual of the
/// inclusion, realize it as e(v, .) by nondegeneracy, and absorb it into the
/// second refinement. Afterwards the pairs agree on the intersection.
inline MatchCorrection match_pair(const LagrangianPair& p1, const LagrangianPair& p2) {
    MatchReport rep = mismatch_character(p1, p2);
    const Group& k = p1.space.carrier;
    const Decomposition& d = rep.mismatch.decomposition();
    size_t r = d.orders.size();
    Group ia = d.abstract_group();
    std::vector<long long> gc(r);
    for (size_t a = 0; a < r; ++a)
        gc[a] = rep.mismatch.generator_values()[a].scaled(d.orders[a]);
    Element gamma_el = dualize(ia).reduce(std::move(gc));
    Hom restrict = dualize(Hom::from_columns(ia, k, d.gens));
    auto delta = preimage(restrict, gamma_el);
    if (!delta) throw InvariantViolation("character failed to extend to the carrier");
    auto v = preimage(induced_hom(p1.space.e), *delta);
    if (!v) throw InvariantViolation("extension missed the image of the alternating form");

    const Decomposition& zd = p2.alpha.decomposition();
    std::vector<QZ> cvals(zd.orders.size());
    for (size_t a = 0; a < zd.orders.size(); ++a)
        cvals[a] = dual_pairing(k, *delta, zd.gens[a]);
    QuadraticFunction shift(p2.alpha.domain(), zd, std::move(cvals),
                            Gram(zd.orders.size(), std::vector<QZ>(zd.orders.size())));
    LagrangianPair corrected(p1.space, p2.y, subtract(p2.alpha, shift));
    if (!mismatch_character(p1, corrected).matched)
        throw InvariantViolation("correction failed to match the refinements");
    return MatchCorrection{std::move(corrected), std::move(*v), std::move(*delta)};
}

/// The canonical map F(Y, alpha) -> F(Z, beta): sum the second pair's kernel
/// over coset representatives of Z modulo the intersection,
///   (R f)(x) = sum_z chi(P(z, x) + beta(z)) f(z + x).
/// Requires matched refinements; the summand is then invariant under shifting
/// z by the intersection, so the matrix does not depend on the chosen
/// representatives. Intertwining on the generators is re-checked.
inline ModelOperator intertwiner(const LagrangianPair& p1, const LagrangianPair& p2,
                                 long long bound = 4096) {
    MatchReport rep = mismatch_character(p1, p2);
    if (!rep.matched)
        throw InvalidInput("refinements disagree on the intersection; correct the pair first");
    ModelSpace m1 = model_space(p1), m2 = model_space(p2);
    if (m1.dimension * m2.dimension > bound)
        throw BoundExceeded(m1.dimension * m2.dimension, bound);
    const Group& k = p1.space.carrier;
    auto hpts = rep.intersection.elements();
    std::vector<Element> zreps;
    for (const auto& z : p2.y.elements()) {
        bool least = true;
        for (const auto& h : hpts)
            if (k.add(z, h) < z) least = false;
        if (least) zreps.push_back(z);
    }
    long long n = lcm_ll(m1.modulus, m2.modulus);
    CycField f(n);
    CycMat mat = cmat_zero(f, m2.dimension, m1.dimension);
    for (long long i = 0; i < m2.dimension; ++i) {
        const Element& xi = m2.coset_reps[i];
        for (const auto& z : zreps) {
            auto sp = coset_split(m1, k.add(z, xi));
            QZ phase = p1.space.p.eval(z, xi) + p2.alpha.eval(z) +
                       expansion_phase(m1, sp.y, m1.coset_reps[sp.rep_index]);
            mat[i][sp.rep_index] = f.add(mat[i][sp.rep_index], f.chi(phase));
        }
    }
    ModelOperator op{std::move(m1), std::move(m2), n, std::move(mat)};
    bool nonzero = false;
    for (auto& row : op.matrix)
        for (auto& e : row)
            if (!f.is_zero(e)) nonzero = true;
    if (!nonzero) throw InvariantViolation("kernel sum vanished");
    for (size_t g = 0; g < k.rank(); ++g) {
        HeisenbergElement h{QZ(), k.unit(g)};
        if (!operator_equal(compose(op, act(op.source, h)), compose(act(op.target, h), op)))
            throw InvariantViolation("kernel sum fails the intertwining identity");
    }
    return op;
}

struct CycScalar {
    long long zeta_order;
    CycField::Poly value;
};

/// The scalar by which the round trip F(Y, alpha) -> F(Z, beta) -> F(Y, alpha)
/// acts; it is nonzero because both maps are.
inline CycScalar compose_scalar(const LagrangianPair& p1, const LagrangianPair& p2) {
    ModelOperator round = compose(intertwiner(p2, p1), intertwiner(p1, p2));
    CycField f(round.zeta_order);
    CycField::Poly s{};
    if (!cmat_is_scalar(f, round.matrix, &s))
        throw InvariantViolation("round trip is not a scalar");
    if (f.is_zero(s)) throw InvariantViolation("round trip scalar vanished");
    return CycScalar{round.zeta_order, std::move(s)};
}

/// The scalar of the triple composition
/// F(Y1) -> F(Y2) -> F(Y3) -> F(Y1); the defect of associating the three
/// canonical maps.
inline CycScalar maslov_defect(const LagrangianPair& p1, const LagrangianPair& p2,
                               const LagrangianPair& p3) {
    ModelOperator loop =
        compose(intertwiner(p3, p1), compose(intertwiner(p2, p3), intertwiner(p1, p2)));
    CycField f(loop.zeta_order);
    CycField::Poly s{};
    if (!cmat_is_scalar(f, loop.matrix, &s))
        throw InvariantViolation("triple composition is not a scalar");
    if (f.is_zero(s)) throw InvariantViolation("triple composition scalar vanished");
    return CycScalar{loop.zeta_order, std::move(s)};
}

struct SplitTransform {
    SplitModel model;
    LagrangianPair from; // dual axis, canonical refinement
    LagrangianPair to;   // base axis, canonical refinement
    ModelOperator op;
};

/// The intertwiner between the two axis models of a split carrier. Its matrix
/// in the canonical representative bases is exactly the character table
/// chi(<xi, x>) of the base group; that is verified entry by entry.
inline SplitTransform fm_transform(const Group& b, long long bound = 4096) {
    SplitModel sm = split_model(b);
    LagrangianPair from(sm.space, sm.dual_axis, quadratic_refinement(sm.space, sm.dual_axis));
    LagrangianPair to(sm.space, sm.base_axis, quadratic_refinement(sm.space, sm.base_axis));
    ModelOperator op = intertwiner(from, to, bound);
    CycField f(op.zeta_order);
    for (long long i = 0; i < op.target.dimension; ++i)
        for (long long l = 0; l < op.source.dimension; ++l) {
            QZ expect = dual_pairing(b, dual_part(sm, op.target.coset_reps[i]),
                                     base_part(sm, op.source.coset_reps[l]));
            if (!f.equal(op.matrix[i][l], f.chi(expect)))
                throw InvariantViolation("transform disagrees with the character table");
        }
    return SplitTransform{std::move(sm), std::move(from), std::move(to), std::move(op)};
}

} // namespace finsymp
