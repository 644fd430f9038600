#pragma once

// Split models over a base group B: the carrier B^ + B with its canonical
// polarization, graphs of homs B -> B^, shears, the transverse normal form,
// section isotropization, and the coset-level splitting verifier.

#include <optional>
#include <utility>

#include "finsymp/forms.hpp"

namespace finsymp {

struct SplitModel {
    Group b;
    Group bdual;
    Group carrier;         // interleaved factors (b1, b1, b2, b2, ...): even
                           // coordinates are the dual copy, odd the base copy
    BilinearForm p_split;  // ((xi,x),(xi',x')) -> <xi', x>
    BilinearForm e1_form;  // <xi, x'> + <xi', x>
    SymplecticSpace space; // carrier with p_split
    Subgroup dual_axis;
    Subgroup base_axis;
};

inline Element embed_split(const SplitModel& sm, const Element& xi, const Element& x) {
    size_t k = sm.b.rank();
    if (xi.c.size() != k || x.c.size() != k) throw InvalidInput("split embedding rank mismatch");
    std::vector<long long> c(2 * k);
    for (size_t i = 0; i < k; ++i) {
        c[2 * i] = xi.c[i];
        c[2 * i + 1] = x.c[i];
    }
    return sm.carrier.reduce(std::move(c));
}

inline Element dual_part(const SplitModel& sm, const Element& w) {
    size_t k = sm.b.rank();
    std::vector<long long> c(k);
    for (size_t i = 0; i < k; ++i) c[i] = w.c[2 * i];
    return sm.bdual.reduce(std::move(c));
}

inline Element base_part(const SplitModel& sm, const Element& w) {
    size_t k = sm.b.rank();
    std::vector<long long> c(k);
    for (size_t i = 0; i < k; ++i) c[i] = w.c[2 * i + 1];
    return sm.b.reduce(std::move(c));
}

/// The carrier B^ + B. Interleaving the duplicated factors keeps the list in
/// invariant-factor form for any B.
inline SplitModel split_model(const Group& b, long long bound = 1 << 16) {
    if (b.order() > bound / std::max<long long>(b.order(), 1))
        throw BoundExceeded(b.order() * b.order(), bound);
    std::vector<long long> cf;
    for (long long f : b.factors) {
        cf.push_back(f);
        cf.push_back(f);
    }
    Group carrier(cf);
    size_t k = b.rank();
    Gram pg(2 * k, std::vector<QZ>(2 * k));
    Gram eg(2 * k, std::vector<QZ>(2 * k));
    for (size_t i = 0; i < k; ++i) {
        pg[2 * i + 1][2 * i] = QZ(1, b.factors[i]);
        eg[2 * i][2 * i + 1] = QZ(1, b.factors[i]);
        eg[2 * i + 1][2 * i] = QZ(1, b.factors[i]);
    }
    BilinearForm p(carrier, carrier, std::move(pg));
    BilinearForm e1(carrier, carrier, std::move(eg));
    if (!(e1 == p + transpose_form(p)))
        throw InvariantViolation("symmetrized pairing disagrees with its definition");
    SymplecticSpace space = symplectic_space(carrier, p);
    std::vector<Element> dgens, bgens;
    for (size_t i = 0; i < k; ++i) {
        dgens.push_back(carrier.unit(2 * i));
        bgens.push_back(carrier.unit(2 * i + 1));
    }
    Subgroup dual_axis(carrier, dgens);
    Subgroup base_axis(carrier, bgens);
    if (classify_subgroup(space, dual_axis) != Classification::lagrangian ||
        classify_subgroup(space, base_axis) != Classification::lagrangian)
        throw InvariantViolation("a standard axis failed to be lagrangian");
    return SplitModel{b,  dualize(b), std::move(carrier), std::move(p), std::move(e1),
                      std::move(space), std::move(dual_axis), std::move(base_axis)};
}

/// All homomorphisms src -> dst, ordered by the lex order of their generator
/// images.
inline std::vector<Hom> enumerate_homs(const Group& src, const Group& dst,
                                       long long bound = 1 << 16) {
    std::vector<std::vector<Element>> per_gen(src.rank());
    long long total = 1;
    for (size_t j = 0; j < src.rank(); ++j) {
        for (long long i = 0; i < dst.order(); ++i) {
            Element x = dst.element_at(i);
            if (dst.scale(src.factors[j], x) == dst.zero()) per_gen[j].push_back(x);
        }
        total *= static_cast<long long>(per_gen[j].size());
        if (total > bound) throw BoundExceeded(total, bound);
    }
    std::vector<Hom> out;
    std::vector<size_t> pick(src.rank(), 0);
    for (long long step = 0; step < total; ++step) {
        std::vector<Element> cols;
        for (size_t j = 0; j < src.rank(); ++j) cols.push_back(per_gen[j][pick[j]]);
        out.push_back(Hom::from_columns(src, dst, cols));
        for (size_t j = src.rank(); j-- > 0;) {
            if (++pick[j] < per_gen[j].size()) break;
            pick[j] = 0;
        }
    }
    return out;
}

inline Subgroup graph_subgroup(const SplitModel& sm, const Hom& phi) {
    if (!(phi.source == sm.b) || !(phi.target == sm.bdual))
        throw InvalidInput("graph of a hom with the wrong signature");
    std::vector<Element> gens;
    for (size_t i = 0; i < sm.b.rank(); ++i)
        gens.push_back(embed_split(sm, phi.apply(sm.b.unit(i)), sm.b.unit(i)));
    return Subgroup(sm.carrier, gens);
}

struct GraphIsotropyReport {
    bool isotropic; // graph(phi) isotropic for the symmetrized pairing
    bool skew;      // dualize(phi) = -phi
};

/// Both characterizations of the descent condition; they must agree.
inline GraphIsotropyReport graph_isotropy(const SplitModel& sm, const Hom& phi) {
    if (!(phi.source == sm.b) || !(phi.target == sm.bdual))
        throw InvalidInput("hom with the wrong signature");
    bool iso = true;
    for (long long i = 0; i < sm.b.order() && iso; ++i)
        for (long long j = 0; j < sm.b.order() && iso; ++j) {
            Element x = sm.b.element_at(i), y = sm.b.element_at(j);
            Element gx = embed_split(sm, phi.apply(x), x);
            Element gy = embed_split(sm, phi.apply(y), y);
            if (!sm.e1_form.eval(gx, gy).is_zero()) iso = false;
        }
    bool skew = dualize(phi) == negate(phi);
    if (iso != skew)
        throw InvariantViolation("graph isotropy and skewness disagree");
    return {iso, skew};
}

/// The automorphism (xi, x) -> (xi + f(x), x) of the split carrier; symplectic
/// exactly when f is symmetric.
inline Hom shear(const SplitModel& sm, const Hom& f) {
    if (!(f.source == sm.b) || !(f.target == sm.bdual))
        throw InvalidInput("shear data with the wrong signature");
    if (!(dualize(f) == f)) throw InvalidInput("shear needs a symmetric hom");
    std::vector<Element> cols(sm.carrier.rank());
    for (size_t i = 0; i < sm.b.rank(); ++i) {
        cols[2 * i] = sm.carrier.unit(2 * i);
        cols[2 * i + 1] = embed_split(sm, f.apply(sm.b.unit(i)), sm.b.unit(i));
    }
    Hom sigma = Hom::from_columns(sm.carrier, sm.carrier, cols);
    // e-preservation on generator pairs is exact by bilinearity
    for (size_t i = 0; i < sm.carrier.rank(); ++i)
        for (size_t j = 0; j < sm.carrier.rank(); ++j) {
            Element u = sm.carrier.unit(i), v = sm.carrier.unit(j);
            if (!(sm.space.e.eval(sigma.apply(u), sigma.apply(v)) == sm.space.e.eval(u, v)))
                throw InvariantViolation("shear failed to preserve the alternating form");
        }
    return sigma;
}

struct NormalForm {
    SplitModel model; // split model over the abstract form of Z
    Hom iso;          // carrier of S -> model carrier, bijective, e-preserving
};

/// For transverse lagrangians Y, Z: the symplectic identification of K with
/// the split model over Z, via y -> e(y, .) on Y and coordinates on Z.
inline NormalForm transverse_normal_form(const SymplecticSpace& s, const Subgroup& y,
                                         const Subgroup& z) {
    if (classify_subgroup(s, y) != Classification::lagrangian ||
        classify_subgroup(s, z) != Classification::lagrangian)
        throw InvalidInput("normal form needs two lagrangians");
    if (!intersect(y, z).is_trivial())
        throw InvalidInput("only the transverse case is supported");
    Decomposition zd = z.decompose();
    SplitModel sm = split_model(zd.abstract_group());

    // split k = u + v with u in Y, v in Z; unique by transversality
    const Group& k = s.carrier;
    auto ypts = y.elements();
    auto zpts = z.elements();
    std::vector<Element> cols;
    for (size_t g = 0; g < k.rank(); ++g) {
        Element unit = k.unit(g);
        bool found = false;
        for (const auto& u : ypts) {
            Element v = k.sub(unit, u);
            if (!z.contains(v)) continue;
            // xi pairs Z against the Y part: <xi, z'> = e(z', u), the
            // orientation that matches this split model's polarization
            std::vector<long long> xi(zd.orders.size());
            for (size_t a = 0; a < zd.orders.size(); ++a)
                xi[a] = s.e.eval(zd.gens[a], u).scaled(zd.orders[a]);
            cols.push_back(embed_split(sm, sm.bdual.reduce(std::move(xi)),
                                       Element{z.coordinates(zd, v)}));
            found = true;
            break;
        }
        if (!found) throw InvariantViolation("transverse pair failed to span");
    }
    Hom iso = Hom::from_columns(k, sm.carrier, cols);
    if (!kernel(iso).is_trivial() || k.order() != sm.carrier.order())
        throw InvariantViolation("normal form map is not bijective");
    for (size_t i = 0; i < k.rank(); ++i)
        for (size_t j = 0; j < k.rank(); ++j)
            if (!(sm.space.e.eval(iso.apply(k.unit(i)), iso.apply(k.unit(j))) ==
                  s.e.eval(k.unit(i), k.unit(j))))
                throw InvariantViolation("normal form map moved the alternating form");
    auto push = [&](const Subgroup& sub) {
        std::vector<Element> gens;
        for (const auto& g : sub.generators()) gens.push_back(iso.apply(g));
        return Subgroup(sm.carrier, gens);
    };
    if (!(push(y) == sm.dual_axis) || !(push(z) == sm.base_axis))
        throw InvariantViolation("normal form missed the standard axes");
    return NormalForm{std::move(sm), std::move(iso)};
}

struct SectionData {
    SymplecticSpace x;
    Group a;
    Hom p; // X -> A
    Hom i; // A^ -> X
    Hom s; // A -> X with p s = n id
    long long n;

    SectionData(SymplecticSpace x_, Group a_, Hom p_, Hom i_, Hom s_, long long n_)
        : x(std::move(x_)), a(std::move(a_)), p(std::move(p_)), i(std::move(i_)),
          s(std::move(s_)), n(n_) {
        if (!(p.source == x.carrier) || !(p.target == a)) throw InvalidInput("p: X -> A required");
        if (!(i.source == dualize(a)) || !(i.target == x.carrier))
            throw InvalidInput("i: dual of A -> X required");
        if (!(s.source == a) || !(s.target == x.carrier)) throw InvalidInput("s: A -> X required");
        if (!(compose(p, i) == Hom::zero(dualize(a), a)))
            throw InvalidInput("p composed with i must vanish");
        if (!(compose(p, s) == Hom::scalar(a, n)))
            throw InvalidInput("p composed with s must be n times the identity");
    }
};

/// Replace (s, n) by (2n s - i s^ psi s, 2n^2); the result satisfies both
/// p s' = 2n^2 id and s'^ psi s' = 0 whenever psi is skew and psi i = p^.
inline SectionData isotropize_section(const SectionData& sd, const Hom& psi) {
    if (!(psi.source == sd.x.carrier) || !(psi.target == dualize(sd.x.carrier)))
        throw InvalidInput("psi: X -> dual of X required");
    if (!(dualize(psi) == negate(psi))) throw InvalidInput("violated: dualize(psi) = -psi");
    if (!(compose(psi, sd.i) == dualize(sd.p)))
        throw InvalidInput("violated: psi composed with i = dualize(p)");
    Hom correction = compose(sd.i, compose(dualize(sd.s), compose(psi, sd.s)));
    Hom sprime = subtract(scale(2 * sd.n, sd.s), correction);
    long long nprime = 2 * sd.n * sd.n;
    SectionData out(sd.x, sd.a, sd.p, sd.i, sprime, nprime);
    if (!(compose(dualize(sprime), compose(psi, sprime)) ==
          Hom::zero(sd.a, dualize(sd.a))))
        throw InvariantViolation("isotropized section is not isotropic");
    return out;
}

struct ImageCommutator {
    Subgroup image;      // image of phi inside the dual of B
    BilinearForm form;   // on the abstract form of that image
    bool alternating;
};

/// omega(phi x, phi y) = <phi(x), y>, well defined on the image precisely
/// because phi is skew; skewness of omega is asserted, alternation reported.
inline ImageCommutator commutator_on_image(const Group& b, const Hom& phi) {
    Group bd = dualize(b);
    if (!(phi.source == b) || !(phi.target == bd))
        throw InvalidInput("hom with the wrong signature");
    Subgroup img = image(phi);
    // preimage independence: <phi x, z> must vanish for z in ker(phi)
    for (long long i = 0; i < b.order(); ++i)
        for (long long j = 0; j < b.order(); ++j) {
            Element x = b.element_at(i), z = b.element_at(j);
            if (phi.apply(z) == bd.zero() && !dual_pairing(b, phi.apply(x), z).is_zero())
                throw InvariantViolation("form on the image is not well defined");
        }
    Decomposition d = img.decompose();
    size_t r = d.orders.size();
    std::vector<Element> pre(r);
    for (size_t a = 0; a < r; ++a) {
        bool found = false;
        for (long long i = 0; i < b.order() && !found; ++i)
            if (phi.apply(b.element_at(i)) == d.gens[a]) {
                pre[a] = b.element_at(i);
                found = true;
            }
        if (!found) throw InvariantViolation("image generator without preimage");
    }
    Gram g(r, std::vector<QZ>(r));
    for (size_t a = 0; a < r; ++a)
        for (size_t c = 0; c < r; ++c) g[a][c] = dual_pairing(b, d.gens[a], pre[c]);
    Group carrier = d.abstract_group();
    BilinearForm form(carrier, carrier, std::move(g));
    for (size_t a = 0; a < r; ++a)
        for (size_t c = 0; c < r; ++c)
            if (!(form.gram[a][c] == -form.gram[c][a]))
                throw InvariantViolation("form on the image is not skew");
    bool alternating = is_alternating(form);
    return ImageCommutator{std::move(img), std::move(form), alternating};
}

struct SplittingReport {
    Subgroup z;           // image of (f, n id) in the split carrier
    bool z_lagrangian;
    bool section_is_hom;  // the rep-level (k, m) map respects coset addition
    bool section_projects;
    bool verified;
    bool nontrivial;      // Z nonzero and the formula genuinely shears (k != 0)
};

/// Coset-level verification of the (k, m) splitting recipe: with
/// Z = {(f(x), n x)} and m + k n = 1, the candidate section sends the
/// canonical representative (xi, y) of a coset to (xi - f(k y), m y).
inline SplittingReport verify_splitting_example(const Group& m_group, const Hom& f,
                                                long long n, long long m, long long k) {
    Group md = dualize(m_group);
    if (!(f.source == m_group) || !(f.target == md))
        throw InvalidInput("f with the wrong signature");
    if (!(dualize(f) == f)) throw InvalidInput("f must be symmetric");
    if (m + k * n != 1) throw InvalidInput("need m + k n = 1");
    for (long long i = 0; i < m_group.order(); ++i) {
        Element x = m_group.element_at(i);
        if (f.apply(x) == md.zero() &&
            !(m_group.scale(m * n, x) == m_group.zero()))
            throw InvalidInput("need m n ker(f) = 0");
    }
    SplitModel sm = split_model(m_group);
    std::vector<Element> zgens;
    for (size_t i = 0; i < m_group.rank(); ++i)
        zgens.push_back(embed_split(sm, f.apply(m_group.unit(i)),
                                    m_group.scale(n, m_group.unit(i))));
    Subgroup z(sm.carrier, zgens);
    bool z_lag = classify_subgroup(sm.space, z) == Classification::lagrangian;

    auto sigma_raw = [&](const Element& w) {
        Element xi = dual_part(sm, w), y = base_part(sm, w);
        Element nxi = sm.bdual.sub(xi, f.apply(m_group.scale(k, y)));
        return embed_split(sm, nxi, m_group.scale(m, y));
    };
    QuotientData qd = quotient(sm.carrier, z);
    std::vector<Element> sigma(qd.coset_reps.size());
    for (size_t c = 0; c < qd.coset_reps.size(); ++c) sigma[c] = sigma_raw(qd.coset_reps[c]);

    bool is_hom = true, projects = true;
    for (long long c1 = 0; c1 < qd.group.order() && is_hom; ++c1)
        for (long long c2 = 0; c2 < qd.group.order() && is_hom; ++c2) {
            Element sum = qd.group.add(qd.group.element_at(c1), qd.group.element_at(c2));
            if (!(sm.carrier.add(sigma[c1], sigma[c2]) == sigma[qd.group.index_of(sum)]))
                is_hom = false;
        }
    for (long long c = 0; c < qd.group.order() && projects; ++c)
        if (!(qd.projection.apply(sigma[c]) == qd.group.element_at(c))) projects = false;

    bool nontrivial = z.order() > 1 && k != 0;
    return SplittingReport{std::move(z), z_lag, is_hom, projects,
                           z_lag && is_hom && projects, nontrivial};
}

/// Scan the admissible (m, k) window for instances the verifier accepts.
inline std::vector<std::pair<long long, long long>> scan_splitting_pairs(
    const Group& m_group, const Hom& f, long long n, long long span = 6) {
    std::vector<std::pair<long long, long long>> out;
    for (long long k = -span; k <= span; ++k) {
        long long m = 1 - k * n;
        try {
            if (verify_splitting_example(m_group, f, n, m, k).verified) out.emplace_back(m, k);
        } catch (const InvalidInput&) {
            // inadmissible (m, k); skip
        }
    }
    return out;
}

} // namespace finsymp
