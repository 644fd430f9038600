#pragma once

// Q/Z-valued bilinear pairings, symplectic structure, and quadratic
// refinements. A polarization P is a bilinear form on K x K whose
// antisymmetrization e = P - P^T is nondegenerate; all isotropy and
// lagrangian analysis runs against e.

#include <algorithm>
#include <deque>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "finsymp/group.hpp"
#include "finsymp/hom.hpp"
#include "finsymp/rational.hpp"
#include "finsymp/subgroup.hpp"

namespace finsymp {

using Gram = std::vector<std::vector<QZ>>;

struct BilinearForm {
    Group left, right;
    Gram gram; // gram[i][j] = B(left unit i, right unit j)

    BilinearForm(Group l, Group r, Gram g)
        : left(std::move(l)), right(std::move(r)), gram(std::move(g)) {
        if (gram.size() != left.rank()) throw InvalidInput("gram row count mismatch");
        for (size_t i = 0; i < gram.size(); ++i) {
            if (gram[i].size() != right.rank()) throw InvalidInput("gram column count mismatch");
            for (size_t j = 0; j < gram[i].size(); ++j)
                // bilinearity forces d_i * B(u_i, u_j) = B(d_i*u_i, u_j) = 0,
                // so the entry's order must divide both unit orders
                if (!gram[i][j].times(left.factors[i]).is_zero() ||
                    !gram[i][j].times(right.factors[j]).is_zero())
                    throw InvalidInput("gram entry order incompatible with group factors");
        }
    }

    static BilinearForm zero_form(const Group& l, const Group& r) {
        return BilinearForm(l, r, Gram(l.rank(), std::vector<QZ>(r.rank())));
    }

    bool is_square() const { return left == right; }

    QZ eval(const Element& x, const Element& y) const {
        if (x.c.size() != left.rank() || y.c.size() != right.rank())
            throw InvalidInput("bilinear form applied to wrong-rank elements");
        QZ acc;
        for (size_t i = 0; i < left.rank(); ++i) {
            if (x.c[i] == 0) continue;
            for (size_t j = 0; j < right.rank(); ++j)
                acc = acc + gram[i][j].times(x.c[i] * y.c[j]);
        }
        return acc;
    }

    bool is_zero() const {
        for (auto& row : gram)
            for (auto& v : row)
                if (!v.is_zero()) return false;
        return true;
    }

    bool operator==(const BilinearForm& o) const {
        return left == o.left && right == o.right && gram == o.gram;
    }
};

inline BilinearForm transpose_form(const BilinearForm& b) {
    Gram g(b.right.rank(), std::vector<QZ>(b.left.rank()));
    for (size_t i = 0; i < b.left.rank(); ++i)
        for (size_t j = 0; j < b.right.rank(); ++j) g[j][i] = b.gram[i][j];
    return BilinearForm(b.right, b.left, std::move(g));
}

inline BilinearForm operator+(const BilinearForm& a, const BilinearForm& b) {
    if (!(a.left == b.left) || !(a.right == b.right))
        throw InvalidInput("form sum over different groups");
    Gram g = a.gram;
    for (size_t i = 0; i < g.size(); ++i)
        for (size_t j = 0; j < g[i].size(); ++j) g[i][j] = g[i][j] + b.gram[i][j];
    return BilinearForm(a.left, a.right, std::move(g));
}

inline BilinearForm operator-(const BilinearForm& a, const BilinearForm& b) {
    if (!(a.left == b.left) || !(a.right == b.right))
        throw InvalidInput("form difference over different groups");
    Gram g = a.gram;
    for (size_t i = 0; i < g.size(); ++i)
        for (size_t j = 0; j < g[i].size(); ++j) g[i][j] = g[i][j] - b.gram[i][j];
    return BilinearForm(a.left, a.right, std::move(g));
}

inline bool is_symmetric(const BilinearForm& b) {
    if (!b.is_square()) return false;
    for (size_t i = 0; i < b.gram.size(); ++i)
        for (size_t j = 0; j < i; ++j)
            if (!(b.gram[i][j] == b.gram[j][i])) return false;
    return true;
}

/// Alternating means B(x,x) = 0 for every x, which on a gram matrix is a zero
/// diagonal plus skew off-diagonal entries.
inline bool is_alternating(const BilinearForm& b) {
    if (!b.is_square()) return false;
    for (size_t i = 0; i < b.gram.size(); ++i) {
        if (!b.gram[i][i].is_zero()) return false;
        for (size_t j = 0; j < i; ++j)
            if (!(b.gram[i][j] == -b.gram[j][i])) return false;
    }
    return true;
}

/// e(x,y) = B(x,y) - B(y,x). Alternating by construction; zero iff B symmetric.
inline BilinearForm derived_alternating(const BilinearForm& b) {
    if (!b.is_square()) throw InvalidInput("antisymmetrization needs a square form");
    return b - transpose_form(b);
}

/// The adjoint map psi: left -> dual(right), <psi(x), y> = B(x,y).
inline Hom induced_hom(const BilinearForm& b) {
    size_t k = b.left.rank(), m = b.right.rank();
    intmat::Mat mat = intmat::zero(m, k);
    for (size_t i = 0; i < k; ++i)
        for (size_t j = 0; j < m; ++j)
            // the dual coordinate at j is d'_j * B(u_i, u_j), an exact integer
            mat[j][i] = b.gram[i][j].scaled(b.right.factors[j]);
    return Hom(b.left, dualize(b.right), std::move(mat));
}

/// Inverse of induced_hom: read a bilinear form off a hom into a dual group.
inline BilinearForm form_from_hom(const Hom& f, const Group& right) {
    if (!(f.target == dualize(right))) throw InvalidInput("hom target is not the declared dual");
    Gram g(f.source.rank(), std::vector<QZ>(right.rank()));
    for (size_t i = 0; i < f.source.rank(); ++i)
        for (size_t j = 0; j < right.rank(); ++j) g[i][j] = QZ(f.mat[j][i], right.factors[j]);
    return BilinearForm(f.source, right, std::move(g));
}

// ---------------------------------------------------------------------------
// symplectic structure

struct SymplecticSpace {
    Group carrier;
    BilinearForm p; // polarization
    BilinearForm e; // p - p^T, alternating and nondegenerate
};

inline SymplecticSpace symplectic_space(const Group& k, BilinearForm p) {
    if (!(p.left == k) || !(p.right == k))
        throw InvalidInput("polarization must be a square form on the carrier");
    BilinearForm e = derived_alternating(p);
    if (!kernel(induced_hom(e)).is_trivial())
        throw InvalidInput("antisymmetrization of the polarization is degenerate");
    return SymplecticSpace{k, std::move(p), std::move(e)};
}

/// {x : e(x,y) = 0 for all y in Y}.
inline Subgroup orthogonal_complement(const SymplecticSpace& s, const Subgroup& y) {
    if (!(y.ambient() == s.carrier)) throw InvalidInput("subgroup of a different carrier");
    auto d = y.decompose();
    size_t k = s.carrier.rank();
    intmat::Mat mat = intmat::zero(d.orders.size(), k);
    for (size_t a = 0; a < d.orders.size(); ++a)
        for (size_t i = 0; i < k; ++i)
            // order of e(., gen_a) divides the generator order, so this is integral
            mat[a][i] = s.e.eval(s.carrier.unit(i), d.gens[a]).scaled(d.orders[a]);
    return kernel(Hom(s.carrier, Group(d.orders), std::move(mat)));
}

enum class Classification { generic, isotropic, lagrangian };

inline const char* classification_name(Classification c) {
    switch (c) {
        case Classification::generic: return "generic";
        case Classification::isotropic: return "isotropic";
        default: return "lagrangian";
    }
}

/// Classify Y against e, computing both characterizations of each level
/// (vanishing on generator pairs vs containment in the complement; the order
/// identity |Y|^2 = |K| vs Y = Y-perp) and insisting they agree.
inline Classification classify_subgroup(const SymplecticSpace& s, const Subgroup& y) {
    if (!(y.ambient() == s.carrier)) throw InvalidInput("subgroup of a different carrier");
    auto d = y.decompose();
    bool flat = true;
    for (size_t a = 0; a < d.gens.size() && flat; ++a)
        for (size_t b = 0; b <= a && flat; ++b)
            if (!s.e.eval(d.gens[a], d.gens[b]).is_zero()) flat = false;
    Subgroup perp = orthogonal_complement(s, y);
    if (flat != perp.contains(y)) throw InvariantViolation("isotropy characterizations disagree");
    if (!flat) return Classification::generic;
    bool lag = y.order() * y.order() == s.carrier.order();
    if (lag != (perp == y)) throw InvariantViolation("lagrangian characterizations disagree");
    return lag ? Classification::lagrangian : Classification::isotropic;
}

/// All lagrangian subgroups, canonical form, sorted. Walks only the isotropic
/// part of the subgroup lattice: every lagrangian is reached through a chain
/// of isotropic subgroups, so pruning generic extensions loses nothing.
inline std::vector<Subgroup> enumerate_lagrangians(const SymplecticSpace& s,
                                                   long long bound = 4096) {
    long long n = s.carrier.order();
    if (n > bound) throw BoundExceeded(n, bound);
    std::map<intmat::Mat, Subgroup> seen;
    std::deque<Subgroup> queue;
    auto push = [&](Subgroup sub) {
        if (seen.count(sub.basis())) return;
        if (classify_subgroup(s, sub) == Classification::generic) return;
        seen.emplace(sub.basis(), sub);
        queue.push_back(std::move(sub));
    };
    push(Subgroup::trivial(s.carrier));
    while (!queue.empty()) {
        Subgroup sub = std::move(queue.front());
        queue.pop_front();
        for (long long idx = 1; idx < n; ++idx) {
            Element x = s.carrier.element_at(idx);
            if (sub.contains(x)) continue;
            push(extend(sub, x));
        }
    }
    std::vector<Subgroup> out;
    for (auto& [_, sub] : seen)
        if (sub.order() * sub.order() == n) out.push_back(sub);
    std::sort(out.begin(), out.end());
    return out;
}

// ---------------------------------------------------------------------------
// quadratic functions

/// q: S -> Q/Z determined by its values on the independent generators of S
/// together with its polar form b(y,y') = q(y+y') - q(y) - q(y'). Evaluation
/// uses q(sum c_a g_a) = sum c_a q_a + C(c_a,2) b_aa + sum_{a<b} c_a c_b b_ab,
/// which is well defined exactly when o_a q_a + C(o_a,2) b_aa = 0 per
/// generator; the constructor enforces that.
class QuadraticFunction {
public:
    QuadraticFunction(Subgroup domain, Decomposition decomp, std::vector<QZ> gen_values,
                      Gram polar)
        : domain_(std::move(domain)),
          decomp_(std::move(decomp)),
          values_(std::move(gen_values)),
          polar_(std::move(polar)) {
        size_t r = decomp_.orders.size();
        if (values_.size() != r || polar_.size() != r)
            throw InvalidInput("quadratic data sized unlike the decomposition");
        for (size_t a = 0; a < r; ++a) {
            if (polar_[a].size() != r) throw InvalidInput("polar gram is not square");
            for (size_t b = 0; b < r; ++b) {
                if (!(polar_[a][b] == polar_[b][a]))
                    throw InvalidInput("polar form must be symmetric");
                if (!polar_[a][b].times(decomp_.orders[a]).is_zero())
                    throw InvalidInput("polar entry order incompatible with generator order");
            }
            long long o = decomp_.orders[a];
            QZ defect = values_[a].times(o) + polar_[a][a].times(o * (o - 1) / 2);
            if (!defect.is_zero())
                throw InvalidInput("generator value violates well-definedness at order " +
                                   std::to_string(o));
        }
    }

    static QuadraticFunction zero(const Subgroup& domain) {
        auto d = domain.decompose();
        size_t r = d.orders.size();
        return QuadraticFunction(domain, d, std::vector<QZ>(r), Gram(r, std::vector<QZ>(r)));
    }

    const Subgroup& domain() const { return domain_; }
    const Decomposition& decomposition() const { return decomp_; }
    const std::vector<QZ>& generator_values() const { return values_; }
    const Gram& polar_gram() const { return polar_; }

    QZ eval(const Element& y) const {
        auto c = domain_.coordinates(decomp_, y);
        QZ acc;
        for (size_t a = 0; a < c.size(); ++a) {
            acc = acc + values_[a].times(c[a]) + polar_[a][a].times(c[a] * (c[a] - 1) / 2);
            for (size_t b = 0; b < a; ++b) acc = acc + polar_[a][b].times(c[a] * c[b]);
        }
        return acc;
    }

    /// The polar form as a function on the domain.
    QZ polar_eval(const Element& y, const Element& z) const {
        auto cy = domain_.coordinates(decomp_, y);
        auto cz = domain_.coordinates(decomp_, z);
        QZ acc;
        for (size_t a = 0; a < cy.size(); ++a)
            for (size_t b = 0; b < cz.size(); ++b)
                acc = acc + polar_[a][b].times(cy[a] * cz[b]);
        return acc;
    }

    bool polar_is_zero() const {
        for (auto& row : polar_)
            for (auto& v : row)
                if (!v.is_zero()) return false;
        return true;
    }

private:
    Subgroup domain_;
    Decomposition decomp_;
    std::vector<QZ> values_;
    Gram polar_;
};

/// Pointwise difference; defined when both live on the same canonical domain.
/// The polar forms subtract, so the difference of two refinements of one
/// pairing has zero polar, i.e. is a character.
inline QuadraticFunction subtract(const QuadraticFunction& a, const QuadraticFunction& b) {
    if (!(a.domain() == b.domain())) throw InvalidInput("difference over different domains");
    size_t r = a.generator_values().size();
    std::vector<QZ> vals(r);
    Gram polar(r, std::vector<QZ>(r));
    for (size_t i = 0; i < r; ++i) {
        vals[i] = a.generator_values()[i] - b.generator_values()[i];
        for (size_t j = 0; j < r; ++j)
            polar[i][j] = a.polar_gram()[i][j] - b.polar_gram()[i][j];
    }
    return QuadraticFunction(a.domain(), a.decomposition(), std::move(vals), std::move(polar));
}

inline QuadraticFunction add(const QuadraticFunction& a, const QuadraticFunction& b) {
    if (!(a.domain() == b.domain())) throw InvalidInput("sum over different domains");
    size_t r = a.generator_values().size();
    std::vector<QZ> vals(r);
    Gram polar(r, std::vector<QZ>(r));
    for (size_t i = 0; i < r; ++i) {
        vals[i] = a.generator_values()[i] + b.generator_values()[i];
        for (size_t j = 0; j < r; ++j)
            polar[i][j] = a.polar_gram()[i][j] + b.polar_gram()[i][j];
    }
    return QuadraticFunction(a.domain(), a.decomposition(), std::move(vals), std::move(polar));
}

/// The canonical quadratic refinement of P on an isotropic Y: polar = P on
/// generator pairs (symmetric there because e vanishes on Y), generator value
/// q_a = (-C(o_a,2) P(g_a,g_a)) / o_a via canonical division. Any other
/// refinement differs from this one by a character of Y.
inline QuadraticFunction quadratic_refinement(const SymplecticSpace& s, const Subgroup& y) {
    if (classify_subgroup(s, y) == Classification::generic)
        throw InvalidInput("refinement requires an isotropic subgroup");
    auto d = y.decompose();
    size_t r = d.orders.size();
    Gram polar(r, std::vector<QZ>(r));
    for (size_t a = 0; a < r; ++a)
        for (size_t b = 0; b < r; ++b) polar[a][b] = s.p.eval(d.gens[a], d.gens[b]);
    std::vector<QZ> vals(r);
    for (size_t a = 0; a < r; ++a) {
        long long o = d.orders[a];
        vals[a] = (-polar[a][a].times(o * (o - 1) / 2)).divided_by(o);
    }
    return QuadraticFunction(y, std::move(d), std::move(vals), std::move(polar));
}

/// First lagrangian T (in canonical order) meeting both Y and Z trivially;
/// existence is genuinely undecided in advance, so the search is exhaustive.
inline std::optional<Subgroup> find_transverse_lagrangian(const SymplecticSpace& s,
                                                          const Subgroup& y, const Subgroup& z,
                                                          long long bound = 4096) {
    for (auto& t : enumerate_lagrangians(s, bound))
        if (intersect(t, y).is_trivial() && intersect(t, z).is_trivial()) return t;
    return std::nullopt;
}

} // namespace finsymp
