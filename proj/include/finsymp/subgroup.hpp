#pragma once

// Subgroups of a finite abelian group, kept in a canonical form: the Hermite
// basis of the integer lattice spanned by the generators together with the
// ambient relation lattice diag(d1..dk). Two subgroups are equal iff their
// canonical bases are identical, which makes deduplication and hashing cheap.

#include <algorithm>
#include <deque>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "finsymp/group.hpp"
#include "finsymp/hom.hpp"
#include "finsymp/intmat.hpp"

namespace finsymp {

namespace detail {

/// Solve H v = x for lower-triangular H with positive diagonal; nullopt when x
/// is outside the column lattice.
inline std::optional<intmat::Vec> forward_solve(const intmat::Mat& h, const intmat::Vec& x) {
    size_t k = h.size();
    intmat::Vec v(k, 0);
    for (size_t r = 0; r < k; ++r) {
        long long acc = x[r];
        for (size_t j = 0; j < r; ++j) acc -= h[r][j] * v[j];
        if (acc % h[r][r] != 0) return std::nullopt;
        v[r] = acc / h[r][r];
    }
    return v;
}

} // namespace detail

/// Independent-generator presentation of a subgroup: S is the internal direct
/// sum of cyclic groups <gens[j]> of order orders[j], with orders[0] | orders[1] | ...
/// coordinates() inverts the presentation.
struct Decomposition {
    Group ambient;
    std::vector<Element> gens;
    std::vector<long long> orders;

    /// The abstract group the subgroup is isomorphic to.
    Group abstract_group() const { return Group(orders); }

    Element realize(const std::vector<long long>& coords) const {
        Element x = ambient.zero();
        for (size_t j = 0; j < gens.size(); ++j)
            x = ambient.add(x, ambient.scale(coords[j], gens[j]));
        return x;
    }
};

class Subgroup {
public:
    Subgroup() = default;

    Subgroup(Group ambient, const std::vector<Element>& generators) : ambient_(std::move(ambient)) {
        size_t k = ambient_.rank();
        intmat::Mat cols = intmat::zero(k, generators.size());
        for (size_t i = 0; i < generators.size(); ++i) {
            if (generators[i].c.size() != k)
                throw InvalidInput("subgroup generator has wrong coordinate count");
            for (size_t r = 0; r < k; ++r)
                cols[r][i] = intmat::mod_floor(generators[i].c[r], ambient_.factors[r]);
        }
        // the ambient relations diag(d1..dk) ride along as hermite row moduli
        basis_ = intmat::hermite(std::move(cols), &ambient_.factors);
        if (basis_.size() != k || (k > 0 && basis_[0].size() != k))
            throw InvariantViolation("subgroup basis is not square");
    }

    static Subgroup trivial(const Group& g) { return Subgroup(g, {}); }

    static Subgroup full(const Group& g) {
        std::vector<Element> gens;
        for (size_t i = 0; i < g.rank(); ++i) gens.push_back(g.unit(i));
        return Subgroup(g, gens);
    }

    const Group& ambient() const { return ambient_; }
    const intmat::Mat& basis() const { return basis_; }

    /// Canonical generators: the basis columns, reduced into the group.
    std::vector<Element> generators() const {
        std::vector<Element> out;
        for (size_t j = 0; j < ambient_.rank(); ++j) {
            std::vector<long long> v(ambient_.rank());
            for (size_t r = 0; r < ambient_.rank(); ++r) v[r] = basis_[r][j];
            out.push_back(ambient_.reduce(std::move(v)));
        }
        return out;
    }

    long long order() const {
        long long idx = 1;
        for (size_t r = 0; r < ambient_.rank(); ++r) idx *= basis_[r][r];
        return ambient_.order() / idx;
    }

    bool is_trivial() const { return order() == 1; }
    bool is_full() const { return order() == ambient_.order(); }

    bool contains(const Element& x) const {
        if (x.c.size() != ambient_.rank()) return false;
        return detail::forward_solve(basis_, x.c).has_value();
    }

    bool contains(const Subgroup& other) const {
        if (!(other.ambient_ == ambient_)) return false;
        for (auto& g : other.generators())
            if (!contains(g)) return false;
        return true;
    }

    bool operator==(const Subgroup& o) const {
        return ambient_ == o.ambient_ && basis_ == o.basis_;
    }

    bool operator<(const Subgroup& o) const {
        if (order() != o.order()) return order() < o.order();
        return basis_ < o.basis_;
    }

    /// Break the subgroup into independent cyclic pieces. Deterministic.
    Decomposition decompose() const {
        size_t k = ambient_.rank();
        // relation lattice of the presentation Z^k ->> S, v |-> [basis * v]
        intmat::Mat rel = intmat::zero(k, k);
        for (size_t j = 0; j < k; ++j) {
            intmat::Vec col(k, 0);
            col[j] = ambient_.factors[j];
            auto v = detail::forward_solve(basis_, col);
            if (!v) throw InvariantViolation("ambient relations escape subgroup lattice");
            for (size_t r = 0; r < k; ++r) rel[r][j] = (*v)[r];
        }
        auto s = intmat::smith(rel);
        // invert the unimodular row transform
        intmat::Mat uinv = intmat::zero(k, k);
        for (size_t j = 0; j < k; ++j) {
            intmat::Vec e(k, 0);
            e[j] = 1;
            auto col = intmat::solve(s.u, e);
            if (!col) throw InvariantViolation("unimodular inverse failed");
            for (size_t r = 0; r < k; ++r) uinv[r][j] = (*col)[r];
        }
        Decomposition d;
        d.ambient = ambient_;
        for (size_t j = 0; j < k; ++j) {
            long long o = s.d[j][j];
            if (o <= 1) continue;
            intmat::Vec w(k, 0);
            for (size_t r = 0; r < k; ++r) w[r] = uinv[r][j];
            d.gens.push_back(ambient_.reduce(intmat::mul_vec(basis_, w)));
            d.orders.push_back(o);
        }
        smith_u_ = s.u; // cached for coordinates()
        return d;
    }

    /// Coordinates of x in the decomposition; throws if x is not in S.
    std::vector<long long> coordinates(const Decomposition& d, const Element& x) const {
        auto v = detail::forward_solve(basis_, x.c);
        if (!v) throw InvalidInput("element not in subgroup");
        if (smith_u_.empty() && ambient_.rank() > 0) decompose();
        intmat::Vec w = ambient_.rank() ? intmat::mul_vec(smith_u_, *v) : intmat::Vec{};
        std::vector<long long> coords;
        size_t pos = 0;
        // kept positions are those whose smith diagonal exceeded 1; they are the
        // trailing ones because the diagonal ascends
        size_t skipped = ambient_.rank() - d.orders.size();
        for (size_t j = skipped; j < ambient_.rank(); ++j)
            coords.push_back(intmat::mod_floor(w[j], d.orders[pos++]));
        return coords;
    }

    /// All elements, sorted lexicographically.
    std::vector<Element> elements() const {
        auto d = decompose();
        long long total = order();
        std::vector<Element> out;
        out.reserve(total);
        std::vector<long long> c(d.orders.size(), 0);
        for (long long cnt = 0; cnt < total; ++cnt) {
            out.push_back(d.realize(c));
            for (size_t i = c.size(); i-- > 0;) {
                if (++c[i] < d.orders[i]) break;
                c[i] = 0;
            }
        }
        std::sort(out.begin(), out.end());
        return out;
    }

private:
    Group ambient_;
    intmat::Mat basis_; // square lower-triangular Hermite basis
    mutable intmat::Mat smith_u_;
};

// ---------------------------------------------------------------------------
// kernel / image / preimage

inline Subgroup kernel(const Hom& f) {
    size_t k = f.source.rank(), m = f.target.rank();
    if (m == 0) return Subgroup::full(f.source); // 0-row matrices drop their column count
    intmat::Mat aug = intmat::zero(m, k + m);
    for (size_t j = 0; j < m; ++j) {
        for (size_t i = 0; i < k; ++i) aug[j][i] = f.mat[j][i];
        aug[j][k + j] = f.target.factors[j];
    }
    auto kb = intmat::kernel_basis(aug);
    std::vector<Element> gens;
    for (size_t col = 0; col < intmat::col_count(kb); ++col) {
        std::vector<long long> v(k);
        for (size_t r = 0; r < k; ++r) v[r] = kb[r][col];
        gens.push_back(f.source.reduce(std::move(v)));
    }
    return Subgroup(f.source, gens);
}

inline Subgroup image(const Hom& f) {
    std::vector<Element> gens;
    for (size_t i = 0; i < f.source.rank(); ++i) gens.push_back(f.column(i));
    return Subgroup(f.target, gens);
}

struct KernelImage {
    Subgroup kernel;
    Subgroup image;
};

/// Both at once; |kernel| * |image| == |source| always holds.
inline KernelImage kernel_image(const Hom& f) {
    KernelImage ki{kernel(f), image(f)};
    if (ki.kernel.order() * ki.image.order() != f.source.order())
        throw InvariantViolation("kernel/image order product mismatch");
    return ki;
}

/// Some x with f(x) = y, or nullopt.
inline std::optional<Element> preimage(const Hom& f, const Element& y) {
    if (y.c.size() != f.target.rank()) throw InvalidInput("preimage: element rank mismatch");
    if (f.target.rank() == 0) return f.source.zero();
    auto x = intmat::solve_mod(f.mat, y.c, f.target.factors);
    if (!x) return std::nullopt;
    return f.source.reduce(std::move(*x));
}

// ---------------------------------------------------------------------------
// lattice operations

inline Subgroup intersect(const Subgroup& a, const Subgroup& b) {
    if (!(a.ambient() == b.ambient())) throw InvalidInput("intersect: different ambient groups");
    size_t k = a.ambient().rank();
    intmat::Mat stacked = intmat::zero(k, 2 * k);
    for (size_t r = 0; r < k; ++r)
        for (size_t j = 0; j < k; ++j) {
            stacked[r][j] = a.basis()[r][j];
            stacked[r][k + j] = -b.basis()[r][j];
        }
    auto kb = intmat::kernel_basis(stacked);
    std::vector<Element> gens;
    for (size_t col = 0; col < intmat::col_count(kb); ++col) {
        intmat::Vec u(k, 0);
        for (size_t r = 0; r < k; ++r) u[r] = kb[r][col];
        gens.push_back(a.ambient().reduce(intmat::mul_vec(a.basis(), u)));
    }
    return Subgroup(a.ambient(), gens);
}

inline Subgroup join(const Subgroup& a, const Subgroup& b) {
    if (!(a.ambient() == b.ambient())) throw InvalidInput("join: different ambient groups");
    auto gens = a.generators();
    auto more = b.generators();
    gens.insert(gens.end(), more.begin(), more.end());
    return Subgroup(a.ambient(), gens);
}

/// S + <x>
inline Subgroup extend(const Subgroup& s, const Element& x) {
    auto gens = s.generators();
    gens.push_back(x);
    return Subgroup(s.ambient(), gens);
}

// ---------------------------------------------------------------------------
// quotient

struct QuotientData {
    Group group;                   // invariant-factor form of G/S
    Hom projection;                // G -> group
    std::vector<Element> coset_reps; // lex-least representative per coset,
                                     // indexed by the quotient element index
};

inline QuotientData quotient(const Group& g, const Subgroup& s, long long bound = 1 << 20) {
    if (!(s.ambient() == g)) throw InvalidInput("quotient: subgroup of a different group");
    if (g.order() > bound) throw BoundExceeded(g.order(), bound);
    size_t k = g.rank();
    auto sm = intmat::smith(s.basis());
    std::vector<long long> qf;
    std::vector<size_t> kept;
    for (size_t i = 0; i < k; ++i)
        if (sm.d[i][i] >= 2) {
            qf.push_back(sm.d[i][i]);
            kept.push_back(i);
        }
    Group q(qf);
    intmat::Mat pm = intmat::zero(qf.size(), k);
    for (size_t r = 0; r < kept.size(); ++r)
        for (size_t c = 0; c < k; ++c) pm[r][c] = sm.u[kept[r]][c];
    Hom proj(g, q, std::move(pm));

    std::vector<Element> reps(q.order());
    std::vector<bool> seen(q.order(), false);
    long long found = 0, total = q.order();
    for (long long idx = 0; idx < g.order() && found < total; ++idx) {
        Element x = g.element_at(idx);
        long long qi = q.index_of(proj.apply(x));
        if (!seen[qi]) {
            seen[qi] = true;
            reps[qi] = x;
            ++found;
        }
    }
    if (found != total) throw InvariantViolation("projection missed cosets");
    return QuotientData{std::move(q), std::move(proj), std::move(reps)};
}

// ---------------------------------------------------------------------------
// subgroup enumeration

/// All subgroups, duplicate-free, sorted by (order, canonical basis).
/// Walks the lattice by closure: every subgroup is reached by repeatedly
/// adjoining single elements to the trivial subgroup.
inline std::vector<Subgroup> enumerate_subgroups(const Group& g, long long bound = 4096) {
    if (g.order() > bound) throw BoundExceeded(g.order(), bound);
    std::map<intmat::Mat, Subgroup> seen;
    std::deque<Subgroup> queue;
    auto push = [&](const Subgroup& s) {
        if (seen.emplace(s.basis(), s).second) queue.push_back(s);
    };
    push(Subgroup::trivial(g));
    long long n = g.order();
    while (!queue.empty()) {
        Subgroup s = std::move(queue.front());
        queue.pop_front();
        for (long long idx = 1; idx < n; ++idx) {
            Element x = g.element_at(idx);
            if (s.contains(x)) continue;
            push(extend(s, x));
        }
    }
    std::vector<Subgroup> out;
    out.reserve(seen.size());
    for (auto& [_, s] : seen) out.push_back(s);
    std::sort(out.begin(), out.end());
    return out;
}

// ---------------------------------------------------------------------------
// direct-summand decision

/// If S is a direct summand of G, return a section of the projection
/// G -> G/S; otherwise nullopt. The decision is exhaustive per quotient
/// generator: a section exists iff every generator fiber contains an element
/// of matching order, and those searches are independent.
inline std::optional<Hom> is_direct_summand(const Group& g, const Subgroup& s) {
    auto q = quotient(g, s);
    std::vector<Element> cols;
    auto selems = s.elements();
    for (size_t j = 0; j < q.group.rank(); ++j) {
        Element unit = q.group.unit(j);
        Element base = q.coset_reps[q.group.index_of(unit)];
        long long need = q.group.factors[j];
        std::optional<Element> pick;
        for (const auto& t : selems) {
            // section condition at this generator: need * cand == 0 in G
            Element cand = g.add(base, t);
            if (g.scale(need, cand) == g.zero()) {
                if (!pick || cand < *pick) pick = cand;
            }
        }
        if (!pick) return std::nullopt;
        cols.push_back(*pick);
    }
    Hom section = Hom::from_columns(q.group, g, cols);
    if (!(compose(q.projection, section) == Hom::identity(q.group)))
        throw InvariantViolation("summand section fails projection identity");
    return section;
}

} // namespace finsymp
