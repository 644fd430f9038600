#pragma once

// Descent along a surjection of finite index sets: vector data on the total
// set with pair isomorphisms, the triple cocycle check, constructive gluing,
// and the hom-space comparison showing pullback is fully faithful. Also the
// torsor lifting obstruction for a central extension acting on a free set.

#include <array>
#include <map>

#include "finsymp/cyclotomic.hpp"
#include "finsymp/heisenberg.hpp"

namespace finsymp {

struct Covering {
    long long total_size;
    long long base_size;
    std::vector<long long> map;                  // total -> base, surjective
    std::vector<std::vector<long long>> fibers;  // per base point, ascending
    std::vector<std::pair<long long, long long>> pairs;  // same-fiber, ordered
    std::vector<std::array<long long, 3>> triples;

    Covering(long long total, long long base, std::vector<long long> m)
        : total_size(total), base_size(base), map(std::move(m)) {
        if (total < 1 || base < 1 || static_cast<long long>(map.size()) != total)
            throw InvalidInput("covering map sized unlike its total set");
        fibers.assign(base, {});
        for (long long s = 0; s < total; ++s) {
            if (map[s] < 0 || map[s] >= base) throw InvalidInput("covering map leaves the base");
            fibers[map[s]].push_back(s);
        }
        for (auto& f : fibers)
            if (f.empty()) throw InvalidInput("covering map is not surjective");
        for (auto& f : fibers) {
            for (long long s : f)
                for (long long t : f) {
                    pairs.emplace_back(s, t);
                    for (long long u : f) triples.push_back({s, t, u});
                }
        }
    }
};

struct DescentDatum {
    long long zeta_order;
    std::vector<std::vector<CycField::Poly>> sections;  // one vector per total point
    std::map<std::pair<long long, long long>, CycMat> transitions;
};

inline std::vector<CycField::Poly> cvec_apply(const CycField& f, const CycMat& m,
                                              const std::vector<CycField::Poly>& v) {
    if (!m.empty() && m[0].size() != v.size())
        throw InvalidInput("matrix applied to a vector of the wrong length");
    std::vector<CycField::Poly> out(m.size(), f.zero());
    for (size_t i = 0; i < m.size(); ++i)
        for (size_t j = 0; j < v.size(); ++j)
            out[i] = f.add(out[i], f.mul(m[i][j], v[j]));
    return out;
}

inline bool cvec_equal(const CycField& f, const std::vector<CycField::Poly>& a,
                       const std::vector<CycField::Poly>& b) {
    if (a.size() != b.size()) return false;
    for (size_t i = 0; i < a.size(); ++i)
        if (!f.equal(a[i], b[i])) return false;
    return true;
}

/// Shape, invertibility, and section transport; everything except the triple
/// cocycle, which has its own reportable check.
inline void validate_descent_datum(const Covering& c, const DescentDatum& d) {
    if (static_cast<long long>(d.sections.size()) != c.total_size)
        throw InvalidInput("descent sections sized unlike the total set");
    CycField f(d.zeta_order);
    for (const auto& [pr, m] : d.transitions)
        if (c.map[pr.first] != c.map[pr.second])
            throw InvalidInput("transition between points of different fibers");
    for (auto [s, t] : c.pairs) {
        auto it = d.transitions.find({s, t});
        if (it == d.transitions.end()) throw InvalidInput("missing transition for a fiber pair");
        const CycMat& m = it->second;
        if (m.size() != d.sections[t].size())
            throw InvalidInput("transition rows disagree with the target dimension");
        for (const auto& row : m)
            if (row.size() != d.sections[s].size())
                throw InvalidInput("transition columns disagree with the source dimension");
        if (m.size() != d.sections[s].size() || f.is_zero(cmat_det(f, m)))
            throw InvalidInput("transition is not invertible");
        if (!cvec_equal(f, cvec_apply(f, m, d.sections[s]), d.sections[t]))
            throw InvalidInput("sections are not transported by the pair isomorphisms");
    }
}

struct CocycleWitness {
    bool ok;
    long long s1, s2, s3; // first failing triple when not ok
};

/// The triple condition: the transition along (s1, s3) equals the composite
/// through s2.
inline CocycleWitness descent_cocycle_check(const Covering& c, const DescentDatum& d) {
    CycField f(d.zeta_order);
    for (const auto& tr : c.triples) {
        const CycMat& f12 = d.transitions.at({tr[0], tr[1]});
        const CycMat& f23 = d.transitions.at({tr[1], tr[2]});
        const CycMat& f13 = d.transitions.at({tr[0], tr[2]});
        if (!cmat_equal(f, cmat_mul(f, f23, f12), f13)) return {false, tr[0], tr[1], tr[2]};
    }
    return {true, 0, 0, 0};
}

struct DescentSolution {
    long long zeta_order;
    std::vector<long long> chosen; // the fiber point trivializing each base point
    std::vector<std::vector<CycField::Poly>> glued;
};

/// Glue by reading the section at the least fiber point of each base point.
/// Validity of the datum makes the result canonical: any other choice is
/// carried to this one by the transition between the two choices.
inline DescentSolution solve_descent(const Covering& c, const DescentDatum& d) {
    validate_descent_datum(c, d);
    CocycleWitness w = descent_cocycle_check(c, d);
    if (!w.ok)
        throw InvalidInput("cocycle fails at triple (" + std::to_string(w.s1) + ", " +
                           std::to_string(w.s2) + ", " + std::to_string(w.s3) + ")");
    DescentSolution out{d.zeta_order, {}, {}};
    for (long long b = 0; b < c.base_size; ++b) {
        out.chosen.push_back(c.fibers[b][0]);
        out.glued.push_back(d.sections[c.fibers[b][0]]);
    }
    CycField f(d.zeta_order);
    for (long long s = 0; s < c.total_size; ++s) {
        const CycMat& m = d.transitions.at({out.chosen[c.map[s]], s});
        if (!cvec_equal(f, cvec_apply(f, m, out.glued[c.map[s]]), d.sections[s]))
            throw InvariantViolation("glued sections fail to pull back");
    }
    return out;
}

/// The datum whose sections are constant on fibers and whose transitions are
/// identities; solving it returns the base sections unchanged.
inline DescentDatum pullback_datum(const Covering& c, long long zeta_order,
                                   const std::vector<std::vector<CycField::Poly>>& base) {
    if (static_cast<long long>(base.size()) != c.base_size)
        throw InvalidInput("base sections sized unlike the base set");
    CycField f(zeta_order);
    DescentDatum d{zeta_order, {}, {}};
    for (long long s = 0; s < c.total_size; ++s) d.sections.push_back(base[c.map[s]]);
    for (auto [s, t] : c.pairs)
        d.transitions[{s, t}] = cmat_identity(f, base[c.map[s]].size());
    return d;
}

struct FaithfulnessReport {
    long long descent_side; // dimension of homs of descent data
    long long glued_side;   // dimension of homs of the glued objects
    bool equal;
};

/// Morphisms of descent data are families of maps commuting with all
/// transitions; morphisms of glued objects are unconstrained maps per base
/// point. Their dimensions are compared by exact linear algebra.
inline FaithfulnessReport verify_full_faithfulness(const Covering& c, const DescentDatum& a,
                                                   const DescentDatum& b) {
    validate_descent_datum(c, a);
    validate_descent_datum(c, b);
    if (!descent_cocycle_check(c, a).ok || !descent_cocycle_check(c, b).ok)
        throw InvalidInput("hom comparison needs valid descent data");
    long long n = lcm_ll(a.zeta_order, b.zeta_order);
    CycField f(n);
    std::vector<size_t> offset(c.total_size + 1, 0);
    for (long long s = 0; s < c.total_size; ++s)
        offset[s + 1] = offset[s] + a.sections[s].size() * b.sections[s].size();
    size_t cols = offset[c.total_size];
    CycMat sys;
    CycField fa(a.zeta_order), fb(b.zeta_order);
    for (auto [s, t] : c.pairs) {
        CycMat am = lift_entries(f, fa, a.transitions.at({s, t}));
        CycMat bm = lift_entries(f, fb, b.transitions.at({s, t}));
        size_t da_s = a.sections[s].size(), db_s = b.sections[s].size();
        size_t da_t = a.sections[t].size(), db_t = b.sections[t].size();
        // h_t A_{st} - B_{st} h_s = 0, one row per entry of a db_t x da_s map
        for (size_t r = 0; r < db_t; ++r)
            for (size_t cc = 0; cc < da_s; ++cc) {
                std::vector<CycField::Poly> row(cols, f.zero());
                for (size_t k = 0; k < da_t; ++k) {
                    size_t idx = offset[t] + r * da_t + k;
                    row[idx] = f.add(row[idx], am[k][cc]);
                }
                for (size_t k = 0; k < db_s; ++k) {
                    size_t idx = offset[s] + k * da_s + cc;
                    row[idx] = f.sub(row[idx], bm[r][k]);
                }
                sys.push_back(std::move(row));
            }
    }
    long long descent_side =
        cols == 0 ? 0 : static_cast<long long>(cmat_nullspace(f, sys).size());
    long long glued_side = 0;
    for (long long bb = 0; bb < c.base_size; ++bb) {
        long long s = c.fibers[bb][0];
        glued_side += static_cast<long long>(a.sections[s].size() * b.sections[s].size());
    }
    return FaithfulnessReport{descent_side, glued_side, descent_side == glued_side};
}

struct TorsorAction {
    long long points;
    std::vector<std::vector<long long>> act; // act[x][index of u] = x moved by u
};

struct TorsorLiftResult {
    bool exists;
    std::vector<std::vector<QZ>> lambda; // points x group order, when it exists
    Element obstruction_u, obstruction_v; // commutator witness otherwise
};

/// Decide whether the action lifts through the central extension with one
/// uniform cocycle-compatible phase per orbit:
///   lambda(x, u + u') = lambda(x, u) + lambda(x u, u') + c(u, u')
/// with lambda constant along each orbit. Existence only depends on the
/// extension: the candidate values per generator are forced up to a root of
/// unity, and the search over those is exhaustive.
inline TorsorLiftResult torsor_lift_obstruction(const CentralExtension& ext,
                                                const TorsorAction& e,
                                                long long bound = 1 << 20) {
    const Group& q = ext.base;
    long long n = q.order();
    if (e.points < 1 || static_cast<long long>(e.act.size()) != e.points)
        throw InvalidInput("action table sized unlike its point set");
    for (long long x = 0; x < e.points; ++x) {
        if (static_cast<long long>(e.act[x].size()) != n)
            throw InvalidInput("action table sized unlike the group");
        if (e.act[x][q.index_of(q.zero())] != x)
            throw InvalidInput("identity fails to fix a point");
        for (long long u = 0; u < n; ++u) {
            long long y = e.act[x][u];
            if (y < 0 || y >= e.points) throw InvalidInput("action leaves the point set");
            if (y == x && !(q.element_at(u) == q.zero()))
                throw InvalidInput("the action is not free");
            for (long long v = 0; v < n; ++v) {
                Element sum = q.add(q.element_at(u), q.element_at(v));
                if (e.act[y][v] != e.act[x][q.index_of(sum)])
                    throw InvalidInput("action table is not associative");
            }
        }
    }
    if (e.points % n != 0) throw InvalidInput("free orbits must have the group's size");

    // a uniform lift forces c symmetric; a nonsymmetric pair is the definite
    // obstruction
    for (long long i = 0; i < n; ++i)
        for (long long j = 0; j < n; ++j) {
            Element u = q.element_at(i), v = q.element_at(j);
            if (!(ext.cocycle.eval(u, v) == ext.cocycle.eval(v, u)))
                return TorsorLiftResult{false, {}, u, v};
        }

    if (n * n * n > bound) throw BoundExceeded(n * n * n, bound);
    // generator values must solve o mu = -C(o,2) c(g,g) in Q/Z; enumerate the
    // o solutions of each and test every combination against the functional
    // equation on all of Q x Q
    size_t r = q.rank();
    std::vector<QZ> base_val(r);
    for (size_t a = 0; a < r; ++a) {
        long long o = q.factors[a];
        base_val[a] = (-ext.cocycle.eval(q.unit(a), q.unit(a)).times(o * (o - 1) / 2))
                          .divided_by(o);
    }
    std::vector<long long> pick(r, 0);
    long long combos = 1;
    for (size_t a = 0; a < r; ++a) combos *= q.factors[a];
    for (long long step = 0; step < combos; ++step) {
        std::vector<QZ> mu_gen(r);
        for (size_t a = 0; a < r; ++a) mu_gen[a] = base_val[a] + QZ(pick[a], q.factors[a]);
        std::vector<QZ> mu(n);
        for (long long i = 0; i < n; ++i) {
            Element x = q.element_at(i);
            QZ acc;
            Element w = q.zero();
            for (size_t a = 0; a < r; ++a)
                for (long long s = 0; s < x.c[a]; ++s) {
                    acc = acc + mu_gen[a] + ext.cocycle.eval(w, q.unit(a));
                    w = q.add(w, q.unit(a));
                }
            mu[i] = acc;
        }
        bool good = true;
        for (long long i = 0; i < n && good; ++i)
            for (long long j = 0; j < n && good; ++j) {
                Element u = q.element_at(i), v = q.element_at(j);
                if (!(mu[q.index_of(q.add(u, v))] ==
                      mu[i] + mu[j] + ext.cocycle.eval(u, v)))
                    good = false;
            }
        if (good) {
            TorsorLiftResult out{true, {}, {}, {}};
            out.lambda.assign(e.points, mu);
            for (long long x = 0; x < e.points; ++x)
                for (long long i = 0; i < n; ++i)
                    for (long long j = 0; j < n; ++j) {
                        Element u = q.element_at(i), v = q.element_at(j);
                        QZ lhs = out.lambda[x][q.index_of(q.add(u, v))];
                        QZ rhs = out.lambda[x][i] + out.lambda[e.act[x][i]][j] +
                                 ext.cocycle.eval(u, v);
                        if (!(lhs == rhs))
                            throw InvariantViolation("lifting witness fails its equation");
                    }
            return out;
        }
        for (size_t a = r; a-- > 0;) {
            if (++pick[a] < q.factors[a]) break;
            pick[a] = 0;
        }
    }
    throw InvariantViolation("symmetric cocycle without a uniform lift");
}

/// The free transitive action of the extension's base on itself.
inline TorsorAction regular_torsor(const Group& q, long long copies = 1) {
    long long n = q.order();
    TorsorAction e{n * copies, {}};
    for (long long c = 0; c < copies; ++c)
        for (long long x = 0; x < n; ++x) {
            std::vector<long long> row(n);
            for (long long u = 0; u < n; ++u)
                row[u] = c * n + q.index_of(q.add(q.element_at(x), q.element_at(u)));
            e.act.push_back(std::move(row));
        }
    return e;
}

} // namespace finsymp
