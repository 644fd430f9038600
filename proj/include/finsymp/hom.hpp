#pragma once

// Homomorphisms between finite abelian groups, given by integer matrices
// acting on coordinates (rows indexed by target coordinates). A matrix M
// defines a homomorphism iff M[j][i] * d_i == 0 mod d'_j for all i,j, where
// d are the source factors and d' the target factors. Entries are kept
// reduced modulo the target factors, which makes representatives canonical.

#include <utility>
#include <vector>

#include "finsymp/group.hpp"
#include "finsymp/intmat.hpp"

namespace finsymp {

struct Hom {
    Group source;
    Group target;
    intmat::Mat mat; // target.rank() x source.rank()

    Hom() = default;

    Hom(Group src, Group tgt, intmat::Mat m) : source(std::move(src)), target(std::move(tgt)), mat(std::move(m)) {
        if (mat.size() != target.rank())
            throw InvalidInput("hom matrix row count != target rank");
        for (auto& row : mat)
            if (row.size() != source.rank())
                throw InvalidInput("hom matrix column count != source rank");
        normalize();
        for (size_t j = 0; j < target.rank(); ++j)
            for (size_t i = 0; i < source.rank(); ++i)
                if ((mat[j][i] * source.factors[i]) % target.factors[j] != 0)
                    throw InvalidInput("matrix does not define a homomorphism (divisibility violated at row " +
                                       std::to_string(j) + ", column " + std::to_string(i) + ")");
    }

    static Hom identity(const Group& g) {
        return Hom(g, g, intmat::identity(g.rank()));
    }

    static Hom zero(const Group& src, const Group& tgt) {
        return Hom(src, tgt, intmat::zero(tgt.rank(), src.rank()));
    }

    /// Multiplication by n as an endomorphism.
    static Hom scalar(const Group& g, long long n) {
        auto m = intmat::zero(g.rank(), g.rank());
        for (size_t i = 0; i < g.rank(); ++i) m[i][i] = n;
        return Hom(g, g, std::move(m));
    }

    /// Columns are the images of the source unit vectors.
    static Hom from_columns(const Group& src, const Group& tgt, const std::vector<Element>& cols) {
        if (cols.size() != src.rank()) throw InvalidInput("from_columns: need one image per source generator");
        auto m = intmat::zero(tgt.rank(), src.rank());
        for (size_t i = 0; i < cols.size(); ++i) {
            if (cols[i].c.size() != tgt.rank()) throw InvalidInput("from_columns: image rank mismatch");
            for (size_t j = 0; j < tgt.rank(); ++j) m[j][i] = cols[i].c[j];
        }
        return Hom(src, tgt, std::move(m));
    }

    Element apply(const Element& x) const {
        if (x.c.size() != source.rank()) throw InvalidInput("hom applied to foreign element");
        return target.reduce(intmat::mul_vec(mat, x.c));
    }

    Element column(size_t i) const {
        std::vector<long long> v(target.rank());
        for (size_t j = 0; j < target.rank(); ++j) v[j] = mat[j][i];
        return Element{std::move(v)};
    }

    bool operator==(const Hom&) const = default;

    bool is_zero() const {
        for (auto& row : mat)
            for (auto e : row)
                if (e != 0) return false;
        return true;
    }

private:
    void normalize() {
        for (size_t j = 0; j < target.rank(); ++j)
            for (auto& e : mat[j]) e = intmat::mod_floor(e, target.factors[j]);
    }
};

inline Hom compose(const Hom& f, const Hom& g) { // f after g
    if (!(g.target == f.source)) throw InvalidInput("compose: type mismatch");
    return Hom(g.source, f.target, intmat::mul(f.mat, g.mat));
}

inline Hom add(const Hom& f, const Hom& g) {
    if (!(f.source == g.source) || !(f.target == g.target))
        throw InvalidInput("hom addition: type mismatch");
    auto m = f.mat;
    for (size_t j = 0; j < m.size(); ++j)
        for (size_t i = 0; i < m[j].size(); ++i) m[j][i] += g.mat[j][i];
    return Hom(f.source, f.target, std::move(m));
}

inline Hom negate(const Hom& f) {
    auto m = f.mat;
    for (auto& row : m)
        for (auto& e : row) e = -e;
    return Hom(f.source, f.target, std::move(m));
}

inline Hom subtract(const Hom& f, const Hom& g) { return add(f, negate(g)); }

inline Hom scale(long long n, const Hom& f) {
    auto m = f.mat;
    for (auto& row : m)
        for (auto& e : row) e *= n;
    return Hom(f.source, f.target, std::move(m));
}

/// The dual homomorphism: for f : X -> Y, dualize(f) : dual(Y) -> dual(X)
/// satisfies <dualize(f)(a), x> = <a, f(x)>. On matrices, the entry rule is
/// N[i][j] = d_i * M[j][i] / d'_j, which is integral exactly because M defines
/// a homomorphism. dualize(dualize(f)) == f.
inline Hom dualize(const Hom& f) {
    const auto& d = f.source.factors;
    const auto& dp = f.target.factors;
    auto n = intmat::zero(f.source.rank(), f.target.rank());
    for (size_t i = 0; i < f.source.rank(); ++i)
        for (size_t j = 0; j < f.target.rank(); ++j)
            n[i][j] = (d[i] * f.mat[j][i]) / dp[j];
    return Hom(dualize(f.target), dualize(f.source), std::move(n));
}

} // namespace finsymp
