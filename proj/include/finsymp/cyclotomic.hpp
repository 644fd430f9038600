#pragma once

// Exact arithmetic in Q(zeta_N) as Q[x] modulo the N-th cyclotomic polynomial,
// with gmp rationals for coefficients. Elements are dense coefficient vectors
// of length phi(N). A power table for zeta^0..zeta^{N-1} makes reduction,
// conjugation, and root-of-unity construction table lookups.

#include <gmpxx.h>

#include <map>
#include <numeric>
#include <vector>

#include "finsymp/errors.hpp"
#include "finsymp/rational.hpp"

namespace finsymp {

namespace detail {

/// Quotient of a by monic b, both dense mpz polynomials; remainder must vanish.
inline std::vector<mpz_class> exact_div_monic(std::vector<mpz_class> a,
                                              const std::vector<mpz_class>& b) {
    size_t db = b.size() - 1;
    if (a.size() < b.size()) throw InvariantViolation("polynomial division underflow");
    std::vector<mpz_class> q(a.size() - db);
    for (size_t i = a.size(); i-- > db;) {
        mpz_class c = a[i];
        if (c == 0) continue;
        q[i - db] = c;
        for (size_t j = 0; j <= db; ++j) a[i - db + j] -= c * b[j];
    }
    for (auto& c : a)
        if (c != 0) throw InvariantViolation("polynomial division left a remainder");
    return q;
}

/// The n-th cyclotomic polynomial: x^n - 1 with every proper-divisor factor
/// divided out, bottom up.
inline std::vector<mpz_class> cyclotomic_poly(long long n) {
    std::map<long long, std::vector<mpz_class>> memo;
    for (long long m = 1; m <= n; ++m) {
        if (n % m != 0) continue;
        std::vector<mpz_class> p(m + 1);
        p[0] = -1;
        p[m] = 1;
        for (long long d = 1; d < m; ++d)
            if (m % d == 0) p = exact_div_monic(std::move(p), memo[d]);
        memo[m] = std::move(p);
    }
    return memo[n];
}

} // namespace detail

class CycField {
public:
    using Poly = std::vector<mpq_class>; // coefficients on 1, zeta, ..., zeta^{deg-1}

    explicit CycField(long long order) : n_(order) {
        if (order <= 0) throw InvalidInput("cyclotomic order must be positive");
        phi_ = detail::cyclotomic_poly(order);
        deg_ = phi_.size() - 1;
        // power table by repeated shift-and-reduce against the monic relation
        power_.reserve(n_);
        Poly cur(deg_, 0);
        cur[0] = 1;
        power_.push_back(cur);
        for (long long m = 1; m < n_; ++m) {
            Poly next(deg_, 0);
            for (size_t i = 0; i + 1 < deg_; ++i) next[i + 1] = cur[i];
            mpq_class top = cur[deg_ - 1];
            if (top != 0)
                for (size_t j = 0; j < deg_; ++j) next[j] -= top * phi_[j];
            power_.push_back(next);
            cur = std::move(next);
        }
    }

    long long order() const { return n_; }
    size_t degree() const { return deg_; }

    Poly zero() const { return Poly(deg_, 0); }
    Poly one() const { return power_[0]; }

    Poly from_rational(const mpq_class& q) const {
        Poly p = zero();
        p[0] = q;
        return p;
    }

    Poly from_int(long long v) const { return from_rational(mpq_class(static_cast<long>(v))); }

    /// zeta^k, any integer k.
    Poly root(long long k) const {
        k %= n_;
        if (k < 0) k += n_;
        return power_[k];
    }

    /// The character value chi(t) = e^{2 pi i t} for t in Q/Z; the phase
    /// denominator must divide the field order.
    Poly chi(const QZ& t) const {
        if (n_ % t.den != 0)
            throw InvalidInput("phase denominator " + std::to_string(t.den) +
                               " outside cyclotomic order " + std::to_string(n_));
        return root(t.num * (n_ / t.den));
    }

    Poly add(const Poly& a, const Poly& b) const {
        Poly r = a;
        for (size_t i = 0; i < deg_; ++i) r[i] += b[i];
        return r;
    }

    Poly sub(const Poly& a, const Poly& b) const {
        Poly r = a;
        for (size_t i = 0; i < deg_; ++i) r[i] -= b[i];
        return r;
    }

    Poly neg(const Poly& a) const {
        Poly r = a;
        for (auto& c : r) c = -c;
        return r;
    }

    Poly mul(const Poly& a, const Poly& b) const {
        std::vector<mpq_class> conv(2 * deg_ - 1, 0);
        for (size_t i = 0; i < deg_; ++i) {
            if (a[i] == 0) continue;
            for (size_t j = 0; j < deg_; ++j) {
                if (b[j] == 0) continue;
                conv[i + j] += a[i] * b[j];
            }
        }
        Poly r(conv.begin(), conv.begin() + deg_);
        for (size_t m = deg_; m < conv.size(); ++m) {
            if (conv[m] == 0) continue;
            const Poly& p = power_[m % n_];
            for (size_t i = 0; i < deg_; ++i) r[i] += conv[m] * p[i];
        }
        return r;
    }

    Poly scale(const Poly& a, const mpq_class& c) const {
        Poly r = a;
        for (auto& v : r) v *= c;
        return r;
    }

    /// Galois conjugation zeta -> zeta^{-1}; complex conjugation on characters.
    Poly conj(const Poly& a) const {
        Poly r = zero();
        for (size_t k = 0; k < deg_; ++k) {
            if (a[k] == 0) continue;
            const Poly& p = power_[(n_ - k) % n_];
            for (size_t i = 0; i < deg_; ++i) r[i] += a[k] * p[i];
        }
        return r;
    }

    bool is_zero(const Poly& a) const {
        for (auto& c : a)
            if (c != 0) return false;
        return true;
    }

    bool equal(const Poly& a, const Poly& b) const {
        for (size_t i = 0; i < deg_; ++i)
            if (a[i] != b[i]) return false;
        return true;
    }

    /// True iff the element lies in Q; the power basis makes this a
    /// coefficient check. Writes the value through `out` when given.
    bool is_rational(const Poly& a, mpq_class* out = nullptr) const {
        for (size_t i = 1; i < deg_; ++i)
            if (a[i] != 0) return false;
        if (out) *out = a[0];
        return true;
    }

    /// Multiplicative inverse via the extended Euclid algorithm against the
    /// (irreducible) modulus; throws on zero.
    Poly inverse(const Poly& a) const {
        if (is_zero(a)) throw InvalidInput("cyclotomic inverse of zero");
        // r0 = modulus, r1 = a; track only the cofactor of a
        std::vector<mpq_class> r0(phi_.begin(), phi_.end());
        std::vector<mpq_class> r1(a.begin(), a.end());
        std::vector<mpq_class> t0{0}, t1{1};
        auto degree_of = [](const std::vector<mpq_class>& p) {
            for (size_t i = p.size(); i-- > 0;)
                if (p[i] != 0) return static_cast<long>(i);
            return -1L;
        };
        while (true) {
            long d1 = degree_of(r1);
            if (d1 < 0) throw InvariantViolation("cyclotomic modulus is not coprime to element");
            if (d1 == 0) break;
            // r0 = q*r1 + r2
            std::vector<mpq_class> q(std::max<long>(degree_of(r0) - d1 + 1, 1), 0);
            std::vector<mpq_class> r2 = r0;
            for (long i = degree_of(r2); i >= d1; --i) {
                if (r2[i] == 0) continue;
                mpq_class c = r2[i] / r1[d1];
                q[i - d1] = c;
                for (long j = 0; j <= d1; ++j) r2[i - d1 + j] -= c * r1[j];
            }
            // t2 = t0 - q*t1
            std::vector<mpq_class> t2(std::max(t0.size(), q.size() + t1.size()), 0);
            for (size_t i = 0; i < t0.size(); ++i) t2[i] = t0[i];
            for (size_t i = 0; i < q.size(); ++i) {
                if (q[i] == 0) continue;
                for (size_t j = 0; j < t1.size(); ++j) t2[i + j] -= q[i] * t1[j];
            }
            r0 = std::move(r1);
            r1 = std::move(r2);
            t0 = std::move(t1);
            t1 = std::move(t2);
        }
        // r1 is a nonzero constant c: inverse = t1 / c, reduced into the field
        mpq_class c = r1[0];
        Poly out = zero();
        for (size_t i = 0; i < t1.size(); ++i) {
            if (t1[i] == 0) continue;
            const Poly& p = power_[i % n_];
            mpq_class v = t1[i] / c;
            for (size_t j = 0; j < deg_; ++j) out[j] += v * p[j];
        }
        return out;
    }

    /// Re-express an element of a subfield context: every exponent scales by
    /// order()/from.order(). Requires from.order() | order().
    Poly lift(const CycField& from, const Poly& a) const {
        if (n_ % from.order() != 0) throw InvalidInput("cyclotomic orders do not nest");
        long long step = n_ / from.order();
        Poly r = zero();
        for (size_t k = 0; k < from.degree(); ++k) {
            if (a[k] == 0) continue;
            const Poly& p = power_[(static_cast<long long>(k) * step) % n_];
            for (size_t i = 0; i < deg_; ++i) r[i] += a[k] * p[i];
        }
        return r;
    }

private:
    long long n_;
    size_t deg_;
    std::vector<mpz_class> phi_;
    std::vector<Poly> power_;
};

// ---------------------------------------------------------------------------
// dense matrices over the field

using CycMat = std::vector<std::vector<CycField::Poly>>;

inline CycMat cmat_zero(const CycField& f, size_t r, size_t c) {
    return CycMat(r, std::vector<CycField::Poly>(c, f.zero()));
}

inline CycMat cmat_identity(const CycField& f, size_t n) {
    CycMat m = cmat_zero(f, n, n);
    for (size_t i = 0; i < n; ++i) m[i][i] = f.one();
    return m;
}

inline CycMat cmat_mul(const CycField& f, const CycMat& a, const CycMat& b) {
    size_t r = a.size(), k = b.size(), c = k ? b[0].size() : 0;
    CycMat out = cmat_zero(f, r, c);
    for (size_t i = 0; i < r; ++i)
        for (size_t t = 0; t < k; ++t) {
            if (f.is_zero(a[i][t])) continue;
            for (size_t j = 0; j < c; ++j) {
                if (f.is_zero(b[t][j])) continue;
                out[i][j] = f.add(out[i][j], f.mul(a[i][t], b[t][j]));
            }
        }
    return out;
}

inline CycMat cmat_scale(const CycField& f, const CycMat& a, const CycField::Poly& s) {
    CycMat out = a;
    for (auto& row : out)
        for (auto& e : row) e = f.mul(e, s);
    return out;
}

/// Re-express every entry in a larger field containing `from`.
inline CycMat lift_entries(const CycField& to, const CycField& from, const CycMat& m) {
    CycMat out = m;
    for (auto& row : out)
        for (auto& e : row) e = to.lift(from, e);
    return out;
}

inline bool cmat_equal(const CycField& f, const CycMat& a, const CycMat& b) {
    if (a.size() != b.size()) return false;
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i].size() != b[i].size()) return false;
        for (size_t j = 0; j < a[i].size(); ++j)
            if (!f.equal(a[i][j], b[i][j])) return false;
    }
    return true;
}

/// Conjugate transpose under zeta -> zeta^{-1}.
inline CycMat cmat_dagger(const CycField& f, const CycMat& a) {
    size_t r = a.size(), c = r ? a[0].size() : 0;
    CycMat out = cmat_zero(f, c, r);
    for (size_t i = 0; i < r; ++i)
        for (size_t j = 0; j < c; ++j) out[j][i] = f.conj(a[i][j]);
    return out;
}

/// scalar c with a = c * Id, if one exists.
inline bool cmat_is_scalar(const CycField& f, const CycMat& a, CycField::Poly* scalar = nullptr) {
    size_t n = a.size();
    if (n == 0) return true;
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            if (i == j) {
                if (!f.equal(a[i][i], a[0][0])) return false;
            } else if (!f.is_zero(a[i][j])) {
                return false;
            }
        }
    if (scalar) *scalar = a[0][0];
    return true;
}

/// Determinant by Gaussian elimination with exact division.
inline CycField::Poly cmat_det(const CycField& f, CycMat a) {
    size_t n = a.size();
    CycField::Poly det = f.one();
    for (size_t c = 0; c < n; ++c) {
        size_t piv = c;
        while (piv < n && f.is_zero(a[piv][c])) ++piv;
        if (piv == n) return f.zero();
        if (piv != c) {
            std::swap(a[piv], a[c]);
            det = f.neg(det);
        }
        det = f.mul(det, a[c][c]);
        CycField::Poly inv = f.inverse(a[c][c]);
        for (size_t i = c + 1; i < n; ++i) {
            if (f.is_zero(a[i][c])) continue;
            CycField::Poly factor = f.mul(a[i][c], inv);
            for (size_t j = c; j < n; ++j)
                a[i][j] = f.sub(a[i][j], f.mul(factor, a[c][j]));
        }
    }
    return det;
}

/// Basis of the right nullspace {x : a x = 0}, in reduced echelon
/// normalization (pivot coordinates read off free columns), deterministic.
inline std::vector<std::vector<CycField::Poly>> cmat_nullspace(const CycField& f, CycMat a) {
    size_t rows = a.size(), cols = rows ? a[0].size() : 0;
    std::vector<long long> pivot_of_col(cols, -1);
    size_t rank = 0;
    for (size_t c = 0; c < cols && rank < rows; ++c) {
        size_t piv = rank;
        while (piv < rows && f.is_zero(a[piv][c])) ++piv;
        if (piv == rows) continue;
        std::swap(a[piv], a[rank]);
        CycField::Poly inv = f.inverse(a[rank][c]);
        for (size_t j = c; j < cols; ++j) a[rank][j] = f.mul(a[rank][j], inv);
        for (size_t i = 0; i < rows; ++i) {
            if (i == rank || f.is_zero(a[i][c])) continue;
            CycField::Poly factor = a[i][c];
            for (size_t j = c; j < cols; ++j)
                a[i][j] = f.sub(a[i][j], f.mul(factor, a[rank][j]));
        }
        pivot_of_col[c] = static_cast<long long>(rank);
        ++rank;
    }
    std::vector<std::vector<CycField::Poly>> basis;
    for (size_t free = 0; free < cols; ++free) {
        if (pivot_of_col[free] >= 0) continue;
        std::vector<CycField::Poly> v(cols, f.zero());
        v[free] = f.one();
        for (size_t c = 0; c < cols; ++c)
            if (pivot_of_col[c] >= 0) v[c] = f.neg(a[pivot_of_col[c]][free]);
        basis.push_back(std::move(v));
    }
    return basis;
}

} // namespace finsymp
