#pragma once

// Small dense integer matrices and their normal forms. Everything here works
// over plain long long: the groups this library touches are tiny, and every
// lattice of interest contains a known full-rank diagonal sublattice, which
// lets the Hermite reduction clamp entries before they can grow.

#include <cstdlib>
#include <numeric>
#include <optional>
#include <utility>
#include <vector>

#include "finsymp/errors.hpp"

namespace finsymp::intmat {

using ll = long long;
using Vec = std::vector<ll>;
using Mat = std::vector<Vec>; // row-major

inline ll mod_floor(ll a, ll m) {
    ll r = a % m;
    return r < 0 ? r + m : r;
}

/// g = gcd(a,b) >= 0 together with x,y such that a*x + b*y = g.
inline ll ext_gcd(ll a, ll b, ll& x, ll& y) {
    if (b == 0) {
        x = (a < 0) ? -1 : 1;
        y = 0;
        return std::llabs(a);
    }
    ll x1, y1;
    ll g = ext_gcd(b, a % b, x1, y1);
    x = y1;
    y = x1 - (a / b) * y1;
    return g;
}

inline size_t row_count(const Mat& a) { return a.size(); }
inline size_t col_count(const Mat& a) { return a.empty() ? 0 : a[0].size(); }

inline Mat identity(size_t n) {
    Mat id(n, Vec(n, 0));
    for (size_t i = 0; i < n; ++i) id[i][i] = 1;
    return id;
}

inline Mat zero(size_t r, size_t c) { return Mat(r, Vec(c, 0)); }

inline Mat mul(const Mat& a, const Mat& b) {
    size_t r = row_count(a), m = col_count(a), c = col_count(b);
    if (r == 0) return {}; // a 0-row matrix cannot carry its column count
    if (m != row_count(b)) throw InvalidInput("matrix product shape mismatch");
    Mat out = zero(r, c);
    for (size_t i = 0; i < r; ++i)
        for (size_t k = 0; k < m; ++k) {
            if (a[i][k] == 0) continue;
            for (size_t j = 0; j < c; ++j) out[i][j] += a[i][k] * b[k][j];
        }
    return out;
}

inline Vec mul_vec(const Mat& a, const Vec& v) {
    if (row_count(a) == 0) return {};
    if (col_count(a) != v.size()) throw InvalidInput("matrix-vector shape mismatch");
    Vec out(row_count(a), 0);
    for (size_t i = 0; i < row_count(a); ++i)
        for (size_t j = 0; j < v.size(); ++j) out[i] += a[i][j] * v[j];
    return out;
}

inline Mat transpose(const Mat& a) {
    Mat out = zero(col_count(a), row_count(a));
    for (size_t i = 0; i < row_count(a); ++i)
        for (size_t j = 0; j < col_count(a); ++j) out[j][i] = a[i][j];
    return out;
}

namespace detail {

inline void col_swap(Mat& a, size_t i, size_t j) {
    for (auto& row : a) std::swap(row[i], row[j]);
}

inline void col_negate(Mat& a, size_t j) {
    for (auto& row : a) row[j] = -row[j];
}

/// col_j += q * col_i
inline void col_addmul(Mat& a, size_t j, size_t i, ll q) {
    if (q == 0) return;
    for (auto& row : a) row[j] += q * row[i];
}

/// Replace columns (i,j) by (x*ci + y*cj, u*ci + v*cj); used to realize a gcd step.
inline void col_combine(Mat& a, size_t i, size_t j, ll x, ll y, ll u, ll v) {
    for (auto& row : a) {
        ll ci = row[i], cj = row[j];
        row[i] = x * ci + y * cj;
        row[j] = u * ci + v * cj;
    }
}

} // namespace detail

/// Column-style Hermite normal form of the lattice spanned by the columns of
/// `a`. Zero columns are dropped; the result has one pivot per nonzero row
/// class: pivots positive, everything right of a pivot zero, entries left of a
/// pivot reduced into [0, pivot). The result is the unique canonical basis of
/// the column lattice.
///
/// When `row_mods` is given, the lattice is taken to contain row_mods[r]*e_r
/// for every r with row_mods[r] > 0 in addition to the columns of `a`. Each
/// such generator is woven in when its row is pivoted; until then it licenses
/// clamping its row modulo row_mods[r], which keeps intermediates small. Note
/// the generator must stay available until consumed, so it is tracked here
/// rather than appended as an ordinary column (a clamp could zero that column
/// and silently shrink the lattice).
inline Mat hermite(Mat a, const Vec* row_mods = nullptr) {
    size_t rows = row_count(a);
    Vec mods = row_mods ? *row_mods : Vec(rows, 0);
    if (mods.size() != rows) throw InvalidInput("hermite: row_mods size mismatch");
    std::vector<char> pending(rows, 0);
    for (size_t r = 0; r < rows; ++r) pending[r] = mods[r] > 0;
    auto clamp_pending = [&]() {
        for (size_t s = 0; s < rows; ++s)
            if (pending[s])
                for (auto& e : a[s]) e = mod_floor(e, mods[s]);
    };
    clamp_pending();
    size_t c = 0;
    for (size_t r = 0; r < rows; ++r) {
        size_t cols = col_count(a);
        // gcd-sweep row r over the active columns [c, cols)
        for (size_t j = c + 1; j < cols; ++j) {
            if (a[r][j] == 0) continue;
            if (a[r][c] == 0) {
                detail::col_swap(a, c, j);
                continue;
            }
            ll x, y;
            ll g = ext_gcd(a[r][c], a[r][j], x, y);
            ll u = -(a[r][j] / g), v = a[r][c] / g;
            detail::col_combine(a, c, j, x, y, u, v); // row r becomes (g, 0)
            clamp_pending();
        }
        ll g = (c < cols) ? a[r][c] : 0;
        if (g < 0) {
            detail::col_negate(a, c);
            g = -g;
        }
        if (pending[r]) {
            pending[r] = 0;
            if (g == 0) {
                // no column meets this row; the modulus generator is the pivot
                for (size_t i = 0; i < rows; ++i) a[i].push_back(i == r ? mods[r] : 0);
                detail::col_swap(a, c, cols);
                ++cols;
            } else {
                // Fold mods[r]*e_r into the pivot: the pivot becomes the gcd
                // and the unimodular complement is a remainder column with a
                // zero in row r but real content below, so it must be kept.
                ll x, y;
                ll g2 = ext_gcd(g, mods[r], x, y);
                ll s = mods[r] / g2;
                for (size_t i = 0; i < rows; ++i) a[i].push_back(i == r ? 0 : s * a[i][c]);
                for (size_t i = 0; i < rows; ++i) a[i][c] = x * a[i][c];
                a[r][c] = g2;
                ++cols;
            }
            g = a[r][c];
            clamp_pending();
        }
        if (g == 0) continue; // no pivot in this row
        for (size_t j = 0; j < c; ++j) {
            ll q = a[r][j] / g;
            if (a[r][j] - q * g < 0) --q; // floor division
            detail::col_addmul(a, j, c, -q);
        }
        clamp_pending();
        ++c;
    }
    // drop the all-zero tail columns
    Mat out = zero(rows, c);
    for (size_t i = 0; i < rows; ++i)
        for (size_t j = 0; j < c; ++j) out[i][j] = a[i][j];
    return out;
}

/// Basis of the integer kernel lattice { v : a*v = 0 }, one basis vector per
/// column of the returned matrix (may be empty).
inline Mat kernel_basis(const Mat& a) {
    size_t rows = row_count(a), cols = col_count(a);
    Mat work = a;
    Mat u = identity(cols); // column ops mirrored: work = a * u throughout
    size_t c = 0;
    for (size_t r = 0; r < rows && c < cols; ++r) {
        for (size_t j = c + 1; j < cols; ++j) {
            if (work[r][j] == 0) continue;
            if (work[r][c] == 0) {
                detail::col_swap(work, c, j);
                detail::col_swap(u, c, j);
                continue;
            }
            ll x, y;
            ll g = ext_gcd(work[r][c], work[r][j], x, y);
            ll p = -(work[r][j] / g), q = work[r][c] / g;
            detail::col_combine(work, c, j, x, y, p, q);
            detail::col_combine(u, c, j, x, y, p, q);
        }
        if (work[r][c] != 0) ++c;
    }
    // columns c.. of work are zero; the matching columns of u span the kernel
    Mat out = zero(cols, cols - c);
    for (size_t i = 0; i < cols; ++i)
        for (size_t j = c; j < cols; ++j) out[i][j - c] = u[i][j];
    return out;
}

struct SmithResult {
    Mat d; // diagonal, d[i][i] >= 0, d[i][i] | d[i+1][i+1]
    Mat u; // unimodular, rows x rows
    Mat v; // unimodular, cols x cols;  u * a * v = d
};

/// Smith normal form with both transforms.
inline SmithResult smith(Mat a) {
    size_t rows = row_count(a), cols = col_count(a);
    Mat u = identity(rows), v = identity(cols);
    auto row_swap = [&](size_t i, size_t j) {
        std::swap(a[i], a[j]);
        std::swap(u[i], u[j]);
    };
    auto row_addmul = [&](size_t i, size_t j, ll q) { // row_i += q * row_j
        if (q == 0) return;
        for (size_t k = 0; k < cols; ++k) a[i][k] += q * a[j][k];
        for (size_t k = 0; k < rows; ++k) u[i][k] += q * u[j][k];
    };
    auto row_negate = [&](size_t i) {
        for (auto& e : a[i]) e = -e;
        for (auto& e : u[i]) e = -e;
    };

    size_t n = std::min(rows, cols);
    for (size_t t = 0; t < n; ++t) {
        for (;;) {
            // locate minimal nonzero entry in the trailing block
            size_t pi = t, pj = t;
            ll best = 0;
            for (size_t i = t; i < rows; ++i)
                for (size_t j = t; j < cols; ++j)
                    if (a[i][j] != 0 && (best == 0 || std::llabs(a[i][j]) < best)) {
                        best = std::llabs(a[i][j]);
                        pi = i;
                        pj = j;
                    }
            if (best == 0) { // trailing block is zero; done
                t = n;
                break;
            }
            if (pi != t) row_swap(t, pi);
            if (pj != t) {
                detail::col_swap(a, t, pj);
                detail::col_swap(v, t, pj);
            }
            if (a[t][t] < 0) row_negate(t);
            bool clean = true;
            for (size_t i = t + 1; i < rows; ++i) {
                ll q = a[i][t] / a[t][t];
                row_addmul(i, t, -q);
                if (a[i][t] != 0) clean = false;
            }
            for (size_t j = t + 1; j < cols; ++j) {
                ll q = a[t][j] / a[t][t];
                detail::col_addmul(a, j, t, -q);
                detail::col_addmul(v, j, t, -q);
                if (a[t][j] != 0) clean = false;
            }
            if (!clean) continue;
            // pivot must divide the rest of the block
            bool divides = true;
            for (size_t i = t + 1; i < rows && divides; ++i)
                for (size_t j = t + 1; j < cols && divides; ++j)
                    if (a[i][j] % a[t][t] != 0) {
                        row_addmul(t, i, 1);
                        divides = false;
                    }
            if (divides) break;
        }
        if (t >= n) break;
    }
    return SmithResult{std::move(a), std::move(u), std::move(v)};
}

/// Any integer solution x of a*x = b, or nullopt.
inline std::optional<Vec> solve(const Mat& a, const Vec& b) {
    size_t rows = row_count(a), cols = col_count(a);
    if (b.size() != rows) throw InvalidInput("solve: rhs size mismatch");
    SmithResult s = smith(a);
    Vec c = mul_vec(s.u, b);
    Vec y(cols, 0);
    size_t n = std::min(rows, cols);
    for (size_t i = 0; i < rows; ++i) {
        ll d = (i < n) ? s.d[i][i] : 0;
        if (d == 0) {
            if (c[i] != 0) return std::nullopt;
        } else {
            if (c[i] % d != 0) return std::nullopt;
            if (i < cols) y[i] = c[i] / d;
        }
    }
    return mul_vec(s.v, y);
}

/// Any x with a*x = b modulo the per-row moduli (0 = no reduction in that row).
inline std::optional<Vec> solve_mod(const Mat& a, const Vec& b, const Vec& mods) {
    size_t rows = row_count(a), cols = col_count(a);
    if (mods.size() != rows) throw InvalidInput("solve_mod: moduli size mismatch");
    Mat aug = zero(rows, cols + rows);
    for (size_t i = 0; i < rows; ++i) {
        for (size_t j = 0; j < cols; ++j) aug[i][j] = a[i][j];
        aug[i][cols + i] = mods[i];
    }
    auto z = solve(aug, b);
    if (!z) return std::nullopt;
    return Vec(z->begin(), z->begin() + static_cast<long>(cols));
}

} // namespace finsymp::intmat
