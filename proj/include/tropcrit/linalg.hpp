#ifndef TROPCRIT_LINALG_HPP
#define TROPCRIT_LINALG_HPP

// Small dense linear algebra: exact over Q, generic Gaussian elimination for
// floating scalars, and integer unimodular transforms.

#include <cmath>
#include <complex>
#include <optional>
#include <type_traits>
#include <vector>

#include "errors.hpp"
#include "rational.hpp"

namespace tropcrit {

using RationalMatrix = std::vector<RationalVector>;
using IntMatrix = std::vector<IntVector>;

namespace detail {

// Reduced row echelon form in place; returns pivot columns.
inline std::vector<std::size_t> rref(RationalMatrix& a, std::size_t ncols) {
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < ncols && row < a.size(); ++col) {
        std::size_t p = row;
        while (p < a.size() && a[p][col] == 0) ++p;
        if (p == a.size()) continue;
        std::swap(a[p], a[row]);
        Rational inv = 1 / a[row][col];
        for (auto& x : a[row]) x *= inv;
        for (std::size_t r = 0; r < a.size(); ++r) {
            if (r == row || a[r][col] == 0) continue;
            Rational f = a[r][col];
            for (std::size_t c = col; c < a[r].size(); ++c) a[r][c] -= f * a[row][c];
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

} // namespace detail

inline std::size_t rank(RationalMatrix a) {
    if (a.empty()) return 0;
    return detail::rref(a, a[0].size()).size();
}

inline std::size_t rank(const IntMatrix& a) {
    RationalMatrix r;
    for (const auto& row : a) r.push_back(to_rational(row));
    return rank(r);
}

// Basis of {x : A x = 0}.
inline RationalMatrix nullspace(RationalMatrix a, std::size_t ncols) {
    auto pivots = detail::rref(a, ncols);
    std::vector<bool> is_pivot(ncols, false);
    for (auto p : pivots) is_pivot[p] = true;
    RationalMatrix basis;
    for (std::size_t free = 0; free < ncols; ++free) {
        if (is_pivot[free]) continue;
        RationalVector v(ncols, Rational(0));
        v[free] = 1;
        for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -a[r][free];
        basis.push_back(std::move(v));
    }
    return basis;
}

// Some solution of A x = b, or nullopt if inconsistent.
inline std::optional<RationalVector> solve_exact(const RationalMatrix& a, const RationalVector& b, std::size_t ncols) {
    RationalMatrix aug;
    for (std::size_t r = 0; r < a.size(); ++r) {
        auto row = a[r];
        row.push_back(b[r]);
        aug.push_back(std::move(row));
    }
    auto pivots = detail::rref(aug, ncols + 1);
    if (!pivots.empty() && pivots.back() == ncols) return std::nullopt;
    RationalVector x(ncols, Rational(0));
    for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug[r][ncols];
    return x;
}

inline std::optional<RationalMatrix> inverse(const RationalMatrix& a) {
    std::size_t n = a.size();
    RationalMatrix aug(n);
    for (std::size_t i = 0; i < n; ++i) {
        aug[i] = a[i];
        aug[i].resize(2 * n, Rational(0));
        aug[i][n + i] = 1;
    }
    auto pivots = detail::rref(aug, n);
    if (pivots.size() != n) return std::nullopt;
    RationalMatrix inv(n);
    for (std::size_t i = 0; i < n; ++i) inv[i].assign(aug[i].begin() + n, aug[i].end());
    return inv;
}

// ----------------------------------------------------------------------------
// Generic square solve (exact for Rational, partial pivoting otherwise)
// ----------------------------------------------------------------------------

template<class K>
inline constexpr bool is_exact_scalar_v = std::is_same_v<K, Rational>;

template<class K>
double magnitude(const K& x) {
    if constexpr (is_exact_scalar_v<K>) {
        return x == 0 ? 0.0 : 1.0;
    } else {
        using std::abs;
        return static_cast<double>(abs(x));
    }
}

template<class K>
using Matrix = std::vector<std::vector<K>>;

// Factorization of a square matrix reused for many right-hand sides.
template<class K>
class LinearSolver {
public:
    explicit LinearSolver(Matrix<K> a) : lu_(std::move(a)), perm_(lu_.size()) {
        const std::size_t n = lu_.size();
        for (std::size_t i = 0; i < n; ++i) perm_[i] = i;
        double scale = 0;
        for (const auto& row : lu_)
            for (const auto& x : row) scale = std::max(scale, magnitude(x));
        for (std::size_t k = 0; k < n; ++k) {
            std::size_t p = k;
            double best = magnitude(lu_[k][k]);
            for (std::size_t r = k + 1; r < n; ++r) {
                double m = magnitude(lu_[r][k]);
                if (is_exact_scalar_v<K> ? (best == 0 && m != 0) : m > best) {
                    best = m;
                    p = r;
                }
            }
            bool singular = is_exact_scalar_v<K> ? best == 0 : !(best > 1e-13 * std::max(scale, 1e-300));
            if (singular) throw NumericalError("singular Jacobian");
            std::swap(lu_[k], lu_[p]);
            std::swap(perm_[k], perm_[p]);
            for (std::size_t r = k + 1; r < n; ++r) {
                K f = lu_[r][k] / lu_[k][k];
                lu_[r][k] = f;
                for (std::size_t c = k + 1; c < n; ++c) lu_[r][c] -= f * lu_[k][c];
            }
        }
    }

    std::vector<K> solve(const std::vector<K>& b) const {
        const std::size_t n = lu_.size();
        std::vector<K> y(n);
        for (std::size_t i = 0; i < n; ++i) {
            K s = b[perm_[i]];
            for (std::size_t j = 0; j < i; ++j) s -= lu_[i][j] * y[j];
            y[i] = s;
        }
        for (std::size_t i = n; i-- > 0;) {
            K s = y[i];
            for (std::size_t j = i + 1; j < n; ++j) s -= lu_[i][j] * y[j];
            y[i] = s / lu_[i][i];
        }
        return y;
    }

private:
    Matrix<K> lu_;
    std::vector<std::size_t> perm_;
};

// ----------------------------------------------------------------------------
// Integer lattice transforms
// ----------------------------------------------------------------------------

inline IntMatrix identity_matrix(std::size_t n) {
    IntMatrix m(n, IntVector(n, 0));
    for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

inline IntVector mat_vec(const IntMatrix& m, const IntVector& v) {
    IntVector out(m.size(), 0);
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < v.size(); ++j) out[i] += m[i][j] * v[j];
    return out;
}

inline IntMatrix mat_mul(const IntMatrix& a, const IntMatrix& b) {
    std::size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
    IntMatrix c(n, IntVector(m, 0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t l = 0; l < k; ++l)
            for (std::size_t j = 0; j < m; ++j) c[i][j] += a[i][l] * b[l][j];
    return c;
}

inline IntMatrix transpose(const IntMatrix& a) {
    if (a.empty()) return {};
    IntMatrix t(a[0].size(), IntVector(a.size()));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a[i].size(); ++j) t[j][i] = a[i][j];
    return t;
}

inline IntMatrix integer_inverse(const IntMatrix& u) {
    RationalMatrix r;
    for (const auto& row : u) r.push_back(to_rational(row));
    auto inv = inverse(r);
    if (!inv) throw PreconditionError("matrix is singular");
    IntMatrix out;
    for (const auto& row : *inv) {
        IntVector ir;
        for (const auto& x : row) {
            if (!is_integer(x)) throw PreconditionError("matrix is not unimodular");
            ir.push_back(to_ll(x.get_num()));
        }
        out.push_back(std::move(ir));
    }
    return out;
}

inline long long determinant(const IntMatrix& m) {
    std::size_t n = m.size();
    RationalMatrix a;
    for (const auto& row : m) a.push_back(to_rational(row));
    Rational det = 1;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        while (p < n && a[p][k] == 0) ++p;
        if (p == n) return 0;
        if (p != k) {
            std::swap(a[p], a[k]);
            det = -det;
        }
        det *= a[k][k];
        for (std::size_t r = k + 1; r < n; ++r) {
            Rational f = a[r][k] / a[k][k];
            for (std::size_t c = k; c < n; ++c) a[r][c] -= f * a[k][c];
        }
    }
    return to_ll(det.get_num());
}

// Unimodular U with U v = e_1, built from Euclidean row operations.
inline IntMatrix unimodular_to_e1(const IntVector& v) {
    const std::size_t n = v.size();
    if (gcd_of(v) != 1) throw PreconditionError("vector " + to_string(v) + " is not primitive");
    IntMatrix u = identity_matrix(n);
    IntVector x = v;
    while (true) {
        std::size_t piv = n;
        for (std::size_t i = 0; i < n; ++i)
            if (x[i] != 0 && (piv == n || std::llabs(x[i]) < std::llabs(x[piv]))) piv = i;
        bool done = true;
        for (std::size_t j = 0; j < n; ++j) {
            if (j == piv || x[j] == 0) continue;
            done = false;
            long long q = x[j] / x[piv];
            x[j] -= q * x[piv];
            for (std::size_t c = 0; c < n; ++c) u[j][c] -= q * u[piv][c];
        }
        if (done) {
            std::swap(x[piv], x[0]);
            std::swap(u[piv], u[0]);
            if (x[0] < 0) {
                x[0] = -x[0];
                for (auto& c : u[0]) c = -c;
            }
            break;
        }
    }
    return u;
}

} // namespace tropcrit

#endif
