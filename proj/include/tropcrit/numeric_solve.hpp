#ifndef TROPCRIT_NUMERIC_SOLVE_HPP
#define TROPCRIT_NUMERIC_SOLVE_HPP

// Numerical points of zero-dimensional ideals from eigenvectors of
// multiplication matrices on the standard-monomial basis, and rational
// reconstruction of approximate coordinates.

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <map>
#include <optional>
#include <vector>

#include "errors.hpp"
#include "groebner.hpp"

namespace tropcrit {

template<class Real>
using ComplexPoint = std::vector<std::complex<Real>>;

// Matrix of multiplication by f on R/I in the standard-monomial basis
// (column j = coordinates of NF(f * b_j)).
inline RationalMatrix multiplication_matrix(const GroebnerBasis& gb, const std::vector<Monomial>& basis,
                                            const Polynomial& f) {
    std::map<Monomial, std::size_t> index;
    for (std::size_t i = 0; i < basis.size(); ++i) index[basis[i]] = i;
    const std::size_t d = basis.size();
    RationalMatrix m(d, RationalVector(d, Rational(0)));
    for (std::size_t j = 0; j < d; ++j) {
        Polynomial r = normal_form(f.multiply_monomial(basis[j]), gb);
        for (const auto& [mono, c] : r.terms()) m[index.at(mono)][j] = c;
    }
    return m;
}

struct ZeroDimSolution {
    std::size_t degree = 0;         // dimension of the quotient
    std::size_t distinct = 0;       // numerically distinct eigenvalues
    bool radical() const { return degree == distinct; }
};

// All points of V(I), one per eigenvalue of a generic linear form. Requires
// I zero-dimensional; multiple points are returned once per multiplicity.
template<class Real>
std::vector<ComplexPoint<Real>> solve_zero_dim(const Ideal& ideal, ZeroDimSolution* info = nullptr,
                                               const GroebnerOptions& opt = {}) {
    using C = std::complex<Real>;
    using Mat = Eigen::Matrix<C, Eigen::Dynamic, Eigen::Dynamic>;
    const std::size_t n = ideal.nvars();
    auto gb = groebner_basis(ideal, MonomialOrder::grlex(), opt);
    auto basis = standard_monomials(gb);
    const std::size_t d = basis.size();
    if (info) *info = ZeroDimSolution{d, d};
    if (d == 0) return {};

    std::vector<RationalMatrix> mats;
    for (std::size_t i = 0; i < n; ++i) mats.push_back(multiplication_matrix(gb, basis, Polynomial::variable(n, i)));

    // Fixed generic-looking coefficients keep the output deterministic.
    Mat ml = Mat::Zero(d, d);
    std::vector<Mat> mi(n, Mat::Zero(d, d));
    for (std::size_t i = 0; i < n; ++i) {
        Real c = Real(1) + Real(0.6180339887498949) * Real(i + 1) + Real(0.1) / Real(i + 3);
        for (std::size_t r = 0; r < d; ++r)
            for (std::size_t k = 0; k < d; ++k) {
                mi[i](r, k) = C(rational_to<Real>(mats[i][r][k]));
                ml(r, k) += c * mi[i](r, k);
            }
    }
    Eigen::ComplexEigenSolver<Mat> es(ml.transpose());
    if (es.info() != Eigen::Success) throw NumericalError("eigenvalue computation did not converge");

    std::size_t one = 0;
    for (std::size_t k = 0; k < d; ++k)
        if (basis[k].is_one()) one = k;

    std::vector<ComplexPoint<Real>> points;
    Real scale = 0;
    for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k) scale = std::max(scale, std::abs(es.eigenvalues()(k)));
    std::size_t distinct = 0;
    for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k) {
        bool unique = true;
        for (Eigen::Index l = 0; l < es.eigenvalues().size(); ++l)
            if (l != k && std::abs(es.eigenvalues()(k) - es.eigenvalues()(l)) <= Real(1e-8) * std::max(scale, Real(1)))
                unique = false;
        if (unique) ++distinct;
        Eigen::Matrix<C, Eigen::Dynamic, 1> v = es.eigenvectors().col(k);
        if (std::abs(v(one)) > Real(0)) v /= v(one);
        ComplexPoint<Real> p(n);
        for (std::size_t i = 0; i < n; ++i) {
            Eigen::Matrix<C, Eigen::Dynamic, 1> mv = mi[i].transpose() * v;
            p[i] = v.dot(mv) / v.dot(v);  // Rayleigh quotient; dot conjugates the left argument
        }
        points.push_back(std::move(p));
    }
    if (info) info->distinct = distinct;
    return points;
}

// Nearest rational with denominator <= max_den (continued fractions), if it
// lies within tol of x.
inline std::optional<Rational> reconstruct_rational(long double x, long long max_den = 1'000'000,
                                                    long double tol = 1e-9L) {
    if (!std::isfinite(x)) return std::nullopt;
    long long h0 = 0, h1 = 1, k0 = 1, k1 = 0;
    long double r = x;
    for (int it = 0; it < 64; ++it) {
        long double a = std::floor(r);
        if (std::fabs(a) > 1e15L) break;
        long long ai = static_cast<long long>(a);
        long long h2 = ai * h1 + h0, k2 = ai * k1 + k0;
        if (k2 > max_den) break;
        h0 = h1;
        h1 = h2;
        k0 = k1;
        k1 = k2;
        if (std::fabs(x - static_cast<long double>(h1) / static_cast<long double>(k1)) <=
            tol * std::max<long double>(1, std::fabs(x)))
            return make_rational(h1, k1);
        long double frac = r - a;
        if (frac == 0) break;
        r = 1 / frac;
    }
    return std::nullopt;
}

// Exact rational point near p that satisfies every generator, if any.
template<class Real>
std::optional<RationalVector> reconstruct_point(const ComplexPoint<Real>& p, const std::vector<Polynomial>& equations,
                                                long double tol = 1e-9L) {
    RationalVector q;
    for (const auto& z : p) {
        if (std::fabs(static_cast<long double>(z.imag())) > tol * std::max<long double>(1, std::abs(z))) return std::nullopt;
        auto r = reconstruct_rational(static_cast<long double>(z.real()), 1'000'000, tol);
        if (!r) return std::nullopt;
        q.push_back(*r);
    }
    for (const auto& e : equations)
        if (e.evaluate(q) != 0) return std::nullopt;
    return q;
}

} // namespace tropcrit

#endif
