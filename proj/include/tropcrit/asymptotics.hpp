#ifndef TROPCRIT_ASYMPTOTICS_HPP
#define TROPCRIT_ASYMPTOTICS_HPP

// Truncated series solutions of the critical equations along a curve of data
// vectors t -> alpha(t). Branches that stay in the torus are lifted from the
// critical points at alpha(0); branches escaping along a ray v are lifted in a
// monomial chart u = z^w b^(...) where z = 0 is the boundary orbit of v.

#include <algorithm>
#include <cmath>
#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "critical.hpp"
#include "errors.hpp"
#include "groebner.hpp"
#include "linalg.hpp"
#include "numeric_solve.hpp"
#include "random.hpp"
#include "series.hpp"
#include "tropical.hpp"
#include "variety.hpp"

namespace tropcrit {

struct DataCurve {
    std::vector<Polynomial> components;  // polynomials in the single variable t

    static DataCurve parse(const std::vector<std::string>& texts) {
        DataCurve c;
        Ring r({"t"});
        for (const auto& s : texts) c.components.push_back(poly_parse(s, r));
        return c;
    }

    std::size_t size() const { return components.size(); }

    RationalVector at(const Rational& t) const {
        RationalVector v;
        for (const auto& f : components) v.push_back(f.evaluate(RationalVector{t}));
        return v;
    }

    RationalVector limit() const { return at(0); }

    // Coefficients of t^1.
    RationalVector velocity() const {
        RationalVector v;
        for (const auto& f : components) v.push_back(f.derivative(0).evaluate(RationalVector{Rational(0)}));
        return v;
    }

    // alpha(0) . v = 0 and the first-order term alpha'(0) . v is nonzero.
    bool transverse_to(const IntVector& v) const { return dot(v, limit()) == 0 && dot(v, velocity()) != 0; }

    std::string to_string() const {
        std::string s = "(";
        for (std::size_t i = 0; i < components.size(); ++i)
            s += (i ? ", " : "") + tropcrit::to_string(components[i], Ring({"t"}));
        return s + ")";
    }
};

// Checks the curve dimension and that a random member is off every slope.
inline void validate_curve(const DataCurve& curve, std::size_t p, const std::vector<SlopeHyperplane>& slopes,
                           Sampler& rng) {
    if (curve.size() != p)
        throw ValidationError("curve has " + std::to_string(curve.size()) + " components, expected " + std::to_string(p));
    RationalVector generic = curve.at(rng.rational());
    for (const auto& h : slopes)
        if (h.contains(generic)) throw PreconditionError("curve lies inside a slope hyperplane");
}

template<class K>
struct SeriesLift {
    std::vector<LaurentSeries<K>> y;
    std::vector<int> residual_history;  // residual valuation before each step
    int residual_order = 0;             // valuation of the final residual
    double relative_residual = 0;       // floating K: max |r_k| / majorant_k
};

namespace detail {

// Valuation of r where a floating coefficient counts as zero when it is below
// tol times the corresponding majorant coefficient (cancellation level).
template<class K>
int valuation_vs(const LaurentSeries<K>& r, const LaurentSeries<K>& maj, double tol, double* worst = nullptr) {
    if constexpr (LaurentSeries<K>::exact) {
        (void)maj;
        (void)tol;
        (void)worst;
        return r.valuation();
    } else {
        int val = r.order() + 1;
        for (int k = r.start(); k <= r.order(); ++k) {
            double m = magnitude(r.coefficient(k));
            double bound = k >= maj.start() ? magnitude(maj.coefficient(k)) : 0.0;
            double rel = bound > 0 ? m / bound : (m > 0 ? 1.0 : 0.0);
            if (val > r.order() && rel > tol) val = k;
            if (worst && rel <= tol) *worst = std::max(*worst, rel);
        }
        return val;
    }
}

template<class K>
std::vector<LaurentSeries<K>> as_series(const std::vector<std::vector<K>>& coeffs, int order) {
    std::vector<LaurentSeries<K>> out;
    for (const auto& c : coeffs) out.push_back(LaurentSeries<K>(0, c, order));
    return out;
}

} // namespace detail

// Lifts a root y0 of F(y, 0) to series y(t) with F(y(t), t) = O(t^{order+1}).
// F is square in the unknowns y_1..y_n; t is the last variable of its ring.
// The Jacobian at (y0, 0) must be invertible; coefficients are fixed order by
// order (Hensel), so the residual valuation grows by at least one per step.
template<class K>
SeriesLift<K> series_newton_lift(const std::vector<Polynomial>& F, const std::vector<K>& seed, int order,
                                 double tol = 1e-10) {
    const std::size_t n = seed.size();
    if (F.size() != n) throw PreconditionError("series lift needs a square system");
    if (order < 0) throw ValidationError("truncation order must be nonnegative");
    for (const auto& f : F)
        if (f.nvars() != n + 1) throw ValidationError("series lift: equations must have the unknowns and t");
    std::vector<K> p0 = seed;
    p0.push_back(K(0));
    Matrix<K> jac(n, std::vector<K>(n));
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k) jac[j][k] = F[j].derivative(k).template evaluate<K>(p0);
    LinearSolver<K> solver(jac);

    std::vector<std::vector<K>> coeffs(n, std::vector<K>(static_cast<std::size_t>(order) + 1, K(0)));
    for (std::size_t i = 0; i < n; ++i) coeffs[i][0] = seed[i];
    const auto t = LaurentSeries<K>::monomial(K(1), 1, order);

    SeriesLift<K> out;
    auto residual = [&](double* worst) {
        auto y = detail::as_series(coeffs, order);
        y.push_back(t);
        std::vector<LaurentSeries<K>> r;
        int val = order + 1;
        for (const auto& f : F) {
            auto rf = evaluate_series(f, y, order);
            auto mf = evaluate_majorant(f, y, order);
            val = std::min(val, detail::valuation_vs(rf, mf, tol, worst));
            r.push_back(std::move(rf));
        }
        return std::make_pair(val, r);
    };
    for (int k = 1; k <= order; ++k) {
        auto [val, r] = residual(nullptr);
        out.residual_history.push_back(val);
        if (val < k) throw NumericalError("series lift does not converge (residual of order " + std::to_string(val) + ")");
        std::vector<K> rhs;
        for (const auto& rj : r) rhs.push_back(rj.coefficient(k));
        auto delta = solver.solve(rhs);
        for (std::size_t i = 0; i < n; ++i) coeffs[i][k] = -delta[i];
    }
    double worst = 0;
    auto [val, r] = residual(&worst);
    out.residual_history.push_back(val);
    if (val <= order) throw NumericalError("series lift residual does not vanish through order " + std::to_string(order));
    out.residual_order = val;
    out.relative_residual = worst;
    out.y = detail::as_series(coeffs, order);
    return out;
}

struct AsymptoticsOptions {
    int order = 8;
    int precision = 53;  // 53: double, 64: long double
    double tol = 1e-10;
    int chart_bound = 4;
    GroebnerOptions groebner;
};

struct BranchReport {
    std::string kind;          // "interior" or "escaping"
    IntVector ray;             // escaping branches: the ray followed
    IntVector chart_weight;    // weight w of the monomial chart (escaping)
    IntVector valuations;      // ord_t of f_1..f_p along the branch
    bool exact = false;
    bool transverse = true;
    std::vector<std::string> unknown_names;
    std::vector<std::string> unknowns;     // printed series of the unknowns
    std::vector<std::string> coordinates;  // printed series of f_i
    std::vector<std::complex<long double>> leading;  // leading coefficients of the unknowns
    std::vector<int> leading_order;
    std::vector<int> residual_history;
    int residual_order = 0;
    int order = 0;
    double relative_residual = 0;
    bool accepted = true;

    // All valuations nonnegative: the branch stays over the affine closure.
    bool nonnegative() const {
        return std::all_of(valuations.begin(), valuations.end(), [](long long x) { return x >= 0; });
    }
};

struct AsymptoticsReport {
    RationalVector limit;
    std::size_t ml_degree = 0;
    std::vector<BranchReport> branches;
    std::vector<std::string> warnings;
};

namespace detail {

// The square critical system along the curve, in the ring (unknowns..., t).
struct CurveSystem {
    CriticalSystem sys;
    std::size_t nu = 0;  // unknowns + multipliers
    std::vector<Polynomial> alpha_t;  // curve components in the ring (unknowns..., t)
    std::vector<Polynomial> equations;
    Ring ring;

    // Replaces the data variables of a polynomial in sys.ring by alpha(t).
    Polynomial along_curve(const Polynomial& e) const {
        const std::size_t total = nu + 1;
        std::vector<Polynomial> images;
        for (std::size_t i = 0; i < nu; ++i) images.push_back(Polynomial::variable(total, i));
        for (const auto& a : alpha_t) images.push_back(a);
        return e.substitute(images, total);
    }
};

inline CurveSystem curve_system(const VarietySpec& spec, const DataCurve& curve, const GroebnerOptions& opt) {
    CurveSystem cs;
    Formulation f = spec.kind == SpecKind::ideal ? Formulation::lagrange : Formulation::automatic;
    cs.sys = critical_system_symbolic(spec, f, "_s", false, opt);
    cs.nu = cs.sys.unknowns + cs.sys.multipliers;
    if (curve.size() != cs.sys.data_vars) throw ValidationError("curve dimension does not match the model");
    std::vector<std::string> names(cs.sys.ring.names().begin(), cs.sys.ring.names().begin() + cs.nu);
    names.push_back("t");
    cs.ring = Ring(names);
    for (const auto& c : curve.components) cs.alpha_t.push_back(c.remap({cs.nu}, cs.nu + 1));
    for (const auto& e : cs.sys.equations) cs.equations.push_back(cs.along_curve(e));
    if (cs.equations.size() != cs.nu)
        throw PreconditionError("critical system along the curve is not square (" + std::to_string(cs.equations.size()) +
                                " equations, " + std::to_string(cs.nu) + " unknowns)");
    return cs;
}

// Weight w on the unknowns whose monomial chart follows the ray v: the
// coordinates f_i have min-weight v_i, and each multiplier balances the
// Lagrange equations.
inline std::optional<IntVector> chart_weight(const CurveSystem& cs, const IntVector& v, int bound) {
    const std::size_t n = cs.sys.unknowns, total = cs.sys.ring.size();
    auto padded = [&](const IntVector& w) {
        IntVector x(total, 0);
        std::copy(w.begin(), w.end(), x.begin());
        return x;
    };
    auto matches = [&](const IntVector& w) {
        IntVector x = padded(w);
        for (std::size_t i = 0; i < v.size(); ++i)
            if (cs.sys.coordinates[i].min_weight(x) != v[i]) return false;
        return true;
    };
    IntVector w;
    if (cs.sys.multipliers > 0) {
        w = v;  // unknowns are the torus coordinates
        if (!matches(w)) return std::nullopt;
        IntVector x = padded(w);
        for (std::size_t k = 0; k < cs.sys.multipliers; ++k) w.push_back(-cs.sys.equations[k].min_weight(x));
        return w;
    }
    for (int b = 1; b <= bound; ++b) {
        IntVector cur(n, -b);
        while (true) {
            bool on_shell = std::any_of(cur.begin(), cur.end(), [&](long long x) { return std::llabs(x) == b; });
            if (on_shell && matches(cur)) return cur;
            std::size_t i = 0;
            while (i < n && cur[i] == b) cur[i++] = -b;
            if (i == n) break;
            ++cur[i];
        }
    }
    return std::nullopt;
}

// The curve system in chart coordinates (z, b_2, ..., b_n) with
// u_j = prod_k y_k^{M_jk}, M e_1 = w; each equation is cleared of monomial
// factors so that z = 0 is the boundary orbit.
struct Chart {
    IntVector w;
    IntMatrix M;
    std::vector<Polynomial> equations;  // ring (z, b..., t)
};

inline Chart make_chart(const CurveSystem& cs, const IntVector& w) {
    const std::size_t nu = cs.nu, total = cs.sys.ring.size();
    Chart ch;
    ch.w = w;
    ch.M = integer_inverse(unimodular_to_e1(w));
    std::vector<IntVector> rows(total, IntVector(total, 0));
    for (std::size_t i = 0; i < nu; ++i)
        for (std::size_t j = 0; j < nu; ++j) rows[i][j] = ch.M[j][i];
    for (std::size_t i = nu; i < total; ++i) rows[i][i] = 1;
    for (const auto& e : cs.sys.equations) ch.equations.push_back(cs.along_curve(e.transform_exponents(rows).cleared()));
    return ch;
}

template<class K>
std::vector<LaurentSeries<K>> alpha_series(const CurveSystem& cs, int order) {
    std::vector<LaurentSeries<K>> out;
    for (const auto& a : cs.alpha_t) {
        std::vector<K> c(static_cast<std::size_t>(std::max(0, a.degree_in(cs.nu))) + 1, K(0));
        for (const auto& [m, x] : a.terms()) c[static_cast<std::size_t>(m[cs.nu])] = rational_to<K>(x);
        out.push_back(LaurentSeries<K>::from_polynomial(c, order));
    }
    return out;
}

inline std::complex<long double> to_complex(const Rational& x) { return {rational_to<long double>(x), 0.0L}; }

template<class R>
std::complex<long double> to_complex(const std::complex<R>& x) {
    return {static_cast<long double>(x.real()), static_cast<long double>(x.imag())};
}

// Fills a branch report from the lifted chart variables y (u = y^M).
template<class K>
void finish_branch(const CurveSystem& cs, const IntMatrix& M, const SeriesLift<K>& lift, int order, double tol,
                   BranchReport& br) {
    const std::size_t nu = cs.nu;
    std::vector<LaurentSeries<K>> u;
    for (std::size_t j = 0; j < nu; ++j) {
        auto s = LaurentSeries<K>::constant(K(1), order);
        for (std::size_t k = 0; k < nu; ++k)
            if (M[j][k] != 0) s *= lift.y[k].pow(static_cast<int>(M[j][k]));
        u.push_back(s);
    }
    auto x = u;
    auto a = alpha_series<K>(cs, order);
    x.insert(x.end(), a.begin(), a.end());
    int known = order;
    for (const auto& s : u) known = std::min(known, s.order());
    br.valuations.clear();
    br.coordinates.clear();
    for (const auto& f : cs.sys.coordinates) {
        auto fs = evaluate_series(f, x, known);
        int val;
        if constexpr (LaurentSeries<K>::exact) {
            val = fs.valuation();
        } else {
            val = valuation_vs(fs, evaluate_majorant(f, x, known), std::max(tol, 1e-8));
        }
        if (val > fs.order()) throw NumericalError("truncation too short to resolve a valuation");
        br.valuations.push_back(val);
        br.coordinates.push_back(fs.to_string());
    }
    br.unknown_names.assign(cs.ring.names().begin(), cs.ring.names().begin() + nu);
    br.unknowns.clear();
    br.leading.clear();
    br.leading_order.clear();
    for (const auto& s : u) {
        br.unknowns.push_back(s.to_string());
        int v = s.valuation();
        br.leading_order.push_back(v);
        br.leading.push_back(to_complex(s.coefficient(v)));
    }
    br.residual_history = lift.residual_history;
    br.residual_order = lift.residual_order;
    br.relative_residual = lift.relative_residual;
    br.accepted = LaurentSeries<K>::exact || lift.relative_residual <= tol;
    br.order = order;
}

// Lifts every seed of `F` (chart or interior) and reports the branches. Rational
// seeds are lifted exactly, the rest in complex floating point.
template<class Real>
std::vector<BranchReport> lift_seeds(const CurveSystem& cs, const std::vector<Polynomial>& F, const IntMatrix& M,
                                     const std::vector<ComplexPoint<Real>>& seeds,
                                     const std::vector<std::optional<RationalVector>>& exact_seeds,
                                     const AsymptoticsOptions& opt, const BranchReport& base) {
    std::vector<BranchReport> out;
    for (std::size_t s = 0; s < seeds.size(); ++s) {
        BranchReport br = base;
        for (int order : {opt.order, 2 * opt.order}) {
            try {
                if (exact_seeds[s]) {
                    auto lift = series_newton_lift<Rational>(F, *exact_seeds[s], order, opt.tol);
                    br.exact = true;
                    finish_branch(cs, M, lift, order, opt.tol, br);
                } else {
                    auto lift = series_newton_lift<std::complex<Real>>(F, seeds[s], order, opt.tol);
                    br.exact = false;
                    finish_branch(cs, M, lift, order, opt.tol, br);
                }
                break;
            } catch (const NumericalError& e) {
                if (order != opt.order || std::string(e.what()).find("truncation") == std::string::npos) throw;
            }
        }
        out.push_back(std::move(br));
    }
    return out;
}

template<class Real>
std::vector<ComplexPoint<Real>> distinct_points(std::vector<ComplexPoint<Real>> pts) {
    std::vector<ComplexPoint<Real>> out;
    for (auto& p : pts) {
        bool dup = std::any_of(out.begin(), out.end(), [&](const ComplexPoint<Real>& q) {
            for (std::size_t i = 0; i < p.size(); ++i)
                if (std::abs(p[i] - q[i]) > 1e-8 * std::max<Real>(1, std::abs(q[i]))) return false;
            return true;
        });
        if (!dup) out.push_back(std::move(p));
    }
    return out;
}

template<class Real>
void interior_branches(const CurveSystem& cs, const AsymptoticsOptions& opt, AsymptoticsReport& rep) {
    const std::size_t nu = cs.nu;
    std::vector<Polynomial> at0, images;
    for (std::size_t i = 0; i < nu; ++i) images.push_back(Polynomial::variable(nu, i));
    images.push_back(Polynomial(nu));
    for (const auto& e : cs.equations) at0.push_back(e.substitute(images, nu));
    Polynomial nv = cs.along_curve(cs.sys.nonvanishing).substitute(images, nu);
    Ideal I(Ring(std::vector<std::string>(cs.ring.names().begin(), cs.ring.names().begin() + nu)), at0);
    Ideal R = with_extra_variable(I, "_z");
    std::vector<std::size_t> map(nu);
    for (std::size_t i = 0; i < nu; ++i) map[i] = i;
    R.generators.push_back(Polynomial::variable(nu + 1, nu) * nv.remap(map, nu + 1) - Polynomial::constant(nu + 1, 1));
    if (ideal_dimension(R, opt.groebner) > 0) throw PreconditionError("critical points at alpha(0) are not isolated");
    auto pts = distinct_points(solve_zero_dim<Real>(R, nullptr, opt.groebner));
    std::vector<ComplexPoint<Real>> seeds;
    std::vector<std::optional<RationalVector>> exact;
    for (const auto& p : pts) {
        auto q = reconstruct_point(p, R.generators);
        if (q) q->pop_back();
        exact.push_back(q);
        seeds.emplace_back(p.begin(), p.end() - 1);
    }
    BranchReport base;
    base.kind = "interior";
    for (auto& b : lift_seeds<Real>(cs, cs.equations, identity_matrix(nu), seeds, exact, opt, base))
        rep.branches.push_back(std::move(b));
}

template<class Real>
void escaping_branches(const CurveSystem& cs, const DataCurve& curve, const IntVector& v, const AsymptoticsOptions& opt,
                       AsymptoticsReport& rep) {
    auto w = chart_weight(cs, v, opt.chart_bound);
    if (!w) {
        rep.warnings.push_back("no monomial chart found for ray " + to_string(v));
        return;
    }
    Chart ch = make_chart(cs, *w);
    const std::size_t nu = cs.nu, nb = nu - 1;
    std::vector<Polynomial> images{Polynomial(nb)};
    for (std::size_t k = 0; k < nb; ++k) images.push_back(Polynomial::variable(nb, k));
    images.push_back(Polynomial(nb));
    std::vector<Polynomial> at0;
    for (const auto& e : ch.equations) at0.push_back(e.substitute(images, nb));

    std::vector<ComplexPoint<Real>> seeds;
    std::vector<std::optional<RationalVector>> exact;
    if (nb == 0) {
        if (std::all_of(at0.begin(), at0.end(), [](const Polynomial& p) { return p.is_zero(); })) {
            seeds.push_back({std::complex<Real>(0)});
            exact.push_back(RationalVector{0});
        }
    } else {
        std::vector<std::string> bn;
        for (std::size_t k = 0; k < nb; ++k) bn.push_back("_b" + std::to_string(k + 2));
        Polynomial prod = Polynomial::constant(nb, 1);
        for (std::size_t k = 0; k < nb; ++k) prod *= Polynomial::variable(nb, k);
        Ideal S = saturate(Ideal(Ring(bn), at0), prod, opt.groebner);
        int d = ideal_dimension(S, opt.groebner);
        if (d > 0) {
            rep.warnings.push_back("boundary critical points along ray " + to_string(v) + " are not isolated");
            return;
        }
        if (d == 0) {
            for (const auto& p : distinct_points(solve_zero_dim<Real>(S, nullptr, opt.groebner))) {
                auto q = reconstruct_point(p, S.generators);
                ComplexPoint<Real> seed{std::complex<Real>(0)};
                seed.insert(seed.end(), p.begin(), p.end());
                seeds.push_back(seed);
                if (q) q->insert(q->begin(), Rational(0));
                exact.push_back(q);
            }
        }
    }
    BranchReport base;
    base.kind = "escaping";
    base.ray = v;
    base.chart_weight = *w;
    base.transverse = curve.transverse_to(v);
    for (std::size_t s = 0; s < seeds.size(); ++s) {
        try {
            auto b = lift_seeds<Real>(cs, ch.equations, ch.M, {seeds[s]}, {exact[s]}, opt, base);
            rep.branches.push_back(std::move(b.front()));
        } catch (const NumericalError& e) {
            rep.warnings.push_back("ray " + to_string(v) + ": " + e.what());
        }
    }
}

template<class Real>
AsymptoticsReport asymptotics_impl(const VarietySpec& spec, const DataCurve& curve, const std::vector<Ray>& rays,
                                   Sampler& rng, const AsymptoticsOptions& opt) {
    AsymptoticsReport rep;
    CurveSystem cs = curve_system(spec, curve, opt.groebner);
    rep.limit = curve.limit();
    std::vector<IntVector> normals;
    for (const auto& r : rays)
        if (r.rigid) normals.push_back(sign_normalized(r.v));
    rep.ml_degree = ml_degree(spec, rng, Formulation::automatic, normals, opt.groebner).degree;
    interior_branches<Real>(cs, opt, rep);
    for (const auto& r : rays) {
        if (r.v.size() != curve.size()) throw ValidationError("ray " + to_string(r.v) + " has wrong dimension");
        if (dot(r.v, rep.limit) != 0) continue;
        escaping_branches<Real>(cs, curve, r.v, opt, rep);
    }
    return rep;
}

} // namespace detail

// Series branches of the critical points along the curve: those converging in
// the torus and those escaping along each ray v with alpha(0) . v = 0.
inline AsymptoticsReport asymptotics(const VarietySpec& spec, const DataCurve& curve, const std::vector<Ray>& rays,
                                     Sampler& rng, const AsymptoticsOptions& opt = {}) {
    if (opt.order < 1) throw ValidationError("truncation order must be positive");
    if (opt.precision == 53) return detail::asymptotics_impl<double>(spec, curve, rays, rng, opt);
    if (opt.precision == 64) return detail::asymptotics_impl<long double>(spec, curve, rays, rng, opt);
    throw ValidationError("precision must be 53 or 64 bits");
}

// Number of branches found (each counted once; radical limits assumed).
inline std::size_t branch_count(const AsymptoticsReport& r) { return r.branches.size(); }

} // namespace tropcrit

#endif
