#ifndef TROPCRIT_CRITICAL_HPP
#define TROPCRIT_CRITICAL_HPP

// Likelihood (critical) systems: polynomial equations whose solutions on the
// torus (or the complement of V(f)) are the zeros of dlog f^alpha, with
// numeric or symbolic data alpha. Also ML degrees by sampling.

#include <optional>
#include <string>
#include <vector>

#include "errors.hpp"
#include "groebner.hpp"
#include "numeric_solve.hpp"
#include "random.hpp"
#include "variety.hpp"

namespace tropcrit {

enum class Formulation { automatic, parametrization, lagrange, minors };

inline std::string to_string(Formulation f) {
    switch (f) {
    case Formulation::automatic: return "automatic";
    case Formulation::parametrization: return "parametrization";
    case Formulation::lagrange: return "lagrange";
    case Formulation::minors: return "minors";
    }
    return "?";
}

struct CriticalSystem {
    // Unknowns first, then multipliers, then data variables when symbolic.
    Ring ring;
    std::vector<Polynomial> equations;
    // Must not vanish at a solution (product of the f_i and cleared monomials).
    Polynomial nonvanishing;
    std::size_t unknowns = 0;
    std::size_t multipliers = 0;
    std::size_t data_vars = 0;
    Formulation formulation = Formulation::automatic;
    RationalVector data;  // empty when symbolic
    // f_1..f_p as functions of the unknowns (the torus coordinates t_i for
    // ideal inputs), in the system's ring.
    std::vector<Polynomial> coordinates;

    bool symbolic() const { return data_vars > 0; }
    Ideal ideal() const { return Ideal(ring, equations); }

    // equations + (z * nonvanishing - 1) with z appended as the last variable.
    Ideal rabinowitsch() const {
        Ideal ext = with_extra_variable(ideal(), "_z");
        const std::size_t n = ring.size();
        std::vector<std::size_t> map(n);
        for (std::size_t i = 0; i < n; ++i) map[i] = i;
        ext.generators.push_back(Polynomial::variable(n + 1, n) * nonvanishing.remap(map, n + 1) -
                                 Polynomial::constant(n + 1, 1));
        return ext;
    }

    Ideal saturated(const GroebnerOptions& opt = {}) const { return saturate(ideal(), nonvanishing, opt); }
};

namespace detail {

inline Polynomial determinant(std::vector<std::vector<Polynomial>> m) {
    const std::size_t n = m.size();
    if (n == 0) return Polynomial();
    if (n == 1) return m[0][0];
    Polynomial acc(m[0][0].nvars());
    for (std::size_t j = 0; j < n; ++j) {
        if (m[0][j].is_zero()) continue;
        std::vector<std::vector<Polynomial>> minor;
        for (std::size_t r = 1; r < n; ++r) {
            std::vector<Polynomial> row;
            for (std::size_t c = 0; c < n; ++c)
                if (c != j) row.push_back(m[r][c]);
            minor.push_back(std::move(row));
        }
        Polynomial t = m[0][j] * determinant(std::move(minor));
        if (j % 2) acc -= t;
        else acc += t;
    }
    return acc;
}

inline void combinations(std::size_t n, std::size_t k, std::size_t start, std::vector<std::size_t>& cur,
                         std::vector<std::vector<std::size_t>>& out) {
    if (cur.size() == k) {
        out.push_back(cur);
        return;
    }
    for (std::size_t i = start; i < n; ++i) {
        cur.push_back(i);
        combinations(n, k, i + 1, cur, out);
        cur.pop_back();
    }
}

inline std::vector<std::vector<std::size_t>> combinations(std::size_t n, std::size_t k) {
    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t> cur;
    combinations(n, k, 0, cur, out);
    return out;
}

// Data entries as polynomials of the target ring: constants, or the variables
// s_1..s_p placed from index `first`.
inline std::vector<Polynomial> data_polys(const RationalVector* alpha, std::size_t p, std::size_t total,
                                          std::size_t first) {
    std::vector<Polynomial> a;
    for (std::size_t i = 0; i < p; ++i)
        a.push_back(alpha ? Polynomial::constant(total, (*alpha)[i]) : Polynomial::variable(total, first + i));
    return a;
}

inline std::vector<std::string> data_names(std::size_t p, const std::string& prefix, bool zero_based) {
    std::vector<std::string> n;
    for (std::size_t i = 0; i < p; ++i) n.push_back(prefix + std::to_string(zero_based ? i : i + 1));
    return n;
}

inline Polynomial embed(const Polynomial& f, std::size_t total) {
    std::vector<std::size_t> map(f.nvars());
    for (std::size_t i = 0; i < map.size(); ++i) map[i] = i;
    return f.remap(map, total);
}

// Divides out every listed factor as often as it divides exactly.
inline Polynomial strip_factors(Polynomial e, const std::vector<Polynomial>& factors) {
    for (const auto& f : factors) {
        if (f.is_constant()) continue;
        while (!e.is_zero()) {
            auto q = divide_exact(e, f);
            if (!q) break;
            e = std::move(*q);
        }
    }
    return e;
}

} // namespace detail

// E_j = sum_i alpha_i d_j f_i prod_{k != i} f_k with factors f_k that divide
// E_j exactly removed. Laurent f_i are split as numerator times monomial.
inline CriticalSystem parametrization_system(const Ring& params, const std::vector<Polynomial>& fs,
                                             const RationalVector* alpha, const std::string& prefix = "s",
                                             bool zero_based = false) {
    const std::size_t n = params.size(), p = fs.size();
    if (alpha && alpha->size() != p) throw ValidationError("data vector has wrong length");
    const std::size_t total = alpha ? n : n + p;
    std::vector<std::string> names = params.names();
    if (!alpha) {
        auto dn = detail::data_names(p, prefix, zero_based);
        names.insert(names.end(), dn.begin(), dn.end());
    }
    auto a = detail::data_polys(alpha, p, total, n);

    std::vector<Polynomial> g;  // cleared numerators
    std::vector<Monomial> shift;
    for (const auto& f : fs) {
        Polynomial c = f;
        shift.push_back(c.is_laurent() ? c.clear_laurent() : Monomial(n));
        g.push_back(detail::embed(c, total));
    }
    std::vector<bool> laurent_in(n, false);
    for (const auto& s : shift)
        for (std::size_t j = 0; j < n; ++j)
            if (s[j] != 0) laurent_in[j] = true;

    Polynomial prod_all = Polynomial::constant(total, 1);
    for (const auto& gi : g) prod_all *= gi;

    CriticalSystem sys;
    sys.ring = Ring(names);
    sys.unknowns = n;
    sys.data_vars = alpha ? 0 : p;
    sys.formulation = Formulation::parametrization;
    if (alpha) sys.data = *alpha;

    std::vector<Polynomial> factors = g;
    for (std::size_t j = 0; j < n; ++j) {
        Polynomial xj = Polynomial::variable(total, j);
        Polynomial e(total);
        for (std::size_t i = 0; i < p; ++i) {
            Polynomial others = Polynomial::constant(total, 1);
            for (std::size_t k = 0; k < p; ++k)
                if (k != i) others *= g[k];
            Polynomial term = g[i].derivative(j) * others;
            if (laurent_in[j]) {
                term = xj * term;
                if (shift[i][j] != 0) term -= prod_all * make_rational(shift[i][j]);
            }
            e += a[i] * term;
        }
        std::vector<Polynomial> strip = factors;
        if (laurent_in[j]) strip.push_back(xj);
        e = detail::strip_factors(e, strip);
        if (!e.is_zero()) sys.equations.push_back(e);
    }
    sys.nonvanishing = prod_all;
    for (std::size_t j = 0; j < n; ++j)
        if (laurent_in[j]) sys.nonvanishing *= Polynomial::variable(total, j);
    for (const auto& f : fs) {
        Polynomial e = detail::embed(f, total);
        sys.coordinates.push_back(e);
    }
    return sys;
}

// Torus codimension of the ideal (after clearing Laurent generators).
inline std::size_t torus_codimension(const Ideal& I, const GroebnerOptions& opt = {}) {
    Ideal s = saturate_torus(laurent_normalized(I), opt);
    int d = ideal_dimension(s, opt);
    if (d < 0) throw PreconditionError("the ideal defines the empty subvariety of the torus");
    return I.nvars() - static_cast<std::size_t>(d);
}

// alpha_i = sum_k lambda_k t_i d_i g_k together with g_k = 0. Needs as many
// generators as the codimension.
inline CriticalSystem lagrange_system(const Ideal& I, const RationalVector* alpha, const std::string& prefix = "s",
                                      bool zero_based = false, const GroebnerOptions& opt = {}) {
    const std::size_t p = I.nvars();
    if (alpha && alpha->size() != p) throw ValidationError("data vector has wrong length");
    Ideal J = laurent_normalized(I);
    const std::size_t c = torus_codimension(J, opt);
    if (J.generators.size() != c) {
        Ideal r = reduced_ideal(saturate_torus(J, opt), opt);
        if (r.generators.size() != c)
            throw PreconditionError("the Lagrange formulation needs " + std::to_string(c) +
                                    " generators (a complete intersection); got " + std::to_string(r.generators.size()));
        J = r;
    }
    const std::size_t m = c;
    const std::size_t total = p + m + (alpha ? 0 : p);
    std::vector<std::string> names = I.ring.names();
    for (std::size_t k = 0; k < m; ++k) names.push_back("_l" + std::to_string(k + 1));
    if (!alpha) {
        auto dn = detail::data_names(p, prefix, zero_based);
        names.insert(names.end(), dn.begin(), dn.end());
    }
    auto a = detail::data_polys(alpha, p, total, p + m);

    CriticalSystem sys;
    sys.ring = Ring(names);
    sys.unknowns = p;
    sys.multipliers = m;
    sys.data_vars = alpha ? 0 : p;
    sys.formulation = Formulation::lagrange;
    if (alpha) sys.data = *alpha;
    std::vector<Polynomial> g;
    for (const auto& gk : J.generators) g.push_back(detail::embed(gk, total));
    for (const auto& gk : g) sys.equations.push_back(gk);
    for (std::size_t i = 0; i < p; ++i) {
        Polynomial e = a[i];
        for (std::size_t k = 0; k < m; ++k) e -= Polynomial::variable(total, p + k) * g[k].toric_derivative(i);
        sys.equations.push_back(e);
    }
    sys.nonvanishing = Polynomial::constant(total, 1);
    for (std::size_t i = 0; i < p; ++i) {
        sys.nonvanishing *= Polynomial::variable(total, i);
        sys.coordinates.push_back(Polynomial::variable(total, i));
    }
    return sys;
}

// Generators of I plus the (c+1)-minors of the matrix with rows alpha and
// (t_i d_i g_k)_i for every generator g_k, c the codimension.
inline CriticalSystem minors_system(const Ideal& I, const RationalVector* alpha, const std::string& prefix = "s",
                                    bool zero_based = false, const GroebnerOptions& opt = {}) {
    const std::size_t p = I.nvars();
    if (alpha && alpha->size() != p) throw ValidationError("data vector has wrong length");
    Ideal J = laurent_normalized(I);
    const std::size_t c = torus_codimension(J, opt);
    const std::size_t total = p + (alpha ? 0 : p);
    std::vector<std::string> names = I.ring.names();
    if (!alpha) {
        auto dn = detail::data_names(p, prefix, zero_based);
        names.insert(names.end(), dn.begin(), dn.end());
    }
    auto a = detail::data_polys(alpha, p, total, p);

    CriticalSystem sys;
    sys.ring = Ring(names);
    sys.unknowns = p;
    sys.data_vars = alpha ? 0 : p;
    sys.formulation = Formulation::minors;
    if (alpha) sys.data = *alpha;
    std::vector<std::vector<Polynomial>> rows{a};
    for (const auto& gk : J.generators) {
        Polynomial ge = detail::embed(gk, total);
        sys.equations.push_back(ge);
        std::vector<Polynomial> row;
        for (std::size_t i = 0; i < p; ++i) row.push_back(ge.toric_derivative(i));
        rows.push_back(std::move(row));
    }
    for (const auto& rsel : detail::combinations(rows.size(), c + 1)) {
        if (rsel[0] != 0) continue;  // minors without the alpha row vanish on smooth points
        for (const auto& csel : detail::combinations(p, c + 1)) {
            std::vector<std::vector<Polynomial>> m;
            for (auto r : rsel) {
                std::vector<Polynomial> row;
                for (auto col : csel) row.push_back(rows[r][col]);
                m.push_back(std::move(row));
            }
            Polynomial d = detail::determinant(std::move(m));
            if (!d.is_zero()) sys.equations.push_back(d);
        }
    }
    sys.nonvanishing = Polynomial::constant(total, 1);
    for (std::size_t i = 0; i < p; ++i) {
        sys.nonvanishing *= Polynomial::variable(total, i);
        sys.coordinates.push_back(Polynomial::variable(total, i));
    }
    return sys;
}

inline Formulation resolve_formulation(const VarietySpec& spec, Formulation f, const GroebnerOptions& opt = {}) {
    if (spec.kind != SpecKind::ideal) {
        if (f == Formulation::lagrange || f == Formulation::minors)
            throw PreconditionError("formulation " + to_string(f) + " applies to ideal inputs only");
        return Formulation::parametrization;
    }
    if (f == Formulation::parametrization) throw PreconditionError("ideal inputs have no parametrization");
    if (f != Formulation::automatic) return f;
    return torus_codimension(spec.ideal, opt) <= 2 ? Formulation::minors : Formulation::lagrange;
}

namespace detail {

inline CriticalSystem build_system(const VarietySpec& spec, const RationalVector* alpha, Formulation f,
                                   const std::string& prefix, bool zero_based, const GroebnerOptions& opt) {
    spec.validate();
    switch (resolve_formulation(spec, f, opt)) {
    case Formulation::parametrization:
        return parametrization_system(spec.parameter_ring(), spec.parameter_functions(), alpha, prefix, zero_based);
    case Formulation::lagrange: return lagrange_system(spec.ideal, alpha, prefix, zero_based, opt);
    default: return minors_system(spec.ideal, alpha, prefix, zero_based, opt);
    }
}

} // namespace detail

inline CriticalSystem critical_system(const VarietySpec& spec, const RationalVector& alpha,
                                      Formulation f = Formulation::automatic, const GroebnerOptions& opt = {}) {
    return detail::build_system(spec, &alpha, f, "s", false, opt);
}

// Incidence system with data variables <prefix>1..<prefix>p (or 0-based).
inline CriticalSystem critical_system_symbolic(const VarietySpec& spec, Formulation f = Formulation::automatic,
                                               const std::string& prefix = "s", bool zero_based = false,
                                               const GroebnerOptions& opt = {}) {
    return detail::build_system(spec, nullptr, f, prefix, zero_based, opt);
}

struct CriticalCount {
    std::size_t degree = 0;
    bool radical = true;
};

// Number of solutions with the nonvanishing condition imposed; throws
// PreconditionError when the system is not zero-dimensional.
inline CriticalCount count_critical_points(const CriticalSystem& sys, const GroebnerOptions& opt = {}) {
    if (sys.symbolic()) throw PreconditionError("cannot count solutions of a symbolic system");
    ZeroDimSolution info;
    solve_zero_dim<double>(sys.rabinowitsch(), &info, opt);
    return {info.degree, info.radical()};
}

struct MLDegreeResult {
    std::size_t degree = 0;
    RationalVector alpha;
    int attempts = 0;
    bool radical = true;
    Formulation formulation = Formulation::automatic;
};

inline bool on_some_hyperplane(const RationalVector& alpha, const std::vector<IntVector>& normals) {
    for (const auto& a : normals)
        if (dot(a, alpha) == 0) return true;
    return false;
}

// Number of critical points at a random data vector; degenerate samples (not
// zero-dimensional, not radical, or on a known slope) are redrawn up to five
// times.
inline MLDegreeResult ml_degree(const VarietySpec& spec, Sampler& rng, Formulation f = Formulation::automatic,
                                const std::vector<IntVector>& slopes = {}, const GroebnerOptions& opt = {}) {
    const std::size_t p = spec.ambient_dim();
    if (spec.kind == SpecKind::arrangement) {
        RationalMatrix normals;
        for (const auto& row : spec.arrangement.rows) normals.emplace_back(row.begin(), row.end() - 1);
        if (normals.empty() || rank(normals) < spec.arrangement.dim())
            throw PreconditionError("arrangement is not essential; its critical points are not isolated");
    }
    Formulation used = resolve_formulation(spec, f, opt);
    std::string last;
    for (int attempt = 1; attempt <= 5; ++attempt) {
        RationalVector alpha = rng.vector(p);
        if (on_some_hyperplane(alpha, slopes)) {
            last = "data vector on a slope hyperplane";
            continue;
        }
        try {
            auto sys = critical_system(spec, alpha, used, opt);
            auto count = count_critical_points(sys, opt);
            if (!count.radical) {
                last = "critical system is not radical";
                continue;
            }
            return MLDegreeResult{count.degree, alpha, attempt, true, used};
        } catch (const PreconditionError& e) {
            last = e.what();
        }
    }
    throw DegenerateSample("no generic data vector in 5 attempts (" + last + ")");
}

} // namespace tropcrit

#endif
