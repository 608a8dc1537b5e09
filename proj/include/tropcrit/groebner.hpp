#ifndef TROPCRIT_GROEBNER_HPP
#define TROPCRIT_GROEBNER_HPP

// Buchberger's algorithm over Q with the sugar strategy and the
// Gebauer-Moeller installation of both Buchberger criteria, plus the ideal
// operations built on it: normal forms, elimination, saturation, weighted
// initial ideals, zero-dimensional degrees and homogeneity spaces.

#include <algorithm>
#include <cstdlib>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "errors.hpp"
#include "linalg.hpp"
#include "order.hpp"
#include "polynomial.hpp"

namespace tropcrit {

struct GroebnerOptions {
    // Maximum number of single-term reduction steps per basis computation.
    std::size_t budget = 1'000'000;
};

struct Ideal {
    Ring ring;
    std::vector<Polynomial> generators;

    Ideal() = default;
    Ideal(Ring r, std::vector<Polynomial> gens) : ring(std::move(r)) {
        for (auto& g : gens) {
            if (g.nvars() != ring.size())
                throw ValidationError("generator has " + std::to_string(g.nvars()) + " variables, ring has " +
                                      std::to_string(ring.size()));
            if (!g.is_zero()) generators.push_back(std::move(g));
        }
    }

    static Ideal parse(const std::vector<std::string>& vars, const std::vector<std::string>& gens) {
        Ring r(vars);
        std::vector<Polynomial> ps;
        for (const auto& g : gens) ps.push_back(poly_parse(g, r));
        return Ideal(r, std::move(ps));
    }

    std::size_t nvars() const { return ring.size(); }
    bool is_zero() const { return generators.empty(); }
};

class GroebnerBasis {
public:
    GroebnerBasis() = default;
    GroebnerBasis(Ring ring, MonomialOrder order, std::vector<Polynomial> elements, bool reduced)
      : ring_(std::move(ring))
      , order_(std::move(order))
      , elements_(std::move(elements))
      , reduced_(reduced) {}

    const Ring& ring() const { return ring_; }
    const MonomialOrder& order() const { return order_; }
    const std::vector<Polynomial>& elements() const { return elements_; }
    bool reduced() const { return reduced_; }
    std::size_t size() const { return elements_.size(); }

    bool is_unit() const { return elements_.size() == 1 && elements_[0].is_constant(); }

    Monomial leading_monomial(std::size_t i) const {
        const auto& t = elements_[i].terms();
        Monomial best = t.begin()->first;
        for (const auto& [m, c] : t)
            if (order_.greater(m, best)) best = m;
        return best;
    }

    std::vector<Monomial> leading_monomials() const {
        std::vector<Monomial> out;
        for (std::size_t i = 0; i < elements_.size(); ++i) out.push_back(leading_monomial(i));
        return out;
    }

    Ideal ideal() const { return Ideal(ring_, elements_); }

private:
    Ring ring_;
    MonomialOrder order_;
    std::vector<Polynomial> elements_;
    bool reduced_ = false;
};

namespace detail {

struct Term {
    Monomial m;
    Rational c;
};

// Terms sorted strictly descending in the active order.
using GPoly = std::vector<Term>;

inline GPoly to_gpoly(const Polynomial& p, const MonomialOrder& ord) {
    GPoly g;
    g.reserve(p.size());
    for (const auto& [m, c] : p.terms()) g.push_back({m, c});
    std::sort(g.begin(), g.end(), [&](const Term& a, const Term& b) { return ord.greater(a.m, b.m); });
    return g;
}

inline Polynomial from_gpoly(const GPoly& g, std::size_t n) {
    Polynomial p(n);
    for (const auto& t : g) p.add_term(t.m, t.c);
    return p;
}

inline void make_monic(GPoly& g) {
    if (g.empty() || g.front().c == 1) return;
    Rational inv = 1 / g.front().c;
    for (auto& t : g) t.c *= inv;
}

struct OrderGreater {
    const MonomialOrder* ord;
    bool operator()(const Monomial& a, const Monomial& b) const { return ord->greater(a, b); }
};

class Engine {
public:
    Engine(std::size_t nvars, const MonomialOrder& ord, const GroebnerOptions& opt)
      : n_(nvars)
      , ord_(ord)
      , opt_(opt) {}

    // Reduces f modulo the active basis elements. With full = false only the
    // leading term is reduced repeatedly.
    GPoly reduce(const GPoly& f, bool full, long* sugar = nullptr) {
        std::map<Monomial, Rational, OrderGreater> acc(OrderGreater{&ord_});
        for (const auto& t : f) acc.emplace(t.m, t.c);
        GPoly rest;
        while (!acc.empty()) {
            auto it = acc.begin();
            const std::size_t r = find_reducer(it->first);
            if (r == npos) {
                if (!full) break;
                rest.push_back({it->first, it->second});
                acc.erase(it);
                continue;
            }
            if (++steps_ > opt_.budget)
                throw ResourceError("Groebner step budget of " + std::to_string(opt_.budget) + " reductions exceeded");
            const GPoly& g = basis_[r];
            const Monomial mono = it->first / g.front().m;
            const Rational factor = it->second / g.front().c;
            if (sugar) *sugar = std::max(*sugar, sugars_[r] + mono.degree());
            acc.erase(it);
            for (std::size_t k = 1; k < g.size(); ++k) {
                Monomial m = g[k].m * mono;
                auto [jt, inserted] = acc.try_emplace(std::move(m), -factor * g[k].c);
                if (!inserted) {
                    jt->second -= factor * g[k].c;
                    if (jt->second == 0) acc.erase(jt);
                }
            }
        }
        for (auto& [m, c] : acc) rest.push_back({m, c});
        return rest;
    }

    std::vector<GPoly> run(std::vector<GPoly> input) {
        std::sort(input.begin(), input.end(),
                  [&](const GPoly& a, const GPoly& b) { return ord_.greater(b.front().m, a.front().m); });
        for (auto& f : input) {
            long s = f.front().m.degree();
            for (const auto& t : f) s = std::max(s, t.m.degree());
            GPoly h = reduce(f, true, &s);
            if (h.empty()) continue;
            make_monic(h);
            if (h.front().m.is_one()) return {h};
            insert(std::move(h), s);
        }
        while (!pairs_.empty()) {
            std::size_t best = 0;
            for (std::size_t k = 1; k < pairs_.size(); ++k) {
                const Pair& a = pairs_[k];
                const Pair& b = pairs_[best];
                if (a.sugar != b.sugar ? a.sugar < b.sugar : ord_.greater(b.lcm, a.lcm)) best = k;
            }
            Pair p = pairs_[best];
            pairs_.erase(pairs_.begin() + static_cast<std::ptrdiff_t>(best));
            long s = p.sugar;
            GPoly h = reduce(spoly(p), true, &s);
            if (h.empty()) continue;
            make_monic(h);
            if (h.front().m.is_one()) return {h};
            insert(std::move(h), s);
        }
        return reduced_basis();
    }

    std::size_t steps() const { return steps_; }

    void set_basis(std::vector<GPoly> g) {
        basis_ = std::move(g);
        active_.assign(basis_.size(), 1);
        sugars_.assign(basis_.size(), 0);
    }

private:
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

    struct Pair {
        std::size_t i, j;
        Monomial lcm;
        long sugar;
    };

    std::size_t find_reducer(const Monomial& m) const {
        for (std::size_t k = 0; k < basis_.size(); ++k)
            if (active_[k] && basis_[k].front().m.divides(m)) return k;
        return npos;
    }

    GPoly spoly(const Pair& p) {
        const GPoly& a = basis_[p.i];
        const GPoly& b = basis_[p.j];
        Monomial ma = p.lcm / a.front().m;
        Monomial mb = p.lcm / b.front().m;
        std::map<Monomial, Rational, OrderGreater> acc(OrderGreater{&ord_});
        for (std::size_t k = 1; k < a.size(); ++k) acc[a[k].m * ma] += a[k].c;
        for (std::size_t k = 1; k < b.size(); ++k) acc[b[k].m * mb] -= b[k].c;
        GPoly out;
        for (auto& [m, c] : acc)
            if (c != 0) out.push_back({m, c});
        return out;
    }

    Pair make_pair(std::size_t i, std::size_t j) const {
        Monomial l = lcm(basis_[i].front().m, basis_[j].front().m);
        long si = sugars_[i] + l.degree() - basis_[i].front().m.degree();
        long sj = sugars_[j] + l.degree() - basis_[j].front().m.degree();
        return Pair{i, j, l, std::max(si, sj)};
    }

    // Gebauer-Moeller update.
    void insert(GPoly h, long sugar) {
        const std::size_t hi = basis_.size();
        basis_.push_back(std::move(h));
        sugars_.push_back(sugar);
        active_.push_back(0);
        const Monomial& lh = basis_[hi].front().m;

        std::vector<Pair> c;
        for (std::size_t g = 0; g < hi; ++g)
            if (active_[g]) c.push_back(make_pair(hi, g));
        std::vector<Pair> d;
        while (!c.empty()) {
            Pair p = c.back();
            c.pop_back();
            bool keep = coprime(lh, basis_[p.j].front().m);
            if (!keep) {
                keep = true;
                for (const auto& q : c)
                    if (q.lcm.divides(p.lcm)) keep = false;
                for (const auto& q : d)
                    if (q.lcm.divides(p.lcm)) keep = false;
            }
            if (keep) d.push_back(p);
        }
        std::vector<Pair> e;
        for (const auto& p : d)
            if (!coprime(lh, basis_[p.j].front().m)) e.push_back(p);

        std::vector<Pair> kept;
        for (const auto& p : pairs_) {
            bool drop = lh.divides(p.lcm) && lcm(basis_[p.i].front().m, lh) != p.lcm &&
                        lcm(basis_[p.j].front().m, lh) != p.lcm;
            if (!drop) kept.push_back(p);
        }
        kept.insert(kept.end(), e.begin(), e.end());
        pairs_ = std::move(kept);

        for (std::size_t g = 0; g < hi; ++g)
            if (active_[g] && lh.divides(basis_[g].front().m)) active_[g] = 0;
        active_[hi] = 1;
    }

    std::vector<GPoly> reduced_basis() {
        std::vector<std::size_t> idx;
        for (std::size_t k = 0; k < basis_.size(); ++k)
            if (active_[k]) idx.push_back(k);
        std::vector<GPoly> minimal;
        for (std::size_t a : idx) {
            bool redundant = false;
            for (std::size_t b : idx) {
                if (a == b) continue;
                const Monomial& la = basis_[a].front().m;
                const Monomial& lb = basis_[b].front().m;
                if (lb.divides(la) && (lb != la || b < a)) redundant = true;
            }
            if (!redundant) minimal.push_back(basis_[a]);
        }
        std::vector<GPoly> out;
        for (std::size_t k = 0; k < minimal.size(); ++k) {
            std::vector<GPoly> others;
            for (std::size_t l = 0; l < minimal.size(); ++l)
                if (l != k) others.push_back(minimal[l]);
            Engine tail(n_, ord_, opt_);
            tail.set_basis(others);
            tail.steps_ = steps_;
            GPoly g = minimal[k];
            GPoly head{g.front()};
            GPoly rest(g.begin() + 1, g.end());
            GPoly r = tail.reduce(rest, true);
            steps_ = tail.steps_;
            head.insert(head.end(), r.begin(), r.end());
            make_monic(head);
            out.push_back(std::move(head));
        }
        std::sort(out.begin(), out.end(),
                  [&](const GPoly& a, const GPoly& b) { return ord_.greater(b.front().m, a.front().m); });
        return out;
    }

    std::size_t n_;
    MonomialOrder ord_;
    GroebnerOptions opt_;
    std::vector<GPoly> basis_;
    std::vector<long> sugars_;
    std::vector<char> active_;
    std::vector<Pair> pairs_;
    std::size_t steps_ = 0;
};

} // namespace detail

// ----------------------------------------------------------------------------
// Basis computation and normal forms
// ----------------------------------------------------------------------------

inline GroebnerBasis groebner_basis(const Ideal& ideal, const MonomialOrder& order, const GroebnerOptions& opt = {}) {
    std::vector<detail::GPoly> input;
    for (const auto& g : ideal.generators) {
        if (g.is_laurent()) throw ValidationError("groebner_basis: Laurent generator; clear denominators first");
        if (!g.is_zero()) input.push_back(detail::to_gpoly(g, order));
    }
    std::vector<Polynomial> elems;
    if (!input.empty()) {
        detail::Engine eng(ideal.nvars(), order, opt);
        for (const auto& g : eng.run(std::move(input))) elems.push_back(detail::from_gpoly(g, ideal.nvars()));
    }
    return GroebnerBasis(ideal.ring, order, std::move(elems), true);
}

inline GroebnerBasis groebner_basis(const Ideal& ideal, const WeightOrder& order, const GroebnerOptions& opt = {}) {
    return groebner_basis(ideal, MonomialOrder::from_weight_order(order), opt);
}

inline Polynomial normal_form(const Polynomial& f, const GroebnerBasis& gb, const GroebnerOptions& opt = {}) {
    if (f.is_zero()) return f;
    std::vector<detail::GPoly> basis;
    for (const auto& g : gb.elements()) basis.push_back(detail::to_gpoly(g, gb.order()));
    for (auto& g : basis) detail::make_monic(g);
    detail::Engine eng(gb.ring().size(), gb.order(), opt);
    eng.set_basis(std::move(basis));
    return detail::from_gpoly(eng.reduce(detail::to_gpoly(f, gb.order()), true), gb.ring().size());
}

inline bool contains(const GroebnerBasis& gb, const Polynomial& f) { return normal_form(f, gb).is_zero(); }

inline bool is_unit_ideal(const Ideal& ideal, const GroebnerOptions& opt = {}) {
    return groebner_basis(ideal, MonomialOrder::grlex(), opt).is_unit();
}

inline bool same_ideal(const Ideal& a, const Ideal& b, const GroebnerOptions& opt = {}) {
    auto ga = groebner_basis(a, MonomialOrder::grlex(), opt);
    auto gb = groebner_basis(b, MonomialOrder::grlex(), opt);
    return ga.elements() == gb.elements();
}

// Reduced grlex basis as an ideal (canonical generating set).
inline Ideal reduced_ideal(const Ideal& ideal, const GroebnerOptions& opt = {}) {
    return groebner_basis(ideal, MonomialOrder::grlex(), opt).ideal();
}

// ----------------------------------------------------------------------------
// Elimination and saturation
// ----------------------------------------------------------------------------

// I intersected with the subring of variables with keep[i] set; the result
// lives in that subring (variables renumbered in order).
inline Ideal eliminate(const Ideal& ideal, const std::vector<bool>& keep, const GroebnerOptions& opt = {}) {
    const std::size_t n = ideal.nvars();
    std::vector<bool> elim(n);
    std::vector<std::string> names;
    std::vector<std::size_t> map(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        elim[i] = !keep[i];
        if (keep[i]) {
            map[i] = names.size();
            names.push_back(ideal.ring.name(i));
        }
    }
    auto gb = groebner_basis(ideal, MonomialOrder::elimination(elim), opt);
    Ring sub(names);
    std::vector<Polynomial> out;
    for (const auto& g : gb.elements()) {
        bool inside = true;
        for (const auto& [m, c] : g.terms())
            for (std::size_t i = 0; i < n; ++i)
                if (!keep[i] && m[i] != 0) inside = false;
        if (inside) out.push_back(g.remap(map, names.size()));
    }
    return Ideal(sub, std::move(out));
}

inline Ideal eliminate(const Ideal& ideal, const std::vector<std::string>& keep_names, const GroebnerOptions& opt = {}) {
    std::vector<bool> keep(ideal.nvars(), false);
    for (const auto& k : keep_names) {
        auto idx = ideal.ring.index_of(k);
        if (idx < 0) throw ValidationError("eliminate: unknown variable '" + k + "'");
        keep[static_cast<std::size_t>(idx)] = true;
    }
    return eliminate(ideal, keep, opt);
}

// Adds one variable at the end of the ring.
inline Ideal with_extra_variable(const Ideal& ideal, const std::string& name) {
    const std::size_t n = ideal.nvars();
    std::vector<std::size_t> map(n);
    for (std::size_t i = 0; i < n; ++i) map[i] = i;
    std::vector<Polynomial> gens;
    for (const auto& g : ideal.generators) gens.push_back(g.remap(map, n + 1));
    return Ideal(ideal.ring.extended({name}), std::move(gens));
}

// (I : f^infinity) via I + (1 - y f) with y eliminated.
inline Ideal saturate(const Ideal& ideal, const Polynomial& f, const GroebnerOptions& opt = {}) {
    if (f.is_zero()) throw PreconditionError("saturate: f must be nonzero");
    const std::size_t n = ideal.nvars();
    Ideal ext = with_extra_variable(ideal, "_sat");
    std::vector<std::size_t> map(n);
    for (std::size_t i = 0; i < n; ++i) map[i] = i;
    Polynomial y = Polynomial::variable(n + 1, n);
    ext.generators.push_back(Polynomial::constant(n + 1, 1) - y * f.remap(map, n + 1));
    std::vector<bool> keep(n + 1, true);
    keep[n] = false;
    Ideal out = eliminate(ext, keep, opt);
    out.ring = ideal.ring;
    return out;
}

inline Polynomial product_of_variables(std::size_t n) {
    Monomial m(n);
    for (std::size_t i = 0; i < n; ++i) m[i] = 1;
    return Polynomial::term(m, 1);
}

// Saturation by the product of all variables: the ideal of the torus part.
inline Ideal saturate_torus(const Ideal& ideal, const GroebnerOptions& opt = {}) {
    if (ideal.is_zero()) return ideal;
    return saturate(ideal, product_of_variables(ideal.nvars()), opt);
}

// ----------------------------------------------------------------------------
// Initial ideals
// ----------------------------------------------------------------------------

inline Polynomial homogenize(const Polynomial& f, std::size_t nvars_out) {
    const long d = f.total_degree();
    Polynomial r(nvars_out);
    for (const auto& [m, c] : f.terms()) {
        Monomial mm(nvars_out);
        for (std::size_t i = 0; i < m.size(); ++i) mm[i] = m[i];
        mm[nvars_out - 1] = static_cast<int>(d - m.degree());
        r.add_term(mm, c);
    }
    return r;
}

inline Polynomial dehomogenize(const Polynomial& f, std::size_t nvars_out) {
    Polynomial r(nvars_out);
    for (const auto& [m, c] : f.terms()) {
        Monomial mm(nvars_out);
        for (std::size_t i = 0; i < nvars_out; ++i) mm[i] = m[i];
        r.add_term(mm, c);
    }
    return r;
}

// Generators of the homogenization I^h (extra variable last), obtained by
// homogenizing a degree-compatible Groebner basis.
inline Ideal homogenized_ideal(const Ideal& ideal, const GroebnerOptions& opt = {}) {
    const std::size_t n = ideal.nvars();
    auto gb = groebner_basis(ideal, MonomialOrder::grlex(), opt);
    std::vector<Polynomial> gens;
    for (const auto& g : gb.elements()) gens.push_back(homogenize(g, n + 1));
    return Ideal(ideal.ring.extended({"_h"}), std::move(gens));
}

// init_w(I) from a precomputed homogenization (see homogenized_ideal).
inline Ideal initial_ideal_from_homogenized(const Ideal& homog, const IntVector& w, const GroebnerOptions& opt = {}) {
    const std::size_t n = homog.nvars() - 1;
    if (w.size() != n) throw ValidationError("initial_ideal: weight has wrong dimension");
    std::vector<std::string> names(homog.ring.names().begin(), homog.ring.names().end() - 1);
    Ring ring(names);
    if (homog.is_zero()) return Ideal(ring, {});
    long long c = 0;
    for (long long x : w) c = std::max(c, x);
    c += 1;
    IntVector u(n + 1), wh(n + 1, 0);
    for (std::size_t i = 0; i < n; ++i) {
        u[i] = c - w[i];
        wh[i] = w[i];
    }
    u[n] = c;
    auto gb = groebner_basis(homog, MonomialOrder({u}), opt);
    std::vector<Polynomial> gens;
    for (const auto& g : gb.elements()) gens.push_back(dehomogenize(g.initial_form(wh), n));
    return Ideal(ring, std::move(gens));
}

// Ideal generated by the w-initial forms (minimal w-weight parts) of all
// elements of I.
inline Ideal initial_ideal(const Ideal& ideal, const IntVector& w, const GroebnerOptions& opt = {}) {
    if (w.size() != ideal.nvars()) throw ValidationError("initial_ideal: weight has wrong dimension");
    if (is_zero(w)) return ideal;
    return initial_ideal_from_homogenized(homogenized_ideal(ideal, opt), w, opt);
}

// ----------------------------------------------------------------------------
// Dimension and zero-dimensional degree
// ----------------------------------------------------------------------------

// Krull dimension via maximal independent sets of the leading-term ideal;
// -1 for the unit ideal.
inline int ideal_dimension(const Ideal& ideal, const GroebnerOptions& opt = {}) {
    const std::size_t n = ideal.nvars();
    if (ideal.is_zero()) return static_cast<int>(n);
    auto gb = groebner_basis(ideal, MonomialOrder::grlex(), opt);
    if (gb.is_unit()) return -1;
    auto lms = gb.leading_monomials();
    int best = 0;
    for (unsigned long mask = 0; mask < (1ul << n); ++mask) {
        int bits = __builtin_popcountl(mask);
        if (bits <= best) continue;
        bool independent = true;
        for (const auto& m : lms) {
            bool inside = true;
            for (std::size_t i = 0; i < n; ++i)
                if (m[i] > 0 && !(mask >> i & 1ul)) inside = false;
            if (inside) {
                independent = false;
                break;
            }
        }
        if (independent) best = bits;
    }
    return best;
}

// Standard monomials of a zero-dimensional ideal; throws if the quotient is
// infinite-dimensional.
inline std::vector<Monomial> standard_monomials(const GroebnerBasis& gb) {
    const std::size_t n = gb.ring().size();
    if (gb.is_unit()) return {};
    auto lms = gb.leading_monomials();
    std::vector<int> bound(n, -1);
    for (const auto& m : lms) {
        std::size_t support = 0, var = 0;
        for (std::size_t i = 0; i < n; ++i)
            if (m[i] > 0) {
                ++support;
                var = i;
            }
        if (support == 1 && (bound[var] < 0 || m[var] < bound[var])) bound[var] = m[var];
    }
    for (std::size_t i = 0; i < n; ++i)
        if (bound[i] < 0)
            throw PreconditionError("ideal is not zero-dimensional (no pure power of " + gb.ring().name(i) +
                                    " among leading monomials)");
    std::vector<Monomial> out;
    Monomial m(n);
    while (true) {
        bool standard = true;
        for (const auto& l : lms)
            if (l.divides(m)) {
                standard = false;
                break;
            }
        if (standard) out.push_back(m);
        std::size_t i = 0;
        while (i < n) {
            if (++m[i] < bound[i]) break;
            m[i] = 0;
            ++i;
        }
        if (i == n) break;
    }
    std::sort(out.begin(), out.end(), [&](const Monomial& a, const Monomial& b) { return gb.order().greater(b, a); });
    return out;
}

// Number of solutions counted with multiplicity.
inline std::size_t zero_dim_degree(const Ideal& ideal, const GroebnerOptions& opt = {}) {
    return standard_monomials(groebner_basis(ideal, MonomialOrder::grlex(), opt)).size();
}

// ----------------------------------------------------------------------------
// Homogeneity space
// ----------------------------------------------------------------------------

struct HomogeneitySpace {
    RationalMatrix basis;
    std::size_t dimension() const { return basis.size(); }

    bool contains(const RationalVector& v) const {
        RationalMatrix m = basis;
        std::size_t r0 = rank(m);
        m.push_back(v);
        return rank(m) == r0;
    }
};

// Weight vectors u for which every element of the reduced basis is
// u-homogeneous.
inline HomogeneitySpace homogeneity_space(const Ideal& ideal, const GroebnerOptions& opt = {}) {
    const std::size_t n = ideal.nvars();
    RationalMatrix rows;
    if (!ideal.is_zero()) {
        auto gb = groebner_basis(ideal, MonomialOrder::grlex(), opt);
        for (const auto& g : gb.elements()) {
            const Monomial& first = g.terms().begin()->first;
            for (const auto& [m, c] : g.terms()) {
                if (m == first) continue;
                RationalVector row(n);
                for (std::size_t i = 0; i < n; ++i) row[i] = m[i] - first[i];
                rows.push_back(std::move(row));
            }
        }
    }
    return HomogeneitySpace{nullspace(rows, n)};
}

} // namespace tropcrit

#endif
