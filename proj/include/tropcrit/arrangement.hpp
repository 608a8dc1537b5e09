#ifndef TROPCRIT_ARRANGEMENT_HPP
#define TROPCRIT_ARRANGEMENT_HPP

// Hyperplane arrangements: intersection lattice, Moebius function, matroid
// connectivity of restrictions and contractions, flacets and their rays.

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "errors.hpp"
#include "groebner.hpp"
#include "linalg.hpp"
#include "polynomial.hpp"
#include "rational.hpp"

namespace tropcrit {

struct Arrangement {
    std::vector<std::string> variables;
    // One row per hyperplane: coefficients of the variables, then the constant.
    RationalMatrix rows;
    bool projective_closure = false;

    std::size_t dim() const { return variables.size(); }
    std::size_t size() const { return rows.size(); }

    void validate() const {
        const std::size_t n = dim();
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != n + 1)
                throw ValidationError("arrangement row " + std::to_string(i) + " has " + std::to_string(rows[i].size()) +
                                      " entries, expected " + std::to_string(n + 1));
            bool zero = std::all_of(rows[i].begin(), rows[i].end() - 1, [](const Rational& x) { return x == 0; });
            if (zero) throw ValidationError("arrangement row " + std::to_string(i) + " is not a hyperplane");
        }
        for (std::size_t i = 0; i < rows.size(); ++i)
            for (std::size_t j = i + 1; j < rows.size(); ++j)
                if (rank(RationalMatrix{rows[i], rows[j]}) < 2)
                    throw ValidationError("arrangement rows " + std::to_string(i) + " and " + std::to_string(j) +
                                          " define the same hyperplane");
    }

    bool is_central() const {
        return std::all_of(rows.begin(), rows.end(), [](const RationalVector& r) { return r.back() == 0; });
    }

    Ring ring() const { return Ring(variables); }

    std::vector<Polynomial> functionals() const {
        const std::size_t n = dim();
        std::vector<Polynomial> out;
        for (const auto& r : rows) {
            Polynomial p = Polynomial::constant(n, r[n]);
            for (std::size_t j = 0; j < n; ++j) p += Polynomial::variable(n, j) * r[j];
            out.push_back(std::move(p));
        }
        return out;
    }

    // The central arrangement used for matroid data: the input itself when it
    // is central and no closure is requested; otherwise the cone over it in
    // one more variable, with the hyperplane at infinity appended last.
    Arrangement central() const {
        if (!projective_closure) {
            if (!is_central())
                throw PreconditionError("arrangement is not central; set projective_closure to work with its cone");
            return *this;
        }
        Arrangement c;
        c.variables = variables;
        c.variables.push_back("_x0");
        const std::size_t n = dim();
        for (const auto& r : rows) {
            RationalVector row(r.begin(), r.end());
            row.push_back(0);
            c.rows.push_back(std::move(row));
        }
        RationalVector inf(n + 2, Rational(0));
        inf[n] = 1;
        c.rows.push_back(std::move(inf));
        return c;
    }
};

struct Flat {
    std::vector<std::size_t> members;  // sorted hyperplane indices
    std::size_t rank = 0;

    bool contains(std::size_t h) const { return std::binary_search(members.begin(), members.end(), h); }
    bool operator<=(const Flat& o) const {
        return std::includes(o.members.begin(), o.members.end(), members.begin(), members.end());
    }
    friend bool operator==(const Flat&, const Flat&) = default;
};

namespace detail {

inline RationalMatrix linear_rows(const Arrangement& a, const std::vector<std::size_t>& idx) {
    RationalMatrix m;
    for (auto i : idx) m.emplace_back(a.rows[i].begin(), a.rows[i].end() - 1);
    return m;
}

inline RationalMatrix affine_rows(const Arrangement& a, const std::vector<std::size_t>& idx) {
    RationalMatrix m;
    for (auto i : idx) m.push_back(a.rows[i]);
    return m;
}

// Rank of a subset of the (central) arrangement's normals; bitmask input.
inline std::size_t subset_rank(const Arrangement& a, unsigned long mask) {
    RationalMatrix m;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (mask >> i & 1ul) m.push_back(a.rows[i]);
    return rank(m);
}

inline unsigned long mask_of(const std::vector<std::size_t>& members) {
    unsigned long m = 0;
    for (auto i : members) m |= 1ul << i;
    return m;
}

// Connected iff no split of `ground` into two nonempty parts A, B with
// r(A) + r(B) = r(ground), where r is the given rank function.
template<class RankFn>
bool connected(unsigned long ground, RankFn r) {
    if (ground == 0) return false;
    const std::size_t total = r(ground);
    const unsigned long low = ground & (~ground + 1);  // fix one element on side A
    for (unsigned long a = (ground - 1) & ground; a; a = (a - 1) & ground) {
        if (!(a & low)) continue;
        unsigned long b = ground & ~a;
        if (b == 0) continue;
        if (r(a) + r(b) == total) return false;
    }
    return true;
}

} // namespace detail

// Nonempty intersections of subfamilies, each listed by the set of all
// hyperplanes containing it, sorted by rank then members. The ambient space
// (no members, rank 0) comes first.
inline std::vector<Flat> intersection_lattice(const Arrangement& a) {
    a.validate();
    if (a.size() > 62) throw ResourceError("arrangement too large for lattice enumeration");
    std::vector<Flat> flats{Flat{{}, 0}};
    std::set<std::vector<std::size_t>> seen{{}};
    for (std::size_t k = 0; k < flats.size(); ++k) {
        for (std::size_t h = 0; h < a.size(); ++h) {
            if (flats[k].contains(h)) continue;
            std::vector<std::size_t> s = flats[k].members;
            s.push_back(h);
            std::sort(s.begin(), s.end());
            RationalMatrix lin = detail::linear_rows(a, s), aff = detail::affine_rows(a, s);
            std::size_t r = rank(lin);
            if (rank(aff) != r) continue;  // empty intersection
            std::vector<std::size_t> closure;
            for (std::size_t g = 0; g < a.size(); ++g) {
                RationalMatrix test = aff;
                test.push_back(a.rows[g]);
                if (rank(test) == r) closure.push_back(g);
            }
            if (seen.insert(closure).second) flats.push_back(Flat{closure, r});
        }
    }
    std::sort(flats.begin(), flats.end(), [](const Flat& x, const Flat& y) {
        return x.rank != y.rank ? x.rank < y.rank : x.members < y.members;
    });
    return flats;
}

// mu(bottom, F) for every flat, in lattice order.
inline std::vector<long long> moebius(const std::vector<Flat>& flats) {
    std::vector<long long> mu(flats.size(), 0);
    for (std::size_t g = 0; g < flats.size(); ++g) {
        if (flats[g].members.empty()) {
            mu[g] = 1;
            continue;
        }
        long long s = 0;
        for (std::size_t f = 0; f < flats.size(); ++f)
            if (f != g && flats[f] <= flats[g]) s += mu[f];
        mu[g] = -s;
    }
    return mu;
}

// Coefficients of the characteristic polynomial sum_F mu(F) q^{dim F},
// indexed by the power of q.
inline std::vector<long long> characteristic_polynomial(const Arrangement& a) {
    auto flats = intersection_lattice(a);
    auto mu = moebius(flats);
    std::vector<long long> c(a.dim() + 1, 0);
    for (std::size_t f = 0; f < flats.size(); ++f) c[a.dim() - flats[f].rank] += mu[f];
    return c;
}

// Euler characteristic of the complement: the characteristic polynomial at 1.
inline long long chi_complement(const Arrangement& a) {
    auto c = characteristic_polynomial(a);
    long long s = 0;
    for (auto x : c) s += x;
    return s;
}

// Matroid connectivity of the restriction M|F and the contraction M/F of the
// central arrangement.
inline bool restriction_connected(const Arrangement& central, const Flat& f) {
    return detail::connected(detail::mask_of(f.members),
                             [&](unsigned long m) { return detail::subset_rank(central, m); });
}

inline bool contraction_connected(const Arrangement& central, const Flat& f) {
    const unsigned long all = central.size() == 64 ? ~0ul : (1ul << central.size()) - 1;
    const unsigned long fm = detail::mask_of(f.members);
    const std::size_t rf = f.rank;
    return detail::connected(all & ~fm, [&](unsigned long m) { return detail::subset_rank(central, m | fm) - rf; });
}

inline bool matroid_connected(const Arrangement& central) {
    const unsigned long all = (1ul << central.size()) - 1;
    return detail::connected(all, [&](unsigned long m) { return detail::subset_rank(central, m); });
}

// Flats with connected restriction, other than the ambient space.
inline std::vector<Flat> dense_edges(const Arrangement& a) {
    std::vector<Flat> out;
    for (const auto& f : intersection_lattice(a))
        if (!f.members.empty() && restriction_connected(a, f)) out.push_back(f);
    return out;
}

// Flats F of the central arrangement (excluding the bottom and the top) with
// M|F and M/F both connected.
inline std::vector<Flat> flacets(const Arrangement& a) {
    Arrangement c = a.central();
    std::vector<Flat> out;
    for (const auto& f : intersection_lattice(c)) {
        if (f.members.empty() || f.members.size() == c.size()) continue;
        if (restriction_connected(c, f) && contraction_connected(c, f)) out.push_back(f);
    }
    return out;
}

// Incidence vector of F over the hyperplanes of the central arrangement,
// shifted by a multiple of (1,...,1) so the last entry vanishes, with the last
// entry dropped.
inline IntVector flacet_ray(const Arrangement& central, const Flat& f) {
    const std::size_t m = central.size();
    IntVector inc(m, 0);
    for (auto i : f.members) inc[i] = 1;
    IntVector v;
    for (std::size_t i = 0; i + 1 < m; ++i) v.push_back(inc[i] - inc[m - 1]);
    return primitive(v);
}

inline std::vector<IntVector> flacet_rays(const Arrangement& a) {
    Arrangement c = a.central();
    std::vector<IntVector> out;
    for (const auto& f : flacets(a)) {
        IntVector v = flacet_ray(c, f);
        if (!is_zero(v) && std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
    }
    return out;
}

// Ideal of the image of the complement under (f_1, ..., f_p) in torus
// coordinates t_1..t_p: the linear relations among the functionals.
inline Ideal arrangement_ideal(const Arrangement& a, const std::vector<std::string>& tnames) {
    a.validate();
    const std::size_t n = a.dim(), p = a.size();
    if (tnames.size() != p) throw ValidationError("arrangement_ideal: need one torus variable per hyperplane");
    // Relations: vectors c with sum_i c_i (a_i x + b_i) = c_0 identically, i.e.
    // c in the left kernel of the coefficient matrix; the constant is sum c_i b_i.
    RationalMatrix coeffT(n, RationalVector(p));
    for (std::size_t i = 0; i < p; ++i)
        for (std::size_t j = 0; j < n; ++j) coeffT[j][i] = a.rows[i][j];
    auto kernel = nullspace(coeffT, p);
    std::vector<Polynomial> gens;
    for (const auto& c : kernel) {
        Polynomial g(p);
        Rational constant = 0;
        for (std::size_t i = 0; i < p; ++i) {
            g += Polynomial::variable(p, i) * c[i];
            constant += c[i] * a.rows[i][n];
        }
        g -= Polynomial::constant(p, constant);
        gens.push_back(g.primitive_part());
    }
    return Ideal(Ring(tnames), std::move(gens));
}

} // namespace tropcrit

#endif
