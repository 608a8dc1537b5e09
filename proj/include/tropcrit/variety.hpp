#ifndef TROPCRIT_VARIETY_HPP
#define TROPCRIT_VARIETY_HPP

// A very affine variety given by an ideal in torus coordinates, a
// parametrization, or a hyperplane arrangement complement.

#include <string>
#include <vector>

#include "arrangement.hpp"
#include "errors.hpp"
#include "groebner.hpp"
#include "polynomial.hpp"

namespace tropcrit {

enum class SpecKind { ideal, parametrization, arrangement };

inline std::string to_string(SpecKind k) {
    switch (k) {
    case SpecKind::ideal: return "ideal";
    case SpecKind::parametrization: return "parametrization";
    case SpecKind::arrangement: return "arrangement";
    }
    return "?";
}

struct VarietySpec {
    SpecKind kind = SpecKind::ideal;
    Ideal ideal;                       // kind == ideal
    Ring parameters;                   // kind == parametrization
    std::vector<Polynomial> functions; // kind == parametrization
    Arrangement arrangement;           // kind == arrangement

    static VarietySpec from_ideal(Ideal I) {
        VarietySpec s;
        s.kind = SpecKind::ideal;
        s.ideal = std::move(I);
        return s;
    }

    static VarietySpec from_parametrization(Ring params, std::vector<Polynomial> fs) {
        VarietySpec s;
        s.kind = SpecKind::parametrization;
        s.parameters = std::move(params);
        s.functions = std::move(fs);
        s.validate();
        return s;
    }

    static VarietySpec parse_parametrization(const std::vector<std::string>& params, const std::vector<std::string>& fs) {
        Ring r(params);
        std::vector<Polynomial> ps;
        for (const auto& f : fs) ps.push_back(poly_parse(f, r));
        return from_parametrization(r, std::move(ps));
    }

    static VarietySpec from_arrangement(Arrangement a) {
        a.validate();
        VarietySpec s;
        s.kind = SpecKind::arrangement;
        s.arrangement = std::move(a);
        return s;
    }

    void validate() const {
        if (kind == SpecKind::parametrization) {
            if (functions.empty()) throw ValidationError("parametrization has no functions");
            for (std::size_t i = 0; i < functions.size(); ++i) {
                if (functions[i].is_zero()) throw ValidationError("function " + std::to_string(i) + " is identically zero");
                if (functions[i].nvars() != parameters.size())
                    throw ValidationError("function " + std::to_string(i) + " is over the wrong ring");
            }
        }
        if (kind == SpecKind::arrangement) arrangement.validate();
    }

    // Number p of coordinates (the ambient torus dimension).
    std::size_t ambient_dim() const {
        switch (kind) {
        case SpecKind::ideal: return ideal.nvars();
        case SpecKind::parametrization: return functions.size();
        case SpecKind::arrangement: return arrangement.size();
        }
        return 0;
    }

    std::vector<std::string> torus_names() const {
        if (kind == SpecKind::ideal) return ideal.ring.names();
        std::vector<std::string> n;
        for (std::size_t i = 1; i <= ambient_dim(); ++i) n.push_back("t" + std::to_string(i));
        return n;
    }

    // Parametrization view (arrangements: the affine functionals).
    Ring parameter_ring() const { return kind == SpecKind::arrangement ? arrangement.ring() : parameters; }
    std::vector<Polynomial> parameter_functions() const {
        return kind == SpecKind::arrangement ? arrangement.functionals() : functions;
    }
};

// Generators with negative exponents multiplied by the monomial that clears
// them; this does not change the ideal on the torus.
inline Ideal laurent_normalized(const Ideal& I) {
    std::vector<Polynomial> gens;
    for (const auto& g : I.generators) gens.push_back(g.cleared());
    return Ideal(I.ring, std::move(gens));
}

// Ideal of the closure of the image of the parametrization in the torus
// coordinates, saturated by the product of the coordinates.
inline Ideal implicitize(const Ring& params, const std::vector<Polynomial>& fs, const std::vector<std::string>& tnames,
                         const GroebnerOptions& opt = {}) {
    const std::size_t n = params.size(), p = fs.size();
    // Variables: x_1..x_n, z, t_1..t_p. Laurent functions are written as
    // numerator / monomial with the monomial inverted by z-free clearing.
    std::vector<std::string> names = params.names();
    names.push_back("_z");
    names.insert(names.end(), tnames.begin(), tnames.end());
    const std::size_t total = n + 1 + p;
    std::vector<std::size_t> map(n);
    for (std::size_t i = 0; i < n; ++i) map[i] = i;
    std::vector<Polynomial> gens;
    Polynomial prod = Polynomial::constant(total, 1);
    for (std::size_t i = 0; i < p; ++i) {
        Polynomial f = fs[i];
        Monomial shift = f.is_laurent() ? f.clear_laurent() : Monomial(n);
        Polynomial fe = f.remap(map, total);
        Monomial sh(total);
        for (std::size_t j = 0; j < n; ++j) sh[j] = shift[j];
        // t_i * x^shift - f_cleared = 0
        gens.push_back(Polynomial::variable(total, n + 1 + i).multiply_monomial(sh) - fe);
        prod *= fe;
        for (std::size_t j = 0; j < n; ++j)
            if (shift[j] > 0) prod *= Polynomial::variable(total, j);
    }
    gens.push_back(Polynomial::variable(total, n) * prod - Polynomial::constant(total, 1));
    std::vector<bool> keep(total, false);
    for (std::size_t i = 0; i < p; ++i) keep[n + 1 + i] = true;
    return eliminate(Ideal(Ring(names), std::move(gens)), keep, opt);
}

inline Ideal torus_ideal(const VarietySpec& spec, const GroebnerOptions& opt = {}) {
    switch (spec.kind) {
    case SpecKind::ideal: return laurent_normalized(spec.ideal);
    case SpecKind::parametrization: return implicitize(spec.parameters, spec.functions, spec.torus_names(), opt);
    case SpecKind::arrangement: return arrangement_ideal(spec.arrangement, spec.torus_names());
    }
    return {};
}

} // namespace tropcrit

#endif
