#ifndef TROPCRIT_ORDER_HPP
#define TROPCRIT_ORDER_HPP

#include <compare>
#include <vector>

#include "errors.hpp"
#include "polynomial.hpp"

namespace tropcrit {

enum class Tiebreak { grlex };

// A weight vector in the tropical min convention: the terms of smallest
// w-weight are the initial ones. Ties are broken by `tiebreak`.
struct WeightOrder {
    IntVector weight;
    Tiebreak tiebreak = Tiebreak::grlex;
};

// Compares a and b as candidates for the leading (initial) term:
// `greater` means a is more initial than b. Smaller w-weight is more
// initial; equal weights fall back to degree-then-lex, larger wins.
inline std::strong_ordering weight_compare(const Monomial& a, const Monomial& b, const WeightOrder& order) {
    if (a.size() != b.size() || a.size() != order.weight.size())
        throw ValidationError("weight_compare: dimension mismatch");
    long long wa = weight(order.weight, a), wb = weight(order.weight, b);
    if (wa != wb) return wb <=> wa;
    long da = a.degree(), db = b.degree();
    if (da != db) return da <=> db;
    return a.e <=> b.e;
}

// Global monomial order for the Groebner engine: weight rows compared in
// sequence (larger leads), then degree, then lex with x_0 largest. Rows must
// be nonnegative for the order to be a well-order.
class MonomialOrder {
public:
    MonomialOrder() = default;
    explicit MonomialOrder(std::vector<IntVector> rows) : rows_(std::move(rows)) {
        for (const auto& r : rows_)
            for (long long x : r)
                if (x < 0) throw PreconditionError("monomial order weight rows must be nonnegative");
    }

    static MonomialOrder grlex() { return MonomialOrder(); }

    // Eliminates every variable i with eliminate[i] set.
    static MonomialOrder elimination(const std::vector<bool>& eliminate) {
        IntVector row(eliminate.size());
        for (std::size_t i = 0; i < eliminate.size(); ++i) row[i] = eliminate[i] ? 1 : 0;
        return MonomialOrder({row});
    }

    static MonomialOrder lex(std::size_t n) {
        std::vector<IntVector> rows;
        for (std::size_t i = 0; i < n; ++i) {
            IntVector r(n, 0);
            r[i] = 1;
            rows.push_back(r);
        }
        return MonomialOrder(rows);
    }

    // The global order induced by a min-convention weight order; requires
    // w <= 0 so that the negated weight is a valid nonnegative row.
    static MonomialOrder from_weight_order(const WeightOrder& wo) {
        IntVector row(wo.weight.size());
        bool any = false;
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (wo.weight[i] > 0)
                throw PreconditionError("weight order is not global (positive entry); use initial_ideal");
            row[i] = -wo.weight[i];
            any = any || row[i] != 0;
        }
        return any ? MonomialOrder({row}) : MonomialOrder();
    }

    const std::vector<IntVector>& rows() const { return rows_; }

    // >0 if a > b, <0 if a < b, 0 if equal.
    int compare(const Monomial& a, const Monomial& b) const {
        for (const auto& r : rows_) {
            long long wa = weight(r, a), wb = weight(r, b);
            if (wa != wb) return wa > wb ? 1 : -1;
        }
        long da = a.degree(), db = b.degree();
        if (da != db) return da > db ? 1 : -1;
        for (std::size_t i = 0; i < a.size(); ++i)
            if (a[i] != b[i]) return a[i] > b[i] ? 1 : -1;
        return 0;
    }

    bool greater(const Monomial& a, const Monomial& b) const { return compare(a, b) > 0; }

    friend bool operator==(const MonomialOrder&, const MonomialOrder&) = default;

private:
    std::vector<IntVector> rows_;
};

} // namespace tropcrit

#endif
