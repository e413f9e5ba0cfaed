#pragma once

#include <boost/container/small_vector.hpp>

#include <string>
#include <vector>

#include "jrfl/finite_field.hpp"

namespace jrfl {

inline constexpr int kInfinitePrec = 1 << 29;

inline int add_exponents(int a, int b) {
    if (a >= kInfinitePrec || b >= kInfinitePrec) return kInfinitePrec;
    return a + b;
}

// Coefficient ring context: residue field plus the relative precision used
// when a division produces an infinite expansion.
struct SeriesRing {
    std::shared_ptr<const FiniteField> field;
    int work_prec = 24;
};

// Laurent series over a finite field with absolute precision tracking.
// Coefficients of pi^k for k < prec are known; the value is exact when
// prec == kInfinitePrec.  Stored coefficients start at the valuation; every
// known coefficient past the stored block is zero.
class Series {
public:
    using Coeffs = boost::container::small_vector<Elem, 12>;

    Series() = default;
    explicit Series(const SeriesRing* ring) : ring_(ring), val_(kInfinitePrec), prec_(kInfinitePrec) {}

    static Series zero(const SeriesRing* ring) { return Series(ring); }
    static Series zero_to(const SeriesRing* ring, int prec);
    static Series constant(const SeriesRing* ring, Elem c);
    static Series integer(const SeriesRing* ring, long long v);
    static Series one(const SeriesRing* ring) { return constant(ring, 1); }
    static Series monomial(const SeriesRing* ring, Elem c, int exponent);
    static Series uniformizer_power(const SeriesRing* ring, int exponent) {
        return monomial(ring, 1, exponent);
    }
    // Coefficients c[k] of pi^{lowest + k}, known below prec.
    static Series from_coeffs(const SeriesRing* ring, int lowest, const std::vector<Elem>& c,
                              int prec = kInfinitePrec);

    const SeriesRing* ring() const { return ring_; }
    const FiniteField& field() const { return *ring_->field; }
    int prec() const { return prec_; }
    bool is_exact() const { return prec_ >= kInfinitePrec; }
    // True when no nonzero coefficient is known (zero to precision).
    bool known_zero() const { return c_.empty(); }
    bool is_exact_zero() const { return c_.empty() && prec_ >= kInfinitePrec; }
    // Valuation; throws PrecisionExhausted if zero to finite precision,
    // returns kInfinitePrec for the exact zero.
    int valuation() const;
    // A lower bound for the valuation that never throws.
    int valuation_bound() const { return val_; }
    Elem leading_coeff() const;
    Elem coeff(int exponent) const;
    const Coeffs& stored() const { return c_; }
    // Exponent just past the last stored nonzero coefficient.
    int stored_end() const { return val_ + static_cast<int>(c_.size()); }

    // Integrality (valuation >= 0); throws if undecidable.
    bool is_integral() const;
    bool is_unit() const { return valuation() == 0; }

    Series operator-() const;
    Series& operator+=(const Series& o) { return *this = *this + o; }
    Series& operator-=(const Series& o) { return *this = *this - o; }
    Series& operator*=(const Series& o) { return *this = *this * o; }
    friend Series operator+(const Series& a, const Series& b);
    friend Series operator-(const Series& a, const Series& b);
    friend Series operator*(const Series& a, const Series& b);
    friend Series operator/(const Series& a, const Series& b) { return a * b.inverse(); }

    // Multiplicative inverse; infinite expansions are cut at the ring's
    // working relative precision.
    Series inverse() const;
    Series inverse(int rel_prec) const;
    Series scaled(Elem c) const;
    Series shifted(int k) const;  // multiply by pi^k
    Series frobenius() const;
    Series truncated(int new_prec) const;
    // Terms with exponent < bound, as an exact Laurent polynomial.
    Series head(int bound) const;
    // Terms with exponent >= bound (precision retained).
    Series tail(int bound) const;
    // Exact value obtained by forgetting the precision bound.
    Series as_exact() const;

    // Structural identity: same valuation, precision, and coefficients.
    bool identical(const Series& o) const;
    // Agreement to the common precision: a - b is zero to precision.
    bool agrees(const Series& o) const { return (*this - o).known_zero(); }
    bool coefficients_in_base() const;

    // Wire format val:prec:[c0,c1,...]; extension-field coefficients are
    // written as [x,y] pairs.
    std::string serialize() const;
    static Series parse(const SeriesRing* ring, const std::string& text);

private:
    void normalize();

    const SeriesRing* ring_ = nullptr;
    int val_ = kInfinitePrec;
    int prec_ = kInfinitePrec;
    Coeffs c_;
};

}  // namespace jrfl
