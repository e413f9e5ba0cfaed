#pragma once

#include <memory>
#include <string>

#include "jrfl/series.hpp"

namespace jrfl {

enum class PlaceKind { split, inert };

std::string to_string(PlaceKind kind);
PlaceKind place_kind_from_string(const std::string& text);

// Local place: residue field F_q (q = p^d), rank n, split or inert double
// cover, and the working relative precision of series arithmetic.
class PlaceData {
public:
    PlaceData(int p, int d, int n, PlaceKind kind, int prec);

    int p() const { return p_; }
    int d() const { return d_; }
    int n() const { return n_; }
    int q() const { return base_->field->size(); }
    PlaceKind kind() const { return kind_; }
    bool inert() const { return kind_ == PlaceKind::inert; }
    int prec() const { return prec_; }

    // Series over F_q (the field F_v).
    const SeriesRing* base_ring() const { return base_.get(); }
    // Series over F_{q^2} at inert places; over F_q (one component of
    // F_v x F_v) at split places.
    const SeriesRing* cover_ring() const { return cover_.get(); }
    const FiniteField& residue_field() const { return *base_->field; }
    const FiniteField& cover_residue_field() const { return *cover_->field; }

    std::string describe() const;

private:
    int p_, d_, n_;
    PlaceKind kind_;
    int prec_;
    std::shared_ptr<SeriesRing> base_, cover_;
};

// Element of F'_v = F_v x F_v at a split place; sigma swaps the factors.
struct SplitPair {
    Series left, right;

    friend SplitPair operator+(const SplitPair& a, const SplitPair& b) {
        return {a.left + b.left, a.right + b.right};
    }
    friend SplitPair operator-(const SplitPair& a, const SplitPair& b) {
        return {a.left - b.left, a.right - b.right};
    }
    friend SplitPair operator*(const SplitPair& a, const SplitPair& b) {
        return {a.left * b.left, a.right * b.right};
    }
    friend SplitPair operator/(const SplitPair& a, const SplitPair& b) {
        return {a.left / b.left, a.right / b.right};
    }
    SplitPair frobenius() const { return {right, left}; }
    bool agrees(const SplitPair& o) const { return left.agrees(o.left) && right.agrees(o.right); }
    std::string serialize() const { return "(" + left.serialize() + "|" + right.serialize() + ")"; }
};

// Quadratic character attached to the cover: (-1)^val at inert places,
// trivial at split places.
int eta(const Series& a, PlaceKind kind = PlaceKind::inert);
int eta_of_valuation(long long v, PlaceKind kind = PlaceKind::inert);

// Square root in F_{q^2} of an element of F_q^x: the least encoded element s
// with s^2 = c.  `ext` must be a quadratic extension; c is given in the
// base-field encoding.
Elem sqrt_in_quadratic(const FiniteField& ext, Elem c);

}  // namespace jrfl
