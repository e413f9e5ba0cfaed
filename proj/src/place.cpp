#include "jrfl/place.hpp"

#include <stdexcept>

#include "jrfl/errors.hpp"

namespace jrfl {

std::string to_string(PlaceKind kind) { return kind == PlaceKind::split ? "split" : "inert"; }

PlaceKind place_kind_from_string(const std::string& text) {
    if (text == "split") return PlaceKind::split;
    if (text == "inert") return PlaceKind::inert;
    throw ConfigError("place must be 'split' or 'inert', got '" + text + "'");
}

PlaceData::PlaceData(int p, int d, int n, PlaceKind kind, int prec)
    : p_(p), d_(d), n_(n), kind_(kind), prec_(prec) {
    if (n < 1) throw std::invalid_argument("rank n must be >= 1");
    if (p <= 2 * n)
        throw std::invalid_argument("characteristic " + std::to_string(p) + " must exceed 2n = " +
                                    std::to_string(2 * n));
    if (prec < 1) throw std::invalid_argument("working precision must be >= 1");
    auto field = FiniteField::prime_power(p, d);
    base_ = std::make_shared<SeriesRing>(SeriesRing{field, prec});
    if (kind == PlaceKind::inert)
        cover_ = std::make_shared<SeriesRing>(SeriesRing{FiniteField::quadratic_extension(field), prec});
    else
        cover_ = base_;
}

std::string PlaceData::describe() const {
    return "q=" + std::to_string(q()) + " n=" + std::to_string(n_) + " place=" + to_string(kind_) +
           " prec=" + std::to_string(prec_);
}

int eta_of_valuation(long long v, PlaceKind kind) {
    if (kind == PlaceKind::split) return 1;
    return (v % 2 == 0) ? 1 : -1;
}

int eta(const Series& a, PlaceKind kind) {
    if (kind == PlaceKind::split) return 1;
    if (a.is_exact_zero()) throw DivisionByZero("eta of zero");
    return eta_of_valuation(a.valuation(), kind);
}

Elem sqrt_in_quadratic(const FiniteField& ext, Elem c) {
    if (!ext.base()) throw std::invalid_argument("sqrt_in_quadratic needs a quadratic extension");
    if (c == 0 || !ext.in_base(c)) throw std::invalid_argument("argument must lie in F_q^x");
    for (int s = 0; s < ext.size(); ++s)
        if (ext.mul(static_cast<Elem>(s), static_cast<Elem>(s)) == c) return static_cast<Elem>(s);
    throw std::logic_error("no square root found in quadratic extension");
}

}  // namespace jrfl
