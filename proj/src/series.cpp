#include "jrfl/series.hpp"

#include <algorithm>
#include <sstream>

#include "jrfl/errors.hpp"

namespace jrfl {

Series Series::zero_to(const SeriesRing* ring, int prec) {
    Series s(ring);
    s.prec_ = prec;
    s.val_ = prec;
    return s;
}

Series Series::constant(const SeriesRing* ring, Elem c) { return monomial(ring, c, 0); }

Series Series::integer(const SeriesRing* ring, long long v) {
    return constant(ring, ring->field->from_integer(v));
}

Series Series::monomial(const SeriesRing* ring, Elem c, int exponent) {
    Series s(ring);
    if (c != 0) {
        s.val_ = exponent;
        s.c_.push_back(c);
    }
    return s;
}

Series Series::from_coeffs(const SeriesRing* ring, int lowest, const std::vector<Elem>& c, int prec) {
    Series s(ring);
    s.prec_ = prec;
    s.val_ = lowest;
    s.c_.assign(c.begin(), c.end());
    s.normalize();
    return s;
}

void Series::normalize() {
    if (prec_ < kInfinitePrec) {
        long long keep = static_cast<long long>(prec_) - val_;
        if (keep < static_cast<long long>(c_.size())) c_.resize(keep < 0 ? 0 : static_cast<std::size_t>(keep));
    }
    std::size_t lead = 0;
    while (lead < c_.size() && c_[lead] == 0) ++lead;
    if (lead == c_.size()) {
        c_.clear();
        val_ = prec_;
        return;
    }
    if (lead > 0) {
        c_.erase(c_.begin(), c_.begin() + static_cast<long>(lead));
        val_ += static_cast<int>(lead);
    }
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

int Series::valuation() const {
    if (!c_.empty()) return val_;
    if (prec_ >= kInfinitePrec) return kInfinitePrec;
    throw PrecisionExhausted("valuation undetermined: series is zero to precision " + std::to_string(prec_));
}

Elem Series::leading_coeff() const {
    if (c_.empty()) throw PrecisionExhausted("leading coefficient of a zero series");
    return c_.front();
}

Elem Series::coeff(int exponent) const {
    if (exponent >= prec_) throw PrecisionExhausted("coefficient beyond precision requested");
    if (c_.empty() || exponent < val_ || exponent >= stored_end()) return 0;
    return c_[exponent - val_];
}

bool Series::is_integral() const {
    if (!c_.empty()) return val_ >= 0;
    if (prec_ >= 0) return true;
    throw PrecisionExhausted("integrality undetermined: zero to negative precision");
}

Series Series::operator-() const {
    Series s = *this;
    for (auto& c : s.c_) c = field().neg(c);
    return s;
}

Series operator+(const Series& a, const Series& b) {
    if (a.is_exact_zero()) return b;
    if (b.is_exact_zero()) return a;
    const SeriesRing* ring = a.ring_;
    const int p = std::min(a.prec_, b.prec_);
    if (a.c_.empty() && b.c_.empty()) return Series::zero_to(ring, p);
    const int lo = std::min(a.val_, b.val_);
    if (lo >= p) return Series::zero_to(ring, p);
    int end = std::max(a.c_.empty() ? lo : a.stored_end(), b.c_.empty() ? lo : b.stored_end());
    end = std::min(end, p);
    Series r(ring);
    r.prec_ = p;
    r.val_ = lo;
    r.c_.assign(static_cast<std::size_t>(std::max(end - lo, 0)), 0);
    const FiniteField& f = *ring->field;
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
        int k = a.val_ + static_cast<int>(i);
        if (k >= end) break;
        r.c_[k - lo] = a.c_[i];
    }
    for (std::size_t i = 0; i < b.c_.size(); ++i) {
        int k = b.val_ + static_cast<int>(i);
        if (k >= end) break;
        r.c_[k - lo] = f.add(r.c_[k - lo], b.c_[i]);
    }
    r.normalize();
    return r;
}

Series operator-(const Series& a, const Series& b) { return a + (-b); }

Series operator*(const Series& a, const Series& b) {
    const SeriesRing* ring = a.ring_ ? a.ring_ : b.ring_;
    if (a.is_exact_zero() || b.is_exact_zero()) return Series(ring);
    const int p = std::min(add_exponents(a.prec_, b.val_), add_exponents(b.prec_, a.val_));
    if (a.c_.empty() || b.c_.empty()) return Series::zero_to(ring, p);
    const int lowest = a.val_ + b.val_;
    long long len = static_cast<long long>(a.c_.size() + b.c_.size() - 1);
    if (p < kInfinitePrec) len = std::min<long long>(len, static_cast<long long>(p) - lowest);
    if (len <= 0) return Series::zero_to(ring, p);
    Series r(ring);
    r.prec_ = p;
    r.val_ = lowest;
    r.c_.assign(static_cast<std::size_t>(len), 0);
    const FiniteField& f = *ring->field;
    const std::size_t na = a.c_.size(), nb = b.c_.size();
    for (std::size_t i = 0; i < na && static_cast<long long>(i) < len; ++i) {
        const Elem ai = a.c_[i];
        if (ai == 0) continue;
        const std::size_t jmax = std::min<std::size_t>(nb, static_cast<std::size_t>(len - static_cast<long long>(i)));
        for (std::size_t j = 0; j < jmax; ++j) r.c_[i + j] = f.add(r.c_[i + j], f.mul(ai, b.c_[j]));
    }
    r.normalize();
    return r;
}

Series Series::inverse() const { return inverse(ring_->work_prec); }

Series Series::inverse(int rel_prec) const {
    if (is_exact_zero()) throw DivisionByZero("division by exact zero");
    if (c_.empty()) throw PrecisionExhausted("division by a series that is zero to precision");
    const FiniteField& f = field();
    const Elem c0inv = f.inv(c_[0]);
    if (is_exact() && c_.size() == 1) return monomial(ring_, c0inv, -val_);
    int rel = prec_ >= kInfinitePrec ? rel_prec : std::min(rel_prec, prec_ - val_);
    rel = std::max(rel, 1);
    std::vector<Elem> w(static_cast<std::size_t>(rel), 0);
    w[0] = c0inv;
    for (int k = 1; k < rel; ++k) {
        Elem acc = 0;
        const int jmax = std::min<int>(k, static_cast<int>(c_.size()) - 1);
        for (int j = 1; j <= jmax; ++j) acc = f.add(acc, f.mul(c_[j], w[k - j]));
        w[k] = f.neg(f.mul(c0inv, acc));
    }
    return from_coeffs(ring_, -val_, w, -val_ + rel);
}

Series Series::scaled(Elem c) const {
    if (c == 0) return Series(ring_);
    Series s = *this;
    for (auto& x : s.c_) x = field().mul(x, c);
    return s;
}

Series Series::shifted(int k) const {
    Series s = *this;
    if (s.val_ < kInfinitePrec) s.val_ += k;
    if (s.prec_ < kInfinitePrec) s.prec_ += k;
    return s;
}

Series Series::frobenius() const {
    Series s = *this;
    for (auto& c : s.c_) c = field().frobenius(c);
    return s;
}

Series Series::truncated(int new_prec) const {
    if (new_prec >= prec_) return *this;
    Series s = *this;
    s.prec_ = new_prec;
    s.normalize();
    return s;
}

Series Series::head(int bound) const {
    if (bound > prec_) throw PrecisionExhausted("head beyond known precision");
    Series s = *this;
    s.prec_ = kInfinitePrec;
    if (!s.c_.empty()) {
        long long keep = static_cast<long long>(bound) - val_;
        s.c_.resize(keep <= 0 ? 0 : std::min<std::size_t>(s.c_.size(), static_cast<std::size_t>(keep)));
    }
    s.normalize();
    if (s.c_.empty()) s.val_ = kInfinitePrec;
    return s;
}

Series Series::tail(int bound) const {
    Series s = *this;
    if (s.c_.empty()) return s;
    long long drop = static_cast<long long>(bound) - val_;
    if (drop > 0) {
        if (drop >= static_cast<long long>(s.c_.size())) {
            s.c_.clear();
        } else {
            s.c_.erase(s.c_.begin(), s.c_.begin() + drop);
            s.val_ = bound;
        }
        if (s.c_.empty()) {
            s.val_ = s.prec_;
            return s;
        }
        s.normalize();
    }
    return s;
}

Series Series::as_exact() const {
    Series s = *this;
    s.prec_ = kInfinitePrec;
    if (s.c_.empty()) s.val_ = kInfinitePrec;
    return s;
}

bool Series::identical(const Series& o) const {
    return val_ == o.val_ && prec_ == o.prec_ && c_.size() == o.c_.size() &&
           std::equal(c_.begin(), c_.end(), o.c_.begin());
}

bool Series::coefficients_in_base() const {
    for (Elem c : c_)
        if (!field().in_base(c)) return false;
    return true;
}

namespace {

std::string exponent_text(int e) { return e >= kInfinitePrec ? "inf" : std::to_string(e); }

int parse_exponent(const std::string& t) {
    if (t == "inf") return kInfinitePrec;
    return std::stoi(t);
}

}  // namespace

std::string Series::serialize() const {
    std::ostringstream out;
    out << exponent_text(val_) << ':' << exponent_text(prec_) << ":[";
    const FiniteField& f = field();
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (i) out << ',';
        if (f.base()) {
            auto [x, y] = f.components(c_[i]);
            out << '[' << x << ',' << y << ']';
        } else {
            out << c_[i];
        }
    }
    out << ']';
    return out.str();
}

Series Series::parse(const SeriesRing* ring, const std::string& text) {
    auto first = text.find(':');
    auto second = text.find(':', first + 1);
    if (first == std::string::npos || second == std::string::npos)
        throw std::invalid_argument("malformed scalar: " + text);
    int val = parse_exponent(text.substr(0, first));
    int prec = parse_exponent(text.substr(first + 1, second - first - 1));
    std::string body = text.substr(second + 1);
    std::vector<long long> numbers;
    std::string digits;
    for (char ch : body) {
        if (ch == '-' || (ch >= '0' && ch <= '9')) {
            digits.push_back(ch);
        } else if (!digits.empty()) {
            numbers.push_back(std::stoll(digits));
            digits.clear();
        }
    }
    const FiniteField& f = *ring->field;
    std::vector<Elem> coeffs;
    if (f.base()) {
        if (numbers.size() % 2) throw std::invalid_argument("odd component count in scalar: " + text);
        for (std::size_t i = 0; i < numbers.size(); i += 2)
            coeffs.push_back(f.compose(static_cast<Elem>(numbers[i]), static_cast<Elem>(numbers[i + 1])));
    } else {
        for (long long v : numbers) coeffs.push_back(static_cast<Elem>(v));
    }
    if (coeffs.empty()) return prec >= kInfinitePrec ? Series(ring) : zero_to(ring, prec);
    return from_coeffs(ring, val, coeffs, prec);
}

}  // namespace jrfl
