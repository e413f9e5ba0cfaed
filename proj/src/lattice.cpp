#include "jrfl/lattice.hpp"

#include <algorithm>
#include <sstream>

#include "jrfl/errors.hpp"

namespace jrfl {

namespace {

std::string make_key(const Matrix& b) {
    std::ostringstream s;
    for (int i = 0; i < b.rows(); ++i)
        for (int j = i; j < b.cols(); ++j) {
            const Series& x = b(i, j);
            s << (x.known_zero() ? 0 : x.valuation_bound()) << '/';
            for (Elem c : x.stored()) s << c << ',';
            s << ';';
        }
    return s.str();
}

// Reduce the first `rows` entries of column vector y modulo the HNF columns
// 0..rows-1 of b (diagonal exponents d).  Entries become heads below d_i.
void reduce_against(Matrix& y, int col, const Matrix& b, const std::vector<int>& d, int rows) {
    for (int i = rows - 1; i >= 0; --i) {
        Series t = y(i, col);
        if (t.known_zero()) {
            if (t.prec() < d[i]) throw PrecisionExhausted("HNF reduction needs more precision");
            y(i, col) = Series(b.ring());
            continue;
        }
        Series high = t.tail(d[i]);
        if (!high.known_zero()) {
            Series mult = high.shifted(-d[i]);
            for (int r = 0; r < i; ++r)
                if (!b(r, i).is_exact_zero()) y(r, col) -= mult * b(r, i);
        }
        if (t.prec() < d[i]) throw PrecisionExhausted("HNF reduction needs more precision");
        y(i, col) = t.head(d[i]);
    }
}

}  // namespace

int LatticeRep::volume() const {
    int v = 0;
    for (int d : diag_) v += d;
    return v;
}

LatticeRep LatticeRep::standard(int n, const SeriesRing* ring) { return from_hnf(Matrix::identity(n, ring)); }

LatticeRep LatticeRep::from_hnf(Matrix basis) {
    LatticeRep l;
    const int n = basis.rows();
    l.diag_.resize(n);
    for (int i = 0; i < n; ++i) l.diag_[i] = basis(i, i).valuation();
    l.key_ = make_key(basis);
    l.basis_ = std::move(basis);
    return l;
}

bool LatticeRep::contains(const Matrix& v) const {
    Matrix y = v;
    const int n = rank();
    for (int r = n - 1; r >= 0; --r) {
        const Series& t = y(r, 0);
        if (t.is_exact_zero()) continue;
        Series x = t.shifted(-diag_[r]);
        if (!x.is_integral()) return false;
        if (x.known_zero()) continue;
        for (int i = 0; i < r; ++i)
            if (!basis_(i, r).is_exact_zero()) y(i, 0) -= x * basis_(i, r);
    }
    return true;
}

bool LatticeRep::contains_lattice(const LatticeRep& other) const {
    for (int j = 0; j < other.rank(); ++j)
        if (!contains(other.basis().column_at(j))) return false;
    return true;
}

LatticeRep hermite_lattice(const Matrix& generators) {
    const int n = generators.rows();
    const int m = generators.cols();
    const SeriesRing* ring = generators.ring();
    if (m < n) throw RankDeficient("fewer generators than the rank");
    Matrix g = generators;
    std::vector<int> active(m);
    for (int c = 0; c < m; ++c) active[c] = c;
    Matrix b(n, n, ring);
    std::vector<int> d(n);
    for (int r = n - 1; r >= 0; --r) {
        int best = -1, best_val = kInfinitePrec, unknown_floor = kInfinitePrec;
        for (int c : active) {
            const Series& x = g(r, c);
            if (x.is_exact_zero()) continue;
            if (x.known_zero()) {
                unknown_floor = std::min(unknown_floor, x.prec());
                continue;
            }
            if (x.valuation() < best_val) {
                best_val = x.valuation();
                best = c;
            }
        }
        if (best < 0) {
            if (unknown_floor < kInfinitePrec) throw PrecisionExhausted("HNF pivot undetermined");
            throw RankDeficient("generators do not span a full-rank lattice");
        }
        if (unknown_floor <= best_val) throw PrecisionExhausted("HNF pivot not certified by precision");
        active.erase(std::find(active.begin(), active.end(), best));
        Series pinv = g(r, best).inverse();
        for (int c : active) {
            if (g(r, c).is_exact_zero()) continue;
            Series f = g(r, c) * pinv;
            for (int i = 0; i < r; ++i)
                if (!g(i, best).is_exact_zero()) g(i, c) -= f * g(i, best);
            g(r, c) = Series(ring);
        }
        d[r] = best_val;
        Series unit_inv = g(r, best).shifted(-best_val).inverse();
        for (int i = 0; i < r; ++i) b(i, r) = g(i, best) * unit_inv;
        b(r, r) = Series::uniformizer_power(ring, best_val);
    }
    for (int k = 1; k < n; ++k) reduce_against(b, k, b, d, k);
    return LatticeRep::from_hnf(std::move(b));
}

LatticeRep dual_lattice(const LatticeRep& lattice) {
    return hermite_lattice(lattice.basis().inverse().transpose());
}

bool is_selfdual_for_inverse_form(const Matrix& basis, const Matrix& h_inverse) {
    Matrix gram = basis.frobenius().transpose() * h_inverse * basis;
    return gram.in_gl_integral();
}

bool is_selfdual_hermitian(const LatticeRep& lattice, const Matrix& h) {
    return is_selfdual_for_inverse_form(lattice.basis(), h.inverse());
}

namespace {

struct Enumerator {
    const LatticeFilter& filter;
    const std::function<void(const Matrix&)>& emit;
    EnumerationStats* stats;
    const SeriesRing* ring;
    const FiniteField& field;
    int n;
    Matrix lower;          // HNF of the lower lattice in local coordinates
    std::vector<int> low_diag;
    Matrix m;              // current partial basis
    std::vector<int> d;

    long long power(int e) const {
        long long r = 1;
        for (int i = 0; i < e; ++i) {
            r *= field.size();
            if (r > (1LL << 40)) return r;
        }
        return r;
    }

    // lower column j lies in span(m columns 0..j)
    bool contains_lower_column(int j) const {
        Matrix y = lower.column_at(j);
        for (int r = j; r >= 0; --r) {
            const Series& t = y(r, 0);
            if (t.is_exact_zero()) continue;
            Series x = t.shifted(-d[r]);
            if (!x.is_integral()) return false;
            for (int i = 0; i < r; ++i)
                if (!m(i, r).is_exact_zero()) y(i, 0) -= x * m(i, r);
        }
        return true;
    }

    bool column_integral(int j) const {
        for (int i = 0; i < j; ++i)
            if (!m(i, j).is_integral()) return false;
        return true;
    }

    bool entry_allowed(int row, int j) {
        if (!filter.entry || filter.entry(m(row, j), row, j)) return true;
        if (stats) ++stats->pruned;
        return false;
    }

    void accept_column(int j) {
        if (stats) ++stats->candidates;
        if (filter.partial && !filter.partial(m, j)) {
            if (stats) ++stats->pruned;
            return;
        }
        if (j + 1 < n) {
            column(j + 1);
            return;
        }
        if (filter.full && !filter.full(m)) {
            if (stats) ++stats->pruned;
            return;
        }
        if (stats) ++stats->emitted;
        emit(m);
    }

    // Entries above the diagonal given digit-by-digit (reduced integral
    // representatives), then tested for containment of the lower lattice.
    void fill_digits(int j, int row) {
        if (row == j) {
            if (!contains_lower_column(j)) {
                if (stats) ++stats->pruned;
                return;
            }
            accept_column(j);
            return;
        }
        const int width = d[row];
        std::vector<Elem> digits(static_cast<std::size_t>(width), 0);
        while (true) {
            m(row, j) = Series::from_coeffs(ring, 0, digits);
            if (entry_allowed(row, j)) fill_digits(j, row + 1);
            int pos = 0;
            while (pos < width) {
                if (++digits[pos] < field.size()) break;
                digits[pos++] = 0;
            }
            if (pos == width) break;
        }
        m(row, j) = Series(ring);
    }

    // Entries above the diagonal generated as the coset forced by
    // containment of the lower lattice, then tested for integrality.
    void fill_coset(int j, int excess) {
        Matrix base(n, 1, ring);
        for (int i = 0; i < j; ++i) base(i, 0) = lower(i, j).shifted(-excess);
        const int slots = j * excess;
        std::vector<Elem> digits(static_cast<std::size_t>(slots), 0);
        while (true) {
            Matrix y = base;
            for (int r = 0; r < j; ++r) {
                std::vector<Elem> c(digits.begin() + r * excess, digits.begin() + (r + 1) * excess);
                Series coef = Series::from_coeffs(ring, -excess, c);
                if (coef.is_exact_zero()) continue;
                for (int i = 0; i <= r; ++i)
                    if (!m(i, r).is_exact_zero()) y(i, 0) -= coef * m(i, r);
            }
            reduce_against(y, 0, m, d, j);
            for (int i = 0; i < j; ++i) m(i, j) = y(i, 0);
            if (!column_integral(j)) {
                if (stats) ++stats->pruned;
            } else {
                bool allowed = true;
                for (int i = 0; allowed && i < j; ++i) allowed = entry_allowed(i, j);
                if (allowed) accept_column(j);
            }
            int pos = 0;
            while (pos < slots) {
                if (++digits[pos] < field.size()) break;
                digits[pos++] = 0;
            }
            if (pos == slots) break;
        }
        for (int i = 0; i < j; ++i) m(i, j) = Series(ring);
    }

    void column(int j) {
        for (int dj = 0; dj <= low_diag[j]; ++dj) {
            d[j] = dj;
            m(j, j) = Series::uniformizer_power(ring, dj);
            if (!entry_allowed(j, j)) continue;
            int free_digits = 0;
            for (int i = 0; i < j; ++i) free_digits += d[i];
            const int excess = low_diag[j] - dj;
            if (power(free_digits) <= power(excess * j)) fill_digits(j, 0);
            else fill_coset(j, excess);
        }
        m(j, j) = Series(ring);
    }
};

}  // namespace

void enumerate_between(const Matrix& upper_basis, const Matrix& lower_generators, const LatticeFilter& filter,
                       const std::function<void(const Matrix&)>& emit, EnumerationStats* stats) {
    const int n = upper_basis.rows();
    const SeriesRing* ring = upper_basis.ring();
    Matrix local = upper_basis.inverse() * lower_generators;
    LatticeRep low = hermite_lattice(local);
    if (!low.basis().is_integral()) throw std::invalid_argument("lower lattice is not contained in the upper lattice");
    Enumerator e{filter, emit, stats, ring, *ring->field, n, low.basis(), low.diagonal(), Matrix(n, n, ring),
                 std::vector<int>(n, 0)};
    e.column(0);
}

std::vector<LatticeRep> enumerate_lattices(int n, int bound, const SeriesRing* ring, const LatticeFilter& filter,
                                           EnumerationStats* stats) {
    if (bound < 0) throw std::invalid_argument("bound must be >= 0");
    Matrix upper = Matrix::identity(n, ring).shifted(-bound);
    Matrix lower = Matrix::identity(n, ring).shifted(bound);
    std::vector<LatticeRep> out;
    enumerate_between(upper, lower, filter,
                      [&](const Matrix& local) { out.push_back(LatticeRep::from_hnf(local.shifted(-bound))); },
                      stats);
    return out;
}

}  // namespace jrfl
