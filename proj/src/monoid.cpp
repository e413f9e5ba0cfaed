#include "jrfl/monoid.hpp"

#include <algorithm>
#include <map>
#include <mutex>

#include "jrfl/errors.hpp"

namespace jrfl {

namespace {

Series power(const Series& s, int e) {
    Series r = Series::one(s.ring());
    for (int k = 0; k < e; ++k) r = r * s;
    return r;
}

// Index of a subset (bitmask) inside wedge_basis(n, |S|).
int subset_index(int n, unsigned mask) {
    static std::mutex mutex;
    static std::map<int, std::vector<int>> cache;
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(n);
    if (it == cache.end()) {
        std::vector<int> table(std::size_t{1} << n, -1);
        for (int k = 0; k <= n; ++k) {
            int idx = 0;
            std::vector<unsigned> masks;
            std::vector<int> cur;
            auto rec = [&](auto&& self, int start) -> void {
                if (static_cast<int>(cur.size()) == k) {
                    unsigned mm = 0;
                    for (int c : cur) mm |= 1u << c;
                    masks.push_back(mm);
                    return;
                }
                for (int c = start; c < n; ++c) {
                    cur.push_back(c);
                    self(self, c + 1);
                    cur.pop_back();
                }
            };
            rec(rec, 0);
            for (unsigned mm : masks) table[mm] = idx++;
        }
        it = cache.emplace(n, std::move(table)).first;
    }
    return it->second[mask];
}

unsigned mask_of(const std::vector<int>& s) {
    unsigned m = 0;
    for (int k : s) m |= 1u << k;
    return m;
}

int binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    long long r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return static_cast<int>(r);
}

Series z_monomial(const std::vector<Series>& z, const std::vector<int>& exps, const SeriesRing* ring) {
    Series r = Series::one(ring);
    for (std::size_t j = 0; j < exps.size(); ++j)
        if (exps[j]) r = r * power(z[j], exps[j]);
    return r;
}

// prod_{j<i} z_j^{i-j}
Series reconstruction_factor(const std::vector<Series>& z, int i, const SeriesRing* ring) {
    std::vector<int> exps(z.size(), 0);
    for (int j = 1; j < i; ++j) exps[j - 1] = i - j;
    return z_monomial(z, exps, ring);
}

Matrix scale_rows(const Matrix& diag, const Matrix& m) {
    Matrix r = m;
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j)
            if (!r(i, j).is_exact_zero()) r(i, j) = diag(i, i) * r(i, j);
    return r;
}

}  // namespace

std::vector<int> delta_exponents(int n, int i, const std::vector<int>& subset) {
    std::vector<int> c(n - 1);
    for (int j = 1; j <= n - 1; ++j) {
        int below = 0;
        for (int k : subset)
            if (k < j) ++below;
        c[j - 1] = std::min(j, i) - below;
    }
    return c;
}

Matrix delta_scaling(const std::vector<Series>& z, int n, int i) {
    const SeriesRing* ring = z.at(0).ring();
    const auto& basis = wedge_basis(n, i);
    Matrix d(static_cast<int>(basis.size()), static_cast<int>(basis.size()), ring);
    for (std::size_t s = 0; s < basis.size(); ++s)
        d(static_cast<int>(s), static_cast<int>(s)) = z_monomial(z, delta_exponents(n, i, basis[s]), ring);
    return d;
}

Matrix companion_matrix(const std::vector<Series>& a, int n) {
    const SeriesRing* ring = a.at(0).ring();
    Matrix eps(n, n, ring);
    for (int c = 0; c < n - 1; ++c) {
        eps(0, c) = (c % 2 == 0) ? a[c] : -a[c];
        eps(c + 1, c) = Series::one(ring);
    }
    eps(0, n - 1) = Series::integer(ring, (n - 1) % 2 == 0 ? 1 : -1);
    return eps;
}

MonoidPoint companion_section(const std::vector<Series>& z, const std::vector<Series>& a) {
    const int n = static_cast<int>(a.size()) + 1;
    MonoidPoint m;
    m.n = n;
    m.z = z;
    Matrix eps = companion_matrix(a, n);
    for (int i = 1; i <= n - 1; ++i) m.x.push_back(scale_rows(delta_scaling(z, n, i), wedge_matrix(eps, i)));
    return m;
}

std::vector<Series> chi(const MonoidPoint& m) {
    std::vector<Series> out;
    for (const auto& xi : m.x) out.push_back(xi.trace());
    return out;
}

MonoidPoint section_MH(const std::vector<Series>& z, const std::vector<Series>& a_prime,
                       const std::vector<Series>& a_second) {
    const int n = static_cast<int>(a_prime.size()) + 1;
    const SeriesRing* ring = a_prime.at(0).ring();
    std::vector<Series> a(n - 1, Series(ring));
    for (int i = 0; i < n - 1; ++i) a[i] = a_prime[i] + a_second[i];
    MonoidPoint base = companion_section(z, a);
    Matrix beta = Matrix::identity(n, ring);
    Matrix beta_inv = Matrix::identity(n, ring);
    for (int c = 0; c < n - 1; ++c) {
        Series entry = ((n - 1 - c) % 2 == 0) ? a_second[c] : -a_second[c];
        beta(n - 1, c) = entry;
        beta_inv(n - 1, c) = -entry;
    }
    for (int i = 1; i <= n - 1; ++i)
        base.x[i - 1] = wedge_matrix(beta, i) * base.x[i - 1] * wedge_matrix(beta_inv, i);
    return base;
}

std::pair<std::vector<Series>, std::vector<Series>> chi_MH(const MonoidPoint& m) {
    std::vector<Series> first, second;
    const int n = m.n;
    for (int i = 1; i <= n - 1; ++i) {
        const auto& basis = wedge_basis(n, i);
        Series avoid(m.ring()), meet(m.ring());
        for (std::size_t s = 0; s < basis.size(); ++s) {
            const Series& d = m.x[i - 1](static_cast<int>(s), static_cast<int>(s));
            if (std::find(basis[s].begin(), basis[s].end(), n - 1) == basis[s].end()) avoid += d;
            else meet += d;
        }
        first.push_back(avoid);
        second.push_back(meet);
    }
    return {first, second};
}

DeformedPoint deformed_section(const InvariantCoords& c) {
    const int n = static_cast<int>(c.a.size()) + 1;
    const SeriesRing* ring = c.b0.ring();
    DeformedPoint m;
    m.point = companion_section(c.z, c.a);
    m.e = Matrix(n, 1, ring);
    m.e(n - 1, 0) = Series::one(ring);
    m.edual = Matrix(1, n, ring);
    for (int i = 1; i <= n - 1; ++i) m.edual(0, i - 1) = ((n - i) % 2 == 0) ? c.b[i - 1] : -c.b[i - 1];
    m.edual(0, n - 1) = c.b0;
    return m;
}

Matrix wedge_vector_left(const Matrix& v, const Matrix& w, int n, int deg_w) {
    const SeriesRing* ring = v.ring();
    const auto& src = wedge_basis(n, deg_w);
    Matrix out(binomial(n, deg_w + 1), 1, ring);
    for (int p = 0; p < n; ++p) {
        const Series& vp = v(p, 0);
        if (vp.is_exact_zero()) continue;
        for (std::size_t t = 0; t < src.size(); ++t) {
            const Series& wt = w(static_cast<int>(t), 0);
            if (wt.is_exact_zero()) continue;
            unsigned m = mask_of(src[t]);
            if (m & (1u << p)) continue;
            int less = 0;
            for (int k : src[t])
                if (k < p) ++less;
            int target = subset_index(n, m | (1u << p));
            Series term = vp * wt;
            if (less % 2) out(target, 0) -= term;
            else out(target, 0) += term;
        }
    }
    return out;
}

Matrix wedge_covector_right(const Matrix& phi, const Matrix& psi, int n, int deg_phi) {
    const SeriesRing* ring = psi.ring();
    const auto& src = wedge_basis(n, deg_phi);
    Matrix out(1, binomial(n, deg_phi + 1), ring);
    for (std::size_t t = 0; t < src.size(); ++t) {
        const Series& ft = phi(0, static_cast<int>(t));
        if (ft.is_exact_zero()) continue;
        unsigned m = mask_of(src[t]);
        for (int p = 0; p < n; ++p) {
            const Series& gp = psi(0, p);
            if (gp.is_exact_zero() || (m & (1u << p))) continue;
            int greater = 0;
            for (int k : src[t])
                if (k > p) ++greater;
            int target = subset_index(n, m | (1u << p));
            Series term = ft * gp;
            if (greater % 2) out(0, target) -= term;
            else out(0, target) += term;
        }
    }
    return out;
}

Matrix contract(const Matrix& covector, const Matrix& v, int n, int deg_v) {
    const SeriesRing* ring = v.ring();
    const auto& src = wedge_basis(n, deg_v);
    Matrix out(binomial(n, deg_v - 1), 1, ring);
    for (std::size_t s = 0; s < src.size(); ++s) {
        const Series& vs = v(static_cast<int>(s), 0);
        if (vs.is_exact_zero()) continue;
        unsigned m = mask_of(src[s]);
        for (std::size_t j = 0; j < src[s].size(); ++j) {
            const Series& c = covector(0, src[s][j]);
            if (c.is_exact_zero()) continue;
            int target = subset_index(n, m & ~(1u << src[s][j]));
            Series term = c * vs;
            if (j % 2) out(target, 0) -= term;
            else out(target, 0) += term;
        }
    }
    return out;
}

InvariantCoords deformed_invariants(const DeformedPoint& m) {
    const int n = m.point.n;
    const SeriesRing* ring = m.point.ring();
    InvariantCoords c;
    c.z = m.point.z;
    c.a = chi(m.point);
    c.b0 = (m.edual * m.e)(0, 0);
    for (int i = 1; i <= n - 1; ++i) {
        const int dim_prev = binomial(n, i - 1);
        Series total(ring);
        for (int t = 0; t < dim_prev; ++t) {
            Matrix basis_vec(dim_prev, 1, ring);
            basis_vec(t, 0) = Series::one(ring);
            Matrix up = wedge_vector_left(m.e, basis_vec, n, i - 1);
            Matrix moved = m.point.x[i - 1] * up;
            Matrix down = contract(m.edual, moved, n, i);
            total += down(t, 0);
        }
        c.b.push_back(total);
    }
    return c;
}

PureTensors pure_tensors(const DeformedPoint& m) {
    const int n = m.point.n;
    PureTensors pt;
    pt.f.push_back(m.point.x1() * m.e);
    pt.fdual.push_back(m.edual * m.point.x1());
    for (int i = 2; i <= n - 1; ++i) {
        pt.f.push_back(m.point.x[i - 1] * wedge_vector_left(m.e, pt.f.back(), n, i - 1));
        pt.fdual.push_back(wedge_covector_right(pt.fdual.back(), m.edual, n, i - 1) * m.point.x[i - 1]);
    }
    pt.f.push_back(wedge_vector_left(m.e, pt.f.back(), n, n - 1));
    pt.fdual.push_back(wedge_covector_right(pt.fdual.back(), m.edual, n, n - 1));
    return pt;
}

int matrix_rank(const Matrix& m) {
    const int r = m.rows(), c = m.cols();
    int rank = 0;
    for (int k = 1; k <= std::min(r, c); ++k) {
        bool found = false;
        std::vector<int> rows(k), cols(k);
        // iterate over k-subsets of rows and cols
        std::vector<bool> rsel(r, false), csel(c, false);
        std::fill(rsel.begin(), rsel.begin() + k, true);
        do {
            int ri = 0;
            for (int i = 0; i < r; ++i)
                if (rsel[i]) rows[ri++] = i;
            std::fill(csel.begin(), csel.end(), false);
            std::fill(csel.begin(), csel.begin() + k, true);
            do {
                int ci = 0;
                for (int j = 0; j < c; ++j)
                    if (csel[j]) cols[ci++] = j;
                Series d = m.minor(rows, cols);
                if (!d.known_zero()) {
                    found = true;
                    break;
                }
                if (!d.is_exact_zero()) throw PrecisionExhausted("rank test on inexact minors");
            } while (std::prev_permutation(csel.begin(), csel.end()));
        } while (!found && std::prev_permutation(rsel.begin(), rsel.end()));
        if (!found) break;
        rank = k;
    }
    return rank;
}

int wedge_kernel_dimension(const Matrix& f, int n, int deg_f) {
    const SeriesRing* ring = f.ring();
    Matrix map(binomial(n, deg_f + 1), n, ring);
    for (int p = 0; p < n; ++p) {
        Matrix unit(n, 1, ring);
        unit(p, 0) = Series::one(ring);
        map.set_column(p, wedge_vector_left(unit, f, n, deg_f));
    }
    return n - matrix_rank(map);
}

int covector_wedge_kernel_dimension(const Matrix& phi, int n, int deg_phi) {
    const SeriesRing* ring = phi.ring();
    Matrix map(binomial(n, deg_phi + 1), n, ring);
    for (int p = 0; p < n; ++p) {
        Matrix unit(1, n, ring);
        unit(0, p) = Series::one(ring);
        Matrix img = wedge_covector_right(phi, unit, n, deg_phi);
        for (int r = 0; r < img.cols(); ++r) map(r, p) = img(0, r);
    }
    return n - matrix_rank(map);
}

Series disc(const DeformedPoint& m) {
    PureTensors pt = pure_tensors(m);
    return (pt.fdual.back() * pt.f.back())(0, 0);
}

Series disc(const InvariantCoords& c) { return disc(deformed_section(c)); }

std::vector<Series> charpoly_coefficients(const std::vector<Series>& z, const std::vector<Series>& a) {
    const int n = static_cast<int>(a.size()) + 1;
    const SeriesRing* ring = a.at(0).ring();
    std::vector<Series> c;
    for (int i = 1; i <= n; ++i) {
        Series ai = i < n ? a[i - 1] : Series::one(ring);
        c.push_back(ai * reconstruction_factor(z, i, ring));
    }
    return c;
}

Series polynomial_discriminant(const std::vector<Series>& p) {
    // p = (1, p_1, ..., p_n) for t^n + p_1 t^{n-1} + ... + p_n.
    const int n = static_cast<int>(p.size()) - 1;
    const SeriesRing* ring = p.back().ring();
    std::vector<Series> dp;
    for (int k = 0; k < n; ++k) dp.push_back(Series::integer(ring, n - k) * p[k]);
    const int size = 2 * n - 1;
    Matrix syl(size, size, ring);
    for (int r = 0; r < n - 1; ++r)
        for (int k = 0; k <= n; ++k) syl(r, r + k) = p[k];
    for (int r = 0; r < n; ++r)
        for (int k = 0; k < n; ++k) syl(n - 1 + r, r + k) = dp[k];
    Series res = syl.det();
    return ((n * (n - 1) / 2) % 2) ? -res : res;
}

Series disc_plus(const std::vector<Series>& z, const std::vector<Series>& a) {
    const int n = static_cast<int>(a.size()) + 1;
    const SeriesRing* ring = a.at(0).ring();
    auto c = charpoly_coefficients(z, a);
    std::vector<Series> p{Series::one(ring)};
    for (int i = 1; i <= n; ++i) p.push_back(i % 2 ? -c[i - 1] : c[i - 1]);
    Series d = polynomial_discriminant(p);
    std::vector<int> exps(n - 1);
    for (int j = 1; j <= n - 1; ++j) exps[j - 1] = (n - j) * (n - j - 1);
    Series divisor = z_monomial(z, exps, ring);
    return d / divisor;
}

MonoidPoint reconstruct_from_x1(const std::vector<Series>& z, const Matrix& x1) {
    const int n = x1.rows();
    MonoidPoint m;
    m.n = n;
    m.z = z;
    m.x.push_back(x1);
    for (int i = 2; i <= n - 1; ++i) {
        Series f = reconstruction_factor(z, i, x1.ring());
        m.x.push_back(f.inverse() * wedge_matrix(x1, i));
    }
    return m;
}

namespace {

MonoidPoint flip(const MonoidPoint& m, bool transpose) {
    const SeriesRing* ring = m.ring();
    Series total = Series::one(ring);
    for (const auto& zi : m.z) total = total * zi;
    Matrix inv = m.x1().inverse();
    if (transpose) inv = inv.transpose();
    std::vector<Series> zf(m.z.rbegin(), m.z.rend());
    return reconstruct_from_x1(zf, total * inv);
}

}  // namespace

MonoidPoint involution_iota(const MonoidPoint& m) { return flip(m, false); }
MonoidPoint involution_tau(const MonoidPoint& m) { return flip(m, true); }

void InvariantPoint::refresh() {
    Series d = disc(coords);
    auto c = charpoly_coefficients(coords.z, coords.a);
    const int nn = n();
    std::vector<Series> p{Series::one(d.ring())};
    for (int i = 1; i <= nn; ++i) p.push_back(i % 2 ? -c[i - 1] : c[i - 1]);
    Series dchar = polynomial_discriminant(p);
    srs = !d.known_zero() && !dchar.known_zero();
    if (!srs) {
        if ((d.known_zero() && !d.is_exact_zero()) || (dchar.known_zero() && !dchar.is_exact_zero()))
            throw PrecisionExhausted("srs test undecidable at working precision");
        val_disc = d.is_exact_zero() ? kInfinitePrec : d.valuation();
        val_disc_plus = kInfinitePrec;
        return;
    }
    val_disc = d.valuation();
    int shift = 0;
    for (int j = 1; j <= nn - 1; ++j) shift += (nn - j) * (nn - j - 1) * coords.z[j - 1].valuation();
    val_disc_plus = dchar.valuation() - shift;
}

InvariantPoint complete_twisted(const PlaceData& place, const InvariantCoords& free_part) {
    const int n = place.n();
    InvariantPoint pt{place, free_part, {}, 0, 0, false};
    InvariantCoords& c = pt.coords;
    if (place.inert()) {
        for (int i = 1; i <= n - 1; ++i) {
            const int j = n - i;
            if (i >= j) continue;
            c.z[j - 1] = c.z[i - 1].frobenius();
            c.a[j - 1] = c.a[i - 1].frobenius();
            c.b[j - 1] = (c.b0 * c.a[i - 1] - c.b[i - 1]).frobenius();
        }
    } else {
        InvariantCoords& r = pt.right;
        r.b0 = c.b0;
        r.z.resize(n - 1);
        r.a.resize(n - 1);
        r.b.resize(n - 1);
        for (int i = 1; i <= n - 1; ++i) {
            r.z[i - 1] = c.z[n - i - 1];
            r.a[i - 1] = c.a[n - i - 1];
            r.b[i - 1] = c.b0 * c.a[n - i - 1] - c.b[n - i - 1];
        }
    }
    return pt;
}

bool check_twisted_coords(const PlaceData& place, const InvariantCoords& c, const InvariantCoords& r) {
    const int n = place.n();
    const SeriesRing* ring = c.b0.ring();
    auto a_at = [&](const InvariantCoords& x, int i) { return i == n ? Series::one(ring) : x.a[i - 1]; };
    auto b_at = [&](const InvariantCoords& x, int i) {
        if (i == 0) return x.b0;
        return i == n ? Series(ring) : x.b[i - 1];
    };
    if (place.inert()) {
        if (!c.b0.agrees(c.b0.frobenius())) return false;
        for (int i = 1; i <= n - 1; ++i) {
            if (!c.z[i - 1].agrees(c.z[n - i - 1].frobenius())) return false;
            if (!c.a[i - 1].agrees(c.a[n - i - 1].frobenius())) return false;
            if (!c.b[i - 1].agrees((c.b0 * a_at(c, n - i) - b_at(c, n - i)).frobenius())) return false;
        }
        return true;
    }
    if (!c.b0.agrees(r.b0)) return false;
    for (int i = 1; i <= n - 1; ++i) {
        if (!c.z[i - 1].agrees(r.z[n - i - 1]) || !r.z[i - 1].agrees(c.z[n - i - 1])) return false;
        if (!c.a[i - 1].agrees(r.a[n - i - 1]) || !r.a[i - 1].agrees(c.a[n - i - 1])) return false;
        if (!c.b[i - 1].agrees(r.b0 * a_at(r, n - i) - b_at(r, n - i))) return false;
        if (!r.b[i - 1].agrees(c.b0 * a_at(c, n - i) - b_at(c, n - i))) return false;
    }
    return true;
}

bool check_twisted(const InvariantPoint& a) { return check_twisted_coords(a.place, a.coords, a.right); }

Elem imaginary_unit(const FiniteField& ext) {
    for (int u = 1; u < ext.size(); ++u) {
        Elem w = ext.sub(static_cast<Elem>(u), ext.frobenius(static_cast<Elem>(u)));
        if (w != 0) return w;
    }
    throw std::logic_error("field has no element outside its base");
}

namespace {

Elem random_elem(const FiniteField& f, CounterRng& rng, bool base_only, bool nonzero) {
    const int size = (base_only && f.base()) ? f.base()->size() : f.size();
    if (nonzero) return static_cast<Elem>(1 + rng.below(size - 1));
    return static_cast<Elem>(rng.below(size));
}

}  // namespace

Series random_series(const SeriesRing* ring, int lowest, int degree, CounterRng& rng, int zero_bias, bool base_only) {
    std::vector<Elem> c(static_cast<std::size_t>(degree + 1));
    for (auto& x : c) {
        if (zero_bias > 0 && rng.below(zero_bias + 2) < static_cast<unsigned>(zero_bias)) x = 0;
        else x = random_elem(*ring->field, rng, base_only, false);
    }
    return Series::from_coeffs(ring, lowest, c);
}

Series random_unit(const SeriesRing* ring, int degree, CounterRng& rng, int zero_bias, bool base_only) {
    Series s = degree > 0 ? random_series(ring, 1, degree - 1, rng, zero_bias, base_only) : Series(ring);
    return s + Series::constant(ring, random_elem(*ring->field, rng, base_only, true));
}

InvariantPoint random_twisted(const PlaceData& place, const TwistedConstraints& k, CounterRng& rng) {
    const int n = place.n();
    const SeriesRing* ring = place.cover_ring();
    const bool inert = place.inert();
    std::vector<int> boundary(n - 1, 0);
    if (k.boundary) {
        if (static_cast<int>(k.boundary->size()) != n - 1)
            throw std::invalid_argument("boundary needs n-1 valuations");
        boundary = *k.boundary;
        for (int i = 1; i <= n - 1; ++i)
            if (boundary[i - 1] != boundary[n - i - 1])
                throw ConstraintUnsatisfiable("boundary valuations must satisfy val z_i = val z_{n-i}");
    }
    const Elem imag = inert ? imaginary_unit(*ring->field) : 0;
    for (int attempt = 0; attempt < k.retries; ++attempt) {
        InvariantCoords c;
        c.z.assign(n - 1, Series(ring));
        c.a.assign(n - 1, Series(ring));
        c.b.assign(n - 1, Series(ring));
        c.b0 = random_series(ring, 0, k.degree, rng, k.zero_bias, true);
        for (int i = 1; i <= n - 1; ++i) {
            const int j = n - i;
            if (inert && i > j) continue;
            const bool middle = inert && i == j;
            c.z[i - 1] = random_unit(ring, k.degree, rng, k.zero_bias, middle).shifted(boundary[i - 1]);
            c.a[i - 1] = random_series(ring, 0, k.degree, rng, k.zero_bias, middle);
            if (middle) {
                Series half = Series::integer(ring, 2).inverse();
                Series odd = random_series(ring, 0, k.degree, rng, k.zero_bias, true).scaled(imag);
                c.b[i - 1] = half * c.b0 * c.a[i - 1] + odd;
                c.b[i - 1] = c.b[i - 1].as_exact();
            } else {
                c.b[i - 1] = random_series(ring, 0, k.degree, rng, k.zero_bias, false);
            }
        }
        InvariantPoint pt = complete_twisted(place, c);
        try {
            pt.refresh();
        } catch (const PrecisionExhausted&) {
            continue;
        }
        if (k.require_srs && !pt.srs) continue;
        if (pt.srs) {
            if (k.disc_parity && (pt.val_disc % 2) != *k.disc_parity) continue;
            if (pt.val_disc < k.min_val_disc || pt.val_disc > k.max_val_disc) continue;
            if (pt.val_disc_plus > k.max_val_disc_plus) continue;
        }
        return pt;
    }
    throw ConstraintUnsatisfiable("no twisted point satisfied the constraints within the retry budget");
}

}  // namespace jrfl
