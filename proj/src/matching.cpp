#include "jrfl/matching.hpp"

#include <algorithm>

#include "jrfl/errors.hpp"

namespace jrfl {

std::string to_string(Side side) { return side == Side::symmetric ? "symmetric" : "unitary"; }
std::string to_string(Obstruction o) { return o == Obstruction::trivial ? "trivial" : "nontrivial"; }

namespace {

bool coords_integral(const InvariantCoords& c) {
    auto ok = [](const Series& s) { return s.known_zero() || s.valuation() >= 0; };
    if (!ok(c.b0)) return false;
    for (const auto* v : {&c.z, &c.a, &c.b})
        for (const auto& s : *v)
            if (!ok(s)) return false;
    return true;
}

Matrix standard_column(int n, int k, const SeriesRing* ring) {
    Matrix e(n, 1, ring);
    e(k, 0) = Series::one(ring);
    return e;
}

Matrix standard_row(int n, int k, const SeriesRing* ring) {
    Matrix e(1, n, ring);
    e(0, k) = Series::one(ring);
    return e;
}

}  // namespace

BasePoint lift_basepoint(const InvariantPoint& a) {
    if (!coords_integral(a.coords) || (!a.place.inert() && !coords_integral(a.right)))
        throw NotIntegral("invariant point is not integral; it has no O'-point");
    BasePoint base{deformed_section(a.coords), std::nullopt};
    if (!a.place.inert()) base.right = deformed_section(a.right);
    return base;
}

Matrix krylov(const Matrix& x, const Matrix& e) {
    const int n = x.rows();
    Matrix k(n, n, x.ring());
    Matrix v = e;
    for (int j = 0; j < n; ++j) {
        k.set_column(j, v);
        if (j + 1 < n) v = x * v;
    }
    return k;
}

Matrix covector_krylov(const Matrix& x, const Matrix& edual) {
    const int n = x.rows();
    Matrix k(n, n, x.ring());
    Matrix v = edual;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) k(i, j) = v(0, j);
        if (i + 1 < n) v = v * x;
    }
    return k;
}

DeformedPoint twisted_frobenius(const DeformedPoint& m, Side side) {
    const SeriesRing* ring = m.point.ring();
    std::vector<Series> zbar;
    Series total = Series::one(ring);
    for (const auto& zi : m.point.z) {
        zbar.push_back(zi.frobenius());
        total = total * zbar.back();
    }
    std::vector<Series> zflip(zbar.rbegin(), zbar.rend());
    Matrix xbar_inv = m.point.x1().frobenius().inverse();
    DeformedPoint out;
    if (side == Side::symmetric) {
        out.point = reconstruct_from_x1(zflip, total * xbar_inv);
        out.e = m.e.frobenius();
        out.edual = m.edual.frobenius();
    } else {
        out.point = reconstruct_from_x1(zflip, total * xbar_inv.transpose());
        out.e = m.edual.frobenius().transpose();
        out.edual = m.e.frobenius().transpose();
    }
    return out;
}

Matrix solve_cocycle(const BasePoint& base, Side side) {
    const DeformedPoint& m = base.point;
    const int n = m.point.n;
    if (base.right) return Matrix::identity(n, m.point.ring());
    DeformedPoint twisted = twisted_frobenius(m, side);
    Matrix kt = krylov(twisted.point.x1(), twisted.e);
    Series det = kt.det();
    if (det.known_zero()) throw NoSolution("twisted vector is not cyclic; the point is not srs");
    Matrix cocycle = krylov(m.point.x1(), m.e) * kt.inverse();
    if (!(cocycle * twisted.point.x1()).agrees(m.point.x1() * cocycle) || !(cocycle * twisted.e).agrees(m.e) ||
        !twisted.edual.agrees(m.edual * cocycle))
        throw NoSolution("cocycle system is inconsistent; the point does not satisfy the twisted relations");
    return cocycle;
}

Matrix solve_cocycle(const InvariantPoint& a, Side side) { return solve_cocycle(lift_basepoint(a), side); }

Obstruction obstruction(const InvariantPoint& a) {
    if (!a.place.inert()) return Obstruction::trivial;
    if (!a.srs) throw NotSRS("obstruction needs a generically srs point");
    return (a.val_disc % 2 != 0) ? Obstruction::nontrivial : Obstruction::trivial;
}

bool is_matching_pair(const InvariantPoint& a) { return a.srs && obstruction(a) == Obstruction::trivial; }

Coweight boundary_coweight(const InvariantPoint& a) {
    std::vector<int> pairings;
    for (const auto& z : a.coords.z) pairings.push_back(z.valuation());
    return Coweight::from_root_pairings(pairings);
}

Coweight fiber_boundary_coweight(const std::vector<Series>& z) {
    std::vector<int> pairings;
    for (auto it = z.rbegin(); it != z.rend(); ++it) pairings.push_back(it->valuation());
    return Coweight::from_root_pairings(pairings);
}

std::vector<Rational> newton_slopes(const std::vector<Series>& p) {
    // p = (1, p_1, ..., p_n) for t^n + p_1 t^{n-1} + ... + p_n; the points
    // (i, val a_i) with a_i = p_{n-i}.
    const int n = static_cast<int>(p.size()) - 1;
    std::vector<std::pair<int, int>> pts;
    for (int i = 0; i <= n; ++i) {
        const Series& c = p[n - i];
        if (c.known_zero()) {
            if (i == 0) throw SingularMatrix("zero constant term: an eigenvalue vanishes");
            if (!c.is_exact_zero()) throw PrecisionExhausted("coefficient undetermined at working precision");
            continue;
        }
        pts.emplace_back(i, c.valuation());
    }
    std::vector<std::pair<int, int>> hull;
    for (const auto& pt : pts) {
        while (hull.size() >= 2) {
            auto [x1, y1] = hull[hull.size() - 2];
            auto [x2, y2] = hull.back();
            // drop the middle point when it lies on or above the chord
            if (static_cast<long long>(y2 - y1) * (pt.first - x1) >= static_cast<long long>(pt.second - y1) * (x2 - x1))
                hull.pop_back();
            else
                break;
        }
        hull.push_back(pt);
    }
    std::vector<Rational> slopes;
    for (std::size_t k = 1; k < hull.size(); ++k) {
        const int len = hull[k].first - hull[k - 1].first;
        Rational root_val(-(hull[k].second - hull[k - 1].second), len);
        for (int r = 0; r < len; ++r) slopes.push_back(root_val);
    }
    Rational mean = 0;
    for (const auto& s : slopes) mean += s;
    mean /= static_cast<long long>(slopes.size());
    for (auto& s : slopes) s -= mean;
    std::sort(slopes.rbegin(), slopes.rend());
    return slopes;
}

std::vector<Rational> newton_point(const InvariantPoint& a) {
    auto c = charpoly_coefficients(a.coords.z, a.coords.a);
    std::vector<Series> p{Series::one(c[0].ring())};
    for (std::size_t i = 0; i < c.size(); ++i) p.push_back(i % 2 == 0 ? -c[i] : c[i]);
    return newton_slopes(p);
}

void require_symmetric_space(const PlaceData& place, const Matrix& A) {
    if (!place.inert()) return;
    if (!(A * A.frobenius()).agrees(Matrix::identity(A.rows(), A.ring())))
        throw NotInSymmetricSpace("A sigma(A) != 1");
}

GroupInvariants group_invariants(const PlaceData& place, const Matrix& A) {
    require_symmetric_space(place, A);
    const int n = A.rows();
    const SeriesRing* ring = A.ring();
    GroupInvariants g;
    g.det = A.det();
    Matrix e = standard_column(n, n - 1, ring), edual = standard_row(n, n - 1, ring);
    std::vector<Series> moments;
    Matrix v = e;
    for (int k = 0; k <= 2 * n - 2; ++k) {
        moments.push_back((edual * v)(0, 0));
        v = A * v;
    }
    for (int i = 1; i <= n - 1; ++i) {
        g.a.push_back(wedge_matrix(A, i).trace());
        g.b.push_back(moments[i]);
    }
    Matrix gram(n, n, ring);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) gram(i, j) = moments[i + j];
    g.disc = gram.det();
    Series scale = Series::one(ring);
    Series det_inv = g.det.inverse();
    for (int k = 0; k < n - 1; ++k) scale = scale * det_inv;
    g.disc_n = scale * g.disc;
    std::vector<Series> p{Series::one(ring)};
    for (int i = 1; i <= n; ++i) {
        Series ci = i < n ? g.a[i - 1] : g.det;
        p.push_back(i % 2 ? -ci : ci);
    }
    g.srs = !polynomial_discriminant(p).known_zero() && !g.disc.known_zero();
    return g;
}

void require_unitary(const PlaceData& place, const Matrix& A) {
    if (!place.inert()) return;
    if (!(A.frobenius().transpose() * A).agrees(Matrix::identity(A.rows(), A.ring())))
        throw MembershipFailed("A is not unitary for the identity hermitian form");
}

InvariantPoint lift_to_monoid(const PlaceData& place, const Matrix& A, const Coweight& lambda, Side side) {
    const int n = A.rows();
    if (n != 2) throw RankUnsupported("lift_to_monoid is implemented for n = 2");
    if (!sigma_out_fixed(lambda) || (lambda.parts[0] - lambda.parts[1]) % 2 != 0)
        throw NotSigmaOutFixed("lift needs a sigma_Out-fixed lambda with even root pairing");
    if (side == Side::symmetric)
        require_symmetric_space(place, A);
    else
        require_unitary(place, A);
    const SeriesRing* ring = A.ring();
    const int m = (lambda.parts[0] - lambda.parts[1]) / 2;
    Series c = Series::uniformizer_power(ring, m);
    if (place.inert()) {
        // c0 = u + dbar ubar satisfies c0 / c0bar = 1 / det A.
        Series dbar = A.det().frobenius();
        const FiniteField& f = *ring->field;
        bool found = false;
        for (int u = 1; u < f.size() && !found; ++u) {
            Series uu = Series::constant(ring, static_cast<Elem>(u));
            Series c0 = uu + dbar * uu.frobenius();
            if (!c0.known_zero() && c0.valuation() == 0) {
                c = c * c0;
                found = true;
            }
        }
        if (!found) throw NoSolution("no unit solution of c / cbar = 1 / det A");
    }
    Matrix x1 = c * A;
    DeformedPoint m_pt{MonoidPoint{2, {x1.det()}, {x1}}, standard_column(2, 1, ring), standard_row(2, 1, ring)};
    InvariantCoords coords = deformed_invariants(m_pt);
    InvariantPoint pt = complete_twisted(place, coords);
    pt.coords = coords;
    if (place.inert() && !check_twisted(pt))
        throw NoSolution("lifted invariants violate the twisted relations");
    pt.refresh();
    if (!pt.srs) throw NotSRS("A is not strongly regular semisimple");
    return pt;
}

Coweight cartan_invariant(const PlaceData& place, const Matrix& x, CartanGroup group) {
    if (group == CartanGroup::symmetric_space) {
        try {
            require_symmetric_space(place, x);
        } catch (const NotInSymmetricSpace& err) {
            throw MembershipFailed(err.what());
        }
    } else if (group == CartanGroup::unitary) {
        require_unitary(place, x);
    }
    return Coweight{smith_exponents(x)};
}

int transfer_factor(const PlaceData& place, const Matrix& A) {
    if (!place.inert()) return 1;
    const int n = A.rows();
    Series w = covector_krylov(A, standard_row(n, n - 1, A.ring())).det();
    if (w.known_zero()) throw NotSRS("co-vector Krylov wedge vanishes");
    return eta_of_valuation(w.valuation());
}

Matrix involution_element(const BasePoint& base) {
    const DeformedPoint& m = base.point;
    Matrix x = m.point.x1();
    Matrix xt = x.transpose();
    Matrix k = krylov(x, m.e);
    if (k.det().known_zero()) throw NoSolution("e is not cyclic; the point is not srs");
    Matrix d = krylov(xt, m.edual.transpose()) * k.inverse();
    if (!(d * x).agrees(xt * d) || !(m.e.transpose() * d).agrees(m.edual))
        throw NoSolution("transposed data does not match; the point is not srs");
    return d;
}

}  // namespace jrfl
