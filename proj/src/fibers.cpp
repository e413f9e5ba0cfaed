#include "jrfl/fibers.hpp"

#include <map>

#include "jrfl/errors.hpp"

namespace jrfl {

namespace {

Matrix exact_companion(const Matrix& x) {
    // Rows 0..n-2 are e_{k+1}^vee; the last row expresses e^vee x^n through
    // Cayley-Hamilton: x^n = sum_k r_k x^k, r_k = -(-1)^{n-k} c_{n-k}.
    const int n = x.rows();
    const SeriesRing* ring = x.ring();
    Matrix s(n, n, ring);
    for (int k = 0; k + 1 < n; ++k) s(k, k + 1) = Series::one(ring);
    for (int k = 0; k < n; ++k) {
        const int j = n - k;
        Series c = j == n ? x.det() : wedge_matrix(x, j).trace();
        s(n - 1, k) = (j % 2 == 0) ? -c : c;
    }
    return s;
}

Coweight descending(std::vector<int> parts) {
    std::sort(parts.rbegin(), parts.rend());
    return Coweight{parts};
}

struct WindowCheck {
    const FiberModel& model;
    int widen;

    // Necessary conditions on the first j+1 HNF columns.
    bool partial(const Matrix& m, int j) const {
        const int n = model.n();
        Matrix b = m.column_at(j);
        if (widen > 0) b = b.shifted(-widen);
        if (widen == 0) {
            if (!(model.companion * b).is_integral()) return false;
        } else {
            // e^vee gamma^k b in O for all k (gamma-stability with e^vee in Lambda^vee).
            Matrix v = b;
            for (int k = 0; k < n; ++k) {
                if (!v(0, 0).is_integral()) return false;
                v = model.companion * v;
            }
        }
        if (model.twisted() && model.side == Side::unitary) {
            Matrix fb = model.frobenius_form * b;
            for (int i = 0; i <= j; ++i) {
                Matrix bi = m.column_at(i);
                if (widen > 0) bi = bi.shifted(-widen);
                if (!(bi.frobenius().transpose() * fb)(0, 0).is_integral()) return false;
            }
        }
        return true;
    }

    bool full(const Matrix& local) const {
        const int n = model.n();
        Matrix m = widen > 0 ? local.shifted(-widen) : local;
        Matrix minv = m.inverse();
        if (widen > 0 && !m.row_at(0).is_integral()) return false;  // e^vee in Lambda^vee
        Matrix c = minv * model.companion * m;
        if (!c.is_integral()) return false;
        for (int i = 2; i < n; ++i)
            if (wedge_matrix(c, i).min_valuation() < model.minor_floor[i - 1]) return false;
        if (model.twisted()) {
            if (model.side == Side::symmetric) {
                if (!(minv * model.frobenius_form * m.frobenius()).in_gl_integral()) return false;
            } else {
                if (!(m.frobenius().transpose() * model.frobenius_form * m).in_gl_integral()) return false;
            }
        }
        return true;
    }
};

FiberPoint make_point(const FiberModel& model, const LatticeRep& lattice) {
    FiberPoint fp;
    fp.lattice = lattice;
    const Matrix& m = lattice.basis();
    Matrix c = m.inverse() * model.companion * m;
    fp.mu = descending(smith_exponents(c));
    fp.eta_exponent = model.fdual_n.valuation() + model.val_det_krylov_inv + lattice.volume();
    return fp;
}

}  // namespace

namespace {

FiberModel build_model(const PlaceData& place, Side side, const DeformedPoint& pt, bool frobenius_filter) {
    FiberModel model(place);
    model.side = side;
    model.frobenius_filter = frobenius_filter;
    model.point = pt;
    const int n = pt.point.n;
    model.gamma = pt.point.x1();
    model.krylov_dual = covector_krylov(model.gamma, pt.edual);
    Series det_dual = model.krylov_dual.det();
    if (det_dual.known_zero()) throw NotSRS("e^vee is not cyclic for gamma_1");
    model.krylov_inv = model.krylov_dual.inverse();
    model.val_det_krylov_inv = -det_dual.valuation();
    model.gram = model.krylov_dual * krylov(model.gamma, pt.e);
    if (model.gram.det().known_zero()) throw NotSRS("the Krylov Gram matrix is singular");
    model.companion = exact_companion(model.gamma);
    model.minor_floor.assign(static_cast<std::size_t>(n - 1), 0);
    for (int i = 1; i < n; ++i)
        for (int j = 1; j < i; ++j) model.minor_floor[i - 1] += (i - j) * pt.point.z[j - 1].valuation();
    model.fdual_n = pure_tensors(pt).fdual.back()(0, 0);
    if (model.fdual_n.known_zero()) throw NotSRS("f_n^vee vanishes at the base point");
    model.lambda = fiber_boundary_coweight(pt.point.z);
    if (model.twisted()) {
        BasePoint own{pt, std::nullopt};
        model.cocycle = solve_cocycle(own, side);
        const Matrix& u = model.krylov_inv;
        if (side == Side::symmetric)
            model.frobenius_form = model.krylov_dual * model.cocycle * u.frobenius();
        else
            model.frobenius_form = u.frobenius().transpose() * model.cocycle.inverse() * u;
    }
    return model;
}

}  // namespace

FiberModel make_fiber_model(const InvariantPoint& a, Side side) {
    BasePoint base = lift_basepoint(a);
    const DeformedPoint& pt = (!a.place.inert() && side == Side::unitary) ? *base.right : base.point;
    return build_model(a.place, side, pt, true);
}

FiberModel transposed_model(const FiberModel& model) {
    DeformedPoint t;
    t.point.n = model.point.point.n;
    t.point.z = model.point.point.z;
    for (const auto& x : model.point.point.x) t.point.x.push_back(x.transpose());
    t.e = model.point.edual.transpose();
    t.edual = model.point.e.transpose();
    return build_model(model.place, model.side, t, false);
}

int fiber_bounds(const FiberModel& model) {
    // Krylov(gamma, e) O^n <= Lambda <= U O^n.
    int bound = std::max(0, -model.krylov_inv.min_valuation());
    for (int e : smith_exponents(krylov(model.gamma, model.point.e))) bound = std::max(bound, e);
    return bound;
}

int fiber_bounds(const InvariantPoint& a) { return fiber_bounds(make_fiber_model(a, Side::symmetric)); }

bool validate_fiber_lattice(const FiberModel& model, const Matrix& basis) {
    const int n = model.n();
    const MonoidPoint& mp = model.point.point;
    for (int i = 1; i < n; ++i) {
        Matrix w = wedge_matrix(basis, i);
        if (!(w.inverse() * mp.x[i - 1] * w).is_integral()) return false;
    }
    if (!basis.solve(model.point.e).is_integral()) return false;
    if (!(model.point.edual * basis).is_integral()) return false;
    if (model.twisted()) {
        if (model.side == Side::symmetric) {
            if (!(basis.inverse() * model.cocycle * basis.frobenius()).in_gl_integral()) return false;
        } else if (!is_selfdual_for_inverse_form(basis, model.cocycle.inverse())) {
            return false;
        }
    }
    return true;
}

FiberEnumeration enumerate_fiber(const FiberModel& model, int widen) {
    const int n = model.n();
    const SeriesRing* ring = model.gamma.ring();
    WindowCheck check{model, widen};
    LatticeFilter filter{[&](const Matrix& m, int j) { return check.partial(m, j); },
                         [&](const Matrix& m) { return check.full(m); }, {}};
    if (widen > 0) {
        // In Krylov coordinates the k-th coordinate of v is e^vee gamma^k v,
        // which is integral on every fiber lattice.
        filter.entry = [widen](const Series& value, int, int) { return value.shifted(-widen).is_integral(); };
    }
    FiberEnumeration out;
    out.widen = widen;
    Matrix upper = Matrix::identity(n, ring).shifted(-widen);
    const Matrix& lower = model.gram;
    enumerate_between(
        upper, lower, filter,
        [&](const Matrix& local) {
            LatticeRep lattice = widen > 0 ? hermite_lattice(local.shifted(-widen)) : LatticeRep::from_hnf(local);
            if (!validate_fiber_lattice(model, model.krylov_inv * lattice.basis()))
                throw MembershipFailed("enumerated lattice fails the non-incremental fiber conditions");
            out.points.push_back(make_point(model, lattice));
        },
        &out.stats);
    std::sort(out.points.begin(), out.points.end(),
              [](const FiberPoint& x, const FiberPoint& y) { return x.lattice < y.lattice; });
    return out;
}

std::vector<FiberPoint> enumerate_symmetric(const InvariantPoint& a) {
    return enumerate_fiber(make_fiber_model(a, Side::symmetric)).points;
}

std::vector<FiberPoint> enumerate_unitary(const InvariantPoint& a) {
    return enumerate_fiber(make_fiber_model(a, Side::unitary)).points;
}

int eta_weight(const FiberModel& model, const FiberPoint& fp) {
    return eta_of_valuation(fp.eta_exponent, model.place.kind());
}

namespace {

Coweight recentre_to(const Coweight& lambda, const Coweight& reference) {
    const int n = reference.rank();
    if (lambda.rank() != n) throw StratumOutOfRange("lambda has the wrong rank");
    const long long diff = reference.total() - lambda.total();
    if (diff % n != 0) throw StratumOutOfRange("lambda is not in the adjoint class of the fiber boundary");
    Coweight shifted = lambda;
    for (auto& p : shifted.parts) p += static_cast<int>(diff / n);
    return shifted;
}

}  // namespace

Rational ic_weight(const FiberModel& model, const FiberPoint& fp, const Coweight& lambda) {
    Coweight target = recentre_to(lambda, model.lambda);
    if (!dominance_leq(fp.mu, target))
        throw StratumOutOfRange("mu(Lambda) = " + fp.mu.to_string() + " is not below " + target.to_string());
    return satake_value(target, fp.mu, model.place.q());
}

Rational stalk_weight(const FiberModel& model, const FiberPoint& fp, const Coweight& lambda) {
    Coweight target = recentre_to(lambda, model.lambda);
    if (!dominance_leq(fp.mu, target))
        throw StratumOutOfRange("mu(Lambda) = " + fp.mu.to_string() + " is not below " + target.to_string());
    return evaluate(stalk_polynomial(target, fp.mu), Rational(model.place.q()));
}

FiberPoint involution_star(const FiberModel& model, const FiberPoint& fp) {
    if (model.side != Side::symmetric) throw std::invalid_argument("the involution acts on the symmetric side");
    LatticeRep star = hermite_lattice(model.gram * fp.lattice.basis().inverse().transpose());
    return make_point(model, star);
}

Rational weighted_sum(const FiberModel& model, const std::vector<FiberPoint>& points, const Coweight& lambda,
                      IcNormalization norm) {
    Rational total = 0;
    for (const auto& fp : points) {
        Rational w = norm == IcNormalization::satake ? ic_weight(model, fp, lambda) : stalk_weight(model, fp, lambda);
        if (model.side == Side::symmetric) w *= eta_weight(model, fp);
        total += w;
    }
    return total;
}

CertifiedCount certified_count(const FiberModel& model, const Coweight& lambda, IcNormalization norm) {
    FiberEnumeration base = enumerate_fiber(model, 0);
    CertifiedCount out;
    out.value = weighted_sum(model, base.points, lambda, norm);
    out.points = base.points.size();
    out.bound = fiber_bounds(model);
    out.stats = base.stats;

    // Above the window: the same conditions on a window widened by pi^{-1}.
    FiberEnumeration wide = enumerate_fiber(model, 1);
    bool same = base.points.size() == wide.points.size();
    for (std::size_t k = 0; same && k < base.points.size(); ++k)
        same = base.points[k].lattice == wide.points[k].lattice;
    if (!same || weighted_sum(model, wide.points, lambda, norm) != out.value)
        throw Unstable("fiber changed when the window was widened: " + std::to_string(base.points.size()) + " vs " +
                       std::to_string(wide.points.size()) + " lattices");

    // Below the window: duality exchanges (gamma, e, e^vee) with the
    // transposed data, so lattices below the window correspond to lattices
    // above the transposed window; checked without the Frobenius filter.
    FiberModel dual = transposed_model(model);
    const std::size_t dual_base = enumerate_fiber(dual, 0).points.size();
    const std::size_t dual_wide = enumerate_fiber(dual, 1).points.size();
    if (dual_base != dual_wide)
        throw Unstable("dual fiber changed when the window was widened: " + std::to_string(dual_base) + " vs " +
                       std::to_string(dual_wide) + " lattices");
    return out;
}

Rational weighted_count(const InvariantPoint& a, const Coweight& lambda, Side side, IcNormalization norm) {
    FiberModel model = make_fiber_model(a, side);
    return weighted_sum(model, enumerate_fiber(model).points, lambda, norm);
}

}  // namespace jrfl
