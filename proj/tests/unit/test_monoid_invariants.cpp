#include "doctest.h"

#include "jrfl/errors.hpp"
#include "jrfl/monoid.hpp"
#include "test_support.hpp"

using namespace jrfl;
using namespace jrfl::testing;

namespace {

InvariantCoords random_coords(const SeriesRing* r, int n, CounterRng& rng) {
    InvariantCoords c;
    c.z = random_units(r, n - 1, rng);
    c.a = random_vector(r, n - 1, rng);
    c.b = random_vector(r, n - 1, rng);
    c.b0 = random_series(r, 0, 2, rng);
    return c;
}

bool same(const std::vector<Series>& a, const std::vector<Series>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!a[i].agrees(b[i])) return false;
    return true;
}

// Determinant-one matrix: product of unitriangular factors.
Matrix special_linear(const SeriesRing* r, int n, CounterRng& rng) {
    Matrix lower = Matrix::identity(n, r), upper = Matrix::identity(n, r), lower2 = Matrix::identity(n, r);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < i; ++j) {
            lower(i, j) = random_series(r, 0, 1, rng);
            upper(j, i) = random_series(r, 0, 1, rng);
            lower2(i, j) = random_series(r, 0, 1, rng);
        }
    return lower * upper * lower2;
}

}  // namespace

TEST_CASE("delta scaling exponents") {
    auto ring = make_ring(7, 1, false);
    const SeriesRing* r = ring.get();
    for (int n = 2; n <= 5; ++n)
        for (int i = 1; i <= n - 1; ++i) {
            for (const auto& s : wedge_basis(n, i))
                for (int c : delta_exponents(n, i, s)) CHECK(c >= 0);
            std::vector<int> highest(i);
            for (int k = 0; k < i; ++k) highest[k] = k;
            for (int c : delta_exponents(n, i, highest)) CHECK(c == 0);
        }
    Series z1 = Series::integer(r, 3) + Series::uniformizer_power(r, 1);
    Matrix d = delta_scaling({z1}, 2, 1);
    CHECK(d(0, 0).identical(Series::one(r)));
    CHECK(d(1, 1).identical(z1));
}

TEST_CASE("companion section and its invariants") {
    auto ring = make_ring(7, 1, false);
    const SeriesRing* r = ring.get();
    Series a1 = Series::integer(r, 2), a2 = Series::integer(r, 5);
    Matrix eps = companion_matrix({a1, a2}, 3);
    Series one = Series::one(r), zero(r);
    std::vector<std::vector<Series>> expected{{a1, -a2, one}, {one, zero, zero}, {zero, one, zero}};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) CHECK(eps(i, j).identical(expected[i][j]));

    CounterRng rng(31, 0);
    for (int trial = 0; trial < 300; ++trial) {
        const int n = 2 + trial % 3;
        auto z = random_vector(r, n - 1, rng);
        auto a = random_vector(r, n - 1, rng);
        MonoidPoint m = companion_section(z, a);
        CHECK(same(chi(m), a));
        std::vector<Series> ones(n - 1, Series::one(r));
        CHECK(companion_section(ones, a).x1().identical(companion_matrix(a, n)));
    }
}

TEST_CASE("section for the H-action") {
    auto ring = make_ring(7, 1, false);
    const SeriesRing* r = ring.get();
    CounterRng rng(32, 0);
    for (int trial = 0; trial < 300; ++trial) {
        const int n = 2 + trial % 3;
        auto z = random_vector(r, n - 1, rng);
        auto a1 = random_vector(r, n - 1, rng), a2 = random_vector(r, n - 1, rng);
        MonoidPoint m = section_MH(z, a1, a2);
        auto [first, second] = chi_MH(m);
        CHECK(same(first, a1));
        CHECK(same(second, a2));
        CHECK(same(m.z, z));
        std::vector<Series> zeros(n - 1, Series(r));
        CHECK(section_MH(z, a1, zeros).x1().agrees(companion_section(z, a1).x1()));
    }
    // n = 2: the invariants of [[A, B], [C, D]] are A and D.
    Matrix x = random_matrix(r, 2, 2, rng);
    MonoidPoint m{2, {x.det()}, {x}};
    auto [first, second] = chi_MH(m);
    CHECK(first[0].agrees(x(0, 0)));
    CHECK(second[0].agrees(x(1, 1)));
}

TEST_CASE("n = 3 multiplicative invariants from a torus element and g") {
    auto ring = make_ring(7, 1, false);
    const SeriesRing* r = ring.get();
    CounterRng rng(33, 0);
    for (int trial = 0; trial < 50; ++trial) {
        Series t1 = random_unit(r, 2, rng), t2 = random_unit(r, 2, rng);
        Matrix g = special_linear(r, 3, rng);
        CHECK(g.det().agrees(Series::one(r)));
        MonoidPoint m{3, {t1 / t2, t1 * t2 * t2}, {t1 * g, (t1 * t2) * wedge_matrix(g, 2)}};
        MonoidPoint rebuilt = reconstruct_from_x1(m.z, m.x1());
        CHECK(rebuilt.x[1].agrees(m.x[1]));
        auto [first, second] = chi_MH(m);
        auto A = g(0, 0), B = g(0, 1), C = g(0, 2), D = g(1, 0), E = g(1, 1), F = g(1, 2), G = g(2, 0), H = g(2, 1),
             I = g(2, 2);
        CHECK(first[0].agrees(t1 * (A + E)));
        CHECK(second[0].agrees(t1 * I));
        CHECK(first[1].agrees(t1 * t2 * (A * E - B * D)));
        CHECK(second[1].agrees(t1 * t2 * (A * I - C * G + E * I - F * H)));
    }
}

TEST_CASE("deformed section round trip") {
    auto ring = make_ring(7, 1, false);
    const SeriesRing* r = ring.get();
    CounterRng rng(34, 0);
    for (int trial = 0; trial < 300; ++trial) {
        const int n = 2 + trial % 3;
        InvariantCoords c = random_coords(r, n, rng);
        DeformedPoint m = deformed_section(c);
        InvariantCoords back = deformed_invariants(m);
        CHECK(same(back.z, c.z));
        CHECK(same(back.a, c.a));
        CHECK(same(back.b, c.b));
        CHECK(back.b0.agrees(c.b0));
        if (n == 2) {
            CHECK(m.edual(0, 0).agrees(-c.b[0]));
            CHECK(m.edual(0, 1).agrees(c.b0));
        }
        // Conjugation invariance of all invariants and of the discriminant.
        Matrix g = random_unimodular(r, n, rng);
        Matrix gi = g.inverse();
        DeformedPoint moved = m;
        for (int i = 1; i <= n - 1; ++i)
            moved.point.x[i - 1] = wedge_matrix(g, i) * m.point.x[i - 1] * wedge_matrix(gi, i);
        moved.e = g * m.e;
        moved.edual = m.edual * gi;
        InvariantCoords c2 = deformed_invariants(moved);
        CHECK(same(c2.a, c.a));
        CHECK(same(c2.b, c.b));
        CHECK(c2.b0.agrees(c.b0));
        CHECK(disc(moved).agrees(disc(m)));
    }
    // b = 0, b0 = 1 gives the standard co-vector.
    InvariantCoords c{{Series::one(r)}, {Series::one(r)}, {Series(r)}, Series::one(r)};
    DeformedPoint m = deformed_section(c);
    CHECK(m.edual(0, 0).is_exact_zero());
    CHECK(m.edual(0, 1).identical(Series::one(r)));
}

TEST_CASE("pure tensors") {
    auto ring = make_ring(7, 1, false);
    const SeriesRing* r = ring.get();
    Series pi = Series::uniformizer_power(r, 1), one = Series::one(r), zero(r);
    DeformedPoint m;
    Matrix x1(2, 2, r);
    x1(0, 1) = pi;
    x1(1, 0) = one;
    m.point = MonoidPoint{2, {-pi}, {x1}};
    m.e = Matrix::column({zero, one});
    m.edual = Matrix::row({zero, one});
    PureTensors pt = pure_tensors(m);
    CHECK(pt.f[0](0, 0).identical(pi));
    CHECK(pt.f[0](1, 0).is_exact_zero());
    CHECK(pt.f[1](0, 0).identical(-pi));

    CounterRng rng(35, 0);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 2 + trial % 3;
        DeformedPoint d = deformed_section(random_coords(r, n, rng));
        Matrix g = random_unimodular(r, n, rng);
        d.e = g * d.e;
        PureTensors p = pure_tensors(d);
        for (int i = 1; i <= n - 1; ++i) {
            if (p.f[i - 1].min_valuation() < kInfinitePrec) CHECK(wedge_kernel_dimension(p.f[i - 1], n, i) == i);
            if (p.fdual[i - 1].min_valuation() < kInfinitePrec)
                CHECK(covector_wedge_kernel_dimension(p.fdual[i - 1], n, i) == i);
        }
    }
}

TEST_CASE("discriminant against the Krylov Gram determinant") {
    auto ring = make_ring(7, 1, false);
    const SeriesRing* r = ring.get();
    // n = 2, x_1 = [[0, pi], [1, 0]], standard e_1 pair: valuation 1.
    Series pi = Series::uniformizer_power(r, 1), one = Series::one(r), zero(r);
    Matrix x1(2, 2, r);
    x1(0, 1) = pi;
    x1(1, 0) = one;
    DeformedPoint m{MonoidPoint{2, {-pi}, {x1}}, Matrix::column({one, zero}), Matrix::row({one, zero})};
    CHECK(disc(m).valuation() == 1);

    CounterRng rng(36, 0);
    for (int trial = 0; trial < 100; ++trial) {
        const int n = 2 + trial % 3;
        InvariantCoords c = random_coords(r, n, rng);
        c.z.assign(n - 1, Series::one(r));
        DeformedPoint d = deformed_section(c);
        Matrix gram(n, n, r);
        std::vector<Matrix> powers{Matrix::identity(n, r)};
        for (int k = 1; k <= 2 * n - 2; ++k) powers.push_back(powers.back() * d.point.x1());
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) gram(i, j) = (d.edual * powers[i + j] * d.e)(0, 0);
        Series expected = (n * (n - 1) / 2) % 2 ? -gram.det() : gram.det();
        CHECK(disc(d).agrees(expected));
    }
}

TEST_CASE("involutions") {
    auto ring = make_ring(7, 1, false);
    const SeriesRing* r = ring.get();
    CounterRng rng(37, 0);
    Matrix x = random_unimodular(r, 2, rng);
    MonoidPoint m{2, {x.det()}, {x}};
    Matrix flipped = involution_iota(m).x1();
    CHECK(flipped(0, 0).agrees(x(1, 1)));
    CHECK(flipped(0, 1).agrees(-x(0, 1)));
    CHECK(flipped(1, 0).agrees(-x(1, 0)));
    CHECK(flipped(1, 1).agrees(x(0, 0)));

    for (int trial = 0; trial < 150; ++trial) {
        const int n = 2 + trial % 3;
        auto z = random_units(r, n - 1, rng);
        auto a = random_vector(r, n - 1, rng);
        a[0] = Series::one(r) + a[0].shifted(1);
        MonoidPoint p = companion_section(z, a);
        Matrix g = random_unimodular(r, n, rng);
        Matrix gi = g.inverse();
        for (int i = 1; i <= n - 1; ++i) p.x[i - 1] = wedge_matrix(g, i) * p.x[i - 1] * wedge_matrix(gi, i);
        for (auto* inv : {&involution_iota, &involution_tau}) {
            MonoidPoint twice = (*inv)((*inv)(p));
            for (int i = 0; i < n - 1; ++i) CHECK(twice.x[i].agrees(p.x[i]));
        }
        // Invariants of iota(p) from the characteristic polynomial:
        // eigenvalues Z / t, Z = prod z_j.
        auto c = charpoly_coefficients(z, a);
        Series total = Series::one(r);
        for (const auto& zi : z) total = total * zi;
        std::vector<Series> zf(z.rbegin(), z.rend());
        auto flipped_a = chi(involution_iota(p));
        for (int i = 1; i <= n - 1; ++i) {
            Series ci = c[n - i - 1];
            for (int k = 0; k < i; ++k) ci = ci * total;
            ci = ci / c[n - 1];
            Series factor = Series::one(r);
            for (int j = 1; j < i; ++j)
                for (int k = 0; k < i - j; ++k) factor = factor * zf[j - 1];
            CHECK(flipped_a[i - 1].agrees(ci / factor));
        }
    }
}

TEST_CASE("twisted invariant space") {
    PlaceData inert(5, 1, 2, PlaceKind::inert, 12);
    PlaceData split(5, 1, 2, PlaceKind::split, 12);
    CounterRng rng(38, 0);
    TwistedConstraints k;
    k.require_srs = true;
    int count = 0;
    for (int trial = 0; trial < 500; ++trial) {
        CounterRng local(38, static_cast<std::uint64_t>(trial));
        InvariantPoint a = random_twisted(trial % 2 ? inert : split, k, local);
        CHECK(check_twisted(a));
        CHECK(a.srs);
        ++count;
    }
    CHECK(count == 500);

    InvariantPoint a = random_twisted(inert, k, rng);
    const FiniteField& f = inert.cover_residue_field();
    Elem outside = imaginary_unit(f);
    a.coords.z[0] = a.coords.z[0] + Series::constant(inert.cover_ring(), outside);
    CHECK_FALSE(check_twisted(a));

    PlaceData inert3(7, 1, 3, PlaceKind::inert, 12);
    for (int trial = 0; trial < 50; ++trial) {
        CounterRng local(39, static_cast<std::uint64_t>(trial));
        InvariantPoint b = random_twisted(inert3, k, local);
        CHECK(check_twisted(b));
        CHECK(b.coords.b0.coefficients_in_base());
    }
}
