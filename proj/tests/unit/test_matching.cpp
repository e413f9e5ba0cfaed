#include <set>

#include "doctest.h"
#include "jrfl/errors.hpp"
#include "jrfl/matching.hpp"
#include "test_support.hpp"

using namespace jrfl;
using jrfl::testing::random_matrix;
using jrfl::testing::random_unimodular;

namespace {

InvariantPoint sample_srs(const PlaceData& place, CounterRng& rng, int max_disc = 4) {
    TwistedConstraints k;
    k.max_val_disc = max_disc;
    return random_twisted(place, k, rng);
}

Matrix adjoint_conjugate(const Matrix& m) { return m.frobenius().transpose(); }

// Random element of S_n: g sigma(g)^{-1}.
Matrix random_symmetric_space_element(const PlaceData& place, CounterRng& rng, int degree = 2) {
    const SeriesRing* ring = place.cover_ring();
    for (;;) {
        Matrix g = random_matrix(ring, place.n(), place.n(), rng, degree);
        Series d = g.det();
        if (d.known_zero()) continue;
        return g * g.frobenius().inverse();
    }
}

}  // namespace

TEST_CASE("cocycles satisfy s sbar = 1, h hermitian, and the parity link") {
    for (int n : {2, 3}) {
        PlaceData place(7, 1, n, PlaceKind::inert, 30);
        const SeriesRing* ring = place.cover_ring();
        CounterRng rng(11 + n, 0);
        std::set<int> parities;
        for (int trial = 0; trial < 30; ++trial) {
            InvariantPoint a = sample_srs(place, rng);
            BasePoint base = lift_basepoint(a);
            Matrix s = solve_cocycle(base, Side::symmetric);
            Matrix h = solve_cocycle(base, Side::unitary);
            CHECK((s * s.frobenius()).agrees(Matrix::identity(n, ring)));
            CHECK(h.agrees(adjoint_conjugate(h)));
            Series dh = h.det();
            REQUIRE(!dh.known_zero());
            CHECK((dh.valuation() - a.val_disc) % 2 == 0);
            parities.insert(a.val_disc % 2);
        }
        CHECK(parities.size() == 2);
    }
}

TEST_CASE("split cocycles are trivial") {
    PlaceData place(5, 1, 2, PlaceKind::split, 20);
    CounterRng rng(3, 0);
    InvariantPoint a = sample_srs(place, rng);
    CHECK(solve_cocycle(a, Side::symmetric).agrees(Matrix::identity(2, place.cover_ring())));
    CHECK(obstruction(a) == Obstruction::trivial);
}

TEST_CASE("involution element relation with the symmetric cocycle") {
    for (int n : {2, 3}) {
        PlaceData place(7, 1, n, PlaceKind::inert, 30);
        CounterRng rng(21 + n, 0);
        for (int trial = 0; trial < 20; ++trial) {
            InvariantPoint a = sample_srs(place, rng);
            BasePoint base = lift_basepoint(a);
            Matrix s = solve_cocycle(base, Side::symmetric);
            Matrix d = involution_element(base);
            Matrix lhs = s.transpose().inverse();
            CHECK(lhs.agrees(d * s * d.frobenius().inverse()));
        }
    }
}

TEST_CASE("involution element is identity for symmetric data") {
    PlaceData place(5, 1, 2, PlaceKind::inert, 20);
    const SeriesRing* ring = place.cover_ring();
    Matrix x(2, 2, ring);
    x(0, 0) = Series::integer(ring, 2);
    x(0, 1) = Series::integer(ring, 1);
    x(1, 0) = Series::integer(ring, 1);
    x(1, 1) = Series::uniformizer_power(ring, 1);
    Matrix e(2, 1, ring), edual(1, 2, ring);
    e(1, 0) = Series::one(ring);
    edual(0, 1) = Series::one(ring);
    BasePoint base{DeformedPoint{reconstruct_from_x1({x.det()}, x), e, edual}, std::nullopt};
    CHECK(involution_element(base).agrees(Matrix::identity(2, ring)));
}

TEST_CASE("newton slopes") {
    PlaceData place(5, 1, 2, PlaceKind::inert, 20);
    const SeriesRing* ring = place.base_ring();
    Series pi = Series::uniformizer_power(ring, 1);
    Series one = Series::one(ring);
    // (t - 1)(t - pi)
    auto slopes = newton_slopes({one, -(one + pi), pi});
    CHECK(slopes == std::vector<Rational>{Rational(1, 2), Rational(-1, 2)});
    // unit roots
    slopes = newton_slopes({one, Series::integer(ring, 3), Series::integer(ring, 1)});
    CHECK(slopes == std::vector<Rational>{0, 0});
    // t^3 - pi: all roots of valuation 1/3 -> recentred zero
    slopes = newton_slopes({one, Series::zero(ring), Series::zero(ring), -pi});
    CHECK(slopes == std::vector<Rational>{0, 0, 0});
    // (t - 1)(t - pi)(t - pi^3)
    Series pi3 = Series::uniformizer_power(ring, 3);
    auto p1 = one + pi + pi3, p2 = pi + pi3 + pi * pi3, p3 = pi * pi3;
    slopes = newton_slopes({one, -p1, p2, -p3});
    CHECK(slopes == std::vector<Rational>{Rational(5, 3), Rational(-1, 3), Rational(-4, 3)});
}

TEST_CASE("group invariants of w0 and conjugation invariance") {
    PlaceData place(5, 1, 2, PlaceKind::inert, 20);
    const SeriesRing* ring = place.cover_ring();
    // q = 5: sqrt(-1) lies in F_5, so sigma fixes it.
    Series i = Series::integer(ring, 2);
    CHECK((i * i).agrees(Series::integer(ring, -1)));
    Matrix w0(2, 2, ring);
    w0(0, 1) = -i;
    w0(1, 0) = i;
    GroupInvariants g = group_invariants(place, w0);
    // det = sqrt(-1)^2 = -1; moments e^vee A^k e = 1, 0, 1 give Disc = 1.
    CHECK(g.det.agrees(Series::integer(ring, -1)));
    CHECK(g.disc.agrees(Series::one(ring)));
    CHECK(g.disc_n.agrees(-g.disc));
    CHECK(cartan_invariant(place, w0, CartanGroup::symmetric_space).parts == std::vector<int>{0, 0});

    Matrix not_in = Series::integer(ring, 2) * Matrix::identity(2, ring);
    CHECK_THROWS_AS(group_invariants(place, not_in), NotInSymmetricSpace);

    CounterRng rng(5, 0);
    for (int trial = 0; trial < 50; ++trial) {
        Matrix A = random_symmetric_space_element(place, rng);
        GroupInvariants base = group_invariants(place, A);
        Matrix k = random_unimodular(ring, 2, rng);
        Matrix B = k.inverse() * A * k.frobenius();
        CHECK(cartan_invariant(place, B, CartanGroup::symmetric_space).parts ==
              cartan_invariant(place, A, CartanGroup::symmetric_space).parts);
        // H = GL_1(O_v) acting by conjugation fixes e and e^vee up to inverse scalars.
        Matrix h = Matrix::identity(2, ring);
        h(0, 0) = random_unit(ring, 2, rng, 0, true);
        GroupInvariants moved = group_invariants(place, h.inverse() * A * h);
        CHECK(moved.det.agrees(base.det));
        CHECK(moved.a[0].agrees(base.a[0]));
        CHECK(moved.b[0].agrees(base.b[0]));
        CHECK(moved.disc.agrees(base.disc));
        if (!base.disc.known_zero()) CHECK((base.disc.valuation() - base.disc_n.valuation()) % 2 == 0);
    }
}

TEST_CASE("transfer factor on n = 2") {
    PlaceData place(5, 1, 2, PlaceKind::inert, 20);
    const SeriesRing* ring = place.cover_ring();
    CounterRng rng(8, 0);
    int seen_minus = 0;
    for (int trial = 0; trial < 60; ++trial) {
        Matrix A = random_symmetric_space_element(place, rng);
        if (A(1, 0).known_zero()) continue;
        int expected = A(1, 0).valuation() % 2 == 0 ? 1 : -1;
        CHECK(transfer_factor(place, A) == expected);
        seen_minus += expected < 0;
    }
    CHECK(seen_minus > 0);
    PlaceData split(5, 1, 2, PlaceKind::split, 20);
    CHECK(transfer_factor(split, Matrix::identity(2, split.cover_ring())) == 1);
    (void)ring;
}

TEST_CASE("lift to the monoid: boundary and parity link") {
    PlaceData place(5, 1, 2, PlaceKind::inert, 24);
    CounterRng rng(9, 0);
    int lifted = 0;
    for (int trial = 0; trial < 100 && lifted < 40; ++trial) {
        Matrix A = random_symmetric_space_element(place, rng);
        GroupInvariants g = group_invariants(place, A);
        if (!g.srs) continue;
        Coweight lambda = cartan_invariant(place, A, CartanGroup::symmetric_space);
        InvariantPoint a = lift_to_monoid(place, A, lambda);
        CHECK(check_twisted(a));
        CHECK(boundary_coweight(a).root_pairings() == lambda.root_pairings());
        CHECK((a.val_disc - g.disc_n.valuation()) % 2 == 0);
        ++lifted;
    }
    CHECK(lifted >= 20);
}
