#include "doctest.h"
#include "test_util.hpp"

#include "nmcr/blowup.hpp"
#include "nmcr/solver.hpp"

using namespace nmcr;
using namespace testutil;

namespace {

const int EXACT = 1 << 20;
const std::vector<std::string> ZW{"z", "w"};
const std::vector<std::string> XE{"xi", "eta"};
const std::vector<std::string> CV{"z", "zb", "wb"};
const std::vector<std::string> XS{"xi", "xib", "etab"};

MultiSeries zw(int i, int j, const Gq &c = Gq(1)) { return MultiSeries::monomial(ZW, EXACT, {i, j}, c); }
MultiSeries none() { return MultiSeries(ZW, EXACT); }
LaurentInW xe(int i, int j, const Gq &c = Gq(1)) {
    return LaurentInW(MultiSeries::monomial(XE, EXACT, {i, std::max(j, 0)}, c), std::max(-j, 0), "eta");
}

ComplexDefining model(int m, int order) { return ComplexDefining{m, 1, MultiSeries::monomial(CV, order, {1, 1, 0})}; }

MultiSeries polynomial(std::mt19937 &rng, int degree, int terms) {
    MultiSeries s = random_series(rng, ZW, degree, terms);
    return s.with_order(EXACT);
}

PulledField bracket(const PulledField &a, const PulledField &b) {
    auto D = [](const LaurentInW &x, const char *v) { return x.derivative(v); };
    PulledField r;
    r.P = a.P * D(b.P, "xi") + a.Q * D(b.P, "eta") - b.P * D(a.P, "xi") - b.Q * D(a.P, "eta");
    r.Q = a.P * D(b.Q, "xi") + a.Q * D(b.Q, "eta") - b.P * D(a.Q, "xi") - b.Q * D(a.Q, "eta");
    return r;
}

} // namespace

TEST_CASE("monomial pullback") {
    auto p = pullback_series(zw(2, 1), {2, 2});
    CHECK(p == MultiSeries::monomial(XE, EXACT, {2, 6}));
    CHECK_THROWS_AS(pullback_series(zw(2, 1), {0, 2}), std::invalid_argument);
    CHECK_THROWS_AS(pullback_series(zw(2, 1), {2, 0}), std::invalid_argument);
    // truncated data: z^a w^b with a + b > n maps to degree > 2n + 1 for s = l = 2
    CHECK(pullback_series(zw(1, 1).with_order(5), {2, 2}).order() == 11);
}

TEST_CASE("pullback of simple fields") {
    BlowupMap B{2, 2};
    auto L = pullback_field({none(), zw(0, 1)}, B);
    CHECK((L.P - xe(1, 0, Gq(-1))).is_zero());
    CHECK((L.Q - xe(0, 1, Gq(1, 2))).is_zero());
    L = pullback_field({zw(1, 0), none()}, B);
    CHECK((L.P - xe(1, 0)).is_zero());
    CHECK(L.Q.is_zero());
    L = pullback_field({zw(1, 0, Gq::i()), none()}, B);
    CHECK((L.P - xe(1, 0, Gq::i())).is_zero());
    CHECK_THROWS_AS(pullback_field({zw(1, 0), none()}, {2, 3}), std::invalid_argument);
}

TEST_CASE("pushforward") {
    BlowupMap B{2, 2};
    VectorField wdw{none(), zw(0, 1)};
    auto back = pushforward_field(pullback_field(wdw, B), B);
    CHECK(back.P == wdw.P);
    CHECK(back.Q == wdw.Q);

    try {
        pushforward_field(xe(1, 1), LaurentInW(MultiSeries(XE, EXACT), 0, "eta"), B);
        FAIL("expected a divisibility error");
    } catch (const DivisibilityError &e) {
        CHECK(e.j == 1);
    }
    // pole left over in the composite
    CHECK_THROWS_AS(pushforward_field(xe(0, -3), LaurentInW(MultiSeries(XE, EXACT), 0, "eta"), B),
                    DivisibilityError);
}

TEST_CASE("field roundtrip on random polynomial fields") {
    std::mt19937 rng(9);
    for (int t = 0; t < 10; ++t) {
        BlowupMap B{2 + t % 2, 2};
        VectorField L{polynomial(rng, 6, 6), polynomial(rng, 6, 6)};
        auto back = pushforward_field(pullback_field(L, B), B);
        CHECK(back.P == L.P);
        CHECK(back.Q == L.Q);
    }
}

TEST_CASE("pullback preserves brackets") {
    std::mt19937 rng(10);
    for (int t = 0; t < 6; ++t) {
        BlowupMap B{2 + t % 2, 2};
        VectorField a{polynomial(rng, 4, 4), polynomial(rng, 4, 4)}, b{polynomial(rng, 4, 4), polynomial(rng, 4, 4)};
        auto lhs = pullback_field(lie_bracket(a, b), B);
        auto rhs = bracket(pullback_field(a, B), pullback_field(b, B));
        CHECK((lhs.P - rhs.P).is_zero());
        CHECK((lhs.Q - rhs.Q).is_zero());
    }
}

TEST_CASE("pulled-back surfaces") {
    for (int m = 1; m <= 2; ++m) {
        RealDefining R;
        R.m = m;
        R.psi = MultiSeries::monomial({"z", "zb", "u"}, 3 * m + 3, {1, 1, 0});
        auto C = real_to_complex(R, 3 * m + 3).surface;
        for (int s = 2; s <= 3; ++s) {
            BlowupMap B{s, 2};
            int K = 2 + 2 * s + 2 * (m - 1) + 3;
            auto P = pullback_surface(C, B, K);
            CHECK(P.normal_shape);
            // eta^l = R(xi eta^s, xib etab^s, etab^l) with eta = R*
            MultiSeries Rs = P.R;
            MultiSeries xi = MultiSeries::variable(XS, EXACT, "xi"), xib = MultiSeries::variable(XS, EXACT, "xib"),
                        etab = MultiSeries::variable(XS, EXACT, "etab");
            MultiSeries lhs = pow(Rs, B.l);
            MultiSeries rhs = compose(C.defining_function(),
                                      {{"z", mul(xi, pow(Rs, s))}, {"zb", mul(xib, pow(etab, s))}, {"wb", pow(etab, 2)}})
                                  .with_vars(XS);
            int o = std::min({lhs.order(), rhs.order(), K});
            CAPTURE(m);
            CAPTURE(s);
            CHECK((lhs - rhs).truncate(o).is_zero());
        }
    }
    CHECK_THROWS_AS(pullback_surface(model(1, 8), {2, 2}, 4), OrderTooLow);
}

TEST_CASE("blow-up exponent search") {
    auto M = model(1, 10);
    std::vector<BlowupScanEntry> scan;
    auto c = find_blowup_exponent(M, 6, 10, &scan);
    REQUIRE(c.has_value());
    // scan oracle: first s whose pulled-back xi xib coefficient is nonzero
    int expect = -1;
    for (int s = 2; s <= 6 && expect < 0; ++s) {
        try {
            auto P = pullback_surface(M, {s, 2}, 10);
            if (!P.psi.extract("xi", 1).extract("xib", 1).is_zero()) expect = s;
        } catch (const OrderTooLow &) {
        }
    }
    CHECK(c->s == expect);
    CHECK(c->s == 2);
    CHECK(c->surface.normal_shape);
    CHECK(!c->surface.psi.extract("xi", 1).extract("xib", 1).is_zero());
    CHECK(scan.back().levi_valuation >= 0);
    CHECK_FALSE(find_blowup_exponent(M, 1, 10).has_value());
    // working order too low for every s
    std::vector<BlowupScanEntry> low;
    CHECK_FALSE(find_blowup_exponent(M, 4, 5, &low).has_value());
    CHECK(low.size() == 3);
}
