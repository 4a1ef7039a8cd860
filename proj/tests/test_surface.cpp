#include "doctest.h"
#include "test_util.hpp"

#include "nmcr/surface.hpp"

using namespace nmcr;
using namespace testutil;

namespace {

const std::vector<std::string> RV{"z", "zb", "u"};
const std::vector<std::string> CV{"z", "zb", "wb"};

// (R - wb)/2i - u^m psi(z, zb, (R + wb)/2) for R = wb exp(eps i wb^(m-1) phi)
MultiSeries transfer_residual(const RealDefining &M, const MultiSeries &phi) {
    ComplexDefining C{M.m, M.sign, phi};
    MultiSeries R = C.defining_function();
    MultiSeries wb = var(CV, R.order(), "wb");
    MultiSeries F = M.psi.with_vars(RV).truncate(phi.order()).mul_monomial("u", M.m);
    MultiSeries lhs = (R - wb).scale((Gq(2) * Gq::i()).inverse());
    MultiSeries rhs = compose(F, {{"u", (R + wb).scale(Gq(1, 2))}}).rename({}).with_vars(CV);
    return (lhs - rhs).truncate(std::min(lhs.order(), rhs.order()));
}

RealDefining zz_surface(int m, int order) {
    RealDefining M;
    M.m = m;
    M.psi = MultiSeries::monomial(RV, order, {1, 1, 0});
    return M;
}

} // namespace

TEST_CASE("normalizing scale") {
    CHECK(normalizing_scale(mpq_class(2)) == Gq(1, 1) + Gq::i());
    CHECK(normalizing_scale(mpq_class(1, 2)) == Gq(mpq_class(1, 2), mpq_class(-1, 2)));
    CHECK(normalizing_scale(mpq_class(1)) == Gq(1));
    CHECK(normalizing_scale(mpq_class(25, 4)).norm2() == mpq_class(25, 4));
    CHECK_THROWS_AS(normalizing_scale(mpq_class(3)), NonNormalizable);
    CHECK_THROWS_AS(normalizing_scale(mpq_class(-1)), NonNormalizable);
}

TEST_CASE("real to complex for v = u z zb") {
    auto t = real_to_complex(zz_surface(1, 8), 8);
    // w = wb (1 + i z zb)/(1 - i z zb), so phi = 2 arctan(z zb)
    MultiSeries expect(CV, 8);
    expect.set({1, 1, 0}, Gq(2));
    expect.set({3, 3, 0}, Gq(-2, 3));
    CHECK(t.raw_phi == expect);
    CHECK(t.lambda == Gq(mpq_class(1, 2), mpq_class(-1, 2)));
    MultiSeries norm(CV, 8);
    norm.set({1, 1, 0}, Gq(1));
    norm.set({3, 3, 0}, Gq(-1, 12));
    CHECK(t.surface.phi == norm);
    CHECK(transfer_residual(zz_surface(1, 8), t.raw_phi).is_zero());
}

TEST_CASE("real to complex for v = u^m z zb matches elimination") {
    for (int m = 1; m <= 3; ++m) {
        for (int sign : {1, -1}) {
            auto M = zz_surface(m, 3 * m + 2);
            M.sign = sign;
            M.psi = M.psi.scale(Gq(long(sign)));
            auto t = real_to_complex(M, 3 * m + 2);
            CHECK(transfer_residual(M, t.raw_phi).is_zero());
            CHECK(t.surface.phi.coeff(Exponent{1, 1, 0}) == Gq(1));
            // pure z zb chain
            for (auto &[e, c] : t.raw_phi.terms()) CHECK(e[0] == e[1]);
        }
    }
}

TEST_CASE("complex to real") {
    ComplexDefining C{1, 1, MultiSeries::monomial(CV, 6, {1, 1, 0})};
    auto M = complex_to_real(C, 6);
    M.check();
    CHECK(M.psi.coeff(Exponent{1, 1, 0}) == Gq(1, 2));
    CHECK(transfer_residual(M, C.phi).is_zero());

    // phi_22 = wb gives h_22 vanishing to the same order
    C.phi.set({2, 2, 1}, Gq(1));
    M = complex_to_real(C, 6);
    CHECK(M.h(2, 2).valuation() == 1);
    CHECK(transfer_residual(M, C.phi).is_zero());
}

TEST_CASE("check reality") {
    ComplexDefining C{1, 1, MultiSeries::monomial(CV, 6, {1, 1, 0})};
    CHECK(check_reality(C).is_zero());
    C.phi = C.phi.scale(Gq::i());
    auto r = check_reality(C);
    CHECK(r.coeff(Exponent{1, 1, 0}) == Gq(mpq_class(0), mpq_class(2)));
    CHECK_FALSE(validate(C).ok());

    ComplexDefining D{1, -1, MultiSeries::monomial(CV, 8, {1, 1, 0})};
    D.phi.set({2, 2, 0}, Gq(3));
    D.phi.set({3, 3, 0}, Gq(-1, 5));
    CHECK(check_reality(D).is_zero());
}

TEST_CASE("validate flags") {
    ComplexDefining C{1, 1, MultiSeries::monomial(CV, 6, {1, 1, 0})};
    CHECK(validate(C).ok());
    C.phi.set({1, 2, 0}, Gq(1));
    CHECK_FALSE(validate(C).admissible);
    C.phi.set({2, 0, 0}, Gq(1));
    CHECK_FALSE(validate(C).normal_coordinates);
}

TEST_CASE("nonminimality order") {
    CHECK(nonminimality_order(MultiSeries::monomial(RV, 6, {1, 1, 2})) == 2);
    MultiSeries F = MultiSeries::monomial(RV, 8, {1, 1, 1}) + MultiSeries::monomial(RV, 8, {2, 2, 3});
    CHECK(nonminimality_order(F) == 1);
    CHECK_THROWS(nonminimality_order(MultiSeries::monomial(RV, 6, {1, 1, 0})));
    CHECK_THROWS(nonminimality_order(MultiSeries(RV, 6)));
}

TEST_CASE("nonminimality order is invariant under units") {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 30; ++trial) {
        int m = 1 + trial % 3;
        MultiSeries psi = MultiSeries::monomial(RV, 10, {1, 1, 0}) + random_series(rng, RV, 10, 4, false).mul_monomial("z", 1).mul_monomial("zb", 1);
        MultiSeries unit = cst(RV, 10, Gq(1 + trial)) + random_series(rng, RV, 10, 5, false);
        CHECK(nonminimality_order(mul(psi, unit).mul_monomial("u", m)) == m);
    }
}

TEST_CASE("random surfaces are real and survive the round trip") {
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 12; ++trial) {
        int m = 1 + trial % 3, sign = trial % 2 ? -1 : 1, N = 3 * m + 2;
        auto M = random_real_surface(rng, m, sign, N, FuchsKind::any);
        M.check();
        auto t = real_to_complex(M, N);
        CHECK(transfer_residual(M, t.raw_phi).is_zero());
        CHECK(check_reality(t.surface).is_zero());
        CHECK(validate(t.surface).ok());
        auto back = complex_to_real(t.surface, N);
        CHECK(back.psi == rescale_z(M.psi.with_vars(RV), t.lambda));
        auto again = real_to_complex(back, N);
        CHECK(again.lambda == Gq(1));
        CHECK(again.surface.phi == t.surface.phi);
    }
}
