#include "doctest.h"
#include "test_util.hpp"

#include "nmcr/solver.hpp"

using namespace nmcr;
using namespace testutil;

namespace {

const std::vector<std::string> ZW{"z", "w"};
const std::vector<std::string> CV{"z", "zb", "wb"};

QMatrix mat(std::vector<std::vector<Gq>> rows) {
    QMatrix a(rows.size(), rows[0].size());
    for (size_t i = 0; i < rows.size(); ++i)
        for (size_t j = 0; j < rows[i].size(); ++j) a(i, j) = rows[i][j];
    return a;
}

MultiSeries zw(int i, int j, const Gq &c = Gq(1), int order = 12) { return MultiSeries::monomial(ZW, order, {i, j}, c); }
MultiSeries none(int order = 12) { return MultiSeries(ZW, order); }

ComplexDefining model(int m, int order) { return ComplexDefining{m, 1, MultiSeries::monomial(CV, order, {1, 1, 0})}; }

// Dimension of the solution space of all truncated equations k y_k = sum_j A_j y_{k-j}, k <= K.
size_t brute_force_dimension(const std::vector<QMatrix> &A, int K) {
    size_t n = A[0].rows();
    QMatrix big(n * (K + 1), n * (K + 1));
    for (int k = 0; k <= K; ++k)
        for (size_t i = 0; i < n; ++i) {
            size_t r = k * n + i;
            big(r, k * n + i) = big(r, k * n + i) + Gq(k);
            for (int j = 0; j <= k && j < int(A.size()); ++j)
                for (size_t l = 0; l < n; ++l) big(r, (k - j) * n + l) = big(r, (k - j) * n + l) - A[j](i, l);
        }
    return big.nullspace().cols();
}

std::vector<QMatrix> random_system(std::mt19937 &rng, size_t n, int terms) {
    std::uniform_int_distribution<int> diag(-1, 2), coin(0, 2);
    std::vector<QMatrix> A(terms, QMatrix(n, n));
    for (size_t i = 0; i < n; ++i) {
        A[0](i, i) = Gq(diag(rng));
        for (size_t j = i + 1; j < n; ++j)
            if (coin(rng)) A[0](i, j) = random_gq(rng, 2, false);
    }
    for (int t = 1; t < terms; ++t)
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j)
                if (!coin(rng)) A[t](i, j) = random_gq(rng, 2);
    return A;
}

bool is_solution(const std::vector<QMatrix> &A, const std::vector<MultiSeries> &y) {
    for (auto &r : system_residual(A, y))
        if (!r.is_zero()) return false;
    return true;
}

VectorField field(const MultiSeries &P, const MultiSeries &Q) { return {P, Q}; }

} // namespace

TEST_CASE("residue spectrum") {
    auto s = residue_spectrum(mat({{0, 0}, {0, 1}}));
    REQUIRE(s.rational_eigenvalues.size() == 2);
    CHECK(s.rational_eigenvalues[0] == std::pair<Gq, int>(Gq(0), 1));
    CHECK(s.rational_eigenvalues[1] == std::pair<Gq, int>(Gq(1), 1));
    REQUIRE(s.resonances.size() == 1);
    CHECK(s.resonances[0] == std::pair<Gq, Gq>(Gq(0), Gq(1)));

    s = residue_spectrum(mat({{0, 0}, {0, Gq(1, 2)}}));
    CHECK(s.rational_eigenvalues.size() == 2);
    CHECK(s.resonances.empty());

    s = residue_spectrum(mat({{0, 1}, {0, 0}}));
    REQUIRE(s.rational_eigenvalues.size() == 1);
    CHECK(s.rational_eigenvalues[0].second == 2);
    CHECK(s.charpoly == QPoly{Gq(0), Gq(0), Gq(1)});

    // x^2 - 2 has no rational roots
    s = residue_spectrum(mat({{0, 2}, {1, 0}}));
    CHECK(s.rational_eigenvalues.empty());
    CHECK(s.nonrational_degree == 2);

    // x^2 + 1: roots +-i are not rational
    s = residue_spectrum(mat({{0, -1}, {1, 0}}));
    CHECK(s.nonrational_degree == 2);
}

TEST_CASE("residue spectrum of conjugated triangular matrices") {
    std::mt19937 rng(4);
    std::uniform_int_distribution<int> num(-6, 6), den(1, 4);
    for (int t = 0; t < 20; ++t) {
        size_t n = 2 + t % 4;
        QMatrix T(n, n), U = QMatrix::identity(n);
        std::map<mpq_class, int> expect;
        for (size_t i = 0; i < n; ++i) {
            mpq_class d(num(rng), den(rng));
            d.canonicalize();
            T(i, i) = Gq(d);
            expect[d] += 1;
            for (size_t j = i + 1; j < n; ++j) {
                T(i, j) = random_gq(rng, 3);
                U(i, j) = Gq(num(rng));
            }
        }
        QMatrix A = U.transpose() * T * U.transpose().inverse();
        auto s = residue_spectrum(A);
        CHECK(s.nonrational_degree == 0);
        std::map<mpq_class, int> got;
        for (auto &[r, k] : s.rational_eigenvalues) {
            CHECK(r.is_real());
            CHECK(poly_eval(s.charpoly, r).is_zero());
            got[r.re] = k;
        }
        CHECK(got == expect);
    }
}

TEST_CASE("holomorphic solutions of constant systems") {
    auto H = holomorphic_solutions(std::vector<QMatrix>{mat({{0, 0}, {0, 1}})}, 6);
    REQUIRE(H.dimension() == 2);
    MultiSeries w = MultiSeries::monomial({"w"}, 6, {1});
    MultiSeries one = MultiSeries::constant({"w"}, 6, Gq(1));
    // basis {(1, 0), (0, w)}
    CHECK(H.solutions[0][0] == one);
    CHECK(H.solutions[0][1].is_zero());
    CHECK(H.solutions[1][0].is_zero());
    CHECK(H.solutions[1][1] == w);

    H = holomorphic_solutions(std::vector<QMatrix>{mat({{0, 0}, {0, -1}})}, 6);
    REQUIRE(H.dimension() == 1);
    CHECK(H.solutions[0][0] == one);
    CHECK(H.solutions[0][1].is_zero());

    // eigenvalues {0, 2}; the kernel at k = 2 adds a parameter without obstruction
    std::vector<QMatrix> A{mat({{0, 0}, {1, 2}})};
    for (int K = 1; K <= 6; ++K) {
        H = holomorphic_solutions(A, K);
        CHECK(H.dimension() == brute_force_dimension(A, K));
        for (auto &y : H.solutions) CHECK(is_solution(A, y));
    }
    CHECK(holomorphic_solutions(A, 6).dimension() == 2);
    CHECK(holomorphic_solutions(A, 6).obstructions.empty());

    // diag(0, 1) with coupling: the resonant step at k = 1 forces y_1(0) = 0
    std::vector<QMatrix> B{mat({{0, 0}, {0, 1}}), mat({{0, 0}, {1, 0}})};
    H = holomorphic_solutions(B, 6);
    CHECK(H.dimension() == brute_force_dimension(B, 6));
    CHECK(H.dimension() == 1);
    REQUIRE(H.obstructions.size() == 1);
    CHECK(H.obstructions[0].k == 1);
    CHECK(H.obstructions[0].removed == 1);
}

TEST_CASE("holomorphic solutions match brute force") {
    std::mt19937 rng(17);
    for (int t = 0; t < 30; ++t) {
        size_t n = 1 + t % 4;
        auto A = random_system(rng, n, 3);
        // new parameters can only enter at nonnegative integer eigenvalues of A_0, which are at most 2 here
        size_t prev = n + 1;
        for (int K = 0; K <= 6; ++K) {
            auto H = holomorphic_solutions(A, K);
            CAPTURE(t);
            CAPTURE(K);
            CHECK(H.dimension() == brute_force_dimension(A, K));
            if (K > 2) CHECK(H.dimension() <= prev);
            prev = H.dimension();
            for (auto &y : H.solutions) CHECK(is_solution(A, y));
        }
    }
}

TEST_CASE("symmetries of the m = 1 model") {
    auto B = formal_symmetries(model(1, 10), 10);
    CHECK(B.fields.size() == 4);
    int o = B.valid_order;
    CHECK(o >= 3);
    auto izdz = field(zw(1, 0, Gq::i(), o), none(o)), wdw = field(none(o), zw(0, 1, Gq(1), o));
    CHECK(in_span(izdz, B.fields, o).has_value());
    CHECK(in_span(wdw, B.fields, o).has_value());
    CHECK_FALSE(in_span(field(zw(0, 1, Gq(1), o), none(o)), B.fields, o).has_value());
    for (auto &r : B.residuals) CHECK(r.is_zero());
    auto E = eliminate(model(1, 10), 10);
    CHECK(tangency_residual(izdz, E).is_zero());
    CHECK(tangency_residual(wdw, E).is_zero());
}

TEST_CASE("real form of the model") {
    auto M = model(1, 12);
    int o = 8;
    CHECK(real_tangency_defect(field(zw(1, 0, Gq::i(), o), none(o)), M).is_zero());
    CHECK(real_tangency_defect(field(none(o), zw(0, 1, Gq(1), o)), M).is_zero());
    CHECK_FALSE(real_tangency_defect(field(zw(1, 0, Gq(1), o), none(o)), M).is_zero());
    CHECK_FALSE(real_tangency_defect(field(zw(0, 0, Gq(1), o), none(o)), M).is_zero());

    auto B = formal_symmetries(M, 12, true);
    o = B.valid_order;
    for (auto &L : B.fields) CHECK(real_tangency_defect(L, M).truncate(o - 1).is_zero());
    CHECK(in_span(field(zw(1, 0, Gq::i(), o), none(o)), B.fields, o).has_value());
    CHECK(in_span(field(none(o), zw(0, 1, Gq(1), o)), B.fields, o).has_value());
    // the complex span of the real basis is the full complex basis
    auto C = formal_symmetries(M, 12);
    CHECK(B.fields.size() == C.fields.size());
    for (auto &L : B.fields) CHECK(in_span(L, C.fields, o).has_value());
}

TEST_CASE("rotation is a symmetry of transferred z zb surfaces") {
    for (int m = 2; m <= 3; ++m) {
        RealDefining R;
        R.m = m;
        R.psi = MultiSeries::monomial({"z", "zb", "u"}, 3 * m + 6, {1, 1, 0});
        auto C = real_to_complex(R, 3 * m + 6).surface;
        auto B = formal_symmetries(C, 3 * m + 6);
        int o = B.valid_order;
        CAPTURE(m);
        CHECK(in_span(field(zw(1, 0, Gq::i(), o), none(o)), B.fields, o).has_value());
        for (auto &r : B.residuals) CHECK(r.is_zero());
    }
}

TEST_CASE("random Fuchsian surfaces") {
    std::mt19937_64 rng(23);
    for (int t = 0; t < 4; ++t) {
        int m = 1 + t % 2;
        int N = 3 * m + 8;
        auto R = random_real_surface(rng, m, 1, N, FuchsKind::fuchsian, 0.5);
        auto C = real_to_complex(R, N).surface;
        auto B = formal_symmetries(C, N);
        for (auto &r : B.residuals) CHECK(r.is_zero());
        for (auto &y : B.candidates.solutions) CHECK(is_solution(residue_expansion(assemble_Y_system(
                                                                     eliminate(C, N), check_fuchsian_ode(eliminate(C, N))),
                                                                 B.candidates.order),
                                                             y));
        // bracket closure
        for (auto &a : B.fields)
            for (auto &b : B.fields) CHECK(in_span(lie_bracket(a, b), B.fields, B.valid_order - 1).has_value());
    }
}

TEST_CASE("symmetry errors") {
    CHECK_THROWS_AS(formal_symmetries(model(2, 7), 7), OrderTooLow);
    auto B = model(2, 10);
    B.phi.set({2, 2, 0}, Gq(1));
    CHECK_THROWS_AS(formal_symmetries(B, 10), PoleOrderViolation);
}

TEST_CASE("lie bracket") {
    int o = 10;
    auto zdz = field(zw(1, 0, Gq(1), o), none(o)), wdw = field(none(o), zw(0, 1, Gq(1), o));
    auto z2dz = field(zw(2, 0, Gq(1), o), none(o));
    auto b = lie_bracket(zdz, wdw);
    CHECK(b.P.is_zero());
    CHECK(b.Q.is_zero());
    CHECK(b.P.order() == o - 1);
    b = lie_bracket(zdz, z2dz);
    CHECK(b.P == zw(2, 0, Gq(1), o - 1));
    CHECK(b.Q.is_zero());
    b = lie_bracket(field(zw(1, 0, Gq::i(), o), none(o)), wdw);
    CHECK(b.P.is_zero());
    CHECK(b.Q.is_zero());

    // antisymmetry and Jacobi on random fields
    std::mt19937 rng(3);
    for (int t = 0; t < 5; ++t) {
        VectorField x{random_series(rng, ZW, 8, 5), random_series(rng, ZW, 8, 5)};
        VectorField y{random_series(rng, ZW, 8, 5), random_series(rng, ZW, 8, 5)};
        VectorField z{random_series(rng, ZW, 8, 5), random_series(rng, ZW, 8, 5)};
        auto xy = lie_bracket(x, y), yx = lie_bracket(y, x);
        CHECK((xy.P + yx.P).is_zero());
        CHECK((xy.Q + yx.Q).is_zero());
        auto j1 = lie_bracket(x, lie_bracket(y, z)), j2 = lie_bracket(y, lie_bracket(z, x)),
             j3 = lie_bracket(z, lie_bracket(x, y));
        CHECK((j1.P + j2.P + j3.P).is_zero());
        CHECK((j1.Q + j2.Q + j3.Q).is_zero());
    }
}

TEST_CASE("convergence diagnostic") {
    MultiSeries geo({"w"}, 15), fact({"w"}, 15);
    mpz_class f = 1;
    for (int k = 0; k <= 15; ++k) {
        geo.set({k}, Gq(1));
        if (k) f *= k;
        fact.set({k}, Gq(mpq_class(f)));
    }
    auto g = convergence_diagnostic(std::vector<MultiSeries>{geo});
    CHECK(g.verdict == Growth::bounded);
    for (auto &[k, r] : g.ratios) CHECK(r == doctest::Approx(1.0));
    auto d = convergence_diagnostic(std::vector<MultiSeries>{fact});
    CHECK(d.verdict == Growth::unbounded);
    for (auto &[k, r] : d.ratios) CHECK(r == doctest::Approx(k + 1.0));
    auto p = convergence_diagnostic(std::vector<MultiSeries>{MultiSeries::monomial({"w"}, 12, {1})});
    CHECK(p.verdict == Growth::inconclusive);
    CHECK_THROWS_AS(convergence_diagnostic(std::vector<MultiSeries>{MultiSeries({"w"}, 5)}), std::invalid_argument);
}

TEST_CASE("symmetry series of Fuchsian surfaces stay growth-bounded") {
    std::mt19937_64 rng(41);
    for (int t = 0; t < 3; ++t) {
        int m = 1 + t % 2;
        int N = 3 * m + 14;
        auto R = random_real_surface(rng, m, 1, N, FuchsKind::fuchsian, 0.5);
        auto B = formal_symmetries(real_to_complex(R, N).surface, N);
        REQUIRE(B.candidates.order >= 8);
        for (auto &L : B.fields)
            if (B.valid_order >= 8) CHECK(convergence_diagnostic(L, 10, 5).verdict != Growth::unbounded);
    }
}
