#include "nmcr/segre.hpp"

namespace nmcr {

namespace {

const std::vector<std::string> SV{"z", "xi", "eta"};
const std::vector<std::string> OV{"z", "w", "zeta"};

// phi(z, xi, eta) treated as the polynomial it stores.
MultiSeries segre_phi(const ComplexDefining &M, int order) {
    MultiSeries p = M.phi.rename({{"zb", "xi"}, {"wb", "eta"}}).with_vars(SV);
    return p.with_order(order);
}

MultiSeries in_w(const MultiSeries &s) { return s.rename({{"wb", "w"}}).with_vars({"w"}); }

} // namespace

const std::vector<std::string> &ode_coefficient_names() {
    static const std::vector<std::string> n{"a0", "a1", "a2", "b0", "b1", "b2", "c0", "c1"};
    return n;
}

int ode_coefficient_weight(const std::string &name) {
    static const std::map<std::string, int> w{{"a0", 1}, {"a1", 1}, {"a2", 1}, {"b0", 2},
                                              {"b1", 2}, {"b2", 2}, {"c0", 3}, {"c1", 3}};
    return w.at(name);
}

namespace {

SegreGraph graph_at(const ComplexDefining &M, int order) {
    int m = M.m;
    Gq I = Gq::i() * Gq(long(M.sign));
    MultiSeries phi = segre_phi(M, order + 2);
    MultiSeries phi_z = phi.derivative("z").with_order(order + 1);
    MultiSeries arg = phi.mul_monomial("eta", m - 1).scale(I).truncate(order + 1).with_order(order + 1);
    MultiSeries E = exp_series(arg);
    SegreGraph g;
    g.m = m;
    g.sign = M.sign;
    g.w = E.mul_monomial("eta", 1).truncate(order);
    g.zeta = mul(phi_z.scale(I), exp_series(arg.scale(Gq(long(1 - m)))), order);
    // w'' = I eta^m (phi_zz + I eta^(m-1) phi_z^2) E
    MultiSeries inner = phi.derivative("z").derivative("z").with_order(order + 1) +
                        mul(phi_z, phi_z, order + 1).mul_monomial("eta", m - 1).scale(I).truncate(order + 1);
    g.w2 = mul(inner.scale(I).mul_monomial("eta", m).truncate(order), E, order);
    return g;
}

} // namespace

SegreGraph segre_graph(const ComplexDefining &M) { return graph_at(M, M.order() + M.m); }

AssociatedODE ode_from_phi(int m, int sign, int order, const MultiSeries &Phi) {
    AssociatedODE E;
    E.m = m;
    E.sign = sign;
    E.order = order;
    E.Phi = Phi.with_vars(OV);
    const char *fam = "abc";
    for (int p = 2; p <= 4; ++p) {
        MultiSeries Pp = E.Phi.extract("zeta", p);
        if (!Pp.divisible_by("w", m)) throw std::logic_error("Phi is not divisible by w^m");
        for (int j = 0; j <= 2 - (p == 4); ++j)
            E.coeffs[std::string(1, fam[p - 2]) + std::to_string(j)] =
                Pp.extract("z", j).div_monomial("w", m);
        LaurentInW L(Pp.with_vars({"z", "w"}), p * m, "w");
        (p == 2 ? E.a : p == 3 ? E.b : E.c) = L;
    }
    return E;
}

AssociatedODE eliminate(const ComplexDefining &M, int order) {
    if (order > M.order()) throw std::invalid_argument("requested order exceeds the data order");
    if (order < min_order(M.m)) throw OrderTooLow(order, min_order(M.m));
    int m = M.m;
    int K = phi_order(m, order);
    ComplexDefining Mt = M;
    Mt.phi = M.phi.truncate(order);
    SegreGraph g = graph_at(Mt, K + 1);
    std::vector<std::string> all{"z", "w", "zeta", "xi", "eta"};
    MultiSeries F1 = g.w.with_vars(all) - MultiSeries::variable(all, K + 1, "w");
    MultiSeries F2 = g.zeta.with_vars(all) - MultiSeries::variable(all, K + 1, "zeta");
    auto sol = solve_implicit({F1, F2}, {"xi", "eta"}, K);
    MultiSeries Phi = compose(g.w2.truncate(K), {{"xi", sol[0]}, {"eta", sol[1]}}).with_vars(OV).truncate(K);
    return ode_from_phi(m, M.sign, order, Phi);
}

std::map<std::string, MultiSeries> closed_form_coeffs(const ComplexDefining &M) {
    int m = M.m;
    Gq I = Gq::i() * Gq(long(M.sign));
    const int big = 1 << 20;
    auto f = [&](int k, int l) { return in_w(M.phi_kl(k, l)); };
    auto wp = [&](int k) { return MultiSeries::monomial({"w"}, big, {k}); };
    auto d = [](const MultiSeries &s) { return s.derivative("w"); };
    MultiSeries p22 = f(2, 2), p23 = f(2, 3), p32 = f(3, 2), p33 = f(3, 3);
    MultiSeries p24 = f(2, 4), p42 = f(4, 2), p34 = f(3, 4), p43 = f(4, 3);
    std::map<std::string, MultiSeries> c;
    c["a0"] = wp(m - 1) - p22.scale(Gq(2) * I);
    c["a1"] = p32.scale(Gq(-6) * I);
    c["a2"] = p42.scale(Gq(-12) * I);
    c["b0"] = p23.scale(Gq(-2));
    c["c0"] = p24.scale(Gq(2) * I);
    // the phi_22 terms carry the signs found by direct elimination
    c["b1"] = p33.scale(Gq(-6)) - (wp(m - 1) * p22).scale(Gq(2 * (m - 1)) * I) + (p22 * p22).scale(Gq(8)) +
              (wp(m) * d(p22)).scale(Gq(2) * I);
    c["b2"] = p43.scale(Gq(-12)) + (p22 * p32).scale(Gq(36)) + (wp(m - 1) * p32).scale(Gq(6 * (1 - m)) * I) +
              (wp(m) * d(p32)).scale(Gq(6) * I);
    c["c1"] = p34.scale(Gq(6) * I) - (p22 * p23).scale(Gq(20) * I) + (wp(m - 1) * p23).scale(Gq(4 - 4 * m)) +
              (wp(m) * d(p23)).scale(Gq(2));
    return c;
}

MultiSeries verify_ode(const ComplexDefining &M, const AssociatedODE &E) {
    int K = E.Phi.order();
    ComplexDefining Mt = M;
    Mt.phi = M.phi.truncate(std::min(M.order(), E.order));
    SegreGraph g = graph_at(Mt, K);
    MultiSeries rhs = compose(E.Phi, {{"w", g.w}, {"zeta", g.zeta}}).with_vars(SV);
    MultiSeries r = g.w2 - rhs;
    return r.truncate(std::min(r.order(), K));
}

} // namespace nmcr
