#include "nmcr/blowup.hpp"

#include <algorithm>

namespace nmcr {

namespace {

const int EXACT = 1 << 20;
const std::vector<std::string> XE{"xi", "eta"};
const std::vector<std::string> XV{"xi", "xib", "eta", "etab"};
const std::vector<std::string> XS{"xi", "xib", "etab"};
const std::vector<std::string> CV{"z", "zb", "wb"};

bool exact(int order) { return order >= EXACT / 2; }

// Known total degree after z^a w^b -> xi^a eta^(a s + l b) for data known to degree n.
int pulled_order(int n, const BlowupMap &B) {
    if (exact(n)) return EXACT;
    return (n + 1) * std::min(B.s + 1, B.l) - 1;
}

} // namespace

void BlowupMap::check() const {
    if (s < 1) throw std::invalid_argument("blow-up exponent s must be at least 1");
    if (l < 1) throw std::invalid_argument("blow-up exponent l must be at least 1");
}

MultiSeries pullback_series(const MultiSeries &f, const BlowupMap &B) {
    B.check();
    MultiSeries g = f.with_vars({"z", "w"});
    MultiSeries out(XE, pulled_order(g.order(), B));
    for (auto &[e, c] : g.terms()) out.add_term({e[0], e[0] * B.s + e[1] * B.l}, c);
    return out;
}

PulledSurface pullback_surface(const ComplexDefining &M, const BlowupMap &B, int order) {
    B.check();
    MultiSeries f = M.full_exponent();
    int K = std::min(order, pulled_order(f.order(), B));
    int need = 2 + 2 * B.s + B.l * (M.m - 1);
    if (K < need) throw OrderTooLow(K, need);
    MultiSeries g(XV, K);
    for (auto &[e, c] : f.terms()) {
        Exponent x{e[0], e[1], e[0] * B.s, e[1] * B.s + e[2] * B.l};
        if (x[0] + x[1] + x[2] + x[3] <= K) g.add_term(x, c);
    }
    MultiSeries eta = MultiSeries::variable(XV, K + 1, "eta"), etab = MultiSeries::variable(XV, K + 1, "etab");
    MultiSeries G = eta - mul(etab, exp_series(g.scale(Gq::i() / Gq(B.l))), K + 1);
    PulledSurface out;
    out.map = B;
    out.m = M.m;
    out.sign = M.sign;
    out.R = solve_implicit({G}, {"eta"}, K + 1)[0].with_vars(XS);
    if (!out.R.divisible_by("etab", 1)) throw std::logic_error("pulled-back surface does not contain {eta = 0}");
    MultiSeries q = out.R.div_monomial("etab", 1) - MultiSeries::constant(XS, K, Gq(1));
    out.psi = log1p_series(q).scale(-Gq::i());
    out.normal_shape = out.psi.at_zero("xi").is_zero() && out.psi.at_zero("xib").is_zero();
    return out;
}

std::optional<BlowupChoice> find_blowup_exponent(const ComplexDefining &M, int s_max, int order,
                                                 std::vector<BlowupScanEntry> *scan) {
    for (int s = 2; s <= s_max; ++s) {
        BlowupScanEntry entry;
        entry.s = s;
        try {
            PulledSurface P = pullback_surface(M, {s, 2}, order);
            MultiSeries levi = P.psi.extract("xi", 1).extract("xib", 1);
            if (levi.is_zero()) {
                entry.note = "xi xib coefficient vanishes to order " + std::to_string(levi.order());
            } else {
                entry.levi_valuation = levi.valuation_in("etab");
                entry.note = "Levi form is a unit times etab^" + std::to_string(entry.levi_valuation);
                if (scan) scan->push_back(entry);
                return BlowupChoice{s, P};
            }
        } catch (const OrderTooLow &e) {
            entry.note = e.what();
        }
        if (scan) scan->push_back(entry);
    }
    return std::nullopt;
}

PulledField pullback_field(const VectorField &L, const BlowupMap &B) {
    B.check();
    if (B.l != 2) throw std::invalid_argument("field transport is implemented for l = 2 only");
    MultiSeries Pc = pullback_series(L.P, B), Qc = pullback_series(L.Q, B);
    MultiSeries xi = MultiSeries::variable(XE, EXACT, "xi");
    PulledField out;
    out.P = LaurentInW(Pc, B.s, "eta") - LaurentInW(mul(xi, Qc).scale(Gq(B.s, 2)), 2, "eta");
    out.Q = LaurentInW(Qc.scale(Gq(1, 2)), 1, "eta");
    return out;
}

VectorField pushforward_field(const LaurentInW &f, const LaurentInW &g, const BlowupMap &B) {
    B.check();
    if (B.l != 2) throw std::invalid_argument("field transport is implemented for l = 2 only");
    LaurentInW xi(MultiSeries::variable(XE, EXACT, "xi"), 0, "eta");
    LaurentInW F = f.with_vars(XE), G = g.with_vars(XE);
    LaurentInW Pc = F.mul_power(B.s) + (xi * G).scale(Gq(B.s)).mul_power(B.s - 1);
    LaurentInW Qc = G.scale(Gq(2)).mul_power(1);
    VectorField out;
    const std::vector<std::pair<std::string, LaurentInW>> comps{{"P", Pc}, {"Q", Qc}};
    for (auto &[name, C] : comps) {
        if (C.pole_order() > 0) {
            auto pp = C.principal_part();
            auto &[k, coeff] = *pp.begin();
            int j = coeff.valuation_in("xi");
            std::string msg = "component " + name + " has eta^" + std::to_string(k) + " at xi^" + std::to_string(j);
            throw DivisibilityError(msg, name, j, j * B.s - k);
        }
        MultiSeries S = C.to_series().with_vars(XE);
        int o = exact(S.order()) ? EXACT : S.order() / (B.s + 1);
        MultiSeries r({"z", "w"}, o);
        for (auto &[e, c] : S.terms()) {
            int j = e[0], d = e[1] - j * B.s;
            if (d < 0)
                throw DivisibilityError("component " + name + ": eta^" + std::to_string(j * B.s) +
                                            " does not divide the xi^" + std::to_string(j) + " coefficient",
                                        name, j, -d);
            if (d % 2)
                throw DivisibilityError("component " + name + ": xi^" + std::to_string(j) +
                                            " coefficient is not a series in eta^2 after division",
                                        name, j, 1);
            if (j + d / 2 <= o) r.add_term({j, d / 2}, c);
        }
        (name == "P" ? out.P : out.Q) = r;
    }
    return out;
}

VectorField pushforward_field(const PulledField &L, const BlowupMap &B) { return pushforward_field(L.P, L.Q, B); }

} // namespace nmcr
