#include "nmcr/prolong.hpp"

#include <sstream>

namespace nmcr {

namespace {

const int EXACT = 1 << 20;
const std::vector<std::string> ZW{"z", "w"};

MultiSeries d(const MultiSeries &s, const char *v) { return s.derivative(v); }

MultiSeries lift(const MultiSeries &s, const std::vector<std::string> &vars, const std::string &v, int k) {
    return s.with_vars(vars).mul_monomial(v, k);
}

LaurentInW zero_w() { return LaurentInW(MultiSeries({"w"}, EXACT), 0); }
LaurentInW one_w() { return LaurentInW(MultiSeries::constant({"w"}, EXACT, Gq(1)), 0); }

LaurentInW as_laurent(const MultiSeries &s) { return LaurentInW(s, 0, "w"); }

} // namespace

ProlongedField prolong2(const VectorField &L) {
    MultiSeries P = L.P.with_vars(ZW), Q = L.Q.with_vars(ZW);
    Jets2<MultiSeries> J{P,         Q,         d(P, "z"), d(P, "w"), d(Q, "z"), d(Q, "w"),
                         d(d(P, "z"), "z"), d(d(P, "z"), "w"), d(d(P, "w"), "w"),
                         d(d(Q, "z"), "z"), d(d(Q, "z"), "w"), d(d(Q, "w"), "w")};
    auto pr = prolongation(J);
    std::vector<std::string> v1{"z", "w", "w1"}, v2{"z", "w", "w1", "w2"};
    ProlongedField out;
    out.P = P;
    out.Q = Q;
    out.Q1 = MultiSeries(v1, EXACT);
    for (int k = 0; k < 3; ++k) out.Q1 = out.Q1 + lift(pr.q1[k], v1, "w1", k);
    out.Q2 = MultiSeries(v2, EXACT);
    for (int k = 0; k < 4; ++k) out.Q2 = out.Q2 + lift(pr.q2_0[k], v2, "w1", k);
    for (int k = 0; k < 2; ++k) out.Q2 = out.Q2 + lift(pr.q2_1[k], v2, "w1", k).mul_monomial("w2", 1);
    return out;
}

MultiSeries tangency_residual(const VectorField &L, const AssociatedODE &E) {
    const std::vector<std::string> V{"z", "w", "zeta"};
    int m = E.m;
    MultiSeries P = L.P.with_vars(V), Q = L.Q.with_vars(V);
    MultiSeries Phi = E.Phi.with_vars(V);
    MultiSeries W1 = MultiSeries::monomial(V, EXACT, {0, m, 1});
    Jets2<MultiSeries> J{P,         Q,         d(P, "z"), d(P, "w"), d(Q, "z"), d(Q, "w"),
                         d(d(P, "z"), "z"), d(d(P, "z"), "w"), d(d(P, "w"), "w"),
                         d(d(Q, "z"), "z"), d(d(Q, "z"), "w"), d(d(Q, "w"), "w")};
    auto pr = prolongation(J);
    auto poly = [&](const std::vector<MultiSeries> &c) {
        MultiSeries s(V, EXACT), p = MultiSeries::constant(V, EXACT, Gq(1));
        for (auto &x : c) {
            s = s + x * p;
            p = p * W1;
        }
        return s;
    };
    MultiSeries Q1 = poly(pr.q1);
    MultiSeries Q2 = poly(pr.q2_0) + poly(pr.q2_1) * Phi;
    MultiSeries Phi_zeta = d(Phi, "zeta");
    MultiSeries Fw = d(Phi, "w") - (Phi_zeta.mul_monomial("zeta", 1)).div_monomial("w", 1).scale(Gq(m));
    MultiSeries Fw1 = Phi_zeta.div_monomial("w", m);
    return Q2 - d(Phi, "z") * P - Fw * Q - Fw1 * Q1;
}

// ---------------------------------------------------------------- LinForm

LaurentInW laurent_constant(const Gq &c) { return LaurentInW(MultiSeries::constant(ZW, EXACT, c), 0); }

LaurentInW laurent_monomial(int zpow, int wpow, const Gq &c) {
    return LaurentInW(MultiSeries::monomial(ZW, EXACT, {zpow, std::max(wpow, 0)}, c), std::max(-wpow, 0));
}

LinForm LinForm::unknown(JetKey k, bool w_only) {
    LinForm f(w_only);
    f.terms_.emplace(k, laurent_constant(Gq(1)));
    return f;
}

LaurentInW LinForm::coeff(const JetKey &k) const {
    auto it = terms_.find(k);
    return it == terms_.end() ? LaurentInW(MultiSeries(ZW, EXACT), 0) : it->second;
}

void LinForm::add(const JetKey &k, const LaurentInW &c) {
    auto it = terms_.find(k);
    if (it == terms_.end())
        terms_.emplace(k, c);
    else
        it->second = it->second + c;
}

LinForm LinForm::derivative(const std::string &v) const {
    LinForm r(w_only_);
    for (auto &[k, c] : terms_) {
        r.add(k, c.derivative(v));
        if (v == "w")
            r.add({k.f, k.dz, k.dw + 1}, c);
        else if (!w_only_)
            r.add({k.f, k.dz + 1, k.dw}, c);
    }
    return r;
}

LinForm LinForm::extract_z(int k) const {
    LinForm r(w_only_);
    for (auto &[key, c] : terms_) {
        if (!c.body().has_var("z")) {
            if (k == 0) r.add(key, c);
            continue;
        }
        r.add(key, c.extract("z", k));
    }
    return r;
}

LinForm LinForm::scale(const Gq &c) const {
    LinForm r(w_only_);
    for (auto &[k, x] : terms_) r.terms_.emplace(k, x.scale(c));
    return r;
}

int LinForm::max_jet_order() const {
    int o = -1;
    for (auto &[k, c] : terms_)
        if (!c.is_zero()) o = std::max(o, k.dz + k.dw);
    return o;
}

std::string LinForm::str(const std::vector<std::string> &names) const {
    std::ostringstream os;
    bool first = true;
    for (auto &[k, c] : terms_) {
        if (c.is_zero()) continue;
        if (!first) os << " + ";
        first = false;
        os << "(" << c.str() << ")*" << (k.f < int(names.size()) ? names[k.f] : "f" + std::to_string(k.f));
        for (int i = 0; i < k.dz; ++i) os << "_z";
        for (int i = 0; i < k.dw; ++i) os << "_w";
    }
    return first ? "0" : os.str();
}

LinForm operator+(const LinForm &a, const LinForm &b) {
    LinForm r = a;
    for (auto &[k, c] : b.terms()) r.add(k, c);
    return r;
}

LinForm operator-(const LinForm &a) { return a.scale(Gq(-1)); }
LinForm operator-(const LinForm &a, const LinForm &b) { return a + (-b); }

LinForm operator*(const LaurentInW &c, const LinForm &a) {
    LinForm r(a.w_only());
    for (auto &[k, x] : a.terms()) r.add(k, c * x);
    return r;
}

std::map<JetKey, LinForm> solve_for(const std::vector<LinForm> &eqs, const std::vector<JetKey> &keys) {
    size_t n = keys.size();
    if (eqs.size() != n) throw std::invalid_argument("solve_for: need as many equations as unknowns");
    std::vector<std::vector<LaurentInW>> M(n, std::vector<LaurentInW>(n));
    std::vector<LinForm> rest;
    for (size_t r = 0; r < n; ++r) {
        LinForm e = eqs[r];
        for (size_t c = 0; c < n; ++c) {
            M[r][c] = e.coeff(keys[c]);
            e.erase(keys[c]);
        }
        rest.push_back(e);
    }
    for (size_t col = 0; col < n; ++col) {
        size_t piv = n;
        for (size_t r = col; r < n; ++r)
            if (!M[r][col].is_zero() && (piv == n || M[r][col].valuation() < M[piv][col].valuation())) piv = r;
        if (piv == n) throw std::domain_error("solve_for: leading coefficients are singular");
        std::swap(M[piv], M[col]);
        std::swap(rest[piv], rest[col]);
        LaurentInW inv = inverse(M[col][col]);
        for (size_t c = 0; c < n; ++c) M[col][c] = inv * M[col][c];
        rest[col] = inv * rest[col];
        for (size_t r = 0; r < n; ++r) {
            if (r == col || M[r][col].is_zero()) continue;
            LaurentInW f = M[r][col];
            for (size_t c = 0; c < n; ++c) M[r][c] = M[r][c] - f * M[col][c];
            rest[r] = rest[r] - f * rest[col];
        }
    }
    std::map<JetKey, LinForm> out;
    for (size_t c = 0; c < n; ++c) out.emplace(keys[c], -rest[c]);
    return out;
}

// ---------------------------------------------------------------- collected rows

namespace {

struct Coefficients {
    std::map<int, LaurentInW> f, fz, fw;
};

Coefficients ode_coefficients(const AssociatedODE &E) {
    Coefficients c;
    const LaurentInW *abc[3] = {&E.a, &E.b, &E.c};
    for (int j = 2; j <= 4; ++j) {
        LaurentInW x = abc[j - 2]->with_vars(ZW);
        c.f.emplace(j, x);
        c.fz.emplace(j, x.derivative("z"));
        c.fw.emplace(j, x.derivative("w"));
    }
    return c;
}

Jets2<LinForm> jets_of(const LinForm &P, const LinForm &Q) {
    auto Pz = P.derivative("z"), Pw = P.derivative("w"), Qz = Q.derivative("z"), Qw = Q.derivative("w");
    return {P,  Q,  Pz, Pw, Qz, Qw, Pz.derivative("z"), Pz.derivative("w"), Pw.derivative("w"),
            Qz.derivative("z"), Qz.derivative("w"), Qw.derivative("w")};
}

} // namespace

std::vector<LinForm> collect_initial_system(const AssociatedODE &E) {
    auto U = [](int f, int dz, int dw) { return LinForm::unknown({f, dz, dw}, false); };
    Jets2<LinForm> J{U(0, 0, 0), U(1, 0, 0), U(0, 1, 0), U(0, 0, 1), U(1, 1, 0), U(1, 0, 1),
                     U(0, 2, 0), U(0, 1, 1), U(0, 0, 2), U(1, 2, 0), U(1, 1, 1), U(1, 0, 2)};
    auto c = ode_coefficients(E);
    return tangency_rows(J, c.f, c.fz, c.fw, 3, LinForm(false));
}

std::vector<SymbolicRowCheck> symbolic_initial_system() {
    const std::vector<std::string> S{"P",   "Q",  "Pz",  "Pw",  "Qz", "Qw", "Pzz", "Pzw",
                                     "Pww", "Qzz", "Qzw", "Qww", "a",  "az", "aw",  "b",
                                     "bz",  "bw",  "c",   "cz",  "cw", "d",  "dz",  "dw"};
    const int O = 16;
    auto s = [&](const char *n) { return MultiSeries::variable(S, O, n); };
    auto k = [&](long c) { return MultiSeries::constant(S, O, Gq(c)); };
    Jets2<MultiSeries> J{s("P"),   s("Q"),   s("Pz"),  s("Pw"),  s("Qz"),  s("Qw"),
                         s("Pzz"), s("Pzw"), s("Pww"), s("Qzz"), s("Qzw"), s("Qww")};
    std::map<int, MultiSeries> f{{2, s("a")}, {3, s("b")}, {4, s("c")}, {5, s("d")}};
    std::map<int, MultiSeries> fz{{2, s("az")}, {3, s("bz")}, {4, s("cz")}, {5, s("dz")}};
    std::map<int, MultiSeries> fw{{2, s("aw")}, {3, s("bw")}, {4, s("cw")}, {5, s("dw")}};
    auto rows = tangency_rows(J, f, fz, fw, 3, MultiSeries(S, O));

    auto a = s("a"), b = s("b"), c = s("c");
    std::vector<MultiSeries> printed{
        s("Qzz"),
        k(2) * s("Qzw") - s("Pzz") - k(2) * a * s("Qz"),
        s("Qww") - k(2) * s("Pzw") -
            (a * (k(2) * s("Pz") - s("Qw")) + s("az") * s("P") + s("aw") * s("Q") + k(3) * b * s("Qz") +
             k(2) * a * (s("Qw") - s("Pz"))),
        s("Pww") - (b * (s("Qw") - k(2) * s("Pz")) - a * s("Pw") - s("bz") * s("P") - s("bw") * s("Q") -
                    k(4) * c * s("Qz") + k(3) * b * (s("Pz") - s("Qw")))};
    const char *canonical[4] = {"Q_zz = 0", "2 Q_zw - P_zz = 2 a Q_z",
                                "Q_ww - 2 P_zw = a Q_w + a_z P + a_w Q + 3 b Q_z",
                                "P_ww = b P_z - 2 b Q_w - a P_w - b_z P - b_w Q - 4 c Q_z"};
    std::vector<SymbolicRowCheck> out;
    for (int i = 0; i < 4; ++i) {
        SymbolicRowCheck r;
        r.derived = rows[i];
        r.printed = printed[i];
        r.sign = rows[i] == printed[i] ? 1 : rows[i] == -printed[i] ? -1 : 0;
        r.canonical = canonical[i];
        out.push_back(r);
    }
    return out;
}

// ---------------------------------------------------------------- structural form

StructuralForm structural_reduce(const AssociatedODE &E) {
    StructuralForm s;
    s.a_tilde = E.a.with_vars(ZW).antiderivative("z").antiderivative("z");
    return s;
}

LaurentInW StructuralForm::reconstruct_P(const MultiSeries &P0, const MultiSeries &P1, const MultiSeries &Q1) const {
    auto L = [](const MultiSeries &x) { return LaurentInW(x.with_vars(ZW), 0); };
    return L(P0) + laurent_monomial(1, 0) * L(P1) + laurent_monomial(2, 0) * L(Q1.derivative("w")) -
           (a_tilde * L(Q1)).scale(Gq(2));
}

VectorField StructuralForm::reconstruct(const MultiSeries &P0, const MultiSeries &P1, const MultiSeries &Q0,
                                        const MultiSeries &Q1) const {
    VectorField L;
    L.P = reconstruct_P(P0, P1, Q1).to_series();
    L.Q = Q0.with_vars(ZW) + Q1.with_vars(ZW).mul_monomial("z", 1);
    return L;
}

std::vector<LaurentInW> LinearODESystem::residual(const std::vector<LaurentInW> &Y) const {
    std::vector<LaurentInW> r;
    for (int i = 0; i < n; ++i) {
        LaurentInW s = Y[i].derivative("w");
        for (int j = 0; j < n; ++j)
            if (!M[i][j].is_zero()) s = s - M[i][j] * Y[j];
        r.push_back(s);
    }
    return r;
}

namespace {

// Second derivatives of (P0, P1, Q0, Q1), or of (P0, P1, R0, R1) when Q = w R.
std::map<JetKey, LinForm> second_derivatives(const AssociatedODE &E, bool divide_w) {
    auto U = [](int f, int dw) { return LinForm::unknown({f, 0, dw}, true); };
    LaurentInW z = laurent_monomial(1, 0), z2 = laurent_monomial(2, 0), w = laurent_monomial(0, 1);
    LinForm Q0 = U(2, 0), Q1 = U(3, 0);
    if (divide_w) {
        Q0 = w * Q0;
        Q1 = w * Q1;
    }
    StructuralForm sf = structural_reduce(E);
    LinForm Q = Q0 + z * Q1;
    LinForm P = U(0, 0) + z * U(1, 0) + z2 * Q1.derivative("w") - sf.a_tilde.scale(Gq(2)) * Q1;
    auto c = ode_coefficients(E);
    auto rows = tangency_rows(jets_of(P, Q), c.f, c.fz, c.fw, 3, LinForm(true));
    std::vector<LinForm> eqs{rows[2].extract_z(0), rows[2].extract_z(1), rows[3].extract_z(0), rows[3].extract_z(1)};
    for (auto &e : eqs)
        if (e.max_jet_order() > 2) throw std::logic_error("collected rows involve third derivatives");
    return solve_for(eqs, {{0, 0, 2}, {1, 0, 2}, {2, 0, 2}, {3, 0, 2}});
}

int max_pole(const std::vector<std::vector<LaurentInW>> &M) {
    int p = 0;
    for (auto &row : M)
        for (auto &x : row) p = std::max(p, x.pole_order());
    return p;
}

LaurentInW in_w(const LaurentInW &x) {
    if (x.body().has_var("z") && x.body().max_degree_in("z") > 0)
        throw std::logic_error("coefficient depends on z after extraction");
    return LaurentInW(x.body().extract("z", 0), x.pole(), "w");
}

} // namespace

LinearODESystem assemble_u_system(const AssociatedODE &E) {
    auto sol = second_derivatives(E, false);
    const std::vector<JetKey> u{{0, 0, 0}, {1, 0, 0}, {0, 0, 1}, {1, 0, 1},
                                {2, 0, 0}, {3, 0, 0}, {2, 0, 1}, {3, 0, 1}};
    LinearODESystem S;
    S.n = 8;
    S.unknowns = {"P0", "P1", "P0'", "P1'", "Q0", "Q1", "Q0'", "Q1'"};
    S.M.assign(8, std::vector<LaurentInW>(8, zero_w()));
    auto index = [&](const JetKey &k) {
        for (int i = 0; i < 8; ++i)
            if (u[i] == k) return i;
        throw std::logic_error("unexpected jet in the u-system");
    };
    for (int i = 0; i < 8; ++i) {
        JetKey next{u[i].f, 0, u[i].dw + 1};
        if (next.dw == 1) {
            S.M[i][index(next)] = one_w();
            continue;
        }
        for (auto &[k, c] : sol.at(next).terms())
            if (!c.is_zero()) S.M[i][index(k)] = S.M[i][index(k)] + in_w(c);
    }
    S.pole_order = max_pole(S.M);
    if (S.pole_order > 3 * E.m)
        throw PoleOrderViolation("u-system pole order " + std::to_string(S.pole_order) + " exceeds 3m", -1, -1,
                                 S.pole_order, 3 * E.m);
    return S;
}

LinearODESystem assemble_Y_system(const AssociatedODE &E, const FuchsReport &report) {
    auto sol = second_derivatives(E, true);
    LinearODESystem S;
    S.n = 8;
    S.unknowns = {"P0", "P1", "R0", "R1", "wP0'", "wP1'", "wR0'", "wR1'"};
    S.M.assign(8, std::vector<LaurentInW>(8, zero_w()));
    LaurentInW inv_w(MultiSeries::constant({"w"}, EXACT, Gq(1)), 1);
    LaurentInW w(MultiSeries::monomial({"w"}, EXACT, {1}), 0);
    for (int k = 0; k < 4; ++k) {
        S.M[k][k + 4] = inv_w;
        S.M[k + 4][k + 4] = S.M[k + 4][k + 4] + inv_w;
        for (auto &[key, c] : sol.at({k, 0, 2}).terms()) {
            if (c.is_zero()) continue;
            LaurentInW x = in_w(c);
            if (key.dw == 0)
                S.M[k + 4][key.f] = S.M[k + 4][key.f] + w * x;
            else if (key.dw == 1)
                S.M[k + 4][key.f + 4] = S.M[k + 4][key.f + 4] + x;
            else
                throw std::logic_error("unexpected jet in the Y-system");
        }
    }
    S.pole_order = max_pole(S.M);
    for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j) {
            int p = S.M[i][j].pole_order();
            if (p <= 1) continue;
            std::string msg = "Y-system entry (" + S.unknowns[i] + ", " + S.unknowns[j] + ") has a pole of order " +
                              std::to_string(p) + " > 1";
            for (auto &r : report.violations())
                msg += "; " + r.name + " has order " + std::to_string(r.measured) + " < " + std::to_string(r.bound);
            throw PoleOrderViolation(msg, i, j, p, 1);
        }
    if (report.verdict != Verdict::fuchsian)
        throw NonFuchsian("the Y-system requires a Fuchsian surface; verdict is " + to_string(report.verdict),
                          report);
    return S;
}

std::vector<LaurentInW> u_vector(const VectorField &L) {
    MultiSeries P = L.P.with_vars(ZW), Q = L.Q.with_vars(ZW);
    MultiSeries P0 = P.extract("z", 0), P1 = P.extract("z", 1), Q0 = Q.extract("z", 0), Q1 = Q.extract("z", 1);
    std::vector<MultiSeries> u{P0, P1, P0.derivative("w"), P1.derivative("w"),
                               Q0, Q1, Q0.derivative("w"), Q1.derivative("w")};
    std::vector<LaurentInW> out;
    for (auto &x : u) out.push_back(as_laurent(x));
    return out;
}

std::vector<LaurentInW> Y_vector(const VectorField &L) {
    MultiSeries P = L.P.with_vars(ZW), Q = L.Q.with_vars(ZW);
    if (!Q.divisible_by("w", 1)) throw std::invalid_argument("Q is not divisible by w");
    MultiSeries R = Q.div_monomial("w", 1);
    std::vector<MultiSeries> f{P.extract("z", 0), P.extract("z", 1), R.extract("z", 0), R.extract("z", 1)};
    std::vector<LaurentInW> out;
    for (auto &x : f) out.push_back(as_laurent(x));
    for (auto &x : f) out.push_back(as_laurent(x.derivative("w").mul_monomial("w", 1)));
    return out;
}

// ---------------------------------------------------------------- twelve system

namespace {

const std::vector<JetKey> YKEYS{{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, 0}, {1, 0, 1},
                                {0, 2, 0}, {0, 1, 1}, {0, 0, 2}, {1, 2, 0}, {1, 1, 1}, {1, 0, 2}};

int yindex(const JetKey &k) {
    for (int i = 0; i < 12; ++i)
        if (YKEYS[i] == k) return i;
    return -1;
}

} // namespace

TwelveSystem assemble_twelve_system(const AssociatedODE &E) {
    auto rows = collect_initial_system(E);
    std::vector<LinForm> eqs;
    for (auto &r : rows) {
        eqs.push_back(r.derivative("z"));
        eqs.push_back(r.derivative("w"));
    }
    std::vector<JetKey> third{{0, 3, 0}, {0, 2, 1}, {0, 1, 2}, {0, 0, 3}, {1, 3, 0}, {1, 2, 1}, {1, 1, 2}, {1, 0, 3}};
    auto sol = solve_for(eqs, third);
    TwelveSystem T;
    T.unknowns = {"P", "Q", "P_z", "P_w", "Q_z", "Q_w", "P_zz", "P_zw", "P_ww", "Q_zz", "Q_zw", "Q_ww"};
    LaurentInW zero(MultiSeries(ZW, EXACT), 0);
    T.A.assign(12, std::vector<LaurentInW>(12, zero));
    T.B = T.A;
    for (int pass = 0; pass < 2; ++pass) {
        auto &M = pass == 0 ? T.A : T.B;
        for (int i = 0; i < 12; ++i) {
            JetKey k = YKEYS[i];
            JetKey next = pass == 0 ? JetKey{k.f, k.dz + 1, k.dw} : JetKey{k.f, k.dz, k.dw + 1};
            int j = yindex(next);
            if (j >= 0) {
                M[i][j] = laurent_constant(Gq(1));
                continue;
            }
            for (auto &[key, c] : sol.at(next).terms()) {
                if (c.is_zero()) continue;
                int t = yindex(key);
                if (t < 0) throw std::logic_error("third derivatives left in the twelve system");
                M[i][t] = M[i][t] + c;
            }
        }
    }
    T.pole_order = std::max(max_pole(T.A), max_pole(T.B));
    return T;
}

std::vector<LaurentInW> twelve_vector(const VectorField &L) {
    MultiSeries P = L.P.with_vars(ZW), Q = L.Q.with_vars(ZW);
    std::vector<LaurentInW> y;
    for (auto &k : YKEYS) {
        MultiSeries s = k.f == 0 ? P : Q;
        for (int i = 0; i < k.dz; ++i) s = s.derivative("z");
        for (int i = 0; i < k.dw; ++i) s = s.derivative("w");
        y.push_back(LaurentInW(s, 0));
    }
    return y;
}

std::vector<LaurentInW> apply_matrix(const std::vector<std::vector<LaurentInW>> &A, const std::vector<LaurentInW> &y) {
    std::vector<LaurentInW> r;
    for (auto &row : A) {
        LaurentInW s(MultiSeries(ZW, EXACT), 0);
        for (size_t j = 0; j < row.size(); ++j)
            if (!row[j].is_zero()) s = s + row[j] * y[j];
        r.push_back(s);
    }
    return r;
}

} // namespace nmcr
