#pragma once

#include "nmcr/fuchs.hpp"
#include "nmcr/segre.hpp"

#include <compare>
#include <map>
#include <string>
#include <vector>

namespace nmcr {

// L = P d/dz + Q d/dw with P, Q in (z, w).
struct VectorField {
    MultiSeries P, Q;
};

struct ProlongedField {
    MultiSeries P, Q;
    MultiSeries Q1; // (z, w, w1)
    MultiSeries Q2; // (z, w, w1, w2)
};

template <class M> struct Jets2 {
    M P, Q, Pz, Pw, Qz, Qw, Pzz, Pzw, Pww, Qzz, Qzw, Qww;
};

// Coefficients of the prolongation as polynomials in w1 (and w2).
template <class M> struct Prolongation {
    std::vector<M> q1;   // Q1 = sum q1[k] w1^k
    std::vector<M> q2_0; // w2-free part of Q2
    std::vector<M> q2_1; // coefficient of w2
};

template <class M> Prolongation<M> prolongation(const Jets2<M> &J) {
    Prolongation<M> p;
    p.q1 = {J.Qz, J.Qw - J.Pz, -J.Pw};
    p.q2_0 = {J.Qzz, J.Qzw.scale(Gq(2)) - J.Pzz, J.Qww - J.Pzw.scale(Gq(2)), -J.Pww};
    p.q2_1 = {J.Qw - J.Pz.scale(Gq(2)), J.Pw.scale(Gq(-3))};
    return p;
}

// Coefficients of w1^0 .. w1^kmax in Q2|_{w2 = F} - F_z P - F_w Q - F_{w1} Q1
// for F = sum_j f[j] w1^j.
template <class M, class S>
std::vector<M> tangency_rows(const Jets2<M> &J, const std::map<int, S> &f, const std::map<int, S> &fz,
                             const std::map<int, S> &fw, int kmax, const M &zero) {
    auto pr = prolongation(J);
    std::vector<M> C(kmax + 1, zero);
    auto add = [&](int k, const M &x) {
        if (k >= 0 && k <= kmax) C[k] = C[k] + x;
    };
    for (int k = 0; k < int(pr.q2_0.size()); ++k) add(k, pr.q2_0[k]);
    for (auto &[j, fj] : f) {
        for (int k = 0; k < int(pr.q2_1.size()); ++k) add(j + k, fj * pr.q2_1[k]);
        add(j, -(fz.at(j) * J.P));
        add(j, -(fw.at(j) * J.Q));
        for (int k = 0; k < int(pr.q1.size()); ++k) add(j - 1 + k, -(fj.scale(Gq(j)) * pr.q1[k]));
    }
    return C;
}

ProlongedField prolong2(const VectorField &L);

// Residual of the tangency condition with w1 = zeta w^m, in (z, w, zeta).  Its
// zeta^k coefficient is w^(km) times the k-th collected row.
MultiSeries tangency_residual(const VectorField &L, const AssociatedODE &E);

// ---- linear forms in jets of unknown functions

struct JetKey {
    int f = 0, dz = 0, dw = 0;
    auto operator<=>(const JetKey &) const = default;
};

LaurentInW laurent_constant(const Gq &c);
LaurentInW laurent_monomial(int zpow, int wpow, const Gq &c = Gq(1));

class LinForm {
public:
    LinForm() = default;
    explicit LinForm(bool w_only) : w_only_(w_only) {}
    static LinForm unknown(JetKey k, bool w_only);

    bool w_only() const { return w_only_; }
    const std::map<JetKey, LaurentInW> &terms() const { return terms_; }
    LaurentInW coeff(const JetKey &k) const;
    void add(const JetKey &k, const LaurentInW &c);
    void erase(const JetKey &k) { terms_.erase(k); }

    LinForm derivative(const std::string &v) const;
    LinForm extract_z(int k) const;
    LinForm scale(const Gq &c) const;
    // Largest dz + dw over terms with a nonzero coefficient.
    int max_jet_order() const;
    std::string str(const std::vector<std::string> &names) const;

private:
    bool w_only_ = true; // unknowns are functions of w alone
    std::map<JetKey, LaurentInW> terms_;
};

LinForm operator+(const LinForm &a, const LinForm &b);
LinForm operator-(const LinForm &a, const LinForm &b);
LinForm operator-(const LinForm &a);
LinForm operator*(const LaurentInW &c, const LinForm &a);

// Solves eqs = 0 for the listed keys; returns each key as a form in the other keys.
std::map<JetKey, LinForm> solve_for(const std::vector<LinForm> &eqs, const std::vector<JetKey> &keys);

// ---- the collected system

// Rows 0..3 of the collected system for functions P = f0, Q = f1 of (z, w).
std::vector<LinForm> collect_initial_system(const AssociatedODE &E);

struct SymbolicRowCheck {
    MultiSeries derived; // collected from the prolongation
    MultiSeries printed; // left minus right side of the printed line
    int sign = 0;        // derived = sign * printed, 0 when neither sign fits
    std::string canonical;
};

// Collection over a polynomial ring of jet symbols P, P_z, ..., a, a_z, a_w, b, ..., d.
std::vector<SymbolicRowCheck> symbolic_initial_system();

// ---- structural reduction

struct StructuralForm {
    LaurentInW a_tilde; // a_tilde = O(z^2), a_tilde_zz = a
    // P = P0 + P1 z + Q1' z^2 - 2 Q1 a_tilde, Q = Q0 + Q1 z
    VectorField reconstruct(const MultiSeries &P0, const MultiSeries &P1, const MultiSeries &Q0,
                            const MultiSeries &Q1) const;
    LaurentInW reconstruct_P(const MultiSeries &P0, const MultiSeries &P1, const MultiSeries &Q1) const;
};

StructuralForm structural_reduce(const AssociatedODE &E);

struct LinearODESystem {
    int n = 0;
    std::vector<std::vector<LaurentInW>> M; // dY/dw = M Y
    int pole_order = 0;
    std::vector<std::string> unknowns;

    // Y' - M Y for a candidate Y.
    std::vector<LaurentInW> residual(const std::vector<LaurentInW> &Y) const;
};

class PoleOrderViolation : public std::domain_error {
public:
    PoleOrderViolation(const std::string &msg, int row, int col, int pole, int bound)
        : std::domain_error(msg), row(row), col(col), pole(pole), bound(bound) {}
    int row, col, pole, bound;
};

class NonFuchsian : public std::domain_error {
public:
    NonFuchsian(const std::string &msg, FuchsReport report) : std::domain_error(msg), report(std::move(report)) {}
    FuchsReport report;
};

// u = (P0, P1, P0', P1', Q0, Q1, Q0', Q1')
LinearODESystem assemble_u_system(const AssociatedODE &E);
std::vector<LaurentInW> u_vector(const VectorField &L);

// Y = (P0, P1, R0, R1, w P0', w P1', w R0', w R1') with Q = w R; dY/dw = (1/w) A(w) Y.
LinearODESystem assemble_Y_system(const AssociatedODE &E, const FuchsReport &report);
std::vector<LaurentInW> Y_vector(const VectorField &L);

// y = (P, Q, P_z, P_w, Q_z, Q_w, P_zz, P_zw, P_ww, Q_zz, Q_zw, Q_ww)
struct TwelveSystem {
    std::vector<std::vector<LaurentInW>> A, B; // dy/dz = A y, dy/dw = B y
    int pole_order = 0;
    std::vector<std::string> unknowns;
};

TwelveSystem assemble_twelve_system(const AssociatedODE &E);
std::vector<LaurentInW> twelve_vector(const VectorField &L);
std::vector<LaurentInW> apply_matrix(const std::vector<std::vector<LaurentInW>> &A, const std::vector<LaurentInW> &y);

} // namespace nmcr
