#include "nmcr/solver.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <tuple>

namespace nmcr {

namespace {

const std::vector<std::string> ZW{"z", "w"};
const std::vector<std::string> WV{"w"};

// ---------------------------------------------------------------- polynomials

QPoly trim(QPoly p) {
    while (!p.empty() && p.back().is_zero()) p.pop_back();
    return p;
}

// Quotient by (x - r) when r is a root.
std::optional<QPoly> deflate(const QPoly &p, const Gq &r) {
    if (p.size() < 2) return std::nullopt;
    QPoly q(p.size() - 1);
    Gq carry(0);
    for (size_t i = p.size(); i-- > 1;) {
        carry = p[i] + carry * r;
        q[i - 1] = carry;
    }
    if (!(p[0] + carry * r).is_zero()) return std::nullopt;
    return q;
}

std::vector<mpz_class> integer_coefficients(const std::vector<mpq_class> &c) {
    mpz_class l = 1;
    for (auto &x : c) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den().get_mpz_t());
    std::vector<mpz_class> out;
    for (auto &x : c) out.push_back(mpz_class(x * l));
    return out;
}

const mpz_class DIVISOR_LIMIT("1000000000000");

std::optional<std::vector<mpz_class>> divisors(mpz_class n) {
    n = abs(n);
    if (n == 0 || n > DIVISOR_LIMIT) return std::nullopt;
    std::vector<std::pair<mpz_class, int>> f;
    for (mpz_class d = 2; d * d <= n; ++d) {
        int e = 0;
        while (n % d == 0) {
            n /= d;
            ++e;
        }
        if (e) f.push_back({d, e});
    }
    if (n > 1) f.push_back({n, 1});
    std::vector<mpz_class> out{1};
    for (auto &[p, e] : f) {
        size_t s = out.size();
        mpz_class pk = 1;
        for (int k = 1; k <= e; ++k) {
            pk *= p;
            for (size_t i = 0; i < s; ++i) out.push_back(out[i] * pk);
        }
    }
    return out;
}

// Candidate rational roots of a nonzero polynomial with rational coefficients and p(0) != 0.
std::vector<mpq_class> rational_root_candidates(const std::vector<mpq_class> &c) {
    auto z = integer_coefficients(c);
    auto dp = divisors(z.front()), dq = divisors(z.back());
    std::vector<mpq_class> out;
    if (dp && dq) {
        for (auto &p : *dp)
            for (auto &q : *dq) {
                mpq_class r(p, q);
                r.canonicalize();
                out.push_back(r);
                out.push_back(-r);
            }
        return out;
    }
    // coefficients too large to factor: rationalize numerical roots
    int d = int(c.size()) - 1;
    Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(d, d);
    for (int i = 1; i < d; ++i) comp(i, i - 1) = 1;
    for (int i = 0; i < d; ++i) comp(i, d - 1) = -mpq_class(c[i] / c[d]).get_d();
    Eigen::EigenSolver<Eigen::MatrixXd> es(comp);
    for (int i = 0; i < d; ++i) {
        auto ev = es.eigenvalues()[i];
        if (std::abs(ev.imag()) > 1e-6 * (1 + std::abs(ev.real()))) continue;
        double x = ev.real();
        // continued-fraction convergents
        mpz_class h0 = 0, h1 = 1, k0 = 1, k1 = 0;
        double t = x;
        for (int s = 0; s < 40; ++s) {
            double a = std::floor(t);
            mpz_class A(a);
            mpz_class h2 = A * h1 + h0, k2 = A * k1 + k0;
            h0 = h1, h1 = h2, k0 = k1, k1 = k2;
            mpq_class r(h1, k1);
            r.canonicalize();
            out.push_back(r);
            if (std::abs(t - a) < 1e-12 || k1 > mpz_class("1000000000")) break;
            t = 1 / (t - a);
        }
    }
    return out;
}

} // namespace

// ---------------------------------------------------------------- spectrum

ResidueSpectrum residue_spectrum(const QMatrix &A0) {
    ResidueSpectrum out;
    out.charpoly = charpoly(A0);
    QPoly p = trim(out.charpoly);
    std::map<Gq, int, bool (*)(const Gq &, const Gq &)> found(
        [](const Gq &a, const Gq &b) { return std::tie(a.re, a.im) < std::tie(b.re, b.im); });
    int zero = 0;
    while (p.size() > 1 && p[0].is_zero()) {
        p.erase(p.begin());
        ++zero;
    }
    if (zero) found[Gq(0)] = zero;
    if (p.size() > 1) {
        std::vector<mpq_class> re, im;
        for (auto &c : p) re.push_back(c.re), im.push_back(c.im);
        bool real_nonzero = std::any_of(re.begin(), re.end(), [](const mpq_class &x) { return sgn(x) != 0; });
        // a rational root is a common root of the real and imaginary parts
        auto &part = real_nonzero ? re : im;
        while (!part.empty() && sgn(part.back()) == 0) part.pop_back();
        size_t lo = 0;
        while (lo < part.size() && sgn(part[lo]) == 0) ++lo;
        std::vector<mpq_class> cut(part.begin() + lo, part.end());
        std::set<mpq_class> tried;
        if (cut.size() > 1)
            for (auto &r : rational_root_candidates(cut)) {
                if (!tried.insert(r).second) continue;
                Gq g(r);
                while (auto q = deflate(p, g)) {
                    p = *q;
                    found[g] += 1;
                }
            }
    }
    out.nonrational_degree = int(p.size()) - 1;
    for (auto &[r, k] : found) out.rational_eigenvalues.push_back({r, k});
    for (auto &[a, ka] : out.rational_eigenvalues)
        for (auto &[b, kb] : out.rational_eigenvalues) {
            Gq d = b - a;
            if (d.is_real() && d.re > 0 && d.re.get_den() == 1) out.resonances.push_back({a, b});
        }
    return out;
}

std::vector<QMatrix> residue_expansion(const LinearODESystem &S, int max_degree, int *known_to) {
    int known = 1 << 30;
    std::vector<std::vector<MultiSeries>> A(S.n, std::vector<MultiSeries>(S.n));
    for (int i = 0; i < S.n; ++i)
        for (int j = 0; j < S.n; ++j) {
            LaurentInW x = S.M[i][j].mul_power(1);
            if (x.pole_order() > 0) throw std::invalid_argument("system has a pole of order greater than one");
            MultiSeries s = x.to_series();
            for (auto &[e, c] : s.terms())
                for (size_t v = 0; v < e.size(); ++v)
                    if (e[v] && s.vars()[v] != x.var())
                        throw std::invalid_argument("system coefficients depend on " + s.vars()[v]);
            A[i][j] = s.with_vars({x.var()});
            known = std::min(known, A[i][j].order());
        }
    int top = std::min(known, max_degree);
    std::vector<QMatrix> out(top + 1, QMatrix(S.n, S.n));
    for (int i = 0; i < S.n; ++i)
        for (int j = 0; j < S.n; ++j)
            for (auto &[e, c] : A[i][j].terms())
                if (e[0] <= top) out[e[0]](i, j) = c;
    if (known_to) *known_to = known;
    return out;
}

ResidueSpectrum residue_spectrum(const LinearODESystem &S) { return residue_spectrum(residue_expansion(S, 0)[0]); }

// ---------------------------------------------------------------- holomorphic solutions

namespace {

QMatrix zero_columns(const QMatrix &a, size_t extra) {
    if (extra == 0) return a;
    return a.hstack(QMatrix(a.rows(), extra));
}

} // namespace

HolomorphicBasis holomorphic_solutions(const std::vector<QMatrix> &A, int order) {
    if (A.empty()) throw std::invalid_argument("empty residue expansion");
    HolomorphicBasis out;
    const size_t n = A[0].rows();
    out.n = int(n);
    int K = order;
    out.order = K;
    std::vector<QMatrix> Y;
    Y.push_back(A[0].nullspace());
    size_t p = Y[0].cols();
    for (int k = 1; k <= K; ++k) {
        QMatrix rhs(n, p);
        for (int j = 1; j <= k && j < int(A.size()); ++j) rhs = rhs + A[j] * Y[k - j];
        QMatrix Mk = QMatrix::identity(n);
        for (size_t i = 0; i < n; ++i) Mk(i, i) = Gq(k);
        Mk = Mk - A[0];
        QMatrix left = Mk.transpose().nullspace();
        if (left.cols() > 0 && p > 0) {
            QMatrix C = left.transpose() * rhs;
            if (!C.is_zero()) {
                QMatrix keep = C.nullspace();
                out.obstructions.push_back({k, int(C.rank()), int(p - keep.cols())});
                for (auto &y : Y) y = keep.cols() ? y * keep : QMatrix(n, 0);
                rhs = keep.cols() ? rhs * keep : QMatrix(n, 0);
                p = keep.cols();
            }
        }
        QMatrix Yk(n, p);
        if (p > 0) {
            auto x = Mk.solve(rhs);
            if (!x) throw std::logic_error("recurrence step is inconsistent after constraints");
            Yk = *x;
        }
        QMatrix ker = Mk.nullspace();
        if (ker.cols() > 0) {
            for (auto &y : Y) y = zero_columns(y, ker.cols());
            Yk = p > 0 ? Yk.hstack(ker) : ker;
            p += ker.cols();
        }
        Y.push_back(Yk);
    }
    for (size_t c = 0; c < p; ++c) {
        std::vector<MultiSeries> sol(n, MultiSeries(WV, K));
        for (int k = 0; k <= K; ++k)
            for (size_t i = 0; i < n; ++i)
                if (!Y[k](i, c).is_zero()) sol[i].set({k}, Y[k](i, c));
        out.solutions.push_back(sol);
    }
    return out;
}

HolomorphicBasis holomorphic_solutions(const LinearODESystem &S, int order) {
    int known = 0;
    auto A = residue_expansion(S, order, &known);
    return holomorphic_solutions(A, std::min(order, known));
}

std::vector<MultiSeries> system_residual(const std::vector<QMatrix> &A, const std::vector<MultiSeries> &y) {
    const size_t n = y.size();
    int o = 1 << 30;
    for (auto &s : y) o = std::min(o, s.order());
    std::vector<MultiSeries> r;
    for (size_t i = 0; i < n; ++i) {
        MultiSeries s = y[i].with_vars(WV).derivative("w").mul_monomial("w", 1).truncate(o);
        for (int j = 0; j <= o && j < int(A.size()); ++j)
            for (size_t l = 0; l < n; ++l) {
                if (A[j](i, l).is_zero()) continue;
                s = s - y[l].with_vars(WV).truncate(o - j).mul_monomial("w", j).scale(A[j](i, l));
            }
        r.push_back(s.truncate(o));
    }
    return r;
}

// ---------------------------------------------------------------- linear algebra on series

namespace {

using MonoKey = std::tuple<int, size_t, Exponent>; // (total degree, component, exponent)

// Coefficient rows over the jointly known range of each component.
std::map<MonoKey, std::vector<Gq>> coefficient_rows(const std::vector<std::vector<MultiSeries>> &cols) {
    std::map<MonoKey, std::vector<Gq>> rows;
    if (cols.empty()) return rows;
    size_t nc = cols[0].size();
    for (size_t c = 0; c < nc; ++c) {
        int o = 1 << 30;
        for (auto &col : cols) o = std::min(o, col[c].order());
        for (size_t j = 0; j < cols.size(); ++j)
            for (auto &[e, v] : cols[j][c].terms()) {
                int d = cols[j][c].total_degree(e);
                if (d > o) continue;
                auto &row = rows[{d, c, e}];
                if (row.empty()) row.assign(cols.size(), Gq(0));
                row[j] = v;
            }
    }
    return rows;
}

QMatrix to_matrix(const std::map<MonoKey, std::vector<Gq>> &rows, size_t p) {
    QMatrix a(rows.size(), p);
    size_t i = 0;
    for (auto &[k, r] : rows) {
        for (size_t j = 0; j < p; ++j) a(i, j) = r[j];
        ++i;
    }
    return a;
}

// Basis of coefficient vectors c with sum c_j cols[j] = 0 on the known range.
QMatrix combination_kernel(const std::vector<std::vector<MultiSeries>> &cols) {
    size_t p = cols.size();
    auto rows = coefficient_rows(cols);
    if (rows.empty()) return QMatrix::identity(p);
    return to_matrix(rows, p).nullspace();
}

// Real kernel of c -> sum c_j cols[j] with c_j in R.
QMatrix real_combination_kernel(const std::vector<std::vector<MultiSeries>> &cols) {
    size_t p = cols.size();
    auto rows = coefficient_rows(cols);
    if (rows.empty()) return QMatrix::identity(p);
    QMatrix a(2 * rows.size(), p);
    size_t i = 0;
    for (auto &[k, r] : rows) {
        for (size_t j = 0; j < p; ++j) {
            a(i, j) = Gq(r[j].re);
            a(i + 1, j) = Gq(r[j].im);
        }
        i += 2;
    }
    return a.nullspace();
}

MultiSeries combine(const std::vector<MultiSeries> &xs, const QMatrix &K, size_t col) {
    MultiSeries s;
    bool first = true;
    for (size_t j = 0; j < xs.size(); ++j) {
        MultiSeries t = xs[j].scale(K(j, col));
        s = first ? t : s + t;
        first = false;
    }
    return s;
}

std::vector<VectorField> combine_fields(const std::vector<VectorField> &L, const QMatrix &K) {
    std::vector<MultiSeries> P, Q;
    for (auto &l : L) P.push_back(l.P), Q.push_back(l.Q);
    std::vector<VectorField> out;
    for (size_t c = 0; c < K.cols(); ++c) out.push_back({combine(P, K, c), combine(Q, K, c)});
    return out;
}

std::vector<std::vector<MultiSeries>> field_columns(const std::vector<VectorField> &L) {
    std::vector<std::vector<MultiSeries>> cols;
    for (auto &l : L) cols.push_back({l.P.with_vars(ZW), l.Q.with_vars(ZW)});
    return cols;
}

// Row-reduced basis of the span, lowest degrees first.
std::vector<VectorField> canonical_basis(const std::vector<VectorField> &L) {
    size_t p = L.size();
    if (p == 0) return {};
    auto rows = coefficient_rows(field_columns(L));
    QMatrix B = to_matrix(rows, p).transpose(); // p x monomials
    QMatrix aug = B.hstack(QMatrix::identity(p));
    auto piv = aug.rref_in_place();
    size_t r = 0;
    for (size_t c : piv)
        if (c < B.cols()) ++r;
    QMatrix K(p, r);
    for (size_t i = 0; i < r; ++i)
        for (size_t j = 0; j < p; ++j) K(j, i) = aug(i, B.cols() + j);
    return combine_fields(L, K);
}

MultiSeries conj_field_component(const MultiSeries &s) {
    return s.with_vars(ZW).conj().rename({{"z", "zb"}, {"w", "wb"}});
}

} // namespace

MultiSeries real_tangency_defect(const VectorField &L, const ComplexDefining &M) {
    const std::vector<std::string> CV{"z", "zb", "wb"};
    MultiSeries rho = M.defining_function();
    MultiSeries P = compose(L.P.with_vars(ZW), {{"w", rho}}).with_vars(CV);
    MultiSeries Q = compose(L.Q.with_vars(ZW), {{"w", rho}}).with_vars(CV);
    MultiSeries Pb = conj_field_component(L.P).with_vars(CV), Qb = conj_field_component(L.Q).with_vars(CV);
    return Q - rho.derivative("z") * P - rho.derivative("zb") * Pb - rho.derivative("wb") * Qb;
}

// ---------------------------------------------------------------- symmetries

SymmetryBasis formal_symmetries(const ComplexDefining &M, int order, bool real_form) {
    int m = M.m;
    if (order < 3 * m + 2) throw OrderTooLow(order, 3 * m + 2);
    SymmetryBasis out;
    out.m = m;
    out.order = order;
    out.real_form = real_form;
    AssociatedODE E = eliminate(M, order);
    FuchsReport rep = check_fuchsian_ode(E);
    LinearODESystem S = assemble_Y_system(E, rep);
    int known = 0;
    auto A = residue_expansion(S, order, &known);
    out.spectrum = residue_spectrum(A[0]);
    out.candidates = holomorphic_solutions(A, std::min(order, known));
    StructuralForm SF = structural_reduce(E);

    std::vector<LaurentInW> Ps;
    std::vector<MultiSeries> Qs;
    int pmax = 0;
    for (auto &y : out.candidates.solutions) {
        MultiSeries Q0 = y[2].mul_monomial("w", 1), Q1 = y[3].mul_monomial("w", 1);
        Ps.push_back(SF.reconstruct_P(y[0], y[1], Q1));
        Qs.push_back(Q0.with_vars(ZW) + Q1.with_vars(ZW).mul_monomial("z", 1));
        pmax = std::max(pmax, Ps.back().pole_order());
    }
    size_t p = Ps.size();
    QMatrix K1 = QMatrix::identity(p);
    if (pmax > 0) {
        std::vector<std::vector<MultiSeries>> parts;
        for (auto &P : Ps) {
            MultiSeries s = P.mul_power(pmax).to_series().with_vars(ZW);
            MultiSeries pp(ZW, s.order());
            for (auto &[e, c] : s.terms())
                if (e[1] < pmax) pp.set(e, c);
            parts.push_back({pp});
        }
        K1 = combination_kernel(parts);
        out.notes.push_back("pole-part constraints removed " + std::to_string(p - K1.cols()) + " candidates");
    }
    std::vector<VectorField> fields;
    for (size_t c = 0; c < K1.cols(); ++c) {
        LaurentInW P = LaurentInW(MultiSeries(ZW, 1 << 20), 0);
        MultiSeries Q(ZW, 1 << 20);
        for (size_t j = 0; j < p; ++j) {
            if (K1(j, c).is_zero()) continue;
            P = P + Ps[j].scale(K1(j, c));
            Q = Q + Qs[j].scale(K1(j, c));
        }
        if (P.pole_order() > 0) throw std::logic_error("pole part survived its constraints");
        fields.push_back({P.to_series().with_vars(ZW), Q});
    }
    out.after_pole_filter = int(fields.size());

    std::vector<std::vector<MultiSeries>> res;
    for (auto &L : fields) res.push_back({tangency_residual(L, E)});
    fields = combine_fields(fields, combination_kernel(res));

    if (real_form && !fields.empty()) {
        std::vector<std::vector<MultiSeries>> def;
        for (auto &L : fields) def.push_back({real_tangency_defect(L, M)});
        for (auto &L : fields) def.push_back({real_tangency_defect({L.P.scale(Gq::i()), L.Q.scale(Gq::i())}, M)});
        QMatrix R = real_combination_kernel(def);
        size_t q = fields.size();
        QMatrix K(q, R.cols());
        for (size_t c = 0; c < R.cols(); ++c)
            for (size_t j = 0; j < q; ++j) K(j, c) = R(j, c) + Gq::i() * R(j + q, c);
        fields = combine_fields(fields, K);
    }

    out.fields = real_form ? fields : canonical_basis(fields);
    out.valid_order = out.candidates.order;
    for (auto &L : out.fields) {
        out.valid_order = std::min({out.valid_order, L.P.order(), L.Q.order()});
        out.residuals.push_back(tangency_residual(L, E));
    }
    for (auto &L : out.fields) {
        L.P = L.P.truncate(out.valid_order);
        L.Q = L.Q.truncate(out.valid_order);
    }
    return out;
}

VectorField lie_bracket(const VectorField &a, const VectorField &b) {
    MultiSeries P1 = a.P.with_vars(ZW), Q1 = a.Q.with_vars(ZW), P2 = b.P.with_vars(ZW), Q2 = b.Q.with_vars(ZW);
    auto D = [](const MultiSeries &s, const char *v) { return s.derivative(v); };
    VectorField r;
    r.P = P1 * D(P2, "z") + Q1 * D(P2, "w") - P2 * D(P1, "z") - Q2 * D(P1, "w");
    r.Q = P1 * D(Q2, "z") + Q1 * D(Q2, "w") - P2 * D(Q1, "z") - Q2 * D(Q1, "w");
    return r;
}

std::optional<std::vector<Gq>> in_span(const VectorField &L, const std::vector<VectorField> &basis, int order) {
    std::vector<VectorField> all(basis);
    all.push_back(L);
    auto cols = field_columns(all);
    for (auto &c : cols)
        for (auto &s : c) s = s.truncate(order);
    auto rows = coefficient_rows(cols);
    size_t p = basis.size();
    QMatrix A(rows.size(), p), b(rows.size(), 1);
    size_t i = 0;
    for (auto &[k, r] : rows) {
        for (size_t j = 0; j < p; ++j) A(i, j) = r[j];
        b(i, 0) = r[p];
        ++i;
    }
    if (rows.empty()) return std::vector<Gq>(p, Gq(0));
    if (p == 0) return b.is_zero() ? std::optional<std::vector<Gq>>(std::vector<Gq>{}) : std::nullopt;
    auto x = A.solve(b);
    if (!x) return std::nullopt;
    std::vector<Gq> c;
    for (size_t j = 0; j < p; ++j) c.push_back((*x)(j, 0));
    return c;
}

// ---------------------------------------------------------------- convergence

std::string to_string(Growth g) {
    switch (g) {
    case Growth::bounded: return "growth-bounded";
    case Growth::unbounded: return "growth-unbounded";
    default: return "inconclusive";
    }
}

ConvergenceReport convergence_diagnostic(const std::vector<MultiSeries> &y, double bound, int kmin, int kmax) {
    int o = 1 << 30;
    for (auto &s : y) o = std::min(o, s.order());
    if (y.empty() || o >= (1 << 20)) {
        o = 0;
        for (auto &s : y)
            for (auto &[e, c] : s.terms()) o = std::max(o, s.total_degree(e));
    }
    if (o < 8) throw std::invalid_argument("convergence diagnostic needs order at least 8");
    std::vector<mpq_class> n2(o + 1, mpq_class(0));
    for (auto &s : y)
        for (auto &[e, c] : s.terms()) {
            int d = s.total_degree(e);
            if (d <= o) n2[d] = std::max(n2[d], c.norm2());
        }
    ConvergenceReport r;
    r.bound = bound;
    for (auto &x : n2) r.norms.push_back(std::sqrt(x.get_d()));
    if (kmax < 0 || kmax > o - 1) kmax = o - 1;
    bool over = false;
    for (int k = std::max(kmin, 0); k <= kmax; ++k) {
        if (sgn(n2[k]) == 0 || sgn(n2[k + 1]) == 0) continue;
        double q = std::sqrt(mpq_class(n2[k + 1] / n2[k]).get_d());
        r.ratios.push_back({k, q});
        if (q > bound) over = true;
    }
    r.verdict = r.ratios.empty() ? Growth::inconclusive : over ? Growth::unbounded : Growth::bounded;
    return r;
}

ConvergenceReport convergence_diagnostic(const VectorField &L, double bound, int kmin, int kmax) {
    return convergence_diagnostic(std::vector<MultiSeries>{L.P.with_vars(ZW), L.Q.with_vars(ZW)}, bound, kmin, kmax);
}

} // namespace nmcr
