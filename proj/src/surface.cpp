#include "nmcr/surface.hpp"

#include <cmath>

namespace nmcr {

namespace {

const std::vector<std::string> RV{"z", "zb", "u"};
const std::vector<std::string> CV{"z", "zb", "wb"};

MultiSeries kl_coefficient(const MultiSeries &f, int k, int l, const std::string &t) {
    MultiSeries r({t}, f.order() - k - l);
    int iz = f.var_index("z"), izb = f.var_index("zb"), it = f.var_index(t);
    for (auto &[e, c] : f.terms())
        if (e[iz] == k && e[izb] == l) r.set({it < 0 ? 0 : e[it]}, c);
    return r;
}

} // namespace

const std::vector<SurfaceRow> &fuchs_surface_rows() {
    static const std::vector<SurfaceRow> rows{{2, 2, 1}, {2, 3, 2}, {3, 2, 2}, {3, 3, 2},
                                              {2, 4, 3}, {4, 2, 3}, {3, 4, 3}, {4, 3, 3}};
    return rows;
}

MultiSeries RealDefining::h(int k, int l) const { return kl_coefficient(psi, k, l, "u"); }

void RealDefining::check() const {
    if (m < 1) throw std::invalid_argument("nonminimality order must be at least 1");
    if (sign != 1 && sign != -1) throw std::invalid_argument("sign must be +1 or -1");
    for (auto &v : psi.vars())
        if (v != "z" && v != "zb" && v != "u") throw std::invalid_argument("unexpected variable " + v);
    MultiSeries p = psi.with_vars(RV);
    Gq c = p.coeff(Exponent{1, 1, 0});
    if (!c.is_real() || c.is_zero() || (sgn(c.re) > 0) != (sign > 0))
        throw std::invalid_argument("z zb coefficient must be a nonzero real number of the declared sign");
    for (auto &[e, x] : p.terms()) {
        if (e[0] == 0 || e[1] == 0) throw std::invalid_argument("real form is not in normal coordinates");
        if ((e[0] == 1 || e[1] == 1) && !(e[0] == 1 && e[1] == 1 && e[2] == 0))
            throw std::invalid_argument("real form has terms outside the admissible shape");
        if (p.coeff(Exponent{e[1], e[0], e[2]}) != x.conj())
            throw std::invalid_argument("real form violates h_kl = conj(h_lk)");
    }
}

MultiSeries ComplexDefining::phi_kl(int k, int l) const { return kl_coefficient(phi, k, l, "wb"); }

MultiSeries ComplexDefining::full_exponent() const {
    MultiSeries p = phi.with_vars(CV).mul_monomial("wb", m - 1);
    return sign > 0 ? p : -p;
}

MultiSeries ComplexDefining::defining_function() const {
    MultiSeries e = exp_series(full_exponent().scale(Gq::i()));
    return e.mul_monomial("wb", 1);
}

Gq normalizing_scale(const mpq_class &t) {
    if (sgn(t) <= 0) throw NonNormalizable("z zb coefficient must be positive to normalize");
    if (t < 1) return normalizing_scale(mpq_class(1 / t)).inverse();
    mpz_class n = t.get_num() * t.get_den();
    if (n > mpz_class("100000000000000"))
        throw NonNormalizable("normalizing scale search range exceeded for " + t.get_str());
    mpz_class a;
    mpz_sqrt(a.get_mpz_t(), n.get_mpz_t());
    for (; 2 * a * a >= n; --a) {
        mpz_class r = n - a * a, b;
        if (mpz_perfect_square_p(r.get_mpz_t())) {
            mpz_sqrt(b.get_mpz_t(), r.get_mpz_t());
            Gq lam{mpq_class(a, t.get_den()), mpq_class(b, t.get_den())};
            lam.re.canonicalize();
            lam.im.canonicalize();
            return lam;
        }
        if (a == 0) break;
    }
    throw NonNormalizable("no lambda in Q(i) with |lambda|^2 = " + t.get_str());
}

MultiSeries rescale_z(const MultiSeries &f, const Gq &lambda, const std::string &z, const std::string &zb) {
    MultiSeries r(f.vars(), f.order());
    int iz = f.var_index(z), izb = f.var_index(zb);
    std::vector<Gq> lp{Gq(1)}, lbp{Gq(1)};
    for (auto &[e, c] : f.terms()) {
        int a = iz < 0 ? 0 : e[iz], b = izb < 0 ? 0 : e[izb];
        while (int(lp.size()) <= a) lp.push_back(lp.back() * lambda);
        while (int(lbp.size()) <= b) lbp.push_back(lbp.back() * lambda.conj());
        r.set(e, c * lp[a] * lbp[b]);
    }
    return r;
}

ComplexTransfer real_to_complex(const RealDefining &M, int order) {
    M.check();
    if (order > M.order()) throw std::invalid_argument("requested order exceeds the data order");
    int N = order;
    int m = M.m;
    MultiSeries psi = M.psi.with_vars(RV).truncate(N);
    MultiSeries F = psi.mul_monomial("u", m);
    // w - wb - 2i F(z, zb, (w + wb)/2) = 0
    std::vector<std::string> vs{"z", "zb", "wb", "w"};
    MultiSeries half = (MultiSeries::variable(vs, N + m, "w") + MultiSeries::variable(vs, N + m, "wb")).scale(Gq(1, 2));
    MultiSeries Fc = compose(F, {{"u", half}});
    MultiSeries G = MultiSeries::variable(vs, N + m, "w") - MultiSeries::variable(vs, N + m, "wb") -
                    Fc.scale(Gq(2) * Gq::i());
    MultiSeries R = solve_implicit({G}, {"w"}, N + m)[0].with_vars(CV);
    MultiSeries theta1 = R.div_monomial("wb", 1) - MultiSeries::constant(CV, N + m - 1, Gq(1));
    MultiSeries lg = log1p_series(theta1);
    if (!lg.divisible_by("wb", m - 1)) throw std::logic_error("log theta is not divisible by wb^(m-1)");
    Gq eps_i = Gq::i() * Gq(long(M.sign));
    MultiSeries raw = lg.div_monomial("wb", m - 1).scale(eps_i.inverse()).truncate(N);
    Gq t = raw.coeff(Exponent{1, 1, 0});
    if (!t.is_real() || sgn(t.re) <= 0) throw NonNormalizable("z zb coefficient of the exponent is not positive real");
    Gq lam = normalizing_scale(mpq_class(1 / t.re));
    ComplexTransfer out;
    out.lambda = lam;
    out.raw_phi = raw;
    out.surface.m = m;
    out.surface.sign = M.sign;
    out.surface.phi = rescale_z(raw, lam);
    return out;
}

RealDefining complex_to_real(const ComplexDefining &M, int order) {
    if (order > M.order()) throw std::invalid_argument("requested order exceeds the data order");
    int N = order, m = M.m;
    ComplexDefining Mt = M;
    Mt.phi = M.phi.with_vars(CV).truncate(N);
    MultiSeries R = Mt.defining_function(); // order N + m
    std::vector<std::string> vs{"z", "zb", "u", "v"};
    int o = N + m;
    MultiSeries u = MultiSeries::variable(vs, o, "u"), v = MultiSeries::variable(vs, o, "v");
    MultiSeries tau = u - v.scale(Gq::i());
    MultiSeries Rc = compose(R, {{"wb", tau}});
    MultiSeries G = u + v.scale(Gq::i()) - Rc;
    MultiSeries F = solve_implicit({G}, {"v"}, o)[0].with_vars(RV);
    if (!F.divisible_by("u", m)) throw std::logic_error("real defining function is not divisible by u^m");
    RealDefining out;
    out.m = m;
    out.sign = M.sign;
    out.psi = F.div_monomial("u", m).truncate(N);
    return out;
}

MultiSeries check_reality(const ComplexDefining &M) {
    MultiSeries f = M.full_exponent();
    // conjugate function with z and zb exchanged
    MultiSeries fb = f.conj().rename({{"z", "zb"}, {"zb", "z"}}).with_vars(CV);
    MultiSeries tau = MultiSeries::variable(CV, f.order() + 1, "wb");
    MultiSeries arg = mul(tau, exp_series(fb.scale(-Gq::i())));
    MultiSeries lhs = compose(f, {{"wb", arg}});
    return (lhs - fb).with_vars(CV);
}

ValidationReport validate(const ComplexDefining &M) {
    ValidationReport r;
    MultiSeries p = M.phi.with_vars(CV);
    r.normal_coordinates = true;
    r.admissible = M.m >= 1 && (M.sign == 1 || M.sign == -1);
    for (auto &[e, c] : p.terms()) {
        if (e[0] == 0 || e[1] == 0) r.normal_coordinates = false;
        bool lead = e[0] == 1 && e[1] == 1 && e[2] == 0;
        if ((e[0] == 1 || e[1] == 1) && !lead) {
            r.admissible = false;
            r.notes.push_back("term " + c.str() + " z^" + std::to_string(e[0]) + " zb^" + std::to_string(e[1]) +
                              " wb^" + std::to_string(e[2]) + " outside the admissible shape");
        }
    }
    if (p.coeff(Exponent{1, 1, 0}) != Gq(1)) {
        r.admissible = false;
        r.notes.push_back("z zb coefficient is not 1");
    }
    if (!r.normal_coordinates) r.notes.push_back("phi has pure z or pure zb terms");
    r.reality_residual = check_reality(M);
    r.reality_ok = r.reality_residual.is_zero();
    if (!r.reality_ok) r.notes.push_back("reality residual is nonzero");
    r.levi_nondegenerate = !p.coeff(Exponent{1, 1, 0}).is_zero();
    return r;
}

int nonminimality_order(const MultiSeries &F) {
    if (F.is_zero()) throw std::domain_error("nonminimality order undetermined at this truncation");
    int iz = F.var_index("z"), izb = F.var_index("zb");
    if (iz < 0 || izb < 0) throw std::invalid_argument("defining function must involve z and zb");
    for (auto &[e, c] : F.terms())
        if (e[iz] == 0 || e[izb] == 0) throw std::invalid_argument("defining function is not in normal coordinates");
    int m = F.valuation_in("u");
    if (m == 0) throw std::domain_error("hypersurface is minimal (F(z, zb, 0) does not vanish)");
    return m;
}

RealDefining random_real_surface(std::mt19937_64 &rng, int m, int sign, int order, FuchsKind kind, double density) {
    std::uniform_int_distribution<int> num(-3, 3), den(1, 3);
    std::bernoulli_distribution keep(density);
    auto rq = [&] {
        mpq_class q(num(rng), den(rng));
        q.canonicalize();
        return q;
    };
    RealDefining M;
    M.m = m;
    M.sign = sign;
    M.psi = MultiSeries(RV, order);
    M.psi.set({1, 1, 0}, Gq(long(sign)));
    auto bound = [&](int k, int l) {
        for (auto &r : fuchs_surface_rows())
            if (r.k == k && r.l == l) return r.weight * (m - 1);
        return 0;
    };
    for (int k = 2; k <= order; ++k)
        for (int l = k; k + l <= order; ++l)
            for (int j = 0; k + l + j <= order; ++j) {
                if (!keep(rng)) continue;
                if (kind == FuchsKind::fuchsian && j < std::max(bound(k, l), bound(l, k))) continue;
                Gq c(rq(), k == l ? mpq_class(0) : rq());
                M.psi.set({k, l, j}, c);
                M.psi.set({l, k, j}, c.conj());
            }
    if (kind == FuchsKind::non_fuchsian) {
        if (m < 2) throw std::invalid_argument("every surface with m = 1 is Fuchsian");
        // violate one listed row at an order just below its bound
        std::uniform_int_distribution<int> pick(0, int(fuchs_surface_rows().size()) - 1);
        SurfaceRow r;
        do {
            r = fuchs_surface_rows()[pick(rng)];
        } while (r.k + r.l + r.weight * (m - 1) - 1 > order);
        std::uniform_int_distribution<int> jd(0, r.weight * (m - 1) - 1);
        int j = jd(rng);
        Gq c(mpq_class(1 + std::abs(num(rng))), r.k == r.l ? mpq_class(0) : rq());
        M.psi.set({r.k, r.l, j}, c);
        M.psi.set({r.l, r.k, j}, c.conj());
    }
    return M;
}

} // namespace nmcr
