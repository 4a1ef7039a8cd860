#include "nmcr/series.hpp"

#include "nmcr/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace nmcr {

namespace {

int deg(const Exponent &e) { return std::accumulate(e.begin(), e.end(), 0); }

// Position of each of `from` inside `to`.
std::vector<int> var_map(const std::vector<std::string> &from, const std::vector<std::string> &to) {
    std::vector<int> m(from.size());
    for (size_t i = 0; i < from.size(); ++i) {
        auto it = std::find(to.begin(), to.end(), from[i]);
        m[i] = it == to.end() ? -1 : int(it - to.begin());
    }
    return m;
}

void prune(std::map<Exponent, Gq> &t) {
    for (auto it = t.begin(); it != t.end();) {
        if (it->second.is_zero())
            it = t.erase(it);
        else
            ++it;
    }
}

} // namespace

MultiSeries::MultiSeries(std::vector<std::string> vars, int order)
    : vars_(std::move(vars)), order_(std::max(order, -1)) {
    for (size_t i = 0; i < vars_.size(); ++i)
        for (size_t j = i + 1; j < vars_.size(); ++j)
            if (vars_[i] == vars_[j]) throw std::invalid_argument("duplicate variable " + vars_[i]);
}

MultiSeries MultiSeries::constant(std::vector<std::string> vars, int order, const Gq &c) {
    MultiSeries s(std::move(vars), order);
    s.set(Exponent(s.vars_.size(), 0), c);
    return s;
}

MultiSeries MultiSeries::variable(std::vector<std::string> vars, int order, const std::string &name) {
    MultiSeries s(std::move(vars), order);
    int k = s.var_index(name);
    if (k < 0) throw std::invalid_argument("unknown variable " + name);
    Exponent e(s.vars_.size(), 0);
    e[k] = 1;
    s.set(e, Gq(1));
    return s;
}

MultiSeries MultiSeries::monomial(std::vector<std::string> vars, int order, Exponent e, const Gq &c) {
    MultiSeries s(std::move(vars), order);
    if (e.size() != s.vars_.size()) throw std::invalid_argument("exponent length mismatch");
    s.set(e, c);
    return s;
}

int MultiSeries::var_index(const std::string &name) const {
    auto it = std::find(vars_.begin(), vars_.end(), name);
    return it == vars_.end() ? -1 : int(it - vars_.begin());
}

Gq MultiSeries::coeff(const Exponent &e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Gq() : it->second;
}

Gq MultiSeries::coeff_of(const std::map<std::string, int> &e) const {
    Exponent x(vars_.size(), 0);
    for (auto &[v, k] : e) {
        int i = var_index(v);
        if (i < 0) {
            if (k != 0) return Gq();
            continue;
        }
        x[i] = k;
    }
    return coeff(x);
}

void MultiSeries::set(const Exponent &e, const Gq &c) {
    if (e.size() != vars_.size()) throw std::invalid_argument("exponent length mismatch");
    for (int k : e)
        if (k < 0) throw std::invalid_argument("negative exponent");
    if (deg(e) > order_ || c.is_zero()) {
        terms_.erase(e);
        return;
    }
    terms_[e] = c;
}

void MultiSeries::add_term(const Exponent &e, const Gq &c) {
    if (deg(e) > order_ || c.is_zero()) return;
    auto [it, fresh] = terms_.emplace(e, c);
    if (!fresh) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

int MultiSeries::total_degree(const Exponent &e) const { return deg(e); }

int MultiSeries::valuation() const {
    int v = order_ + 1;
    for (auto &[e, c] : terms_) v = std::min(v, deg(e));
    return v;
}

int MultiSeries::valuation_in(const std::string &name) const {
    int k = var_index(name);
    if (k < 0) return is_zero() ? order_ + 1 : 0;
    int v = order_ + 1;
    for (auto &[e, c] : terms_) v = std::min(v, e[k]);
    return v;
}

int MultiSeries::max_degree_in(const std::string &name) const {
    int k = var_index(name);
    int v = -1;
    for (auto &[e, c] : terms_) v = std::max(v, k < 0 ? 0 : e[k]);
    return v;
}

MultiSeries MultiSeries::with_vars(const std::vector<std::string> &vars) const {
    MultiSeries r(vars, order_);
    auto m = var_map(vars_, vars);
    for (auto &[e, c] : terms_) {
        Exponent x(vars.size(), 0);
        for (size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            if (m[i] < 0) throw std::invalid_argument("variable " + vars_[i] + " dropped while nonzero");
            x[m[i]] = e[i];
        }
        r.terms_.emplace(std::move(x), c);
    }
    return r;
}

MultiSeries MultiSeries::truncate(int n) const {
    MultiSeries r(vars_, std::min(n, order_));
    for (auto &[e, c] : terms_)
        if (deg(e) <= r.order_) r.terms_.emplace(e, c);
    return r;
}

MultiSeries MultiSeries::with_order(int n) const {
    MultiSeries r(vars_, n);
    for (auto &[e, c] : terms_)
        if (deg(e) <= r.order_) r.terms_.emplace(e, c);
    return r;
}

MultiSeries MultiSeries::rename(const std::map<std::string, std::string> &m) const {
    std::vector<std::string> nv = vars_;
    for (auto &v : nv) {
        auto it = m.find(v);
        if (it != m.end()) v = it->second;
    }
    MultiSeries r(nv, order_);
    r.terms_ = terms_;
    return r;
}

MultiSeries MultiSeries::conj() const {
    MultiSeries r(vars_, order_);
    for (auto &[e, c] : terms_) r.terms_.emplace(e, c.conj());
    return r;
}

MultiSeries MultiSeries::scale(const Gq &k) const {
    MultiSeries r(vars_, order_);
    if (k.is_zero()) return r;
    for (auto &[e, c] : terms_) r.terms_.emplace(e, c * k);
    return r;
}

MultiSeries MultiSeries::derivative(const std::string &v) const {
    int k = var_index(v);
    MultiSeries r(vars_, order_ - 1);
    if (k < 0) return r;
    for (auto &[e, c] : terms_) {
        if (e[k] == 0) continue;
        Exponent x = e;
        x[k] -= 1;
        r.add_term(x, c * Gq(e[k]));
    }
    return r;
}

MultiSeries MultiSeries::antiderivative(const std::string &v) const {
    int k = var_index(v);
    if (k < 0) throw std::invalid_argument("antiderivative in unknown variable " + v);
    MultiSeries r(vars_, order_ + 1);
    for (auto &[e, c] : terms_) {
        Exponent x = e;
        x[k] += 1;
        r.terms_.emplace(x, c * Gq(1, x[k]));
    }
    return r;
}

MultiSeries MultiSeries::mul_monomial(const std::string &v, int p) const {
    int k = var_index(v);
    if (k < 0) throw std::invalid_argument("unknown variable " + v);
    if (p < 0) return div_monomial(v, -p);
    MultiSeries r(vars_, order_ + p);
    for (auto &[e, c] : terms_) {
        Exponent x = e;
        x[k] += p;
        r.terms_.emplace(std::move(x), c);
    }
    return r;
}

bool MultiSeries::divisible_by(const std::string &v, int p) const {
    int k = var_index(v);
    if (p <= 0) return true;
    if (k < 0) return is_zero();
    for (auto &[e, c] : terms_)
        if (e[k] < p) return false;
    return true;
}

MultiSeries MultiSeries::div_monomial(const std::string &v, int p) const {
    if (!divisible_by(v, p)) throw std::domain_error("series not divisible by " + v + "^" + std::to_string(p));
    int k = var_index(v);
    MultiSeries r(vars_, order_ - p);
    if (k < 0) return r;
    for (auto &[e, c] : terms_) {
        Exponent x = e;
        x[k] -= p;
        r.terms_.emplace(std::move(x), c);
    }
    return r;
}

MultiSeries MultiSeries::extract(const std::string &v, int p) const {
    int k = var_index(v);
    std::vector<std::string> nv;
    for (auto &x : vars_)
        if (x != v) nv.push_back(x);
    MultiSeries r(nv, order_ - p);
    if (k < 0) {
        if (p == 0) {
            r.order_ = order_;
            r.terms_ = terms_;
        }
        return r;
    }
    for (auto &[e, c] : terms_) {
        if (e[k] != p) continue;
        Exponent x;
        for (size_t i = 0; i < e.size(); ++i)
            if (int(i) != k) x.push_back(e[i]);
        r.terms_.emplace(std::move(x), c);
    }
    return r;
}

MultiSeries MultiSeries::at_zero(const std::string &v) const {
    int k = var_index(v);
    MultiSeries r(vars_, order_);
    for (auto &[e, c] : terms_)
        if (k < 0 || e[k] == 0) r.terms_.emplace(e, c);
    return r;
}

std::complex<double> MultiSeries::evaluate(const std::map<std::string, std::complex<double>> &at) const {
    std::vector<std::complex<double>> x(vars_.size());
    for (size_t i = 0; i < vars_.size(); ++i) {
        auto it = at.find(vars_[i]);
        if (it == at.end()) throw std::invalid_argument("no value for variable " + vars_[i]);
        x[i] = it->second;
    }
    std::complex<double> s = 0;
    for (auto &[e, c] : terms_) {
        std::complex<double> t = c.to_complex();
        for (size_t i = 0; i < e.size(); ++i)
            if (e[i]) t *= std::pow(x[i], e[i]);
        s += t;
    }
    return s;
}

double MultiSeries::max_abs_coeff() const {
    double m = 0;
    for (auto &[e, c] : terms_) m = std::max(m, std::abs(c.to_complex()));
    return m;
}

bool MultiSeries::equal_mod(const MultiSeries &o, int n) const {
    auto vs = union_vars(vars_, o.vars_);
    auto a = with_vars(vs).truncate(n);
    auto b = o.with_vars(vs).truncate(n);
    return a.terms_ == b.terms_;
}

std::string MultiSeries::str() const {
    std::ostringstream os;
    bool first = true;
    for (auto &[e, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << c;
        for (size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            os << "*" << vars_[i];
            if (e[i] > 1) os << "^" << e[i];
        }
    }
    if (first) os << "0";
    os << " + O(" << order_ + 1 << ")";
    return os.str();
}

std::vector<std::string> union_vars(const std::vector<std::string> &a, const std::vector<std::string> &b) {
    std::vector<std::string> r = a;
    for (auto &v : b)
        if (std::find(r.begin(), r.end(), v) == r.end()) r.push_back(v);
    return r;
}

MultiSeries add(const MultiSeries &x, const MultiSeries &y) {
    auto vs = union_vars(x.vars(), y.vars());
    MultiSeries r = x.with_vars(vs).truncate(std::min(x.order(), y.order()));
    MultiSeries yy = y.with_vars(vs);
    for (auto &[e, c] : yy.terms()) r.add_term(e, c);
    return r;
}

MultiSeries operator+(const MultiSeries &x, const MultiSeries &y) { return add(x, y); }
MultiSeries operator-(const MultiSeries &x) { return x.scale(Gq(-1)); }
MultiSeries operator-(const MultiSeries &x, const MultiSeries &y) { return add(x, -y); }
MultiSeries operator*(const MultiSeries &x, const MultiSeries &y) { return mul(x, y); }
MultiSeries operator*(const Gq &c, const MultiSeries &x) { return x.scale(c); }

bool operator==(const MultiSeries &x, const MultiSeries &y) {
    if (x.order() != y.order()) return false;
    auto vs = union_vars(x.vars(), y.vars());
    return x.with_vars(vs).terms() == y.with_vars(vs).terms();
}

MultiSeries mul(const MultiSeries &x, const MultiSeries &y, int cap) {
    auto vs = union_vars(x.vars(), y.vars());
    int o = std::min({x.order(), y.order(), cap});
    MultiSeries r(vs, o);
    if (o < 0 || x.is_zero() || y.is_zero()) return r;
    MultiSeries a = x.with_vars(vs), b = y.with_vars(vs);
    struct T {
        int d;
        const Exponent *e;
        const Gq *c;
    };
    auto list = [](const MultiSeries &s) {
        std::vector<T> v;
        for (auto &[e, c] : s.terms()) v.push_back({deg(e), &e, &c});
        std::stable_sort(v.begin(), v.end(), [](const T &p, const T &q) { return p.d < q.d; });
        return v;
    };
    auto la = list(a), lb = list(b);
    const size_t n = vs.size();
    Exponent e(n);
    Gq prod;
    for (auto &p : la) {
        if (p.d > o) break;
        for (auto &q : lb) {
            if (p.d + q.d > o) break;
            for (size_t i = 0; i < n; ++i) e[i] = (*p.e)[i] + (*q.e)[i];
            prod = *p.c;
            prod *= *q.c;
            auto [it, fresh] = r.terms_.try_emplace(e, prod);
            if (!fresh) it->second += prod;
        }
    }
    prune(r.terms_);
    return r;
}

MultiSeries pow(const MultiSeries &x, int k) {
    if (k < 0) throw std::invalid_argument("negative power");
    MultiSeries r = MultiSeries::constant(x.vars(), x.order(), Gq(1));
    MultiSeries b = x;
    while (k) {
        if (k & 1) r = mul(r, b);
        k >>= 1;
        if (k) b = mul(b, b);
    }
    return r;
}

namespace {

void require_no_constant(const MultiSeries &x, const char *what) {
    if (!x.coeff(Exponent(x.vars().size(), 0)).is_zero())
        throw std::domain_error(std::string(what) + ": argument has a nonzero constant term");
}

} // namespace

MultiSeries exp_series(const MultiSeries &x) {
    require_no_constant(x, "exp_series");
    int v = std::max(1, x.valuation());
    int n = x.order() < 0 ? 0 : x.order() / v;
    MultiSeries one = MultiSeries::constant(x.vars(), x.order(), Gq(1));
    MultiSeries r = one;
    for (int k = n; k >= 1; --k) r = one + mul(x.scale(Gq(1, k)), r);
    return r;
}

MultiSeries log1p_series(const MultiSeries &x) {
    require_no_constant(x, "log1p_series");
    int v = std::max(1, x.valuation());
    int n = x.order() < 0 ? 0 : x.order() / v;
    MultiSeries r(x.vars(), x.order());
    // log(1+x) = x(1 - x(1/2 - x(1/3 - ...)))
    for (int k = n; k >= 1; --k) {
        MultiSeries c = MultiSeries::constant(x.vars(), x.order(), Gq(1, k));
        r = c - mul(x, r);
    }
    return mul(x, r);
}

MultiSeries inverse(const MultiSeries &x) {
    Gq c = x.coeff(Exponent(x.vars().size(), 0));
    if (c.is_zero()) throw std::domain_error("inverse: series is not a unit");
    MultiSeries one = MultiSeries::constant(x.vars(), x.order(), Gq(1));
    MultiSeries y = one - x.scale(c.inverse());
    int v = std::max(1, y.valuation());
    int n = x.order() < 0 ? 0 : x.order() / v;
    MultiSeries r = one;
    for (int k = 0; k < n; ++k) r = one + mul(y, r);
    return r.scale(c.inverse());
}

namespace {

struct Composer {
    std::vector<std::string> out_vars;
    std::vector<int> keep_map;  // x var -> out var for unsubstituted vars, -1 if substituted
    std::vector<int> sub_order; // x var indices that are substituted, outermost first
    std::vector<MultiSeries> subs; // indexed by x var
    std::vector<int> sub_val;      // valuation of each substitute (>= 0)
    int nx = 0;

    using Group = std::vector<std::pair<const Exponent *, const Gq *>>;

    MultiSeries leaf(const Group &g, int target) const {
        MultiSeries r(out_vars, target);
        Exponent e(out_vars.size());
        for (auto &[x, c] : g) {
            std::fill(e.begin(), e.end(), 0);
            for (int i = 0; i < nx; ++i)
                if (keep_map[i] >= 0) e[keep_map[i]] += (*x)[i];
            r.add_term(e, *c);
        }
        return r;
    }

    MultiSeries rec(const Group &g, size_t level, int target) const {
        if (target < 0) return MultiSeries(out_vars, -1);
        if (level == sub_order.size()) return leaf(g, target);
        int v = sub_order[level];
        int val = sub_val[v];
        std::map<int, Group> split;
        for (auto &t : g) split[(*t.first)[v]].push_back(t);
        if (split.empty()) return MultiSeries(out_vars, target);
        int top = split.rbegin()->first;
        MultiSeries acc(out_vars, target);
        // Horner: c_0 + s (c_1 + s (c_2 + ...)); inner levels need less precision
        for (int e = top; e >= 0; --e) {
            int t = target - e * val;
            if (t < 0) continue;
            MultiSeries inner = acc.is_zero() ? MultiSeries(out_vars, t) : mul(acc.with_order(t), subs[v], t);
            auto it = split.find(e);
            if (it != split.end()) inner = add(inner.with_order(t), rec(it->second, level + 1, t));
            acc = inner.with_order(t);
        }
        return acc;
    }
};

} // namespace

MultiSeries compose(const MultiSeries &x, const std::map<std::string, MultiSeries> &subs, bool exact) {
    Composer cp;
    cp.nx = int(x.vars().size());
    std::vector<std::string> out;
    for (auto &v : x.vars())
        if (!subs.count(v)) out.push_back(v);
    for (auto &[v, s] : subs)
        if (x.has_var(v)) out = union_vars(out, s.vars());
    cp.out_vars = out;
    cp.keep_map.assign(cp.nx, -1);
    cp.subs.resize(cp.nx);
    cp.sub_val.assign(cp.nx, 0);
    int target = exact ? (1 << 30) : x.order();
    for (int i = 0; i < cp.nx; ++i) {
        const auto &v = x.vars()[i];
        auto it = subs.find(v);
        if (it == subs.end()) {
            cp.keep_map[i] = int(std::find(out.begin(), out.end(), v) - out.begin());
            continue;
        }
        if (x.max_degree_in(v) <= 0) {
            // variable absent from x; nothing to substitute
            cp.keep_map[i] = -1;
            cp.subs[i] = it->second.with_vars(out);
            cp.sub_val[i] = 1;
            continue;
        }
        MultiSeries s = it->second.with_vars(out);
        bool has_const = !s.coeff(Exponent(out.size(), 0)).is_zero();
        if (has_const && !exact)
            throw std::domain_error("compose: substitute for " + v + " has a constant term");
        cp.sub_val[i] = has_const ? 0 : s.valuation();
        cp.subs[i] = s.with_order(1 << 29);
        cp.sub_order.push_back(i);
        target = std::min(target, s.order());
    }
    if (target == (1 << 30)) target = x.order();
    Composer::Group g;
    for (auto &[e, c] : x.terms()) g.push_back({&e, &c});
    MultiSeries r = cp.rec(g, 0, target);
    return r.with_order(target);
}

std::vector<MultiSeries> solve_implicit(const std::vector<MultiSeries> &F, const std::vector<std::string> &yvars,
                                        int order) {
    const size_t n = yvars.size();
    if (F.size() != n) throw std::invalid_argument("solve_implicit: need as many equations as unknowns");
    std::vector<std::string> all;
    for (auto &f : F) all = union_vars(all, f.vars());
    for (auto &y : yvars)
        if (std::find(all.begin(), all.end(), y) == all.end()) all.push_back(y);
    std::vector<std::string> xv;
    for (auto &v : all)
        if (std::find(yvars.begin(), yvars.end(), v) == yvars.end()) xv.push_back(v);
    std::vector<MultiSeries> G;
    int fo = order;
    for (auto &f : F) {
        G.push_back(f.with_vars(all));
        fo = std::min(fo, f.order());
        if (!G.back().coeff(Exponent(all.size(), 0)).is_zero())
            throw std::invalid_argument("solve_implicit: F(0,0) != 0");
    }
    QMatrix J(n, n);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            Exponent e(all.size(), 0);
            e[std::find(all.begin(), all.end(), yvars[j]) - all.begin()] = 1;
            J(i, j) = G[i].coeff(e);
        }
    Gq det = J.det();
    if (det.is_zero()) throw SingularJacobian(det, "solve_implicit: Jacobian at the origin is singular (det = 0)");
    QMatrix Ji = J.inverse();
    std::vector<MultiSeries> y(n, MultiSeries(xv, 0));
    for (int k = 1; k <= fo; ++k) {
        std::map<std::string, MultiSeries> sub;
        for (size_t j = 0; j < n; ++j) sub[yvars[j]] = y[j].with_order(k);
        std::vector<MultiSeries> r(n);
        for (size_t i = 0; i < n; ++i) r[i] = compose(G[i].truncate(k), sub).with_vars(xv);
        for (size_t j = 0; j < n; ++j) {
            MultiSeries upd = y[j].with_order(k);
            for (size_t i = 0; i < n; ++i)
                if (!Ji(j, i).is_zero()) upd = upd - r[i].scale(Ji(j, i));
            y[j] = upd;
        }
    }
    for (auto &s : y) s = s.with_order(std::max(fo, 0));
    return y;
}

// ---------------------------------------------------------------- LaurentInW

LaurentInW::LaurentInW(MultiSeries body, int pole, std::string var)
    : body_(std::move(body)), pole_(pole), var_(std::move(var)) {
    if (!body_.has_var(var_)) body_ = body_.with_vars(union_vars(body_.vars(), {var_}));
    normalize();
}

void LaurentInW::normalize() {
    if (body_.is_zero()) {
        // zero up to the known precision
        body_ = MultiSeries(body_.vars(), body_.order() - pole_);
        pole_ = 0;
        return;
    }
    int v = body_.valuation_in(var_);
    int k = std::min(v, pole_);
    if (pole_ < 0) k = pole_; // fold a genuine zero into the body
    if (k != 0) {
        body_ = k > 0 ? body_.div_monomial(var_, k) : body_.mul_monomial(var_, -k);
        pole_ -= k;
    }
}

int LaurentInW::valuation() const {
    if (body_.is_zero()) return body_.order() + 1;
    return body_.valuation_in(var_) - pole_;
}

int LaurentInW::pole_order() const {
    if (body_.is_zero()) return 0;
    return std::max(0, -valuation());
}

MultiSeries LaurentInW::to_series() const {
    if (pole_order() > 0) throw std::domain_error("Laurent series has a pole of order " + std::to_string(pole_order()));
    if (body_.is_zero()) return body_;
    return body_.div_monomial(var_, pole_);
}

LaurentInW LaurentInW::derivative(const std::string &v) const {
    if (v != var_) return LaurentInW(body_.derivative(v), pole_, var_);
    // (w^-p B)' = w^{-p-1} (w B' - p B)
    MultiSeries t = body_.derivative(var_).mul_monomial(var_, 1) - body_.scale(Gq(pole_));
    return LaurentInW(t, pole_ + 1, var_);
}

LaurentInW LaurentInW::antiderivative(const std::string &v) const {
    if (v == var_) throw std::invalid_argument("antiderivative in the pole variable");
    return LaurentInW(body_.antiderivative(v), pole_, var_);
}

LaurentInW LaurentInW::extract(const std::string &v, int k) const {
    if (v == var_) throw std::invalid_argument("extract in the pole variable");
    return LaurentInW(body_.extract(v, k), pole_, var_);
}

LaurentInW LaurentInW::scale(const Gq &c) const { return LaurentInW(body_.scale(c), pole_, var_); }
LaurentInW LaurentInW::conj() const { return LaurentInW(body_.conj(), pole_, var_); }
LaurentInW LaurentInW::mul_power(int k) const { return LaurentInW(body_, pole_ - k, var_); }
LaurentInW LaurentInW::with_vars(const std::vector<std::string> &vs) const {
    return LaurentInW(body_.with_vars(union_vars(vs, {var_})), pole_, var_);
}
LaurentInW LaurentInW::truncate(int n) const { return LaurentInW(body_.truncate(n + pole_), pole_, var_); }

std::map<int, MultiSeries> LaurentInW::principal_part() const {
    std::map<int, MultiSeries> r;
    for (int j = 0; j < pole_; ++j) {
        MultiSeries c = body_.extract(var_, j);
        if (!c.is_zero()) r.emplace(j - pole_, c);
    }
    return r;
}

std::complex<double> LaurentInW::evaluate(const std::map<std::string, std::complex<double>> &at) const {
    auto it = at.find(var_);
    if (it == at.end()) throw std::invalid_argument("no value for " + var_);
    return body_.evaluate(at) * std::pow(it->second, -pole_);
}

std::string LaurentInW::str() const {
    if (pole_ == 0) return body_.str();
    return var_ + "^-" + std::to_string(pole_) + " * (" + body_.str() + ")";
}

namespace {

std::pair<MultiSeries, MultiSeries> align(const LaurentInW &a, const LaurentInW &b, int &pole) {
    if (a.var() != b.var()) throw std::invalid_argument("Laurent series in different pole variables");
    auto vs = union_vars(a.body().vars(), b.body().vars());
    pole = std::max(a.pole(), b.pole());
    MultiSeries x = a.body().with_vars(vs).mul_monomial(a.var(), pole - a.pole());
    MultiSeries y = b.body().with_vars(vs).mul_monomial(a.var(), pole - b.pole());
    return {x, y};
}

} // namespace

LaurentInW operator+(const LaurentInW &a, const LaurentInW &b) {
    int p;
    auto [x, y] = align(a, b, p);
    return LaurentInW(x + y, p, a.var());
}

LaurentInW operator-(const LaurentInW &a, const LaurentInW &b) { return a + (-b); }
LaurentInW operator-(const LaurentInW &a) { return a.scale(Gq(-1)); }

LaurentInW operator*(const LaurentInW &a, const LaurentInW &b) {
    if (a.var() != b.var()) throw std::invalid_argument("Laurent series in different pole variables");
    return LaurentInW(mul(a.body(), b.body()), a.pole() + b.pole(), a.var());
}

bool operator==(const LaurentInW &a, const LaurentInW &b) {
    return a.var() == b.var() && a.pole() == b.pole() && a.body() == b.body();
}

LaurentInW inverse(const LaurentInW &a) {
    if (a.is_zero()) throw std::domain_error("inverse of zero Laurent series");
    for (auto &v : a.body().vars())
        if (v != a.var() && a.body().max_degree_in(v) > 0)
            throw std::invalid_argument("Laurent inverse needs a series in the pole variable only");
    int v = a.body().valuation_in(a.var());
    MultiSeries u = a.body().div_monomial(a.var(), v);
    return LaurentInW(inverse(u), v - a.pole(), a.var());
}

} // namespace nmcr
