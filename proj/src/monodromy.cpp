#include "nmcr/monodromy.hpp"

#include <cmath>
#include <numbers>

namespace nmcr {

namespace {

const int EXACT_FROM = 1 << 19;

double max_abs(const Eigen::MatrixXcd &a) { return a.size() ? a.cwiseAbs().maxCoeff() : 0.0; }

} // namespace

NumericSystem::NumericSystem(const LinearODESystem &S) : n_(S.n) {
    for (int i = 0; i < S.n; ++i)
        for (int j = 0; j < S.n; ++j) {
            const LaurentInW &x = S.M[i][j];
            if (x.is_zero()) continue;
            const MultiSeries &b = x.body();
            int wi = b.var_index(x.var());
            Entry e{i, j, x.pole(), b.order(), {}};
            for (auto &[ex, c] : b.terms()) {
                for (size_t v = 0; v < ex.size(); ++v)
                    if (int(v) != wi && ex[v])
                        throw std::invalid_argument("system coefficients depend on " + b.vars()[v]);
                int k = ex[wi];
                if (int(e.c.size()) <= k) e.c.resize(k + 1);
                e.c[k] = c.to_complex();
            }
            if (e.order < EXACT_FROM) truncated_ = true;
            entries_.push_back(std::move(e));
        }
}

double NumericSystem::tail_estimate(double r) const {
    double t = 0;
    for (auto &e : entries_) {
        if (e.order >= EXACT_FROM || e.c.empty()) continue;
        t = std::max(t, std::abs(e.c.back()) * std::pow(r, e.order + 1 - e.pole));
    }
    return t;
}

Eigen::MatrixXcd NumericSystem::operator()(std::complex<double> w) const {
    Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(n_, n_);
    for (auto &e : entries_) {
        std::complex<double> s = 0;
        for (size_t k = e.c.size(); k-- > 0;) s = s * w + e.c[k];
        M(e.row, e.col) = s * std::pow(w, -e.pole);
    }
    return M;
}

namespace {

// Classical Runge-Kutta in the angle: dY/dtheta = i w M(w) Y.
Eigen::MatrixXcd rk4(const NumericSystem &S, const LoopSpec &loop, const Eigen::MatrixXcd &Y0, int steps) {
    const std::complex<double> I(0, 1);
    double total = (loop.reversed ? -2 : 2) * std::numbers::pi;
    double h = total / steps;
    auto f = [&](double t, const Eigen::MatrixXcd &Y) -> Eigen::MatrixXcd {
        std::complex<double> w = std::polar(loop.radius, t);
        return (I * w) * (S(w) * Y);
    };
    Eigen::MatrixXcd Y = Y0;
    for (int k = 0; k < steps; ++k) {
        double t = k * h;
        Eigen::MatrixXcd k1 = f(t, Y);
        Eigen::MatrixXcd k2 = f(t + h / 2, Y + (h / 2) * k1);
        Eigen::MatrixXcd k3 = f(t + h / 2, Y + (h / 2) * k2);
        Eigen::MatrixXcd k4 = f(t + h, Y + h * k3);
        Y += (h / 6) * (k1 + 2 * k2 + 2 * k3 + k4);
    }
    return Y;
}

} // namespace

ContinuationResult continue_frame(const NumericSystem &S, const LoopSpec &loop, const Eigen::MatrixXcd &Y0) {
    if (!(loop.radius > 0)) throw std::invalid_argument("loop radius must be positive");
    if (loop.steps < 64) throw std::invalid_argument("loop needs at least 64 steps");
    if (S.truncated() && loop.radius > loop.trusted_radius)
        throw NumericError("loop radius " + std::to_string(loop.radius) + " exceeds the trusted radius " +
                           std::to_string(loop.trusted_radius));
    ContinuationResult out;
    out.tail = S.tail_estimate(loop.radius);
    int N = loop.steps;
    Eigen::MatrixXcd prev = rk4(S, loop, Y0, N), extrap;
    bool have = false;
    while (2 * N <= loop.max_steps) {
        N *= 2;
        Eigen::MatrixXcd cur = rk4(S, loop, Y0, N);
        Eigen::MatrixXcd e = (16.0 * cur - prev) / 15.0;
        if (have) {
            double d = max_abs(e - extrap);
            if (d < loop.tolerance * std::max(1.0, max_abs(e))) {
                out.value = e;
                out.defect = d;
                out.steps = N;
                return out;
            }
        }
        extrap = e;
        have = true;
        prev = cur;
    }
    throw NumericError("continuation did not converge within " + std::to_string(loop.max_steps) + " steps");
}

ContinuationResult continue_system(const LinearODESystem &S, const LoopSpec &loop, const Eigen::VectorXcd &y0) {
    return continue_frame(NumericSystem(S), loop, y0);
}

MonodromyResult monodromy_matrix(const LinearODESystem &S, const LoopSpec &loop) {
    NumericSystem N(S);
    auto c = continue_frame(N, loop, Eigen::MatrixXcd::Identity(S.n, S.n));
    MonodromyResult out;
    out.matrix = c.value;
    out.residual = c.defect;
    out.steps = c.steps;
    out.tail = c.tail;
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(c.value);
    auto sv = svd.singularValues();
    out.condition = sv(sv.size() - 1) > 0 ? sv(0) / sv(sv.size() - 1) : INFINITY;
    if (!std::isfinite(out.condition)) throw NumericError("monodromy matrix is singular");
    return out;
}

InfinitesimalMonodromy infinitesimal_monodromy(const std::vector<VectorField> &basis, const LinearODESystem &S,
                                               const LoopSpec &loop, FieldVector vec) {
    NumericSystem N(S);
    Eigen::MatrixXcd Y0(S.n, basis.size());
    std::map<std::string, std::complex<double>> at{{"z", 0.0}, {"w", loop.radius}};
    for (size_t j = 0; j < basis.size(); ++j) {
        auto v = vec(basis[j]);
        if (int(v.size()) != S.n) throw std::invalid_argument("field vector does not match the system size");
        for (int i = 0; i < S.n; ++i) Y0(i, j) = v[i].evaluate(at);
    }
    auto c = continue_frame(N, loop, Y0);
    InfinitesimalMonodromy out;
    out.psi = Y0.colPivHouseholderQr().solve(c.value);
    out.off_span = max_abs(Y0 * out.psi - c.value);
    out.defect = c.defect;
    out.steps = c.steps;
    out.tail = c.tail;
    return out;
}

} // namespace nmcr
