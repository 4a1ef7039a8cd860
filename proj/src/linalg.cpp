#include "nmcr/linalg.hpp"

#include <stdexcept>

namespace nmcr {

QMatrix QMatrix::identity(size_t n) {
    QMatrix m(n, n);
    for (size_t i = 0; i < n; ++i) m(i, i) = Gq(1);
    return m;
}

std::vector<size_t> QMatrix::rref_in_place() {
    std::vector<size_t> piv;
    size_t row = 0;
    for (size_t col = 0; col < c_ && row < r_; ++col) {
        size_t p = row;
        while (p < r_ && (*this)(p, col).is_zero()) ++p;
        if (p == r_) continue;
        if (p != row)
            for (size_t j = 0; j < c_; ++j) std::swap((*this)(p, j), (*this)(row, j));
        Gq inv = (*this)(row, col).inverse();
        for (size_t j = col; j < c_; ++j) (*this)(row, j) *= inv;
        for (size_t i = 0; i < r_; ++i) {
            if (i == row || (*this)(i, col).is_zero()) continue;
            Gq f = (*this)(i, col);
            for (size_t j = col; j < c_; ++j)
                if (!(*this)(row, j).is_zero()) (*this)(i, j) -= f * (*this)(row, j);
        }
        piv.push_back(col);
        ++row;
    }
    return piv;
}

size_t QMatrix::rank() const {
    QMatrix t = *this;
    return t.rref_in_place().size();
}

Gq QMatrix::det() const {
    if (r_ != c_) throw std::invalid_argument("det of non-square matrix");
    QMatrix t = *this;
    Gq d(1);
    for (size_t col = 0; col < c_; ++col) {
        size_t p = col;
        while (p < r_ && t(p, col).is_zero()) ++p;
        if (p == r_) return Gq();
        if (p != col) {
            for (size_t j = 0; j < c_; ++j) std::swap(t(p, j), t(col, j));
            d = -d;
        }
        d *= t(col, col);
        Gq inv = t(col, col).inverse();
        for (size_t i = col + 1; i < r_; ++i) {
            if (t(i, col).is_zero()) continue;
            Gq f = t(i, col) * inv;
            for (size_t j = col; j < c_; ++j) t(i, j) -= f * t(col, j);
        }
    }
    return d;
}

QMatrix QMatrix::inverse() const {
    if (r_ != c_) throw std::invalid_argument("inverse of non-square matrix");
    auto x = solve(identity(r_));
    if (!x || rank() != r_) throw std::domain_error("matrix is singular");
    return *x;
}

QMatrix QMatrix::nullspace() const {
    QMatrix t = *this;
    auto piv = t.rref_in_place();
    std::vector<bool> is_piv(c_, false);
    for (auto p : piv) is_piv[p] = true;
    std::vector<size_t> free;
    for (size_t j = 0; j < c_; ++j)
        if (!is_piv[j]) free.push_back(j);
    QMatrix n(c_, free.size());
    for (size_t k = 0; k < free.size(); ++k) {
        n(free[k], k) = Gq(1);
        for (size_t i = 0; i < piv.size(); ++i) n(piv[i], k) = -t(i, free[k]);
    }
    return n;
}

std::optional<QMatrix> QMatrix::solve(const QMatrix &b) const {
    if (b.r_ != r_) throw std::invalid_argument("solve: row mismatch");
    QMatrix aug = hstack(b);
    auto piv = aug.rref_in_place();
    for (auto p : piv)
        if (p >= c_) return std::nullopt;
    QMatrix x(c_, b.c_);
    for (size_t i = 0; i < piv.size(); ++i)
        for (size_t j = 0; j < b.c_; ++j) x(piv[i], j) = aug(i, c_ + j);
    return x;
}

QMatrix QMatrix::transpose() const {
    QMatrix t(c_, r_);
    for (size_t i = 0; i < r_; ++i)
        for (size_t j = 0; j < c_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

QMatrix QMatrix::column(size_t j) const {
    QMatrix t(r_, 1);
    for (size_t i = 0; i < r_; ++i) t(i, 0) = (*this)(i, j);
    return t;
}

QMatrix QMatrix::hstack(const QMatrix &o) const {
    if (o.r_ != r_) throw std::invalid_argument("hstack: row mismatch");
    QMatrix t(r_, c_ + o.c_);
    for (size_t i = 0; i < r_; ++i) {
        for (size_t j = 0; j < c_; ++j) t(i, j) = (*this)(i, j);
        for (size_t j = 0; j < o.c_; ++j) t(i, c_ + j) = o(i, j);
    }
    return t;
}

bool QMatrix::is_zero() const {
    for (auto &x : a_)
        if (!x.is_zero()) return false;
    return true;
}

QMatrix operator*(const QMatrix &a, const QMatrix &b) {
    if (a.c_ != b.r_) throw std::invalid_argument("matrix product: shape mismatch");
    QMatrix m(a.r_, b.c_);
    for (size_t i = 0; i < a.r_; ++i)
        for (size_t k = 0; k < a.c_; ++k) {
            if (a(i, k).is_zero()) continue;
            for (size_t j = 0; j < b.c_; ++j)
                if (!b(k, j).is_zero()) m(i, j) += a(i, k) * b(k, j);
        }
    return m;
}

QMatrix operator+(const QMatrix &a, const QMatrix &b) {
    QMatrix m = a;
    for (size_t i = 0; i < m.a_.size(); ++i) m.a_[i] += b.a_[i];
    return m;
}

QMatrix operator-(const QMatrix &a, const QMatrix &b) {
    QMatrix m = a;
    for (size_t i = 0; i < m.a_.size(); ++i) m.a_[i] -= b.a_[i];
    return m;
}

// Faddeev-LeVerrier: exact over a field of characteristic zero.
QPoly charpoly(const QMatrix &a) {
    size_t n = a.rows();
    QPoly c(n + 1);
    c[n] = Gq(1);
    QMatrix m(n, n);
    for (size_t k = 1; k <= n; ++k) {
        QMatrix t = a * m;
        for (size_t i = 0; i < n; ++i) t(i, i) += c[n - k + 1];
        m = t;
        QMatrix am = a * m;
        Gq tr;
        for (size_t i = 0; i < n; ++i) tr += am(i, i);
        c[n - k] = -tr / Gq(long(k));
    }
    return c;
}

Gq poly_eval(const QPoly &p, const Gq &x) {
    Gq r;
    for (size_t k = p.size(); k-- > 0;) r = r * x + p[k];
    return r;
}

} // namespace nmcr
