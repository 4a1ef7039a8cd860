#pragma once

#include "nmcr/gaussian.hpp"

#include <optional>
#include <vector>

namespace nmcr {

// Dense matrix over Q(i) with exact elimination.
class QMatrix {
public:
    QMatrix() = default;
    QMatrix(size_t rows, size_t cols) : r_(rows), c_(cols), a_(rows * cols) {}

    static QMatrix identity(size_t n);

    size_t rows() const { return r_; }
    size_t cols() const { return c_; }
    Gq &operator()(size_t i, size_t j) { return a_[i * c_ + j]; }
    const Gq &operator()(size_t i, size_t j) const { return a_[i * c_ + j]; }

    // Reduced row echelon form; returns pivot columns.
    std::vector<size_t> rref_in_place();
    size_t rank() const;
    Gq det() const;
    QMatrix inverse() const;
    // Columns form a basis of the right kernel.
    QMatrix nullspace() const;
    // Some solution of A x = b (b given as a matrix with matching rows), or nothing.
    std::optional<QMatrix> solve(const QMatrix &b) const;
    QMatrix transpose() const;
    QMatrix column(size_t j) const;
    QMatrix hstack(const QMatrix &o) const;
    bool is_zero() const;

    friend QMatrix operator*(const QMatrix &a, const QMatrix &b);
    friend QMatrix operator+(const QMatrix &a, const QMatrix &b);
    friend QMatrix operator-(const QMatrix &a, const QMatrix &b);
    friend bool operator==(const QMatrix &a, const QMatrix &b) {
        return a.r_ == b.r_ && a.c_ == b.c_ && a.a_ == b.a_;
    }

private:
    size_t r_ = 0, c_ = 0;
    std::vector<Gq> a_;
};

// Dense polynomial with coefficients in Q(i), lowest degree first.
using QPoly = std::vector<Gq>;

QPoly charpoly(const QMatrix &a);
Gq poly_eval(const QPoly &p, const Gq &x);

} // namespace nmcr
