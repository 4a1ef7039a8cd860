#pragma once

#include "nmcr/gaussian.hpp"

#include <complex>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace nmcr {

using Exponent = std::vector<int>;

// Truncated multivariate power series over Q(i).  Terms of total degree
// above `order` are unknown and never stored; order -1 means nothing is known.
class MultiSeries {
public:
    MultiSeries() = default;
    MultiSeries(std::vector<std::string> vars, int order);

    static MultiSeries constant(std::vector<std::string> vars, int order, const Gq &c);
    static MultiSeries variable(std::vector<std::string> vars, int order, const std::string &name);
    static MultiSeries monomial(std::vector<std::string> vars, int order, Exponent e,
                                const Gq &c = Gq(1));

    const std::vector<std::string> &vars() const { return vars_; }
    int order() const { return order_; }
    const std::map<Exponent, Gq> &terms() const { return terms_; }
    size_t size() const { return terms_.size(); }

    int var_index(const std::string &name) const;
    bool has_var(const std::string &name) const { return var_index(name) >= 0; }

    Gq coeff(const Exponent &e) const;
    // Named lookup; variables not listed get exponent 0.
    Gq coeff_of(const std::map<std::string, int> &e) const;
    void set(const Exponent &e, const Gq &c);
    void add_term(const Exponent &e, const Gq &c);

    bool is_zero() const { return terms_.empty(); }
    // Lowest total degree of a stored term; order+1 when empty.
    int valuation() const;
    int valuation_in(const std::string &v) const;
    int max_degree_in(const std::string &v) const;
    int total_degree(const Exponent &e) const;

    MultiSeries with_vars(const std::vector<std::string> &vars) const;
    MultiSeries truncate(int n) const;
    // Re-declares the truncation order; raising it asserts the stored terms are exact.
    MultiSeries with_order(int n) const;
    MultiSeries rename(const std::map<std::string, std::string> &m) const;

    MultiSeries conj() const;
    MultiSeries scale(const Gq &c) const;
    MultiSeries derivative(const std::string &v) const;
    MultiSeries antiderivative(const std::string &v) const;
    MultiSeries mul_monomial(const std::string &v, int k) const;
    bool divisible_by(const std::string &v, int k) const;
    MultiSeries div_monomial(const std::string &v, int k) const;
    // Coefficient of v^k as a series in the remaining variables.
    MultiSeries extract(const std::string &v, int k) const;
    // Sets v = 0 but keeps v in the variable list.
    MultiSeries at_zero(const std::string &v) const;

    std::complex<double> evaluate(const std::map<std::string, std::complex<double>> &at) const;
    double max_abs_coeff() const;

    bool equal_mod(const MultiSeries &o, int n) const;
    std::string str() const;

private:
    std::vector<std::string> vars_;
    int order_ = 0;
    std::map<Exponent, Gq> terms_;

    friend MultiSeries mul(const MultiSeries &, const MultiSeries &, int);
};

std::vector<std::string> union_vars(const std::vector<std::string> &a,
                                    const std::vector<std::string> &b);

MultiSeries operator+(const MultiSeries &x, const MultiSeries &y);
MultiSeries operator-(const MultiSeries &x, const MultiSeries &y);
MultiSeries operator-(const MultiSeries &x);
MultiSeries operator*(const MultiSeries &x, const MultiSeries &y);
MultiSeries operator*(const Gq &c, const MultiSeries &x);
bool operator==(const MultiSeries &x, const MultiSeries &y);
inline bool operator!=(const MultiSeries &x, const MultiSeries &y) { return !(x == y); }

MultiSeries add(const MultiSeries &x, const MultiSeries &y);
// Cauchy product truncated to min(x.order, y.order, cap).
MultiSeries mul(const MultiSeries &x, const MultiSeries &y, int cap = 1 << 30);
MultiSeries pow(const MultiSeries &x, int k);

MultiSeries exp_series(const MultiSeries &x);
// log(1 + x) for x without constant term.
MultiSeries log1p_series(const MultiSeries &x);
MultiSeries inverse(const MultiSeries &x);

// Substitutes series for variables.  Substitutes must have zero constant term
// unless `exact` declares x to be the polynomial it stores.
MultiSeries compose(const MultiSeries &x, const std::map<std::string, MultiSeries> &subs,
                    bool exact = false);

class SingularJacobian : public std::runtime_error {
public:
    SingularJacobian(Gq det, const std::string &msg)
        : std::runtime_error(msg), determinant(std::move(det)) {}
    Gq determinant;
};

// Solves F(x, y(x)) = 0 with y(0) = 0 up to total degree `order`.  The x
// variables are the variables of F other than `yvars`.
std::vector<MultiSeries> solve_implicit(const std::vector<MultiSeries> &F,
                                        const std::vector<std::string> &yvars, int order);

// w^{-pole} * body, with body not divisible by the pole variable when pole > 0.
class LaurentInW {
public:
    LaurentInW() = default;
    LaurentInW(MultiSeries body, int pole = 0, std::string var = "w");

    int pole() const { return pole_; }
    const MultiSeries &body() const { return body_; }
    const std::string &var() const { return var_; }

    // Exponent of var in the leading part; a positive value means a zero of that order.
    int valuation() const;
    int pole_order() const;
    bool is_zero() const { return body_.is_zero(); }
    bool is_holomorphic() const { return pole_order() == 0; }
    // Truncation order of the represented function in the total degree sense.
    int order() const { return body_.order() - pole_; }

    MultiSeries to_series() const;
    LaurentInW derivative(const std::string &v) const;
    LaurentInW antiderivative(const std::string &v) const;
    LaurentInW extract(const std::string &v, int k) const;
    LaurentInW scale(const Gq &c) const;
    LaurentInW conj() const;
    LaurentInW mul_power(int k) const;
    LaurentInW with_vars(const std::vector<std::string> &vars) const;
    LaurentInW truncate(int n) const;
    // Part with negative exponent in var, as a list of (exponent, coefficient series).
    std::map<int, MultiSeries> principal_part() const;
    std::complex<double> evaluate(const std::map<std::string, std::complex<double>> &at) const;
    std::string str() const;

private:
    MultiSeries body_;
    int pole_ = 0;
    std::string var_ = "w";
    void normalize();
};

LaurentInW operator+(const LaurentInW &a, const LaurentInW &b);
LaurentInW operator-(const LaurentInW &a, const LaurentInW &b);
LaurentInW operator-(const LaurentInW &a);
LaurentInW operator*(const LaurentInW &a, const LaurentInW &b);
bool operator==(const LaurentInW &a, const LaurentInW &b);
// Inverse of a nonzero Laurent series in its pole variable only.
LaurentInW inverse(const LaurentInW &a);

} // namespace nmcr
