#pragma once

#include <gmpxx.h>

#include <complex>
#include <ostream>
#include <string>

namespace nmcr {

// Exact element of Q(i).
class Gq {
public:
    mpq_class re;
    mpq_class im;

    Gq() : re(0), im(0) {}
    Gq(long v) : re(v), im(0) {}
    Gq(mpq_class r) : re(std::move(r)), im(0) {}
    Gq(mpq_class r, mpq_class i) : re(std::move(r)), im(std::move(i)) {}
    Gq(long num, long den) : re(num, den), im(0) { re.canonicalize(); }

    static Gq i() { return Gq(mpq_class(0), mpq_class(1)); }
    static Gq rational(long num, long den) { return Gq(num, den); }

    bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
    bool is_real() const { return sgn(im) == 0; }

    Gq conj() const { return Gq(re, -im); }
    mpq_class norm2() const { return re * re + im * im; }
    Gq inverse() const;

    Gq &operator+=(const Gq &o) { re += o.re; im += o.im; return *this; }
    Gq &operator-=(const Gq &o) { re -= o.re; im -= o.im; return *this; }
    Gq &operator*=(const Gq &o);
    Gq &operator/=(const Gq &o) { return *this *= o.inverse(); }

    std::complex<double> to_complex() const { return {re.get_d(), im.get_d()}; }
    std::string str() const;
};

inline Gq operator-(const Gq &a) { return Gq(-a.re, -a.im); }
inline Gq operator+(Gq a, const Gq &b) { return a += b; }
inline Gq operator-(Gq a, const Gq &b) { return a -= b; }
inline Gq operator*(Gq a, const Gq &b) { return a *= b; }
inline Gq operator/(Gq a, const Gq &b) { return a /= b; }
inline bool operator==(const Gq &a, const Gq &b) { return a.re == b.re && a.im == b.im; }
inline bool operator!=(const Gq &a, const Gq &b) { return !(a == b); }

std::ostream &operator<<(std::ostream &os, const Gq &g);

// "num/den" with den > 0; a bare integer is accepted on input.
std::string rational_to_string(const mpq_class &q);
mpq_class rational_from_string(const std::string &s);

} // namespace nmcr
