#include "nmcr/gaussian.hpp"

#include <stdexcept>

namespace nmcr {

Gq Gq::inverse() const {
    mpq_class n = norm2();
    if (sgn(n) == 0) throw std::domain_error("division by zero in Q(i)");
    return Gq(mpq_class(re / n), mpq_class(-im / n));
}

Gq &Gq::operator*=(const Gq &o) {
    if (sgn(o.im) == 0) {
        re *= o.re;
        im *= o.re;
        return *this;
    }
    if (sgn(im) == 0) {
        im = re * o.im;
        re *= o.re;
        return *this;
    }
    mpq_class r = re * o.re - im * o.im;
    im = re * o.im + im * o.re;
    re = std::move(r);
    return *this;
}

std::string Gq::str() const {
    if (sgn(im) == 0) return re.get_str();
    if (sgn(re) == 0) return im.get_str() + "*i";
    return "(" + re.get_str() + (sgn(im) > 0 ? "+" : "") + im.get_str() + "*i)";
}

std::ostream &operator<<(std::ostream &os, const Gq &g) { return os << g.str(); }

std::string rational_to_string(const mpq_class &q) {
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

mpq_class rational_from_string(const std::string &s) {
    auto bad = [&] { return std::invalid_argument("malformed rational: '" + s + "'"); };
    if (s.empty()) throw bad();
    auto slash = s.find('/');
    auto digits = [](const std::string &t, bool sign_ok) {
        if (t.empty()) return false;
        size_t k = 0;
        if (sign_ok && (t[0] == '-' || t[0] == '+')) k = 1;
        if (k == t.size()) return false;
        for (; k < t.size(); ++k)
            if (t[k] < '0' || t[k] > '9') return false;
        return true;
    };
    std::string num = s.substr(0, slash);
    std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
    if (!digits(num, true) || !digits(den, false)) throw bad();
    if (num[0] == '+') num = num.substr(1);
    mpz_class d(den);
    if (d == 0) throw bad();
    mpq_class q{mpz_class(num), d};
    q.canonicalize();
    return q;
}

} // namespace nmcr
