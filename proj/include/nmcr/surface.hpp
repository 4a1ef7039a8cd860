#pragma once

#include "nmcr/series.hpp"

#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace nmcr {

class OrderTooLow : public std::invalid_argument {
public:
    OrderTooLow(int have, int need)
        : std::invalid_argument("truncation order " + std::to_string(have) + " is below the required " +
                                std::to_string(need)),
          have(have), need(need) {}
    int have, need;
};

class NonNormalizable : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

class RealityViolation : public std::domain_error {
public:
    RealityViolation(const std::string &msg, MultiSeries residual)
        : std::domain_error(msg), residual(std::move(residual)) {}
    MultiSeries residual;
};

// v = u^m * psi(z, zb, u), psi = c z zb + sum_{k,l>=2} h_kl(u) z^k zb^l.
struct RealDefining {
    int m = 1;
    int sign = 1;
    MultiSeries psi; // variables z, zb, u

    int order() const { return psi.order(); }
    MultiSeries h(int k, int l) const;
    void check() const;
};

// w = wb * exp(sign * i * wb^(m-1) * phi(z, zb, wb)), phi = z zb + sum_{k,l>=2} phi_kl(wb) z^k zb^l.
struct ComplexDefining {
    int m = 1;
    int sign = 1;
    MultiSeries phi; // variables z, zb, wb

    int order() const { return phi.order(); }
    MultiSeries phi_kl(int k, int l) const;
    // sign * wb^(m-1) * phi
    MultiSeries full_exponent() const;
    // R(z, zb, wb) with w = R.
    MultiSeries defining_function() const;
};

struct ComplexTransfer {
    ComplexDefining surface;
    Gq lambda;          // z was rescaled by z -> lambda z
    MultiSeries raw_phi; // exponent before the rescaling
};

struct ValidationReport {
    bool normal_coordinates = false;
    bool admissible = false;
    bool reality_ok = false;
    bool levi_nondegenerate = false;
    MultiSeries reality_residual;
    std::vector<std::string> notes;
    bool ok() const { return normal_coordinates && admissible && reality_ok && levi_nondegenerate; }
};

struct SurfaceRow {
    int k, l, weight; // required order is weight * (m - 1)
};
const std::vector<SurfaceRow> &fuchs_surface_rows();

inline int min_order(int m) { return 3 * m + 2; }

// lambda in Q(i) with |lambda|^2 = t.
Gq normalizing_scale(const mpq_class &t);
// f(lambda z, conj(lambda) zb, ...)
MultiSeries rescale_z(const MultiSeries &f, const Gq &lambda, const std::string &z = "z",
                      const std::string &zb = "zb");

ComplexTransfer real_to_complex(const RealDefining &M, int order);
RealDefining complex_to_real(const ComplexDefining &M, int order);
MultiSeries check_reality(const ComplexDefining &M);
ValidationReport validate(const ComplexDefining &M);
// F(z, zb, u) of v = F; returns the largest m with u^m | F.
int nonminimality_order(const MultiSeries &F);

// Random surfaces built from real data, so they are real by construction.
enum class FuchsKind { fuchsian, non_fuchsian, any };
RealDefining random_real_surface(std::mt19937_64 &rng, int m, int sign, int order, FuchsKind kind,
                                 double density = 0.5);

} // namespace nmcr
