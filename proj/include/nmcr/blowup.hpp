#pragma once

#include "nmcr/prolong.hpp"
#include "nmcr/surface.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace nmcr {

// F(xi, eta) = (xi eta^s, eta^l)
struct BlowupMap {
    int s = 2;
    int l = 2;
    void check() const;
};

// f(xi eta^s, eta^l) for f in (z, w); the result is in (xi, eta).
MultiSeries pullback_series(const MultiSeries &f, const BlowupMap &B);

// eta = etab exp(i psi(xi, xib, etab)) solving the pulled-back defining relation.
struct PulledSurface {
    BlowupMap map;
    int m = 1;
    int sign = 1;
    MultiSeries R;   // (xi, xib, etab)
    MultiSeries psi; // (xi, xib, etab)
    bool normal_shape = false; // psi(xi, 0, etab) = psi(0, xib, etab) = 0
    int order() const { return R.order(); }
};

PulledSurface pullback_surface(const ComplexDefining &M, const BlowupMap &B, int order);

struct BlowupScanEntry {
    int s = 0;
    int levi_valuation = -1; // exponent of etab in the leading xi xib coefficient, -1 when unseen
    std::string note;
};

struct BlowupChoice {
    int s = 0;
    PulledSurface surface;
};

// Smallest s in [2, s_max] whose pullback is Levi-nondegenerate off {eta = 0} at the working order.
std::optional<BlowupChoice> find_blowup_exponent(const ComplexDefining &M, int s_max, int order,
                                                 std::vector<BlowupScanEntry> *scan = nullptr);

// L* = P* d/dxi + Q* d/deta with Laurent poles in eta.
struct PulledField {
    LaurentInW P, Q;
};

PulledField pullback_field(const VectorField &L, const BlowupMap &B);

class DivisibilityError : public std::domain_error {
public:
    DivisibilityError(const std::string &msg, std::string component, int j, int deficit)
        : std::domain_error(msg), component(std::move(component)), j(j), deficit(deficit) {}
    std::string component;
    int j, deficit;
};

VectorField pushforward_field(const LaurentInW &f, const LaurentInW &g, const BlowupMap &B);
VectorField pushforward_field(const PulledField &L, const BlowupMap &B);

} // namespace nmcr
