#pragma once

#include "nmcr/surface.hpp"

#include <map>
#include <string>

namespace nmcr {

// w = eta * exp(sign i eta^(m-1) phi(z, xi, eta)) in variables (z, xi, eta).
struct SegreGraph {
    int m = 1;
    int sign = 1;
    MultiSeries w;
    MultiSeries zeta; // w' / w^m computed in closed form
    MultiSeries w2;   // w''
};

// Coefficient names in the order used by the ledgers.
const std::vector<std::string> &ode_coefficient_names();
int ode_coefficient_weight(const std::string &name); // bound is weight * (m - 1)

// w'' = Phi(z, w, zeta) with zeta = w'/w^m.
struct AssociatedODE {
    int m = 1;
    int sign = 1;
    int order = 0;                          // order of the surface data it came from
    MultiSeries Phi;                        // variables z, w, zeta
    std::map<std::string, MultiSeries> coeffs; // a0 .. c1 as series in w
    LaurentInW a, b, c;                     // [zeta^p]Phi / w^(pm), p = 2, 3, 4
};

SegreGraph segre_graph(const ComplexDefining &M);
// Working order of Phi for surface data of order N.
inline int phi_order(int m, int N) { return N + m - 2; }

AssociatedODE eliminate(const ComplexDefining &M, int order);
// Builds the coefficient family and meromorphic parts from Phi.
AssociatedODE ode_from_phi(int m, int sign, int order, const MultiSeries &Phi);
std::map<std::string, MultiSeries> closed_form_coeffs(const ComplexDefining &M);
MultiSeries verify_ode(const ComplexDefining &M, const AssociatedODE &E);

} // namespace nmcr
