#pragma once

#include "nmcr/linalg.hpp"
#include "nmcr/prolong.hpp"
#include "nmcr/surface.hpp"

#include <optional>
#include <string>
#include <vector>

namespace nmcr {

struct ResidueSpectrum {
    QPoly charpoly; // det(x I - A0), lowest degree first
    std::vector<std::pair<Gq, int>> rational_eigenvalues;
    int nonrational_degree = 0; // degree of the factor without rational roots
    std::vector<std::pair<Gq, Gq>> resonances; // (lambda, mu) with mu - lambda a positive integer
};

ResidueSpectrum residue_spectrum(const QMatrix &A0);
ResidueSpectrum residue_spectrum(const LinearODESystem &S);

// Matrix coefficients of A(w) = w M(w) for a system with pole order <= 1.
std::vector<QMatrix> residue_expansion(const LinearODESystem &S, int max_degree, int *known_to = nullptr);

struct Obstruction {
    int k = 0;
    int constraints = 0; // independent solvability conditions imposed at step k
    int removed = 0;     // candidates lost at step k
};

// Power-series solutions of y' = (1/w) A(w) y.
struct HolomorphicBasis {
    int n = 0;
    int order = -1; // solutions are exact modulo w^(order+1)
    std::vector<std::vector<MultiSeries>> solutions; // [solution][component], series in w
    std::vector<Obstruction> obstructions;
    size_t dimension() const { return solutions.size(); }
};

// A lists A_0, A_1, ...; coefficients past the end are zero.
HolomorphicBasis holomorphic_solutions(const std::vector<QMatrix> &A, int order);
HolomorphicBasis holomorphic_solutions(const LinearODESystem &S, int order);

// w y' - A y for a candidate solution, truncated to the known range.
std::vector<MultiSeries> system_residual(const std::vector<QMatrix> &A, const std::vector<MultiSeries> &y);

struct SymmetryBasis {
    int m = 0;
    int order = 0;       // surface truncation used
    int valid_order = 0; // fields are exact modulo total degree valid_order + 1
    bool real_form = false;
    std::vector<VectorField> fields;
    std::vector<MultiSeries> residuals; // tangency residual per field
    ResidueSpectrum spectrum;
    HolomorphicBasis candidates;
    int after_pole_filter = 0;
    std::vector<std::string> notes;
};

SymmetryBasis formal_symmetries(const ComplexDefining &M, int order, bool real_form = false);

VectorField lie_bracket(const VectorField &a, const VectorField &b);

// Coefficients c with L = sum c_i basis_i modulo total degree `order` + 1.
std::optional<std::vector<Gq>> in_span(const VectorField &L, const std::vector<VectorField> &basis, int order);

// Real tangency defect Q(z, rho) - rho_z P(z, rho) - rho_zb Pbar - rho_wb Qbar of a field.
MultiSeries real_tangency_defect(const VectorField &L, const ComplexDefining &M);

enum class Growth { bounded, unbounded, inconclusive };
std::string to_string(Growth g);

struct ConvergenceReport {
    std::vector<double> norms;               // max |coefficient| per total degree
    std::vector<std::pair<int, double>> ratios; // (k, |y_{k+1}| / |y_k|)
    double bound = 10;
    Growth verdict = Growth::inconclusive;
};

ConvergenceReport convergence_diagnostic(const std::vector<MultiSeries> &y, double bound = 10, int kmin = 0,
                                         int kmax = -1);
ConvergenceReport convergence_diagnostic(const VectorField &L, double bound = 10, int kmin = 0, int kmax = -1);

} // namespace nmcr
