#pragma once

#include "nmcr/prolong.hpp"

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>
#include <vector>

namespace nmcr {

class NumericError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Circle |w| = radius traversed once from w = radius.
struct LoopSpec {
    double radius = 0.25;
    int steps = 256;          // initial step count, doubled until converged
    double tolerance = 1e-10; // between successive extrapolated results
    bool reversed = false;
    int max_steps = 1 << 17;
    double trusted_radius = 0.25; // bound for systems with truncated coefficients
};

// dY/dw = M(w) Y with M evaluated from its stored Laurent polynomials.
class NumericSystem {
public:
    explicit NumericSystem(const LinearODESystem &S);
    int n() const { return n_; }
    bool truncated() const { return truncated_; }
    // Magnitude of the first omitted term at |w| = r.
    double tail_estimate(double r) const;
    Eigen::MatrixXcd operator()(std::complex<double> w) const;

private:
    struct Entry {
        int row, col, pole, order;
        std::vector<std::complex<double>> c; // coefficients of w^k in the body
    };
    int n_ = 0;
    bool truncated_ = false;
    std::vector<Entry> entries_;
};

struct ContinuationResult {
    Eigen::MatrixXcd value;
    double defect = 0; // difference of the last two extrapolated results
    int steps = 0;
    double tail = 0;
};

// Continues the columns of Y0 once around the loop.
ContinuationResult continue_frame(const NumericSystem &S, const LoopSpec &loop, const Eigen::MatrixXcd &Y0);
ContinuationResult continue_system(const LinearODESystem &S, const LoopSpec &loop, const Eigen::VectorXcd &y0);

struct MonodromyResult {
    Eigen::MatrixXcd matrix;
    double residual = 0;
    double condition = 0; // 2-norm condition number
    int steps = 0;
    double tail = 0;
};

MonodromyResult monodromy_matrix(const LinearODESystem &S, const LoopSpec &loop);

using FieldVector = std::vector<LaurentInW> (*)(const VectorField &);

struct InfinitesimalMonodromy {
    Eigen::MatrixXcd psi;  // continued basis vectors in basis coordinates
    double off_span = 0;   // residual of the least-squares fit
    double defect = 0;
    int steps = 0;
    double tail = 0;
};

InfinitesimalMonodromy infinitesimal_monodromy(const std::vector<VectorField> &basis, const LinearODESystem &S,
                                               const LoopSpec &loop, FieldVector vec = u_vector);

} // namespace nmcr
