#pragma once

#include "nmcr/segre.hpp"
#include "nmcr/surface.hpp"

#include <string>
#include <vector>

namespace nmcr {

enum class Verdict { fuchsian, non_fuchsian, undecidable };
std::string to_string(Verdict v);

struct LedgerRow {
    std::string name;  // e.g. "h22", "phi23", "a0"
    int measured = 0;  // order at w = 0; known_to + 1 for a vanishing row
    int bound = 0;
    int known_to = 0;  // coefficients are known up to this power
    bool vacuous = false;
    bool satisfied = false;
    bool decided = true;
    Gq witness;        // lowest coefficient of a violated row
};

struct FuchsReport {
    Verdict verdict = Verdict::undecidable;
    int m = 1;
    int order = 0;
    std::vector<LedgerRow> rows;
    std::vector<std::string> notes;

    std::vector<LedgerRow> violations() const;
};

FuchsReport check_fuchsian_real(const RealDefining &M);
FuchsReport check_fuchsian_complex(const ComplexDefining &M);
FuchsReport check_fuchsian_ode(const AssociatedODE &E);

} // namespace nmcr
