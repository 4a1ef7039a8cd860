#pragma once

#include "nmcr/blowup.hpp"
#include "nmcr/fuchs.hpp"
#include "nmcr/monodromy.hpp"
#include "nmcr/segre.hpp"
#include "nmcr/solver.hpp"
#include "nmcr/surface.hpp"

#include <json.hpp>

#include <stdexcept>
#include <string>
#include <variant>

namespace nmcr {

using json = nlohmann::ordered_json;

class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// ["re", "im"]; a bare "num/den" string is accepted on input.
json to_json(const Gq &c);
Gq gq_from_json(const json &j);

// {"vars": [...], "order": N | "exact", "terms": [[[e1, ..., ek], "re", "im"], ...]}
json to_json(const MultiSeries &s);
MultiSeries series_from_json(const json &j);

json to_json(const LaurentInW &x);
LaurentInW laurent_from_json(const json &j);

// A surface file holds either real data (v = u^m psi) or complex data (w = wb exp(...)).
using Surface = std::variant<RealDefining, ComplexDefining>;
json to_json(const RealDefining &M);
json to_json(const ComplexDefining &M);
Surface surface_from_json(const json &j);

json to_json(const AssociatedODE &E);
json to_json(const FuchsReport &r);
json to_json(const VectorField &L);
VectorField field_from_json(const json &j);
json to_json(const ResidueSpectrum &s);
json to_json(const ConvergenceReport &r);
json to_json(const PulledSurface &P);
json to_json(const LinearODESystem &S);
LinearODESystem system_from_json(const json &j);
json to_json(const Eigen::MatrixXcd &a);

json read_json_file(const std::string &path);

} // namespace nmcr
