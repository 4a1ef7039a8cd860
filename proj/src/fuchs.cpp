#include "nmcr/fuchs.hpp"

namespace nmcr {

std::string to_string(Verdict v) {
    switch (v) {
    case Verdict::fuchsian: return "fuchsian";
    case Verdict::non_fuchsian: return "non-fuchsian";
    default: return "undecidable-at-order";
    }
}

std::vector<LedgerRow> FuchsReport::violations() const {
    std::vector<LedgerRow> r;
    for (auto &row : rows)
        if (!row.satisfied) r.push_back(row);
    return r;
}

namespace {

LedgerRow measure(const std::string &name, const MultiSeries &s, int bound) {
    LedgerRow r;
    r.name = name;
    r.bound = bound;
    r.known_to = s.order();
    r.measured = s.valuation();
    r.vacuous = s.is_zero();
    r.satisfied = r.vacuous || r.measured >= bound;
    r.decided = !r.vacuous || r.known_to + 1 >= bound;
    if (!r.satisfied) r.witness = s.coeff(Exponent{r.measured});
    return r;
}

void conclude(FuchsReport &rep) {
    bool violated = false, undecided = false;
    for (auto &r : rep.rows) {
        violated |= !r.satisfied;
        undecided |= !r.decided;
    }
    // Vacuous rows count as satisfied at the supported orders; below them the
    // verdict is withheld.
    if (violated)
        rep.verdict = Verdict::non_fuchsian;
    else if (undecided && rep.order < min_order(rep.m))
        rep.verdict = Verdict::undecidable;
    else
        rep.verdict = Verdict::fuchsian;
    for (auto &r : rep.rows)
        if (!r.decided && rep.order >= min_order(rep.m))
            rep.notes.push_back(r.name + " vanishes up to w^" + std::to_string(r.known_to) +
                                ", below its bound; counted as satisfied");
}

template <class Get>
FuchsReport surface_report(int m, int order, const std::string &prefix, Get get) {
    FuchsReport rep;
    rep.m = m;
    rep.order = order;
    for (auto &row : fuchs_surface_rows())
        rep.rows.push_back(measure(prefix + std::to_string(row.k) + std::to_string(row.l), get(row.k, row.l),
                                   row.weight * (m - 1)));
    for (size_t i = 0; i < rep.rows.size(); ++i)
        for (size_t j = i + 1; j < rep.rows.size(); ++j) {
            auto &a = fuchs_surface_rows()[i], &b = fuchs_surface_rows()[j];
            if (a.k == b.l && a.l == b.k && rep.rows[i].measured != rep.rows[j].measured)
                rep.notes.push_back("mirrored rows " + rep.rows[i].name + " and " + rep.rows[j].name +
                                    " have different orders");
        }
    conclude(rep);
    return rep;
}

} // namespace

FuchsReport check_fuchsian_real(const RealDefining &M) {
    return surface_report(M.m, M.order(), "h", [&](int k, int l) { return M.h(k, l); });
}

FuchsReport check_fuchsian_complex(const ComplexDefining &M) {
    return surface_report(M.m, M.order(), "phi", [&](int k, int l) { return M.phi_kl(k, l); });
}

FuchsReport check_fuchsian_ode(const AssociatedODE &E) {
    FuchsReport rep;
    rep.m = E.m;
    rep.order = E.order;
    for (auto &n : ode_coefficient_names())
        rep.rows.push_back(measure(n, E.coeffs.at(n), ode_coefficient_weight(n) * (E.m - 1)));
    conclude(rep);
    return rep;
}

} // namespace nmcr
