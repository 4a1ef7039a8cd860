#include "nmcr/io.hpp"

#include <fstream>
#include <sstream>

namespace nmcr {

namespace {

const int EXACT = 1 << 20;

mpq_class rational(const json &j) {
    try {
        if (j.is_number_integer()) return mpq_class(j.get<long>());
        if (j.is_string()) return rational_from_string(j.get<std::string>());
    } catch (const std::exception &e) {
        throw ParseError(std::string("bad rational: ") + e.what());
    }
    throw ParseError("expected a rational as \"num/den\", got " + j.dump());
}

const json &field(const json &j, const char *name) {
    if (!j.is_object() || !j.contains(name)) throw ParseError(std::string("missing field \"") + name + "\"");
    return j.at(name);
}

int integer(const json &j, const char *name) {
    const json &v = field(j, name);
    if (!v.is_number_integer()) throw ParseError(std::string("field \"") + name + "\" must be an integer");
    return v.get<int>();
}

std::vector<std::string> strings(const json &j) {
    if (!j.is_array()) throw ParseError("expected an array of names");
    std::vector<std::string> out;
    for (auto &x : j) {
        if (!x.is_string()) throw ParseError("expected a variable name, got " + x.dump());
        out.push_back(x.get<std::string>());
    }
    return out;
}

} // namespace

json to_json(const Gq &c) { return json::array({rational_to_string(c.re), rational_to_string(c.im)}); }

Gq gq_from_json(const json &j) {
    if (j.is_array()) {
        if (j.size() != 2) throw ParseError("a complex rational is [\"re\", \"im\"]");
        return Gq(rational(j[0]), rational(j[1]));
    }
    return Gq(rational(j));
}

json to_json(const MultiSeries &s) {
    json terms = json::array();
    for (auto &[e, c] : s.terms()) terms.push_back({e, rational_to_string(c.re), rational_to_string(c.im)});
    json o = s.order() >= EXACT / 2 ? json("exact") : json(s.order());
    return json{{"vars", s.vars()}, {"order", o}, {"terms", terms}};
}

MultiSeries series_from_json(const json &j) {
    auto vars = strings(field(j, "vars"));
    const json &o = field(j, "order");
    int order = 0;
    if (o.is_string() && o.get<std::string>() == "exact")
        order = EXACT;
    else if (o.is_number_integer())
        order = o.get<int>();
    else
        throw ParseError("order must be an integer or \"exact\"");
    if (order < 0) throw ParseError("order must be nonnegative");
    MultiSeries s(vars, order);
    if (!j.contains("terms")) return s;
    if (!j.at("terms").is_array()) throw ParseError("terms must be an array");
    for (auto &t : j.at("terms")) {
        if (!t.is_array() || t.size() < 2 || t.size() > 3) throw ParseError("a term is [[exponents], \"re\", \"im\"]");
        const json &e = t[0];
        if (!e.is_array() || e.size() != vars.size()) throw ParseError("exponent length does not match vars");
        Exponent x;
        for (auto &v : e) {
            if (!v.is_number_integer() || v.get<int>() < 0) throw ParseError("exponents must be nonnegative integers");
            x.push_back(v.get<int>());
        }
        Gq c(rational(t[1]), t.size() == 3 ? rational(t[2]) : mpq_class(0));
        if (s.total_degree(x) <= order) s.add_term(x, c);
    }
    return s;
}

json to_json(const LaurentInW &x) { return json{{"var", x.var()}, {"pole", x.pole()}, {"body", to_json(x.body())}}; }

LaurentInW laurent_from_json(const json &j) {
    std::string var = j.contains("var") ? j.at("var").get<std::string>() : "w";
    return LaurentInW(series_from_json(field(j, "body")), j.contains("pole") ? integer(j, "pole") : 0, var);
}

json to_json(const RealDefining &M) {
    return json{{"form", "real"}, {"m", M.m}, {"sign", M.sign}, {"order", M.order()}, {"series", to_json(M.psi)}};
}

json to_json(const ComplexDefining &M) {
    return json{{"form", "complex"}, {"m", M.m}, {"sign", M.sign}, {"order", M.order()}, {"series", to_json(M.phi)}};
}

Surface surface_from_json(const json &j) {
    const json &f = field(j, "form");
    if (!f.is_string()) throw ParseError("form must be \"real\" or \"complex\"");
    std::string form = f.get<std::string>();
    int m = integer(j, "m");
    if (m < 1) throw ParseError("m must be at least 1");
    int sign = j.contains("sign") ? integer(j, "sign") : 1;
    if (sign != 1 && sign != -1) throw ParseError("sign must be 1 or -1");
    auto body = [&](const std::vector<std::string> &vars) {
        MultiSeries s = series_from_json(field(j, "series"));
        if (s.vars() != vars) throw ParseError("series variables must be " + json(vars).dump());
        if (j.contains("order")) s = s.truncate(integer(j, "order"));
        return s;
    };
    if (form == "real") return RealDefining{m, sign, body({"z", "zb", "u"})};
    if (form == "complex") return ComplexDefining{m, sign, body({"z", "zb", "wb"})};
    throw ParseError("form must be \"real\" or \"complex\"");
}

json to_json(const AssociatedODE &E) {
    json coeffs = json::object();
    for (auto &n : ode_coefficient_names()) coeffs[n] = to_json(E.coeffs.at(n));
    return json{{"m", E.m},
                {"sign", E.sign},
                {"order", E.order},
                {"Phi", to_json(E.Phi)},
                {"coefficients", coeffs},
                {"a", to_json(E.a)},
                {"b", to_json(E.b)},
                {"c", to_json(E.c)}};
}

json to_json(const FuchsReport &r) {
    json rows = json::array();
    for (auto &x : r.rows) {
        json row{{"name", x.name},         {"measured", x.measured}, {"bound", x.bound},
                 {"known_to", x.known_to}, {"vacuous", x.vacuous},   {"satisfied", x.satisfied},
                 {"decided", x.decided}};
        if (!x.satisfied) row["witness"] = to_json(x.witness);
        rows.push_back(row);
    }
    return json{{"verdict", to_string(r.verdict)}, {"m", r.m}, {"order", r.order}, {"rows", rows}, {"notes", r.notes}};
}

json to_json(const VectorField &L) { return json{{"P", to_json(L.P)}, {"Q", to_json(L.Q)}}; }

VectorField field_from_json(const json &j) {
    return {series_from_json(field(j, "P")), series_from_json(field(j, "Q"))};
}

json to_json(const ResidueSpectrum &s) {
    json cp = json::array(), ev = json::array(), res = json::array();
    for (auto &c : s.charpoly) cp.push_back(to_json(c));
    for (auto &[r, k] : s.rational_eigenvalues) ev.push_back({{"value", to_json(r)}, {"multiplicity", k}});
    for (auto &[a, b] : s.resonances) res.push_back({to_json(a), to_json(b)});
    return json{{"charpoly", cp}, {"rational_eigenvalues", ev}, {"nonrational_degree", s.nonrational_degree},
                {"resonances", res}};
}

json to_json(const ConvergenceReport &r) {
    json ratios = json::array();
    for (auto &[k, q] : r.ratios) ratios.push_back({{"k", k}, {"ratio", q}});
    return json{{"verdict", to_string(r.verdict)}, {"bound", r.bound}, {"norms", r.norms}, {"ratios", ratios}};
}

json to_json(const PulledSurface &P) {
    return json{{"s", P.map.s},     {"l", P.map.l},     {"m", P.m},
                {"sign", P.sign},   {"R", to_json(P.R)}, {"psi", to_json(P.psi)},
                {"normal_shape", P.normal_shape}};
}

json to_json(const LinearODESystem &S) {
    json M = json::array();
    for (auto &row : S.M) {
        json r = json::array();
        for (auto &x : row) r.push_back(to_json(x));
        M.push_back(r);
    }
    return json{{"n", S.n}, {"unknowns", S.unknowns}, {"pole_order", S.pole_order}, {"matrix", M}};
}

LinearODESystem system_from_json(const json &j) {
    LinearODESystem S;
    if (j.contains("residue")) {
        // dY/dw = (1/w) A Y with constant A
        const json &A = j.at("residue");
        S.n = int(A.size());
        S.M.assign(S.n, std::vector<LaurentInW>(S.n, LaurentInW(MultiSeries({"w"}, EXACT), 0)));
        for (int i = 0; i < S.n; ++i) {
            if (!A[i].is_array() || int(A[i].size()) != S.n) throw ParseError("residue must be a square matrix");
            for (int k = 0; k < S.n; ++k) {
                Gq c = gq_from_json(A[i][k]);
                if (!c.is_zero()) S.M[i][k] = LaurentInW(MultiSeries::constant({"w"}, EXACT, c), 1);
            }
        }
        S.pole_order = 1;
    } else {
        const json &M = field(j, "matrix");
        S.n = int(M.size());
        for (auto &row : M) {
            if (!row.is_array() || int(row.size()) != S.n) throw ParseError("matrix must be square");
            std::vector<LaurentInW> r;
            for (auto &x : row) r.push_back(laurent_from_json(x));
            S.M.push_back(r);
        }
        S.pole_order = 0;
        for (auto &row : S.M)
            for (auto &x : row) S.pole_order = std::max(S.pole_order, x.pole_order());
    }
    if (S.n == 0) throw ParseError("empty system");
    if (j.contains("unknowns")) S.unknowns = strings(j.at("unknowns"));
    return S;
}

json to_json(const Eigen::MatrixXcd &a) {
    json out = json::array();
    for (int i = 0; i < a.rows(); ++i) {
        json r = json::array();
        for (int k = 0; k < a.cols(); ++k) r.push_back({a(i, k).real(), a(i, k).imag()});
        out.push_back(r);
    }
    return out;
}

json read_json_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::exception &e) {
        throw ParseError(path + ": " + e.what());
    }
}

} // namespace nmcr
