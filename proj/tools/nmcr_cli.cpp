#include "nmcr/io.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <random>

using namespace nmcr;

namespace {

enum Exit {
    ok = 0,
    negative = 1, // non-fuchsian verdict or oracle mismatch
    undecidable = 2,
    parse = 3,
    order_too_low = 4,
    reality = 5,
    refusal = 6,
    numeric = 7,
    other = 8,
};

struct Options {
    int order = -1;
    std::string format = "json";
    unsigned long seed = 1;
    std::string out;
};

struct Outcome {
    json body;
    int code = ok;
};

void emit(const Options &o, const json &j) {
    std::string text = j.dump(2) + "\n";
    if (o.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(o.out);
    if (!f) throw std::runtime_error("cannot write " + o.out);
    f << text;
}

json error_body(const std::string &kind, const std::string &msg) { return json{{"error", kind}, {"message", msg}}; }

// Complex data at working order N, checking reality of complex input.
ComplexDefining complex_surface(const Surface &S, int N) {
    if (auto *R = std::get_if<RealDefining>(&S)) {
        R->check();
        return real_to_complex(*R, N).surface;
    }
    ComplexDefining C = std::get<ComplexDefining>(S);
    C.phi = C.phi.truncate(N);
    MultiSeries res = check_reality(C);
    if (!res.is_zero()) throw RealityViolation("surface data violate the reality condition", res);
    return C;
}

int surface_order(const Surface &S) {
    return std::visit([](auto &M) { return M.order(); }, S);
}

int surface_m(const Surface &S) {
    return std::visit([](auto &M) { return M.m; }, S);
}

int working_order(const Options &o, const Surface &S) { return o.order >= 0 ? o.order : surface_order(S); }

Outcome derive_ode(const Options &o, const std::string &file) {
    Surface S = surface_from_json(read_json_file(file));
    int N = working_order(o, S);
    if (N < min_order(surface_m(S))) throw OrderTooLow(N, min_order(surface_m(S)));
    ComplexDefining C = complex_surface(S, N);
    AssociatedODE E = eliminate(C, N);
    auto cf = closed_form_coeffs(C);
    json mismatches = json::array();
    for (auto &n : ode_coefficient_names()) {
        int k = std::min(E.coeffs.at(n).order(), cf.at(n).order());
        if (!E.coeffs.at(n).equal_mod(cf.at(n), k)) mismatches.push_back(n);
    }
    bool residual_zero = verify_ode(C, E).is_zero();
    bool agree = mismatches.empty() && residual_zero;
    json body{{"surface", to_json(C)},
              {"ode", to_json(E)},
              {"oracle_agreement", agree},
              {"mismatched_coefficients", mismatches},
              {"residual_zero", residual_zero}};
    return {body, agree ? ok : negative};
}

Outcome check_fuchsian(const Options &o, const std::string &file) {
    Surface S = surface_from_json(read_json_file(file));
    FuchsReport r;
    if (auto *R = std::get_if<RealDefining>(&S)) {
        if (o.order >= 0) R->psi = R->psi.truncate(o.order);
        R->check();
        r = check_fuchsian_real(*R);
    } else {
        ComplexDefining C = complex_surface(S, working_order(o, S));
        r = check_fuchsian_complex(C);
    }
    int code = r.verdict == Verdict::fuchsian ? ok : r.verdict == Verdict::non_fuchsian ? negative : undecidable;
    return {json{{"report", to_json(r)}}, code};
}

Outcome symmetries(const Options &o, const std::string &file, bool real_form, double bound) {
    Surface S = surface_from_json(read_json_file(file));
    int N = working_order(o, S);
    if (N < min_order(surface_m(S))) throw OrderTooLow(N, min_order(surface_m(S)));
    ComplexDefining C = complex_surface(S, N);
    SymmetryBasis B;
    try {
        B = formal_symmetries(C, N, real_form);
    } catch (const PoleOrderViolation &e) {
        AssociatedODE E = eliminate(C, N);
        json body = error_body("non-fuchsian", e.what());
        body["entry"] = {{"row", e.row}, {"col", e.col}, {"pole", e.pole}, {"bound", e.bound}};
        body["ledger"] = to_json(check_fuchsian_ode(E));
        return {body, refusal};
    } catch (const NonFuchsian &e) {
        json body = error_body("non-fuchsian", e.what());
        body["ledger"] = to_json(e.report);
        return {body, refusal};
    }
    json fields = json::array();
    bool certified = true;
    for (size_t i = 0; i < B.fields.size(); ++i) {
        json f = to_json(B.fields[i]);
        f["residual_zero"] = B.residuals[i].is_zero();
        f["residual_order"] = B.residuals[i].order();
        certified = certified && B.residuals[i].is_zero();
        if (B.valid_order >= 8) f["diagnostic"] = to_json(convergence_diagnostic(B.fields[i], bound, 5));
        fields.push_back(f);
    }
    json sols = json::array();
    for (auto &y : B.candidates.solutions)
        if (B.candidates.order >= 8) sols.push_back(to_json(convergence_diagnostic(y, bound, 5)));
    json obstructions = json::array();
    for (auto &ob : B.candidates.obstructions)
        obstructions.push_back({{"k", ob.k}, {"constraints", ob.constraints}, {"removed", ob.removed}});
    json body{{"m", B.m},
              {"order", B.order},
              {"valid_order", B.valid_order},
              {"real_form", B.real_form},
              {"dimension", B.fields.size()},
              {"fields", fields},
              {"spectrum", to_json(B.spectrum)},
              {"candidates", B.candidates.dimension()},
              {"after_pole_filter", B.after_pole_filter},
              {"obstructions", obstructions},
              {"solution_diagnostics", sols},
              {"notes", B.notes}};
    return {body, certified ? ok : negative};
}

BlowupMap parse_blowup(const std::string &text) {
    BlowupMap B;
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, ',')) {
        auto eq = part.find('=');
        if (eq == std::string::npos) throw ParseError("blow-up map must look like s=K,l=2");
        std::string key = part.substr(0, eq);
        int v = 0;
        try {
            v = std::stoi(part.substr(eq + 1));
        } catch (const std::exception &) {
            throw ParseError("bad blow-up value in " + part);
        }
        if (key == "s")
            B.s = v;
        else if (key == "l")
            B.l = v;
        else
            throw ParseError("unknown blow-up key " + key);
    }
    return B;
}

Outcome blowup(const Options &o, const std::string &file, const std::string &map_arg, int s_max) {
    Surface S = surface_from_json(read_json_file(file));
    int N = working_order(o, S);
    ComplexDefining C = complex_surface(S, N);
    if (s_max > 0) {
        std::vector<BlowupScanEntry> scan;
        auto choice = find_blowup_exponent(C, s_max, N, &scan);
        json sj = json::array();
        for (auto &e : scan) sj.push_back({{"s", e.s}, {"levi_valuation", e.levi_valuation}, {"note", e.note}});
        if (!choice) return {json{{"found", false}, {"scan", sj}}, negative};
        return {json{{"found", true}, {"s", choice->s}, {"surface", to_json(choice->surface)}, {"scan", sj}}, ok};
    }
    BlowupMap B = parse_blowup(map_arg);
    PulledSurface P = pullback_surface(C, B, N);
    return {json{{"surface", to_json(P)}}, ok};
}

Outcome monodromy(const std::string &file, const LoopSpec &loop) {
    LinearODESystem S = system_from_json(read_json_file(file));
    auto M = monodromy_matrix(S, loop);
    json body{{"radius", loop.radius},          {"reversed", loop.reversed},  {"matrix", to_json(M.matrix)},
              {"residual", M.residual},         {"condition", M.condition},  {"steps", M.steps},
              {"tail_estimate", M.tail}};
    if (S.pole_order <= 1) {
        auto spec = residue_spectrum(S);
        body["spectrum"] = to_json(spec);
    }
    return {body, ok};
}

json verify_one(const Surface &S, int N) {
    json out;
    if (auto *R = std::get_if<RealDefining>(&S)) {
        R->check();
        auto t = real_to_complex(*R, N);
        auto back = complex_to_real(t.surface, N);
        out["transfer_lambda"] = to_json(t.lambda);
        if (t.lambda == Gq(1)) out["roundtrip_exact"] = back.psi.equal_mod(R->psi.truncate(N), N);
        auto v = validate(t.surface);
        out["normal_coordinates"] = v.normal_coordinates;
        out["admissible"] = v.admissible;
        out["reality_ok"] = v.reality_ok;
        out["levi_nondegenerate"] = v.levi_nondegenerate;
        out["notes"] = v.notes;
        out["ok"] = v.ok();
        return out;
    }
    ComplexDefining C = std::get<ComplexDefining>(S);
    C.phi = C.phi.truncate(N);
    auto v = validate(C);
    out["normal_coordinates"] = v.normal_coordinates;
    out["admissible"] = v.admissible;
    out["reality_ok"] = v.reality_ok;
    out["levi_nondegenerate"] = v.levi_nondegenerate;
    out["reality_residual"] = to_json(v.reality_residual);
    out["notes"] = v.notes;
    out["ok"] = v.ok();
    return out;
}

Outcome verify(const Options &o, const std::string &file, int count) {
    if (!file.empty()) {
        Surface S = surface_from_json(read_json_file(file));
        json r = verify_one(S, working_order(o, S));
        int code = r["ok"].get<bool>() ? ok : r["reality_ok"].get<bool>() ? negative : reality;
        return {r, code};
    }
    // randomized self-test on real data
    std::mt19937_64 rng(o.seed);
    json runs = json::array();
    bool all = true;
    for (int t = 0; t < count; ++t) {
        int m = 1 + t % 3;
        int N = o.order >= 0 ? o.order : 3 * m + 2;
        RealDefining R = random_real_surface(rng, m, t % 2 ? -1 : 1, N, FuchsKind::any, 0.5);
        json r = verify_one(R, N);
        ComplexDefining C = real_to_complex(R, N).surface;
        AssociatedODE E = eliminate(C, N);
        auto cf = closed_form_coeffs(C);
        bool agree = true;
        for (auto &n : ode_coefficient_names())
            agree = agree && E.coeffs.at(n).equal_mod(cf.at(n), std::min(E.coeffs.at(n).order(), cf.at(n).order()));
        r["m"] = m;
        r["oracle_agreement"] = agree;
        all = all && agree && r["ok"].get<bool>();
        runs.push_back(r);
    }
    return {json{{"seed", o.seed}, {"runs", runs}, {"ok", all}}, all ? ok : negative};
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Formal CR-geometry toolkit for nonminimal real hypersurfaces in C^2"};
    app.require_subcommand(1);
    app.fallthrough();
    Options o;
    app.add_option("--order", o.order, "Truncation order (defaults to the order stored in the input)");
    app.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json"}));
    app.add_option("--seed", o.seed, "Seed for randomized self-tests");
    app.add_option("--out", o.out, "Write output to this file instead of stdout");

    std::string file;
    auto *derive = app.add_subcommand("derive-ode", "Associated second-order ODE of a surface");
    derive->add_option("file", file, "Surface JSON")->required();

    auto *check = app.add_subcommand("check-fuchsian", "Fuchsian-type classification");
    check->add_option("file", file, "Surface JSON")->required();

    bool real_form = false;
    double bound = 10;
    auto *sym = app.add_subcommand("symmetries", "Formal infinitesimal automorphisms");
    sym->add_option("file", file, "Surface JSON")->required();
    sym->add_flag("--real-form", real_form, "Impose the real tangency condition");
    sym->add_option("--bound", bound, "Ratio bound for the convergence diagnostic");

    std::string map_arg = "s=2,l=2";
    int s_max = 0;
    auto *blow = app.add_subcommand("blowup", "Monomial blow-up of a surface");
    blow->add_option("file", file, "Surface JSON")->required();
    auto *map_opt = blow->add_option("--blowup", map_arg, "Blow-up exponents, e.g. s=2,l=2");
    blow->add_option("--auto", s_max, "Search s in [2, s_max]")->excludes(map_opt);

    LoopSpec loop;
    auto *mono = app.add_subcommand("monodromy", "Numeric monodromy of a linear system");
    mono->add_option("file", file, "System JSON")->required();
    mono->add_option("--radius", loop.radius, "Loop radius");
    mono->add_option("--steps", loop.steps, "Initial step count");
    mono->add_option("--tol", loop.tolerance, "Convergence tolerance");
    mono->add_option("--trusted-radius", loop.trusted_radius, "Largest radius for truncated coefficients");
    mono->add_flag("--reverse", loop.reversed, "Traverse the loop clockwise");

    int count = 5;
    auto *ver = app.add_subcommand("verify", "Reality and normal-form checks; random self-test without a file");
    ver->add_option("file", file, "Surface JSON");
    ver->add_option("--count", count, "Number of random surfaces");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int rc = app.exit(e);
        return rc == 0 ? ok : parse;
    }

    try {
        Outcome r;
        if (*derive)
            r = derive_ode(o, file);
        else if (*check)
            r = check_fuchsian(o, file);
        else if (*sym)
            r = symmetries(o, file, real_form, bound);
        else if (*blow)
            r = blowup(o, file, map_arg, s_max);
        else if (*mono)
            r = monodromy(file, loop);
        else
            r = verify(o, file, count);
        emit(o, r.body);
        return r.code;
    } catch (const ParseError &e) {
        emit(o, error_body("parse", e.what()));
        return parse;
    } catch (const json::exception &e) {
        emit(o, error_body("parse", e.what()));
        return parse;
    } catch (const OrderTooLow &e) {
        json b = error_body("order-too-low", e.what());
        b["have"] = e.have;
        b["need"] = e.need;
        emit(o, b);
        return order_too_low;
    } catch (const RealityViolation &e) {
        json b = error_body("reality-violation", e.what());
        b["residual"] = to_json(e.residual);
        emit(o, b);
        return reality;
    } catch (const NumericError &e) {
        emit(o, error_body("numeric", e.what()));
        return numeric;
    } catch (const std::exception &e) {
        emit(o, error_body("other", e.what()));
        return other;
    }
}
