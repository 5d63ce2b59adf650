// ec3 -- classify, enumerate and verify elliptic curves over small prime
// fields by their order-3 rational subgroup structure.
//
// Subcommands:
//   classify   full 3-torsion report for one curve
//   enumerate  isomorphism-class representatives of a family
//   verify     per-prime conformance report (every claim gets a verdict)
//   divpoly    reduced division polynomial psi_n
//   orbit      G_a parameter orbit of one value
//   fermat     Fermat cubic count and the 4p = A^2 + 27B^2 decomposition
//
// Exit codes: 0 success, 1 usage/input error, 2 conformance mismatch.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ec3/census.hpp"
#include "ec3/conformance.hpp"
#include "ec3/divpoly.hpp"
#include "ec3/torsion3.hpp"

using json = nlohmann::ordered_json;
using namespace ec3;

namespace {

std::vector<i64> parse_ints(const std::string& csv, size_t expect, const char* what) {
    std::vector<i64> out;
    std::stringstream ss(csv);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        size_t pos = 0;
        i64 v = std::stoll(tok, &pos);
        if (pos != tok.size()) throw Error(std::string("malformed ") + what);
        out.push_back(v);
    }
    if (out.size() != expect) throw Error(std::string(what) + ": expected " +
                                          std::to_string(expect) + " comma-separated integers");
    return out;
}

std::string conventions_line(const FieldCtx& F) {
    std::ostringstream os;
    os << "p = " << F.p << " (p mod 3 = " << F.residue_class_mod3 << "); conventions: ";
    if (F.has_rho())
        os << "rho = " << F.rho().value() << ", b0 = " << F.b0().value()
           << ", chi(x) = x^((p-1)/3), ";
    else
        os << "every element is a cube, ";
    os << "t = " << F.t().value() << ", d = " << F.d().value();
    return os.str();
}

json conventions_json(const FieldCtx& F) {
    json j;
    j["p_mod_3"] = F.residue_class_mod3;
    if (F.has_rho()) {
        j["rho"] = F.rho().value();
        j["b0"] = F.b0().value();
    }
    j["t"] = F.t().value();
    j["d"] = F.d().value();
    return j;
}

std::string curve_equation(const Curve& E) {
    auto term = [](u64 v, const std::string& mono, bool lead = false) -> std::string {
        if (v == 0) return "";
        std::string c = (v == 1 && !mono.empty()) ? "" : std::to_string(v);
        return (lead ? "" : " + ") + c + mono;
    };
    std::string lhs = "y^2";
    lhs += term(E.a1().value(), "xy");
    lhs += term(E.a3().value(), "y");
    std::string rhs = "x^3";
    rhs += term(E.a2().value(), "x^2");
    rhs += term(E.a4().value(), "x");
    rhs += term(E.a6().value(), "");
    return lhs + " = " + rhs;
}

std::string pattern_str(const std::vector<int>& pat) {
    std::string s = "{";
    for (size_t i = 0; i < pat.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(pat[i]);
    }
    return s + "}";
}

json family_json(const FieldCtx& F, const FamilyCoords& c) {
    json j;
    j["kind"] = family_kind_name(c.kind);
    j["a"] = c.a.value();
    if (c.kind == FamilyKind::Cyclic || c.kind == FamilyKind::TwistCyclic) {
        j["i"] = c.i;
        j["b0_pow_i"] = (c.i == 0 ? F.one() : F.b0().pow(static_cast<u64>(c.i))).value();
    }
    return j;
}

void emit(const json& j, bool to_stdout, const std::string& out_path) {
    std::string text = j.dump(2);
    if (to_stdout) std::cout << text << "\n";
    if (!out_path.empty()) {
        std::ofstream f(out_path, std::ios::binary);
        f << text << "\n";
    }
}

// ---------------------------------------------------------------------------

int cmd_classify(u64 p, const std::string& short_csv, const std::string& general_csv,
                 bool as_json) {
    FieldCtx F = make_field(p);
    std::optional<Curve> E;
    if (!short_csv.empty()) {
        auto v = parse_ints(short_csv, 2, "--short");
        E = Curve::short_form(F, F.el(v[0]), F.el(v[1]));
    } else {
        auto v = parse_ints(general_csv, 5, "--general");
        E = Curve::from(F, v[0], v[1], v[2], v[3], v[4]);
    }
    Torsion3Report rep = classify(*E);
    ShortForm s = to_short(*E);

    if (as_json) {
        json j;
        j["schema_version"] = 1;
        j["p"] = p;
        j["conventions"] = conventions_json(F);
        j["curve"] = json{{"p", p}, {"short", {s.A.value(), s.B.value()}},
                          {"general",
                           {E->a1().value(), E->a2().value(), E->a3().value(), E->a4().value(),
                            E->a6().value()}}};
        j["discriminant"] = E->discriminant().value();
        j["j_invariant"] = E->j_invariant().value();
        j["n_points"] = rep.n_points;
        j["trace"] = rep.trace;
        j["group_structure"] = {rep.structure.n1, rep.structure.n2};
        j["rational_3torsion_order"] = rep.rational_3torsion_order;
        j["psi3_pattern"] = rep.psi3_pattern;
        json subs = json::array();
        for (const auto& g : rep.stable_subgroups) {
            json e;
            if (g.abscissa_rational)
                e["abscissa"] = g.abscissa->value();
            else
                e["abscissa"] = nullptr;
            e["pointwise_rational"] = g.pointwise_rational;
            subs.push_back(e);
        }
        j["stable_subgroups"] = subs;
        j["family"] = rep.family ? family_json(F, *rep.family) : json(nullptr);
        emit(j, true, "");
        return 0;
    }

    std::cout << conventions_line(F) << "\n";
    std::cout << "curve: " << curve_equation(*E) << "   (short form A = " << s.A.value()
              << ", B = " << s.B.value() << ")\n";
    std::cout << "Delta = " << E->discriminant().value() << ", j = " << E->j_invariant().value()
              << "\n";
    std::cout << "#E(F_p) = " << rep.n_points << ", t = " << rep.trace << ", group Z/"
              << rep.structure.n1 << " x Z/" << rep.structure.n2 << "\n";
    std::cout << "rational 3-torsion order: " << rep.rational_3torsion_order << "\n";
    std::cout << "psi3 factor pattern: " << pattern_str(rep.psi3_pattern) << "\n";
    std::cout << "stable order-3 subgroups (" << rep.stable_subgroups.size() << "):\n";
    for (const auto& g : rep.stable_subgroups) {
        std::cout << "  x = ";
        if (g.abscissa_rational)
            std::cout << g.abscissa->value();
        else
            std::cout << "(irrational abscissa)";
        std::cout << (g.pointwise_rational ? ": pointwise rational" : ": points over F_{p^2} only")
                  << "\n";
    }
    if (rep.family) {
        std::cout << "family: " << family_kind_name(rep.family->kind) << " with a = "
                  << rep.family->a.value();
        if (rep.family->kind == FamilyKind::Cyclic || rep.family->kind == FamilyKind::TwistCyclic)
            std::cout << ", i = " << rep.family->i;
        std::cout << "\n";
    } else {
        std::cout << "family: none (no stable order-3 subgroup)\n";
    }
    return 0;
}

struct EnumItem {
    std::optional<Fp> a;
    std::optional<int> i;
    Fp A, B;
};

int cmd_enumerate(u64 p, const std::string& family, bool as_json) {
    FieldCtx F = make_field(p);
    std::vector<EnumItem> items;
    std::string formula_name;
    u64 formula_value = 0;

    if (family == "q2mod3") {
        if (F.residue_class_mod3 != 2)
            throw WrongFieldClass("family q2mod3 requires p = 2 mod 3");
        for (const auto& c : cyclic_representatives(F)) {
            ShortForm s = to_short(cyclic_family_curve(F, c.a, c.i));
            items.push_back({c.a, c.i, s.A, s.B});
        }
        formula_name = "q - 1";
        formula_value = p - 1;
    } else if (family == "cyclic") {
        for (const auto& c : cyclic_representatives(F)) {
            ShortForm s = to_short(cyclic_family_curve(F, c.a, c.i));
            items.push_back({c.a, c.i, s.A, s.B});
        }
        formula_name = F.residue_class_mod3 == 2 ? "q - 1" : "(2q+4)/3";
        formula_value = F.residue_class_mod3 == 2 ? p - 1 : (2 * p + 4) / 3;
    } else if (family == "noncyclic") {
        auto d = burnside_detail(F); // throws WrongFieldClass for p = 2 mod 3
        for (Fp a : d.transversal) {
            ShortForm s = to_short(noncyclic_curve(F, a));
            items.push_back({a, std::nullopt, s.A, s.B});
        }
        formula_name = "(q + 12 - (q mod 12))/12";
        formula_value = d.formula;
    } else if (family == "twist-cyclic" || family == "twist-noncyclic") {
        FamilyKind kind =
            family == "twist-cyclic" ? FamilyKind::TwistCyclic : FamilyKind::TwistNonCyclic;
        auto tws = twist_representatives(F, kind);
        if (kind == FamilyKind::TwistCyclic) {
            auto reps = cyclic_representatives(F);
            for (size_t k = 0; k < tws.size(); ++k)
                items.push_back({reps[k].a, reps[k].i, tws[k].first, tws[k].second});
            formula_name = "(2q+4)/3";
            formula_value = (2 * p + 4) / 3;
        } else {
            auto d = burnside_detail(F);
            for (size_t k = 0; k < tws.size(); ++k)
                items.push_back({d.transversal[k], std::nullopt, tws[k].first, tws[k].second});
            formula_name = "(q + 12 - (q mod 12))/12";
            formula_value = d.formula;
        }
    } else {
        throw Error("unknown family: " + family);
    }

    bool matches = items.size() == formula_value;
    if (as_json) {
        json j;
        j["schema_version"] = 1;
        j["p"] = p;
        j["conventions"] = conventions_json(F);
        j["family"] = family;
        json rs = json::array();
        for (const auto& it : items) {
            json e;
            if (it.a) e["a"] = it.a->value();
            if (it.i) e["i"] = *it.i;
            e["short"] = {it.A.value(), it.B.value()};
            rs.push_back(e);
        }
        j["representatives"] = rs;
        j["count"] = items.size();
        j["paper_formula"] = formula_name;
        j["paper_formula_value"] = formula_value;
        j["verdict"] = matches ? "match" : "mismatch";
        emit(j, true, "");
        return 0;
    }

    std::cout << conventions_line(F) << "\n";
    std::cout << "family: " << family << "\n";
    for (const auto& it : items) {
        std::cout << "  ";
        if (it.a) std::cout << "a = " << it.a->value();
        if (it.i) std::cout << ", i = " << *it.i;
        std::cout << "  ->  short form (" << it.A.value() << ", " << it.B.value() << ")\n";
    }
    std::cout << "count: " << items.size() << "; paper formula " << formula_name << " = "
              << formula_value << "; verdict: " << (matches ? "match" : "mismatch") << "\n";
    return 0;
}

int cmd_verify(u64 p, bool as_json, const std::string& json_out) {
    FieldCtx F = make_field(p);
    ConformanceReport rep = run_conformance(F);

    json j;
    j["schema_version"] = 1;
    j["p"] = p;
    j["conventions"] = conventions_json(F);
    json cl = json::array();
    for (const auto& c : rep.claims) {
        json e;
        e["id"] = c.id;
        e["locus"] = c.locus;
        e["stated"] = c.stated;
        e["oracle"] = c.oracle;
        e["verdict"] = verdict_name(c.verdict);
        cl.push_back(e);
    }
    j["claims"] = cl;
    j["all_match"] = rep.all_match();

    if (as_json || !json_out.empty()) emit(j, as_json, json_out);
    if (!as_json) {
        std::cout << conventions_line(F) << "\n";
        for (const auto& c : rep.claims) {
            std::cout << "  [" << verdict_name(c.verdict) << "] " << c.id << ": " << c.locus
                      << "\n";
            if (c.verdict != Verdict::NotApplicable)
                std::cout << "      stated " << c.stated << "; computed " << c.oracle << "\n";
        }
        std::cout << (rep.all_match() ? "all claims match" : "MISMATCHES PRESENT") << "\n";
    }
    return rep.all_match() ? 0 : 2;
}

int cmd_divpoly(u64 p, const std::string& short_csv, u64 n, bool as_json) {
    FieldCtx F = make_field(p);
    auto v = parse_ints(short_csv, 2, "--short");
    DivPoly d = division_polynomial(F, F.el(v[0]), F.el(v[1]), n);
    std::string text = d.y_factor ? ("(2y) * (" + d.x_part.str() + ")") : d.x_part.str();
    if (as_json) {
        json j;
        j["schema_version"] = 1;
        j["p"] = p;
        j["curve"] = json{{"p", p}, {"short", {F.el(v[0]).value(), F.el(v[1]).value()}}};
        j["n"] = n;
        std::vector<u64> coeffs;
        for (const Fp& c : d.x_part.coeffs()) coeffs.push_back(c.value());
        j["x_part_coefficients_low_first"] = coeffs;
        j["y_factor"] = d.y_factor;
        j["text"] = text;
        emit(j, true, "");
        return 0;
    }
    std::cout << "psi_" << n << " = " << text << "\n";
    return 0;
}

int cmd_orbit(u64 p, i64 a, bool as_json) {
    FieldCtx F = make_field(p);
    static const char* kMapNames[12] = {
        "a",
        "a(1+rho)/(3a-rho)",
        "a rho/(3a-1-rho)",
        "-1/(9a)",
        "-(1+rho)(3a-1-rho)/3",
        "rho(3a-rho)/(9a)",
        "rho(3a-1-rho)/(3(3a-rho))",
        "-rho/(3(3a-1-rho))",
        "(1+rho)(3a-rho)/(3(3a-1-rho))",
        "(1+rho)(3a-1-rho)/(9a)",
        "(1+rho)/(3(3a-rho))",
        "rho(3a-rho)/3",
    };
    GaAction act = ga_action(F, F.el(a));
    if (as_json) {
        json j;
        j["schema_version"] = 1;
        j["p"] = p;
        j["conventions"] = conventions_json(F);
        j["a"] = F.el(a).value();
        json imgs = json::array();
        for (size_t k = 0; k < 12; ++k) {
            json e;
            e["map"] = kMapNames[k];
            if (act.images[k].value)
                e["image"] = act.images[k].value->value();
            else
                e["image"] = nullptr;
            e["in_domain"] = act.images[k].in_domain;
            imgs.push_back(e);
        }
        j["images"] = imgs;
        std::vector<u64> orb;
        for (Fp x : act.orbit) orb.push_back(x.value());
        j["orbit"] = orb;
        emit(j, true, "");
        return 0;
    }
    std::cout << conventions_line(F) << "\n";
    std::cout << "G_a images of a = " << F.el(a).value() << ":\n";
    for (size_t k = 0; k < 12; ++k) {
        std::cout << "  " << kMapNames[k] << " -> ";
        if (act.images[k].value)
            std::cout << act.images[k].value->value()
                      << (act.images[k].in_domain ? "" : " (outside domain)");
        else
            std::cout << "undefined (zero denominator)";
        std::cout << "\n";
    }
    std::cout << "orbit {";
    for (size_t k = 0; k < act.orbit.size(); ++k)
        std::cout << (k ? "," : "") << act.orbit[k].value();
    std::cout << "}\n";
    return 0;
}

int cmd_fermat(u64 p, bool as_json) {
    FieldCtx F = make_field(p);
    auto cm = oracle::cm_decompose(F); // rejects p = 2 mod 3
    u64 n = oracle::fermat_cubic_count(F);
    if (as_json) {
        json j;
        j["schema_version"] = 1;
        j["p"] = p;
        j["solutions"] = n;
        j["A"] = cm.A;
        j["B"] = cm.B;
        j["q_minus_2_plus_A"] = static_cast<i64>(p) - 2 + cm.A;
        emit(j, true, "");
        return 0;
    }
    std::cout << n << " solutions; 4q = (" << cm.A << ")^2 + 27*" << cm.B << "^2\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"elliptic curves over F_p and their order-3 rational subgroups"};
    app.require_subcommand(1);

    u64 p = 0;
    std::string short_csv, general_csv, family, json_out;
    bool as_json = false;
    u64 n = 3;
    i64 a_param = 0;

    auto* classify_cmd = app.add_subcommand("classify", "3-torsion report for one curve");
    classify_cmd->add_option("-p", p, "prime modulus")->required();
    auto* so = classify_cmd->add_option("--short", short_csv, "A,B for y^2 = x^3 + Ax + B");
    auto* go = classify_cmd->add_option("--general", general_csv, "a1,a2,a3,a4,a6");
    so->excludes(go);
    classify_cmd->add_flag("--json", as_json, "machine-readable output");

    auto* enum_cmd = app.add_subcommand("enumerate", "family representatives");
    enum_cmd->add_option("-p", p, "prime modulus")->required();
    enum_cmd->add_option("--family", family, "cyclic|noncyclic|twist-cyclic|twist-noncyclic|q2mod3")
        ->required()
        ->check(CLI::IsMember(
            {"cyclic", "noncyclic", "twist-cyclic", "twist-noncyclic", "q2mod3"}));
    enum_cmd->add_flag("--json", as_json, "machine-readable output");

    auto* verify_cmd = app.add_subcommand("verify", "per-prime conformance report");
    verify_cmd->add_option("-p", p, "prime modulus")->required();
    verify_cmd->add_flag("--json", as_json, "machine-readable output");
    verify_cmd->add_option("--json-out", json_out, "write the JSON report to a file");

    auto* div_cmd = app.add_subcommand("divpoly", "reduced division polynomial");
    div_cmd->add_option("-p", p, "prime modulus")->required();
    div_cmd->add_option("--short", short_csv, "A,B")->required();
    div_cmd->add_option("-n", n, "index")->required();
    div_cmd->add_flag("--json", as_json, "machine-readable output");

    auto* orbit_cmd = app.add_subcommand("orbit", "G_a orbit of a parameter");
    orbit_cmd->add_option("-p", p, "prime modulus")->required();
    orbit_cmd->add_option("-a", a_param, "parameter")->required();
    orbit_cmd->add_flag("--json", as_json, "machine-readable output");

    auto* fermat_cmd = app.add_subcommand("fermat", "x^3 + y^3 = 1 count and 4q = A^2 + 27B^2");
    fermat_cmd->add_option("-p", p, "prime modulus")->required();
    fermat_cmd->add_flag("--json", as_json, "machine-readable output");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return 1;
    }

    try {
        if (app.got_subcommand(classify_cmd)) {
            if (short_csv.empty() == general_csv.empty())
                throw Error("classify needs exactly one of --short or --general");
            return cmd_classify(p, short_csv, general_csv, as_json);
        }
        if (app.got_subcommand(enum_cmd)) return cmd_enumerate(p, family, as_json);
        if (app.got_subcommand(verify_cmd)) return cmd_verify(p, as_json, json_out);
        if (app.got_subcommand(div_cmd)) return cmd_divpoly(p, short_csv, n, as_json);
        if (app.got_subcommand(orbit_cmd)) return cmd_orbit(p, a_param, as_json);
        if (app.got_subcommand(fermat_cmd)) return cmd_fermat(p, as_json);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
