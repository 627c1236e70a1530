#include <CLI11.hpp>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "crg/builtins.hpp"
#include "crg/gradedalg.hpp"
#include "crg/hyptypes.hpp"
#include "crg/labels.hpp"
#include "crg/springer.hpp"

using namespace crg;

namespace {

constexpr const char* kVersion = "1.0.0";

// Raised for malformed requests; mapped to exit code 2.
struct InputError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct Options {
    std::string group;
    std::optional<int> n, d_param, e, r;
    std::string format = "md";
    bool audit = false;
    std::vector<std::string> filters;
    std::string check;
    std::string module = "V";
    std::vector<std::string> chi;
    bool all_chi = false;
    std::string sigma = "1";
    std::string d_range;
    std::optional<std::size_t> cap;
    std::string gamma;
    std::string bad = "none";
    bool cross_check = false;
    bool timing = false;
};

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t");
    const auto e = s.find_last_not_of(" \t");
    return b == std::string::npos ? "" : s.substr(b, e - b + 1);
}

long parse_long(const std::string& s, const std::string& what) {
    try {
        std::size_t used = 0;
        const long v = std::stol(trim(s), &used);
        if (used != trim(s).size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw InputError("bad " + what + ": '" + s + "'");
    }
}

// "4", "1..6" or "1,3,5".
std::vector<long> parse_range(const std::string& text) {
    std::vector<long> out;
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, ',')) {
        const auto dots = part.find("..");
        if (dots == std::string::npos) {
            out.push_back(parse_long(part, "d"));
            continue;
        }
        const long lo = parse_long(part.substr(0, dots), "d range"), hi = parse_long(part.substr(dots + 2), "d range");
        if (lo > hi) throw InputError("empty d range '" + part + "'");
        for (long d = lo; d <= hi; ++d) out.push_back(d);
    }
    if (out.empty()) throw InputError("empty d range");
    for (long d : out)
        if (d < 1) throw InputError("d must be positive");
    return out;
}

ReflectionGroup load_group(const Options& o, bool d_is_group_parameter) {
    if (o.group.empty()) throw InputError("--group is required");
    if (std::filesystem::is_regular_file(o.group)) return group_from_spec(load_group_spec(o.group));
    if (o.group == "sym") {
        if (!o.n) throw InputError("sym needs --n");
        return builtin("sym", {*o.n});
    }
    if (o.group == "imprimitive") {
        if (!d_is_group_parameter)
            throw InputError("with verify, give the group as imprimitive(d,e,r); --d selects the root order");
        if (!o.d_param || !o.e || !o.r) throw InputError("imprimitive needs --d, --e and --r");
        return builtin("imprimitive", {*o.d_param, *o.e, *o.r});
    }
    if (o.group.ends_with(".json")) throw InputError("cannot read group file " + o.group);
    return builtin_from_string(o.group);
}

struct Loaded {
    ReflectionGroup group;
    CharacterTable table;
    explicit Loaded(ReflectionGroup g) : group(std::move(g)), table(group.group()) { attach_labels(group, table); }
};

std::size_t find_character(const Loaded& l, const std::string& label) {
    if (auto k = l.table.find_label(label)) return *k;
    if (label == "1" || label == "trivial") return 0;
    if (label == "det") {
        if (auto k = l.table.find(determinant_character(l.group.group()))) return *k;
    }
    throw InputError("unknown character label '" + label + "'");
}

std::vector<std::size_t> selected_linear(const Loaded& l, const Options& o) {
    if (o.all_chi || o.chi.empty()) return l.table.linear();
    std::vector<std::size_t> out;
    for (const auto& label : o.chi) {
        const std::size_t k = find_character(l, label);
        if (!l.table[k].is_linear()) throw InputError("character '" + label + "' is not linear");
        out.push_back(k);
    }
    return out;
}

std::vector<long> selected_sigmas(const Options& o, long conductor, long d) {
    const long field = std::lcm(conductor, d);
    if (o.sigma == "all") {
        std::vector<long> out;
        for (long s = 1; s <= std::max(1L, field - 1); ++s)
            if (gcd_long(s, field) == 1) out.push_back(s);
        return out;
    }
    const long s = parse_long(o.sigma, "sigma");
    if (gcd_long(mod_floor(s, field), field) != 1)
        throw InputError("sigma " + o.sigma + " is not coprime to " + std::to_string(field));
    return {s};
}

ModuleModel parse_module(const Loaded& l, const std::string& text) {
    const std::size_t dim = l.group.dimension();
    std::string base = text, twist;
    if (const auto star = text.find('*'); star != std::string::npos) {
        base = text.substr(0, star);
        twist = text.substr(star + 1);
    }
    ModuleModel m;
    if (base == "V") m = natural_module(dim);
    else if (base == "Vdual") m = dual_module(dim);
    else if (base.starts_with("Vdualsigma:")) m = dual_galois_module(dim, parse_long(base.substr(11), "module exponent"));
    else if (base.starts_with("Vsigma:")) m = galois_module(dim, parse_long(base.substr(7), "module exponent"));
    else throw InputError("unknown module '" + text + "' (use V, Vdual, Vsigma:a, Vdualsigma:a, optionally *chi)");
    if (twist.empty()) return m;
    const std::size_t k = find_character(l, twist);
    if (!l.table[k].is_linear()) throw InputError("module twist must be a linear character");
    return twisted_module(std::move(m), l.table.label(k), character_on_elements(l.group.group(), l.table[k]));
}

// "scalar:k/n" for zeta_n^k id, or a JSON file holding a matrix.
std::optional<Matrix> parse_gamma(const Loaded& l, const std::string& text) {
    if (text.empty() || text == "id") return std::nullopt;
    if (text.starts_with("scalar:")) {
        const std::string rest = text.substr(7);
        const auto slash = rest.find('/');
        if (slash == std::string::npos) throw InputError("gamma must look like scalar:k/n");
        const long k = parse_long(rest.substr(0, slash), "gamma"), n = parse_long(rest.substr(slash + 1), "gamma");
        if (n < 1) throw InputError("gamma order must be positive");
        return Matrix::scalar(l.group.dimension(), Cyclotomic::root_of_unity(n, k));
    }
    std::ifstream in(text);
    if (!in) throw InputError("cannot read gamma file " + text);
    Json j;
    try {
        in >> j;
    } catch (const Json::exception& e) {
        throw InputError("malformed gamma file: " + std::string(e.what()));
    }
    const Json& m = j.is_object() && j.contains("matrix") ? j["matrix"] : j;
    Matrix g = matrix_from_json(m);
    if (g.rows() != l.group.dimension() || !g.is_square()) throw InputError("gamma has the wrong size");
    return g;
}

Json echo(const Options& o, const std::string& command) {
    Json j = {{"command", command}, {"group", o.group}};
    if (o.n) j["n"] = *o.n;
    if (o.d_param) j["d"] = *o.d_param;
    if (o.e) j["e"] = *o.e;
    if (o.r) j["r"] = *o.r;
    if (!o.check.empty()) j["check"] = o.check;
    if (!o.d_range.empty()) j["d_range"] = o.d_range;
    if (!o.chi.empty()) j["chi"] = o.chi;
    if (o.all_chi) j["all_chi"] = true;
    if (!o.gamma.empty()) j["gamma"] = o.gamma;
    if (o.cap) j["cap"] = *o.cap;
    return j;
}

void emit(const Options& o, const Json& report, const std::string& markdown) {
    if (o.format == "json") std::cout << report.dump(2) << "\n";
    else std::cout << markdown;
}

// ---- info ----

int cmd_info(const Options& o) {
    const Loaded l(load_group(o, true));
    const MatrixGroup& g = l.group.group();
    Json orbits = Json::array();
    std::vector<int> sizes(l.group.orbit_count()), orders(l.group.orbit_count());
    for (const auto& h : l.group.hyperplanes()) {
        ++sizes[h.orbit];
        orders[h.orbit] = h.order;
    }
    for (std::size_t i = 0; i < sizes.size(); ++i) orbits.push_back({{"e_H", orders[i]}, {"size", sizes[i]}});
    Json linear = Json::array();
    for (std::size_t k : l.table.linear()) linear.push_back(l.table.label(k));
    const std::vector<int> degrees = invariant_degrees(l.group);
    const Json results = {{"name", l.group.name()},
                          {"order", g.order()},
                          {"dimension", g.dimension()},
                          {"conductor", g.conductor()},
                          {"classes", g.class_count()},
                          {"reflections", l.group.reflections().size()},
                          {"hyperplanes", l.group.hyperplanes().size()},
                          {"orbits", orbits},
                          {"degrees", degrees},
                          {"linear_characters", linear}};
    std::ostringstream md;
    md << "# " << l.group.name() << "\n\n"
       << "- order: " << g.order() << "\n- dimension: " << g.dimension() << "\n- conductor: " << g.conductor()
       << "\n- classes: " << g.class_count() << "\n- reflections: " << l.group.reflections().size()
       << "\n- hyperplanes: " << l.group.hyperplanes().size() << "\n- orbits (e_H, size):";
    for (std::size_t i = 0; i < sizes.size(); ++i) md << " (" << orders[i] << ", " << sizes[i] << ")";
    md << "\n- degrees:";
    for (int d : degrees) md << " " << d;
    md << "\n- linear characters:";
    for (std::size_t k : l.table.linear()) md << " " << l.table.label(k);
    md << "\n";
    emit(o, {{"command", echo(o, "info")}, {"tool_version", kVersion}, {"results", results}, {"verdict", true}},
         md.str());
    return 0;
}

// ---- classify ----

int cmd_classify(const Options& o) {
    const Loaded l(load_group(o, true));
    ClassificationTable table = classify_group(l.group, l.table);
    const ClassificationTable full = table;
    for (const auto& f : o.filters) {
        const auto eq = f.find('=');
        if (eq == std::string::npos) throw InputError("filter must be flag=value");
        const std::string flag = f.substr(0, eq), value = f.substr(eq + 1);
        if (value != "true" && value != "false" && value != "yes" && value != "no")
            throw InputError("filter value must be true or false");
        const bool want = value == "true" || value == "yes";
        flag_value(TypeFlags{}, flag);  // rejects unknown names
        std::erase_if(table.rows, [&](const TypeFlags& row) { return flag_value(row, flag) != want; });
    }
    Json report = {{"command", echo(o, "classify")}, {"tool_version", kVersion}, {"results", to_json(table)}};
    std::string md = to_markdown(table);
    bool ok = true;
    if (o.audit) {
        const auto violations = consistency_audit(l.group, l.table, full);
        Json v = Json::array();
        for (const auto& x : violations) v.push_back(to_json(x));
        report["audit"] = v;
        ok = violations.empty();
        md += "\n## Audit\n\n";
        if (violations.empty()) md += "no violations\n";
        for (const auto& x : violations)
            md += "- " + x.rule + ": orbit " + std::to_string(x.row.orbit) + ", M = " + x.row.module_label +
                  ", chi = " + x.row.chi_label + "\n";
    }
    report["verdict"] = ok;
    emit(o, report, md);
    return ok ? 0 : 1;
}

// ---- verify ----

struct Outcome {
    Json results = Json::array();
    std::string markdown;
    bool ok = true;

    void add(const std::string& label, bool verdict, Json payload) {
        ok = ok && verdict;
        markdown += "| " + label + " | " + (verdict ? "pass" : "FAIL") + " |\n";
        results.push_back(std::move(payload));
    }
};

void verify_stanley(const Loaded& l, const Options& o, Outcome& out) {
    const std::size_t cap = o.cap.value_or(12);
    for (std::size_t k : selected_linear(l, o)) {
        const VerificationReport r = stanley_check(l.group, l.table[k], l.table.label(k), cap);
        out.add("stanley chi=" + l.table.label(k), r.verdict, to_json(r));
    }
}

void verify_molien(const Loaded& l, const Options& o, const SpringerContext& ctx, Outcome& out) {
    const std::size_t cap = o.cap.value_or(12);
    const ModuleModel module = parse_module(l, o.module);
    for (std::size_t k : selected_linear(l, o)) {
        const VerificationReport r = molien_bigraded_check(ctx, module, l.table[k], l.table.label(k), cap + 1);
        out.add("molien M=" + module.label + " chi=" + l.table.label(k), r.verdict, to_json(r));
        const OmegaSpace space(l.group, module);
        for (std::size_t p = 0; p <= module.dimension; ++p) {
            const VerificationReport dims = omega_dimension_check(space, p, l.table[k], l.table.label(k), cap);
            out.add("omega dimensions p=" + std::to_string(p) + " chi=" + l.table.label(k), dims.verdict, to_json(dims));
        }
    }
}

void verify_omega(const Loaded& l, const Options& o, const std::optional<Matrix>& gamma, Outcome& out) {
    const ModuleModel module = parse_module(l, o.module);
    const OmegaSpace space(l.group, module);
    for (std::size_t k : selected_linear(l, o)) {
        OmegaBasisOptions options;
        if (o.bad == "all") options.bad = BadSet::all(l.group);
        else if (o.bad != "none") throw InputError("--bad must be none or all");
        options.cap = o.cap;
        options.gamma = gamma;
        const IsotypicBasis basis = omega1_basis(space, l.table[k], l.table.label(k), options);
        const VerificationReport r = exterior_algebra_check(space, basis);
        Json payload = {{"basis", to_json(basis)}, {"exterior_algebra", to_json(r)}};
        out.add("omega M=" + module.label + " chi=" + l.table.label(k), basis.verified() && r.verdict, payload);
    }
}

void verify_pw(const Loaded& l, const Options& o, const SpringerContext& ctx, Outcome& out) {
    for (long d : parse_range(o.d_range.empty() ? "1" : o.d_range))
        for (std::size_t k : selected_linear(l, o))
            for (long sigma : selected_sigmas(o, ctx.conductor(), d))
                for (bool starred : {false, true}) {
                    const RegularityReport r = pw_identity(ctx, d, l.table[k], l.table.label(k), sigma, starred);
                    out.add("pw d=" + std::to_string(d) + " chi=" + l.table.label(k) + " sigma=" +
                                std::to_string(r.sigma) + (starred ? " dual" : ""),
                            r.verdict(), to_json(r));
                }
}

void verify_corollaries(const Loaded& l, const Options& o, const SpringerContext& ctx, Outcome& out) {
    for (long d : parse_range(o.d_range.empty() ? "1" : o.d_range))
        for (std::size_t k : selected_linear(l, o))
            for (long sigma : selected_sigmas(o, ctx.conductor(), d))
                for (const auto& item : corollary_suite(ctx, l.table[k], l.table.label(k), sigma, d)) {
                    Json j = to_json(item);
                    j["d"] = d;
                    j["chi"] = l.table.label(k);
                    j["sigma"] = sigma;
                    const std::string label = item.item + " d=" + std::to_string(d) + " chi=" + l.table.label(k);
                    if (!item.applicable) {
                        out.markdown += "| " + label + " | n/a |\n";
                        out.results.push_back(std::move(j));
                    } else {
                        out.add(label, item.verdict, std::move(j));
                    }
                }
}

void verify_regular(const Loaded& l, const Options& o, const SpringerContext& ctx, Outcome& out) {
    const bool trivial_gamma = !ctx.gamma();
    for (long d : parse_range(o.d_range.empty() ? "1" : o.d_range)) {
        const RegularityWitness w = is_regular(ctx, d);
        Json j = {{"d", d}, {"regular", w.regular}, {"dimension", w.dimension}, {"max_dimension", w.max_dimension}};
        j["witness"] = w.element ? Json(*w.element) : Json(nullptr);
        Json checks = Json::array();
        bool ok = true;
        std::string failed;
        if (o.cross_check) {
            const std::vector<std::string> wanted =
                trivial_gamma ? std::vector<std::string>{"regular_implies_balanced", "regularity_criterion",
                                                         "regularity_criterion_dual"}
                              : std::vector<std::string>{"twisted_regular_implies_balanced",
                                                         "twisted_regularity_criterion",
                                                         "twisted_dual_regularity_criterion"};
            for (std::size_t k : selected_linear(l, o))
                for (const auto& item : corollary_suite(ctx, l.table[k], l.table.label(k), 1, d)) {
                    if (std::find(wanted.begin(), wanted.end(), item.item) == wanted.end()) continue;
                    Json c = to_json(item);
                    c["chi"] = l.table.label(k);
                    checks.push_back(c);
                    if (item.applicable && !item.verdict) {
                        ok = false;
                        failed += " " + item.item + "[" + l.table.label(k) + "]";
                    }
                }
            j["cross_check"] = checks;
        }
        out.add("regular d=" + std::to_string(d) + (w.regular ? " (regular)" : " (not regular)") +
                    (failed.empty() ? "" : ", disagrees:" + failed),
                ok, j);
    }
}

int cmd_verify(const Options& o) {
    static const std::vector<std::string> kChecks = {"stanley", "molien", "omega", "pw", "corollaries", "regular"};
    if (std::find(kChecks.begin(), kChecks.end(), o.check) == kChecks.end())
        throw InputError("unknown check '" + o.check + "'");
    const Loaded l(load_group(o, false));
    const std::optional<Matrix> gamma = parse_gamma(l, o.gamma);
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    out.markdown = "# verify " + o.check + " on " + l.group.name() + "\n\n| check | verdict |\n|---|---|\n";
    if (o.check == "stanley") {
        verify_stanley(l, o, out);
    } else if (o.check == "omega") {
        verify_omega(l, o, gamma, out);
    } else {
        const SpringerContext ctx(l.group, gamma, o.gamma.empty() ? "id" : o.gamma);
        if (o.check == "molien") verify_molien(l, o, ctx, out);
        else if (o.check == "pw") verify_pw(l, o, ctx, out);
        else if (o.check == "corollaries") verify_corollaries(l, o, ctx, out);
        else verify_regular(l, o, ctx, out);
    }
    Json report = {{"command", echo(o, "verify")}, {"tool_version", kVersion}, {"results", out.results},
                   {"verdict", out.ok}};
    if (o.timing)
        report["timing_ms"] = std::chrono::duration_cast<std::chrono::milliseconds>(
                                  std::chrono::steady_clock::now() - start)
                                  .count();
    out.markdown += std::string("\nverdict: ") + (out.ok ? "pass" : "FAIL") + "\n";
    emit(o, report, out.markdown);
    return out.ok ? 0 : 1;
}

void add_group_options(CLI::App* cmd, Options& o, bool with_group_d) {
    cmd->add_option("--group", o.group, "builtin id (sym, imprimitive, g4, g5, g24, sym(4), ...) or JSON path")
        ->required();
    cmd->add_option("--n", o.n, "n for sym");
    if (with_group_d) cmd->add_option("--d", o.d_param, "d for imprimitive");
    cmd->add_option("--e", o.e, "e for imprimitive");
    cmd->add_option("--r", o.r, "r for imprimitive");
    cmd->add_option("--format", o.format, "md or json")->check(CLI::IsMember({"md", "json"}));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact computations for finite complex reflection groups"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kVersion);
    Options o;

    auto* info = app.add_subcommand("info", "group summary");
    add_group_options(info, o, true);

    auto* classify = app.add_subcommand("classify", "hyperplane type tables");
    add_group_options(classify, o, true);
    classify->add_flag("--audit", o.audit, "append the consistency audit");
    classify->add_option("--filter", o.filters, "keep rows with flag=value (good, excellent, mchi_good, mchi_acceptable)");

    auto* verify = app.add_subcommand("verify", "run a verification suite");
    verify->add_option("check", o.check, "stanley, molien, omega, pw, corollaries or regular")->required();
    add_group_options(verify, o, false);
    verify->add_option("--module", o.module, "V, Vdual, Vsigma:a, Vdualsigma:a, optionally *chi");
    verify->add_option("--chi", o.chi, "linear character label (repeatable)");
    verify->add_flag("--all-chi", o.all_chi, "every linear character");
    verify->add_option("--sigma", o.sigma, "Galois exponent or 'all'");
    verify->add_option("--d", o.d_range, "root orders: 4, 1..6 or 1,3,5");
    verify->add_option("--cap", o.cap, "degree cap");
    verify->add_option("--gamma", o.gamma, "scalar:k/n or a JSON matrix file");
    verify->add_option("--bad", o.bad, "hyperplanes allowed in denominators: none or all");
    verify->add_flag("--cross-check", o.cross_check, "compare regularity with the a/b criteria");
    verify->add_flag("--timing", o.timing, "include wall time in the JSON report");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*info) return cmd_info(o);
        if (*classify) return cmd_classify(o);
        return cmd_verify(o);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::runtime_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::logic_error& e) {
        std::cerr << "internal check failed: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
