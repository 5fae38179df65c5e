#include "hermform/cli.hpp"

#include "hermform/catalog.hpp"
#include "hermform/errors.hpp"
#include "hermform/formality.hpp"
#include "hermform/massey.hpp"
#include "hermform/notation.hpp"
#include "hermform/obstruction.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <random>
#include <sstream>

namespace hermform::cli {
namespace {

constexpr std::uint64_t kDefaultSeed = 20240917;

std::string read_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw Error("cannot read " + path);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

Parameters parse_params(const std::vector<std::string>& items)
{
    Parameters out;
    for (const auto& item : items) {
        const auto eq = item.find('=');
        if (eq == std::string::npos || eq == 0)
            throw Error("parameter must look like name=value: " + item);
        mpq_class v;
        if (v.set_str(item.substr(eq + 1), 10) != 0)
            throw Error("parameter value must be an integer or a fraction: " + item);
        v.canonicalize();
        out[item.substr(0, eq)] = Scalar(v);
    }
    return out;
}

struct ModelSource {
    std::string id;
    std::string file;
    std::vector<std::string> params;

    void add_to(CLI::App* app)
    {
        auto* m = app->add_option("--model", id, "catalog id (see `list`)");
        auto* f = app->add_option("--file", file, "structure-equation file");
        m->excludes(f);
        app->add_option("--param", params, "parameter value name=value (repeatable)");
    }

    Model load() const
    {
        if (id.empty() == file.empty())
            throw Error("exactly one of --model and --file is required");
        if (!id.empty())
            return load_model(id, parse_params(params));
        return Model(parse_model(read_file(file), parse_params(params)));
    }
};

std::string yes_no(bool b)
{
    return b ? "yes" : "no";
}

std::string theory_title(Theory t)
{
    switch (t) {
    case Theory::dolbeault: return "Dolbeault h_dbar";
    case Theory::conj_dolbeault: return "conjugate Dolbeault h_del";
    case Theory::bott_chern: return "Bott-Chern h_BC";
    case Theory::aeppli: return "Aeppli h_A";
    case Theory::de_rham: return "Betti";
    }
    return "?";
}

std::string notion_title(Notion n)
{
    switch (n) {
    case Notion::geom_dolbeault: return "geometrically Dolbeault formal";
    case Notion::geom_bott_chern: return "geometrically Bott-Chern formal";
    case Notion::geom_abc: return "ABC-geometrically formal";
    case Notion::geom_aeppli: return "geometrically Aeppli formal";
    case Notion::geom_de_rham: return "geometrically formal";
    }
    return "?";
}

std::string condition_text(const std::string& c, bool ascii)
{
    if (ascii)
        return c;
    std::string s = c;
    auto replace = [&s](const std::string& from, const std::string& to) {
        for (std::size_t pos = 0; (pos = s.find(from, pos)) != std::string::npos; pos += to.size())
            s.replace(pos, from.size(), to);
    };
    replace("dbar", "∂̄");
    replace("del", "∂");
    replace(" ", "");
    return s;
}

void print_witness(std::ostream& out, const Witness& w, bool ascii)
{
    const std::string wedge = ascii ? " * " : " ∧ ";
    const std::string ne = ascii ? " != 0" : " ≠ 0";
    if (w.second) {
        out << "witness: (" << format_form(w.first, ascii) << ")" << wedge << "(" << format_form(*w.second, ascii)
            << ") = " << format_form(w.product, ascii) << "\n";
    } else {
        out << "witness: " << condition_text(w.condition == "del" || w.condition == "dbar" ? w.condition : "d", ascii)
            << "(" << format_form(w.first, ascii) << ") = " << format_form(w.product, ascii) << "\n";
    }
    out << "violated: " << condition_text(w.condition, ascii) << "(" << format_form(w.product, ascii)
        << ") = " << format_form(w.image, ascii) << ne << "\n";
}

void print_formality(std::ostream& out, const Hodge& h, Notion notion, bool ascii)
{
    if (notion == Notion::geom_bott_chern || notion == Notion::geom_abc) {
        if (auto f = holomorphic_closedness_obstruction(h)) {
            out << "obstructed: holomorphic form " << format_form(*f, ascii) << " with "
                << (ascii ? "del(" + format_form(*f, true) + ") != 0" : "∂" + format_form(*f, false) + " ≠ 0")
                << "\n";
        }
    }
    FormalityReport r = check_formality(h, notion);
    out << notion_title(notion) << " (given metric): " << yes_no(r.verdict) << "\n";
    if (r.module_condition)
        out << "A-harmonic ^ BC-harmonic in A-harmonic: " << yes_no(*r.module_condition) << "\n";
    if (r.spaces_coincide)
        out << "harmonic spaces coincide and are closed: " << yes_no(*r.spaces_coincide) << "\n";
    if (r.witness)
        print_witness(out, *r.witness, ascii);
}

std::vector<Theory> parse_theories(const std::string& list)
{
    std::vector<Theory> out;
    std::stringstream s(list);
    std::string item;
    while (std::getline(s, item, ',')) {
        auto t = parse_theory(item);
        if (!t)
            throw Error("unknown theory " + item + " (use dbar, del, bc, a, dr)");
        out.push_back(*t);
    }
    if (out.empty())
        throw Error("--theories must name at least one theory");
    return out;
}

void print_tables(std::ostream& out, const Hodge& h, const CohomologyTable& t, const std::vector<Theory>& theories,
                  bool bases, bool ascii)
{
    for (Theory th : theories) {
        out << theory_title(th) << ":\n";
        if (th == Theory::de_rham) {
            for (std::size_t k = 0; k < t.betti.size(); ++k)
                out << (k ? " " : "  ") << t.betti[k];
            out << "\n";
        } else {
            out << render_diamond(t.grid(th));
        }
        if (!bases)
            continue;
        if (th == Theory::de_rham) {
            for (int k = 0; k <= 2 * h.n(); ++k)
                for (const Form& f : h.harmonic_de_rham(k).forms)
                    out << "  b_" << k << ": " << format_form(f, ascii) << "\n";
            continue;
        }
        for (int p = 0; p <= h.n(); ++p)
            for (int q = 0; q <= h.n(); ++q)
                for (const Form& f : h.harmonic(th, {p, q}).forms)
                    out << "  " << to_string(Bidegree{p, q}) << ": " << format_form(f, ascii) << "\n";
    }
}

void print_report(std::ostream& out, const ObstructionReport& r)
{
    for (const auto& v : r.verdicts)
        out << to_string(v.target) << " formality: "
            << (v.obstructed ? "obstructed" : "not obstructed by these tests") << "\n";
    for (const auto& f : r.fired) {
        out << "fired " << f.test << ": " << f.text << " (obstructs";
        for (std::size_t k = 0; k < f.obstructs.size(); ++k)
            out << (k ? ", " : " ") << to_string(f.obstructs[k]);
        out << ")\n";
    }
    for (const auto& s : r.skipped)
        out << "skipped " << s << "\n";
}

int verify_appendix(std::ostream& out, const std::string& id, const std::vector<std::string>& params, bool ascii)
{
    std::vector<AppendixCase> cases;
    if (id.empty()) {
        if (!params.empty())
            throw Error("--param requires --case");
        cases = appendix_cases();
    } else {
        cases.push_back(appendix_case(id, parse_params(params)));
    }
    int verified = 0;
    for (const auto& c : cases) {
        std::string label = c.id;
        if (!c.params.empty()) {
            label += "(";
            bool first = true;
            for (const auto& [k, v] : c.params) {
                label += (first ? "" : ",") + k + "=" + v.to_string();
                first = false;
            }
            label += ")";
        }
        AppendixReport r = verify_appendix_case(c);
        verified += r.verified;
        out << (r.verified ? "ok   " : "FAIL ") << std::left << std::setw(22) << label << std::right << r.message;
        if (r.verified)
            out << " [" << format_form(r.verdict.aeppli_harmonic, ascii) << "]";
        out << "\n";
    }
    out << verified << "/" << cases.size() << " cases verified\n";
    return 0;
}

void run_ce(std::ostream& out, int u, int v, bool all, bool ascii)
{
    if (u < 0 || v < 0)
        throw Error("--u and --v must be nonnegative");
    Model m = load_model("ce:u=" + std::to_string(u) + ",v=" + std::to_string(v));
    Hodge h(m);
    CohomologyTable t = h.table();
    out << "Calabi-Eckmann model M_{" << u << "," << v << "}, complex dimension " << h.n() << "\n";
    std::vector<Theory> theories{Theory::bott_chern, Theory::dolbeault};
    if (all)
        theories = {Theory::dolbeault, Theory::conj_dolbeault, Theory::bott_chern, Theory::aeppli, Theory::de_rham};
    print_tables(out, h, t, theories, all, ascii);
    for (Notion n : {Notion::geom_bott_chern, Notion::geom_dolbeault}) {
        FormalityReport r = check_formality(h, n);
        out << notion_title(n) << ": " << yes_no(r.verdict) << "\n";
        if (r.witness)
            print_witness(out, *r.witness, ascii);
    }
    if (!all)
        return;
    for (Notion n : {Notion::geom_abc, Notion::geom_aeppli, Notion::geom_de_rham})
        out << notion_title(n) << ": " << yes_no(check_formality(h, n).verdict) << "\n";

    bool oracle = true, duality = true;
    for (int p = 0; p <= h.n(); ++p)
        for (int q = 0; q <= h.n(); ++q) {
            for (Theory th : {Theory::dolbeault, Theory::conj_dolbeault, Theory::bott_chern, Theory::aeppli})
                oracle = oracle && h.harmonic(th, {p, q}).forms.size() == h.cohomology_dim(th, {p, q});
            const Bidegree dual{h.n() - p, h.n() - q};
            std::vector<Vector> stars;
            for (const Form& f : h.harmonic(Theory::bott_chern, {p, q}).forms)
                stars.push_back(h.coordinates(h.star(f), dual));
            duality = duality && Subspace::span(h.dim(dual), stars).same_as(h.harmonic(Theory::aeppli, dual).space);
        }
    for (int k = 0; k <= 2 * h.n(); ++k)
        oracle = oracle && h.harmonic_de_rham(k).forms.size() == h.betti_dim(k);
    out << "harmonic dimensions equal quotient dimensions: " << yes_no(oracle) << "\n";
    out << "star maps BC-harmonic onto A-harmonic: " << yes_no(duality) << "\n";
    for (const auto& row : ddbar_p0_report(h))
        out << "ddbar-lemma on (" << row.p << ",0)-forms, p = " << row.p << ": " << yes_no(row.all()) << "\n";
    if (!oracle || !duality)
        throw InvariantViolation("harmonic spaces disagree with the quotient dimensions or with star duality");
}

} // namespace

std::string render_diamond(const std::vector<std::vector<int>>& grid)
{
    const int n = static_cast<int>(grid.size()) - 1;
    std::size_t w = 1;
    for (const auto& row : grid)
        for (int v : row)
            w = std::max(w, std::to_string(v).size());
    const std::size_t unit = w + 1;
    std::ostringstream out;
    for (int k = 0; k <= 2 * n; ++k) {
        const int hi = std::min(k, n), lo = std::max(0, k - n);
        const int count = hi - lo + 1;
        std::string line((static_cast<std::size_t>(n + 1 - count)) * unit, ' ');
        for (int p = hi; p >= lo; --p) {
            std::string cell = std::to_string(grid[p][k - p]);
            cell.insert(0, w - cell.size(), ' ');
            line += cell;
            if (p > lo)
                line += std::string(2 * unit - w, ' ');
        }
        out << "  " << line << "\n";
    }
    return out.str();
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Hermitian formality toolkit for bigraded models", "hermform"};
    app.require_subcommand(1);
    bool ascii_flag = false;
    std::uint64_t seed = kDefaultSeed;
    app.add_flag("--ascii", ascii_flag, "ASCII-only output");
    app.add_option("--seed", seed, "seed for randomized checks");

    auto* list = app.add_subcommand("list", "print catalog ids");

    auto* coh = app.add_subcommand("cohomology", "print cohomology diamonds");
    ModelSource coh_src;
    coh_src.add_to(coh);
    std::string theories = "dbar,bc,a,dr";
    bool json_out = false, bases = false;
    coh->add_option("--theories", theories, "comma-separated subset of dbar,del,bc,a,dr");
    coh->add_flag("--json", json_out, "print the JSON table instead of diamonds");
    coh->add_flag("--bases", bases, "print harmonic representatives");

    auto* form = app.add_subcommand("formality", "test a formality notion for the given metric");
    ModelSource form_src;
    form_src.add_to(form);
    std::string notion;
    form->add_option("--notion", notion, "dolbeault, bott-chern, abc, aeppli or de-rham")->required();

    auto* mas = app.add_subcommand("massey", "triple ABC-Massey product");
    ModelSource mas_src;
    mas_src.add_to(mas);
    std::string ea, eb, ec;
    int perturb = 0;
    mas->add_option("--a", ea, "first Bott-Chern harmonic form")->required();
    mas->add_option("--b", eb, "second Bott-Chern harmonic form")->required();
    mas->add_option("--c", ec, "third Bott-Chern harmonic form")->required();
    mas->add_option("--perturb", perturb, "re-check with this many randomly shifted potentials")
        ->check(CLI::Range(0, 1000));

    auto* app_v = app.add_subcommand("verify-appendix", "recompute the listed triple products");
    std::string case_id;
    std::vector<std::string> case_params;
    app_v->add_option("--case", case_id, "single case, e.g. V.17");
    app_v->add_option("--param", case_params, "parameter value name=value (repeatable)");

    auto* ce = app.add_subcommand("ce", "Calabi-Eckmann tables and standard-metric formality");
    int u = 0, v = 0;
    bool all_checks = false;
    ce->add_option("--u", u, "u")->required()->check(CLI::Range(0, 12));
    ce->add_option("--v", v, "v")->required()->check(CLI::Range(0, 12));
    ce->add_flag("--all-checks", all_checks, "all theories, notions and consistency checks");

    auto* obs = app.add_subcommand("obstruct", "dimension obstructions for a JSON table");
    std::string input;
    bool obs_json = false;
    obs->add_option("--input", input, "JSON table file")->required();
    obs->add_flag("--json", obs_json, "print the JSON report");

    auto* parse = app.add_subcommand("parse", "check a structure-equation file");
    std::string parse_file;
    bool validate = false, print = false;
    std::vector<std::string> parse_params_raw;
    parse->add_option("file", parse_file, "structure-equation file")->required();
    parse->add_flag("--validate", validate, "validate the model");
    parse->add_flag("--print", print, "print the canonical form");
    parse->add_option("--param", parse_params_raw, "parameter value name=value (repeatable)");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 1;
    }

    const bool ascii = ascii_flag || ascii_from_env();
    try {
        if (*list) {
            for (const auto& e : catalog_entries()) {
                out << std::left << std::setw(22) << e.id << std::right << e.description;
                if (!e.parameters.empty()) {
                    out << " (parameters:";
                    for (const auto& p : e.parameters)
                        out << " " << p;
                    out << ")";
                }
                out << "\n";
            }
        } else if (*coh) {
            const auto ths = parse_theories(theories);
            Hodge h(coh_src.load());
            CohomologyTable t = h.table();
            t.model = h.model().spec().name;
            if (json_out)
                out << to_json(from_cohomology(t)) << "\n";
            else
                print_tables(out, h, t, ths, bases, ascii);
        } else if (*form) {
            auto n = parse_notion(notion);
            if (!n)
                throw Error("unknown notion " + notion);
            Hodge h(form_src.load());
            print_formality(out, h, *n, ascii);
        } else if (*mas) {
            Model m = mas_src.load();
            Hodge h(m);
            Form a = parse_form(m.spec(), ea), b = parse_form(m.spec(), eb), c = parse_form(m.spec(), ec);
            MasseyVerdict r = triple_abc_massey(h, a, b, c);
            out << "product lies in Aeppli bidegree " << to_string(r.bidegree) << "\n";
            out << "f_ab = " << format_form(r.f_ab, ascii) << "\n";
            out << "f_bc = " << format_form(r.f_bc, ascii) << "\n";
            out << "representative: " << format_form(r.representative, ascii) << "\n";
            out << "Aeppli-harmonic projection: " << format_form(r.aeppli_harmonic, ascii) << "\n";
            out << "indeterminacy dimension: " << r.indeterminacy.dim() << " of "
                << r.indeterminacy.ambient() << "\n";
            out << "triple ABC-Massey product: " << (r.nonzero ? "nonzero" : "zero") << "\n";
            if (perturb > 0) {
                std::mt19937_64 rng(seed);
                const int bad = perturbation_disagreements(h, a, b, c, perturb, rng);
                out << "perturbed potentials agreeing: " << perturb - bad << "/" << perturb << " (seed " << seed
                    << ")\n";
                if (bad)
                    throw InvariantViolation("Massey verdict depends on the choice of potentials");
            }
        } else if (*app_v) {
            return verify_appendix(out, case_id, case_params, ascii);
        } else if (*ce) {
            run_ce(out, u, v, all_checks, ascii);
        } else if (*obs) {
            DimTable t = dim_table_from_json(read_file(input));
            ObstructionReport r = analyze(t);
            if (obs_json)
                out << to_json(r) << "\n";
            else
                print_report(out, r);
        } else if (*parse) {
            ModelSpecPtr spec = parse_model(read_file(parse_file), parse_params(parse_params_raw));
            if (validate) {
                Model m(spec);
                out << "ok: " << spec->name << ", complex dimension " << spec->n << ", "
                    << spec->algebra->size() << " generators\n";
            }
            if (print || !validate)
                out << print_model(*spec);
        }
    } catch (const InvariantViolation& e) {
        err << "internal error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

} // namespace hermform::cli
