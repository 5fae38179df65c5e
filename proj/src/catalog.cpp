#include "hermform/catalog.hpp"

#include "hermform/errors.hpp"

#include <regex>

namespace hermform {
namespace {

struct Nakamura {
    const char* type;
    int n;
    const char* equations;
};

// Complex-parallelisable solvable models, structure equations as listed.
const Nakamura kNakamura[] = {
    {"III.2", 3, "d p3 = -p1*p2\n"},
    {"III.3", 3, "d p2 = -p1*p2\nd p3 = p1*p3\n"},
    {"IV.2", 4, "d p4 = -p2*p3\n"},
    {"IV.3", 4, "d p3 = -p1*p2\nd p4 = -2*p1*p3\n"},
    {"IV.4", 4, "d p3 = p2*p3\nd p4 = -p2*p4\n"},
    {"IV.6", 4, "d p2 = p1*p2\nd p3 = -p1*p3\nd p4 = -p2*p3\n"},
    {"V.2", 5, "d p5 = p3*p4\n"},
    {"V.3", 5, "d p5 = -p1*p3 - p2*p4\n"},
    {"V.4", 5, "d p4 = -p1*p2\nd p5 = -p1*p3\n"},
    {"V.5", 5, "d p4 = -p2*p3\nd p5 = -2*p2*p4\n"},
    {"V.6", 5, "d p4 = -p1*p2\nd p5 = -2*p1*p4 - p2*p3\n"},
    {"V.7", 5, "d p4 = p3*p4\nd p5 = -p3*p5\n"},
    {"V.8", 5, "d p3 = -p1*p2\nd p4 = -2*p1*p3\nd p5 = -2*p2*p3\n"},
    {"V.9", 5, "d p3 = -p1*p2\nd p4 = -2*p1*p3\nd p5 = -3*p1*p4\n"},
    {"V.10", 5, "d p3 = -p1*p2\nd p4 = -2*p1*p3\nd p5 = -3*p1*p4 - p2*p3\n"},
    {"V.12", 5, "d p3 = p1*p3\nd p4 = p2*p4\nd p5 = -p1*p5 - p2*p5\n"},
    {"V.15", 5, "d p3 = p2*p3\nd p4 = -p2*p4\nd p5 = -p3*p4\n"},
    {"V.17", 5,
     "param alpha\nparam beta\n"
     "d p2 = p1*p2\nd p3 = alpha*p1*p3\nd p4 = beta*p1*p4\nd p5 = (-1-alpha-beta)*p1*p5\n"},
};

struct Listed {
    const char* type;
    const char* a;
    const char* b;
    const char* c;
    const char* expected;
};

const Listed kListed[] = {
    {"III.2", "p1*p2", "q1*q2", "q1*q2", "p3*q1*q2*q3"},
    {"III.3", "p1*p2", "q1*q2", "q1*q3", "p2*q1*q2*q3"},
    {"IV.2", "p2*p3", "q2*q3", "q2*q3", "p4*q2*q3*q4"},
    {"IV.3", "p1*p2", "q1*q2", "q2", "p3*q2*q3"},
    {"IV.4", "p2*p3", "q2*q3", "q2*q4", "p3*q2*q3*q4"},
    {"IV.6", "p2*p3", "q2*q3", "q2*q3", "p4*q2*q3*q4"},
    {"V.2", "p3*p4", "q3*q4", "q3*q4", "p5*q3*q4*q5"},
    {"V.3", "p1*p2*p4", "q1*q2*q4", "q2", "p1*p5*q1*q2*q5"},
    {"V.4", "p1*p2", "q1*q2", "q1*q2", "p4*q1*q2*q4"},
    {"V.5", "p2*p3", "q2*q3", "q3", "p4*q3*q4"},
    {"V.6", "p1*p2", "q1*q2", "q2", "p4*q2*q4"},
    {"V.7", "p3*p4", "q3*q4", "q3*q5", "p4*q3*q4*q5"},
    {"V.8", "p2*p3", "q2*q3", "q2", "p5*q2*q5"},
    {"V.9", "p1*p2", "q1*q2", "q2", "p4*q3*q4*q5"},
    {"V.10", "p1*p2*p4*p5", "q1*q2*q4*q5", "q2", "p3*p4*p5*q2*q3*q4*q5"},
    {"V.12", "p2*p3*p5", "q2*q3*q5", "q2*q4", "p3*p5*q2*q3*q4*q5"},
    {"V.15", "p3*p4", "q3*q4", "q3*q4", "p5*q3*q4*q5"},
};

const Listed kV17Generic{"V.17", "p1*p2*p4", "q1*q2*q4", "q1*q3*q5", "p2*p4*q1*q2*q3*q4*q5"};
const Listed kV17BetaMinusOne{"V.17", "p1*p2*p3*p4", "q1*q2*q3*q4", "q1*q5", "p2*p3*p4*q1*q2*q3*q4*q5"};

std::string holo_line(int n)
{
    std::string s = "holo";
    for (int k = 1; k <= n; ++k)
        s += " p" + std::to_string(k);
    return s + "\n";
}

int small_int(const std::string& text, const std::string& id)
{
    if (text.size() > 2)
        throw Error("parameter out of range in " + id);
    return std::stoi(text);
}

std::string ce_source(int u, int v)
{
    const std::string id = "ce:u=" + std::to_string(u) + ",v=" + std::to_string(v);
    std::string s = "model " + id + " dim " + std::to_string(u + v + 1) + "\n";
    s += "gen phi : (1,0) conj phib\n";
    s += "gen phib : (0,1) conj phi\n";
    if (u > 0)
        s += "gen w1 : (1,1) even trunc " + std::to_string(u + 1) + " real\n";
    if (v > 0)
        s += "gen w2 : (1,1) even trunc " + std::to_string(v + 1) + " real\n";
    std::string dbar_phi, del_phib;
    if (u > 0) {
        dbar_phi = "w1";
        del_phib = "w1";
    }
    if (v > 0) {
        dbar_phi += u > 0 ? " - i*w2" : "-i*w2";
        del_phib += u > 0 ? " + i*w2" : "i*w2";
    }
    if (!dbar_phi.empty()) {
        s += "dbar phi = " + dbar_phi + "\n";
        s += "del phib = " + del_phib + "\n";
    }
    return s;
}

const Nakamura* find_nakamura(const std::string& type)
{
    for (const auto& e : kNakamura)
        if (type == e.type)
            return &e;
    return nullptr;
}

} // namespace

std::vector<CatalogEntry> catalog_entries()
{
    std::vector<CatalogEntry> out;
    for (const auto& e : kNakamura) {
        CatalogEntry c{std::string("nakamura:") + e.type,
                       "complex parallelisable solvable, dimension " + std::to_string(e.n), {}};
        if (std::string(e.type) == "V.17")
            c.parameters = {"alpha", "beta"};
        out.push_back(std::move(c));
    }
    out.push_back({"iwasawa", "Iwasawa manifold (same equations as nakamura:III.2)", {}});
    out.push_back({"example1:invariant", "Iwasawa model, forms fixed by (z1,z2,z3) -> (i z1, i z2, -z3)", {}});
    out.push_back({"ce:u=U,v=V", "Calabi-Eckmann model of S^{2U+1} x S^{2V+1}", {}});
    out.push_back({"torus:n=N", "complex torus of dimension N (zero differentials)", {}});
    return out;
}

std::vector<std::string> nakamura_ids()
{
    std::vector<std::string> out;
    for (const auto& e : kNakamura)
        out.push_back(std::string("nakamura:") + e.type);
    return out;
}

std::string catalog_source(const std::string& id)
{
    if (id.rfind("nakamura:", 0) == 0) {
        const Nakamura* e = find_nakamura(id.substr(9));
        if (!e)
            throw Error("unknown catalog id " + id);
        return "model " + id + " dim " + std::to_string(e->n) + "\n" + holo_line(e->n) + e->equations;
    }
    if (id == "iwasawa" || id == "example1:invariant")
        return "model " + id + " dim 3\n" + holo_line(3) + kNakamura[0].equations;
    static const std::regex ce(R"(ce:u=(\d+),v=(\d+))");
    static const std::regex torus(R"(torus:n=(\d+))");
    std::smatch m;
    if (std::regex_match(id, m, ce)) {
        const int u = small_int(m[1], id), v = small_int(m[2], id);
        if (u > 12 || v > 12)
            throw Error("Calabi-Eckmann parameters must be at most 12");
        return ce_source(u, v);
    }
    if (std::regex_match(id, m, torus)) {
        const int n = small_int(m[1], id);
        if (n < 1 || n > 6)
            throw Error("torus dimension must be between 1 and 6");
        return "model " + id + " dim " + std::to_string(n) + "\n" + holo_line(n);
    }
    throw Error("unknown catalog id " + id);
}

DiagonalAction example1_action()
{
    const Scalar i = Scalar::i();
    // (p1, p2, p3, q1, q2, q3)
    return DiagonalAction{{i, i, Scalar(-1), -i, -i, Scalar(-1)}};
}

Model load_model(const std::string& id, const Parameters& params)
{
    ModelSpecPtr spec = parse_model(catalog_source(id), params);
    if (id == "nakamura:V.17") {
        Scalar alpha, beta;
        for (const auto& [n, v] : spec->parameters)
            (n == "alpha" ? alpha : beta) = v;
        if ((alpha * beta * (Scalar(1) + alpha + beta)).is_zero())
            throw Error("nakamura:V.17 requires alpha*beta*(1+alpha+beta) != 0");
    }
    if (id == "example1:invariant")
        return Model(spec, example1_action());
    return Model(spec);
}

AppendixCase appendix_case(const std::string& id, const Parameters& params)
{
    const Listed* listed = nullptr;
    for (const auto& l : kListed)
        if (id == l.type)
            listed = &l;
    if (id == "V.17") {
        auto beta = params.find("beta");
        if (params.find("alpha") == params.end() || beta == params.end())
            throw Error("case V.17 needs --param alpha=.. and --param beta=..");
        listed = beta->second == Scalar(-1) ? &kV17BetaMinusOne : &kV17Generic;
    } else if (!params.empty()) {
        throw Error("case " + id + " takes no parameters");
    }
    if (!listed)
        throw Error("unknown appendix case " + id);
    return {id, std::string("nakamura:") + listed->type, params, listed->a, listed->b, listed->c, listed->expected};
}

std::vector<AppendixCase> appendix_cases()
{
    std::vector<AppendixCase> out;
    for (const auto& l : kListed)
        out.push_back(appendix_case(l.type));
    out.push_back(appendix_case("V.17", {{"alpha", Scalar(1)}, {"beta", Scalar(1)}}));
    out.push_back(appendix_case("V.17", {{"alpha", Scalar(1)}, {"beta", Scalar(-1)}}));
    return out;
}

} // namespace hermform
