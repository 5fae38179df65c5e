#include "hermform/notation.hpp"

#include <cctype>
#include <cstdlib>
#include <optional>

namespace hermform {
namespace {

const char* kOverline = "̄";
const char* kSuperscripts[] = {"⁰", "¹", "²", "³", "⁴", "⁵", "⁶", "⁷", "⁸", "⁹"};
const char* kSubscripts[] = {"₀", "₁", "₂", "₃", "₄", "₅", "₆", "₇", "₈", "₉"};

bool all_digits(const std::string& s)
{
    if (s.empty())
        return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c)))
            return false;
    return true;
}

// Index of a coframe generator named p<k> or q<k>, if the whole algebra is a
// coframe algebra (p's of bidegree (1,0) conjugate to the q with the same k).
bool is_coframe_algebra(const GradedAlgebra& alg)
{
    if (alg.size() == 0)
        return false;
    for (std::size_t k = 0; k < alg.size(); ++k) {
        const auto& g = alg.generator(k);
        if (g.name.size() < 2 || (g.name[0] != 'p' && g.name[0] != 'q') || !all_digits(g.name.substr(1)))
            return false;
        const Bidegree want = g.name[0] == 'p' ? Bidegree{1, 0} : Bidegree{0, 1};
        if (g.bidegree != want)
            return false;
        const auto& c = alg.generator(g.conjugate);
        if (c.name.substr(1) != g.name.substr(1) || c.name[0] == g.name[0])
            return false;
    }
    return true;
}

std::string superscript(const std::string& digits)
{
    std::string out;
    for (char c : digits)
        out += kSuperscripts[c - '0'];
    return out;
}

std::string index_list(const std::vector<std::string>& idx, bool overline, bool ascii)
{
    bool wide = false;
    for (const auto& s : idx)
        wide = wide || s.size() > 1;
    std::string out;
    for (std::size_t k = 0; k < idx.size(); ++k) {
        if (wide && k > 0)
            out += ",";
        if (overline && ascii)
            out += "~";
        out += idx[k];
        if (overline && !ascii)
            out += kOverline;
    }
    return out;
}

std::string coframe_monomial(const GradedAlgebra& alg, const Monomial& m, bool ascii)
{
    std::vector<std::string> holo, anti;
    for (std::size_t k = 0; k < alg.size(); ++k)
        if (m.exponent(k))
            (alg.generator(k).name[0] == 'p' ? holo : anti).push_back(alg.generator(k).name.substr(1));
    const std::string phi = ascii ? "phi" : "φ";
    if (holo.empty() && anti.empty())
        return "1";
    if (anti.empty() && holo.size() == 1)
        return ascii ? phi + "^" + holo[0] : phi + superscript(holo[0]);
    if (holo.empty() && anti.size() == 1)
        return ascii ? "~" + phi + "^" + anti[0] : phi + kOverline + superscript(anti[0]);
    std::string body = index_list(holo, false, ascii);
    if (!holo.empty() && !anti.empty())
        body += " ";
    body += index_list(anti, true, ascii);
    return phi + "^{" + body + "}";
}

std::string plain_name(const std::string& name, bool ascii)
{
    if (ascii)
        return name;
    static const std::pair<const char*, const char*> greek[] = {
        {"omega", "ω"}, {"phi", "φ"}, {"psi", "ψ"}, {"eta", "η"}, {"theta", "θ"}, {"w", "ω"}, {"e", "e"}};
    for (const auto& [latin, symbol] : greek) {
        const std::string l = latin;
        if (name.rfind(l, 0) != 0)
            continue;
        std::string rest = name.substr(l.size());
        if (rest.empty())
            return symbol;
        if (all_digits(rest)) {
            std::string out = symbol;
            for (char c : rest)
                out += kSubscripts[c - '0'];
            return out;
        }
    }
    return name;
}

} // namespace

bool ascii_from_env()
{
    const char* v = std::getenv("HERMFORM_ASCII");
    return v && std::string(v) == "1";
}

std::string format_generator(const GradedAlgebra& alg, std::size_t k, bool ascii)
{
    const auto& g = alg.generator(k);
    if (g.conjugate < k) {
        const std::string base = plain_name(alg.generator(g.conjugate).name, ascii);
        if (ascii)
            return "~" + base;
        // Overline the leading symbol (one UTF-8 code point).
        std::size_t len = 1;
        while (len < base.size() && (static_cast<unsigned char>(base[len]) & 0xC0) == 0x80)
            ++len;
        return base.substr(0, len) + kOverline + base.substr(len);
    }
    return plain_name(g.name, ascii);
}

std::string format_monomial(const GradedAlgebra& alg, const Monomial& m, bool ascii)
{
    if (is_coframe_algebra(alg))
        return coframe_monomial(alg, m, ascii);
    std::string out;
    for (std::size_t k = 0; k < alg.size(); ++k) {
        const int e = m.exponent(k);
        if (!e)
            continue;
        if (!out.empty())
            out += ascii ? "*" : "∧";
        out += format_generator(alg, k, ascii);
        if (e > 1)
            out += ascii ? "^" + std::to_string(e) : superscript(std::to_string(e));
    }
    return out.empty() ? "1" : out;
}

std::string format_form(const Form& f, bool ascii)
{
    if (f.is_zero())
        return "0";
    const auto& alg = *f.algebra();
    std::string out;
    for (const auto& [m, c] : f.terms()) {
        const bool unit = m == alg.unit();
        std::string coeff;
        if (c == Scalar(1))
            coeff = unit ? "1" : "";
        else if (c == Scalar(-1))
            coeff = unit ? "-1" : "-";
        else if (!c.is_real() && sgn(c.re()) != 0)
            coeff = "(" + c.to_string() + ")";
        else
            coeff = c.to_string();
        std::string term = coeff;
        if (!unit) {
            if (ascii && !coeff.empty() && coeff != "-")
                term += "*";
            term += format_monomial(alg, m, ascii);
        }
        if (out.empty())
            out = term;
        else if (term[0] == '-')
            out += " - " + term.substr(1);
        else
            out += " + " + term;
    }
    return out;
}

} // namespace hermform
