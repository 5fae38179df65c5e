#include "hermform/dsl.hpp"

#include "hermform/errors.hpp"

#include <cctype>
#include <functional>
#include <set>
#include <sstream>

namespace hermform {
namespace {

enum class Tok { ident, number, symbol, end };

struct Token {
    Tok kind = Tok::end;
    std::string text;
    int column = 0;
    bool imaginary = false;  // number literal written with a trailing i
};

bool ident_start(char c)
{
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}

bool ident_char(char c)
{
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

std::vector<Token> tokenize(std::string_view s, int line)
{
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < s.size()) {
        const char c = s[i];
        const int col = static_cast<int>(i) + 1;
        if (c == ' ' || c == '\t') {
            ++i;
        } else if (ident_start(c)) {
            std::size_t j = i;
            while (j < s.size() && ident_char(s[j]))
                ++j;
            out.push_back({Tok::ident, std::string(s.substr(i, j - i)), col});
            i = j;
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t j = i;
            while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j])))
                ++j;
            Token t{Tok::number, std::string(s.substr(i, j - i)), col};
            if (j < s.size() && s[j] == 'i' && (j + 1 == s.size() || !ident_char(s[j + 1]))) {
                t.imaginary = true;
                ++j;
            } else if (j < s.size() && ident_char(s[j])) {
                throw ParseError(line, static_cast<int>(j) + 1, "unexpected character after number");
            }
            out.push_back(std::move(t));
            i = j;
        } else if (std::string_view("():,=+-*/^").find(c) != std::string_view::npos) {
            out.push_back({Tok::symbol, std::string(1, c), col});
            ++i;
        } else {
            throw ParseError(line, col, std::string("unexpected character '") + c + "'");
        }
    }
    out.push_back({Tok::end, "", static_cast<int>(s.size()) + 1});
    return out;
}

using ParamLookup = std::function<const Scalar*(const std::string&)>;

/// A monomial-valued term of an expression: coefficient times a wedge of generators.
struct Term {
    Scalar coeff{1};
    Form product;
    Bidegree bidegree;
    bool has_generator = false;
    int column = 0;
};

class LineParser {
public:
    LineParser(std::vector<Token> tokens, int line) : toks_(std::move(tokens)), line_(line) {}

    const Token& peek() const { return toks_[pos_]; }
    Token next() { return toks_[pos_ == toks_.size() - 1 ? pos_ : pos_++]; }
    bool at_end() const { return peek().kind == Tok::end; }
    int line() const { return line_; }

    bool accept(char sym)
    {
        if (peek().kind == Tok::symbol && peek().text[0] == sym) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char sym)
    {
        if (!accept(sym))
            fail(peek(), std::string("expected '") + sym + "'");
    }

    std::string expect_ident(const char* what)
    {
        if (peek().kind != Tok::ident)
            fail(peek(), std::string("expected ") + what);
        return next().text;
    }

    long expect_int(const char* what)
    {
        bool neg = accept('-');
        if (peek().kind != Tok::number || peek().imaginary)
            fail(peek(), std::string("expected ") + what);
        const Token t = next();
        if (t.text.size() > 9)
            fail(t, "integer too large");
        long v = std::stol(t.text);
        return neg ? -v : v;
    }

    void expect_end()
    {
        if (!at_end())
            fail(peek(), "unexpected '" + peek().text + "'");
    }

    [[noreturn]] void fail(const Token& t, const std::string& msg) const { throw ParseError(line_, t.column, msg); }

    // Scalar arithmetic: + - * / with parentheses, literals, i, parameters.
    Scalar scalar_expr(const ParamLookup& params)
    {
        Scalar v;
        bool first = true;
        for (;;) {
            int sign = 1;
            if (accept('-'))
                sign = -1;
            else if (!accept('+') && !first)
                break;
            Scalar t = scalar_term(params);
            v += sign == 1 ? t : -t;
            first = false;
        }
        return v;
    }

    // Expression over generators; returns its terms.
    std::vector<Term> form_expr(const ModelSpec& spec, const ParamLookup& params)
    {
        std::vector<Term> terms;
        bool first = true;
        for (;;) {
            int sign = 1;
            if (accept('-'))
                sign = -1;
            else if (!accept('+') && !first)
                break;
            Term t = form_term(spec, params);
            if (sign < 0)
                t.coeff = -t.coeff;
            terms.push_back(std::move(t));
            first = false;
        }
        return terms;
    }

private:
    Scalar scalar_term(const ParamLookup& params)
    {
        Scalar v = scalar_factor(params);
        for (;;) {
            if (accept('*')) {
                v *= scalar_factor(params);
            } else if (peek().kind == Tok::symbol && peek().text == "/") {
                const Token slash = next();
                Scalar d = scalar_factor(params);
                if (d.is_zero())
                    fail(slash, "division by zero");
                v /= d;
            } else {
                return v;
            }
        }
    }

    Scalar scalar_factor(const ParamLookup& params)
    {
        if (accept('-'))
            return -scalar_factor(params);
        if (accept('(')) {
            Scalar v = scalar_expr(params);
            expect(')');
            return v;
        }
        const Token t = peek();
        if (t.kind == Tok::number)
            return number_literal();
        if (t.kind == Tok::ident) {
            next();
            if (t.text == "i")
                return Scalar::i();
            if (const Scalar* p = params(t.text))
                return *p;
            fail(t, "unknown parameter " + t.text);
        }
        fail(t, t.kind == Tok::end ? "unexpected end of line" : "unexpected '" + t.text + "'");
    }

    // INT, INT i, INT/INT or INT/INT i; a trailing i multiplies the whole fraction.
    Scalar number_literal()
    {
        const Token t = next();
        mpq_class v(t.text);
        bool imaginary = t.imaginary;
        if (!imaginary && peek().kind == Tok::symbol && peek().text == "/" && pos_ + 1 < toks_.size() &&
            toks_[pos_ + 1].kind == Tok::number) {
            next();
            const Token d = next();
            mpq_class den(d.text);
            if (sgn(den) == 0)
                fail(d, "division by zero");
            v /= den;
            imaginary = d.imaginary;
        }
        v.canonicalize();
        return imaginary ? Scalar(0, v) : Scalar(v);
    }

    Term form_term(const ModelSpec& spec, const ParamLookup& params)
    {
        Term term{Scalar(1), Form::unit(spec.algebra), {}, false, peek().column};
        for (;;) {
            form_factor(spec, params, term);
            if (!accept('*'))
                return term;
        }
    }

    void form_factor(const ModelSpec& spec, const ParamLookup& params, Term& term)
    {
        if (accept('(')) {
            term.coeff *= scalar_expr(params);
            expect(')');
            return;
        }
        const Token t = peek();
        if (t.kind == Tok::number) {
            term.coeff *= number_literal();
            return;
        }
        if (t.kind != Tok::ident)
            fail(t, t.kind == Tok::end ? "unexpected end of line" : "unexpected '" + t.text + "'");
        next();
        if (t.text == "i") {
            term.coeff *= Scalar::i();
            return;
        }
        if (const Scalar* p = params(t.text)) {
            term.coeff *= *p;
            return;
        }
        auto k = spec.algebra->index_of(t.text);
        if (!k)
            fail(t, "unknown generator " + t.text);
        long e = 1;
        if (accept('^')) {
            e = expect_int("an exponent");
            if (e < 1)
                fail(t, "exponent must be positive");
        }
        const auto& g = spec.algebra->generator(*k);
        for (long j = 0; j < e; ++j) {
            term.product = wedge(term.product, Form::generator(spec.algebra, *k));
            term.bidegree = term.bidegree + g.bidegree;
        }
        term.has_generator = true;
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
    int line_;
};

Form terms_to_form(const ModelSpec& spec, const std::vector<Term>& terms)
{
    Form f(spec.algebra);
    for (const auto& t : terms) {
        Form x = t.product;
        x *= t.coeff;
        f += x;
    }
    return f;
}

struct GenDecl {
    std::string name;
    Bidegree bidegree;
    int truncation = 0;  // 0: not given
    std::string conj;    // empty: not given
    bool real = false;
    int line = 0;
    int column = 0;
};

struct SourceLine {
    int number;
    std::vector<Token> tokens;
};

std::string conjugate_name(const std::string& holo)
{
    if (!holo.empty() && holo[0] == 'p')
        return "q" + holo.substr(1);
    return holo + "bar";
}

std::string trim(std::string_view s)
{
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a])))
        ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1])))
        --b;
    return std::string(s.substr(a, b - a));
}

} // namespace

ModelSpecPtr parse_model(std::string_view source, const Parameters& overrides)
{
    std::vector<std::pair<int, std::string>> lines;
    {
        int number = 0;
        std::size_t start = 0;
        while (start <= source.size()) {
            std::size_t end = source.find('\n', start);
            if (end == std::string_view::npos)
                end = source.size();
            std::string_view raw = source.substr(start, end - start);
            ++number;
            if (!raw.empty() && raw.back() == '\r')
                raw.remove_suffix(1);
            if (auto hash = raw.find('#'); hash != std::string_view::npos)
                raw = raw.substr(0, hash);
            lines.emplace_back(number, std::string(raw));
            if (end == source.size())
                break;
            start = end + 1;
        }
    }

    std::string name;
    int dim = 0;
    bool have_header = false;
    std::vector<std::pair<std::string, Scalar>> params;
    std::vector<GenDecl> gens;
    std::set<std::string> holo;
    std::vector<SourceLine> equations;

    auto lookup_param = [&](const std::string& n) -> const Scalar* {
        for (const auto& [pn, pv] : params)
            if (pn == n)
                return &pv;
        return nullptr;
    };
    auto find_gen = [&](const std::string& n) -> GenDecl* {
        for (auto& g : gens)
            if (g.name == n)
                return &g;
        return nullptr;
    };
    auto check_new_name = [&](const std::string& n, int line, int col) {
        if (n == "i")
            throw ParseError(line, col, "'i' is reserved for the imaginary unit");
        if (find_gen(n) || lookup_param(n))
            throw ParseError(line, col, "name " + n + " is already declared");
    };

    for (const auto& [number, text] : lines) {
        const std::string content = trim(text);
        if (content.empty())
            continue;
        // The header takes a free-form model name, so handle it before tokenizing.
        std::istringstream words(content);
        std::string keyword;
        words >> keyword;
        if (keyword == "algebra" || keyword == "model") {
            if (have_header)
                throw ParseError(number, 1, "duplicate header");
            std::string nm, dim_kw, dim_val, extra;
            words >> nm >> dim_kw >> dim_val;
            if (nm.empty() || dim_kw != "dim" || dim_val.empty() || (words >> extra))
                throw ParseError(number, 1, "expected '" + keyword + " NAME dim N'");
            for (char c : dim_val)
                if (!std::isdigit(static_cast<unsigned char>(c)))
                    throw ParseError(number, static_cast<int>(text.find(dim_val)) + 1, "dimension must be a positive integer");
            if (dim_val.size() > 3 || std::stoi(dim_val) <= 0)
                throw ParseError(number, static_cast<int>(text.find(dim_val)) + 1, "dimension must be a positive integer");
            name = nm;
            dim = std::stoi(dim_val);
            have_header = true;
            continue;
        }
        // Tokenize with columns relative to the original line.
        auto offset = static_cast<int>(text.find_first_not_of(" \t"));
        std::vector<Token> toks = tokenize(content, number);
        for (auto& t : toks)
            t.column += offset;
        if (!have_header)
            throw ParseError(number, toks.front().column, "expected 'model NAME dim N' first");
        LineParser lp(toks, number);
        const Token kw = lp.next();
        if (kw.kind != Tok::ident)
            lp.fail(kw, "expected a declaration");
        if (kw.text == "param") {
            const Token nt = lp.peek();
            std::string pn = lp.expect_ident("a parameter name");
            check_new_name(pn, number, nt.column);
            Scalar value;
            bool has_value = false;
            if (lp.accept('=')) {
                value = lp.scalar_expr(lookup_param);
                has_value = true;
            }
            lp.expect_end();
            if (auto it = overrides.find(pn); it != overrides.end()) {
                value = it->second;
                has_value = true;
            }
            if (!has_value)
                throw Error("parameter " + pn + " needs a value");
            params.emplace_back(pn, value);
        } else if (kw.text == "gen") {
            GenDecl g;
            const Token nt = lp.peek();
            g.name = lp.expect_ident("a generator name");
            check_new_name(g.name, number, nt.column);
            g.line = number;
            g.column = nt.column;
            lp.expect(':');
            lp.expect('(');
            g.bidegree.p = static_cast<int>(lp.expect_int("p"));
            lp.expect(',');
            g.bidegree.q = static_cast<int>(lp.expect_int("q"));
            lp.expect(')');
            if (g.bidegree.p < 0 || g.bidegree.q < 0 || g.bidegree.total() == 0)
                throw ParseError(number, nt.column, "bidegree must be nonnegative and nonzero");
            const bool odd = g.bidegree.total() % 2 != 0;
            while (!lp.at_end()) {
                const Token opt = lp.next();
                if (opt.kind != Tok::ident)
                    lp.fail(opt, "unexpected '" + opt.text + "'");
                if (opt.text == "odd") {
                    if (!odd)
                        lp.fail(opt, "generator of even total degree declared odd");
                } else if (opt.text == "even" || opt.text == "trunc") {
                    if (odd)
                        lp.fail(opt, "generator of odd total degree declared even");
                    if (opt.text == "even") {
                        const Token t2 = lp.peek();
                        if (lp.expect_ident("'trunc'") != "trunc")
                            lp.fail(t2, "expected 'trunc'");
                    }
                    const Token kt = lp.peek();
                    long k = lp.expect_int("a truncation");
                    if (k < 1 || k > 255)
                        lp.fail(kt, "truncation must be between 1 and 255");
                    g.truncation = static_cast<int>(k);
                } else if (opt.text == "conj") {
                    g.conj = lp.expect_ident("a conjugate name");
                } else if (opt.text == "real") {
                    g.real = true;
                } else {
                    lp.fail(opt, "unknown option " + opt.text);
                }
            }
            if (odd)
                g.truncation = 2;
            else if (g.truncation == 0)
                throw ParseError(number, nt.column, "even generator " + g.name + " needs 'even trunc K'");
            gens.push_back(std::move(g));
        } else if (kw.text == "holo") {
            std::vector<GenDecl> conjs;
            if (lp.at_end())
                lp.fail(lp.peek(), "expected generator names");
            while (!lp.at_end()) {
                const Token nt = lp.peek();
                std::string gn = lp.expect_ident("a generator name");
                check_new_name(gn, number, nt.column);
                std::string cn = conjugate_name(gn);
                check_new_name(cn, number, nt.column);
                for (const auto& c : conjs)
                    if (c.name == cn || c.name == gn)
                        throw ParseError(number, nt.column, "name " + gn + " is already declared");
                gens.push_back({gn, {1, 0}, 2, cn, false, number, nt.column});
                conjs.push_back({cn, {0, 1}, 2, gn, false, number, nt.column});
                holo.insert(gn);
            }
            gens.insert(gens.end(), conjs.begin(), conjs.end());
        } else if (kw.text == "d" || kw.text == "del" || kw.text == "dbar") {
            equations.push_back({number, std::move(toks)});
        } else {
            lp.fail(kw, "unknown declaration " + kw.text);
        }
    }
    if (!have_header)
        throw ParseError(1, 1, "expected 'model NAME dim N'");
    for (const auto& [on, ov] : overrides)
        if (!lookup_param(on))
            throw Error("unknown parameter " + on);

    // Resolve conjugates.
    std::vector<GeneratorSpec> specs;
    for (std::size_t k = 0; k < gens.size(); ++k) {
        GenDecl& g = gens[k];
        if (!g.conj.empty()) {
            GenDecl* c = find_gen(g.conj);
            if (!c)
                throw ParseError(g.line, g.column, "unknown conjugate " + g.conj);
            if (c->real || (!c->conj.empty() && c->conj != g.name))
                throw ParseError(g.line, g.column, "conjugate of " + g.conj + " is not " + g.name);
            c->conj = g.name;
        } else if (!g.real) {
            if (g.bidegree.p != g.bidegree.q)
                throw ParseError(g.line, g.column, "generator " + g.name + " needs 'conj NAME'");
            g.real = true;
        }
    }
    for (const auto& g : gens) {
        if (g.real && g.bidegree.p != g.bidegree.q)
            throw ParseError(g.line, g.column, "real generator " + g.name + " must have bidegree (p,p)");
        std::size_t conj = 0;
        const std::string& target = g.real ? g.name : g.conj;
        while (gens[conj].name != target)
            ++conj;
        if (gens[conj].bidegree != g.bidegree.conjugate())
            throw ParseError(g.line, g.column, "conjugate of " + g.name + " must have bidegree " +
                                                   to_string(g.bidegree.conjugate()));
        if (gens[conj].truncation != g.truncation)
            throw ParseError(g.line, g.column, "conjugate generators need equal truncations");
        specs.push_back({g.name, g.bidegree, g.truncation, conj});
    }

    auto algebra = std::make_shared<const GradedAlgebra>(std::move(specs));
    ModelSpec spec(name, dim, algebra);
    spec.parameters = params;

    std::set<std::pair<int, std::size_t>> assigned;
    for (auto& eq : equations) {
        LineParser lp(eq.tokens, eq.number);
        const Token kw = lp.next();
        const Token gt = lp.peek();
        std::string gname = lp.expect_ident("a generator name");
        auto k = algebra->index_of(gname);
        if (!k)
            lp.fail(gt, "unknown generator " + gname);
        lp.expect('=');
        std::vector<Term> terms = lp.form_expr(spec, lookup_param);
        lp.expect_end();

        const Bidegree gb = algebra->generator(*k).bidegree;
        auto store = [&](Operator op, const Bidegree target, Form value) {
            for (const auto& t : terms)
                if (t.has_generator && t.bidegree != target)
                    lp.fail(Token{Tok::ident, "", t.column},
                            "term has bidegree " + to_string(t.bidegree) + ", expected " + to_string(target));
                else if (!t.has_generator && !t.coeff.is_zero())
                    lp.fail(Token{Tok::ident, "", t.column}, "constant term in a differential");
            if (!assigned.insert({static_cast<int>(op), *k}).second)
                lp.fail(gt, std::string(op == Operator::del ? "del" : "dbar") + " " + gname + " is assigned twice");
            spec.assign(op, *k, std::move(value));
        };
        Form value = terms_to_form(spec, terms);
        if (kw.text == "d") {
            if (!holo.count(gname))
                lp.fail(gt, "'d' applies to holo generators; use del/dbar for " + gname);
            store(Operator::del, gb + Bidegree{1, 0}, std::move(value));
            terms.clear();
            store(Operator::dbar, gb + Bidegree{0, 1}, Form(algebra));
        } else if (kw.text == "del") {
            store(Operator::del, gb + Bidegree{1, 0}, std::move(value));
        } else {
            store(Operator::dbar, gb + Bidegree{0, 1}, std::move(value));
        }
    }
    return finalize(std::move(spec));
}

namespace {

std::string coefficient_text(const Scalar& c)
{
    if (!c.is_real() && sgn(c.re()) != 0)
        return "(" + c.to_string() + ")";
    return c.to_string();
}

std::string form_source(const ModelSpec& spec, const Form& f)
{
    if (f.is_zero())
        return "0";
    const auto& alg = *spec.algebra;
    std::string out;
    for (const auto& [m, c] : f.terms()) {
        std::string mono;
        for (std::size_t k = 0; k < alg.size(); ++k) {
            const int e = m.exponent(k);
            if (!e)
                continue;
            if (!mono.empty())
                mono += "*";
            mono += alg.generator(k).name;
            if (e > 1)
                mono += "^" + std::to_string(e);
        }
        std::string term;
        if (c == Scalar(1))
            term = mono;
        else if (c == Scalar(-1))
            term = "-" + mono;
        else
            term = coefficient_text(c) + "*" + mono;
        if (out.empty())
            out = term;
        else if (term[0] == '-')
            out += " - " + term.substr(1);
        else
            out += " + " + term;
    }
    return out;
}

} // namespace

std::string print_model(const ModelSpec& spec)
{
    std::ostringstream os;
    const auto& alg = *spec.algebra;
    os << "model " << spec.name << " dim " << spec.n << "\n";
    for (const auto& [pn, pv] : spec.parameters)
        os << "param " << pn << " = " << coefficient_text(pv) << "\n";
    for (std::size_t k = 0; k < alg.size(); ++k) {
        const auto& g = alg.generator(k);
        os << "gen " << g.name << " : (" << g.bidegree.p << "," << g.bidegree.q << ")";
        if (!g.odd())
            os << " even trunc " << g.truncation;
        if (g.conjugate == k)
            os << " real";
        else
            os << " conj " << alg.generator(g.conjugate).name;
        os << "\n";
    }
    for (std::size_t k = 0; k < alg.size(); ++k)
        for (Operator op : {Operator::del, Operator::dbar}) {
            const Form& v = spec.value(op, k);
            if (!v.is_zero())
                os << (op == Operator::del ? "del " : "dbar ") << alg.generator(k).name << " = " << form_source(spec, v)
                   << "\n";
        }
    return os.str();
}

bool same_model(const ModelSpec& a, const ModelSpec& b)
{
    if (a.name != b.name || a.n != b.n || a.parameters != b.parameters)
        return false;
    const auto& ga = a.algebra->generators();
    const auto& gb = b.algebra->generators();
    if (ga.size() != gb.size())
        return false;
    for (std::size_t k = 0; k < ga.size(); ++k)
        if (ga[k].name != gb[k].name || ga[k].bidegree != gb[k].bidegree || ga[k].truncation != gb[k].truncation ||
            ga[k].conjugate != gb[k].conjugate)
            return false;
    for (std::size_t k = 0; k < ga.size(); ++k)
        for (Operator op : {Operator::del, Operator::dbar})
            if (a.value(op, k).terms() != b.value(op, k).terms())
                return false;
    return true;
}

Form parse_form(const ModelSpec& spec, std::string_view text)
{
    std::string content(text);
    LineParser lp(tokenize(content, 1), 1);
    auto lookup = [&](const std::string& n) -> const Scalar* {
        for (const auto& [pn, pv] : spec.parameters)
            if (pn == n)
                return &pv;
        return nullptr;
    };
    if (lp.at_end())
        lp.fail(lp.peek(), "empty expression");
    std::vector<Term> terms = lp.form_expr(spec, lookup);
    lp.expect_end();
    return terms_to_form(spec, terms);
}

} // namespace hermform
