#include "cychom/input.hpp"

#include <cctype>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace cychom {

namespace {

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}

/* Character scanner over one line (or one expression tail) that
 * reports 1-based columns relative to the full source line. */
struct Scanner {
    int lineno;
    int base;
    std::string s;
    size_t i = 0;

    int col() const { return base + static_cast<int>(i); }
    void skip_ws() {
        while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    }
    bool eof() {
        skip_ws();
        return i >= s.size();
    }
    char peek() {
        skip_ws();
        return i < s.size() ? s[i] : '\0';
    }
    [[noreturn]] void fail(const std::string& msg) { throw ParseError(lineno, col(), msg); }

    std::string ident() {
        skip_ws();
        if (i >= s.size() || !ident_start(s[i])) fail("expected a name");
        size_t j = i;
        while (j < s.size() && ident_char(s[j])) ++j;
        std::string out = s.substr(i, j - i);
        i = j;
        return out;
    }

    long integer() {
        skip_ws();
        size_t j = i;
        if (j < s.size() && (s[j] == '-' || s[j] == '+')) ++j;
        size_t digits = j;
        while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
        if (j == digits) fail("expected an integer");
        long v = std::stol(s.substr(i, j - i));
        i = j;
        return v;
    }

    Rational rational_literal() {
        skip_ws();
        size_t j = i;
        while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
        std::string num = s.substr(i, j - i);
        i = j;
        if (peek() == '/') {
            ++i;
            skip_ws();
            size_t k = i;
            while (k < s.size() && std::isdigit(static_cast<unsigned char>(s[k]))) ++k;
            if (k == i) fail("expected a denominator");
            std::string den = s.substr(i, k - i);
            i = k;
            if (den == "0") fail("zero denominator");
            return rational_from_string(num + "/" + den);
        }
        return rational_from_string(num);
    }

    void expect(char c, const std::string& what) {
        if (peek() != c) fail("expected " + what);
        ++i;
    }

    void expect_arrow() {
        skip_ws();
        if (i + 1 >= s.size() || s[i] != '-' || s[i + 1] != '>') fail("expected '->'");
        i += 2;
    }

    std::string rest() {
        skip_ws();
        std::string out = s.substr(i);
        i = s.size();
        while (!out.empty() && (out.back() == ' ' || out.back() == '\t')) out.pop_back();
        return out;
    }
};

/* A differential or product right-hand side, kept as raw text until
 * every declaration is known. */
struct PendingExpr {
    int lineno = 0;
    int col = 0;
    std::string raw;
};

/* Polynomial in words over a name resolver: each term multiplies
 * rational literals into the coefficient and concatenates names into
 * the word. `resolve` throws ParseError on unknown names. */
template <typename Resolve>
std::map<std::vector<int>, Rational> parse_poly(const PendingExpr& e, Resolve resolve) {
    std::map<std::vector<int>, Rational> out;
    Scanner sc{e.lineno, e.col, e.raw, 0};
    if (sc.eof()) sc.fail("empty expression");
    int sign = 1;
    if (sc.peek() == '-') {
        sign = -1;
        ++sc.i;
    } else if (sc.peek() == '+') {
        ++sc.i;
    }
    for (;;) {
        Rational coeff = rat(sign);
        std::vector<int> word;
        int term_col = sc.col();
        for (;;) {
            sc.skip_ws();
            int c0 = sc.col();
            char c = sc.peek();
            if (std::isdigit(static_cast<unsigned char>(c))) {
                coeff *= sc.rational_literal();
            } else if (ident_start(c)) {
                word.push_back(resolve(sc.ident(), c0));
            } else {
                sc.fail("expected a rational coefficient or a name");
            }
            if (sc.peek() == '*') {
                ++sc.i;
                continue;
            }
            break;
        }
        if (word.empty()) {
            if (!is_zero(coeff))
                throw ParseError(e.lineno, term_col, "a constant term needs at least one name");
        } else if (!is_zero(coeff)) {
            Rational& slot = out[word];
            slot += coeff;
            if (is_zero(slot)) out.erase(word);
        }
        if (sc.eof()) break;
        char op = sc.peek();
        if (op == '+')
            sign = 1;
        else if (op == '-')
            sign = -1;
        else
            sc.fail("expected '+' or '-'");
        ++sc.i;
    }
    return out;
}

struct Parser {
    InputDocument doc;
    bool kind_seen = false;
    bool name_seen = false;
    bool cofibrant_seen = false;
    std::vector<std::string> objects;
    std::map<std::string, int> object_index;

    /* semifree state */
    std::vector<Generator> gens;
    std::map<std::string, int> gen_index;
    std::vector<PendingExpr> gen_diff; /* one per generator, raw may be empty */

    /* finitedim state */
    std::vector<FdBasisElem> basis;
    std::map<std::string, int> basis_index;
    std::map<std::pair<int, int>, PendingExpr> mul_lines;
    std::map<int, PendingExpr> diff_lines;

    bool finitedim() const { return doc.kind == InputDocument::FiniteDim; }

    int need_object(Scanner& sc) {
        sc.skip_ws();
        int c0 = sc.col();
        std::string o = sc.ident();
        auto it = object_index.find(o);
        if (it == object_index.end()) throw ParseError(sc.lineno, c0, "unknown object: " + o);
        return it->second;
    }

    void parse_line(int lineno, const std::string& text) {
        Scanner sc{lineno, 1, text, 0};
        if (sc.eof() || sc.peek() == '#') return;
        int kw_col = sc.col();
        std::string head = sc.ident();
        if (sc.peek() == ':') {
            ++sc.i;
            declaration(sc, head, kw_col);
            return;
        }
        if (head == "name") {
            if (name_seen) sc.fail("duplicate name line");
            name_seen = true;
            doc.semifree.name = doc.finitedim.name = sc.ident();
        } else if (head == "kind") {
            if (kind_seen) sc.fail("duplicate kind line");
            if (!gens.empty() || !basis.empty())
                sc.fail("kind must come before declarations");
            kind_seen = true;
            sc.skip_ws();
            int c0 = sc.col();
            std::string k = sc.ident();
            if (k == "semifree")
                doc.kind = InputDocument::SemiFree;
            else if (k == "finitedim")
                doc.kind = InputDocument::FiniteDim;
            else
                throw ParseError(lineno, c0, "kind must be semifree or finitedim");
        } else if (head == "objects") {
            if (sc.eof()) sc.fail("objects line needs at least one object");
            while (!sc.eof()) {
                sc.skip_ws();
                int c0 = sc.col();
                std::string o = sc.ident();
                if (object_index.count(o))
                    throw ParseError(lineno, c0, "duplicate object: " + o);
                object_index[o] = static_cast<int>(objects.size());
                objects.push_back(o);
            }
        } else if (head == "cofibrant") {
            if (finitedim()) sc.fail("cofibrant applies to semifree presentations only");
            if (cofibrant_seen) sc.fail("duplicate cofibrant line");
            cofibrant_seen = true;
            bool value = true;
            if (!sc.eof()) {
                sc.skip_ws();
                int c0 = sc.col();
                std::string v = sc.ident();
                if (v == "yes")
                    value = true;
                else if (v == "no")
                    value = false;
                else
                    throw ParseError(lineno, c0, "cofibrant takes yes or no");
            }
            doc.semifree.cofibrant_asserted = value;
        } else if (head == "basis") {
            if (!finitedim()) sc.fail("basis lines need kind finitedim");
            sc.skip_ws();
            int c0 = sc.col();
            std::string name = sc.ident();
            sc.expect(':', "':'");
            basis_decl(sc, name, c0);
        } else if (head == "mul") {
            if (!finitedim()) sc.fail("mul lines need kind finitedim");
            sc.skip_ws();
            int c0 = sc.col();
            std::string a = sc.ident();
            sc.expect('*', "'*'");
            sc.skip_ws();
            int c1 = sc.col();
            std::string b = sc.ident();
            sc.expect('=', "'='");
            int ecol = sc.col();
            mul_key(lineno, c0, c1, a, b, PendingExpr{lineno, ecol, sc.rest()});
        } else if (head == "d") {
            if (!finitedim()) sc.fail("d lines need kind finitedim");
            sc.skip_ws();
            int c0 = sc.col();
            std::string a = sc.ident();
            sc.expect('=', "'='");
            int ecol = sc.col();
            diff_key(lineno, c0, a, PendingExpr{lineno, ecol, sc.rest()});
        } else {
            throw ParseError(lineno, kw_col, "unrecognized line: " + head);
        }
        if (!sc.eof() && sc.peek() != '#') sc.fail("trailing text");
    }

    void declaration(Scanner& sc, const std::string& name, int name_col) {
        if (finitedim())
            throw ParseError(sc.lineno, name_col,
                             "finitedim presentations declare elements with basis lines");
        if (gen_index.count(name))
            throw ParseError(sc.lineno, name_col, "duplicate generator: " + name);
        Generator g;
        g.name = name;
        g.src = need_object(sc);
        sc.expect_arrow();
        g.tgt = need_object(sc);
        bool deg_seen = false, wt_seen = false;
        PendingExpr diff;
        while (!sc.eof() && sc.peek() != '#') {
            sc.skip_ws();
            int c0 = sc.col();
            std::string key = sc.ident();
            sc.expect('=', "'=' after " + key);
            if (key == "deg") {
                deg_seen = true;
                g.deg = static_cast<int>(sc.integer());
            } else if (key == "wt") {
                wt_seen = true;
                g.wt = static_cast<int>(sc.integer());
            } else if (key == "d") {
                diff.lineno = sc.lineno;
                diff.col = sc.col();
                diff.raw = sc.rest();
                break;
            } else {
                throw ParseError(sc.lineno, c0, "unknown field: " + key);
            }
        }
        if (!deg_seen) sc.fail("generator needs deg=");
        if (!wt_seen) sc.fail("generator needs wt=");
        gen_index[name] = static_cast<int>(gens.size());
        gens.push_back(g);
        gen_diff.push_back(diff);
    }

    void basis_decl(Scanner& sc, const std::string& name, int name_col) {
        if (basis_index.count(name))
            throw ParseError(sc.lineno, name_col, "duplicate basis element: " + name);
        FdBasisElem e;
        e.name = name;
        e.src = need_object(sc);
        sc.expect_arrow();
        e.tgt = need_object(sc);
        bool deg_seen = false, wt_seen = false;
        while (!sc.eof() && sc.peek() != '#') {
            sc.skip_ws();
            int c0 = sc.col();
            std::string key = sc.ident();
            if (key == "identity") {
                e.identity = true;
                continue;
            }
            sc.expect('=', "'=' after " + key);
            if (key == "deg") {
                deg_seen = true;
                e.deg = static_cast<int>(sc.integer());
            } else if (key == "wt") {
                wt_seen = true;
                e.wt = static_cast<int>(sc.integer());
            } else {
                throw ParseError(sc.lineno, c0, "unknown field: " + key);
            }
        }
        if (!deg_seen) sc.fail("basis element needs deg=");
        if (!wt_seen) sc.fail("basis element needs wt=");
        basis_index[name] = static_cast<int>(basis.size());
        basis.push_back(e);
    }

    int need_basis(int lineno, int col, const std::string& name) const {
        auto it = basis_index.find(name);
        if (it == basis_index.end())
            throw ParseError(lineno, col, "unknown basis element: " + name);
        return it->second;
    }

    void mul_key(int lineno, int ca, int cb, const std::string& a, const std::string& b,
                 PendingExpr e) {
        int ia = need_basis(lineno, ca, a);
        int ib = need_basis(lineno, cb, b);
        if (basis[ia].identity || basis[ib].identity)
            throw ParseError(lineno, basis[ia].identity ? ca : cb,
                             "products with an identity are implied");
        if (mul_lines.count({ia, ib}))
            throw ParseError(lineno, ca, "duplicate product for " + a + "*" + b);
        mul_lines[{ia, ib}] = std::move(e);
    }

    void diff_key(int lineno, int col, const std::string& a, PendingExpr e) {
        int ia = need_basis(lineno, col, a);
        if (basis[ia].identity)
            throw ParseError(lineno, col, "the identity differential is zero already");
        if (diff_lines.count(ia))
            throw ParseError(lineno, col, "duplicate differential for " + a);
        diff_lines[ia] = std::move(e);
    }

    InputDocument finish() {
        if (doc.kind == InputDocument::SemiFree) {
            SemiFreePresentation& p = doc.semifree;
            p.objects = objects;
            p.gens = gens;
            p.diff.assign(gens.size(), WordExpr{});
            for (size_t g = 0; g < gens.size(); ++g) {
                if (gen_diff[g].raw.empty()) continue;
                const PendingExpr& e = gen_diff[g];
                auto local = [&](const std::string& n, int col0) {
                    auto it = gen_index.find(n);
                    if (it == gen_index.end())
                        throw ParseError(e.lineno, col0, "unknown generator: " + n);
                    return it->second;
                };
                p.diff[g] = parse_poly(e, local);
            }
        } else {
            FiniteDimPresentation& p = doc.finitedim;
            p.objects = objects;
            p.basis = basis;
            p.diff.assign(basis.size(), std::map<int, Rational>{});
            auto linear = [&](const PendingExpr& e) {
                auto local = [&](const std::string& n, int col0) {
                    return need_basis(e.lineno, col0, n);
                };
                std::map<std::vector<int>, Rational> poly = parse_poly(e, local);
                std::map<int, Rational> out;
                for (const auto& [word, c] : poly) {
                    if (word.size() != 1)
                        throw ParseError(e.lineno, e.col,
                                         "expected a linear combination of basis elements");
                    out[word[0]] = c;
                }
                return out;
            };
            for (const auto& [key, e] : mul_lines) {
                std::map<int, Rational> v = linear(e);
                if (!v.empty()) p.mult[key] = std::move(v);
            }
            for (const auto& [key, e] : diff_lines) p.diff[key] = linear(e);
        }
        return std::move(doc);
    }
};

template <typename Name>
std::string poly_to_string(const std::map<std::vector<int>, Rational>& poly, Name name_of) {
    std::string out;
    for (const auto& [word, c] : poly) {
        Rational a = c;
        bool neg = sgn(a) < 0;
        if (neg) a = -a;
        if (out.empty()) {
            if (neg) out += "-";
        } else {
            out += neg ? " - " : " + ";
        }
        if (a != rat(1)) out += to_string(a) + "*";
        for (size_t i = 0; i < word.size(); ++i) {
            if (i) out += "*";
            out += name_of(word[i]);
        }
    }
    return out.empty() ? "0" : out;
}

} // namespace

InputDocument parse_input(const std::string& text) {
    Parser parser;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        parser.parse_line(lineno, line);
    }
    return parser.finish();
}

InputDocument load_input(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    InputDocument doc = parse_input(buf.str());
    if (doc.display_name().empty()) {
        std::string stem = std::filesystem::path(path).stem().string();
        doc.semifree.name = doc.finitedim.name = stem;
    }
    return doc;
}

std::string serialize(const InputDocument& doc) {
    std::string out;
    const std::string& nm = doc.display_name();
    if (!nm.empty()) out += "name " + nm + "\n";
    if (doc.kind == InputDocument::SemiFree) {
        const SemiFreePresentation& p = doc.semifree;
        out += "kind semifree\n";
        if (!p.objects.empty()) {
            out += "objects";
            for (const std::string& o : p.objects) out += " " + o;
            out += "\n";
        }
        if (p.cofibrant_asserted) out += "cofibrant yes\n";
        for (size_t g = 0; g < p.gens.size(); ++g) {
            const Generator& gen = p.gens[g];
            out += gen.name + ": " + p.objects[gen.src] + "->" + p.objects[gen.tgt] +
                   " deg=" + std::to_string(gen.deg) + " wt=" + std::to_string(gen.wt);
            if (!p.diff[g].empty())
                out += " d=" +
                       poly_to_string(p.diff[g], [&](int i) { return p.gens[i].name; });
            out += "\n";
        }
    } else {
        const FiniteDimPresentation& p = doc.finitedim;
        out += "kind finitedim\n";
        if (!p.objects.empty()) {
            out += "objects";
            for (const std::string& o : p.objects) out += " " + o;
            out += "\n";
        }
        for (const FdBasisElem& e : p.basis) {
            out += "basis " + e.name + ": " + p.objects[e.src] + "->" + p.objects[e.tgt] +
                   " deg=" + std::to_string(e.deg) + " wt=" + std::to_string(e.wt);
            if (e.identity) out += " identity";
            out += "\n";
        }
        auto linear_str = [&](const std::map<int, Rational>& v) {
            std::map<std::vector<int>, Rational> poly;
            for (const auto& [i, c] : v) poly[{i}] = c;
            return poly_to_string(poly, [&](int i) { return p.basis[i].name; });
        };
        for (const auto& [key, v] : p.mult)
            if (!v.empty())
                out += "mul " + p.basis[key.first].name + "*" + p.basis[key.second].name +
                       " = " + linear_str(v) + "\n";
        for (size_t i = 0; i < p.diff.size(); ++i)
            if (!p.diff[i].empty())
                out += "d " + p.basis[i].name + " = " + linear_str(p.diff[i]) + "\n";
    }
    return out;
}

std::shared_ptr<Algebra> make_algebra(const InputDocument& doc) {
    if (doc.kind == InputDocument::SemiFree)
        return std::make_shared<SemiFreeAlgebra>(doc.semifree);
    return std::make_shared<FiniteDimAlgebra>(doc.finitedim);
}

} // namespace cychom
