#include "plstar/sexpr.hpp"

#include <cctype>

#include "plstar/builtins.hpp"

namespace plstar {

namespace {

bool needs_quoting(const std::string& s) {
    if (s.empty()) return true;
    for (char c : s) {
        if (std::isspace(static_cast<unsigned char>(c)) || c == '(' || c == ')' || c == '"') {
            return true;
        }
    }
    return false;
}

std::string render_atom(const std::string& s) {
    if (!needs_quoting(s)) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    out += '"';
    return out;
}

}  // namespace

std::string Sexpr::to_string() const {
    if (is_atom()) return render_atom(atom());
    std::string out = "(";
    const auto& xs = items();
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i) out += " ";
        out += xs[i].to_string();
    }
    out += ")";
    return out;
}

std::string Sexpr::pretty(int indent) const {
    std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
    if (is_atom() || to_string().size() + pad.size() <= 100) return pad + to_string();
    const auto& xs = items();
    std::string out = pad + "(";
    bool head_done = false;
    if (!xs.empty() && xs[0].is_atom()) {
        out += xs[0].to_string();
        head_done = true;
    }
    for (std::size_t i = head_done ? 1 : 0; i < xs.size(); ++i) {
        out += "\n" + xs[i].pretty(indent + 1);
    }
    out += ")";
    return out;
}

namespace {

struct SexprReader {
    const std::string& text;
    const std::string& what;
    std::size_t pos = 0;
    int line = 1;
    int col = 1;

    SourceSpan here() const { return SourceSpan{pos, pos, line, col}; }

    [[noreturn]] void fail(const std::string& message) {
        throw PlError(Err::SyntaxError, what + ": " + message, here());
    }

    void advance() {
        if (pos < text.size()) {
            if (text[pos] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
            ++pos;
        }
    }

    void skip_ws() {
        while (pos < text.size()) {
            char c = text[pos];
            if (c == ';') {  // comment to end of line
                while (pos < text.size() && text[pos] != '\n') advance();
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                advance();
            } else {
                break;
            }
        }
    }

    Sexpr read() {
        skip_ws();
        if (pos >= text.size()) fail("unexpected end of input");
        SourceSpan start = here();
        char c = text[pos];
        if (c == '(') {
            advance();
            std::vector<Sexpr> items;
            while (true) {
                skip_ws();
                if (pos >= text.size()) fail("unclosed list");
                if (text[pos] == ')') {
                    advance();
                    break;
                }
                items.push_back(read());
            }
            Sexpr sx = Sexpr::list_of(std::move(items));
            sx.span = start;
            sx.span.end = pos;
            return sx;
        }
        if (c == ')') fail("unexpected ')'");
        std::string atom;
        if (c == '"') {
            advance();
            while (pos < text.size() && text[pos] != '"') {
                if (text[pos] == '\\' && pos + 1 < text.size()) advance();
                atom += text[pos];
                advance();
            }
            if (pos >= text.size()) fail("unterminated string");
            advance();
        } else {
            while (pos < text.size()) {
                char d = text[pos];
                if (std::isspace(static_cast<unsigned char>(d)) || d == '(' || d == ')' ||
                    d == '"' || d == ';') {
                    break;
                }
                atom += d;
                advance();
            }
        }
        Sexpr sx = Sexpr::atom_of(std::move(atom));
        sx.span = start;
        sx.span.end = pos;
        return sx;
    }
};

}  // namespace

Sexpr parse_sexpr(const std::string& text, const std::string& what) {
    SexprReader reader{text, what};
    Sexpr sx = reader.read();
    reader.skip_ws();
    if (reader.pos != text.size()) reader.fail("trailing content after s-expression");
    return sx;
}

std::vector<Sexpr> parse_sexprs(const std::string& text, const std::string& what) {
    SexprReader reader{text, what};
    std::vector<Sexpr> out;
    while (true) {
        reader.skip_ws();
        if (reader.pos >= text.size()) break;
        out.push_back(reader.read());
    }
    return out;
}

namespace {

Sexpr vars_to_sexpr(const std::vector<VarId>& vars) {
    std::vector<Sexpr> items;
    for (const auto& v : vars) items.push_back(Sexpr::atom_of(v.name));
    return Sexpr::list_of(std::move(items));
}

Sexpr node_to_sexpr(const TermPtr& term) {
    if (!term) return Sexpr::list_of({});
    if (const auto* f = term->as<Fragment>()) {
        return Sexpr::list_of({Sexpr::atom_of("frag"), Sexpr::atom_of(f->name),
                               vars_to_sexpr(f->vars)});
    }
    if (const auto* p = term->as<Prim>()) {
        return Sexpr::list_of({Sexpr::atom_of("prim"), Sexpr::atom_of(p->name),
                               vars_to_sexpr(p->vars)});
    }
    if (const auto* s = term->as<Seq>()) {
        return Sexpr::list_of(
            {Sexpr::atom_of("seq"), term_to_sexpr(s->first), term_to_sexpr(s->second)});
    }
    if (const auto* c = term->as<Cond>()) {
        return Sexpr::list_of({Sexpr::atom_of("cond"), Sexpr::atom_of(c->scrutinee.name),
                               term_to_sexpr(c->then_branch), term_to_sexpr(c->else_branch)});
    }
    if (const auto* l = term->as<Local>()) {
        return Sexpr::list_of(
            {Sexpr::atom_of("local"), Sexpr::atom_of(l->var.name), term_to_sexpr(l->body)});
    }
    if (const auto* d = term->as<ProcDef>()) {
        return Sexpr::list_of({Sexpr::atom_of("procdef"), Sexpr::atom_of(d->name.name),
                               vars_to_sexpr(d->formals), term_to_sexpr(d->body)});
    }
    if (const auto* k = term->as<ProcCall>()) {
        std::vector<Sexpr> items = {Sexpr::atom_of("call"), Sexpr::atom_of(k->callee.name),
                                    vars_to_sexpr(k->actuals)};
        if (k->prefix) items.push_back(term_to_sexpr(k->prefix));
        return Sexpr::list_of(std::move(items));
    }
    if (const auto* x = term->as<Fix>()) {
        return Sexpr::list_of({Sexpr::atom_of("fix"), Sexpr::atom_of(x->used.name),
                               Sexpr::atom_of(x->defined.name), term_to_sexpr(x->body)});
    }
    return Sexpr::list_of({});
}

}  // namespace

Sexpr term_to_sexpr(const TermPtr& term) {
    Sexpr inner = node_to_sexpr(term);
    if (term && !term->padded.empty()) {
        return Sexpr::list_of(
            {Sexpr::atom_of("padded"), vars_to_sexpr(term->padded), std::move(inner)});
    }
    return inner;
}

namespace {

[[noreturn]] void bad(const Sexpr& sx, const std::string& message) {
    throw PlError(Err::SyntaxError, "term s-expression: " + message, sx.span);
}

std::vector<VarId> vars_from(const Sexpr& sx, const VarResolver& resolve) {
    if (!sx.is_list()) bad(sx, "expected a variable list");
    std::vector<VarId> out;
    for (const auto& item : sx.items()) {
        if (!item.is_atom()) bad(item, "expected a variable name");
        out.push_back(resolve(item.atom(), item.span));
    }
    return out;
}

}  // namespace

TermPtr term_from_sexpr(const Sexpr& sx, const VarResolver& resolve) {
    if (!sx.is_list()) bad(sx, "expected a list");
    const auto& xs = sx.items();
    if (xs.empty()) return nullptr;  // the empty program
    if (!xs[0].is_atom()) bad(sx, "expected a head symbol");
    const std::string& head = xs[0].atom();
    auto arity = [&](std::size_t n) {
        if (xs.size() != n + 1) bad(sx, head + " expects " + std::to_string(n) + " arguments");
    };
    if (head == "padded") {
        arity(2);
        TermPtr inner = term_from_sexpr(xs[2], resolve);
        if (!inner) bad(sx, "padded requires a term");
        return with_padding(inner, vars_from(xs[1], resolve));
    }
    if (head == "frag") {
        arity(2);
        if (!xs[1].is_atom()) bad(xs[1], "expected a fragment name");
        return mk_fragment(xs[1].atom(), vars_from(xs[2], resolve), sx.span);
    }
    if (head == "prim") {
        arity(2);
        if (!xs[1].is_atom()) bad(xs[1], "expected a primitive name");
        return builtin_prim(xs[1].atom(), vars_from(xs[2], resolve), sx.span);
    }
    if (head == "seq") {
        arity(2);
        TermPtr a = term_from_sexpr(xs[1], resolve);
        TermPtr b = term_from_sexpr(xs[2], resolve);
        if (!a || !b) bad(sx, "seq requires two non-empty terms");
        return mk_seq(a, b, sx.span);
    }
    if (head == "cond") {
        arity(3);
        if (!xs[1].is_atom()) bad(xs[1], "expected a scrutinee name");
        return mk_cond(resolve(xs[1].atom(), xs[1].span), term_from_sexpr(xs[2], resolve),
                       term_from_sexpr(xs[3], resolve), sx.span);
    }
    if (head == "local") {
        arity(2);
        if (!xs[1].is_atom()) bad(xs[1], "expected a variable name");
        TermPtr body = term_from_sexpr(xs[2], resolve);
        if (!body) bad(sx, "local requires a body");
        return mk_local(resolve(xs[1].atom(), xs[1].span), body, sx.span);
    }
    if (head == "procdef") {
        arity(3);
        if (!xs[1].is_atom()) bad(xs[1], "expected a procedure name");
        TermPtr body = term_from_sexpr(xs[3], resolve);
        if (!body) bad(sx, "procdef requires a body");
        return mk_procdef(resolve(xs[1].atom(), xs[1].span), vars_from(xs[2], resolve), body,
                          sx.span);
    }
    if (head == "call") {
        if (xs.size() != 3 && xs.size() != 4) bad(sx, "call expects 2 or 3 arguments");
        if (!xs[1].is_atom()) bad(xs[1], "expected a callee name");
        TermPtr prefix = xs.size() == 4 ? term_from_sexpr(xs[3], resolve) : nullptr;
        return mk_proccall(resolve(xs[1].atom(), xs[1].span), vars_from(xs[2], resolve), prefix,
                           sx.span);
    }
    if (head == "fix") {
        arity(3);
        if (!xs[1].is_atom() || !xs[2].is_atom()) bad(sx, "expected fix variable names");
        TermPtr body = term_from_sexpr(xs[3], resolve);
        if (!body) bad(sx, "fix requires a body");
        return mk_fix(resolve(xs[1].atom(), xs[1].span), resolve(xs[2].atom(), xs[2].span), body,
                      sx.span);
    }
    bad(sx, "unknown term form " + head);
}

}  // namespace plstar
