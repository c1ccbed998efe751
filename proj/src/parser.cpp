#include "plstar/parser.hpp"

#include <cctype>
#include <map>
#include <vector>

#include "plstar/builtins.hpp"
#include "plstar/subst.hpp"

namespace plstar {

namespace {

enum class Tok {
    Ident,
    Name,  // operator names usable as callees: 0 1 = - * < + +1
    KwProc,
    KwVar,
    KwCall,
    KwIf,
    KwThen,
    KwElse,
    KwFi,
    KwEnd,
    KwFix,
    KwAs,
    KwIn,
    KwFrag,
    Semi,
    Comma,
    LParen,
    RParen,
    Eof,
};

struct Token {
    Tok kind;
    std::string text;
    SourceSpan span;
};

const std::map<std::string, Tok>& keywords() {
    static const std::map<std::string, Tok> kws = {
        {"proc", Tok::KwProc}, {"var", Tok::KwVar},   {"call", Tok::KwCall},
        {"if", Tok::KwIf},     {"then", Tok::KwThen}, {"else", Tok::KwElse},
        {"fi", Tok::KwFi},     {"end", Tok::KwEnd},   {"fix", Tok::KwFix},
        {"as", Tok::KwAs},     {"in", Tok::KwIn},     {"frag", Tok::KwFrag},
    };
    return kws;
}

struct Lexer {
    const std::string& text;
    const std::string& filename;
    std::size_t pos = 0;
    int line = 1;
    int col = 1;

    SourceSpan here() const { return SourceSpan{pos, pos, line, col}; }

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

    std::vector<Token> run() {
        std::vector<Token> out;
        while (true) {
            while (pos < text.size()) {
                char c = text[pos];
                if (c == '#') {
                    while (pos < text.size() && text[pos] != '\n') advance();
                } else if (std::isspace(static_cast<unsigned char>(c))) {
                    advance();
                } else {
                    break;
                }
            }
            SourceSpan span = here();
            if (pos >= text.size()) {
                out.push_back({Tok::Eof, "", span});
                return out;
            }
            char c = text[pos];
            if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
                std::string word;
                while (pos < text.size() &&
                       (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_')) {
                    word += text[pos];
                    advance();
                }
                span.end = pos;
                auto it = keywords().find(word);
                out.push_back({it == keywords().end() ? Tok::Ident : it->second, word, span});
                continue;
            }
            if (std::isdigit(static_cast<unsigned char>(c))) {
                std::string digits;
                while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
                    digits += text[pos];
                    advance();
                }
                span.end = pos;
                out.push_back({Tok::Name, digits, span});
                continue;
            }
            switch (c) {
                case ';': advance(); span.end = pos; out.push_back({Tok::Semi, ";", span}); continue;
                case ',': advance(); span.end = pos; out.push_back({Tok::Comma, ",", span}); continue;
                case '(': advance(); span.end = pos; out.push_back({Tok::LParen, "(", span}); continue;
                case ')': advance(); span.end = pos; out.push_back({Tok::RParen, ")", span}); continue;
                case '=':
                case '-':
                case '*':
                case '<': {
                    std::string name(1, c);
                    advance();
                    span.end = pos;
                    out.push_back({Tok::Name, name, span});
                    continue;
                }
                case '+': {
                    advance();
                    std::string name = "+";
                    if (pos < text.size() && text[pos] == '1') {
                        advance();
                        name = "+1";
                    }
                    span.end = pos;
                    out.push_back({Tok::Name, name, span});
                    continue;
                }
                default:
                    throw PlError(Err::SyntaxError,
                                  filename + ": unexpected character '" + std::string(1, c) + "'",
                                  span);
            }
        }
    }
};

struct Parser {
    std::vector<Token> tokens;
    std::size_t index = 0;
    const SigEnv& sig_env;
    const std::string& filename;
    std::vector<std::map<std::string, VarId>> scopes;

    const Token& peek(std::size_t ahead = 0) const {
        std::size_t i = index + ahead;
        return i < tokens.size() ? tokens[i] : tokens.back();
    }
    const Token& next() {
        const Token& t = peek();
        if (t.kind != Tok::Eof) ++index;
        return t;
    }

    [[noreturn]] void fail(const std::string& message, const SourceSpan& span) {
        throw PlError(Err::SyntaxError, filename + ": " + message, span);
    }

    Token expect(Tok kind, const std::string& what) {
        if (peek().kind != kind) fail("expected " + what, peek().span);
        return next();
    }

    void push_scope() { scopes.emplace_back(); }
    void pop_scope() { scopes.pop_back(); }
    void bind(const VarId& v) { scopes.back()[v.name] = v; }

    const VarId* lookup_scope(const std::string& name) const {
        for (auto it = scopes.rbegin(); it != scopes.rend(); ++it) {
            auto found = it->find(name);
            if (found != it->end()) return &found->second;
        }
        return nullptr;
    }

    // Scope first, sidecar declarations second.
    const VarId* lookup(const std::string& name) const {
        if (const VarId* v = lookup_scope(name)) return v;
        return sig_env.find(name);
    }

    VarId resolve_data(const Token& tok) {
        const VarId* v = lookup(tok.text);
        if (!v) {
            throw PlError(Err::UndeclaredIdentifier,
                          filename + ": undeclared identifier " + tok.text, tok.span);
        }
        if (v->is_proc) {
            throw PlError(Err::KindError, filename + ": " + tok.text + " is a procedure variable",
                          tok.span);
        }
        return *v;
    }

    bool stops_sequence(Tok kind) const {
        return kind == Tok::Eof || kind == Tok::KwEnd || kind == Tok::KwElse ||
               kind == Tok::KwFi;
    }

    // A possibly empty statement sequence, right-associated.
    TermPtr parse_stmtseq() {
        if (stops_sequence(peek().kind)) return nullptr;
        TermPtr stmt = parse_stmt();
        if (!stmt) return nullptr;  // var/locals absorb the tail themselves
        if (peek().kind == Tok::Semi) {
            next();
            if (stops_sequence(peek().kind)) return stmt;  // trailing separator
            TermPtr rest = parse_stmtseq();
            if (!rest) return stmt;
            return mk_seq(stmt, rest, stmt->span);
        }
        return stmt;
    }

    // Statements other than var return the parsed node; var builds the
    // nested locals with the rest of the sequence and returns them directly.
    TermPtr parse_stmt() {
        const Token& t = peek();
        switch (t.kind) {
            case Tok::KwCall: return parse_call();
            case Tok::KwIf: return parse_if();
            case Tok::KwProc: return parse_procdef();
            case Tok::KwVar: return parse_var();
            case Tok::KwFix: return parse_fix();
            case Tok::KwFrag: return parse_frag();
            default:
                fail("expected a statement", t.span);
        }
    }

    TermPtr parse_call() {
        Token kw = expect(Tok::KwCall, "'call'");
        Token callee = next();
        if (callee.kind != Tok::Ident && callee.kind != Tok::Name) {
            fail("expected a callee name", callee.span);
        }
        expect(Tok::LParen, "'('");
        std::vector<Token> arg_tokens;
        if (peek().kind != Tok::RParen) {
            while (true) {
                Token arg = next();
                if (arg.kind != Tok::Ident && arg.kind != Tok::Name) {
                    fail("expected an argument name", arg.span);
                }
                arg_tokens.push_back(arg);
                if (peek().kind == Tok::Comma) {
                    next();
                    continue;
                }
                break;
            }
        }
        expect(Tok::RParen, "')'");

        const VarId* bound = lookup(callee.text);
        if (!bound) {
            const Builtin* builtin = BuiltinRegistry::instance().find(callee.text);
            if (!builtin) {
                throw PlError(Err::UndeclaredIdentifier,
                              filename + ": undeclared identifier " + callee.text, callee.span);
            }
            std::vector<VarId> actuals;
            for (std::size_t i = 0; i < arg_tokens.size(); ++i) {
                actuals.push_back(resolve_actual(arg_tokens[i], builtin->sig, i));
            }
            return builtin_prim(callee.text, std::move(actuals), kw.span);
        }
        if (!bound->is_proc) {
            throw PlError(Err::KindError, filename + ": call of data variable " + callee.text,
                          callee.span);
        }
        std::vector<VarId> actuals;
        for (std::size_t i = 0; i < arg_tokens.size(); ++i) {
            actuals.push_back(resolve_actual(arg_tokens[i], bound->sig, i));
        }
        if (bound->sig->arity() != actuals.size()) {
            throw PlError(Err::VarArityMismatch,
                          filename + ": call of " + callee.text + " with " +
                              std::to_string(actuals.size()) + " arguments, expected " +
                              std::to_string(bound->sig->arity()),
                          callee.span);
        }
        return mk_proccall(*bound, std::move(actuals), nullptr, kw.span);
    }

    VarId resolve_actual(const Token& tok, const TypeSigPtr& sig, std::size_t position) {
        const VarId* v = lookup(tok.text);
        if (!v) {
            throw PlError(Err::UndeclaredIdentifier,
                          filename + ": undeclared identifier " + tok.text, tok.span);
        }
        if (sig && position < sig->arity()) {
            const ArgSig& a = sig->args[position];
            if (a.is_proc != v->is_proc) {
                throw PlError(Err::KindError,
                              filename + ": argument " + tok.text + " has the wrong kind",
                              tok.span);
            }
        }
        return *v;
    }

    TermPtr parse_if() {
        Token kw = expect(Tok::KwIf, "'if'");
        Token scrut = next();
        if (scrut.kind != Tok::Ident) fail("expected a condition variable", scrut.span);
        VarId cond = resolve_data(scrut);
        if (cond.sort != Sort::Bool) {
            throw PlError(Err::KindError,
                          filename + ": condition " + scrut.text + " is not a bool variable",
                          scrut.span);
        }
        expect(Tok::KwThen, "'then'");
        TermPtr then_branch = parse_stmtseq();
        TermPtr else_branch = nullptr;
        if (peek().kind == Tok::KwElse) {
            next();
            else_branch = parse_stmtseq();
        }
        Token fi = expect(Tok::KwFi, "'fi'");
        if (!then_branch && !else_branch) {
            fail("conditional with both branches empty", fi.span);
        }
        return mk_cond(cond, then_branch, else_branch, kw.span);
    }

    TermPtr parse_var() {
        Token kw = expect(Tok::KwVar, "'var'");
        std::vector<VarId> locals;
        while (true) {
            Token name = expect(Tok::Ident, "a variable name");
            const VarId* decl = sig_env.find(name.text);
            if (!decl) {
                throw PlError(Err::UndeclaredIdentifier,
                              filename + ": local " + name.text + " has no declared sort",
                              name.span);
            }
            if (decl->is_proc) {
                throw PlError(Err::KindError,
                              filename + ": local " + name.text + " must be a data variable",
                              name.span);
            }
            locals.push_back(*decl);
            if (peek().kind == Tok::Comma) {
                next();
                continue;
            }
            break;
        }
        expect(Tok::Semi, "';'");
        push_scope();
        for (const auto& v : locals) bind(v);
        TermPtr body = parse_stmtseq();
        pop_scope();
        if (!body) fail("declaration scope is empty", kw.span);
        for (auto it = locals.rbegin(); it != locals.rend(); ++it) {
            body = mk_local(*it, body, kw.span);
        }
        return body;
    }

    TermPtr parse_procdef() {
        Token kw = expect(Tok::KwProc, "'proc'");
        Token name = next();
        if (name.kind != Tok::Ident && name.kind != Tok::Name) {
            fail("expected a procedure name", name.span);
        }
        const VarId* decl = lookup(name.text);
        if (!decl) {
            throw PlError(Err::UndeclaredIdentifier,
                          filename + ": procedure " + name.text + " has no declared signature",
                          name.span);
        }
        if (!decl->is_proc) {
            throw PlError(Err::KindError, filename + ": " + name.text + " is a data variable",
                          name.span);
        }
        expect(Tok::LParen, "'('");
        std::vector<Token> formal_tokens;
        if (peek().kind != Tok::RParen) {
            while (true) {
                formal_tokens.push_back(expect(Tok::Ident, "a formal name"));
                if (peek().kind == Tok::Comma) {
                    next();
                    continue;
                }
                break;
            }
        }
        expect(Tok::RParen, "')'");
        expect(Tok::Semi, "';'");
        if (decl->sig->arity() != formal_tokens.size()) {
            throw PlError(Err::VarArityMismatch,
                          filename + ": procedure " + name.text + " declares " +
                              std::to_string(decl->sig->arity()) + " arguments",
                          name.span);
        }
        std::vector<VarId> formals;
        for (std::size_t i = 0; i < formal_tokens.size(); ++i) {
            const ArgSig& a = decl->sig->args[i];
            VarId formal = a.is_proc ? proc_var(formal_tokens[i].text, a.proc_sig)
                                     : data_var(formal_tokens[i].text, a.sort);
            formals.push_back(std::move(formal));
        }
        bind(*decl);  // visible to the rest of the sequence and to the body
        push_scope();
        for (const auto& f : formals) bind(f);
        TermPtr body = parse_stmtseq();
        pop_scope();
        if (!body) fail("procedure body is empty", kw.span);
        expect(Tok::KwEnd, "'end'");
        Token closer = next();
        if ((closer.kind != Tok::Ident && closer.kind != Tok::Name) ||
            closer.text != name.text) {
            fail("expected 'end " + name.text + "'", closer.span);
        }
        return mk_procdef(*decl, std::move(formals), body, kw.span);
    }

    TermPtr parse_fix() {
        Token kw = expect(Tok::KwFix, "'fix'");
        Token used_tok = expect(Tok::Ident, "a procedure name");
        expect(Tok::KwAs, "'as'");
        Token defined_tok = expect(Tok::Ident, "a procedure name");
        const VarId* defined = lookup(defined_tok.text);
        if (!defined || !defined->is_proc) {
            throw PlError(Err::UndeclaredIdentifier,
                          filename + ": fix target " + defined_tok.text +
                              " has no declared procedure signature",
                          defined_tok.span);
        }
        VarId used = proc_var(used_tok.text, defined->sig);
        expect(Tok::KwIn, "'in'");
        push_scope();
        bind(used);
        TermPtr body = parse_stmtseq();
        pop_scope();
        if (!body) fail("fix body is empty", kw.span);
        expect(Tok::KwEnd, "'end'");
        return mk_fix(used, *defined, body, kw.span);
    }

    TermPtr parse_frag() {
        Token kw = expect(Tok::KwFrag, "'frag'");
        Token name = expect(Tok::Ident, "a fragment name");
        expect(Tok::LParen, "'('");
        std::vector<VarId> vars;
        if (peek().kind != Tok::RParen) {
            while (true) {
                Token arg = expect(Tok::Ident, "a variable name");
                const VarId* v = lookup(arg.text);
                if (!v) {
                    throw PlError(Err::UndeclaredIdentifier,
                                  filename + ": undeclared identifier " + arg.text, arg.span);
                }
                vars.push_back(*v);
                if (peek().kind == Tok::Comma) {
                    next();
                    continue;
                }
                break;
            }
        }
        expect(Tok::RParen, "')'");
        return mk_fragment(name.text, std::move(vars), kw.span);
    }
};

}  // namespace

TermPtr parse_program(const std::string& text, const SigEnv& sig_env,
                      const std::string& filename) {
    Lexer lexer{text, filename};
    Parser parser{lexer.run(), 0, sig_env, filename, {}};
    parser.push_scope();
    TermPtr term = parser.parse_stmtseq();
    if (!term) parser.fail("empty program", parser.peek().span);
    if (parser.peek().kind != Tok::Eof) {
        parser.fail("unexpected content after program", parser.peek().span);
    }
    return term;
}

namespace {

struct Printer {
    const PrintOptions& options;
    std::string out;

    void indent(int depth) { out.append(static_cast<std::size_t>(depth) * 2, ' '); }

    static std::string var_list(const std::vector<VarId>& vars) {
        std::string s;
        for (std::size_t i = 0; i < vars.size(); ++i) {
            if (i) s += ", ";
            s += vars[i].name;
        }
        return s;
    }

    // Statement spine: Seq chains flattened, Local runs collapsed, ProcCall
    // prefixes spliced before their call.
    void stmts(const TermPtr& term, int depth) {
        std::vector<TermPtr> spine;
        flatten(term, spine);
        for (std::size_t i = 0; i < spine.size(); ++i) {
            stmt(spine[i], depth, i + 1 == spine.size());
        }
    }

    void flatten(const TermPtr& term, std::vector<TermPtr>& spine) {
        if (!term) return;
        if (const auto* s = term->as<Seq>()) {
            flatten(s->first, spine);
            flatten(s->second, spine);
            return;
        }
        if (const auto* k = term->as<ProcCall>()) {
            if (k->prefix) {
                flatten(k->prefix, spine);
                spine.push_back(mk_proccall(k->callee, k->actuals, nullptr, term->span));
                return;
            }
        }
        if (options.mu_as_subst) {
            if (const auto* x = term->as<Fix>()) {
                Substitution theta = Substitution::of({{x->used, x->defined}});
                flatten(apply_subst(x->body, theta), spine);
                return;
            }
        }
        spine.push_back(term);
    }

    void stmt(const TermPtr& term, int depth, bool last) {
        const char* sep = last ? "\n" : ";\n";
        if (term->is<Local>()) {
            // collapse a run of locals into one declaration line
            std::vector<VarId> names;
            TermPtr body = term;
            while (const auto* inner = body->as<Local>()) {
                names.push_back(inner->var);
                body = inner->body;
            }
            indent(depth);
            out += "var " + var_list(names) + ";\n";
            stmts(body, depth);
            if (!last) {
                // a local scope extends to the end of the sequence; anything
                // after it would change scoping on reparse
                throw PlError(Err::BadTerm,
                              "cannot print a local declaration followed by statements");
            }
            return;
        }
        if (const auto* p = term->as<Prim>()) {
            indent(depth);
            out += "call " + p->name + "(" + var_list(p->vars) + ")" + sep;
            return;
        }
        if (const auto* k = term->as<ProcCall>()) {
            indent(depth);
            out += "call " + k->callee.name + "(" + var_list(k->actuals) + ")" + sep;
            return;
        }
        if (const auto* f = term->as<Fragment>()) {
            indent(depth);
            out += "frag " + f->name + "(" + var_list(f->vars) + ")" + sep;
            return;
        }
        if (const auto* c = term->as<Cond>()) {
            indent(depth);
            out += "if " + c->scrutinee.name + " then\n";
            if (c->then_branch) stmts(c->then_branch, depth + 1);
            if (c->else_branch) {
                indent(depth);
                out += "else\n";
                stmts(c->else_branch, depth + 1);
            }
            indent(depth);
            out += std::string("fi") + sep;
            return;
        }
        if (const auto* d = term->as<ProcDef>()) {
            indent(depth);
            out += "proc " + d->name.name + "(" + var_list(d->formals) + ");\n";
            stmts(d->body, depth + 1);
            indent(depth);
            out += "end " + d->name.name + sep;
            return;
        }
        if (const auto* x = term->as<Fix>()) {
            indent(depth);
            out += "fix " + x->used.name + " as " + x->defined.name + " in\n";
            stmts(x->body, depth + 1);
            indent(depth);
            out += std::string("end") + sep;
            return;
        }
        throw PlError(Err::BadTerm, "cannot print term");
    }
};

}  // namespace

std::string print_program(const TermPtr& term, const PrintOptions& options) {
    Printer printer{options, {}};
    printer.stmts(term, 0);
    return printer.out;
}

}  // namespace plstar
