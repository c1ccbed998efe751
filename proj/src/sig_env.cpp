#include "plstar/sig_env.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace plstar {

namespace {

struct SpecParser {
    const std::string& text;
    std::size_t pos = 0;

    [[noreturn]] void fail(const std::string& message) {
        throw PlError(Err::SyntaxError, "signature spec '" + text + "': " + message);
    }

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }

    bool eat(char c) {
        skip_ws();
        if (pos < text.size() && text[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }

    std::string word() {
        skip_ws();
        std::size_t start = pos;
        while (pos < text.size()) {
            char c = text[pos];
            if (std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_') {
                ++pos;
            } else {
                break;
            }
        }
        if (start == pos) fail("expected a word");
        return text.substr(start, pos - start);
    }

    Sort sort() {
        std::string w = word();
        Sort s;
        if (!sort_from_name(w, s)) fail("unknown sort " + w);
        return s;
    }

    TypeSigPtr proc_sig() {
        if (!eat('(')) fail("expected '('");
        std::vector<ArgSig> args;
        skip_ws();
        if (!eat(')')) {
            while (true) {
                std::string io_word = word();
                ArgIo io;
                if (io_word == "in") {
                    io = ArgIo::In;
                } else if (io_word == "out") {
                    io = ArgIo::Out;
                } else if (io_word == "inout") {
                    io = ArgIo::InOut;
                } else {
                    fail("expected in/out/inout, got " + io_word);
                }
                skip_ws();
                if (pos + 4 <= text.size() && text.compare(pos, 4, "proc") == 0) {
                    pos += 4;
                    args.push_back(proc_arg(io, proc_sig()));
                } else {
                    args.push_back(data_arg(io, sort()));
                }
                if (eat(')')) break;
                if (!eat(',')) fail("expected ',' or ')'");
            }
        }
        return TypeSig::make(std::move(args));
    }
};

}  // namespace

VarId SigEnv::parse_decl(const std::string& name, const std::string& spec) {
    SpecParser p{spec};
    p.skip_ws();
    if (spec.compare(p.pos, 4, "data") == 0 &&
        (p.pos + 4 >= spec.size() || std::isspace(static_cast<unsigned char>(spec[p.pos + 4])))) {
        p.pos += 4;
        Sort s = p.sort();
        p.skip_ws();
        if (p.pos != spec.size()) p.fail("trailing content");
        return data_var(name, s);
    }
    if (spec.compare(p.pos, 4, "proc") == 0) {
        p.pos += 4;
        TypeSigPtr sig = p.proc_sig();
        p.skip_ws();
        if (p.pos != spec.size()) p.fail("trailing content");
        return proc_var(name, std::move(sig));
    }
    p.fail("expected 'data' or 'proc'");
}

void SigEnv::declare(VarId v) {
    std::string name = v.name;
    decls_.insert_or_assign(std::move(name), std::move(v));
}

void SigEnv::declare(const std::string& name, const std::string& spec) {
    declare(parse_decl(name, spec));
}

const VarId* SigEnv::find(const std::string& name) const {
    auto it = decls_.find(name);
    return it == decls_.end() ? nullptr : &it->second;
}

SigEnv SigEnv::from_string(const std::string& text, const std::string& filename) {
    SigEnv env;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::size_t i = 0;
        while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        if (i >= line.size() || line[i] == '#') continue;
        std::size_t eq = line.find('=', i);
        if (eq == std::string::npos) {
            throw PlError(Err::SyntaxError,
                          filename + ":" + std::to_string(lineno) + ": expected name = \"spec\"");
        }
        std::string name = line.substr(i, eq - i);
        while (!name.empty() && std::isspace(static_cast<unsigned char>(name.back()))) {
            name.pop_back();
        }
        std::size_t q1 = line.find('"', eq);
        std::size_t q2 = q1 == std::string::npos ? std::string::npos : line.find('"', q1 + 1);
        if (name.empty() || q1 == std::string::npos || q2 == std::string::npos) {
            throw PlError(Err::SyntaxError,
                          filename + ":" + std::to_string(lineno) + ": expected name = \"spec\"");
        }
        env.declare(name, line.substr(q1 + 1, q2 - q1 - 1));
    }
    return env;
}

SigEnv SigEnv::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw PlError(Err::SyntaxError, "cannot open signature file " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return from_string(buf.str(), path);
}

SigEnv SigEnv::covering(const TermPtr& term) {
    SigEnv env;
    for (const auto& v : all_vars(term)) {
        if (!v.is_psi) env.declare(v);
    }
    return env;
}

}  // namespace plstar
