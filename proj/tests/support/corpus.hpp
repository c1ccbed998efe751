#pragma once

#include "plstar/parser.hpp"
#include "support/paths.hpp"

namespace plstar::testing {

struct CorpusProgram {
    TermPtr term;
    SigEnv sigs;
    std::string text;
};

inline CorpusProgram load_corpus(const std::string& stem) {
    CorpusProgram p;
    p.text = read_file(source_path("corpus/examples/" + stem + ".pl"));
    p.sigs = SigEnv::from_file(source_path("corpus/examples/" + stem + ".sig"));
    p.term = parse_program(p.text, p.sigs, stem + ".pl");
    return p;
}

}  // namespace plstar::testing
