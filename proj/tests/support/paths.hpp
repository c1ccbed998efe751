#pragma once

#include <fstream>
#include <sstream>
#include <string>

#ifndef PLSTAR_SOURCE_DIR
#define PLSTAR_SOURCE_DIR "."
#endif

namespace plstar::testing {

inline std::string source_path(const std::string& rel) {
    return std::string(PLSTAR_SOURCE_DIR) + "/" + rel;
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace plstar::testing
