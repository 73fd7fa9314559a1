#pragma once

#include <memory>
#include <string>

#include "kpinf/kgraph.hpp"

#ifndef KPINF_TEST_DATA
#define KPINF_TEST_DATA "tests/data"
#endif

namespace kpinf::testing {

inline std::string data_file(const std::string& name) { return std::string(KPINF_TEST_DATA) + "/" + name; }

inline std::shared_ptr<const KGraph> load_data(const std::string& name) {
    return std::make_shared<const KGraph>(load_kgraph_file(data_file(name)));
}

inline Path P(const KGraph& g, const char* text) { return parse_path(g, text); }

}  // namespace kpinf::testing
