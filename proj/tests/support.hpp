#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "tri/isosig.hpp"
#include "tri/triangulation.hpp"

namespace testing_support {

inline std::string data_path(const std::string& rel) { return std::string(TRI_DATA_DIR) + "/" + rel; }

inline std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline tri::Triangulation fixture(const std::string& name) {
    return tri::parse_tri(slurp(data_path("fixtures/" + name + ".tri")));
}

// Closed fixtures (every face glued), all with at most four tetrahedra.
inline const std::vector<std::string> kClosedFixtures{
    "figure8", "sister", "gieseking", "s3_two_tet", "s2xs1", "torus_obstruction", "figure8_23", "figure8_02", "lens52",
};

inline std::vector<std::string> all_fixtures() {
    auto v = kClosedFixtures;
    v.push_back("single_tet");
    return v;
}

/// Signatures listed in a census file, comments skipped.
inline std::vector<tri::Triangulation> read_census(const std::string& rel) {
    std::istringstream in(slurp(data_path(rel)));
    std::vector<tri::Triangulation> out;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        out.push_back(tri::from_iso_sig(line));
    }
    return out;
}

}  // namespace testing_support
