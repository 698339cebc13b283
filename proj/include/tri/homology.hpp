#pragma once

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "tri/error.hpp"
#include "tri/skeleton.hpp"
#include "tri/triangulation.hpp"

namespace tri {

using BigInt = boost::multiprecision::cpp_int;
using IntMatrix = std::vector<std::vector<BigInt>>;

struct HomologyGroup {
    int rank = 0;
    std::vector<BigInt> torsion;  // invariant factors d1 | d2 | ..., each > 1

    bool operator==(const HomologyGroup&) const = default;

    std::string str() const {
        std::string out;
        auto add = [&](const std::string& s) { out += (out.empty() ? "" : " + ") + s; };
        if (rank == 1) add("Z");
        if (rank > 1) add(std::to_string(rank) + " Z");
        for (const auto& d : torsion) add("Z_" + d.str());
        return out.empty() ? "0" : out;
    }
};

/// Diagonal of the Smith normal form: the nonzero invariant factors, each
/// dividing the next. Their count is the rank of the matrix.
inline std::vector<BigInt> smith_invariants(IntMatrix a) {
    const std::size_t rows = a.size();
    const std::size_t cols = rows ? a[0].size() : 0;
    std::vector<BigInt> diag;
    std::size_t p = 0;
    while (p < rows && p < cols) {
        // Smallest nonzero magnitude in the lower-right block becomes the pivot.
        std::size_t pr = rows, pc = cols;
        for (std::size_t i = p; i < rows; ++i)
            for (std::size_t j = p; j < cols; ++j)
                if (a[i][j] != 0 && (pr == rows || abs(a[i][j]) < abs(a[pr][pc]))) {
                    pr = i;
                    pc = j;
                }
        if (pr == rows) break;
        std::swap(a[p], a[pr]);
        for (auto& row : a) std::swap(row[p], row[pc]);

        bool clean = false;
        while (!clean) {
            clean = true;
            for (std::size_t i = p + 1; i < rows; ++i) {
                if (a[i][p] == 0) continue;
                const BigInt q = a[i][p] / a[p][p];
                for (std::size_t j = p; j < cols; ++j) a[i][j] -= q * a[p][j];
                if (a[i][p] != 0) {
                    std::swap(a[p], a[i]);
                    clean = false;
                }
            }
            for (std::size_t j = p + 1; j < cols; ++j) {
                if (a[p][j] == 0) continue;
                const BigInt q = a[p][j] / a[p][p];
                for (std::size_t i = p; i < rows; ++i) a[i][j] -= q * a[i][p];
                if (a[p][j] != 0) {
                    for (auto& row : a) std::swap(row[p], row[j]);
                    clean = false;
                }
            }
            if (!clean) continue;
            // The pivot must divide every remaining entry.
            for (std::size_t i = p + 1; i < rows && clean; ++i)
                for (std::size_t j = p + 1; j < cols; ++j)
                    if (a[i][j] % a[p][p] != 0) {
                        for (std::size_t k = p; k < cols; ++k) a[p][k] += a[i][k];
                        clean = false;
                        break;
                    }
        }
        diag.push_back(abs(a[p][p]));
        ++p;
    }
    return diag;
}

/// Cellular boundary maps of the quotient complex (vertices, edge classes,
/// face classes): d1 is V x E, d2 is E x F.
struct BoundaryMaps {
    IntMatrix d1;
    IntMatrix d2;
};

inline BoundaryMaps boundary_maps(const Triangulation& tri, const Skeleton& sk) {
    const std::size_t V = sk.vertices.size(), E = sk.edges.size(), F = static_cast<std::size_t>(sk.face_count);
    BoundaryMaps m;
    m.d1.assign(V, std::vector<BigInt>(E, 0));
    m.d2.assign(E, std::vector<BigInt>(F, 0));
    for (std::size_t e = 0; e < E; ++e) {
        m.d1[sk.edges[e].head][e] += 1;
        m.d1[sk.edges[e].tail][e] -= 1;
    }
    std::vector<char> done(F, 0);
    for (int t = 0; t < tri.size(); ++t)
        for (int f = 0; f < 4; ++f) {
            const int fc = sk.face_of[t][f];
            if (done[fc]) continue;
            done[fc] = 1;
            int u[3], k = 0;
            for (int v = 0; v < 4; ++v)
                if (v != f) u[k++] = v;
            const int terms[3][3] = {{u[1], u[2], 1}, {u[0], u[2], -1}, {u[0], u[1], 1}};
            for (const auto& term : terms) {
                const int e = edge_index(term[0], term[1]);
                m.d2[sk.edge_of[t][e]][fc] += term[2] * sk.edge_sign[t][e];
            }
        }
    return m;
}

/// First homology of the quotient cell complex, ideal vertices included as
/// cone points.
inline HomologyGroup homology_h1(const Triangulation& tri) {
    if (!tri.is_closed()) throw Error(Errc::HasBoundaryFaces, "homology needs every face glued");
    const Skeleton sk = skeleton(tri);
    auto maps = boundary_maps(tri, sk);
    const int rank_d1 = static_cast<int>(smith_invariants(std::move(maps.d1)).size());
    const auto inv = smith_invariants(std::move(maps.d2));
    HomologyGroup h;
    h.rank = static_cast<int>(sk.edges.size()) - rank_d1 - static_cast<int>(inv.size());
    for (const auto& d : inv)
        if (d > 1) h.torsion.push_back(d);
    std::sort(h.torsion.begin(), h.torsion.end());
    return h;
}

}  // namespace tri
