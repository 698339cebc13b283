#pragma once

#include <array>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tri/error.hpp"
#include "tri/perm4.hpp"

namespace tri {

// Face f of a tetrahedron is the triangle omitting vertex f. Edges 0..5 are
// the vertex pairs 01,02,03,12,13,23 in that order.
inline constexpr std::array<std::array<int, 2>, 6> kEdgeVertices{{{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};

inline constexpr std::array<std::array<int, 4>, 4> kEdgeIndex{{
    {-1, 0, 1, 2},
    {0, -1, 3, 4},
    {1, 3, -1, 5},
    {2, 4, 5, -1},
}};

constexpr int edge_index(int a, int b) noexcept { return kEdgeIndex[a][b]; }

/// Opposite-edge pair of an edge: 0 = {01,23}, 1 = {02,13}, 2 = {03,12}.
constexpr int edge_pair(int edge) noexcept { return edge < 3 ? edge : 5 - edge; }

/// Opposite-edge pair of the edge joining vertices a and b.
constexpr int vertex_pair_type(int a, int b) noexcept { return edge_pair(edge_index(a, b)); }

struct Gluing {
    int tet = 0;
    Perm4 perm;  // maps source vertex labels to destination vertex labels

    bool operator==(const Gluing&) const = default;
};

/// One face pairing as written in a .tri file.
struct GluingSpec {
    int tet = 0;
    int face = 0;
    int dest_tet = 0;
    int dest_face = 0;
    Perm4 perm;

    bool operator==(const GluingSpec&) const = default;
};

using GluingTable = std::vector<std::array<std::optional<Gluing>, 4>>;

/// n abstract tetrahedra with their face pairings. Immutable once built; every
/// constructor validates that the pairing table is an involution.
class Triangulation {
public:
    /// Builds from a face-pairing list with one entry per glued pair. An entry
    /// that exactly restates the inverse of an earlier one is tolerated.
    static Triangulation from_gluings(int n, std::span<const GluingSpec> specs) {
        if (n < 1) throw Error(Errc::IndexOutOfRange, "triangulation needs at least one tetrahedron");
        GluingTable table(static_cast<std::size_t>(n));
        for (const auto& g : specs) {
            if (g.tet < 0 || g.tet >= n || g.dest_tet < 0 || g.dest_tet >= n || g.face < 0 || g.face > 3 ||
                g.dest_face < 0 || g.dest_face > 3)
                throw Error(Errc::IndexOutOfRange, "gluing index out of range");
            if (g.perm[g.face] != g.dest_face)
                throw Error(Errc::PermutationNotFixingFace,
                            "permutation " + g.perm.str() + " does not send face " + std::to_string(g.face) +
                                " to face " + std::to_string(g.dest_face));
            if (g.tet == g.dest_tet && g.face == g.dest_face)
                throw Error(Errc::FaceSelfGluing, "face (" + std::to_string(g.tet) + "," + std::to_string(g.face) +
                                                      ") glued to itself");
            auto& src = table[g.tet][g.face];
            auto& dst = table[g.dest_tet][g.dest_face];
            const Gluing fwd{g.dest_tet, g.perm};
            const Gluing bwd{g.tet, g.perm.inverse()};
            if (src || dst) {
                if (src == fwd && dst == bwd) continue;
                throw Error(Errc::NonInvolution, "face (" + std::to_string(g.tet) + "," + std::to_string(g.face) +
                                                     ") or its partner is already glued");
            }
            src = fwd;
            dst = bwd;
        }
        return Triangulation(std::move(table));
    }

    /// Builds from a complete two-sided table, which must already be an involution.
    static Triangulation from_table(GluingTable table) {
        if (table.empty()) throw Error(Errc::IndexOutOfRange, "triangulation needs at least one tetrahedron");
        validate(table);
        return Triangulation(std::move(table));
    }

    int size() const noexcept { return static_cast<int>(table_.size()); }

    const std::optional<Gluing>& gluing(int tet, int face) const { return table_.at(tet).at(face); }

    bool is_glued(int tet, int face) const { return gluing(tet, face).has_value(); }

    const GluingTable& table() const noexcept { return table_; }

    int unglued_face_count() const noexcept {
        int c = 0;
        for (const auto& row : table_)
            for (const auto& g : row)
                if (!g) ++c;
        return c;
    }

    bool is_closed() const noexcept { return unglued_face_count() == 0; }

    bool is_connected() const {
        const int n = size();
        std::vector<char> seen(n, 0);
        std::vector<int> stack{0};
        seen[0] = 1;
        int count = 1;
        while (!stack.empty()) {
            const int t = stack.back();
            stack.pop_back();
            for (const auto& g : table_[t])
                if (g && !seen[g->tet]) {
                    seen[g->tet] = 1;
                    ++count;
                    stack.push_back(g->tet);
                }
        }
        return count == n;
    }

    /// Each glued pair once, from the lexicographically smaller side.
    std::vector<GluingSpec> glued_pairs() const {
        std::vector<GluingSpec> out;
        for (int t = 0; t < size(); ++t)
            for (int f = 0; f < 4; ++f) {
                const auto& g = table_[t][f];
                if (!g) continue;
                const int df = g->perm[f];
                if (std::pair(t, f) < std::pair(g->tet, df)) out.push_back({t, f, g->tet, df, g->perm});
            }
        return out;
    }

    bool operator==(const Triangulation&) const = default;

private:
    explicit Triangulation(GluingTable table) : table_(std::move(table)) {}

    static void validate(const GluingTable& table) {
        const int n = static_cast<int>(table.size());
        for (int t = 0; t < n; ++t)
            for (int f = 0; f < 4; ++f) {
                const auto& g = table[t][f];
                if (!g) continue;
                if (g->tet < 0 || g->tet >= n) throw Error(Errc::IndexOutOfRange, "gluing destination out of range");
                const int df = g->perm[f];
                if (g->tet == t && df == f) throw Error(Errc::FaceSelfGluing, "face glued to itself");
                const auto& back = table[g->tet][df];
                if (!back || back->tet != t || back->perm != g->perm.inverse())
                    throw Error(Errc::NonInvolution, "gluing of face (" + std::to_string(t) + "," +
                                                         std::to_string(f) + ") lacks its inverse entry");
            }
    }

    GluingTable table_;
};

/// Tetrahedra as nodes, one arc per glued face pair (loops allowed).
struct DualGraph {
    int nodes = 0;
    std::vector<std::pair<int, int>> arcs;
};

inline DualGraph dual_graph(const Triangulation& t) {
    DualGraph g{t.size(), {}};
    for (const auto& p : t.glued_pairs()) g.arcs.emplace_back(p.tet, p.dest_tet);
    return g;
}

// ---------------------------------------------------------------------------
// .tri text format

inline Triangulation parse_tri(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    int lineno = 0;
    std::optional<int> n;
    std::vector<GluingSpec> specs;
    std::vector<std::array<char, 4>> used;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string tag;
        if (!(ls >> tag)) continue;
        const auto where = " (line " + std::to_string(lineno) + ")";
        if (!n) {
            int version = 0, count = 0;
            if (tag != "tri" || !(ls >> version >> count) || version != 1)
                throw Error(Errc::Parse, "expected header 'tri 1 <n>'" + where);
            if (count < 1) throw Error(Errc::Parse, "tetrahedron count must be positive" + where);
            std::string extra;
            if (ls >> extra) throw Error(Errc::Parse, "trailing tokens" + where);
            n = count;
            used.assign(static_cast<std::size_t>(count), {0, 0, 0, 0});
            continue;
        }
        if (tag != "g") throw Error(Errc::Parse, "unknown record '" + tag + "'" + where);
        GluingSpec g;
        std::string perm, extra;
        if (!(ls >> g.tet >> g.face >> g.dest_tet >> g.dest_face >> perm) || (ls >> extra))
            throw Error(Errc::Parse, "malformed gluing record" + where);
        auto p = Perm4::parse(perm);
        if (!p) throw Error(Errc::Parse, "bad permutation '" + perm + "'" + where);
        g.perm = *p;
        if (g.tet < 0 || g.tet >= *n || g.dest_tet < 0 || g.dest_tet >= *n || g.face < 0 || g.face > 3 ||
            g.dest_face < 0 || g.dest_face > 3)
            throw Error(Errc::IndexOutOfRange, "gluing index out of range" + where);
        if (used[g.tet][g.face] || used[g.dest_tet][g.dest_face])
            throw Error(Errc::NonInvolution, "face listed twice" + where);
        used[g.tet][g.face] = 1;
        used[g.dest_tet][g.dest_face] = 1;
        specs.push_back(g);
    }
    if (!n) throw Error(Errc::Parse, "missing header 'tri 1 <n>'");
    return Triangulation::from_gluings(*n, specs);
}

inline std::string to_tri_text(const Triangulation& t) {
    std::string out = "tri 1 " + std::to_string(t.size()) + "\n";
    for (const auto& g : t.glued_pairs())
        out += "g " + std::to_string(g.tet) + " " + std::to_string(g.face) + " " + std::to_string(g.dest_tet) + " " +
               std::to_string(g.dest_face) + " " + g.perm.str() + "\n";
    return out;
}

}  // namespace tri
