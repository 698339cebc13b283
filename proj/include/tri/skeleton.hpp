#pragma once

#include <algorithm>
#include <array>
#include <numeric>
#include <string_view>
#include <vector>

#include "tri/error.hpp"
#include "tri/triangulation.hpp"

namespace tri {

/// One tetrahedron edge lying in an edge class, seen as a step of the walk
/// around that edge. The edge runs from vertex `a` to vertex `b` of `tet`;
/// the walk enters through the face opposite `x` and leaves through the face
/// opposite `y`.
struct EdgeSlot {
    int tet = 0;
    int a = 0, b = 1, x = 2, y = 3;

    int edge() const noexcept { return edge_index(a, b); }
    /// +1 when the class direction runs from the lower to the higher label.
    int sign() const noexcept { return a < b ? 1 : -1; }
    int exit_face() const noexcept { return y; }
    int entry_face() const noexcept { return x; }

    bool operator==(const EdgeSlot&) const = default;
};

struct EdgeClass {
    /// Cyclic order for internal edges; for boundary edges the list runs from
    /// one unglued face to the other.
    std::vector<EdgeSlot> slots;
    bool boundary = false;
    int tail = -1;  // vertex class at the start of the class direction
    int head = -1;

    int degree() const noexcept { return static_cast<int>(slots.size()); }
};

struct VertexSlot {
    int tet = 0;
    int vertex = 0;
};

enum class LinkType { Sphere, Disc, Torus, KleinBottle, ProjectivePlane, Annulus, MobiusBand, Other };

constexpr std::string_view link_type_name(LinkType t) noexcept {
    switch (t) {
    case LinkType::Sphere: return "sphere";
    case LinkType::Disc: return "disc";
    case LinkType::Torus: return "torus";
    case LinkType::KleinBottle: return "klein-bottle";
    case LinkType::ProjectivePlane: return "projective-plane";
    case LinkType::Annulus: return "annulus";
    case LinkType::MobiusBand: return "mobius-band";
    case LinkType::Other: return "other";
    }
    return "other";
}

struct VertexClass {
    std::vector<VertexSlot> slots;
    int link_euler = 0;
    bool link_orientable = true;
    bool link_closed = true;

    int degree() const noexcept { return static_cast<int>(slots.size()); }

    LinkType link_type() const noexcept {
        if (link_closed) {
            if (link_euler == 2 && link_orientable) return LinkType::Sphere;
            if (link_euler == 1 && !link_orientable) return LinkType::ProjectivePlane;
            if (link_euler == 0) return link_orientable ? LinkType::Torus : LinkType::KleinBottle;
        } else {
            if (link_euler == 1 && link_orientable) return LinkType::Disc;
            if (link_euler == 0) return link_orientable ? LinkType::Annulus : LinkType::MobiusBand;
        }
        return LinkType::Other;
    }
    bool link_is_sphere() const noexcept { return link_type() == LinkType::Sphere; }
    bool link_is_torus() const noexcept { return link_type() == LinkType::Torus; }
    bool link_is_klein() const noexcept { return link_type() == LinkType::KleinBottle; }
};

/// Edge, vertex and face classes of a triangulation, with per-tetrahedron lookups.
struct Skeleton {
    int tetrahedra = 0;
    std::vector<EdgeClass> edges;
    std::vector<VertexClass> vertices;
    int face_count = 0;

    std::vector<std::array<int, 6>> edge_of;       // class id of each (tet, edge)
    std::vector<std::array<int, 6>> edge_sign;     // orientation of (tet, edge) relative to its class
    std::vector<std::array<int, 6>> edge_slot_of;  // position of (tet, edge) in its class's slot list
    std::vector<std::array<int, 4>> vertex_of;
    std::vector<std::array<int, 4>> face_of;

    /// V - E + F - T over the cell counts.
    int euler_characteristic() const noexcept {
        return static_cast<int>(vertices.size()) - static_cast<int>(edges.size()) + face_count - tetrahedra;
    }

    bool has_degree_one_edge() const noexcept {
        return std::any_of(edges.begin(), edges.end(), [](const EdgeClass& e) { return e.degree() == 1; });
    }
};

namespace detail {

inline EdgeSlot anchor_slot(int tet, int edge) {
    const auto [a, b] = kEdgeVertices[edge];
    int x = -1, y = -1;
    for (int v = 0; v < 4; ++v)
        if (v != a && v != b) (x < 0 ? x : y) = v;
    return {tet, a, b, x, y};
}

/// Next slot across the exit face, or nullopt at an unglued face.
inline std::optional<EdgeSlot> step_forward(const Triangulation& t, const EdgeSlot& s) {
    const auto& g = t.gluing(s.tet, s.y);
    if (!g) return std::nullopt;
    const Perm4& p = g->perm;
    return EdgeSlot{g->tet, p[s.a], p[s.b], p[s.y], p[s.x]};
}

inline EdgeSlot reversed_direction(const EdgeSlot& s) { return {s.tet, s.a, s.b, s.y, s.x}; }

/// Walks around the edge through `anchor`. Returns the slot sequence and
/// whether the walk hit unglued faces. Throws InvalidEdgeIdentification if
/// the walk revisits a tetrahedron edge other than by closing its cycle.
inline std::pair<std::vector<EdgeSlot>, bool> walk_edge(const Triangulation& t, const EdgeSlot& anchor) {
    std::vector<std::array<char, 6>> seen(t.size(), {0, 0, 0, 0, 0, 0});
    auto mark = [&](const EdgeSlot& s) {
        char& c = seen[s.tet][s.edge()];
        if (c) {
            throw Error(Errc::InvalidEdgeIdentification,
                        "edge " + std::to_string(s.edge()) + " of tetrahedron " + std::to_string(s.tet) +
                            " is identified with itself in reverse");
        }
        c = 1;
    };
    std::vector<EdgeSlot> fwd{anchor};
    mark(anchor);
    EdgeSlot cur = anchor;
    while (true) {
        auto nxt = step_forward(t, cur);
        if (!nxt) break;
        if (*nxt == anchor) return {std::move(fwd), false};
        mark(*nxt);
        fwd.push_back(*nxt);
        cur = *nxt;
    }
    std::vector<EdgeSlot> back;
    cur = reversed_direction(anchor);
    while (true) {
        auto nxt = step_forward(t, cur);
        if (!nxt) break;
        mark(*nxt);
        back.push_back(reversed_direction(*nxt));
        cur = *nxt;
    }
    std::reverse(back.begin(), back.end());
    back.insert(back.end(), fwd.begin(), fwd.end());
    return {std::move(back), true};
}

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    bool unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        parent[std::max(a, b)] = std::min(a, b);
        return true;
    }
};

}  // namespace detail

inline Skeleton skeleton(const Triangulation& tri) {
    const int n = tri.size();
    Skeleton sk;
    sk.tetrahedra = n;
    sk.edge_of.assign(n, {-1, -1, -1, -1, -1, -1});
    sk.edge_sign.assign(n, {0, 0, 0, 0, 0, 0});
    sk.edge_slot_of.assign(n, {-1, -1, -1, -1, -1, -1});
    sk.vertex_of.assign(n, {-1, -1, -1, -1});
    sk.face_of.assign(n, {-1, -1, -1, -1});

    // Vertex classes first, so edge classes can record their endpoints.
    detail::UnionFind vuf(4 * n);
    for (int t = 0; t < n; ++t)
        for (int f = 0; f < 4; ++f)
            if (const auto& g = tri.gluing(t, f))
                for (int v = 0; v < 4; ++v)
                    if (v != f) vuf.unite(4 * t + v, 4 * g->tet + g->perm[v]);
    std::vector<int> vid(4 * n, -1);
    for (int s = 0; s < 4 * n; ++s) {
        const int r = vuf.find(s);
        if (vid[r] < 0) {
            vid[r] = static_cast<int>(sk.vertices.size());
            sk.vertices.emplace_back();
        }
        sk.vertex_of[s / 4][s % 4] = vid[r];
        sk.vertices[vid[r]].slots.push_back({s / 4, s % 4});
    }

    for (int t = 0; t < n; ++t)
        for (int e = 0; e < 6; ++e) {
            if (sk.edge_of[t][e] >= 0) continue;
            auto [slots, boundary] = detail::walk_edge(tri, detail::anchor_slot(t, e));
            const int id = static_cast<int>(sk.edges.size());
            for (int i = 0; i < static_cast<int>(slots.size()); ++i) {
                const auto& s = slots[i];
                sk.edge_of[s.tet][s.edge()] = id;
                sk.edge_sign[s.tet][s.edge()] = s.sign();
                sk.edge_slot_of[s.tet][s.edge()] = i;
            }
            EdgeClass ec;
            ec.boundary = boundary;
            ec.tail = sk.vertex_of[slots[0].tet][slots[0].a];
            ec.head = sk.vertex_of[slots[0].tet][slots[0].b];
            ec.slots = std::move(slots);
            sk.edges.push_back(std::move(ec));
        }

    for (int t = 0; t < n; ++t)
        for (int f = 0; f < 4; ++f) {
            if (sk.face_of[t][f] >= 0) continue;
            sk.face_of[t][f] = sk.face_count;
            if (const auto& g = tri.gluing(t, f)) sk.face_of[g->tet][g->perm[f]] = sk.face_count;
            ++sk.face_count;
        }

    // Vertex links: one triangle per corner, one link vertex per edge end.
    std::vector<int> link_vertices(sk.vertices.size(), 0);
    for (const auto& ec : sk.edges) {
        ++link_vertices[ec.tail];
        ++link_vertices[ec.head];
    }
    for (std::size_t vi = 0; vi < sk.vertices.size(); ++vi) {
        auto& vc = sk.vertices[vi];
        int glued_halves = 0, open_edges = 0;
        for (const auto& s : vc.slots)
            for (int f = 0; f < 4; ++f) {
                if (f == s.vertex) continue;
                if (tri.is_glued(s.tet, f))
                    ++glued_halves;
                else
                    ++open_edges;
            }
        const int link_edges = glued_halves / 2 + open_edges;
        vc.link_euler = link_vertices[vi] - link_edges + vc.degree();
        vc.link_closed = open_edges == 0;

        // Orient corners: s * s' = -sign(p) across every gluing.
        std::vector<int> orient(4 * n, 0);
        std::vector<int> stack;
        orient[4 * vc.slots[0].tet + vc.slots[0].vertex] = 1;
        stack.push_back(4 * vc.slots[0].tet + vc.slots[0].vertex);
        while (!stack.empty() && vc.link_orientable) {
            const int c = stack.back();
            stack.pop_back();
            const int t = c / 4, v = c % 4;
            for (int f = 0; f < 4; ++f) {
                if (f == v) continue;
                const auto& g = tri.gluing(t, f);
                if (!g) continue;
                const int d = 4 * g->tet + g->perm[v];
                const int want = -orient[c] * g->perm.sign();
                if (orient[d] == 0) {
                    orient[d] = want;
                    stack.push_back(d);
                } else if (orient[d] != want) {
                    vc.link_orientable = false;
                    break;
                }
            }
        }
    }
    return sk;
}

enum class TriClass { ClosedOneVertex, Ideal, OtherClosed, Mixed, HasBoundaryFaces };

constexpr std::string_view tri_class_name(TriClass c) noexcept {
    switch (c) {
    case TriClass::ClosedOneVertex: return "ClosedOneVertex";
    case TriClass::Ideal: return "Ideal";
    case TriClass::OtherClosed: return "OtherClosed";
    case TriClass::Mixed: return "Mixed";
    case TriClass::HasBoundaryFaces: return "HasBoundaryFaces";
    }
    return "Mixed";
}

inline TriClass classify(const Triangulation& tri, const Skeleton& sk) {
    if (!tri.is_closed()) return TriClass::HasBoundaryFaces;
    const bool all_spheres =
        std::all_of(sk.vertices.begin(), sk.vertices.end(), [](const VertexClass& v) { return v.link_is_sphere(); });
    if (all_spheres) return sk.vertices.size() == 1 ? TriClass::ClosedOneVertex : TriClass::OtherClosed;
    const bool all_ideal = std::all_of(sk.vertices.begin(), sk.vertices.end(),
                                       [](const VertexClass& v) { return v.link_closed && v.link_euler <= 0; });
    return all_ideal ? TriClass::Ideal : TriClass::Mixed;
}

inline TriClass classify(const Triangulation& tri) { return classify(tri, skeleton(tri)); }

inline bool has_degree_one_edge(const Triangulation& tri) { return skeleton(tri).has_degree_one_edge(); }

}  // namespace tri
