#pragma once

#include <algorithm>
#include <array>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "tri/error.hpp"
#include "tri/isosig.hpp"
#include "tri/skeleton.hpp"
#include "tri/triangulation.hpp"

namespace tri {

enum class MoveType { M23, M32, M14, M41, M02, M20 };

constexpr std::string_view move_type_tag(MoveType m) noexcept {
    switch (m) {
    case MoveType::M23: return "23";
    case MoveType::M32: return "32";
    case MoveType::M14: return "14";
    case MoveType::M41: return "41";
    case MoveType::M02: return "02";
    case MoveType::M20: return "20";
    }
    return "??";
}

/// A move and its parameters:
///   M23 (tet, face), M32 (edge class), M14 (tet), M41 (vertex class),
///   M02 (edge class, slot A, slot B), M20 (edge class).
/// Slot i of an edge class names the face the edge walk leaves slot i through.
struct Move {
    MoveType type = MoveType::M23;
    int a = 0, b = 0, c = 0;

    static Move m23(int tet, int face) { return {MoveType::M23, tet, face, 0}; }
    static Move m32(int edge) { return {MoveType::M32, edge, 0, 0}; }
    static Move m14(int tet) { return {MoveType::M14, tet, 0, 0}; }
    static Move m41(int vertex) { return {MoveType::M41, vertex, 0, 0}; }
    static Move m02(int edge, int slot_a, int slot_b) { return {MoveType::M02, edge, slot_a, slot_b}; }
    static Move m20(int edge) { return {MoveType::M20, edge, 0, 0}; }

    auto operator<=>(const Move&) const = default;

    /// Tetrahedron count change.
    int delta() const noexcept {
        switch (type) {
        case MoveType::M23: return 1;
        case MoveType::M32: return -1;
        case MoveType::M14: return 3;
        case MoveType::M41: return -3;
        case MoveType::M02: return 2;
        case MoveType::M20: return -2;
        }
        return 0;
    }

    /// Move-script line, e.g. "23 0 1".
    std::string script() const {
        std::string s(move_type_tag(type));
        s += " " + std::to_string(a);
        if (type == MoveType::M23) s += " " + std::to_string(b);
        if (type == MoveType::M02) s += " " + std::to_string(b) + " " + std::to_string(c);
        return s;
    }
};

inline Move parse_move(std::string_view line) {
    std::istringstream in{std::string(line)};
    std::string tag;
    Move m;
    auto bad = [&] { return Error(Errc::Parse, "bad move line '" + std::string(line) + "'"); };
    if (!(in >> tag)) throw bad();
    int params = 1;
    if (tag == "23") m.type = MoveType::M23, params = 2;
    else if (tag == "32") m.type = MoveType::M32;
    else if (tag == "14") m.type = MoveType::M14;
    else if (tag == "41") m.type = MoveType::M41;
    else if (tag == "02") m.type = MoveType::M02, params = 3;
    else if (tag == "20") m.type = MoveType::M20;
    else throw bad();
    int* slots[3] = {&m.a, &m.b, &m.c};
    for (int i = 0; i < params; ++i)
        if (!(in >> *slots[i])) throw bad();
    std::string extra;
    if (in >> extra) throw bad();
    return m;
}

struct MoveRecord {
    Move kind;
    IsoSig before;
    IsoSig after;
};

struct Applicability {
    bool ok = false;
    std::string reason;

    explicit operator bool() const noexcept { return ok; }
};

namespace detail {

/// A face of a removed tetrahedron that reappears on a new tetrahedron.
/// `new_to_old` maps the new tetrahedron's labels to the old one's.
struct RegionFace {
    int old_tet, old_face;
    int new_tet, new_face;
    Perm4 new_to_old;
};

struct InternalGluing {
    int tet, face, dest_tet;
    Perm4 perm;
};

/// Removes `removed`, appends `new_count` tetrahedra glued by `internal`, and
/// reattaches every outer face of the region through `outer`. Surviving
/// tetrahedra keep their relative order; new ones follow them.
inline Triangulation replace_region(const Triangulation& tri, const std::vector<int>& removed, int new_count,
                                    const std::vector<InternalGluing>& internal,
                                    const std::vector<RegionFace>& outer) {
    const int n = tri.size();
    std::vector<int> pos(n, -1);
    std::vector<char> gone(n, 0);
    for (int t : removed) gone[t] = 1;
    int survivors = 0;
    for (int t = 0; t < n; ++t)
        if (!gone[t]) pos[t] = survivors++;
    GluingTable table(survivors + new_count);
    for (int t = 0; t < n; ++t) {
        if (gone[t]) continue;
        for (int f = 0; f < 4; ++f)
            if (const auto& g = tri.gluing(t, f); g && !gone[g->tet]) table[pos[t]][f] = Gluing{pos[g->tet], g->perm};
    }
    for (const auto& ig : internal) {
        table[survivors + ig.tet][ig.face] = Gluing{survivors + ig.dest_tet, ig.perm};
        table[survivors + ig.dest_tet][ig.perm[ig.face]] = Gluing{survivors + ig.tet, ig.perm.inverse()};
    }
    std::vector<std::array<int, 4>> outer_at(n, {-1, -1, -1, -1});
    for (int i = 0; i < static_cast<int>(outer.size()); ++i) outer_at[outer[i].old_tet][outer[i].old_face] = i;
    for (const auto& rf : outer) {
        const int nt = survivors + rf.new_tet;
        const auto& g = tri.gluing(rf.old_tet, rf.old_face);
        if (!g) continue;
        const int df = g->perm[rf.old_face];
        if (gone[g->tet]) {
            const int j = outer_at[g->tet][df];
            if (j < 0) throw Error(Errc::MoveNotApplicable, "region boundary is not closed under gluing");
            const auto& other = outer[j];
            table[nt][rf.new_face] =
                Gluing{survivors + other.new_tet, other.new_to_old.inverse() * g->perm * rf.new_to_old};
        } else {
            const Perm4 p = g->perm * rf.new_to_old;
            table[nt][rf.new_face] = Gluing{pos[g->tet], p};
            table[pos[g->tet]][df] = Gluing{nt, p.inverse()};
        }
    }
    return Triangulation::from_table(std::move(table));
}

inline void check_tet(const Triangulation& tri, int tet) {
    if (tet < 0 || tet >= tri.size())
        throw Error(Errc::ParameterOutOfRange, "tetrahedron " + std::to_string(tet) + " out of range");
}

inline const EdgeClass& check_edge(const Skeleton& sk, int edge) {
    if (edge < 0 || edge >= static_cast<int>(sk.edges.size()))
        throw Error(Errc::ParameterOutOfRange, "edge class " + std::to_string(edge) + " out of range");
    return sk.edges[edge];
}

// --- 2-3 -------------------------------------------------------------------

inline Applicability can_apply_23(const Triangulation& tri, int tet, int face) {
    check_tet(tri, tet);
    if (face < 0 || face > 3) throw Error(Errc::ParameterOutOfRange, "face out of range");
    const auto& g = tri.gluing(tet, face);
    if (!g) return {false, "face is unglued"};
    if (g->tet == tet) return {false, "both sides of the face are the same tetrahedron"};
    return {true, ""};
}

inline Triangulation apply_23(const Triangulation& tri, int tet, int face) {
    const int f = face;
    const Gluing g = *tri.gluing(tet, face);
    const Perm4& p = g.perm;
    int av[3], k = 0;
    for (int v = 0; v < 4; ++v)
        if (v != f) av[k++] = v;
    // New tetrahedron i omits face vertex av[i]: labels 0 = apex of `tet`,
    // 1 = apex of the other side, 2,3 = the remaining face vertices.
    auto others = [](int i) {
        std::array<int, 2> o{};
        int c = 0;
        for (int j = 0; j < 3; ++j)
            if (j != i) o[c++] = j;
        return o;
    };
    auto label_in = [&](int i, int x) { return others(i)[0] == x ? 2 : 3; };
    std::vector<RegionFace> outer;
    for (int i = 0; i < 3; ++i) {
        const auto o = others(i);
        outer.push_back({tet, av[i], i, 1, *Perm4::from_images(f, av[i], av[o[0]], av[o[1]])});
        outer.push_back({g.tet, p[av[i]], i, 0, *Perm4::from_images(p[av[i]], p[f], p[av[o[0]]], p[av[o[1]]])});
    }
    std::vector<InternalGluing> internal;
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j) {
            const int m = 3 - i - j;
            int img[4] = {0, 1, 0, 0};
            img[label_in(i, m)] = label_in(j, m);
            img[label_in(i, j)] = label_in(j, i);
            internal.push_back({i, label_in(i, j), j, *Perm4::from_images(img[0], img[1], img[2], img[3])});
        }
    return replace_region(tri, {tet, g.tet}, 3, internal, outer);
}

// --- 3-2 -------------------------------------------------------------------

inline Applicability can_apply_32(const std::vector<EdgeSlot>& slots, bool boundary) {
    if (boundary) return {false, "edge lies on the boundary"};
    if (slots.size() != 3) return {false, "edge degree is " + std::to_string(slots.size()) + ", not 3"};
    if (slots[0].tet == slots[1].tet || slots[1].tet == slots[2].tet || slots[0].tet == slots[2].tet)
        return {false, "the tetrahedra around the edge are not distinct"};
    return {true, ""};
}

inline Triangulation apply_32(const Triangulation& tri, const std::vector<EdgeSlot>& s) {
    // Link vertex L_i is x of slot i (and y of slot i+1). New tetrahedron 0
    // holds the `a` end, tetrahedron 1 the `b` end; label 1+i is L_i.
    std::vector<RegionFace> outer;
    for (int i = 0; i < 3; ++i) {
        const int li = 1 + i, lprev = 1 + (i + 2) % 3, lnext = 1 + (i + 1) % 3;
        int top[4], bot[4];
        top[0] = s[i].a;
        bot[0] = s[i].b;
        top[li] = bot[li] = s[i].x;
        top[lprev] = bot[lprev] = s[i].y;
        top[lnext] = s[i].b;
        bot[lnext] = s[i].a;
        outer.push_back({s[i].tet, s[i].b, 0, lnext, *Perm4::from_images(top[0], top[1], top[2], top[3])});
        outer.push_back({s[i].tet, s[i].a, 1, lnext, *Perm4::from_images(bot[0], bot[1], bot[2], bot[3])});
    }
    return replace_region(tri, {s[0].tet, s[1].tet, s[2].tet}, 2, {{0, 0, 1, Perm4{}}}, outer);
}

// --- 1-4 -------------------------------------------------------------------

inline Triangulation apply_14(const Triangulation& tri, int tet) {
    std::vector<RegionFace> outer;
    for (int i = 0; i < 4; ++i) outer.push_back({tet, i, i, i, Perm4{}});
    std::vector<InternalGluing> internal;
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) internal.push_back({i, j, j, Perm4::swap(i, j)});
    return replace_region(tri, {tet}, 4, internal, outer);
}

// --- 4-1 -------------------------------------------------------------------

struct Star41 {
    std::array<int, 4> tets{};
    std::array<int, 4> corner{};   // vertex of each tetrahedron at the removed vertex
    std::array<Perm4, 4> to_old{}; // new labels -> labels of tets[k]
    std::array<int, 4> face{};     // face of the new tetrahedron replacing tets[k]
};

inline Applicability analyse_41(const Triangulation& tri, const Skeleton& sk, int vertex, Star41* out) {
    const VertexClass& vc = sk.vertices[vertex];
    if (vc.degree() != 4) return {false, "vertex degree is " + std::to_string(vc.degree()) + ", not 4"};
    if (!vc.link_is_sphere()) return {false, "vertex link is not a sphere"};
    Star41 st;
    for (int k = 0; k < 4; ++k) {
        st.tets[k] = vc.slots[k].tet;
        st.corner[k] = vc.slots[k].vertex;
    }
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            if (st.tets[i] == st.tets[j]) return {false, "the tetrahedra around the vertex are not distinct"};
    // Classes of the edges leaving the vertex, labelled from the first tetrahedron.
    std::array<int, 4> cls_of_label{-1, -1, -1, -1};
    for (int u = 0; u < 4; ++u)
        if (u != st.corner[0]) cls_of_label[u] = sk.edge_of[st.tets[0]][edge_index(st.corner[0], u)];
    std::vector<int> classes;
    for (int k = 0; k < 4; ++k)
        for (int u = 0; u < 4; ++u)
            if (u != st.corner[k]) classes.push_back(sk.edge_of[st.tets[k]][edge_index(st.corner[k], u)]);
    std::sort(classes.begin(), classes.end());
    classes.erase(std::unique(classes.begin(), classes.end()), classes.end());
    if (classes.size() != 4) return {false, "the vertex does not meet four distinct edges"};
    for (int c : classes) {
        const EdgeClass& ec = sk.edges[c];
        if (ec.degree() != 3) return {false, "an edge at the vertex does not have degree 3"};
        if (ec.head == ec.tail) return {false, "an edge at the vertex is a loop"};
        if (std::find(cls_of_label.begin(), cls_of_label.end(), c) == cls_of_label.end())
            cls_of_label[st.corner[0]] = c;
    }
    for (int k = 0; k < 4; ++k) {
        int img[4];
        unsigned used = 0;
        for (int l = 0; l < 4; ++l) {
            img[l] = st.corner[k];
            for (int u = 0; u < 4; ++u)
                if (u != st.corner[k] && sk.edge_of[st.tets[k]][edge_index(st.corner[k], u)] == cls_of_label[l])
                    img[l] = u;
            if (used & (1u << img[l])) return {false, "the star of the vertex is not a cone"};
            used |= 1u << img[l];
        }
        st.to_old[k] = *Perm4::from_images(img[0], img[1], img[2], img[3]);
        st.face[k] = st.to_old[k].inverse()[st.corner[k]];
    }
    for (int k = 0; k < 4; ++k)
        for (int j = k + 1; j < 4; ++j)
            if (st.face[k] == st.face[j]) return {false, "the star of the vertex is not a cone"};
    for (int k = 0; k < 4; ++k)
        for (int u = 0; u < 4; ++u) {
            if (u == st.corner[k]) continue;
            const auto& g = tri.gluing(st.tets[k], u);
            if (!g) return {false, "a face at the vertex is unglued"};
            const int j = static_cast<int>(std::find(st.tets.begin(), st.tets.end(), g->tet) - st.tets.begin());
            if (j == 4 || j == k) return {false, "the star of the vertex is not a cone"};
            if (st.to_old[j].inverse() * g->perm * st.to_old[k] != Perm4::swap(st.face[k], st.face[j]))
                return {false, "the star of the vertex is not a cone"};
        }
    if (out) *out = st;
    return {true, ""};
}

inline Triangulation apply_41(const Triangulation& tri, const Star41& st) {
    std::vector<RegionFace> outer;
    for (int k = 0; k < 4; ++k) outer.push_back({st.tets[k], st.corner[k], 0, st.face[k], st.to_old[k]});
    return replace_region(tri, {st.tets.begin(), st.tets.end()}, 1, {}, outer);
}

// --- 0-2 -------------------------------------------------------------------

/// Number of addressable faces around an edge: every exit face of a cyclic
/// edge, or the internal ones of a boundary edge.
inline int face_slots(const std::vector<EdgeSlot>& slots, bool boundary) {
    return static_cast<int>(slots.size()) - (boundary ? 1 : 0);
}

inline Applicability can_apply_02(const Skeleton& sk, const std::vector<EdgeSlot>& slots, bool boundary, int sa,
                                  int sb) {
    const int faces = face_slots(slots, boundary);
    if (sa < 0 || sb < 0 || sa >= faces || sb >= faces)
        throw Error(Errc::ParameterOutOfRange, "face slot out of range for this edge");
    if (sa == sb) return {false, "the two face slots coincide"};
    const auto& fa = slots[sa];
    const auto& fb = slots[sb];
    if (sk.face_of[fa.tet][fa.y] == sk.face_of[fb.tet][fb.y])
        return {false, "the two face slots name the same triangle"};
    return {true, ""};
}

inline Triangulation apply_02(const Triangulation& tri, const std::vector<EdgeSlot>& slots, int sa, int sb) {
    const int d = static_cast<int>(slots.size());
    const int n = tri.size();
    GluingTable table = tri.table();
    table.resize(n + 2);
    const int t1 = n, t2 = n + 1;
    // Pillow: labels 0,1 = the edge ends, 2 = third vertex of face A, 3 = of
    // face B; the new degree-2 edge is 23.
    for (int f : {0, 1}) {
        table[t1][f] = Gluing{t2, Perm4{}};
        table[t2][f] = Gluing{t1, Perm4{}};
    }
    auto attach = [&](int newt, int newf, const EdgeSlot& s, int face, const Perm4& new_to_old) {
        table[newt][newf] = Gluing{s.tet, new_to_old};
        table[s.tet][face] = Gluing{newt, new_to_old.inverse()};
    };
    const EdgeSlot& A = slots[sa];
    const EdgeSlot& A1 = slots[(sa + 1) % d];
    const EdgeSlot& B = slots[sb];
    const EdgeSlot& B1 = slots[(sb + 1) % d];
    // Cutting along A and B splits the ring of slots around the edge into the
    // runs sa+1..sb and sb+1..sa. t2 closes the first run and t1 the second,
    // so the edge splits into two classes whose degrees add up to d + 2.
    attach(t1, 3, A, A.y, *Perm4::from_images(A.a, A.b, A.x, A.y));
    attach(t1, 2, B1, B1.x, *Perm4::from_images(B1.a, B1.b, B1.x, B1.y));
    attach(t2, 3, A1, A1.x, *Perm4::from_images(A1.a, A1.b, A1.y, A1.x));
    attach(t2, 2, B, B.y, *Perm4::from_images(B.a, B.b, B.y, B.x));
    return Triangulation::from_table(std::move(table));
}

// --- 2-0 -------------------------------------------------------------------

inline Applicability can_apply_20(const Triangulation& tri, const Skeleton& sk, const std::vector<EdgeSlot>& s,
                                  bool boundary) {
    if (boundary) return {false, "edge lies on the boundary"};
    if (s.size() != 2) return {false, "edge degree is " + std::to_string(s.size()) + ", not 2"};
    const int t1 = s[0].tet, t2 = s[1].tet;
    if (t1 == t2) return {false, "the two tetrahedra around the edge coincide"};
    const Perm4 p = tri.gluing(t1, s[0].y)->perm;
    const Perm4 q = tri.gluing(t2, s[1].y)->perm;
    if (q != p.inverse()) return {false, "the two tetrahedra do not form a pillow"};
    for (const auto& sl : s)
        for (int f : {sl.a, sl.b})
            if (const auto& g = tri.gluing(sl.tet, f); g && (g->tet == t1 || g->tet == t2))
                return {false, "the two tetrahedra are glued along more than two faces"};
    // Flattening merges the two edges opposite the degree-2 edge; if they are
    // already one class the vertex links tear.
    if (sk.edge_of[t1][edge_index(s[0].x, s[0].y)] == sk.edge_of[t2][edge_index(s[1].x, s[1].y)])
        return {false, "the edges opposite the degree-2 edge are already identified"};
    if (sk.edges[sk.edge_of[t1][edge_index(s[0].x, s[0].y)]].boundary &&
        sk.edges[sk.edge_of[t2][edge_index(s[1].x, s[1].y)]].boundary)
        return {false, "both edges opposite the degree-2 edge lie on the boundary"};
    for (int end : {s[0].a, s[0].b})
        if (!tri.is_glued(t1, end) && !tri.is_glued(t2, p[end]))
            return {false, "a pair of outer faces is unglued on both sides"};
    return {true, ""};
}

inline Triangulation apply_20(const Triangulation& tri, const std::vector<EdgeSlot>& s) {
    const int n = tri.size();
    const int t1 = s[0].tet, t2 = s[1].tet;
    const Perm4 p = tri.gluing(t1, s[0].y)->perm;
    std::vector<int> pos(n, -1);
    int k = 0;
    for (int t = 0; t < n; ++t)
        if (t != t1 && t != t2) pos[t] = k++;
    GluingTable table(n - 2);
    for (int t = 0; t < n; ++t) {
        if (pos[t] < 0) continue;
        for (int f = 0; f < 4; ++f)
            if (const auto& g = tri.gluing(t, f); g && pos[g->tet] >= 0) table[pos[t]][f] = Gluing{pos[g->tet], g->perm};
    }
    for (int end : {s[0].a, s[0].b}) {
        const auto& g1 = tri.gluing(t1, end);
        const auto& g2 = tri.gluing(t2, p[end]);
        if (g1 && g2) {
            const Perm4 x_to_y = g2->perm * p * g1->perm.inverse();
            const int xf = g1->perm[end];
            table[pos[g1->tet]][xf] = Gluing{pos[g2->tet], x_to_y};
            table[pos[g2->tet]][x_to_y[xf]] = Gluing{pos[g1->tet], x_to_y.inverse()};
        }
    }
    return Triangulation::from_table(std::move(table));
}

}  // namespace detail

inline Applicability can_apply(const Triangulation& tri, const Move& m) {
    switch (m.type) {
    case MoveType::M23: return detail::can_apply_23(tri, m.a, m.b);
    case MoveType::M14: detail::check_tet(tri, m.a); return {true, ""};
    default: break;
    }
    const Skeleton sk = skeleton(tri);
    switch (m.type) {
    case MoveType::M32: {
        const auto& ec = detail::check_edge(sk, m.a);
        return detail::can_apply_32(ec.slots, ec.boundary);
    }
    case MoveType::M41:
        if (m.a < 0 || m.a >= static_cast<int>(sk.vertices.size()))
            throw Error(Errc::ParameterOutOfRange, "vertex class out of range");
        return detail::analyse_41(tri, sk, m.a, nullptr);
    case MoveType::M02: {
        const auto& ec = detail::check_edge(sk, m.a);
        return detail::can_apply_02(sk, ec.slots, ec.boundary, m.b, m.c);
    }
    case MoveType::M20: {
        const auto& ec = detail::check_edge(sk, m.a);
        return detail::can_apply_20(tri, sk, ec.slots, ec.boundary);
    }
    default: return {false, "unknown move"};
    }
}

inline Triangulation apply_move(const Triangulation& tri, const Move& m) {
    auto refuse = [&](const Applicability& why) {
        return Error(Errc::MoveNotApplicable, m.script() + ": " + why.reason);
    };
    if (m.type == MoveType::M23) {
        if (auto ok = detail::can_apply_23(tri, m.a, m.b); !ok) throw refuse(ok);
        return detail::apply_23(tri, m.a, m.b);
    }
    if (m.type == MoveType::M14) {
        detail::check_tet(tri, m.a);
        return detail::apply_14(tri, m.a);
    }
    const Skeleton sk = skeleton(tri);
    switch (m.type) {
    case MoveType::M32: {
        const auto& ec = detail::check_edge(sk, m.a);
        if (auto ok = detail::can_apply_32(ec.slots, ec.boundary); !ok) throw refuse(ok);
        return detail::apply_32(tri, ec.slots);
    }
    case MoveType::M41: {
        if (m.a < 0 || m.a >= static_cast<int>(sk.vertices.size()))
            throw Error(Errc::ParameterOutOfRange, "vertex class out of range");
        detail::Star41 st;
        if (auto ok = detail::analyse_41(tri, sk, m.a, &st); !ok) throw refuse(ok);
        return detail::apply_41(tri, st);
    }
    case MoveType::M02: {
        const auto& ec = detail::check_edge(sk, m.a);
        if (auto ok = detail::can_apply_02(sk, ec.slots, ec.boundary, m.b, m.c); !ok) throw refuse(ok);
        return detail::apply_02(tri, ec.slots, m.b, m.c);
    }
    case MoveType::M20: {
        const auto& ec = detail::check_edge(sk, m.a);
        if (auto ok = detail::can_apply_20(tri, sk, ec.slots, ec.boundary); !ok) throw refuse(ok);
        return detail::apply_20(tri, ec.slots);
    }
    default: throw Error(Errc::MoveNotApplicable, "unknown move");
    }
}

inline Triangulation move_23(const Triangulation& t, int tet, int face) { return apply_move(t, Move::m23(tet, face)); }
inline Triangulation move_32(const Triangulation& t, int edge) { return apply_move(t, Move::m32(edge)); }
inline Triangulation move_14(const Triangulation& t, int tet) { return apply_move(t, Move::m14(tet)); }
inline Triangulation move_41(const Triangulation& t, int vertex) { return apply_move(t, Move::m41(vertex)); }
inline Triangulation move_02(const Triangulation& t, int edge, int slot_a, int slot_b) {
    return apply_move(t, Move::m02(edge, slot_a, slot_b));
}
inline Triangulation move_20(const Triangulation& t, int edge) { return apply_move(t, Move::m20(edge)); }

inline const std::set<MoveType> kAllMoveTypes{MoveType::M23, MoveType::M32, MoveType::M14,
                                              MoveType::M41, MoveType::M02, MoveType::M20};

/// Every applicable move of the requested kinds, ordered by kind then parameters.
inline std::vector<Move> enumerate_moves(const Triangulation& tri, const std::set<MoveType>& kinds) {
    std::vector<Move> out;
    const bool need_sk = kinds.count(MoveType::M32) || kinds.count(MoveType::M41) || kinds.count(MoveType::M02) ||
                         kinds.count(MoveType::M20);
    const Skeleton sk = need_sk ? skeleton(tri) : Skeleton{};
    for (MoveType k : kinds) {
        switch (k) {
        case MoveType::M23:
            for (const auto& g : tri.glued_pairs())
                if (g.tet != g.dest_tet) out.push_back(Move::m23(g.tet, g.face));
            break;
        case MoveType::M32:
            for (int e = 0; e < static_cast<int>(sk.edges.size()); ++e)
                if (detail::can_apply_32(sk.edges[e].slots, sk.edges[e].boundary)) out.push_back(Move::m32(e));
            break;
        case MoveType::M14:
            for (int t = 0; t < tri.size(); ++t) out.push_back(Move::m14(t));
            break;
        case MoveType::M41:
            for (int v = 0; v < static_cast<int>(sk.vertices.size()); ++v)
                if (detail::analyse_41(tri, sk, v, nullptr)) out.push_back(Move::m41(v));
            break;
        case MoveType::M02:
            for (int e = 0; e < static_cast<int>(sk.edges.size()); ++e) {
                const auto& ec = sk.edges[e];
                const int faces = detail::face_slots(ec.slots, ec.boundary);
                for (int i = 0; i < faces; ++i)
                    for (int j = i + 1; j < faces; ++j)
                        if (detail::can_apply_02(sk, ec.slots, ec.boundary, i, j)) out.push_back(Move::m02(e, i, j));
            }
            break;
        case MoveType::M20:
            for (int e = 0; e < static_cast<int>(sk.edges.size()); ++e)
                if (detail::can_apply_20(tri, sk, sk.edges[e].slots, sk.edges[e].boundary)) out.push_back(Move::m20(e));
            break;
        }
    }
    return out;
}

/// Moves and their inverses; M14/M41 leave one-vertex/ideal triangulations.
constexpr MoveType inverse_type(MoveType m) noexcept {
    switch (m) {
    case MoveType::M23: return MoveType::M32;
    case MoveType::M32: return MoveType::M23;
    case MoveType::M14: return MoveType::M41;
    case MoveType::M41: return MoveType::M14;
    case MoveType::M02: return MoveType::M20;
    case MoveType::M20: return MoveType::M02;
    }
    return m;
}

}  // namespace tri
