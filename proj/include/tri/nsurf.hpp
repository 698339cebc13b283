#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "tri/error.hpp"
#include "tri/skeleton.hpp"
#include "tri/triangulation.hpp"

namespace tri {

/// 7n standard coordinates: per tetrahedron t, entries 7t+v (v = 0..3) count
/// triangles cutting off vertex v, entries 7t+4+k count quads of pair k. The
/// quad of pair k misses both edges of pair k and separates {0, k+1} from the
/// other two vertices.
using NormalCoordVector = std::vector<std::int64_t>;

inline constexpr int triangle_coord(int t, int v) noexcept { return 7 * t + v; }
inline constexpr int quad_coord(int t, int k) noexcept { return 7 * t + 4 + k; }

/// Quad type meeting face f in an arc that cuts off corner v.
inline constexpr int quad_at_corner(int v, int f) noexcept { return edge_pair(edge_index(v, f)); }

struct MatchingRow {
    std::vector<std::pair<int, int>> terms;  // (coordinate, coefficient), coefficients nonzero
};

struct MatchingSystem {
    int tetrahedra = 0;
    std::vector<MatchingRow> rows;
    int columns() const noexcept { return 7 * tetrahedra; }
};

/// One row per (glued face pair, corner of the face).
inline MatchingSystem matching_system(const Triangulation& tri) {
    if (!tri.is_closed()) throw Error(Errc::HasBoundaryFaces, "matching equations need every face glued");
    MatchingSystem sys;
    sys.tetrahedra = tri.size();
    for (const auto& g : tri.glued_pairs()) {
        for (int v = 0; v < 4; ++v) {
            if (v == g.face) continue;
            const int w = g.perm[v];
            std::vector<int> coef(7 * sys.tetrahedra, 0);
            ++coef[triangle_coord(g.tet, v)];
            ++coef[quad_coord(g.tet, quad_at_corner(v, g.face))];
            --coef[triangle_coord(g.dest_tet, w)];
            --coef[quad_coord(g.dest_tet, quad_at_corner(w, g.dest_face))];
            MatchingRow row;
            for (int c = 0; c < static_cast<int>(coef.size()); ++c)
                if (coef[c]) row.terms.emplace_back(c, coef[c]);
            sys.rows.push_back(std::move(row));
        }
    }
    return sys;
}

inline bool satisfies_matching(const MatchingSystem& sys, std::span<const std::int64_t> v) {
    for (const auto& row : sys.rows) {
        std::int64_t s = 0;
        for (auto [c, a] : row.terms) s += a * v[c];
        if (s != 0) return false;
    }
    return true;
}

inline bool is_admissible(std::span<const std::int64_t> v) {
    if (v.size() % 7 != 0) return false;
    for (std::size_t t = 0; t < v.size() / 7; ++t) {
        int quads = 0;
        for (int k = 0; k < 3; ++k) quads += v[7 * t + 4 + k] != 0;
        if (quads > 1) return false;
    }
    return std::all_of(v.begin(), v.end(), [](std::int64_t x) { return x >= 0; });
}

inline constexpr int kDefaultNormalSurfaceBound = 8;

namespace detail {

template <class T>
bool checked_bareiss_rank(std::vector<std::vector<T>> m, int& rank_out) {
    const std::size_t rows = m.size();
    const std::size_t cols = rows ? m[0].size() : 0;
    std::size_t r = 0;
    T prev = 1;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && m[p][c] == 0) ++p;
        if (p == rows) continue;
        std::swap(m[p], m[r]);
        for (std::size_t i = r + 1; i < rows; ++i) {
            for (std::size_t j = c + 1; j < cols; ++j) {
                if constexpr (std::is_same_v<T, std::int64_t>) {
                    std::int64_t x, y, z;
                    if (__builtin_mul_overflow(m[r][c], m[i][j], &x) || __builtin_mul_overflow(m[i][c], m[r][j], &y) ||
                        __builtin_sub_overflow(x, y, &z))
                        return false;
                    m[i][j] = z / prev;
                } else {
                    m[i][j] = (m[r][c] * m[i][j] - m[i][c] * m[r][j]) / prev;
                }
            }
            m[i][c] = 0;
        }
        prev = m[r][c];
        ++r;
    }
    rank_out = static_cast<int>(r);
    return true;
}

/// Exact rank of an integer matrix (fraction-free elimination).
inline int integer_rank(const std::vector<std::vector<std::int64_t>>& m) {
    int rank = 0;
    if (checked_bareiss_rank(m, rank)) return rank;
    std::vector<std::vector<boost::multiprecision::cpp_int>> big;
    for (const auto& row : m) big.emplace_back(row.begin(), row.end());
    checked_bareiss_rank(std::move(big), rank);
    return rank;
}

inline std::int64_t checked_mul_add(std::int64_t a, std::int64_t x, std::int64_t b, std::int64_t y) {
    std::int64_t p, q, s;
    if (__builtin_mul_overflow(a, x, &p) || __builtin_mul_overflow(b, y, &q) || __builtin_add_overflow(p, q, &s))
        throw Error(Errc::SizeBoundExceeded, "normal coordinate overflow");
    return s;
}

inline void make_primitive(NormalCoordVector& v) {
    std::int64_t g = 0;
    for (auto x : v) g = std::gcd(g, x);
    if (g > 1)
        for (auto& x : v) x /= g;
}

inline bool admissible_support(const std::vector<char>& support, int tetrahedra) {
    for (int t = 0; t < tetrahedra; ++t)
        if (support[quad_coord(t, 0)] + support[quad_coord(t, 1)] + support[quad_coord(t, 2)] > 1) return false;
    return true;
}

}  // namespace detail

/// Admissible extreme rays of {v >= 0 : matching equations}, as primitive
/// integer vectors in lexicographic order. Filtered double description: rays
/// with two quad types in one tetrahedron are dropped as they appear, and
/// adjacency is decided by the rank of the processed equations on the joint
/// support.
inline std::vector<NormalCoordVector> enumerate_vertex_solutions(const Triangulation& tri,
                                                                  int bound = kDefaultNormalSurfaceBound) {
    if (tri.size() > bound)
        throw Error(Errc::SizeBoundExceeded,
                    std::to_string(tri.size()) + " tetrahedra exceeds the bound " + std::to_string(bound));
    const MatchingSystem sys = matching_system(tri);
    const int n = sys.tetrahedra, dim = sys.columns();

    std::vector<NormalCoordVector> rays;
    for (int i = 0; i < dim; ++i) {
        NormalCoordVector e(dim, 0);
        e[i] = 1;
        rays.push_back(std::move(e));
    }
    std::vector<std::vector<std::int64_t>> processed;

    for (const auto& row : sys.rows) {
        if (row.terms.empty()) continue;
        std::vector<std::int64_t> dense(dim, 0);
        for (auto [c, a] : row.terms) dense[c] = a;
        auto value = [&](const NormalCoordVector& r) {
            std::int64_t s = 0;
            for (auto [c, a] : row.terms) s += a * r[c];
            return s;
        };
        std::vector<NormalCoordVector> zero, pos, neg;
        std::vector<std::int64_t> pos_val, neg_val;
        for (auto& r : rays) {
            const auto s = value(r);
            if (s == 0) {
                zero.push_back(std::move(r));
            } else if (s > 0) {
                pos.push_back(std::move(r));
                pos_val.push_back(s);
            } else {
                neg.push_back(std::move(r));
                neg_val.push_back(-s);
            }
        }
        std::vector<NormalCoordVector> next = std::move(zero);
        for (std::size_t i = 0; i < pos.size(); ++i)
            for (std::size_t j = 0; j < neg.size(); ++j) {
                std::vector<char> support(dim, 0);
                int size = 0;
                for (int c = 0; c < dim; ++c) {
                    support[c] = pos[i][c] != 0 || neg[j][c] != 0;
                    size += support[c];
                }
                if (!detail::admissible_support(support, n)) continue;
                std::vector<std::vector<std::int64_t>> restricted;
                for (const auto& prow : processed) {
                    std::vector<std::int64_t> rr;
                    for (int c = 0; c < dim; ++c)
                        if (support[c]) rr.push_back(prow[c]);
                    restricted.push_back(std::move(rr));
                }
                if (detail::integer_rank(restricted) != size - 2) continue;
                NormalCoordVector combo(dim);
                for (int c = 0; c < dim; ++c)
                    combo[c] = detail::checked_mul_add(neg_val[j], pos[i][c], pos_val[i], neg[j][c]);
                detail::make_primitive(combo);
                next.push_back(std::move(combo));
            }
        rays = std::move(next);
        processed.push_back(std::move(dense));
    }
    std::sort(rays.begin(), rays.end());
    rays.erase(std::unique(rays.begin(), rays.end()), rays.end());
    return rays;
}

struct NormalSurface {
    NormalCoordVector vector;
    std::int64_t euler_char = 0;
    bool connected = false;
    bool vertex_linking = false;
    std::optional<int> link_vertex;  // vertex class when vertex_linking
    std::int64_t multiplicity = 0;   // copies of that link
};

namespace detail {

struct LongUnionFind {
    std::vector<std::size_t> parent;
    explicit LongUnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), std::size_t{0}); }
    std::size_t find(std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
};

}  // namespace detail

/// Euler characteristic, connectedness and vertex-linking flag of the normal
/// surface with coordinates v.
inline NormalSurface analyze(const Triangulation& tri, std::span<const std::int64_t> v) {
    const int n = tri.size();
    if (static_cast<int>(v.size()) != 7 * n)
        throw Error(Errc::LengthMismatch, "normal coordinate vector has length " + std::to_string(v.size()) +
                                              ", expected " + std::to_string(7 * n));
    if (!is_admissible(v)) throw Error(Errc::NotAdmissible, "negative entry or two quad types in one tetrahedron");
    const MatchingSystem sys = matching_system(tri);
    if (!satisfies_matching(sys, v)) throw Error(Errc::MatchingViolated, "vector violates a matching equation");
    const Skeleton sk = skeleton(tri);

    NormalSurface out;
    out.vector.assign(v.begin(), v.end());
    std::int64_t verts = 0, arcs = 0, discs = 0;
    for (const auto& ec : sk.edges) {
        const auto& s = ec.slots.front();
        const int pair = edge_pair(s.edge());
        verts += v[triangle_coord(s.tet, s.a)] + v[triangle_coord(s.tet, s.b)];
        for (int k = 0; k < 3; ++k)
            if (k != pair) verts += v[quad_coord(s.tet, k)];
    }
    std::vector<char> face_done(sk.face_count, 0);
    for (int t = 0; t < n; ++t)
        for (int f = 0; f < 4; ++f) {
            if (face_done[sk.face_of[t][f]]) continue;
            face_done[sk.face_of[t][f]] = 1;
            for (int c = 0; c < 4; ++c)
                if (c != f) arcs += v[triangle_coord(t, c)] + v[quad_coord(t, quad_at_corner(c, f))];
        }
    for (auto x : v) discs += x;
    out.euler_char = verts - arcs + discs;

    // Disc ids: consecutive blocks per coordinate.
    std::vector<std::size_t> offset(7 * n + 1, 0);
    for (int c = 0; c < 7 * n; ++c) offset[c + 1] = offset[c] + static_cast<std::size_t>(v[c]);
    // Disc meeting face f of t in the i-th arc counted outward from corner c.
    auto disc_at = [&](int t, int f, int c, std::int64_t i) -> std::size_t {
        const std::int64_t tri_count = v[triangle_coord(t, c)];
        if (i < tri_count) return offset[triangle_coord(t, c)] + static_cast<std::size_t>(i);
        const int k = quad_at_corner(c, f);
        std::int64_t j = i - tri_count;
        const bool zero_side = c == 0 || c == k + 1;
        if (!zero_side) j = v[quad_coord(t, k)] - 1 - j;
        return offset[quad_coord(t, k)] + static_cast<std::size_t>(j);
    };
    detail::LongUnionFind uf(offset.back());
    for (const auto& g : tri.glued_pairs())
        for (int c = 0; c < 4; ++c) {
            if (c == g.face) continue;
            const int w = g.perm[c];
            const std::int64_t count = v[triangle_coord(g.tet, c)] + v[quad_coord(g.tet, quad_at_corner(c, g.face))];
            for (std::int64_t i = 0; i < count; ++i)
                uf.unite(disc_at(g.tet, g.face, c, i), disc_at(g.dest_tet, g.dest_face, w, i));
        }
    std::size_t components = 0;
    for (std::size_t d = 0; d < offset.back(); ++d) components += uf.find(d) == d;
    out.connected = components == 1;

    bool quads_zero = true;
    for (int t = 0; t < n; ++t)
        for (int k = 0; k < 3; ++k) quads_zero = quads_zero && v[quad_coord(t, k)] == 0;
    if (quads_zero && discs > 0) {
        std::optional<int> found;
        std::int64_t mult = 0;
        bool ok = true;
        for (int t = 0; t < n && ok; ++t)
            for (int u = 0; u < 4 && ok; ++u) {
                const auto x = v[triangle_coord(t, u)];
                if (x == 0) continue;
                if (!found) {
                    found = sk.vertex_of[t][u];
                    mult = x;
                } else if (*found != sk.vertex_of[t][u] || x != mult) {
                    ok = false;
                }
            }
        if (ok && found) {
            for (int t = 0; t < n && ok; ++t)
                for (int u = 0; u < 4 && ok; ++u)
                    if (sk.vertex_of[t][u] == *found && v[triangle_coord(t, u)] != mult) ok = false;
            if (ok) {
                out.vertex_linking = true;
                out.link_vertex = found;
                out.multiplicity = mult;
            }
        }
    }
    return out;
}

/// Triangles of vertex class `cls`, each with coefficient 1.
inline NormalCoordVector vertex_link_vector(const Triangulation& tri, const Skeleton& sk, int cls) {
    NormalCoordVector v(7 * tri.size(), 0);
    for (int t = 0; t < tri.size(); ++t)
        for (int u = 0; u < 4; ++u)
            if (sk.vertex_of[t][u] == cls) v[triangle_coord(t, u)] = 1;
    return v;
}

enum class Efficiency { Pass, Fail, Inconclusive };

constexpr std::string_view efficiency_name(Efficiency e) noexcept {
    switch (e) {
    case Efficiency::Pass: return "pass";
    case Efficiency::Fail: return "fail";
    case Efficiency::Inconclusive: return "inconclusive";
    }
    return "inconclusive";
}

/// Pass is decided over vertex solutions only; sidedness of chi = 1 and
/// chi = 0 surfaces is not examined.
struct EfficiencyVerdict {
    Efficiency outcome = Efficiency::Inconclusive;
    std::optional<NormalSurface> witness;
    std::string note;
};

namespace detail {

inline EfficiencyVerdict efficiency_scan(const Triangulation& tri, int bound, bool include_tori) {
    EfficiencyVerdict out;
    if (tri.size() > bound) {
        out.note = "size bound " + std::to_string(bound) + " exceeded";
        return out;
    }
    for (const auto& v : enumerate_vertex_solutions(tri, bound)) {
        auto s = analyze(tri, v);
        if (!s.connected || s.vertex_linking) continue;
        const bool bad = s.euler_char == 2 || s.euler_char == 1 || (include_tori && s.euler_char == 0);
        if (bad) {
            out.outcome = Efficiency::Fail;
            out.note = s.euler_char == 2 ? "normal sphere" : s.euler_char == 1 ? "projective plane" : "torus or Klein bottle";
            out.witness = std::move(s);
            return out;
        }
    }
    out.outcome = Efficiency::Pass;
    out.note = "vertex-level";
    return out;
}

}  // namespace detail

inline EfficiencyVerdict check_0_efficient(const Triangulation& tri, int bound = kDefaultNormalSurfaceBound) {
    return detail::efficiency_scan(tri, bound, false);
}

inline EfficiencyVerdict check_1_efficient(const Triangulation& tri, int bound = kDefaultNormalSurfaceBound) {
    return detail::efficiency_scan(tri, bound, true);
}

}  // namespace tri
