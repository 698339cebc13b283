#pragma once
// First homology by determinantal divisors: d_k is the gcd of all k x k
// minors of the face boundary matrix, invariant factors are d_k / d_{k-1}.
// Only usable for small matrices; no row reduction anywhere.

#include <map>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "oracles/skeleton_oracle.hpp"

namespace oracle {

using Big = boost::multiprecision::cpp_int;
using Mat = std::vector<std::vector<Big>>;

struct Boundaries {
    Mat d1;  // V x E
    Mat d2;  // E x F
};

inline Boundaries boundaries(const tri::Triangulation& T) {
    const int n = T.size();
    const SkeletonFacts sf = skeleton_facts(T);
    // Orient every edge slot against its class with a parity DSU: slot s in
    // class direction iff parity(s) == parity(rep).
    ParityDSU pe(6 * n);
    for (int t = 0; t < n; ++t)
        for (int f = 0; f < 4; ++f) {
            const auto& g = T.gluing(t, f);
            if (!g) continue;
            for (int u = 0; u < 4; ++u)
                for (int v = u + 1; v < 4; ++v) {
                    if (u == f || v == f) continue;
                    const int flip = g->perm[u] > g->perm[v] ? 1 : 0;
                    pe.join(6 * t + eidx(u, v), 6 * g->tet + eidx(g->perm[u], g->perm[v]), flip);
                }
        }
    const int E = static_cast<int>(sf.edge_degrees.size());
    int V = 0;
    for (int c : sf.vertex_class) V = std::max(V, c + 1);
    auto sgn = [&](int slot) { return pe.find(slot).second ? -1 : 1; };

    Boundaries b;
    b.d1.assign(V, std::vector<Big>(E, 0));
    std::vector<bool> seen(E, false);
    for (int t = 0; t < n; ++t)
        for (int u = 0; u < 4; ++u)
            for (int v = u + 1; v < 4; ++v) {
                const int s = 6 * t + eidx(u, v);
                const int e = sf.edge_class[s];
                if (seen[e]) continue;
                seen[e] = true;
                int tail = sf.vertex_class[4 * t + u], head = sf.vertex_class[4 * t + v];
                if (sgn(s) < 0) std::swap(tail, head);
                b.d1[head][e] += 1;
                b.d1[tail][e] -= 1;
            }

    // Faces: one column per glued pair or unglued face, keyed by its lower (t, f).
    std::vector<std::pair<int, int>> faces;
    for (int t = 0; t < n; ++t)
        for (int f = 0; f < 4; ++f) {
            const auto& g = T.gluing(t, f);
            if (!g || std::pair(t, f) < std::pair(g->tet, g->perm[f])) faces.emplace_back(t, f);
        }
    b.d2.assign(E, std::vector<Big>(faces.size(), 0));
    for (std::size_t c = 0; c < faces.size(); ++c) {
        auto [t, f] = faces[c];
        std::vector<int> w;
        for (int v = 0; v < 4; ++v)
            if (v != f) w.push_back(v);
        const int terms[3][3] = {{w[1], w[2], 1}, {w[0], w[2], -1}, {w[0], w[1], 1}};
        for (const auto& term : terms) {
            const int s = 6 * t + eidx(term[0], term[1]);
            b.d2[sf.edge_class[s]][c] += term[2] * sgn(s);
        }
    }
    return b;
}

inline Big det(Mat m) {
    const std::size_t k = m.size();
    if (k == 0) return 1;
    if (k == 1) return m[0][0];
    Big total = 0;
    for (std::size_t j = 0; j < k; ++j) {
        if (m[0][j] == 0) continue;
        Mat minor;
        for (std::size_t r = 1; r < k; ++r) {
            std::vector<Big> row;
            for (std::size_t c = 0; c < k; ++c)
                if (c != j) row.push_back(m[r][c]);
            minor.push_back(std::move(row));
        }
        const Big term = m[0][j] * det(std::move(minor));
        total += (j % 2 ? -term : term);
    }
    return total;
}

inline void subsets(int n, int k, std::vector<std::vector<int>>& out, std::vector<int>& cur, int from = 0) {
    if (static_cast<int>(cur.size()) == k) {
        out.push_back(cur);
        return;
    }
    for (int i = from; i < n; ++i) {
        cur.push_back(i);
        subsets(n, k, out, cur, i + 1);
        cur.pop_back();
    }
}

/// Returns (rank, invariant factors > 1).
inline std::pair<int, std::vector<Big>> divisor_invariants(const Mat& m) {
    const int rows = static_cast<int>(m.size());
    const int cols = rows ? static_cast<int>(m[0].size()) : 0;
    std::vector<Big> d{1};
    for (int k = 1; k <= std::min(rows, cols); ++k) {
        std::vector<std::vector<int>> rs, cs;
        std::vector<int> cur;
        subsets(rows, k, rs, cur);
        subsets(cols, k, cs, cur);
        Big g = 0;
        for (const auto& r : rs)
            for (const auto& c : cs) {
                Mat sub(k, std::vector<Big>(k));
                for (int i = 0; i < k; ++i)
                    for (int j = 0; j < k; ++j) sub[i][j] = m[r[i]][c[j]];
                g = boost::multiprecision::gcd(g, abs(det(std::move(sub))));
            }
        if (g == 0) break;
        d.push_back(g);
    }
    std::vector<Big> inv;
    for (std::size_t k = 1; k < d.size(); ++k)
        if (d[k] / d[k - 1] > 1) inv.push_back(d[k] / d[k - 1]);
    return {static_cast<int>(d.size()) - 1, inv};
}

struct H1 {
    int rank = 0;
    std::vector<Big> torsion;
};

inline H1 homology_h1(const tri::Triangulation& T) {
    const Boundaries b = boundaries(T);
    const int E = static_cast<int>(b.d2.size());
    const int r1 = divisor_invariants(b.d1).first;
    auto [r2, tors] = divisor_invariants(b.d2);
    return {E - r1 - r2, tors};
}

}  // namespace oracle
