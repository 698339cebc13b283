#pragma once
// Slow exploration: every reachable triangulation is compared pairwise with
// the known ones by trying each starting tetrahedron and labelling and
// propagating through the face gluings. No signatures involved.

#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "tri/pachner.hpp"

namespace oracle {

inline bool isomorphic(const tri::Triangulation& A, const tri::Triangulation& B) {
    const int n = A.size();
    if (B.size() != n) return false;
    for (int b0 = 0; b0 < n; ++b0)
        for (const auto& s0 : tri::all_perm4) {
            std::vector<int> tet(n, -1), used(n, 0);
            std::vector<tri::Perm4> lab(n);
            tet[0] = b0;
            lab[0] = s0;
            used[b0] = 1;
            std::vector<int> queue{0};
            bool ok = true;
            for (std::size_t qi = 0; qi < queue.size() && ok; ++qi) {
                const int a = queue[qi];
                for (int f = 0; f < 4 && ok; ++f) {
                    const auto& ga = A.gluing(a, f);
                    const auto& gb = B.gluing(tet[a], lab[a][f]);
                    if (!ga || !gb) {
                        ok = !ga && !gb;
                        continue;
                    }
                    // Labels of ga->tet must satisfy lab' * pa = pb * lab.
                    const tri::Perm4 want = gb->perm * lab[a] * ga->perm.inverse();
                    if (tet[ga->tet] < 0) {
                        if (used[gb->tet]) {
                            ok = false;
                            continue;
                        }
                        tet[ga->tet] = gb->tet;
                        lab[ga->tet] = want;
                        used[gb->tet] = 1;
                        queue.push_back(ga->tet);
                    } else if (tet[ga->tet] != gb->tet || !(lab[ga->tet] == want)) {
                        ok = false;
                    }
                }
            }
            if (ok && static_cast<int>(queue.size()) == n) return true;
        }
    return false;
}

struct SlowGraph {
    std::vector<tri::Triangulation> nodes;
    std::set<std::pair<int, int>> arcs;  // unordered, a < b
};

inline SlowGraph slow_explore(const tri::Triangulation& seed, int max_tets, const std::set<tri::MoveType>& kinds) {
    SlowGraph g;
    g.nodes.push_back(seed);
    auto locate = [&](const tri::Triangulation& t) -> int {
        for (std::size_t i = 0; i < g.nodes.size(); ++i)
            if (isomorphic(g.nodes[i], t)) return static_cast<int>(i);
        g.nodes.push_back(t);
        return static_cast<int>(g.nodes.size()) - 1;
    };
    for (std::size_t i = 0; i < g.nodes.size(); ++i) {
        const tri::Triangulation cur = g.nodes[i];
        for (const auto& m : tri::enumerate_moves(cur, kinds)) {
            if (cur.size() + m.delta() > max_tets) continue;
            const int j = locate(tri::apply_move(cur, m));
            if (j != static_cast<int>(i)) g.arcs.emplace(std::min<int>(i, j), std::max<int>(i, j));
        }
    }
    return g;
}

}  // namespace oracle
