#pragma once

#include <charconv>
#include <string>
#include <string_view>
#include <vector>

#include "tri/error.hpp"
#include "tri/triangulation.hpp"

namespace tri {

/// Canonical text for a connected triangulation up to relabeling of
/// tetrahedra and of vertices within each tetrahedron.
///
/// Format: `n|f,f,f,f;f,f,f,f;...` with one group per tetrahedron in canonical
/// order and one field per face, each `b` (unglued) or `<dest>/<p0p1p2p3>`.
struct IsoSig {
    std::string text;

    auto operator<=>(const IsoSig&) const = default;
};

namespace detail {

/// Relabeling found by the canonical search: tetrahedron order and, for each
/// original tetrahedron, the map from its labels to canonical labels.
struct CanonicalLabeling {
    std::vector<int> order;       // order[k] = original tetrahedron placed at index k
    std::vector<Perm4> relabel;   // relabel[t] maps original labels of t to canonical labels
};

inline CanonicalLabeling canonical_labeling(const Triangulation& tri) {
    if (!tri.is_connected())
        throw Error(Errc::DisconnectedTriangulation, "isomorphism signatures need a connected triangulation");
    const int n = tri.size();
    std::vector<int> best;
    CanonicalLabeling best_lab;
    std::vector<int> tokens;
    tokens.reserve(8 * n);
    std::vector<int> new_idx(n);
    CanonicalLabeling lab;
    lab.order.reserve(n);
    lab.relabel.resize(n);

    for (int start = 0; start < n; ++start)
        for (const Perm4& sigma : all_perm4) {
            std::fill(new_idx.begin(), new_idx.end(), -1);
            lab.order.assign(1, start);
            lab.relabel[start] = sigma;
            new_idx[start] = 0;
            tokens.clear();
            // -1: undecided, 0: equal so far, 1: worse than best.
            int cmp = best.empty() ? -1 : 0;
            for (int k = 0; k < n && cmp != 1; ++k) {
                const int old = lab.order[k];
                const Perm4 inv = lab.relabel[old].inverse();
                for (int nf = 0; nf < 4; ++nf) {
                    const auto& g = tri.gluing(old, inv[nf]);
                    int a = -1, b = -1;
                    if (g) {
                        if (new_idx[g->tet] < 0) {
                            new_idx[g->tet] = static_cast<int>(lab.order.size());
                            lab.order.push_back(g->tet);
                            lab.relabel[g->tet] = lab.relabel[old] * g->perm.inverse();
                        }
                        a = new_idx[g->tet];
                        b = (lab.relabel[g->tet] * g->perm * inv).index();
                    }
                    for (int tok : {a, b}) {
                        if (cmp == 0) {
                            const int ref = best[tokens.size()];
                            if (tok < ref)
                                cmp = -1;
                            else if (tok > ref)
                                cmp = 1;
                        }
                        tokens.push_back(tok);
                    }
                    if (cmp == 1) break;
                }
            }
            if (cmp == -1) {
                best = tokens;
                best_lab = lab;
            }
        }
    return best_lab;
}

}  // namespace detail

/// Applies a relabeling: tetrahedron order[k] becomes tetrahedron k, and the
/// vertices of original tetrahedron t are renamed by relabel[t].
inline Triangulation relabel(const Triangulation& tri, const std::vector<int>& order, const std::vector<Perm4>& maps) {
    const int n = tri.size();
    std::vector<int> pos(n, -1);
    for (int k = 0; k < n; ++k) pos[order[k]] = k;
    GluingTable table(n);
    for (int t = 0; t < n; ++t)
        for (int f = 0; f < 4; ++f)
            if (const auto& g = tri.gluing(t, f))
                table[pos[t]][maps[t][f]] = Gluing{pos[g->tet], maps[g->tet] * g->perm * maps[t].inverse()};
    return Triangulation::from_table(std::move(table));
}

inline Triangulation canonical_form(const Triangulation& tri) {
    const auto lab = detail::canonical_labeling(tri);
    return relabel(tri, lab.order, lab.relabel);
}

/// Signature text of a triangulation already in canonical form.
inline IsoSig signature_of_canonical(const Triangulation& c) {
    std::string s = std::to_string(c.size()) + "|";
    for (int t = 0; t < c.size(); ++t) {
        if (t) s += ';';
        for (int f = 0; f < 4; ++f) {
            if (f) s += ',';
            const auto& g = c.gluing(t, f);
            if (!g)
                s += 'b';
            else
                s += std::to_string(g->tet) + "/" + g->perm.str();
        }
    }
    return {std::move(s)};
}

inline IsoSig iso_sig(const Triangulation& tri) { return signature_of_canonical(canonical_form(tri)); }

/// Rebuilds the canonical triangulation named by a signature.
inline Triangulation from_iso_sig(std::string_view text) {
    auto fail = [&](const std::string& why) -> Error {
        return Error(Errc::Parse, "bad isomorphism signature '" + std::string(text) + "': " + why);
    };
    const auto bar = text.find('|');
    if (bar == std::string_view::npos) throw fail("missing '|'");
    int n = 0;
    {
        auto [p, ec] = std::from_chars(text.data(), text.data() + bar, n);
        if (ec != std::errc() || p != text.data() + bar || n < 1) throw fail("bad tetrahedron count");
    }
    GluingTable table(n);
    std::string_view rest = text.substr(bar + 1);
    for (int t = 0; t < n; ++t) {
        const auto semi = rest.find(';');
        if ((semi == std::string_view::npos) != (t == n - 1)) throw fail("wrong number of tetrahedra");
        std::string_view group = rest.substr(0, semi);
        rest = semi == std::string_view::npos ? std::string_view{} : rest.substr(semi + 1);
        for (int f = 0; f < 4; ++f) {
            const auto comma = group.find(',');
            if ((comma == std::string_view::npos) != (f == 3)) throw fail("each tetrahedron needs four fields");
            std::string_view field = group.substr(0, comma);
            group = comma == std::string_view::npos ? std::string_view{} : group.substr(comma + 1);
            if (field == "b") continue;
            const auto slash = field.find('/');
            if (slash == std::string_view::npos) throw fail("field without '/'");
            int dest = 0;
            auto [p, ec] = std::from_chars(field.data(), field.data() + slash, dest);
            if (ec != std::errc() || p != field.data() + slash || dest < 0 || dest >= n)
                throw fail("bad destination index");
            auto perm = Perm4::parse(field.substr(slash + 1));
            if (!perm) throw fail("bad permutation");
            table[t][f] = Gluing{dest, *perm};
        }
    }
    try {
        return Triangulation::from_table(std::move(table));
    } catch (const Error& e) {
        throw fail(e.what());
    }
}

}  // namespace tri
