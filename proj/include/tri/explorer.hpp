#pragma once

#include <algorithm>
#include <array>
#include <atomic>
#include <exception>
#include <map>
#include <mutex>
#include <numeric>
#include <optional>
#include <set>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <thread>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "tri/angles.hpp"
#include "tri/error.hpp"
#include "tri/geom.hpp"
#include "tri/isosig.hpp"
#include "tri/nsurf.hpp"
#include "tri/pachner.hpp"
#include "tri/skeleton.hpp"
#include "tri/triangulation.hpp"

namespace tri {

// --- properties --------------------------------------------------------------

enum class PropertyId { Degree1Free, StrictAngle, TautAngle, SemiAngle, GeometricCandidate, ZeroEfficient, OneEfficient };

inline constexpr std::array<PropertyId, 7> kAllProperties{
    PropertyId::Degree1Free,        PropertyId::StrictAngle,   PropertyId::TautAngle,   PropertyId::SemiAngle,
    PropertyId::GeometricCandidate, PropertyId::ZeroEfficient, PropertyId::OneEfficient};

constexpr std::string_view property_name(PropertyId p) noexcept {
    switch (p) {
    case PropertyId::Degree1Free: return "degree1-free";
    case PropertyId::StrictAngle: return "strict-angle";
    case PropertyId::TautAngle: return "taut-angle";
    case PropertyId::SemiAngle: return "semi-angle";
    case PropertyId::GeometricCandidate: return "geometric";
    case PropertyId::ZeroEfficient: return "0-efficient";
    case PropertyId::OneEfficient: return "1-efficient";
    }
    return "degree1-free";
}

inline PropertyId parse_property(std::string_view s) {
    for (PropertyId p : kAllProperties)
        if (property_name(p) == s) return p;
    throw Error(Errc::Parse, "unknown property '" + std::string(s) + "'");
}

/// Decides a property. Angle, shape and efficiency properties are false for
/// triangulations they do not apply to (unglued faces, non-ideal or
/// non-orientable for shapes, efficiency beyond the enumeration bound).
inline bool evaluate_property(const Triangulation& tri, PropertyId id) {
    if (id == PropertyId::Degree1Free) return !has_degree_one_edge(tri);
    if (!tri.is_closed()) return false;
    switch (id) {
    case PropertyId::StrictAngle: return find_strict(tri).found();
    case PropertyId::TautAngle: return !find_taut(tri).empty();
    case PropertyId::SemiAngle: return find_semi(tri).has_value();
    case PropertyId::GeometricCandidate: {
        const Skeleton sk = skeleton(tri);
        if (classify(tri, sk) != TriClass::Ideal || !orient_tetrahedra(tri)) return false;
        return is_geometric_candidate(tri);
    }
    case PropertyId::ZeroEfficient: return check_0_efficient(tri).outcome == Efficiency::Pass;
    case PropertyId::OneEfficient: return check_1_efficient(tri).outcome == Efficiency::Pass;
    default: return false;
    }
}

/// Thread-safe memo of property values keyed by signature.
class PropertyCache {
public:
    bool get(const IsoSig& sig, const Triangulation& tri, PropertyId id) {
        const auto key = std::make_pair(sig.text, static_cast<int>(id));
        {
            std::lock_guard lock(mutex_);
            if (auto it = values_.find(key); it != values_.end()) return it->second;
        }
        const bool v = evaluate_property(tri, id);
        std::lock_guard lock(mutex_);
        values_.emplace(key, v);
        return v;
    }

    std::size_t size() const {
        std::lock_guard lock(mutex_);
        return values_.size();
    }

private:
    mutable std::mutex mutex_;
    std::map<std::pair<std::string, int>, bool> values_;
};

// --- graph -------------------------------------------------------------------

struct GraphNode {
    IsoSig sig;
    int n = 0;
    int depth = 0;
    Triangulation tri;  // canonical form; arc moves refer to its labels
    bool expanded = false;
    std::map<PropertyId, bool> props;
};

struct GraphArc {
    int a = 0;
    int b = 0;
    Move move;  // applies to nodes[a].tri and yields nodes[b].sig
};

struct PachnerGraph {
    int max_tets = 0;
    std::vector<GraphNode> nodes;
    std::vector<GraphArc> arcs;
    std::unordered_map<std::string, int> index;
    std::vector<std::string> warnings;

    std::optional<int> find(const IsoSig& sig) const {
        if (auto it = index.find(sig.text); it != index.end()) return it->second;
        return std::nullopt;
    }
};

inline constexpr std::size_t kDefaultNodeBudget = 1'000'000;

inline const std::set<MoveType> kDefaultExploreMoves{MoveType::M23, MoveType::M32};

struct ExploreOptions {
    int max_tets = 0;
    std::set<MoveType> moves = kDefaultExploreMoves;
    std::optional<PropertyId> predicate;
    int threads = 1;
    std::size_t budget = kDefaultNodeBudget;
    PropertyCache* cache = nullptr;
};

namespace detail {

struct Neighbour {
    Move move;
    IsoSig sig;
    Triangulation canon;
};

inline std::vector<Neighbour> neighbours(const Triangulation& tri, const std::set<MoveType>& kinds, int max_tets) {
    std::vector<Neighbour> out;
    for (const Move& m : enumerate_moves(tri, kinds)) {
        const int size = tri.size() + m.delta();
        if (size < 1 || size > max_tets) continue;
        Triangulation c = canonical_form(apply_move(tri, m));
        IsoSig s = signature_of_canonical(c);
        out.push_back({m, std::move(s), std::move(c)});
    }
    return out;
}

/// Runs job(i) for i in [0, count) on up to `threads` workers.
template <class Job>
void parallel_for(std::size_t count, int threads, Job job) {
    if (threads <= 1 || count < 2) {
        for (std::size_t i = 0; i < count; ++i) job(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> pool;
    const auto workers = std::min<std::size_t>(static_cast<std::size_t>(threads), count);
    for (std::size_t w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (std::size_t i; (i = next.fetch_add(1)) < count;) {
                try {
                    job(i);
                } catch (...) {
                    std::lock_guard lock(failure_mutex);
                    if (!failure) failure = std::current_exception();
                }
            }
        });
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
}

}  // namespace detail

/// Breadth-first closure of the seeds under the chosen moves, keeping
/// triangulations with at most max_tets tetrahedra, one node per signature.
/// With a predicate, nodes failing it are recorded but not expanded.
inline PachnerGraph explore(std::span<const Triangulation> seeds, const ExploreOptions& opt) {
    PachnerGraph g;
    g.max_tets = opt.max_tets;
    PropertyCache local;
    PropertyCache& cache = opt.cache ? *opt.cache : local;

    auto add_node = [&](Triangulation canon, IsoSig sig, int depth) {
        const int id = static_cast<int>(g.nodes.size());
        g.index.emplace(sig.text, id);
        const int n = canon.size();
        g.nodes.push_back({std::move(sig), n, depth, std::move(canon), false, {}});
        if (g.nodes.size() > opt.budget)
            throw Error(Errc::BudgetExceeded, "exploration passed " + std::to_string(opt.budget) + " nodes");
        return id;
    };

    for (const auto& s : seeds) {
        if (s.size() > opt.max_tets)
            throw Error(Errc::ParameterOutOfRange, "seed has " + std::to_string(s.size()) +
                                                       " tetrahedra, above the bound " + std::to_string(opt.max_tets));
        if (s.size() == 1)
            g.warnings.push_back("single-tetrahedron start: such triangulations are excluded from the usual "
                                 "connectivity statements for 2-3 and 3-2 moves");
        Triangulation c = canonical_form(s);
        IsoSig sig = signature_of_canonical(c);
        if (!g.find(sig)) add_node(std::move(c), std::move(sig), 0);
    }

    std::set<std::pair<int, int>> seen_arcs;
    std::size_t level_begin = 0;
    while (level_begin < g.nodes.size()) {
        const std::size_t level_end = g.nodes.size();
        struct Expansion {
            bool satisfied = true;
            std::vector<detail::Neighbour> out;
        };
        std::vector<Expansion> results(level_end - level_begin);
        detail::parallel_for(results.size(), opt.threads, [&](std::size_t i) {
            const GraphNode& node = g.nodes[level_begin + i];
            auto& r = results[i];
            if (opt.predicate) r.satisfied = cache.get(node.sig, node.tri, *opt.predicate);
            if (r.satisfied) r.out = detail::neighbours(node.tri, opt.moves, opt.max_tets);
        });
        for (std::size_t i = 0; i < results.size(); ++i) {
            const int a = static_cast<int>(level_begin + i);
            auto& r = results[i];
            if (opt.predicate) g.nodes[a].props[*opt.predicate] = r.satisfied;
            g.nodes[a].expanded = r.satisfied;
            for (auto& nb : r.out) {
                int b;
                if (auto found = g.find(nb.sig))
                    b = *found;
                else
                    b = add_node(std::move(nb.canon), nb.sig, g.nodes[a].depth + 1);
                if (a == b) continue;
                if (seen_arcs.insert(std::minmax(a, b)).second) g.arcs.push_back({a, b, nb.move});
            }
        }
        level_begin = level_end;
    }
    return g;
}

inline PachnerGraph explore(const Triangulation& seed, const ExploreOptions& opt) {
    return explore(std::span<const Triangulation>(&seed, 1), opt);
}

/// Fills in `id` for every node, using the cache.
inline void evaluate_properties(PachnerGraph& g, PropertyId id, PropertyCache& cache, int threads = 1) {
    std::vector<char> value(g.nodes.size(), 0);
    detail::parallel_for(g.nodes.size(), threads,
                         [&](std::size_t i) { value[i] = cache.get(g.nodes[i].sig, g.nodes[i].tri, id); });
    for (std::size_t i = 0; i < g.nodes.size(); ++i) g.nodes[i].props[id] = value[i];
}

// --- paths -------------------------------------------------------------------

struct MovePath {
    Triangulation start;
    std::vector<Move> moves;
    std::vector<IsoSig> signatures;  // after each move

    std::size_t length() const noexcept { return moves.size(); }
};

/// Applies the moves in order; InvalidPath if one does not apply.
inline MovePath replay(const Triangulation& start, std::vector<Move> moves) {
    MovePath p{start, std::move(moves), {}};
    Triangulation cur = start;
    for (std::size_t i = 0; i < p.moves.size(); ++i) {
        try {
            cur = apply_move(cur, p.moves[i]);
        } catch (const Error& e) {
            throw Error(Errc::InvalidPath, "step " + std::to_string(i + 1) + ": " + e.what());
        }
        p.signatures.push_back(iso_sig(cur));
    }
    return p;
}

/// Triangulations along the path, start included.
inline std::vector<Triangulation> path_triangulations(const MovePath& p) {
    std::vector<Triangulation> out{p.start};
    for (const auto& m : p.moves) out.push_back(apply_move(out.back(), m));
    return out;
}

inline bool path_is_consistent(const MovePath& p) {
    if (p.signatures.size() != p.moves.size()) return false;
    try {
        const auto tris = path_triangulations(p);
        for (std::size_t i = 0; i < p.moves.size(); ++i)
            if (iso_sig(tris[i + 1]) != p.signatures[i]) return false;
    } catch (const Error&) {
        return false;
    }
    return true;
}

namespace detail {

/// Moves from `start` through the given signatures, choosing at each step the
/// first enumerated move whose result has the next signature.
inline std::vector<Move> moves_through(const Triangulation& start, const std::vector<IsoSig>& sigs,
                                       const std::set<MoveType>& kinds) {
    std::vector<Move> out;
    Triangulation cur = start;
    for (const auto& next : sigs) {
        bool found = false;
        for (const Move& m : enumerate_moves(cur, kinds)) {
            if (cur.size() + m.delta() < 1) continue;
            Triangulation r = apply_move(cur, m);
            if (iso_sig(r) == next) {
                out.push_back(m);
                cur = std::move(r);
                found = true;
                break;
            }
        }
        if (!found) throw Error(Errc::InvalidPath, "no move reaches " + next.text);
    }
    return out;
}

inline std::set<MoveType> inverse_kinds(const std::set<MoveType>& kinds) {
    std::set<MoveType> out;
    for (MoveType k : kinds) out.insert(inverse_type(k));
    return out;
}

}  // namespace detail

/// Re-expresses a path so it starts from `new_start`, which must be isomorphic
/// to the old start.
inline MovePath rebase_path(const MovePath& p, const Triangulation& new_start) {
    if (iso_sig(new_start) != iso_sig(p.start)) throw Error(Errc::InvalidPath, "new start is not isomorphic");
    std::set<MoveType> kinds;
    for (const auto& m : p.moves) kinds.insert(m.type);
    return replay(new_start, detail::moves_through(new_start, p.signatures, kinds));
}

struct FindPathOptions {
    std::set<MoveType> moves = kDefaultExploreMoves;
    std::size_t budget = kDefaultNodeBudget;
};

/// Shortest move path from a to b among triangulations of at most max_tets
/// tetrahedra (bidirectional breadth-first search), or nullopt when none
/// exists within the bound.
inline std::optional<MovePath> find_path(const Triangulation& a, const Triangulation& b, int max_tets,
                                         const FindPathOptions& opt = {}) {
    const IsoSig sa = iso_sig(a), sb = iso_sig(b);
    if (sa == sb) return MovePath{a, {}, {}};
    if (a.size() > max_tets || b.size() > max_tets) return std::nullopt;

    struct Side {
        std::set<MoveType> kinds;
        std::unordered_map<std::string, std::string> parent;
        std::unordered_map<std::string, int> dist;
        std::vector<std::pair<IsoSig, Triangulation>> frontier;
    };
    Side fwd{opt.moves, {}, {}, {}}, bwd{detail::inverse_kinds(opt.moves), {}, {}, {}};
    fwd.dist[sa.text] = 0;
    bwd.dist[sb.text] = 0;
    fwd.frontier.emplace_back(sa, canonical_form(a));
    bwd.frontier.emplace_back(sb, canonical_form(b));

    std::optional<std::string> meet;
    int best = -1;
    while (!meet && !fwd.frontier.empty() && !bwd.frontier.empty()) {
        Side& s = fwd.frontier.size() <= bwd.frontier.size() ? fwd : bwd;
        Side& o = &s == &fwd ? bwd : fwd;
        std::vector<std::pair<IsoSig, Triangulation>> next;
        for (const auto& [sig, tri] : s.frontier) {
            const int d = s.dist[sig.text];
            for (auto& nb : detail::neighbours(tri, s.kinds, max_tets)) {
                if (s.dist.count(nb.sig.text)) continue;
                s.dist[nb.sig.text] = d + 1;
                s.parent[nb.sig.text] = sig.text;
                if (auto it = o.dist.find(nb.sig.text); it != o.dist.end()) {
                    const int total = d + 1 + it->second;
                    if (best < 0 || total < best) {
                        best = total;
                        meet = nb.sig.text;
                    }
                }
                next.emplace_back(std::move(nb.sig), std::move(nb.canon));
                if (fwd.dist.size() + bwd.dist.size() > opt.budget)
                    throw Error(Errc::BudgetExceeded, "path search passed " + std::to_string(opt.budget) + " nodes");
            }
        }
        s.frontier = std::move(next);
    }
    if (!meet) return std::nullopt;

    std::vector<IsoSig> chain;
    for (std::string x = *meet; x != sa.text; x = fwd.parent.at(x)) chain.push_back({x});
    std::reverse(chain.begin(), chain.end());
    for (std::string x = *meet; x != sb.text;) {
        x = bwd.parent.at(x);
        chain.push_back({x});
    }
    return replay(a, detail::moves_through(a, chain, opt.moves));
}

// --- connectivity ------------------------------------------------------------

struct Component {
    std::vector<int> nodes;       // indices into the report's graph
    std::size_t boundary_nodes = 0;  // members with a neighbour failing the predicate
    bool contains_seed = false;
};

struct ConnectivityReport {
    PropertyId predicate = PropertyId::Degree1Free;
    int max_tets = 0;
    PachnerGraph graph;
    std::vector<Component> components;  // ordered by smallest member
    std::size_t unsatisfied_seeds = 0;
    std::string note;
};

/// Components of the predicate-satisfying part of the bounded graph reached
/// from the seeds. Evidence within the bound only.
inline ConnectivityReport connectivity_report(std::span<const Triangulation> seeds, PropertyId predicate,
                                              ExploreOptions opt) {
    ConnectivityReport rep;
    rep.predicate = predicate;
    rep.max_tets = opt.max_tets;
    rep.note = "within bound " + std::to_string(opt.max_tets) + "; bounded-size evidence, not a connectivity proof";
    if (seeds.empty()) return rep;
    opt.predicate = predicate;
    rep.graph = explore(seeds, opt);
    const auto& g = rep.graph;
    const std::size_t n = g.nodes.size();
    auto ok = [&](int i) { return g.nodes[i].props.at(predicate); };

    detail::UnionFind uf(static_cast<int>(n));
    std::vector<char> boundary(n, 0);
    for (const auto& arc : g.arcs) {
        if (ok(arc.a) && ok(arc.b))
            uf.unite(arc.a, arc.b);
        else if (ok(arc.a))
            boundary[arc.a] = 1;
        else if (ok(arc.b))
            boundary[arc.b] = 1;
    }
    std::map<int, std::size_t> comp_of_root;
    for (std::size_t i = 0; i < n; ++i) {
        if (!ok(static_cast<int>(i))) {
            if (g.nodes[i].depth == 0) ++rep.unsatisfied_seeds;
            continue;
        }
        const int root = uf.find(static_cast<int>(i));
        auto [it, fresh] = comp_of_root.emplace(root, rep.components.size());
        if (fresh) rep.components.emplace_back();
        auto& c = rep.components[it->second];
        c.nodes.push_back(static_cast<int>(i));
        c.boundary_nodes += boundary[i];
        c.contains_seed = c.contains_seed || g.nodes[i].depth == 0;
    }
    return rep;
}

inline ConnectivityReport connectivity_report(const Triangulation& seed, PropertyId predicate, ExploreOptions opt) {
    return connectivity_report(std::span<const Triangulation>(&seed, 1), predicate, std::move(opt));
}

// --- move-path files ---------------------------------------------------------

/// `start <isoSig>` followed by one move-script line per move. Moves refer to
/// the canonical triangulation named by the signature.
inline std::string to_move_path_text(const MovePath& p) {
    const Triangulation canon = canonical_form(p.start);
    const MovePath q = canon.table() == p.start.table() ? p : rebase_path(p, canon);
    std::string out = "start " + iso_sig(canon).text + "\n";
    for (const auto& m : q.moves) out += m.script() + "\n";
    return out;
}

inline MovePath parse_move_path(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    std::optional<Triangulation> start;
    std::vector<Move> moves;
    while (std::getline(in, line)) {
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        line = line.substr(first, line.find_last_not_of(" \t\r") - first + 1);
        if (!start) {
            if (line.rfind("start ", 0) != 0) throw Error(Errc::Parse, "move path must begin with 'start <isoSig>'");
            start = from_iso_sig(line.substr(6));
            continue;
        }
        moves.push_back(parse_move(line));
    }
    if (!start) throw Error(Errc::Parse, "move path must begin with 'start <isoSig>'");
    return replay(*start, std::move(moves));
}

// --- degree-one-free rewriting -----------------------------------------------

inline const std::set<MoveType> kRewriteMoves{MoveType::M23, MoveType::M32, MoveType::M02, MoveType::M20};

struct RewriteOptions {
    int max_pillows = 3;
    std::size_t state_limit = 200'000;
};

namespace detail {

using Pillow = std::array<int, 2>;

/// Tetrahedra consumed by a move (the others keep their relative order).
inline std::vector<int> consumed_tets(const Triangulation& tri, const Skeleton& sk, const Move& m) {
    switch (m.type) {
    case MoveType::M23: return {m.a, tri.gluing(m.a, m.b)->tet};
    case MoveType::M32:
    case MoveType::M20: {
        std::vector<int> out;
        for (const auto& s : sk.edges[m.a].slots) out.push_back(s.tet);
        return out;
    }
    default: return {};
    }
}

inline std::optional<std::vector<Pillow>> shift_pillows(const std::vector<Pillow>& pillows,
                                                        const std::vector<int>& removed) {
    std::vector<Pillow> out;
    for (const auto& p : pillows) {
        Pillow q{};
        for (int i = 0; i < 2; ++i) {
            if (std::find(removed.begin(), removed.end(), p[i]) != removed.end()) return std::nullopt;
            q[i] = p[i] - static_cast<int>(std::count_if(removed.begin(), removed.end(), [&](int r) { return r < p[i]; }));
        }
        out.push_back(q);
    }
    return out;
}

/// The 2-0 move collapsing a pillow, if it still has its degree-2 edge.
inline std::optional<Move> pillow_collapse(const Triangulation& tri, const Skeleton& sk, const Pillow& p) {
    const int e = sk.edge_of[p[0]][edge_index(2, 3)];
    const auto& ec = sk.edges[e];
    if (ec.degree() != 2) return std::nullopt;
    std::array<int, 2> tets{ec.slots[0].tet, ec.slots[1].tet};
    std::sort(tets.begin(), tets.end());
    if (tets != std::array<int, 2>{std::min(p[0], p[1]), std::max(p[0], p[1])}) return std::nullopt;
    if (!can_apply_20(tri, sk, ec.slots, ec.boundary)) return std::nullopt;
    return Move::m20(e);
}

/// The triangulation with every pillow collapsed, most recent first.
inline std::optional<Triangulation> flatten(Triangulation tri, std::vector<Pillow> pillows) {
    while (!pillows.empty()) {
        const Pillow p = pillows.back();
        pillows.pop_back();
        const Skeleton sk = skeleton(tri);
        const auto m = pillow_collapse(tri, sk, p);
        if (!m) return std::nullopt;
        tri = apply_20(tri, sk.edges[m->a].slots);
        auto shifted = shift_pillows(pillows, {p[0], p[1]});
        if (!shifted) return std::nullopt;
        pillows = std::move(*shifted);
    }
    return tri;
}

}  // namespace detail

/// Rewrites a path so that no triangulation along it has a degree-one edge.
/// Before a step that would create one, a pillow (0-2 move) is inserted on a
/// nearby edge; each pillow is collapsed (2-0 move) at the earliest point
/// where that no longer creates a degree-one edge. The moves of the original
/// path are carried over to the padded triangulations by matching signatures
/// after collapsing the pillows.
inline MovePath rewrite_path_degree1free(const MovePath& path, const RewriteOptions& opt = {}) {
    for (const auto& m : path.moves)
        if (!kRewriteMoves.count(m.type))
            throw Error(Errc::InvalidPath, "move " + m.script() + " is not a 2-3, 3-2, 0-2 or 2-0 move");
    const auto orig = path_triangulations(path);
    if (has_degree_one_edge(orig.front()) || has_degree_one_edge(orig.back()))
        throw Error(Errc::InvalidPath, "path endpoints must not have degree-one edges");
    const std::size_t k = path.moves.size();
    std::vector<IsoSig> target;
    for (const auto& t : orig) target.push_back(iso_sig(t));

    std::vector<Move> out;
    std::set<std::string> failed;
    std::size_t states = 0, furthest = 0;
    int pillow_cap = 0;

    auto key_of = [](std::size_t i, const Triangulation& c, const std::vector<detail::Pillow>& pillows) {
        std::string key = std::to_string(i) + "#" + to_tri_text(c);
        for (const auto& p : pillows) key += "#" + std::to_string(p[0]) + "," + std::to_string(p[1]);
        return key;
    };

    auto dfs = [&](auto&& self, std::size_t i, const Triangulation& c,
                   const std::vector<detail::Pillow>& pillows) -> bool {
        furthest = std::max(furthest, i);
        if (i == k && pillows.empty()) return true;
        const std::string key = key_of(i, c, pillows);
        if (failed.count(key)) return false;
        if (++states > opt.state_limit)
            throw Error(Errc::RewriteFailed, "search limit reached near step " + std::to_string(furthest + 1));
        failed.insert(key);  // also guards against cycles on the current branch
        const Skeleton sk = skeleton(c);

        // Collapse a pillow as soon as that is safe.
        for (std::size_t j = 0; j < pillows.size(); ++j) {
            const auto m = detail::pillow_collapse(c, sk, pillows[j]);
            if (!m) continue;
            Triangulation r = detail::apply_20(c, sk.edges[m->a].slots);
            if (has_degree_one_edge(r)) continue;
            auto rest = pillows;
            rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(j));
            auto shifted = detail::shift_pillows(rest, {pillows[j][0], pillows[j][1]});
            if (!shifted) continue;
            out.push_back(*m);
            if (self(self, i, r, *shifted)) return true;
            out.pop_back();
        }

        // Carry the next move of the original path.
        if (i < k) {
            const Move& orig_move = path.moves[i];
            // The literal parameters may not even be in range on the padded
            // triangulation, so candidates come from enumeration only.
            std::vector<Move> candidates = enumerate_moves(c, {orig_move.type});
            std::stable_partition(candidates.begin(), candidates.end(),
                                  [&](const Move& m) { return m == orig_move; });
            for (const Move& m : candidates) {
                if (c.size() + m.delta() < 1) continue;
                auto shifted = detail::shift_pillows(pillows, detail::consumed_tets(c, sk, m));
                if (!shifted) continue;
                Triangulation r = apply_move(c, m);
                if (has_degree_one_edge(r)) continue;
                const auto flat = detail::flatten(r, *shifted);
                if (!flat || iso_sig(*flat) != target[i + 1]) continue;
                out.push_back(m);
                if (self(self, i + 1, r, *shifted)) return true;
                out.pop_back();
            }
        }

        // Insert a pillow, trying low-degree edges first.
        if (static_cast<int>(pillows.size()) < pillow_cap) {
            std::vector<int> order(sk.edges.size());
            std::iota(order.begin(), order.end(), 0);
            std::stable_sort(order.begin(), order.end(),
                             [&](int x, int y) { return sk.edges[x].degree() < sk.edges[y].degree(); });
            for (int e : order) {
                const auto& ec = sk.edges[e];
                const int faces = detail::face_slots(ec.slots, ec.boundary);
                for (int sa = 0; sa < faces; ++sa)
                    for (int sb = sa + 1; sb < faces; ++sb) {
                        if (!detail::can_apply_02(sk, ec.slots, ec.boundary, sa, sb)) continue;
                        Triangulation r = detail::apply_02(c, ec.slots, sa, sb);
                        auto more = pillows;
                        more.push_back({c.size(), c.size() + 1});
                        out.push_back(Move::m02(e, sa, sb));
                        if (self(self, i, r, more)) return true;
                        out.pop_back();
                    }
            }
        }
        return false;
    };

    bool done = false;
    for (pillow_cap = 0; pillow_cap <= opt.max_pillows && !done; ++pillow_cap) {
        failed.clear();
        out.clear();
        done = dfs(dfs, 0, path.start, {});
    }
    if (!done)
        throw Error(Errc::RewriteFailed, "no pillow placement shields step " + std::to_string(furthest + 1) + " (" +
                                             (furthest < k ? path.moves[furthest].script() : std::string("end")) + ")");
    return replay(path.start, std::move(out));
}

}  // namespace tri
