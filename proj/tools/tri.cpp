// Command-line driver for the triangulation library.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "tri/angles.hpp"
#include "tri/explorer.hpp"
#include "tri/geom.hpp"
#include "tri/homology.hpp"
#include "tri/isosig.hpp"
#include "tri/nsurf.hpp"
#include "tri/pachner.hpp"
#include "tri/skeleton.hpp"
#include "tri/triangulation.hpp"

using json = nlohmann::json;
using namespace tri;

namespace {

// Exit codes.
constexpr int kOk = 0;
constexpr int kDomain = 1;
constexpr int kInput = 2;

struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out || !(out << text)) throw InputError("cannot write " + path);
}

/// A .tri file path, or an isomorphism signature given inline.
Triangulation load(const std::string& arg) {
    if (std::filesystem::exists(arg)) return parse_tri(read_file(arg));
    if (arg.find('|') != std::string::npos) return from_iso_sig(arg);
    throw InputError("no such file: " + arg);
}

std::set<MoveType> parse_move_kinds(const std::string& list) {
    std::set<MoveType> out;
    std::stringstream ss(list);
    std::string item;
    while (std::getline(ss, item, ',')) {
        bool found = false;
        for (MoveType k : kAllMoveTypes)
            if (move_type_tag(k) == item) out.insert(k), found = true;
        if (!found) throw Error(Errc::Parse, "unknown move kind '" + item + "'");
    }
    if (out.empty()) throw Error(Errc::Parse, "empty move list");
    return out;
}

int default_threads() {
    if (const char* env = std::getenv("TRI_THREADS")) {
        const int t = std::atoi(env);
        if (t > 0) return t;
    }
    return 1;
}

json fractions(const AngleVector& v) {
    json a = json::array();
    for (const auto& x : v) a.push_back(fraction_string(x));
    return a;
}

std::string join_fractions(const AngleVector& v) {
    std::string s;
    for (const auto& x : v) s += (s.empty() ? "" : " ") + fraction_string(x);
    return s;
}

std::string join_ints(const NormalCoordVector& v) {
    std::string s;
    for (auto x : v) s += (s.empty() ? "" : " ") + std::to_string(x);
    return s;
}

json info_json(const Triangulation& t) {
    json j;
    j["tetrahedra"] = t.size();
    j["class"] = std::string(tri_class_name(classify(t)));
    const Skeleton sk = skeleton(t);
    json edges = json::array();
    for (const auto& e : sk.edges) edges.push_back({{"degree", e.degree()}, {"boundary", e.boundary}});
    j["edges"] = edges;
    json verts = json::array();
    for (const auto& v : sk.vertices)
        verts.push_back({{"link", std::string(link_type_name(v.link_type()))}, {"euler", v.link_euler}});
    j["vertices"] = verts;
    j["faces"] = sk.face_count;
    if (t.is_closed()) j["homology"] = homology_h1(t).str();
    if (t.is_connected()) j["sig"] = iso_sig(t).text;
    return j;
}

json surface_json(const NormalSurface& s) {
    return {{"vector", s.vector},
            {"euler_char", s.euler_char},
            {"connected", s.connected},
            {"vertex_linking", s.vertex_linking}};
}

json graph_json(const PachnerGraph& g) {
    json nodes = json::array();
    for (const auto& n : g.nodes) {
        json props = json::object();
        for (const auto& [id, v] : n.props) props[std::string(property_name(id))] = v;
        nodes.push_back({{"sig", n.sig.text}, {"n", n.n}, {"depth", n.depth}, {"props", props}});
    }
    json arcs = json::array();
    for (const auto& a : g.arcs) arcs.push_back({{"a", a.a}, {"b", a.b}, {"move", a.move.script()}});
    return {{"version", 1}, {"max_tets", g.max_tets}, {"nodes", nodes}, {"arcs", arcs}, {"warnings", g.warnings}};
}

std::string path_text_summary(const MovePath& p) {
    std::string s = "length " + std::to_string(p.length()) + "\n";
    for (std::size_t i = 0; i < p.moves.size(); ++i) s += p.moves[i].script() + "  -> " + p.signatures[i].text + "\n";
    return s;
}

json path_json(const MovePath& p) {
    json moves = json::array(), sigs = json::array();
    for (const auto& m : p.moves) moves.push_back(m.script());
    for (const auto& s : p.signatures) sigs.push_back(s.text);
    return {{"start", iso_sig(p.start).text}, {"moves", moves}, {"signatures", sigs}};
}

struct Output {
    bool as_json = false;
    void emit(const json& j, const std::string& text) const {
        if (as_json)
            std::cout << j.dump(2) << "\n";
        else
            std::cout << text;
    }
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Triangulations of 3-manifolds: skeleta, moves, angle structures, shapes, normal surfaces and "
                 "Pachner graph exploration."};
    app.require_subcommand(1);
    // Lets --format appear after the subcommand as well.
    app.fallthrough();
    std::string format = "text";
    app.add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json"}));

    std::string input, input_b;

    auto* info = app.add_subcommand("info", "Skeleton, classification and homology");
    info->add_option("input", input, ".tri file or signature")->required();

    auto* sig = app.add_subcommand("sig", "Isomorphism signature");
    sig->add_option("input", input, ".tri file or signature")->required();

    auto* check = app.add_subcommand("check", "Angle structures, gluing equations, efficiency, degree-one edges");
    check->add_option("input", input, ".tri file or signature")->required();
    std::string angle_kind;
    bool geometric = false, degree1 = false;
    double tol = 1e-10;
    int max_iter = 100;
    int efficiency = -1;
    int bound = kDefaultNormalSurfaceBound;
    check->add_option("--angles", angle_kind, "Angle structure kind")
        ->check(CLI::IsMember({"generalised", "semi", "strict", "taut"}));
    check->add_flag("--geometric", geometric, "Solve the gluing equations");
    check->add_option("--tol", tol, "Residual tolerance")->check(CLI::PositiveNumber);
    check->add_option("--max-iter", max_iter, "Iteration cap")->check(CLI::PositiveNumber);
    check->add_option("--efficiency", efficiency, "0- or 1-efficiency")->check(CLI::IsMember({0, 1}));
    check->add_option("--max-tets", bound, "Normal surface size bound")->check(CLI::PositiveNumber);
    check->add_flag("--degree1", degree1, "Report degree-one edges");

    auto* moves = app.add_subcommand("moves", "List or apply Pachner moves");
    moves->require_subcommand(1);
    std::string move_list = "23,32,14,41,02,20";
    auto* moves_list = moves->add_subcommand("list", "Applicable moves");
    moves_list->add_option("input", input, ".tri file or signature")->required();
    moves_list->add_option("--moves", move_list, "Comma-separated move kinds");
    auto* moves_apply = moves->add_subcommand("apply", "Apply move-script lines in order");
    std::vector<std::string> scripts;
    std::string out_path;
    moves_apply->add_option("input", input, ".tri file or signature")->required();
    moves_apply->add_option("moves", scripts, "Moves such as \"23 0 1\"")->required();
    moves_apply->add_option("--out", out_path, "Write the result as a .tri file");

    auto* explore_cmd = app.add_subcommand("explore", "Breadth-first Pachner graph within a size bound");
    int max_tets = 0;
    std::string predicate;
    std::string explore_moves = "23,32";
    int threads = default_threads();
    std::size_t budget = kDefaultNodeBudget;
    explore_cmd->add_option("input", input, ".tri file or signature")->required();
    explore_cmd->add_option("--max-tets", max_tets, "Tetrahedron bound")->required()->check(CLI::PositiveNumber);
    explore_cmd->add_option("--predicate", predicate, "Expand only nodes with this property");
    explore_cmd->add_option("--moves", explore_moves, "Comma-separated move kinds");
    explore_cmd->add_option("--threads", threads, "Worker threads")->check(CLI::PositiveNumber);
    explore_cmd->add_option("--budget", budget, "Node cap")->check(CLI::PositiveNumber);
    explore_cmd->add_option("--out", out_path, "Write the graph as JSON");

    auto* connect_cmd = app.add_subcommand("connectivity", "Components of a property's subgraph within a bound");
    connect_cmd->add_option("input", input, ".tri file or signature")->required();
    connect_cmd->add_option("--predicate", predicate, "Property")->required();
    connect_cmd->add_option("--max-tets", max_tets, "Tetrahedron bound")->required()->check(CLI::PositiveNumber);
    connect_cmd->add_option("--moves", explore_moves, "Comma-separated move kinds");
    connect_cmd->add_option("--threads", threads, "Worker threads")->check(CLI::PositiveNumber);
    connect_cmd->add_option("--budget", budget, "Node cap")->check(CLI::PositiveNumber);

    auto* path_cmd = app.add_subcommand("path", "Shortest move path between two triangulations");
    path_cmd->add_option("a", input, "First .tri file or signature")->required();
    path_cmd->add_option("b", input_b, "Second .tri file or signature")->required();
    path_cmd->add_option("--max-tets", max_tets, "Tetrahedron bound")->required()->check(CLI::PositiveNumber);
    path_cmd->add_option("--moves", explore_moves, "Comma-separated move kinds");
    path_cmd->add_option("--budget", budget, "Node cap")->check(CLI::PositiveNumber);
    path_cmd->add_option("--out", out_path, "Write the path as a move-path file");

    auto* rewrite_cmd = app.add_subcommand("rewrite", "Rewrite a move path");
    bool degree1free = false;
    rewrite_cmd->add_option("path", input, "Move-path file")->required();
    rewrite_cmd->add_flag("--degree1free", degree1free, "Avoid degree-one edges using pillows")->required();
    rewrite_cmd->add_option("--out", out_path, "Write the rewritten path");

    auto* census = app.add_subcommand("census", "Read or write signature lists");
    census->require_subcommand(1);
    auto* census_read = census->add_subcommand("read", "Summarise each signature in a census file");
    census_read->add_option("file", input, "Census file")->required();
    auto* census_write = census->add_subcommand("write", "Write canonical signatures of the inputs");
    std::vector<std::string> census_inputs;
    census_write->add_option("--out", out_path, "Census file")->required();
    census_write->add_option("inputs", census_inputs, ".tri files or signatures")->required();

    auto* nsurf = app.add_subcommand("nsurf", "Normal surfaces");
    nsurf->require_subcommand(1);
    auto* nsurf_list = nsurf->add_subcommand("list", "Vertex solutions in standard coordinates");
    nsurf_list->add_option("input", input, ".tri file or signature")->required();
    nsurf_list->add_option("--max-tets", bound, "Size bound")->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n\n" << app.help();
        return kInput;
    }
    const Output out{format == "json"};

    try {
        if (*info) {
            const auto t = load(input);
            const json j = info_json(t);
            std::string text = "tetrahedra " + std::to_string(t.size()) + "\n";
            text += "edges " + std::to_string(j["edges"].size()) + " (degrees";
            for (const auto& e : j["edges"]) text += " " + std::to_string(e["degree"].get<int>());
            text += ")\nvertices " + std::to_string(j["vertices"].size()) + " (links";
            for (const auto& v : j["vertices"]) text += " " + v["link"].get<std::string>();
            text += ")\nclass " + j["class"].get<std::string>() + "\n";
            if (j.contains("homology")) text += "H1 " + j["homology"].get<std::string>() + "\n";
            if (j.contains("sig")) text += "sig " + j["sig"].get<std::string>() + "\n";
            out.emit(j, text);
        } else if (*sig) {
            const auto s = iso_sig(load(input)).text;
            out.emit({{"sig", s}}, s + "\n");
        } else if (*check) {
            const auto t = load(input);
            json j = json::object();
            std::string text;
            if (!angle_kind.empty()) {
                const AngleSystem sys = angle_system(t);
                json a;
                a["kind"] = angle_kind;
                std::optional<AngleVector> v;
                if (angle_kind == "generalised") v = find_generalised(sys);
                if (angle_kind == "semi") v = find_semi(sys);
                if (angle_kind == "strict") {
                    const auto r = find_strict(sys);
                    v = r.vector;
                    a["margin"] = r.margin ? json(fraction_string(*r.margin)) : json(nullptr);
                }
                if (angle_kind == "taut") {
                    const auto all = find_taut(sys);
                    a["count"] = all.size();
                    if (!all.empty()) v = all.front();
                }
                a["found"] = v.has_value();
                a["vector"] = v ? fractions(*v) : json(nullptr);
                j["angles"] = a;
                text += angle_kind + " angle structure: " + (v ? "found\n  " + join_fractions(*v) + "\n" : "none\n");
            }
            if (geometric) {
                SolveOptions so;
                so.tolerance = tol;
                so.max_iterations = max_iter;
                const auto v = solve(t, std::nullopt, so);
                json shapes = json::array();
                for (auto z : v.shapes) shapes.push_back({z.real(), z.imag()});
                j["geometric"] = {{"solved", v.solved},
                                  {"positively_oriented", v.positively_oriented},
                                  {"residual", v.residual},
                                  {"iterations", v.iterations},
                                  {"shapes", shapes},
                                  {"note", "edge equations only; cusp completeness not checked"}};
                std::ostringstream ss;
                ss.precision(15);
                ss << "gluing equations: " << (v.solved ? "solved" : "not solved") << ", residual " << v.residual
                   << (v.positively_oriented ? ", positively oriented" : ", not positively oriented") << "\n";
                for (std::size_t i = 0; i < v.shapes.size(); ++i)
                    ss << "  z" << i << " = " << v.shapes[i].real() << (v.shapes[i].imag() < 0 ? "-" : "+")
                       << std::abs(v.shapes[i].imag()) << "i\n";
                ss << "note: edge equations only; cusp completeness not checked\n";
                text += ss.str();
            }
            if (efficiency >= 0) {
                const auto v = efficiency == 0 ? check_0_efficient(t, bound) : check_1_efficient(t, bound);
                json e{{"level", efficiency}, {"outcome", std::string(efficiency_name(v.outcome))}, {"note", v.note}};
                e["witness"] = v.witness ? surface_json(*v.witness) : json(nullptr);
                j["efficiency"] = e;
                text += std::to_string(efficiency) + "-efficiency: " + std::string(efficiency_name(v.outcome));
                if (!v.note.empty()) text += " (" + v.note + ")";
                text += "\n";
                if (v.witness)
                    text += "  witness " + join_ints(v.witness->vector) + "  chi " +
                            std::to_string(v.witness->euler_char) + "\n";
            }
            if (degree1) {
                const Skeleton sk = skeleton(t);
                json edges = json::array();
                for (std::size_t e = 0; e < sk.edges.size(); ++e)
                    if (sk.edges[e].degree() == 1) edges.push_back(e);
                j["degree_one_edges"] = edges;
                text += "degree-one edges: " + (edges.empty() ? std::string("none") : edges.dump()) + "\n";
            }
            if (j.empty()) throw InputError("check needs at least one of --angles, --geometric, --efficiency, --degree1");
            out.emit(j, text);
        } else if (*moves_list) {
            const auto t = load(input);
            json arr = json::array();
            std::string text;
            for (const auto& m : enumerate_moves(t, parse_move_kinds(move_list))) {
                arr.push_back(m.script());
                text += m.script() + "\n";
            }
            out.emit({{"moves", arr}}, text);
        } else if (*moves_apply) {
            auto t = load(input);
            for (const auto& s : scripts) t = apply_move(t, parse_move(s));
            if (!out_path.empty()) write_file(out_path, to_tri_text(t));
            out.emit({{"tetrahedra", t.size()}, {"sig", iso_sig(t).text}}, to_tri_text(t));
        } else if (*explore_cmd) {
            const auto t = load(input);
            ExploreOptions opt;
            opt.max_tets = max_tets;
            opt.moves = parse_move_kinds(explore_moves);
            opt.threads = threads;
            opt.budget = budget;
            if (!predicate.empty()) opt.predicate = parse_property(predicate);
            const auto g = explore(t, opt);
            for (const auto& w : g.warnings) std::cerr << "warning: " << w << "\n";
            const json j = graph_json(g);
            if (!out_path.empty()) write_file(out_path, j.dump(2) + "\n");
            out.emit(j, "nodes " + std::to_string(g.nodes.size()) + "\narcs " + std::to_string(g.arcs.size()) +
                            "\nwithin bound " + std::to_string(max_tets) + "\n");
        } else if (*connect_cmd) {
            const auto t = load(input);
            ExploreOptions opt;
            opt.max_tets = max_tets;
            opt.moves = parse_move_kinds(explore_moves);
            opt.threads = threads;
            opt.budget = budget;
            const auto rep = connectivity_report(t, parse_property(predicate), opt);
            json comps = json::array();
            std::string text = "property " + std::string(property_name(rep.predicate)) + ", " + rep.note + "\n" +
                               "explored " + std::to_string(rep.graph.nodes.size()) + " nodes\n";
            for (const auto& c : rep.components) {
                comps.push_back(
                    {{"size", c.nodes.size()}, {"boundary_nodes", c.boundary_nodes}, {"contains_seed", c.contains_seed}});
                text += "component size " + std::to_string(c.nodes.size()) + ", boundary " +
                        std::to_string(c.boundary_nodes) + (c.contains_seed ? ", contains seed" : "") + "\n";
            }
            out.emit({{"property", std::string(property_name(rep.predicate))},
                      {"max_tets", rep.max_tets},
                      {"explored", rep.graph.nodes.size()},
                      {"components", comps},
                      {"unsatisfied_seeds", rep.unsatisfied_seeds},
                      {"note", rep.note}},
                     text);
        } else if (*path_cmd) {
            const auto a = load(input), b = load(input_b);
            FindPathOptions opt;
            opt.moves = parse_move_kinds(explore_moves);
            opt.budget = budget;
            const auto p = find_path(a, b, max_tets, opt);
            if (!p) {
                out.emit({{"found", false}, {"max_tets", max_tets}},
                         "no path within bound " + std::to_string(max_tets) + "\n");
            } else {
                if (!out_path.empty()) write_file(out_path, to_move_path_text(*p));
                json j = path_json(*p);
                j["found"] = true;
                out.emit(j, path_text_summary(*p));
            }
        } else if (*rewrite_cmd) {
            const auto p = parse_move_path(read_file(input));
            const auto r = rewrite_path_degree1free(p);
            if (!out_path.empty()) write_file(out_path, to_move_path_text(r));
            out.emit(path_json(r), to_move_path_text(r));
        } else if (*census_read) {
            std::istringstream in(read_file(input));
            std::string line;
            json arr = json::array();
            std::string text;
            while (std::getline(in, line)) {
                if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
                std::istringstream ls(line);
                std::string s;
                if (!(ls >> s)) continue;
                const auto t = from_iso_sig(s);
                const std::string cls(tri_class_name(classify(t)));
                arr.push_back({{"sig", s}, {"tetrahedra", t.size()}, {"class", cls}});
                text += s + "  " + std::to_string(t.size()) + "  " + cls + "\n";
            }
            out.emit({{"entries", arr}}, text);
        } else if (*census_write) {
            std::string text;
            for (const auto& in : census_inputs) text += iso_sig(load(in)).text + "\n";
            write_file(out_path, text);
            out.emit({{"written", census_inputs.size()}}, "");
        } else if (*nsurf_list) {
            const auto t = load(input);
            json arr = json::array();
            std::string text;
            for (const auto& v : enumerate_vertex_solutions(t, bound)) {
                const auto s = analyze(t, v);
                arr.push_back(surface_json(s));
                text += join_ints(v) + "  chi " + std::to_string(s.euler_char) +
                        (s.connected ? " connected" : " disconnected") + (s.vertex_linking ? " vertex-linking" : "") +
                        "\n";
            }
            out.emit({{"surfaces", arr}}, text);
        }
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInput;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.code() == Errc::Parse ? kInput : kDomain;
    }
    return kOk;
}
