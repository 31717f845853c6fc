#include "mdepth/cli.hpp"

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include "mdepth/corpus.hpp"
#include "mdepth/decomposition.hpp"
#include "mdepth/depth.hpp"
#include "mdepth/matroid_io.hpp"
#include "mdepth/tamed.hpp"
#include "mdepth/verify.hpp"

namespace mdepth {
namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitResource = 3;
constexpr int kExitCounterexample = 4;

std::vector<int> parse_id_list(const std::string& text) {
    std::vector<int> out;
    std::string token;
    std::istringstream in(text);
    while (std::getline(in, token, ',')) {
        if (token.empty()) continue;
        std::size_t used = 0;
        int value = std::stoi(token, &used);
        if (used != token.size()) throw input_error("bad element id '" + token + "' in set");
        out.push_back(value);
    }
    return out;
}

ElementSet parse_set(const std::string& text, int universe) {
    ElementSet set(universe);
    for (int id : parse_id_list(text)) set.insert(id);
    return set;
}

std::string sanitize(const std::string& name) {
    std::string out;
    for (char c : name) out += (std::isalnum(static_cast<unsigned char>(c)) != 0) ? c : '_';
    return out;
}

struct CliConfig {
    std::string input;
    std::string set_text;
    std::string kind = "cd";
    std::string dot_path;
    std::string out_path;
    std::string suite = "all";
    std::string witness_dir = "witnesses";
    std::uint64_t seed = 1;
    std::optional<int> depth_cap;
    bool trace = false;
    Caps caps;
};

int cmd_rank(const CliConfig& cfg, std::ostream& out) {
    Matroid m = read_matroid_file(cfg.input);
    ElementSet set = cfg.set_text.empty() ? m.ground_set() : parse_set(cfg.set_text, m.size());
    out << m.rank(set) << "\n";
    return kExitOk;
}

int cmd_depth(const CliConfig& cfg, std::ostream& out) {
    Matroid m = read_matroid_file(cfg.input);
    DepthKind kind;
    if (cfg.kind == "cd")
        kind = DepthKind::contraction;
    else if (cfg.kind == "dd")
        kind = DepthKind::deletion;
    else if (cfg.kind == "cd-alt")
        kind = DepthKind::altered_contraction;
    else if (cfg.kind == "dd-alt")
        kind = DepthKind::altered_deletion;
    else
        throw input_error("unknown depth kind '" + cfg.kind + "' (use cd|dd|cd-alt|dd-alt)");
    DepthResult result = depth_detail(m, kind, cfg.caps);
    out << result.value << "\n";
    if (result.chosen_element)
        out << "# optimal first element: " << *result.chosen_element << "\n";
    return kExitOk;
}

int cmd_csd(const CliConfig& cfg, std::ostream& out) {
    Matroid m = read_matroid_file(cfg.input);
    SearchReport report = csd_search(m, cfg.depth_cap, cfg.caps);
    if (!report.found) {
        out << "no decomposition within depth cap " << *cfg.depth_cap << "\n";
        return kExitOk;
    }
    out << report.depth << "\n";
    out << "# trees examined: " << report.trees_examined
        << ", placements examined: " << report.placements_examined << "\n";
    return kExitOk;
}

int cmd_decompose(const CliConfig& cfg, std::ostream& out) {
    Matroid m = read_matroid_file(cfg.input);
    SearchReport report = csd_search(m, cfg.depth_cap, cfg.caps);
    if (!report.found) {
        out << "no decomposition within depth cap " << *cfg.depth_cap << "\n";
        return kExitOk;
    }
    const StarDecomposition& d = *report.decomposition;
    out << "depth " << report.depth << ", tree with " << d.tree.edge_count() << " edges, "
        << d.tree.leaves().size() << " leaves\n";
    std::string dot = decomposition_to_dot(d);
    if (cfg.dot_path.empty()) {
        out << dot;
    } else {
        std::ofstream file(cfg.dot_path);
        if (!file) throw input_error("cannot write dot file '" + cfg.dot_path + "'");
        file << dot;
        out << "wrote " << cfg.dot_path << "\n";
    }
    return kExitOk;
}

int cmd_extend(const CliConfig& cfg, std::ostream& out) {
    Matroid m = read_matroid_file(cfg.input);
    SearchReport report = csd_search(m, std::nullopt, cfg.caps);
    TamedExtension ext = build_extension(m, *report.decomposition, {}, cfg.caps);
    TamedContext ctx(ext.base, ext.decomposition);

    std::ostringstream text;
    text << to_text(ext.matroid);
    text << "# extension of a rank-" << m.rank() << " matroid with " << m.size() << " elements\n";
    text << "# edge-element map (element id = tree edge, named by its bottom vertex)\n";
    for (int i = 0; i < ext.edge_elements(); ++i) {
        int v = ctx.bottom_vertex_of(m.size() + i);
        text << "# element " << (m.size() + i) << " = edge " << ext.decomposition.tree.parent(v)
             << " -> " << v << "\n";
    }
    if (cfg.out_path.empty()) {
        out << text.str();
    } else {
        std::ofstream file(cfg.out_path);
        if (!file) throw input_error("cannot write extension file '" + cfg.out_path + "'");
        file << text.str();
        out << "wrote " << cfg.out_path << " (" << ext.matroid.size() << " elements, rank "
            << ext.matroid.rank() << ")\n";
    }
    return kExitOk;
}

int cmd_tamed(const CliConfig& cfg, std::ostream& out) {
    Matroid m = read_matroid_file(cfg.input);
    SearchReport report = csd_search(m, std::nullopt, cfg.caps);
    TamedContext ctx(m, *report.decomposition);
    const RootedTree& tree = report.decomposition->tree;

    std::uint64_t mask = 0;
    if (cfg.set_text == "E(T)") {
        for (int i = 0; i < ctx.edge_count(); ++i) mask |= std::uint64_t{1} << (m.size() + i);
    } else {
        for (int id : parse_id_list(cfg.set_text)) {
            if (id < 0 || id >= ctx.combined_size())
                throw input_error("combined element id " + std::to_string(id) + " out of range 0.." +
                                  std::to_string(ctx.combined_size() - 1));
            mask |= std::uint64_t{1} << id;
        }
    }

    ExtendedSet x = ctx.split(mask);
    TokenLedger ledger = ctx.ledger(x);
    out << "set: matroid part " << x.matroid_part.to_string() << ", edge part "
        << x.edge_part.to_string() << " (edges by bottom vertex)\n";
    int total = 0;
    for (int v : tree.preorder()) {
        total += ledger.assigned[v];
        out << "vertex " << v;
        if (v == tree.root())
            out << " (root)";
        else if (tree.is_leaf(v))
            out << " (leaf)";
        out << ": assigned " << ledger.assigned[v] << ", kept " << ledger.kept[v] << "\n";
    }
    out << "total assigned: " << total << ", root surplus: " << ledger.root_surplus << "\n";
    if (cfg.trace) {
        std::mt19937_64 rng(cfg.seed);
        TokenLedger marked = ctx.distribute_marking(ledger.assigned, rng);
        out << "# marking-loop surplus: " << marked.root_surplus << "\n";
    }
    out << (ctx.is_tamed(x) ? "tamed" : "not tamed") << "\n";
    return kExitOk;
}

int cmd_verify(const CliConfig& cfg, std::ostream& out) {
    VerifyOptions options;
    options.caps = cfg.caps;
    options.seed = cfg.seed;
    bool known = false;
    for (const std::string& name : suite_names()) known = known || name == cfg.suite;
    if (!known) throw input_error("unknown suite '" + cfg.suite + "'");

    Corpus corpus = build_corpus(cfg.seed);
    std::vector<TheoremReport> reports = run_suite(corpus, cfg.suite, options);

    std::map<std::string, std::pair<int, int>> summary;  // check -> (pass, fail)
    int failures = 0;
    for (const TheoremReport& r : reports) {
        out << (r.passed ? "PASS" : "FAIL") << "  " << r.check << "  " << r.instance << "  ("
            << r.cases << " cases)\n";
        auto& [pass, fail] = summary[r.check];
        (r.passed ? pass : fail) += 1;
        if (r.passed) continue;
        ++failures;
        if (r.counterexample) {
            std::filesystem::create_directories(cfg.witness_dir);
            std::string stem = cfg.witness_dir + "/" + sanitize(r.check) + "-" + sanitize(r.instance);
            if (!r.counterexample->matroid_text.empty()) {
                std::ofstream f(stem + ".matroid");
                f << r.counterexample->matroid_text;
            }
            if (!r.counterexample->decomposition_dot.empty()) {
                std::ofstream f(stem + ".dot");
                f << r.counterexample->decomposition_dot;
            }
            std::ofstream f(stem + ".txt");
            f << "check: " << r.check << "\ninstance: " << r.instance << "\nsubset: "
              << r.counterexample->subset << "\nnote: " << r.counterexample->note << "\n";
            out << "      witness written to " << stem << ".*\n";
        }
    }
    out << "\nsummary (" << corpus.entries.size() << " corpus matroids, seed " << cfg.seed << "):\n";
    for (const auto& [check, counts] : summary)
        out << "  " << check << ": " << counts.first << " passed, " << counts.second << " failed\n";
    out << (failures == 0 ? "all checks passed\n"
                          : std::to_string(failures) + " check(s) failed\n");
    return failures == 0 ? kExitOk : kExitCounterexample;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"exact matroid depth parameters, decompositions and extensions"};
    app.require_subcommand(1);
    CliConfig cfg;

    app.add_option("--cap-n", cfg.caps.subset_enumeration,
                   "max ground-set size for circuit/component enumeration");
    app.add_option("--cap-rank", cfg.caps.search_rank, "max rank for decomposition search");
    app.add_option("--cap-size", cfg.caps.search_size, "max elements for decomposition search");
    app.add_option("--cap-extension", cfg.caps.extension_size,
                   "max combined ground-set size for extension construction");

    CLI::App* rank = app.add_subcommand("rank", "rank of a set of elements");
    rank->add_option("file", cfg.input, "matroid file")->required();
    rank->add_option("--set", cfg.set_text, "comma-separated element ids (default: full ground set)");

    CLI::App* depth = app.add_subcommand("depth", "recursive depth parameter");
    depth->add_option("file", cfg.input, "matroid file")->required();
    depth->add_option("--kind", cfg.kind, "cd|dd|cd-alt|dd-alt");

    CLI::App* csd_cmd = app.add_subcommand("csd", "contraction*-depth via exhaustive search");
    csd_cmd->add_option("file", cfg.input, "matroid file")->required();
    csd_cmd->add_option("--depth-cap", cfg.depth_cap, "decide existence within this depth only");

    CLI::App* decompose = app.add_subcommand("decompose", "optimal decomposition as DOT");
    decompose->add_option("file", cfg.input, "matroid file")->required();
    decompose->add_option("--dot", cfg.dot_path, "write DOT here instead of stdout");
    decompose->add_option("--depth-cap", cfg.depth_cap, "decide existence within this depth only");

    CLI::App* extend = app.add_subcommand("extend", "extension matroid from an optimal decomposition");
    extend->add_option("file", cfg.input, "matroid file")->required();
    extend->add_option("--out", cfg.out_path, "write the explicit matroid file here");

    CLI::App* tamed = app.add_subcommand("tamed", "token ledger and tamed verdict for a set");
    tamed->add_option("file", cfg.input, "matroid file")->required();
    tamed->add_option("--set", cfg.set_text,
                      "combined ids over M and the tree edges, or E(T) for all edges")
        ->required();
    tamed->add_flag("--trace", cfg.trace, "also run the marking-loop distribution");
    tamed->add_option("--seed", cfg.seed, "seed for the marking-loop order");

    CLI::App* verify = app.add_subcommand("verify", "run the theorem harness over the corpus");
    verify->add_option("--suite", cfg.suite, "core|depth|search|tokens|axioms|structure|main|cross|mutation|all");
    verify->add_option("--seed", cfg.seed, "corpus generation seed");
    verify->add_option("--witness-dir", cfg.witness_dir, "where counterexample witnesses are written");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {  // --help
            out << app.help();
            return kExitOk;
        }
        err << "error: " << e.what() << "\n";
        return kExitInput;
    }

    try {
        if (rank->parsed()) return cmd_rank(cfg, out);
        if (depth->parsed()) return cmd_depth(cfg, out);
        if (csd_cmd->parsed()) return cmd_csd(cfg, out);
        if (decompose->parsed()) return cmd_decompose(cfg, out);
        if (extend->parsed()) return cmd_extend(cfg, out);
        if (tamed->parsed()) return cmd_tamed(cfg, out);
        if (verify->parsed()) return cmd_verify(cfg, out);
    } catch (const resource_error& e) {
        err << "resource error: " << e.what() << "\n";
        return kExitResource;
    } catch (const input_error& e) {
        err << "input error: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitInput;
    }
    return kExitInput;
}

}  // namespace mdepth
