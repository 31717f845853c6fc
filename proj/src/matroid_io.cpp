#include "mdepth/matroid_io.hpp"

#include <fstream>
#include <sstream>
#include <vector>

namespace mdepth {
namespace {

struct Line {
    int number = 0;
    std::vector<std::string> tokens;
};

[[noreturn]] void fail(int line, const std::string& what) {
    throw input_error("line " + std::to_string(line) + ": " + what);
}

std::vector<Line> tokenize(std::istream& in) {
    std::vector<Line> lines;
    std::string raw;
    int number = 0;
    while (std::getline(in, raw)) {
        ++number;
        if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
        std::istringstream ls(raw);
        Line line{number, {}};
        std::string tok;
        while (ls >> tok) line.tokens.push_back(tok);
        if (!line.tokens.empty()) lines.push_back(std::move(line));
    }
    return lines;
}

int parse_int(const Line& line, const std::string& tok) {
    try {
        std::size_t used = 0;
        int value = std::stoi(tok, &used);
        if (used != tok.size()) throw std::invalid_argument(tok);
        return value;
    } catch (const std::exception&) {
        fail(line.number, "expected an integer, got '" + tok + "'");
    }
}

int keyword_int(const Line& line, const std::string& keyword) {
    if (line.tokens.size() != 2 || line.tokens[0] != keyword)
        fail(line.number, "expected '" + keyword + " <int>'");
    return parse_int(line, line.tokens[1]);
}

Matroid parse_uniform(const std::vector<Line>& lines, std::size_t at) {
    if (at + 2 > lines.size()) fail(lines.back().number, "uniform matroid needs 'n' and 'r' lines");
    int n = keyword_int(lines[at], "n");
    int r = keyword_int(lines[at + 1], "r");
    if (at + 2 != lines.size()) fail(lines[at + 2].number, "unexpected trailing content");
    if (n < 0) fail(lines[at].number, "n must be non-negative");
    if (r < 0 || r > n) fail(lines[at + 1].number, "rank must satisfy 0 <= r <= n");
    return Matroid::uniform(n, r);
}

Matroid parse_graphic(const std::vector<Line>& lines, std::size_t at) {
    if (at >= lines.size()) fail(lines.back().number, "graphic matroid needs a 'vertices' line");
    int vertices = keyword_int(lines[at], "vertices");
    std::vector<std::pair<int, int>> edges;
    for (std::size_t i = at + 1; i < lines.size(); ++i) {
        const Line& line = lines[i];
        if (line.tokens.size() != 3 || line.tokens[0] != "edge")
            fail(line.number, "expected 'edge <u> <v>'");
        int u = parse_int(line, line.tokens[1]);
        int v = parse_int(line, line.tokens[2]);
        if (u < 0 || v < 0 || u >= vertices || v >= vertices)
            fail(line.number, "edge endpoint out of range for " + std::to_string(vertices) + " vertices");
        edges.emplace_back(u, v);
    }
    return Matroid::graphic(vertices, std::move(edges));
}

Matroid parse_gf2(const std::vector<Line>& lines, std::size_t at) {
    if (at >= lines.size()) fail(lines.back().number, "gf2 matroid needs a 'rows' line");
    int rows = keyword_int(lines[at], "rows");
    std::vector<std::uint64_t> cols;
    for (std::size_t i = at + 1; i < lines.size(); ++i) {
        const Line& line = lines[i];
        if (line.tokens.size() != 2 || line.tokens[0] != "col")
            fail(line.number, "expected 'col <bitstring>'");
        const std::string& bits = line.tokens[1];
        if (static_cast<int>(bits.size()) != rows)
            fail(line.number, "column bitstring must have exactly " + std::to_string(rows) + " bits");
        std::uint64_t col = 0;
        for (std::size_t j = 0; j < bits.size(); ++j) {
            if (bits[j] == '1')
                col |= std::uint64_t{1} << j;  // leftmost character is row 0
            else if (bits[j] != '0')
                fail(line.number, "column bitstring may contain only 0 and 1");
        }
        cols.push_back(col);
    }
    return Matroid::gf2(rows, std::move(cols));
}

Matroid parse_explicit(const std::vector<Line>& lines, std::size_t at) {
    if (at >= lines.size()) fail(lines.back().number, "explicit matroid needs an 'n' line");
    int n = keyword_int(lines[at], "n");
    std::vector<ElementSet> bases;
    for (std::size_t i = at + 1; i < lines.size(); ++i) {
        const Line& line = lines[i];
        if (line.tokens[0] != "basis") fail(line.number, "expected 'basis <ids...>'");
        ElementSet basis(n);
        for (std::size_t j = 1; j < line.tokens.size(); ++j) {
            int id = parse_int(line, line.tokens[j]);
            if (id < 0 || id >= n) fail(line.number, "basis id " + std::to_string(id) + " out of range");
            if (basis.contains(id)) fail(line.number, "basis repeats id " + std::to_string(id));
            basis.insert(id);
        }
        if (!bases.empty() && basis.count() != bases.front().count())
            fail(line.number, "bases must share one cardinality");
        bases.push_back(basis);
    }
    if (bases.empty()) fail(lines.back().number, "explicit matroid needs at least one basis line");
    return Matroid::from_bases(n, bases);
}

}  // namespace

Matroid parse_matroid(std::istream& in) {
    std::vector<Line> lines = tokenize(in);
    if (lines.empty()) throw input_error("line 1: empty matroid file");
    const Line& head = lines.front();
    if (head.tokens.size() != 2 || head.tokens[0] != "matroid")
        fail(head.number, "expected 'matroid <uniform|graphic|gf2|explicit>'");
    const std::string& kind = head.tokens[1];
    try {
        if (kind == "uniform") return parse_uniform(lines, 1);
        if (kind == "graphic") return parse_graphic(lines, 1);
        if (kind == "gf2") return parse_gf2(lines, 1);
        if (kind == "explicit") return parse_explicit(lines, 1);
    } catch (const input_error&) {
        throw;
    } catch (const std::exception& e) {
        fail(head.number, e.what());
    }
    fail(head.number, "unknown matroid kind '" + kind + "'");
}

Matroid parse_matroid_text(const std::string& text) {
    std::istringstream in(text);
    return parse_matroid(in);
}

Matroid read_matroid_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw input_error("cannot open matroid file '" + path + "'");
    return parse_matroid(in);
}

std::string to_text(const Matroid& m) {
    std::ostringstream out;
    switch (m.kind()) {
        case MatroidKind::uniform:
            out << "matroid uniform\n"
                << "n " << m.size() << "\n"
                << "r " << m.rank() << "\n";
            return out.str();
        case MatroidKind::graphic: {
            const GraphicData& g = *m.graphic_data();
            out << "matroid graphic\n"
                << "vertices " << g.vertices << "\n";
            for (auto [u, v] : g.edges) out << "edge " << u << " " << v << "\n";
            return out.str();
        }
        case MatroidKind::gf2: {
            const Gf2Columns& g = *m.gf2_columns();
            out << "matroid gf2\n"
                << "rows " << g.rows << "\n";
            for (std::uint64_t col : g.cols) {
                out << "col ";
                for (int row = 0; row < g.rows; ++row) out << ((col >> row) & 1);
                out << "\n";
            }
            return out.str();
        }
        default: {
            out << "matroid explicit\n"
                << "n " << m.size() << "\n";
            for (const ElementSet& basis : m.bases()) {
                out << "basis";
                for (int e : basis) out << " " << e;
                out << "\n";
            }
            return out.str();
        }
    }
}

void write_matroid_file(const Matroid& m, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw input_error("cannot write matroid file '" + path + "'");
    out << to_text(m);
}

}  // namespace mdepth
