#include <exlab/errors.hpp>
#include <exlab/io.hpp>

#include <algorithm>
#include <fstream>
#include <sstream>
#include <string>

namespace exlab {

namespace {

/// Reads the next non-blank, non-comment line into fields. Returns false at EOF.
class LineReader {
public:
    explicit LineReader(std::istream & in) : in_(in) {}

    bool next(std::vector<long long> & fields)
    {
        std::string line;
        while (std::getline(in_, line)) {
            ++line_no_;
            if (auto hash = line.find('#'); hash != std::string::npos)
                line.erase(hash);
            std::istringstream ss(line);
            fields.clear();
            std::string tok;
            while (ss >> tok) {
                std::size_t used = 0;
                long long value = 0;
                try {
                    value = std::stoll(tok, &used);
                }
                catch (const std::exception &) {
                    throw ParseError(line_no_, "expected an integer, got '" + tok + "'");
                }
                if (used != tok.size())
                    throw ParseError(line_no_, "expected an integer, got '" + tok + "'");
                fields.push_back(value);
            }
            if (!fields.empty())
                return true;
        }
        return false;
    }

    int line() const { return line_no_; }

private:
    std::istream & in_;
    int line_no_ = 0;
};

int checked_int(long long v, int line, const char * what)
{
    if (v < 0 || v > 2'000'000'000LL)
        throw ParseError(line, std::string(what) + " out of range");
    return static_cast<int>(v);
}

std::ifstream open_in(const std::filesystem::path & path)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open " + path.string());
    return in;
}

std::ofstream open_out(const std::filesystem::path & path)
{
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot write " + path.string());
    return out;
}

struct RawEdges {
    int n = 0;
    int n1 = -1;
    int n2 = -1;
    std::vector<Edge> edges;
    std::vector<int> colors;
};

RawEdges parse_raw(std::istream & in, bool bipartite, bool colored)
{
    LineReader reader(in);
    std::vector<long long> f;
    RawEdges raw;
    if (!reader.next(f))
        throw ParseError(reader.line(), "missing vertex-count header");
    if (f.size() != 1)
        throw ParseError(reader.line(), "header must be a single vertex count");
    raw.n = checked_int(f[0], reader.line(), "vertex count");
    if (bipartite) {
        if (!reader.next(f) || f.size() != 2)
            throw ParseError(reader.line(), "expected part sizes \"n1 n2\"");
        raw.n1 = checked_int(f[0], reader.line(), "part size");
        raw.n2 = checked_int(f[1], reader.line(), "part size");
        if (raw.n1 + raw.n2 != raw.n)
            throw ValidationError("part sizes " + std::to_string(raw.n1) + "+" + std::to_string(raw.n2) +
                                  " do not sum to " + std::to_string(raw.n));
    }
    std::size_t want = colored ? 3 : 2;
    while (reader.next(f)) {
        if (f.size() != want)
            throw ParseError(reader.line(), colored ? "expected \"u v c\"" : "expected \"u v\"");
        int u = checked_int(f[0], reader.line(), "endpoint");
        int v = checked_int(f[1], reader.line(), "endpoint");
        if (u >= raw.n || v >= raw.n)
            throw ValidationError("line " + std::to_string(reader.line()) + ": endpoint >= n = " + std::to_string(raw.n));
        raw.edges.push_back({u, v});
        if (colored)
            raw.colors.push_back(checked_int(f[2], reader.line(), "colour"));
    }
    return raw;
}

} // namespace

Graph parse_graph(std::istream & in)
{
    auto raw = parse_raw(in, false, false);
    return Graph(raw.n, std::move(raw.edges));
}

void format_graph(const Graph & g, std::ostream & out)
{
    out << g.vertex_count() << '\n';
    for (const auto & e : g.edges())
        out << e.u << ' ' << e.v << '\n';
}

Graph read_graph(const std::filesystem::path & path)
{
    auto in = open_in(path);
    return parse_graph(in);
}

void write_graph(const Graph & g, const std::filesystem::path & path)
{
    auto out = open_out(path);
    format_graph(g, out);
}

BipartiteGraph parse_bipartite(std::istream & in)
{
    auto raw = parse_raw(in, true, false);
    std::vector<BipartiteGraph::Pair> pairs;
    pairs.reserve(raw.edges.size());
    for (auto e : raw.edges) {
        e = make_edge(e.u, e.v);
        if (e.u >= raw.n1 || e.v < raw.n1)
            throw ValidationError("edge (" + std::to_string(e.u) + "," + std::to_string(e.v) + ") does not cross the parts");
        pairs.push_back({e.u, e.v - raw.n1});
    }
    return BipartiteGraph(raw.n1, raw.n2, std::move(pairs));
}

void format_bipartite(const BipartiteGraph & g, std::ostream & out)
{
    out << g.left_size() + g.right_size() << '\n' << g.left_size() << ' ' << g.right_size() << '\n';
    for (const auto & e : g.edges())
        out << e.left << ' ' << g.left_size() + e.right << '\n';
}

BipartiteGraph read_bipartite(const std::filesystem::path & path)
{
    auto in = open_in(path);
    return parse_bipartite(in);
}

void write_bipartite(const BipartiteGraph & g, const std::filesystem::path & path)
{
    auto out = open_out(path);
    format_bipartite(g, out);
}

EdgeColoring parse_coloring(std::istream & in)
{
    auto raw = parse_raw(in, false, true);
    std::vector<std::pair<Edge, int>> tagged;
    int r = 1;
    for (std::size_t i = 0; i < raw.edges.size(); ++i) {
        tagged.push_back({make_edge(raw.edges[i].u, raw.edges[i].v), raw.colors[i]});
        r = std::max(r, raw.colors[i] + 1);
    }
    Graph g(raw.n, std::move(raw.edges));
    std::vector<int> colors(g.edge_count());
    for (const auto & [e, c] : tagged)
        colors[*g.edge_index(e.u, e.v)] = c;
    return EdgeColoring(std::move(g), std::move(colors), r);
}

void format_coloring(const EdgeColoring & c, std::ostream & out)
{
    out << c.graph().vertex_count() << '\n';
    for (std::size_t i = 0; i < c.graph().edge_count(); ++i)
        out << c.graph().edge(i).u << ' ' << c.graph().edge(i).v << ' ' << c.color(i) << '\n';
}

EdgeColoring read_coloring(const std::filesystem::path & path)
{
    auto in = open_in(path);
    return parse_coloring(in);
}

void write_coloring(const EdgeColoring & c, const std::filesystem::path & path)
{
    auto out = open_out(path);
    format_coloring(c, out);
}

} // namespace exlab
