#include <exlab/bitset.hpp>
#include <exlab/errors.hpp>
#include <exlab/removal.hpp>

#include <exlab/generators.hpp>

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace exlab::removal {

namespace {

std::size_t sz(int v) { return static_cast<std::size_t>(v); }

int part_of(const Tripartite & g, int v) { return v < g.q ? 0 : v < g.q + g.n ? 1 : 2; }

std::string host_problem(const Tripartite & g)
{
    if (g.q < 0 || g.n < 0)
        return "negative part size";
    if (g.coloring.graph().vertex_count() != g.q + 2 * g.n)
        return "vertex count differs from q + 2n";
    for (const auto & e : g.coloring.graph().edges())
        if (part_of(g, e.u) == part_of(g, e.v))
            return "edge inside a part";
    return {};
}

/// Per-colour apex rows of V1 and V2 vertices, plus the V1-V2 colour matrix.
struct Index {
    int q = 0, n = 0, r = 0;
    std::vector<Bitset> r1, r2; // [k * n + b]
    std::vector<int> bc;        // [b * n + c], -1 when absent

    explicit Index(const Tripartite & g)
        : q(g.q), n(g.n), r(g.coloring.color_count())
    {
        if (auto why = host_problem(g); !why.empty())
            throw ValidationError("tripartite host: " + why);
        r1.assign(sz(r * n), Bitset(sz(q)));
        r2.assign(sz(r * n), Bitset(sz(q)));
        bc.assign(sz(n) * sz(n), -1);
        const auto & gr = g.coloring.graph();
        for (std::size_t i = 0; i < gr.edge_count(); ++i) {
            auto e = gr.edge(i);
            int k = g.coloring.color(i);
            int pu = part_of(g, e.u), pv = part_of(g, e.v);
            if (pu == 0 && pv == 1)
                r1[sz(k * n + e.v - q)].set(sz(e.u));
            else if (pu == 0 && pv == 2)
                r2[sz(k * n + e.v - q - n)].set(sz(e.u));
            else
                bc[sz(e.u - q) * sz(n) + sz(e.v - q - n)] = k;
        }
    }

    int color(int b, int c) const { return bc[sz(b) * sz(n) + sz(c)]; }
    const Bitset & row1(int k, int b) const { return r1[sz(k * n + b)]; }
    const Bitset & row2(int k, int c) const { return r2[sz(k * n + c)]; }
};

struct Sorted {
    std::vector<Edge> edges;
    std::vector<int> colors;
};

Sorted sort_colored(std::vector<std::pair<Edge, int>> items)
{
    std::sort(items.begin(), items.end(), [](const auto & x, const auto & y) {
        return std::pair(x.first.u, x.first.v) < std::pair(y.first.u, y.first.v);
    });
    Sorted out;
    for (auto & [e, k] : items) {
        out.edges.push_back(e);
        out.colors.push_back(k);
    }
    return out;
}

/// Keep V0, the listed V1 and V2 vertices (relabelled in order), and drop
/// V1-V2 edges of colour `drop`.
Tripartite restrict(const Tripartite & g, const std::vector<int> & v1, const std::vector<int> & v2, int drop)
{
    std::vector<int> map(sz(g.q + 2 * g.n), -1);
    const int n2 = static_cast<int>(v1.size());
    for (int a = 0; a < g.q; ++a)
        map[sz(a)] = a;
    for (std::size_t i = 0; i < v1.size(); ++i)
        map[sz(g.v1(v1[i]))] = g.q + static_cast<int>(i);
    for (std::size_t i = 0; i < v2.size(); ++i)
        map[sz(g.v2(v2[i]))] = g.q + n2 + static_cast<int>(i);
    std::vector<std::pair<Edge, int>> items;
    const auto & gr = g.coloring.graph();
    for (std::size_t i = 0; i < gr.edge_count(); ++i) {
        auto e = gr.edge(i);
        int u = map[sz(e.u)], v = map[sz(e.v)];
        if (u < 0 || v < 0)
            continue;
        int k = g.coloring.color(i);
        if (part_of(g, e.u) == 1 && part_of(g, e.v) == 2 && k == drop)
            continue;
        items.push_back({make_edge(u, v), k});
    }
    auto s = sort_colored(std::move(items));
    Tripartite out;
    out.q = g.q;
    out.n = n2;
    out.coloring = EdgeColoring(Graph(g.q + 2 * n2, std::move(s.edges)), std::move(s.colors), g.coloring.color_count());
    return out;
}

double log_pow_bound(double base_log, double exponent) { return std::exp(base_log * exponent); }

} // namespace

// ---------------------------------------------------------------- covers

CoverCheck validate_cover(const TriangleCover & t, bool require_complete)
{
    auto fail = [](std::string why, int i = -1) { return CoverCheck{false, std::move(why), i}; };
    const auto & h = t.host;
    if (auto why = host_problem(h); !why.empty())
        return fail(why);
    const auto & g = h.coloring.graph();
    const int r = h.coloring.color_count();
    std::size_t cross = 0;
    for (const auto & e : g.edges())
        if (part_of(h, e.u) == 1 && part_of(h, e.v) == 2)
            ++cross;
    if (require_complete && cross != sz(h.n) * sz(h.n))
        return fail("V1 is not complete to V2");
    if (t.triangles.size() != cross)
        return fail("triangle count " + std::to_string(t.triangles.size()) + " differs from the V1-V2 edge count " +
                    std::to_string(cross));
    std::vector<char> used(g.edge_count(), 0);
    std::size_t covered = 0;
    for (std::size_t i = 0; i < t.triangles.size(); ++i) {
        const auto & tr = t.triangles[i];
        auto ti = static_cast<int>(i);
        if (tr.a < 0 || tr.a >= h.q || tr.b < 0 || tr.b >= h.n || tr.c < 0 || tr.c >= h.n)
            return fail("vertex index out of range", ti);
        if (tr.color < 0 || tr.color >= r)
            return fail("colour out of range", ti);
        const std::array<std::pair<int, int>, 3> sides{
            {{h.v1(tr.b), h.v2(tr.c)}, {h.v0(tr.a), h.v1(tr.b)}, {h.v0(tr.a), h.v2(tr.c)}}};
        for (auto [x, y] : sides) {
            auto idx = g.edge_index(x, y);
            if (!idx)
                return fail("edge {" + std::to_string(x) + "," + std::to_string(y) + "} missing", ti);
            if (h.coloring.color(*idx) != tr.color)
                return fail("triangle is not monochromatic in its colour", ti);
            if (used[*idx])
                return fail("edge {" + std::to_string(x) + "," + std::to_string(y) + "} used twice", ti);
            used[*idx] = 1;
        }
        ++covered;
    }
    if (covered != cross)
        return fail("V1-V2 edges left uncovered");
    return {};
}

Census triangle_census(const Tripartite & g)
{
    if (g.n > 300 || g.q > 1200)
        throw ResourceGuard("triangle_census: needs n <= 300 and q <= 1200");
    Index ix(g);
    Census out;
    out.per_color.assign(sz(ix.r), 0);
    out.per_apex.assign(sz(g.q), 0);
    for (int b = 0; b < g.n; ++b)
        for (int c = 0; c < g.n; ++c) {
            int k = ix.color(b, c);
            if (k < 0)
                continue;
            Bitset common = ix.row1(k, b);
            common &= ix.row2(k, c);
            std::size_t cnt = 0;
            common.for_each([&](std::size_t a) {
                ++out.per_apex[a];
                ++cnt;
            });
            out.per_color[sz(k)] += cnt;
            out.total += cnt;
        }
    return out;
}

// ---------------------------------------------------------------- lemma step

nlohmann::json StepResult::to_json() const
{
    return {{"v", v},
            {"color", color},
            {"size", v1.size()},
            {"v1", v1},
            {"v2", v2},
            {"census", census},
            {"delta", delta},
            {"edges_in_color", edges_in_color},
            {"edge_bound", edge_bound},
            {"size_floor", size_floor},
            {"a_size", a_size},
            {"clauses_ok", clauses_ok}};
}

StepResult sparse_pair_step(const TriangleCover & t, int r)
{
    auto check = validate_cover(t, false);
    if (!check.pass)
        throw ValidationError("sparse_pair_step: cover invalid: " + check.reason);
    const auto & h = t.host;
    const int n = h.n, q = h.q;
    const std::uint64_t m = t.triangles.size();
    if (r <= 0)
        r = h.coloring.color_count();
    if (n == 0 || q == 0)
        throw ValidationError("sparse_pair_step: empty part");
    if (2 * m < sz(n) * sz(n))
        throw ValidationError("sparse_pair_step: hypothesis m >= n^2/2 fails (m = " + std::to_string(m) +
                              ", n = " + std::to_string(n) + ")");
    const int colors = h.coloring.color_count();
    auto census = triangle_census(h);
    std::vector<std::uint64_t> through(sz(q), 0);
    std::vector<std::uint64_t> through_color(sz(q) * sz(colors), 0);
    for (const auto & tr : t.triangles) {
        ++through[sz(tr.a)];
        ++through_color[sz(tr.a) * sz(colors) + sz(tr.color)];
    }
    StepResult out;
    out.census = census.total;
    out.delta = static_cast<double>(census.total) / std::pow(static_cast<double>(n), 3);
    out.edge_bound = 4.0 * static_cast<double>(census.total) / n;
    out.size_floor = static_cast<double>(n) * n / (4.0 * q * r);
    // A: apexes in at least m / 2q cover triangles
    for (int a = 0; a < q; ++a) {
        bool in_a = 2 * sz(q) * through[sz(a)] >= m;
        if (!in_a)
            continue;
        ++out.a_size;
        if (out.v < 0 && census.per_apex[sz(a)] * sz(n) <= 4 * census.total)
            out.v = a;
    }
    if (out.v < 0)
        throw std::logic_error("sparse_pair_step: no apex below the triangle threshold");
    std::uint64_t best = 0;
    for (int k = 0; k < colors; ++k)
        if (through_color[sz(out.v) * sz(colors) + sz(k)] > best) {
            best = through_color[sz(out.v) * sz(colors) + sz(k)];
            out.color = k;
        }
    for (const auto & tr : t.triangles)
        if (tr.a == out.v && tr.color == out.color) {
            out.v1.push_back(tr.b);
            out.v2.push_back(tr.c);
        }
    std::sort(out.v1.begin(), out.v1.end());
    std::sort(out.v2.begin(), out.v2.end());
    const std::size_t size = std::min(out.v1.size(), out.v2.size());
    out.v1.resize(size);
    out.v2.resize(size);
    Index ix(h);
    for (int b : out.v1)
        for (int c : out.v2)
            if (ix.color(b, c) == out.color)
                ++out.edges_in_color;
    out.clauses_ok = 4 * out.a_size >= n && best * 2 * sz(q) * sz(r) >= m &&
                     static_cast<double>(size) + 1e-9 >= out.size_floor &&
                     out.edges_in_color * sz(n) <= 4 * census.total;
    return out;
}

// ---------------------------------------------------------------- diamonds

std::optional<Diamond> diamond_find(const Tripartite & g)
{
    Index ix(g);
    for (int b = 0; b < g.n; ++b)
        for (int c = 0; c < g.n; ++c) {
            int k = ix.color(b, c);
            if (k < 0)
                continue;
            Bitset common = ix.row1(k, b);
            common &= ix.row2(k, c);
            std::size_t first = common.find_first();
            if (first >= common.size())
                continue;
            std::size_t second = common.find_next(first + 1);
            if (second < common.size())
                return Diamond{b, c, static_cast<int>(first), static_cast<int>(second), k};
        }
    return std::nullopt;
}

std::optional<Diamond> diamond_find_transposed(const Tripartite & g)
{
    if (auto why = host_problem(g); !why.empty())
        throw ValidationError("tripartite host: " + why);
    const auto & gr = g.coloring.graph();
    std::vector<int> first_apex(sz(g.n) * sz(g.n), -1);
    for (int a = 0; a < g.q; ++a) {
        std::vector<std::pair<int, int>> left, right; // (vertex, colour)
        for (int w : gr.neighbors(a)) {
            int k = g.coloring.color_of(a, w);
            if (part_of(g, w) == 1)
                left.push_back({w - g.q, k});
            else
                right.push_back({w - g.q - g.n, k});
        }
        for (auto [b, kb] : left)
            for (auto [c, kc] : right) {
                if (kb != kc)
                    continue;
                auto idx = gr.edge_index(g.v1(b), g.v2(c));
                if (!idx || g.coloring.color(*idx) != kb)
                    continue;
                int & slot = first_apex[sz(b) * sz(g.n) + sz(c)];
                if (slot >= 0)
                    return Diamond{b, c, slot, a, kb};
                slot = a;
            }
    }
    return std::nullopt;
}

// ---------------------------------------------------------------- iteration

nlohmann::json IterResult::to_json() const
{
    nlohmann::json levels = nlohmann::json::array();
    for (const auto & l : trace) {
        nlohmann::json j{{"i", l.i},         {"n", l.n},           {"r", l.r},
                         {"edges", l.edges}, {"s", l.s},           {"census", l.census},
                         {"proof_n", l.proof_n}, {"proof_s", l.proof_s}};
        if (l.step) {
            auto st = l.step->to_json();
            st.erase("v1");
            st.erase("v2");
            j["step"] = st;
        }
        if (l.diamond)
            j["diamond"] = removal::to_json(*l.diamond);
        levels.push_back(std::move(j));
    }
    nlohmann::json out{{"verdict", verdict == IterVerdict::diamond_found ? "diamond_found" : "bound_holds"},
                       {"stop_reason", stop_reason},
                       {"theorem_bound", theorem_bound},
                       {"theorem_bound_ok", theorem_bound_ok},
                       {"base_bound_ok", base_bound_ok},
                       {"bookkeeping_ok", bookkeeping_ok},
                       {"trace", levels}};
    if (base_bound)
        out["base_bound"] = *base_bound;
    if (diamond)
        out["diamond"] = removal::to_json(*diamond);
    return out;
}

IterResult removal_iterate(const TriangleCover & t, int r, bool stop_at_diamond)
{
    auto check = validate_cover(t, false);
    if (!check.pass)
        throw ValidationError("removal_iterate: cover invalid: " + check.reason);
    if (r <= 0)
        r = t.host.coloring.color_count();
    IterResult out;
    const double n0 = t.host.n;
    const double q = t.host.q;
    TriangleCover cur = t;
    std::vector<int> v1map(sz(t.host.n)), v2map(sz(t.host.n));
    for (int i = 0; i < t.host.n; ++i)
        v1map[sz(i)] = v2map[sz(i)] = i;
    std::uint64_t f0 = 0;
    double prev_proof_n = 0, prev_proof_s = 0;
    for (int i = 0;; ++i) {
        Level lvl;
        lvl.i = i;
        lvl.n = cur.host.n;
        lvl.r = r - i;
        lvl.edges = cur.triangles.size();
        lvl.s = sz(lvl.n) * sz(lvl.n) - lvl.edges;
        lvl.census = lvl.n > 0 ? triangle_census(cur.host).total : 0;
        if (i == 0) {
            f0 = lvl.census;
            lvl.proof_n = n0;
            lvl.proof_s = static_cast<double>(lvl.s);
            const double c = q / n0;
            out.theorem_bound = n0 > 0 ? log_pow_bound(-std::log(4.0 * c * r), std::pow(2.0, r + 3)) * n0 * n0 * n0 : 0;
            out.theorem_bound_ok = static_cast<double>(f0) >= out.theorem_bound;
        }
        else {
            const double e = std::pow(2.0, i);
            lvl.proof_n = std::exp(e * std::log(n0) - (e - 1) * std::log(4.0 * q * r));
            lvl.proof_s = prev_proof_s + 4.0 * static_cast<double>(f0) / prev_proof_n;
            if (lvl.n + 1e-9 < lvl.proof_n || static_cast<double>(lvl.s) > lvl.proof_s + 1e-9)
                out.bookkeeping_ok = false;
        }
        prev_proof_n = lvl.proof_n;
        prev_proof_s = lvl.proof_s;

        if (lvl.n > 0) {
            if (auto d = diamond_find(cur.host)) {
                d->b = v1map[sz(d->b)];
                d->c = v2map[sz(d->c)];
                lvl.diamond = d;
                if (!out.diamond)
                    out.diamond = d;
            }
            else if (lvl.census > lvl.edges) {
                throw std::logic_error("removal_iterate: census exceeds the edge count but no diamond was found");
            }
        }
        auto stop = [&](std::string why) {
            out.stop_reason = std::move(why);
            out.trace.push_back(std::move(lvl));
        };
        if (lvl.diamond && stop_at_diamond) {
            stop("diamond");
            break;
        }
        if (lvl.n == 0 || lvl.edges == 0) {
            stop("empty");
            break;
        }
        if (2 * lvl.edges < sz(lvl.n) * sz(lvl.n)) {
            stop("sparse: s_i >= n_i^2/2");
            break;
        }
        lvl.step = sparse_pair_step(cur, lvl.r);
        if (lvl.r <= 1) {
            const double n = lvl.n;
            out.base_bound = std::pow(n, 5) / (64.0 * q * q) - n * static_cast<double>(lvl.s) / 4.0;
            out.base_bound_ok = static_cast<double>(lvl.census) + 1e-9 >= *out.base_bound;
            stop("base case r = 1");
            break;
        }
        const auto & st = *lvl.step;
        TriangleCover next;
        next.host = restrict(cur.host, st.v1, st.v2, st.color);
        std::vector<int> in1(sz(cur.host.n), -1), in2(sz(cur.host.n), -1);
        for (std::size_t k = 0; k < st.v1.size(); ++k) {
            in1[sz(st.v1[k])] = static_cast<int>(k);
            in2[sz(st.v2[k])] = static_cast<int>(k);
        }
        for (const auto & tr : cur.triangles)
            if (in1[sz(tr.b)] >= 0 && in2[sz(tr.c)] >= 0 && tr.color != st.color)
                next.triangles.push_back({tr.a, in1[sz(tr.b)], in2[sz(tr.c)], tr.color});
        std::vector<int> m1, m2;
        for (std::size_t k = 0; k < st.v1.size(); ++k) {
            m1.push_back(v1map[sz(st.v1[k])]);
            m2.push_back(v2map[sz(st.v2[k])]);
        }
        v1map = std::move(m1);
        v2map = std::move(m2);
        out.trace.push_back(std::move(lvl));
        if (auto c = validate_cover(next, false); !c.pass)
            throw std::logic_error("removal_iterate: restricted cover invalid: " + c.reason);
        cur = std::move(next);
    }
    out.verdict = out.diamond ? IterVerdict::diamond_found : IterVerdict::bound_holds;
    return out;
}

// ---------------------------------------------------------------- grids

GridColoring parse_grid(std::istream & in)
{
    std::string line;
    int lineno = 0;
    auto next_line = [&]() -> bool {
        while (std::getline(in, line)) {
            ++lineno;
            if (auto h = line.find('#'); h != std::string::npos)
                line.erase(h);
            if (line.find_first_not_of(" \t\r") != std::string::npos)
                return true;
        }
        return false;
    };
    if (!next_line())
        throw ParseError(lineno, "missing grid size");
    GridColoring g;
    {
        std::istringstream ss(line);
        std::string extra;
        if (!(ss >> g.n) || g.n < 1 || (ss >> extra))
            throw ParseError(lineno, "grid size must be one positive integer");
    }
    int top = 0;
    for (int x = 0; x < g.n; ++x) {
        if (!next_line())
            throw ParseError(lineno, "expected " + std::to_string(g.n) + " rows");
        std::istringstream ss(line);
        for (int y = 0; y < g.n; ++y) {
            int c = 0;
            if (!(ss >> c) || c < 0)
                throw ParseError(lineno, "expected " + std::to_string(g.n) + " non-negative colours");
            g.cells.push_back(c);
            top = std::max(top, c);
        }
        std::string extra;
        if (ss >> extra)
            throw ParseError(lineno, "too many entries in row");
    }
    if (next_line())
        throw ParseError(lineno, "trailing content after the grid");
    g.r = top + 1;
    return g;
}

void format_grid(const GridColoring & g, std::ostream & out)
{
    out << g.n << '\n';
    for (int x = 1; x <= g.n; ++x) {
        for (int y = 1; y <= g.n; ++y)
            out << (y > 1 ? " " : "") << g.at(x, y);
        out << '\n';
    }
}

GridColoring random_grid(int n, int r, RngStream & rng)
{
    if (n < 1 || r < 1)
        throw std::invalid_argument("random_grid: N and r must be positive");
    GridColoring g;
    g.n = n;
    g.r = r;
    g.cells.resize(sz(n) * sz(n));
    for (auto & c : g.cells)
        c = static_cast<int>(rng.uniform(sz(r)));
    return g;
}

bool verify_corner(const GridColoring & g, const Corner & c)
{
    auto in = [&](int v) { return v >= 1 && v <= g.n; };
    if (c.d == 0 || !in(c.x) || !in(c.y) || !in(c.x + c.d) || !in(c.y + c.d))
        return false;
    return g.at(c.x, c.y) == c.color && g.at(c.x + c.d, c.y) == c.color && g.at(c.x, c.y + c.d) == c.color;
}

std::vector<Corner> corner_oracle(const GridColoring & g)
{
    if (g.n > 300)
        throw ResourceGuard("corner_oracle: N <= 300");
    std::vector<Corner> out;
    for (int x = 1; x <= g.n; ++x)
        for (int y = 1; y <= g.n; ++y) {
            int k = g.at(x, y);
            int lo = std::max(1 - x, 1 - y), hi = std::min(g.n - x, g.n - y);
            for (int d = lo; d <= hi; ++d)
                if (d != 0 && g.at(x + d, y) == k && g.at(x, y + d) == k)
                    out.push_back({x, y, d, k});
        }
    return out;
}

TriangleCover grid_reduction(const GridColoring & g)
{
    auto lines = grid_lines(g.n);
    std::vector<int> colors(lines.graph.edge_count());
    for (std::size_t i = 0; i < colors.size(); ++i) {
        auto [x, y] = lines.point_of_edge[i];
        colors[i] = g.at(x + 1, y + 1);
    }
    TriangleCover out;
    out.host.q = lines.v0_size();
    out.host.n = g.n;
    out.host.coloring = EdgeColoring(std::move(lines.graph), std::move(colors), g.r);
    for (int x = 0; x < g.n; ++x)
        for (int y = 0; y < g.n; ++y)
            out.triangles.push_back({x + y, x, y, g.at(x + 1, y + 1)});
    return out;
}

GridResult grid_pipeline(const GridColoring & g, bool cross_check)
{
    if (g.n > 100)
        throw ResourceGuard("grid_pipeline: N <= 100");
    auto cover = grid_reduction(g);
    if (auto c = validate_cover(cover); !c.pass)
        throw std::logic_error("grid_pipeline: reduction failed validation: " + c.reason);
    GridResult out;
    out.diamond = diamond_find(cover.host);
    if (out.diamond) {
        const auto & d = *out.diamond;
        const int point = d.b + d.c;
        int apex = d.apex1 != point ? d.apex1 : d.apex2;
        if (apex == point)
            throw std::logic_error("grid_pipeline: diamond has no apex off the point diagonal");
        Corner corner{d.b + 1, d.c + 1, apex - point, d.color};
        if (!verify_corner(g, corner))
            throw std::logic_error("grid_pipeline: converted corner failed verification");
        out.corner = corner;
    }
    if (cross_check) {
        auto all = corner_oracle(g);
        out.oracle_corners = all.size();
        out.oracle_agrees = out.corner ? std::find(all.begin(), all.end(), *out.corner) != all.end() : all.empty();
    }
    return out;
}

// ---------------------------------------------------------------- mutations

std::string cover_mutation_name(int kind)
{
    static const char * names[cover_mutation_kinds] = {
        "drop_triangle",     "duplicate_triangle", "relabel_color",       "apex_not_adjacent",  "apex_out_of_range",
        "v1_out_of_range",   "v2_negative",        "swap_sides",          "move_v1",            "extra_triangle",
        "swap_color_labels", "negative_color",     "color_out_of_range",  "copy_over",          "recolor_cross_edge",
        "recolor_apex_edge", "delete_cross_edge",  "part_size_mismatch",  "shift_apexes",       "empty_cover"};
    if (kind < 0 || kind >= cover_mutation_kinds)
        throw std::invalid_argument("cover_mutation_name: unknown kind");
    return names[kind];
}

TriangleCover mutate_cover(const TriangleCover & t, int kind, RngStream & rng)
{
    if (t.triangles.empty())
        throw std::invalid_argument("mutate_cover: empty cover");
    TriangleCover m = t;
    auto & tri = m.triangles;
    const auto & h = t.host;
    const int r = h.coloring.color_count();
    const std::size_t pick = rng.uniform(tri.size());
    auto & one = tri[pick];
    auto recolor_edge = [&](int x, int y) {
        const auto & g = h.coloring.graph();
        std::vector<int> colors(h.coloring.colors().begin(), h.coloring.colors().end());
        auto idx = *g.edge_index(x, y);
        int rr = std::max(r, 2);
        colors[idx] = (colors[idx] + 1) % rr;
        m.host.coloring = EdgeColoring(g, std::move(colors), rr);
    };
    switch (kind) {
    case 0:
        tri.erase(tri.begin() + static_cast<std::ptrdiff_t>(pick));
        break;
    case 1:
        tri.push_back(one);
        break;
    case 2:
        one.color = r >= 2 ? (one.color + 1) % r : r;
        break;
    case 3: {
        const auto & g = h.coloring.graph();
        int a = h.q;
        for (int cand = 0; cand < h.q; ++cand)
            if (!g.has_edge(h.v0(cand), h.v1(one.b))) {
                a = cand;
                break;
            }
        one.a = a;
        break;
    }
    case 4:
        one.a = h.q;
        break;
    case 5:
        one.b = h.n;
        break;
    case 6:
        one.c = -1;
        break;
    case 7: {
        auto it = std::find_if(tri.begin(), tri.end(), [](const Triangle & x) { return x.b != x.c; });
        if (it == tri.end())
            one.c = h.n;
        else
            std::swap(it->b, it->c);
        break;
    }
    case 8:
        one.b = h.n > 1 ? (one.b + 1) % h.n : h.n;
        break;
    case 9:
        tri.push_back({(one.a + 1) % std::max(h.q, 1), one.b, one.c, one.color});
        break;
    case 10: {
        auto it = std::find_if(tri.begin(), tri.end(), [&](const Triangle & x) { return x.color != tri[0].color; });
        if (it == tri.end())
            tri[0].color = r;
        else
            std::swap(it->color, tri[0].color);
        break;
    }
    case 11:
        one.color = -1;
        break;
    case 12:
        one.color = r;
        break;
    case 13:
        if (tri.size() < 2)
            tri.clear();
        else
            tri[pick] = tri[(pick + 1) % tri.size()];
        break;
    case 14:
        recolor_edge(h.v1(one.b), h.v2(one.c));
        break;
    case 15:
        recolor_edge(h.v0(one.a), h.v1(one.b));
        break;
    case 16: {
        const auto & g = h.coloring.graph();
        auto drop = *g.edge_index(h.v1(one.b), h.v2(one.c));
        std::vector<std::size_t> keep;
        std::vector<int> colors;
        for (std::size_t i = 0; i < g.edge_count(); ++i)
            if (i != drop) {
                keep.push_back(i);
                colors.push_back(h.coloring.color(i));
            }
        m.host.coloring = EdgeColoring(g.edge_subgraph(keep), std::move(colors), r);
        break;
    }
    case 17:
        m.host.q += 1;
        break;
    case 18:
        if (h.q <= 1)
            tri[0].a = h.q;
        else
            for (auto & x : tri)
                x.a = (x.a + 1) % h.q;
        break;
    case 19:
        tri.clear();
        break;
    default:
        throw std::invalid_argument("mutate_cover: unknown kind");
    }
    return m;
}

nlohmann::json to_json(const Diamond & d)
{
    return {{"b", d.b}, {"c", d.c}, {"apexes", {d.apex1, d.apex2}}, {"color", d.color}};
}

nlohmann::json to_json(const Corner & c) { return {{"x", c.x}, {"y", c.y}, {"d", c.d}, {"color", c.color}}; }

} // namespace exlab::removal
