#include <doctest.h>

#include <exlab/errors.hpp>
#include <exlab/removal.hpp>

#include <algorithm>
#include <cmath>
#include <sstream>

using namespace exlab;
using namespace exlab::removal;

namespace {

Tripartite random_tripartite(int q, int n, int r, double p, RngStream & rng)
{
    std::vector<Edge> edges;
    std::vector<int> colors;
    // generated in sorted order so colours stay aligned with Graph's edge list
    std::vector<std::pair<Edge, int>> items;
    for (int a = 0; a < q; ++a)
        for (int w = q; w < q + 2 * n; ++w)
            if (rng.bernoulli(p))
                items.push_back({make_edge(a, w), static_cast<int>(rng.uniform(static_cast<std::size_t>(r)))});
    for (int b = q; b < q + n; ++b)
        for (int c = q + n; c < q + 2 * n; ++c)
            if (rng.bernoulli(p))
                items.push_back({make_edge(b, c), static_cast<int>(rng.uniform(static_cast<std::size_t>(r)))});
    std::sort(items.begin(), items.end(),
              [](const auto & x, const auto & y) { return std::pair(x.first.u, x.first.v) < std::pair(y.first.u, y.first.v); });
    for (auto & [e, k] : items) {
        edges.push_back(e);
        colors.push_back(k);
    }
    Tripartite t;
    t.q = q;
    t.n = n;
    t.coloring = EdgeColoring(Graph(q + 2 * n, edges), colors, r);
    return t;
}

std::uint64_t reference_census(const Tripartite & t)
{
    const auto & g = t.coloring.graph();
    std::uint64_t count = 0;
    for (int a = 0; a < t.q; ++a)
        for (int b = 0; b < t.n; ++b)
            for (int c = 0; c < t.n; ++c) {
                int x = t.v0(a), y = t.v1(b), z = t.v2(c);
                if (!g.has_edge(x, y) || !g.has_edge(x, z) || !g.has_edge(y, z))
                    continue;
                int k = t.coloring.color_of(x, y);
                if (t.coloring.color_of(x, z) == k && t.coloring.color_of(y, z) == k)
                    ++count;
            }
    return count;
}

/// Every V1-V2 edge gets its own apex; no other triangles exist.
TriangleCover private_apex_cover(int n, int r, RngStream & rng)
{
    std::vector<std::pair<Edge, int>> items;
    TriangleCover t;
    t.host.q = n * n;
    t.host.n = n;
    for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c) {
            int a = b * n + c;
            int k = static_cast<int>(rng.uniform(static_cast<std::size_t>(r)));
            items.push_back({make_edge(t.host.v0(a), t.host.v1(b)), k});
            items.push_back({make_edge(t.host.v0(a), t.host.v2(c)), k});
            items.push_back({make_edge(t.host.v1(b), t.host.v2(c)), k});
            t.triangles.push_back({a, b, c, k});
        }
    std::sort(items.begin(), items.end(),
              [](const auto & x, const auto & y) { return std::pair(x.first.u, x.first.v) < std::pair(y.first.u, y.first.v); });
    std::vector<Edge> edges;
    std::vector<int> colors;
    for (auto & [e, k] : items) {
        edges.push_back(e);
        colors.push_back(k);
    }
    t.host.coloring = EdgeColoring(Graph(t.host.q + 2 * n, edges), colors, r);
    return t;
}

GridColoring constant_grid(int n, int color = 0)
{
    return GridColoring{n, color + 1, std::vector<int>(static_cast<std::size_t>(n * n), color)};
}

GridColoring grid_from_mask(int n, unsigned mask)
{
    GridColoring g{n, 2, std::vector<int>(static_cast<std::size_t>(n * n), 0)};
    for (std::size_t i = 0; i < g.cells.size(); ++i)
        g.cells[i] = static_cast<int>(mask >> i & 1);
    return g;
}

} // namespace

TEST_CASE("census")
{
    // one apex, complete, single colour: n^2 triangles
    std::vector<std::pair<Edge, int>> items;
    Tripartite star;
    star.q = 1;
    star.n = 5;
    std::vector<Edge> edges;
    for (int b = 0; b < 5; ++b)
        edges.push_back(make_edge(0, star.v1(b)));
    for (int c = 0; c < 5; ++c)
        edges.push_back(make_edge(0, star.v2(c)));
    for (int b = 0; b < 5; ++b)
        for (int c = 0; c < 5; ++c)
            edges.push_back(make_edge(star.v1(b), star.v2(c)));
    Graph sg(11, edges);
    star.coloring = EdgeColoring(sg, std::vector<int>(sg.edge_count(), 0), 1);
    CHECK(triangle_census(star).total == 25);

    auto mono = grid_reduction(constant_grid(7));
    CHECK(triangle_census(mono.host).total >= 49);

    RngStream rng(3);
    for (int seed = 0; seed < 20; ++seed) {
        auto t = random_tripartite(2 + static_cast<int>(rng.uniform(8)), 1 + static_cast<int>(rng.uniform(9)), 2, 0.6, rng);
        auto c = triangle_census(t);
        CHECK(c.total == reference_census(t));
        CHECK(c.per_color[0] + c.per_color[1] == c.total);
        std::uint64_t apex_sum = 0;
        for (auto x : c.per_apex)
            apex_sum += x;
        CHECK(apex_sum == c.total);
    }
    Tripartite big;
    big.q = 1;
    big.n = 301;
    big.coloring = EdgeColoring(Graph(603, {}), {}, 1);
    CHECK_THROWS_AS(triangle_census(big), ResourceGuard);
}

TEST_CASE("cover validation and mutations")
{
    RngStream rng(11);
    int rejected = 0;
    for (int n = 1; n <= 8; ++n)
        for (int r = 1; r <= 3; ++r) {
            auto g = random_grid(n, r, rng);
            auto cover = grid_reduction(g);
            REQUIRE(validate_cover(cover).pass);
            CHECK(cover.triangles.size() == static_cast<std::size_t>(n * n));
            for (int kind = 0; kind < cover_mutation_kinds; ++kind) {
                auto bad = mutate_cover(cover, kind, rng);
                CAPTURE(cover_mutation_name(kind));
                CAPTURE(n);
                CAPTURE(r);
                auto res = validate_cover(bad);
                CHECK_FALSE(res.pass);
                rejected += !res.pass;
            }
        }
    CHECK(rejected == 8 * 3 * cover_mutation_kinds);
    CHECK_THROWS_AS(cover_mutation_name(20), std::invalid_argument);

    auto own = private_apex_cover(4, 3, rng);
    CHECK(validate_cover(own).pass);
}

TEST_CASE("sparse pair step")
{
    // a single colour: the step still applies
    auto mono = grid_reduction(constant_grid(6));
    auto st = sparse_pair_step(mono);
    CHECK(st.clauses_ok);
    CHECK(st.color == 0);
    CHECK(st.v1.size() == st.v2.size());

    RngStream rng(2024);
    for (int trial = 0; trial < 20; ++trial) {
        auto g = random_grid(15, 2, rng);
        auto cover = grid_reduction(g);
        auto s = sparse_pair_step(cover);
        CAPTURE(trial);
        CHECK(s.clauses_ok);
        // recount from scratch
        const auto & h = cover.host;
        std::uint64_t red = 0;
        for (int b : s.v1)
            for (int c : s.v2)
                if (h.coloring.color_of(h.v1(b), h.v2(c)) == s.color)
                    ++red;
        CHECK(red == s.edges_in_color);
        CHECK(static_cast<double>(red) <= 4.0 * static_cast<double>(reference_census(h)) / 15 + 1e-9);
        CHECK(s.v1.size() == s.v2.size());
        CHECK(static_cast<double>(s.v1.size()) >= 15.0 * 15 / (4.0 * 29 * 2));
        CHECK(s.census == reference_census(h));
        int through = 0;
        for (const auto & t : cover.triangles)
            through += t.a == s.v;
        CHECK(2 * 29 * through >= 225);
    }

    // a diamond is present and the step is still valid
    auto corner_grid = constant_grid(3);
    corner_grid.r = 2;
    corner_grid.cells[4] = 1;
    auto dc = grid_reduction(corner_grid);
    CHECK(diamond_find(dc.host).has_value());
    CHECK(sparse_pair_step(dc).clauses_ok);

    // m < n^2/2
    auto sparse = private_apex_cover(4, 2, rng);
    sparse.triangles.resize(7);
    std::vector<std::size_t> keep;
    const auto & sg = sparse.host.coloring.graph();
    std::vector<int> colors;
    for (std::size_t i = 0; i < sg.edge_count(); ++i) {
        auto e = sg.edge(i);
        bool cross = e.u >= 16 && e.v >= 16;
        bool listed = false;
        for (const auto & t : sparse.triangles)
            listed |= e.u == sparse.host.v1(t.b) && e.v == sparse.host.v2(t.c);
        if (!cross || listed) {
            keep.push_back(i);
            colors.push_back(sparse.host.coloring.color(i));
        }
    }
    sparse.host.coloring = EdgeColoring(sg.edge_subgraph(keep), colors, 2);
    REQUIRE(validate_cover(sparse, false).pass);
    CHECK_THROWS_AS(sparse_pair_step(sparse), ValidationError);
    auto invalid = mutate_cover(mono, 0, rng);
    CHECK_THROWS_AS(sparse_pair_step(invalid), ValidationError);
}

TEST_CASE("diamonds")
{
    // two triangles on edge (0,0) in colour 0
    Tripartite t;
    t.q = 2;
    t.n = 1;
    Graph g(4, {make_edge(0, 2), make_edge(0, 3), make_edge(1, 2), make_edge(1, 3), make_edge(2, 3)});
    t.coloring = EdgeColoring(g, std::vector<int>(5, 0), 1);
    auto d = diamond_find(t);
    REQUIRE(d);
    CHECK(d->b == 0);
    CHECK(d->c == 0);
    CHECK(d->apex1 == 0);
    CHECK(d->apex2 == 1);

    RngStream rng(8);
    auto own = private_apex_cover(6, 3, rng);
    CHECK_FALSE(diamond_find(own.host));
    CHECK_FALSE(diamond_find_transposed(own.host));

    CHECK(diamond_find(grid_reduction(constant_grid(4)).host).has_value());

    int found = 0;
    for (int seed = 0; seed < 20; ++seed) {
        RngStream s(static_cast<std::uint64_t>(seed));
        auto tp = random_tripartite(3 + static_cast<int>(s.uniform(6)), 2 + static_cast<int>(s.uniform(6)), 3, 0.35, s);
        auto a = diamond_find(tp);
        auto b = diamond_find_transposed(tp);
        CHECK(a.has_value() == b.has_value());
        found += a.has_value();
        for (const auto & x : {a, b})
            if (x) {
                int k = x->color;
                for (int apex : {x->apex1, x->apex2}) {
                    CHECK(tp.coloring.color_of(tp.v0(apex), tp.v1(x->b)) == k);
                    CHECK(tp.coloring.color_of(tp.v0(apex), tp.v2(x->c)) == k);
                }
                CHECK(x->apex1 != x->apex2);
            }
    }
    CHECK(found > 0);
    CHECK(found < 20);
}

TEST_CASE("iteration")
{
    // r = 1: base case
    auto mono = grid_reduction(constant_grid(6));
    auto res = removal_iterate(mono, 1, false);
    REQUIRE(res.base_bound);
    CHECK(res.stop_reason == "base case r = 1");
    CHECK(res.base_bound_ok);
    const double n = 6, q = 11;
    CHECK(*res.base_bound == doctest::Approx(std::pow(n, 5) / (64 * q * q)));
    CHECK(res.verdict == IterVerdict::diamond_found);
    CHECK(res.theorem_bound_ok);
    CHECK(res.theorem_bound < 1);

    // pigeonhole on random grids
    RngStream rng(99);
    int fired = 0;
    for (int trial = 0; trial < 30; ++trial) {
        auto cover = grid_reduction(random_grid(2 + static_cast<int>(rng.uniform(9)), 2, rng));
        auto c = triangle_census(cover.host);
        auto it = removal_iterate(cover);
        if (c.total > cover.triangles.size()) {
            ++fired;
            CHECK(it.verdict == IterVerdict::diamond_found);
            CHECK(diamond_find(cover.host).has_value());
        }
    }
    CHECK(fired > 0);

    // descent on a 2-colour grid
    auto g15 = grid_reduction(random_grid(15, 2, rng));
    auto desc = removal_iterate(g15, 2, false);
    REQUIRE(desc.trace.size() >= 2);
    CHECK(desc.trace[0].proof_n == 15);
    CHECK(desc.trace[1].proof_n == doctest::Approx(225.0 / (4 * 29 * 2)));
    CHECK(desc.trace[1].n >= desc.trace[1].proof_n);
    CHECK(desc.bookkeeping_ok);
    CHECK(desc.trace[0].step->clauses_ok);
    CHECK(desc.trace[1].r == 1);
    CHECK(desc.trace[1].n == static_cast<int>(desc.trace[0].step->v1.size()));

    // no diamond anywhere: bound_holds
    auto own = private_apex_cover(5, 2, rng);
    auto clean = removal_iterate(own);
    CHECK(clean.verdict == IterVerdict::bound_holds);
    CHECK_FALSE(clean.diamond);
    CHECK(clean.bookkeeping_ok);
    auto j = clean.to_json();
    CHECK(j["verdict"] == "bound_holds");
}

TEST_CASE("corners")
{
    auto two = constant_grid(2);
    auto r = grid_pipeline(two);
    REQUIRE(r.corner);
    CHECK(verify_corner(two, *r.corner));
    CHECK(r.oracle_agrees);
    auto all = corner_oracle(two);
    CHECK(all == std::vector<Corner>{{1, 1, 1, 0}, {2, 2, -1, 0}});
    CHECK(r.corner->d != 0);
    CHECK((*r.corner == Corner{1, 1, 1, 0} || *r.corner == Corner{2, 2, -1, 0}));

    CHECK(corner_oracle(constant_grid(1)).empty());
    CHECK_FALSE(grid_pipeline(constant_grid(1)).corner);

    GridColoring checker{3, 2, {0, 1, 0, 1, 0, 1, 0, 1, 0}};
    auto cr = grid_pipeline(checker);
    CHECK(cr.oracle_agrees);
    CHECK(cr.oracle_corners == corner_oracle(checker).size());

    CHECK_FALSE(verify_corner(two, {1, 1, 0, 0}));
    CHECK_FALSE(verify_corner(two, {2, 2, 1, 0}));

    // every 2-colouring for N <= 3, and N = 4
    int min_forcing = 0;
    for (int side = 1; side <= 4; ++side) {
        bool all_have = true;
        const unsigned total = 1u << (side * side);
        for (unsigned mask = 0; mask < total; ++mask) {
            auto g = grid_from_mask(side, mask);
            auto oracle = corner_oracle(g);
            if (oracle.empty())
                all_have = false;
            if (side <= 3 || mask % 16 == 0) {
                auto p = grid_pipeline(g, false);
                CHECK(p.corner.has_value() == !oracle.empty());
                if (p.corner)
                    CHECK(std::find(oracle.begin(), oracle.end(), *p.corner) != oracle.end());
            }
        }
        if (all_have && min_forcing == 0)
            min_forcing = side;
    }
    CHECK(min_forcing == 0); // some 2-colouring of the 4 x 4 grid has no corner

    RngStream rng(12);
    for (int trial = 0; trial < 10; ++trial) {
        auto g = random_grid(20, 3, rng);
        auto p = grid_pipeline(g);
        CHECK(p.oracle_agrees);
    }
    CHECK_THROWS_AS(grid_pipeline(constant_grid(101)), ResourceGuard);
}

TEST_CASE("grid files")
{
    std::istringstream in("# grid\n3\n0 1 0\n1 1 0 # row two\n2 0 0\n");
    auto g = parse_grid(in);
    CHECK(g.n == 3);
    CHECK(g.r == 3);
    CHECK(g.at(2, 1) == 1);
    CHECK(g.at(3, 1) == 2);
    std::ostringstream out;
    format_grid(g, out);
    std::istringstream back(out.str());
    CHECK(parse_grid(back).cells == g.cells);

    for (const char * bad : {"", "0\n", "2\n0 0\n", "2\n0 0\n0\n", "2\n0 0\n0 0 1\n", "2\n0 0\n0 -1\n", "2\n0 0\n0 0\n1\n"}) {
        std::istringstream b(bad);
        CHECK_THROWS_AS(parse_grid(b), ParseError);
    }
}
