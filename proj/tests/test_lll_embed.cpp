#include <doctest.h>

#include <exlab/combinatorics.hpp>
#include <exlab/errors.hpp>
#include <exlab/generators.hpp>
#include <exlab/lll_embed.hpp>

#include <algorithm>

using namespace exlab;
using namespace exlab::embed;

namespace {

// every subset of a member is a member
bool down_closed(const DownClosedHypergraph & g)
{
    const int n = g.vertex_count();
    for (int l = 1; l <= g.uniformity(); ++l) {
        BinomialTable bt(n, l);
        for (std::uint64_t r = 0; r < bt(n, l); ++r) {
            auto s = bt.unrank(r, l);
            if (!g.member(s))
                continue;
            for (int skip = 0; skip < l; ++skip) {
                std::vector<int> sub;
                for (int i = 0; i < l; ++i)
                    if (i != skip)
                        sub.push_back(s[static_cast<std::size_t>(i)]);
                if (!g.member(sub))
                    return false;
            }
        }
    }
    return true;
}

Graph cycle(int n)
{
    std::vector<Edge> e;
    for (int i = 0; i < n; ++i)
        e.push_back(make_edge(i, (i + 1) % n));
    return Graph(n, e);
}

} // namespace

TEST_CASE("down-closed hypergraph")
{
    RngStream rng(11);
    for (int n = 3; n <= 16; n += 1) {
        for (int k : {1, 2, 3}) {
            auto g = random_dense_dch(n, k, 0.3, rng);
            CHECK(down_closed(g));
            auto c = binomial_u64(n, k);
            CHECK(g.top_count() == c - static_cast<std::uint64_t>(0.3 * static_cast<double>(c)));
            for (int l = 0; l <= k; ++l)
                CHECK(static_cast<double>(g.nonmember_count(l)) <= 0.3 * binomial(n, l) + 1e-9);
        }
    }
    auto full = random_dense_dch(9, 3, 0.0, rng);
    CHECK(full.top_count() == 84);
    CHECK(full.missing_fraction() == 0.0);
    for (int l = 0; l <= 3; ++l)
        CHECK(full.nonmember_count(l) == 0);

    auto g20 = random_dense_dch(20, 3, 0.01, rng);
    CHECK(g20.top_count() == 1129);
    CHECK(g20.nonmember_count(3) == 11);

    CHECK_THROWS_AS(random_dense_dch(5, 6, 0.1, rng), std::invalid_argument);
    CHECK_THROWS_AS(random_dense_dch(5, 2, 1.0, rng), std::invalid_argument);
}

TEST_CASE("resample_embed")
{
    RngStream rng(5);
    SUBCASE("single edge into a complete hypergraph")
    {
        TargetHypergraph h{2, {{0, 1}}};
        auto g = random_dense_dch(32, 2, 0.0, rng);
        auto r = resample_embed(h, g, rng);
        CHECK(verify_embedding(h, g, r.map));
        CHECK(r.map[0] != r.map[1]);
        CHECK(r.in_regime);
    }
    SUBCASE("cube neighbourhoods into a dense random host")
    {
        auto h = cube_neighbourhood_hypergraph(3);
        CHECK(h.n == 8);
        CHECK(h.max_degree() == 3);
        CHECK(h.max_edge_size() == 3);
        for (std::uint64_t seed = 0; seed < 30; ++seed) {
            RngStream s(seed);
            auto g = random_dense_dch(128, 3, 0.009, s);
            auto r = resample_embed(h, g, s);
            CHECK(r.in_regime);
            CHECK(r.delta_bound > 0.0098);
            CHECK(r.delta_bound < 0.0099);
            CHECK(verify_embedding(h, g, r.map));
        }
    }
    SUBCASE("too many target vertices")
    {
        TargetHypergraph h{10, {{0, 1}}};
        auto g = random_dense_dch(8, 2, 0.0, rng);
        CHECK_THROWS_AS(resample_embed(h, g, rng), SearchFailure);
    }
    SUBCASE("impossible embedding reports the violated events")
    {
        // no 2-sets at all survive, so the single edge can never land
        auto g = DownClosedHypergraph(6, 2, Bitset(15));
        TargetHypergraph h{2, {{0, 1}}};
        try {
            resample_embed(h, g, rng, 50);
            FAIL("expected failure");
        }
        catch (const SearchFailure & e) {
            CHECK(!e.report()["violated"].empty());
        }
    }
    SUBCASE("verify_embedding rejects bad maps")
    {
        TargetHypergraph h{3, {{0, 1, 2}}};
        auto g = random_dense_dch(6, 3, 0.0, rng);
        std::vector<int> dup{0, 0, 1};
        std::vector<int> ok{0, 3, 5};
        CHECK_FALSE(verify_embedding(h, g, dup));
        CHECK(verify_embedding(h, g, ok));
    }
}

TEST_CASE("dependent random choice")
{
    RngStream rng(9);
    SUBCASE("complete bipartite graph")
    {
        auto b = complete_bipartite(40, 40);
        DrcParams p{1.0, 2, 2.0, 4};
        auto r = drc_subset(b, p, rng);
        CHECK(r.precondition_met);
        CHECK(r.u.size() == 40);
        CHECK(r.bad == 0);
        CHECK(r.ksets == 780);
    }
    SUBCASE("random half-dense input")
    {
        for (std::uint64_t seed = 0; seed < 10; ++seed) {
            RngStream s(seed);
            auto b = random_bipartite(400, 400, 0.5, s);
            DrcParams p{b.density(), 2, 4.0, 8};
            auto r = drc_subset(b, p, s);
            CHECK(static_cast<double>(r.u.size()) >= r.size_floor);
            CHECK(static_cast<double>(r.bad) < r.bad_ceiling);
            // recount the bad pairs directly
            std::uint64_t bad = 0;
            for (std::size_t i = 0; i < r.u.size(); ++i)
                for (std::size_t j = i + 1; j < r.u.size(); ++j)
                    bad += Bitset::and_count(b.left_row(r.u[i]), b.left_row(r.u[j])) < 8;
            CHECK(bad == r.bad);
        }
    }
    SUBCASE("precondition")
    {
        auto b = complete_bipartite(10, 10);
        DrcParams p{0.5, 3, 4.0, 8};
        CHECK_THROWS_AS(drc_subset(b, p, rng), std::invalid_argument);
        p.enforce_precondition = false;
        auto r = drc_subset(b, p, rng);
        CHECK_FALSE(r.precondition_met);
        DrcParams dense{0.9, 1, 1.0, 1};
        CHECK_THROWS_AS(drc_subset(random_bipartite(50, 50, 0.2, rng), dense, rng), std::invalid_argument);
    }
}

TEST_CASE("auxiliary pair")
{
    SUBCASE("perfect matching gives singleton edges")
    {
        std::vector<Edge> e;
        for (int i = 0; i < 4; ++i)
            e.push_back(make_edge(i, 4 + i));
        Graph h(8, e);
        auto sides = bipartite_sides(h);
        CHECK(sides.k == 1);
        CHECK(sides.delta == 1);
        auto g = complete_bipartite(6, 6).to_graph();
        std::vector<int> u{0, 1, 2, 3, 4, 5};
        auto aux = build_aux_pair(h, sides.v1, sides.v2, g, u, 8);
        CHECK(aux.target.edges.size() == 4);
        for (const auto & t : aux.target.edges)
            CHECK(t.size() == 1);
        // 6 common neighbours < 8 so nothing qualifies
        CHECK(aux.host.top_count() == 0);
        auto aux2 = build_aux_pair(h, sides.v1, sides.v2, g, u, 6);
        CHECK(aux2.host.top_count() == 6);
    }
    SUBCASE("cube")
    {
        auto q = hypercube(3);
        auto sides = bipartite_sides(q);
        CHECK(sides.v1.size() == 4);
        CHECK(sides.v2.size() == 4);
        CHECK(sides.k == 3);
        auto g = complete_bipartite(10, 10).to_graph();
        std::vector<int> u{0, 1, 2, 3, 4, 5, 6, 7, 8, 9};
        auto aux = build_aux_pair(q, sides.v1, sides.v2, g, u, 8);
        CHECK(aux.target.n == 4);
        CHECK(aux.target.edges.size() == 4);
        for (const auto & t : aux.target.edges)
            CHECK(t.size() == 3);
        CHECK(aux.target_max_degree <= sides.delta);
        CHECK(aux.host.top_count() == 120);
    }
    SUBCASE("non-bipartite input")
    {
        CHECK_THROWS_AS(bipartite_sides(cycle(5)), ValidationError);
    }
}

TEST_CASE("bipartite Ramsey pipeline")
{
    SUBCASE("single edge in K_3")
    {
        RngStream rng(1);
        auto col = random_two_coloring(3, rng);
        Graph h(2, {make_edge(0, 1)});
        auto r = bip_ramsey_pipeline(col, h, rng);
        CHECK(verify_monochromatic_copy(col, h, r.map, r.color));
    }
    SUBCASE("cube in K_512")
    {
        for (std::uint64_t seed = 0; seed < 3; ++seed) {
            RngStream rng(seed);
            auto col = random_two_coloring(512, rng);
            auto q = hypercube(3);
            auto r = bip_ramsey_pipeline(col, q, rng);
            CHECK(verify_monochromatic_copy(col, q, r.map, r.color));
            CHECK(r.k == 3);
        }
    }
    SUBCASE("adversarial colouring with a large red clique")
    {
        RngStream rng(4);
        const int n = 64;
        Graph kn = complete_graph(n);
        std::vector<int> colors;
        for (auto e : kn.edges())
            colors.push_back(e.v < 3 * n / 4 ? 0 : 1);
        EdgeColoring col(kn, colors, 2);
        auto h = cycle(4);
        auto r = bip_ramsey_pipeline(col, h, rng);
        CHECK(r.color == 0);
        CHECK(verify_monochromatic_copy(col, h, r.map, 0));
    }
    SUBCASE("verifier")
    {
        RngStream rng(2);
        auto col = random_two_coloring(6, rng);
        Graph h(2, {make_edge(0, 1)});
        int c = col.color_of(0, 1);
        std::vector<int> good{0, 1};
        std::vector<int> same{1, 1};
        CHECK(verify_monochromatic_copy(col, h, good, c));
        CHECK_FALSE(verify_monochromatic_copy(col, h, good, 1 - c));
        CHECK_FALSE(verify_monochromatic_copy(col, h, same, c));
    }
}
