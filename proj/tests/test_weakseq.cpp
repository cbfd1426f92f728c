#include <doctest.h>

#include <exlab/errors.hpp>
#include <exlab/generators.hpp>
#include <exlab/presets.hpp>
#include <exlab/weakseq.hpp>

#include <algorithm>
#include <bit>
#include <cmath>

using namespace exlab;
using namespace exlab::weakseq;

namespace {

BipartiteGraph from_rows(int left, const std::vector<std::vector<int>> & right_nbrs)
{
    std::vector<BipartiteGraph::Pair> e;
    for (std::size_t j = 0; j < right_nbrs.size(); ++j)
        for (int i : right_nbrs[j])
            e.push_back({i, static_cast<int>(j)});
    return BipartiteGraph(left, static_cast<int>(right_nbrs.size()), e);
}

// every (left t-set, right t-set) pair, by bitmask
bool brute_ktt(const BipartiteGraph & b, int t)
{
    for (unsigned lm = 0; lm < (1u << b.left_size()); ++lm) {
        if (std::popcount(lm) != t)
            continue;
        for (unsigned rm = 0; rm < (1u << b.right_size()); ++rm) {
            if (std::popcount(rm) != t)
                continue;
            bool all = true;
            for (int i = 0; i < b.left_size() && all; ++i)
                for (int j = 0; j < b.right_size() && all; ++j)
                    if ((lm >> i & 1) && (rm >> j & 1) && !b.has_edge(i, j))
                        all = false;
            if (all)
                return true;
        }
    }
    return false;
}

int brute_clique(const Graph & g)
{
    int n = g.vertex_count(), best = 0;
    for (unsigned m = 1; m < (1u << n); ++m) {
        bool ok = true;
        for (int a = 0; a < n && ok; ++a)
            for (int b = a + 1; b < n && ok; ++b)
                if ((m >> a & 1) && (m >> b & 1) && !g.has_edge(a, b))
                    ok = false;
        if (ok)
            best = std::max(best, std::popcount(m));
    }
    return best;
}

Graph with_isolated(const Graph & g)
{
    auto e = std::vector<Edge>(g.edges().begin(), g.edges().end());
    return Graph(g.vertex_count() + 1, e);
}

MinorConstants desk_minor() { return MinorConstants::from_json(preset("desk")["weakseq"]["minor"]); }

} // namespace

TEST_CASE("degree_filter")
{
    auto full = complete_bipartite(6, 8);
    auto f = degree_filter(full, FilterMode::sparse, 1.0);
    CHECK(f.kept.size() == 8);

    // half of V_2 isolated, the other half complete
    std::vector<std::vector<int>> rows(8);
    for (int j = 4; j < 8; ++j)
        rows[static_cast<std::size_t>(j)] = {0, 1, 2, 3, 4, 5};
    auto half = from_rows(6, rows);
    auto h = degree_filter(half, FilterMode::sparse, 0.5);
    CHECK(h.kept == std::vector<int>{4, 5, 6, 7});
    CHECK(static_cast<double>(h.kept.size()) >= h.size_floor);

    // density exactly 3/4 with uniform degrees, dense(1/4)
    std::vector<std::vector<int>> circ(4);
    for (int j = 0; j < 4; ++j)
        for (int k = 0; k < 3; ++k)
            circ[static_cast<std::size_t>(j)].push_back((j + k) % 4);
    auto c = from_rows(4, circ);
    CHECK(degree_filter(c, FilterMode::dense, 0.25).kept.size() == 4);
    CHECK_THROWS_AS(degree_filter(c, FilterMode::dense, 0.2), std::invalid_argument);
    CHECK_THROWS_AS(degree_filter(c, FilterMode::sparse, 0.8), std::invalid_argument);

    RngStream rng(3);
    for (int i = 0; i < 30; ++i) {
        auto b = random_bipartite(20 + i, 30, 0.3 + 0.02 * i, rng);
        double p = b.density();
        auto s = degree_filter(b, FilterMode::sparse, p);
        CHECK(static_cast<double>(s.kept.size()) >= p * b.right_size() / 2);
        for (int v : s.kept)
            CHECK(b.right_degree(v) > p * b.left_size() / 2);
        auto d = degree_filter(b, FilterMode::dense, 1 - p);
        CHECK(2 * d.kept.size() >= static_cast<std::size_t>(b.right_size()));
        for (int v : d.kept)
            CHECK(b.right_degree(v) > (2 * p - 1) * b.left_size());
    }
}

TEST_CASE("cover_partition")
{
    RngStream rng(21);
    auto full = complete_bipartite(12, 5);
    auto p1 = cover_partition(full, 1.0, 3, rng);
    CHECK(p1.fraction == 0.0);
    CHECK(p1.parts.size() == 4);

    // r = 1: the fraction is the non-adjacent fraction itself
    auto b = random_bipartite(10, 10, 0.6, rng);
    double minp = 1.0;
    for (int j = 0; j < 10; ++j)
        minp = std::min(minp, b.right_degree(j) / 10.0);
    auto single = cover_partition(b, minp, 1, rng);
    CHECK(single.fraction == doctest::Approx(1.0 - b.density()));

    // each right vertex sees exactly half of V_1
    std::vector<std::vector<int>> rows;
    for (int j = 0; j < 50; ++j)
        rows.push_back(rng.sample(64, 32));
    auto half = from_rows(64, rows);
    auto part = cover_partition(half, 0.5, 4, rng);
    CHECK(part.fraction <= 1.0 / 16);
    std::uint64_t miss = 0;
    for (const auto & a : part.parts) {
        CHECK(a.size() == 4);
        for (int j = 0; j < 50; ++j)
            miss += std::none_of(a.begin(), a.end(), [&](int v) { return half.has_edge(v, j); });
    }
    CHECK(miss == part.uncovered);
    CHECK_THROWS_AS(cover_partition(half, 0.5, 5, rng), std::invalid_argument);
    CHECK_THROWS_AS(cover_partition(half, 0.6, 4, rng), std::invalid_argument);
}

TEST_CASE("find_ktt")
{
    auto k55 = complete_bipartite(5, 5);
    auto w = find_ktt(k55, 3);
    REQUIRE(w.witness);
    CHECK(w.witness->left.size() == 3);

    // C_6 as a 3+3 bipartite graph
    auto c6 = from_rows(3, {{0, 1}, {1, 2}, {2, 0}});
    auto none = find_ktt(c6, 2);
    CHECK_FALSE(none.witness);
    CHECK(none.exhaustive);

    RngStream rng(8);
    for (int i = 0; i < 200; ++i) {
        int l = 1 + static_cast<int>(rng.uniform(6)), r = 1 + static_cast<int>(rng.uniform(6));
        auto b = random_bipartite(l, r, 0.3 + 0.5 * rng.uniform01(), rng);
        for (int t = 1; t <= 6; ++t) {
            auto s = find_ktt(b, t);
            CHECK(s.exhaustive);
            CHECK(s.witness.has_value() == brute_ktt(b, t));
        }
    }

    auto dense = random_bipartite(60, 60, 0.9, rng);
    auto d = find_ktt(dense, 3);
    REQUIRE(d.witness);
    for (int a : d.witness->left)
        for (int c : d.witness->right)
            CHECK(dense.has_edge(a, c));
    CHECK_THROWS_AS(find_ktt(dense, 13), std::invalid_argument);
}

TEST_CASE("sequence parameters")
{
    auto s = SeqParams::compute(2000, 0.5, 4, 1);
    CHECK(s.rho == doctest::Approx(std::pow(0.75, 4)));
    CHECK(s.delta_bound == doctest::Approx(std::exp(-1.0)));
    CHECK(s.proof_case == 1);
    CHECK_FALSE(s.regime[1]); // r < 4 p^{-1/2}
    CHECK(regime2_t(2000, 0.5, 4) == 1);

    auto big = SeqParams::compute(100'000'000, 0.5, 6, 2);
    CHECK(big.regime[1]);
    CHECK(big.proof_case == 1); // 3/r = p exactly
    CHECK(big.t_max[1] == doctest::Approx(std::exp(2.25) * std::log(1e8) / 16));
}

TEST_CASE("weak_sequence_pipeline")
{
    SUBCASE("complete graphs")
    {
        for (auto [n, r, t] : {std::array{8, 2, 2}, {8, 1, 4}, {12, 3, 2}, {7, 3, 1}, {5, 1, 2}, {30, 2, 5}}) {
            RngStream rng(static_cast<std::uint64_t>(n * 100 + r * 10 + t));
            auto g = complete_graph(n);
            auto res = weak_sequence_pipeline(g, r, t, rng);
            CHECK(verify_sequence(g, res.sequence).pass);
            CHECK(res.sequence.order() == t);
        }
    }
    SUBCASE("random graph, all stage clauses")
    {
        for (std::uint64_t seed = 0; seed < 3; ++seed) {
            RngStream rng(seed);
            auto g = random_graph(2000, 0.5, rng);
            auto res = weak_sequence_pipeline(g, 4, 6, rng);
            CHECK(verify_sequence(g, res.sequence).pass);
            for (const auto & st : res.stages)
                CHECK_MESSAGE(st.clauses_ok, st.name);
            CHECK(as_complete(res.sequence).r == 8);
            CHECK(verify_sequence(g, as_complete(res.sequence)).pass);
            auto padded = pad_sequence(g, res.sequence, 20);
            CHECK(verify_sequence(g, padded).pass);
        }
    }
    SUBCASE("verifier names the broken pair")
    {
        RngStream rng(5);
        auto g = with_isolated(random_graph(60, 0.5, rng));
        auto res = weak_sequence_pipeline(g, 1, 2, rng);
        REQUIRE(verify_sequence(g, res.sequence).pass);
        auto broken = res.sequence;
        broken.s[0][0] = 60;
        auto c = verify_sequence(g, broken);
        CHECK_FALSE(c.pass);
        CHECK(c.i == 0);
        CHECK(c.j == 0);
        auto overlap = res.sequence;
        overlap.t[1] = overlap.s[0];
        CHECK_FALSE(verify_sequence(g, overlap).pass);
    }
    SUBCASE("failure names the stage")
    {
        RngStream rng(1);
        Graph sparse(40, {make_edge(0, 1)});
        try {
            weak_sequence_pipeline(sparse, 2, 3, rng);
            FAIL("expected failure");
        }
        catch (const SearchFailure & e) {
            CHECK(!e.stage().empty());
        }
    }
}

TEST_CASE("brute-force ceiling")
{
    RngStream rng(77);
    for (int i = 0; i < 20; ++i) {
        auto g = random_graph(10, 0.3 + 0.03 * i, rng);
        CHECK(max_weakly_complete_order(g, 1) == brute_clique(g));
    }
    CHECK(max_weakly_complete_order(complete_graph(12), 3) == 4);
    CHECK(max_weakly_complete_order(Graph(12, {}), 2) == 1);
    for (int i = 0; i < 20; ++i) {
        auto g = random_graph(12, 0.6, rng);
        int ceiling = max_weakly_complete_order(g, 2);
        for (int t = 1; t <= 4; ++t) {
            try {
                auto res = weak_sequence_pipeline(g, 1, t, rng);
                CHECK(t <= ceiling);
            }
            catch (const SearchFailure &) {
            }
        }
    }
    CHECK_THROWS_AS(max_weakly_complete_order(complete_graph(13), 1), ResourceGuard);
}

TEST_CASE("paths_drc")
{
    auto desk = desk_minor();
    SUBCASE("complete bipartite")
    {
        RngStream rng(2);
        auto b = complete_bipartite(40, 40);
        DrcConstants c{0.1, 0.1, 25};
        auto res = paths_drc(b, c, rng);
        CHECK(res.x.size() == 20);
        Bitset avoid(40);
        for (int v : res.x)
            avoid.set(static_cast<std::size_t>(v));
        auto paths = disjoint_paths(b, avoid, res.x[0], res.x[1], 100);
        CHECK(paths.size() == 20);
        CHECK(verify_paths(b, avoid, res.x[0], res.x[1], paths));
    }
    SUBCASE("random H at p = 0.8, n = 400")
    {
        RngStream rng(4);
        auto b = random_bipartite(200, 200, 0.8, rng);
        CHECK_THROWS_AS(paths_drc(b, DrcConstants{}, rng), std::invalid_argument);
        auto res = paths_drc(b, desk.first, rng);
        CHECK(static_cast<double>(res.x.size()) >= res.size_floor);
        Bitset avoid(200);
        for (int v : res.x)
            avoid.set(static_cast<std::size_t>(v));
        for (std::size_t i = 0; i < res.x.size(); ++i)
            for (std::size_t j = i + 1; j < res.x.size(); ++j) {
                auto paths = disjoint_paths(b, avoid, res.x[i], res.x[j], res.budget);
                CHECK(static_cast<int>(paths.size()) == res.budget);
                CHECK(verify_paths(b, avoid, res.x[i], res.x[j], paths));
            }
    }
    SUBCASE("paper constants at p^2 n = 1600")
    {
        RngStream rng(6);
        // every right vertex sees exactly 4/5 of the left side
        std::vector<std::vector<int>> rows;
        for (int j = 0; j < 1250; ++j)
            rows.push_back(rng.sample(1250, 1000));
        auto b = from_rows(1250, rows);
        REQUIRE(b.density() * b.density() * 2500 >= 1600);
        auto res = paths_drc(b, DrcConstants{}, rng);
        CHECK(static_cast<double>(res.x.size()) >= 0.8 * 2500 / 50);
        CHECK(res.budget == 1);
    }
    SUBCASE("path verifier rejects shared vertices")
    {
        auto b = complete_bipartite(6, 6);
        Bitset avoid(6);
        std::vector<Path4> shared{{0, 2, 1}, {0, 3, 4}};
        std::vector<Path4> bad_mid{{0, 1, 2}};
        std::vector<Path4> ok{{0, 2, 1}, {2, 3, 4}};
        CHECK_FALSE(verify_paths(b, avoid, 0, 1, shared));
        CHECK_FALSE(verify_paths(b, avoid, 0, 1, bad_mid));
        CHECK(verify_paths(b, avoid, 0, 1, ok));
        avoid.set(2);
        CHECK_FALSE(verify_paths(b, avoid, 0, 1, ok));
    }
}

TEST_CASE("minor_pipeline")
{
    SUBCASE("complete graph, r = 1")
    {
        RngStream rng(3);
        auto g = complete_graph(400);
        auto c = desk_minor();
        c.first.guard = c.second.guard = 1;
        c.second.path_factor = 0.1; // H' is small and complete here
        auto res = minor_pipeline(g, 1, 4, c, rng);
        CHECK(res.model.branch_sets.size() == 4);
        for (const auto & b : res.model.branch_sets)
            CHECK(b.size() == 2);
        CHECK(verify_minor(g, res.model).pass);
    }
    SUBCASE("dense random graph under the desk preset")
    {
        for (std::uint64_t seed = 0; seed < 2; ++seed) {
            RngStream rng(seed);
            auto g = random_graph(1000, 0.5, rng);
            auto res = minor_pipeline(g, 3, 5, desk_minor(), rng);
            CHECK(res.model.size_cap == 24);
            CHECK(res.model.diameter_cap == 9);
            CHECK(verify_minor(g, res.model).pass);
            CHECK(res.model.branch_sets.size() == 5);
        }
    }
    SUBCASE("paper preset rejects desk-scale input")
    {
        RngStream rng(1);
        auto g = random_graph(300, 0.5, rng);
        CHECK_FALSE(minor_regime(300, 0.5, 3));
        CHECK_THROWS_AS(minor_pipeline(g, 3, 2, MinorConstants::paper(), rng), std::invalid_argument);
    }
    SUBCASE("verify_minor negatives")
    {
        // path 0-1-...-11
        std::vector<Edge> e;
        for (int i = 0; i + 1 < 12; ++i)
            e.push_back(make_edge(i, i + 1));
        Graph path(12, e);
        MinorModel ok{{{0, 1}, {2, 3}}, 8, 9};
        CHECK(verify_minor(path, ok).pass);
        MinorModel touching{{{0, 1}, {1, 2}}, 8, 9};
        CHECK_FALSE(verify_minor(path, touching).pass);
        MinorModel split{{{0, 2}, {3, 4}}, 8, 9};
        CHECK_FALSE(verify_minor(path, split).pass);
        MinorModel apart{{{0, 1}, {3, 4}}, 8, 9};
        auto c = verify_minor(path, apart);
        CHECK_FALSE(c.pass);
        CHECK(c.i == 0);
        CHECK(c.j == 1);
        MinorModel long_set{{{0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10}, {11}}, 20, 9};
        CHECK_FALSE(verify_minor(path, long_set).pass);
        long_set.diameter_cap = 0;
        CHECK(verify_minor(path, long_set).pass);
        long_set.size_cap = 8;
        CHECK_FALSE(verify_minor(path, long_set).pass);
    }
}

TEST_CASE("presets")
{
    auto desk = desk_minor();
    CHECK_FALSE(desk.enforce_regime);
    auto round = MinorConstants::from_json(desk.to_json());
    CHECK(round.to_json() == desk.to_json());
    auto paper = MinorConstants::from_json(preset("paper")["weakseq"]["minor"]);
    CHECK(paper.to_json() == MinorConstants::paper().to_json());
    CHECK_THROWS_AS(preset("nope"), std::invalid_argument);
}
