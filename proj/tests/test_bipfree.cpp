#include <doctest.h>

#include <exlab/bipfree.hpp>
#include <exlab/errors.hpp>
#include <exlab/generators.hpp>

#include <cmath>

using namespace exlab;
using namespace exlab::bipfree;

namespace {

KUniformHypergraph as_2graph(const Graph & g)
{
    std::vector<std::vector<int>> e;
    for (auto ed : g.edges())
        e.push_back({ed.u, ed.v});
    return KUniformHypergraph(g.vertex_count(), 2, std::move(e));
}

KUniformHypergraph random_sub(const KUniformHypergraph & g, double p, RngStream & rng)
{
    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < g.edge_count(); ++i)
        if (rng.bernoulli(p))
            keep.push_back(i);
    return g.edge_subgraph(keep);
}

} // namespace

TEST_CASE("count_pattern small cases")
{
    CHECK(count_krr(complete_bipartite(2, 2).to_graph(), 2) == 1);
    CHECK(count_krr(complete_bipartite(3, 3).to_graph(), 2) == 9);
    CHECK(count_krr(complete_bipartite(3, 3).to_graph(), 3) == 1);
    CHECK(count_krr(complete_graph(4), 2) == 3); // three 4-cycles in K_4
    CHECK(count_krr(hypercube(3), 2) == 6);      // the six faces
    CHECK(count_kpartite_pattern(as_2graph(complete_bipartite(3, 3).to_graph()), 2) == 9);
    CHECK(count_kpartite_pattern(as_2graph(complete_graph(4)), 2) == 3);

    std::vector<int> sizes{2, 2, 2};
    CHECK(count_kpartite_pattern(complete_kpartite_hypergraph(sizes), 2) == 1);
    std::vector<int> sizes3{3, 2, 2};
    CHECK(count_kpartite_pattern(complete_kpartite_hypergraph(sizes3), 2) == 3);
}

TEST_CASE("two independent counters agree and respect the 2m^r bound")
{
    RngStream rng(21);
    for (int i = 0; i < 50; ++i) {
        int n = 10 + static_cast<int>(rng.uniform(15));
        auto g = random_graph(n, 0.3 + 0.4 * rng.uniform01(), rng);
        if (g.edge_count() > 200)
            continue;
        auto c = count_krr(g, 2);
        CHECK(c == count_kpartite_pattern(as_2graph(g), 2));
        double m = static_cast<double>(g.edge_count());
        CHECK(static_cast<double>(c) <= 2 * m * m);
        std::uint64_t listed = 0;
        for_each_krr(g, 2, [&](const KrrCopy &) {
            ++listed;
            return true;
        });
        CHECK(listed == c);
    }
}

TEST_CASE("count guard")
{
    CHECK_THROWS_AS(count_krr(complete_graph(200), 4), ResourceGuard);
}

TEST_CASE("floors")
{
    CHECK(krr_floor(9, 2) == 2);
    CHECK(krr_floor(64, 2) == 4);   // 64^{2/3} = 16 exactly
    CHECK(krr_floor(65, 2) == 5);
    CHECK(krr_floor(100, 2) == 6);  // 21.54 / 4
    CHECK(kpartite_floor(8, 2, 2) == 1); // 8^{2/3} / 4 = 1
}

TEST_CASE("extract_free")
{
    RngStream rng(4);
    Graph one(2, {{0, 1}});
    CHECK_THROWS(extract_free(one, 2, rng));
    Graph path(3, {{0, 1}, {1, 2}});
    auto p = extract_free(path, 2, rng);
    CHECK(p.short_circuit);
    CHECK(p.graph == path);

    auto k33 = complete_bipartite(3, 3).to_graph();
    auto r = extract_free(k33, 2, rng);
    CHECK(r.edges >= 2);
    CHECK(count_krr(r.graph, 2) == 0);
    for (auto e : r.graph.edges())
        CHECK(k33.has_edge(e.u, e.v));

    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        RngStream s(seed);
        auto g = random_graph(60, 0.5, s);
        auto out = extract_free(g, 2, s);
        CHECK(out.edges >= krr_floor(g.edge_count(), 2));
        CHECK(count_krr(out.graph, 2) == 0);
        auto h = random_graph(30, 0.5, s);
        auto out3 = extract_free(h, 3, s);
        CHECK(out3.edges >= krr_floor(h.edge_count(), 3));
        CHECK(count_krr(out3.graph, 3) == 0);
    }
}

TEST_CASE("extract_free on k-graphs")
{
    RngStream rng(9);
    std::vector<int> sizes{3, 3, 3};
    auto g = complete_kpartite_hypergraph(sizes);
    auto out = extract_free(g, 2, rng);
    CHECK(out.edges >= kpartite_floor(27, 3, 2));
    CHECK(count_kpartite_pattern(out.hypergraph, 2) == 0);
}

TEST_CASE("tight instances and the Zarankiewicz oracle")
{
    auto t = tight_instance(2, 2, 64);
    CHECK(t.graph.left_size() == 4);
    CHECK(t.graph.right_size() == 16);
    CHECK(t.graph.edge_count() == 64);
    CHECK(t.bound() == 32);
    CHECK_THROWS(tight_instance(2, 2, 65));

    auto z = zarankiewicz_oracle(t.graph, 2, 2);
    CHECK(z.exact());
    CHECK(z.lower == 22);
    CHECK(z.lower <= t.bound());
    CHECK(z.witness.edge_count() == 22);
    CHECK(is_krs_free(z.witness, 2, 2));

    CHECK(zarankiewicz_oracle(complete_bipartite(3, 3), 2, 2).lower == 6);
    CHECK(zarankiewicz_oracle(complete_bipartite(2, 4), 2, 2).lower == 5);
    CHECK(zarankiewicz_oracle(complete_bipartite(3, 4), 2, 2).lower == 7);
    CHECK(zarankiewicz_oracle(complete_bipartite(1, 7), 2, 2).lower == 7);
    CHECK(zarankiewicz_oracle(complete_bipartite(7, 1), 2, 2).lower == 7);

    auto t3 = tight_instance(2, 3, 64);
    auto z3 = zarankiewicz_oracle(t3.graph, 2, 3);
    CHECK(z3.exact());
    CHECK(z3.lower <= t3.bound());
    CHECK(is_krs_free(z3.witness, 2, 3));

    auto capped = zarankiewicz_oracle(t.graph, 2, 2, 10);
    CHECK(capped.lower <= 22);
    CHECK(capped.upper >= 22);
}

TEST_CASE("Zarankiewicz oracle is invariant under relabelling")
{
    RngStream rng(77);
    for (int i = 0; i < 10; ++i) {
        auto host = random_bipartite(5, 12, 0.7, rng);
        auto base = zarankiewicz_oracle(host, 2, 2);
        std::vector<int> l(5), r(12);
        std::iota(l.begin(), l.end(), 0);
        std::iota(r.begin(), r.end(), 0);
        rng.shuffle(l);
        rng.shuffle(r);
        auto perm = host.induced(l, r);
        CHECK(zarankiewicz_oracle(perm, 2, 2).lower == base.lower);
        CHECK(zarankiewicz_oracle(host.transposed(), 2, 2).lower == base.lower);
    }
}

TEST_CASE("kpartite counting check")
{
    std::vector<int> s2{2, 4};
    auto g2 = complete_kpartite_hypergraph(s2);
    auto c = kpartite_count_check(g2, s2, 2);
    CHECK(c.a == 2);
    // C(a - k + 1, r) = C(1, 2) = 0 under the extended convention
    CHECK(c.bound == 0);
    CHECK(c.exact == 6);
    CHECK(c.formula_count == 6);
    CHECK(c.pass);

    auto tk = tight_kpartite_instance(2, 2, 8);
    CHECK(tk.vertex_count() == 6);
    CHECK(tk.edge_count() == 8);

    RngStream rng(5);
    std::vector<int> s3{2, 4, 16};
    auto g3 = complete_kpartite_hypergraph(s3);
    for (int i = 0; i < 20; ++i) {
        auto sub = random_sub(g3, rng.uniform01(), rng);
        auto chk = kpartite_count_check(sub, s3, 2);
        CHECK(chk.pass);
        CHECK(chk.exact == chk.formula_count);
    }
    // a <= r + k - 2 makes the bound vanish
    auto sparse = random_sub(g2, 0.25, rng);
    auto cs = kpartite_count_check(sparse, s2, 2);
    if (cs.a <= 2)
        CHECK(cs.bound == 0);
}
