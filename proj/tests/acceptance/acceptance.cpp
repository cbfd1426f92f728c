// Runs every acceptance criterion at its stated scale and tolerance.
// One line per criterion; exit status 1 if any fails.

#include <exlab/bipfree.hpp>
#include <exlab/combinatorics.hpp>
#include <exlab/errors.hpp>
#include <exlab/expcli.hpp>
#include <exlab/generators.hpp>
#include <exlab/lll_embed.hpp>
#include <exlab/presets.hpp>
#include <exlab/removal.hpp>
#include <exlab/rsgraph.hpp>
#include <exlab/setmap.hpp>
#include <exlab/weakseq.hpp>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

using namespace exlab;
using nlohmann::json;

namespace {

struct Outcome {
    bool pass = true;
    std::vector<std::string> failures;
    std::string detail;

    void require(bool ok, const std::string & what)
    {
        if (!ok) {
            pass = false;
            if (failures.size() < 5)
                failures.push_back(what);
        }
    }
};

std::vector<int> random_subset(RngStream & rng, int n, int k)
{
    auto s = rng.sample(n, k);
    std::sort(s.begin(), s.end());
    return s;
}

// ------------------------------------------------------------------ 1, 2

Outcome setmap_exhaustive()
{
    Outcome o;
    auto f = setmap::SetMapping::caro(3, 2);
    int total = 0;
    for_each_subset(9, 7, [&](std::span<const int> q) {
        ++total;
        auto v = setmap::caro_violator(f, q);
        o.require(v && setmap::verify_violation(f, q, *v, setmap::Mode::not_subset), "no verified violation");
    });
    o.require(total == 36, "expected 36 subsets");
    o.detail = std::to_string(total) + " subsets";
    return o;
}

Outcome setmap_sampled()
{
    Outcome o;
    auto f = setmap::SetMapping::erdos_hajnal(6, 2, false);
    RngStream rng(2);
    int found = 0;
    for (int i = 0; i < 10'000; ++i) {
        auto p = random_subset(rng, f.ground_size(), 25);
        auto v = setmap::eh_violator(f, p);
        bool ok = v && setmap::verify_violation(f, p, *v, setmap::Mode::disjoint);
        found += ok;
        o.require(ok, "sample " + std::to_string(i) + " has no verified violation");
    }
    o.detail = std::to_string(found) + "/10000 samples";
    return o;
}

// ------------------------------------------------------------------ 3, 4, 5

Outcome bipfree_extract()
{
    Outcome o;
    RngStream rng(3);
    std::vector<Graph> corpus;
    for (int i = 0; i < 50; ++i)
        corpus.push_back(random_graph(static_cast<int>(rng.uniform_between(10, 60)), 0.5, rng));
    corpus.push_back(complete_bipartite(10, 10).to_graph());
    int runs = 0;
    for (const auto & g : corpus) {
        const std::size_t m = g.edge_count();
        const std::uint64_t c4 = bipfree::count_krr(g, 2);
        o.require(c4 <= 2 * m * m, "count exceeds 2m^2");
        auto res = bipfree::extract_free(g, 2, rng);
        ++runs;
        o.require(bipfree::count_krr(res.graph, 2) == 0, "output contains C_4");
        o.require(res.graph.edge_count() >= bipfree::krr_floor(m, 2), "output below the size floor");
        o.require(res.target_size == bipfree::krr_floor(m, 2), "floor mismatch");
        bool sub = res.graph.vertex_count() == g.vertex_count();
        for (auto e : res.graph.edges())
            sub = sub && g.has_edge(e.u, e.v);
        o.require(sub, "output is not a subgraph");
    }
    o.detail = std::to_string(runs) + " graphs";
    return o;
}

Outcome bipfree_tight()
{
    Outcome o;
    auto t = bipfree::tight_instance(2, 2, 64);
    auto z = bipfree::zarankiewicz_oracle(t.graph, 2, 2);
    o.require(t.graph.left_size() == 4 && t.graph.right_size() == 16, "host is not K_{4,16}");
    o.require(t.bound() == 32, "bound is not 32");
    o.require(z.exact(), "oracle not exact");
    o.require(z.lower <= 32, "value exceeds 32");
    o.require(z.lower == 22, "value differs from the frozen 22");
    o.require(bipfree::is_krs_free(z.witness, 2, 2) && z.witness.edge_count() == z.lower, "witness fails");
    o.detail = "z = " + std::to_string(z.lower) + " <= 32";
    return o;
}

Outcome kpartite_counting()
{
    Outcome o;
    RngStream rng(5);
    int checked = 0;
    for (int k : {2, 3}) {
        for (int i = 0; i < 50; ++i) {
            std::vector<int> sizes{2};
            for (int p = 1; p < k; ++p)
                sizes.push_back(static_cast<int>(rng.uniform_between(2, k == 2 ? 8 : 5)));
            auto full = complete_kpartite_hypergraph(sizes);
            const double keep = rng.uniform01();
            std::vector<std::size_t> idx;
            for (std::size_t e = 0; e < full.edge_count(); ++e)
                if (rng.bernoulli(keep))
                    idx.push_back(e);
            auto sub = full.edge_subgraph(idx);
            auto chk = bipfree::kpartite_count_check(sub, sizes, 2);
            o.require(chk.pass, "bound exceeds exact count");
            o.require(chk.bound <= static_cast<double>(chk.exact), "bound exceeds exact count");
            ++checked;
        }
    }
    o.detail = std::to_string(checked) + " sub-k-graphs";
    return o;
}

// ------------------------------------------------------------------ 6

Outcome embedding()
{
    Outcome o;
    const json & e = preset("desk")["lll_embed"];
    const int big_n = e["N"], k = e["k"], ramsey_n = e["ramsey_N"];
    const double delta = e["delta"];
    auto h = embed::cube_neighbourhood_hypergraph(3);
    int ok = 0;
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        RngStream rng(seed);
        auto host = embed::random_dense_dch(big_n, k, delta, rng);
        try {
            auto res = embed::resample_embed(h, host, rng, 10'000);
            std::set<int> image(res.map.begin(), res.map.end());
            bool good = res.in_regime && res.rounds <= 10'000 && image.size() == res.map.size() &&
                        embed::verify_embedding(h, host, res.map);
            ok += good;
            o.require(good, "seed " + std::to_string(seed) + " failed verification");
        }
        catch (const SearchFailure & ex) {
            o.require(false, std::string("seed ") + std::to_string(seed) + ": " + ex.what());
        }
    }
    int cubes = 0;
    auto q3 = hypercube(3);
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        RngStream rng(1000 + seed);
        auto col = embed::random_two_coloring(ramsey_n, rng);
        try {
            auto copy = embed::bip_ramsey_pipeline(col, q3, rng);
            bool good = embed::verify_monochromatic_copy(col, q3, copy.map, copy.color);
            cubes += good;
            o.require(good, "colouring " + std::to_string(seed) + " copy fails");
        }
        catch (const std::exception & ex) {
            o.require(false, std::string("colouring ") + std::to_string(seed) + ": " + ex.what());
        }
    }
    o.detail = std::to_string(ok) + "/50 embeddings, " + std::to_string(cubes) + "/20 cubes";
    return o;
}

// ------------------------------------------------------------------ 7

Outcome weak_sequences()
{
    Outcome o;
    const json & ws = preset("desk")["weakseq"];
    const json & si = ws["sequence_instance"];
    const int n = si["n"], r = si["r"];
    const double p = si["p"];
    const int t = weakseq::regime2_t(n, p, r);
    int seq_ok = 0, stages = 0;
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        RngStream rng(seed);
        auto g = random_graph(n, p, rng);
        try {
            auto res = weakseq::weak_sequence_pipeline(g, r, t, rng);
            bool clauses = true;
            for (const auto & st : res.stages) {
                clauses = clauses && st.clauses_ok;
                ++stages;
            }
            bool good = weakseq::verify_sequence(g, res.sequence).pass && res.sequence.order() >= t && clauses;
            seq_ok += good;
        }
        catch (const SearchFailure &) {
        }
    }
    o.require(seq_ok >= 9, "sequence pipeline below 9/10");

    const json & mi = ws["minor_instance"];
    auto constants = weakseq::MinorConstants::from_json(ws["minor"]);
    const int mr = mi["r"], mt = mi["t"];
    int minor_ok = 0;
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        RngStream rng(100 + seed);
        auto g = random_graph(mi["n"], mi["p"].get<double>(), rng);
        try {
            auto res = weakseq::minor_pipeline(g, mr, mt, constants, rng);
            bool caps = res.model.size_cap == 8 * mr;
            for (const auto & b : res.model.branch_sets)
                caps = caps && static_cast<int>(b.size()) <= 8 * mr;
            if (constants.diameter_rule)
                caps = caps && res.model.diameter_cap == 9;
            bool good = caps && static_cast<int>(res.model.branch_sets.size()) == mt &&
                        weakseq::verify_minor(g, res.model).pass;
            minor_ok += good;
            o.require(good, "minor seed " + std::to_string(seed) + " fails");
        }
        catch (const SearchFailure & ex) {
            o.require(false, std::string("minor seed ") + std::to_string(seed) + ": " + ex.what());
        }
    }
    o.detail = "t = " + std::to_string(t) + ", sequences " + std::to_string(seq_ok) + "/10 (" +
               std::to_string(stages) + " stages), minors " + std::to_string(minor_ok) + "/10";
    return o;
}

// ------------------------------------------------------------------ 8

bool has_blue_induced_m2(const Graph & g, const std::vector<int> & coloring)
{
    std::vector<char> blue(coloring.size());
    for (std::size_t i = 0; i < coloring.size(); ++i)
        blue[i] = coloring[i] == 1;
    return rsgraph::has_induced_matching(g, blue, 2);
}

Outcome rs_graphs()
{
    Outcome o;
    std::vector<int> sizes;
    for (int n = 1; n <= 300; ++n)
        sizes.push_back(n);
    for (int n : {1000, 3000, 10'000, 30'000, 100'000})
        sizes.push_back(n);
    for (int n : sizes) {
        auto b = rsgraph::behrend_set(n);
        bool in_range = std::all_of(b.elements.begin(), b.elements.end(), [&](int x) { return x >= 1 && x <= n; });
        o.require(in_range && !rsgraph::find_three_ap(b.elements), "behrend_set(" + std::to_string(n) + ")");
    }

    auto d = rsgraph::rs_from_behrend(3000);
    o.require(rsgraph::verify_rs(d).pass, "rs_from_behrend(3000)");

    RngStream rng(8);
    int doubled = 0;
    for (int i = 0; i < 50; ++i) {
        const int m = static_cast<int>(rng.uniform_between(3, 40));
        // random 3-AP-free set by greedy insertion in shuffled order
        std::vector<int> order(static_cast<std::size_t>(m));
        for (int x = 0; x < m; ++x)
            order[static_cast<std::size_t>(x)] = x + 1;
        rng.shuffle(order);
        std::vector<int> set;
        for (int x : order) {
            auto trial = set;
            trial.insert(std::upper_bound(trial.begin(), trial.end(), x), x);
            if (!rsgraph::find_three_ap(trial))
                set = std::move(trial);
        }
        auto dec = rsgraph::rs_from_set(set, m + static_cast<int>(rng.uniform_between(0, 12)));
        if (!rsgraph::verify_rs(dec).pass) {
            o.require(false, "source decomposition fails");
            continue;
        }
        auto dbl = rsgraph::bipartite_double(dec);
        bool good = rsgraph::verify_rs(dbl).pass && dbl.matching_count() == dec.matching_count() &&
                    dbl.matching_size() == 2 * dec.matching_size();
        doubled += good;
        o.require(good, "double fails verification");
    }

    auto k4 = complete_graph(4);
    auto g = rsgraph::greedy_decompose(k4, 2, 1);
    o.require(g.verdict == rsgraph::Verdict::falsified, "K_4 not falsified");
    if (g.coloring.size() == k4.edge_count()) {
        std::vector<int> red_degree(4, 0);
        for (std::size_t i = 0; i < g.coloring.size(); ++i)
            if (g.coloring[i] == 0) {
                ++red_degree[static_cast<std::size_t>(k4.edge(i).u)];
                ++red_degree[static_cast<std::size_t>(k4.edge(i).v)];
            }
        o.require(*std::max_element(red_degree.begin(), red_degree.end()) < 1, "red degree certificate");
        o.require(!has_blue_induced_m2(k4, g.coloring), "blue induced M_2 certificate");
        o.require(rsgraph::verify_falsifying(k4, g.coloring, 1, 2).pass, "verify_falsifying");
    }
    else {
        o.require(false, "colouring has the wrong length");
    }
    o.detail = std::to_string(sizes.size()) + " Behrend sets, RS(3000) " + std::to_string(d.matching_count()) + "x" +
               std::to_string(d.matching_size()) + ", " + std::to_string(doubled) + "/50 doubles";
    return o;
}

// ------------------------------------------------------------------ 9

Outcome removal_lemma()
{
    Outcome o;
    RngStream rng(9);
    int accepted = 0, rejected = 0;
    for (int n = 1; n <= 8; ++n)
        for (int r = 1; r <= 3; ++r) {
            auto cover = removal::grid_reduction(removal::random_grid(n, r, rng));
            bool ok = removal::validate_cover(cover).pass;
            accepted += ok;
            o.require(ok, "grid reduction rejected");
        }
    auto base = removal::grid_reduction(removal::random_grid(6, 2, rng));
    for (int kind = 0; kind < removal::cover_mutation_kinds; ++kind) {
        auto bad = removal::mutate_cover(base, kind, rng);
        bool no = !removal::validate_cover(bad).pass;
        rejected += no;
        o.require(no, "mutation " + removal::cover_mutation_name(kind) + " accepted");
    }

    int steps = 0, premise = 0;
    for (int i = 0; i < 20; ++i) {
        auto cover = removal::grid_reduction(removal::random_grid(15, 2, rng));
        auto step = removal::sparse_pair_step(cover, 2);
        const auto & g = cover.host;
        const double n = g.n, q = g.q;
        const auto census = removal::triangle_census(g);
        // direct recount of the chosen colour between V1' and V2'
        std::uint64_t edges = 0;
        for (int b : step.v1)
            for (int c : step.v2) {
                auto idx = g.coloring.graph().edge_index(g.v1(b), g.v2(c));
                edges += idx && g.coloring.color(*idx) == step.color;
            }
        bool sizes = static_cast<int>(step.v1.size()) == static_cast<int>(step.v2.size()) &&
                     static_cast<double>(step.v1.size()) >= n * n / (4 * q * 2);
        bool ok = step.clauses_ok && edges == step.edges_in_color && census.total == step.census &&
                  static_cast<double>(edges) <= 4.0 * static_cast<double>(census.total) / n + 1e-9 && sizes &&
                  4 * step.a_size >= g.n;
        steps += ok;
        o.require(ok, "step clauses fail on instance " + std::to_string(i));
    }
    for (int i = 0; i < 200; ++i) {
        const int n = static_cast<int>(rng.uniform_between(2, 12));
        auto g = removal::grid_reduction(removal::random_grid(n, static_cast<int>(rng.uniform_between(1, 4)), rng)).host;
        if (removal::triangle_census(g).total > static_cast<std::uint64_t>(g.n) * static_cast<std::uint64_t>(g.n)) {
            ++premise;
            o.require(removal::diamond_find(g).has_value(), "census > n^2 without a diamond");
        }
    }

    int corners = 0;
    for (int i = 0; i < 100; ++i) {
        auto grid = removal::random_grid(static_cast<int>(rng.uniform_between(2, 12)), static_cast<int>(rng.uniform_between(1, 4)), rng);
        auto res = removal::grid_pipeline(grid);
        auto list = removal::corner_oracle(grid);
        if (res.corner) {
            ++corners;
            bool listed = std::find(list.begin(), list.end(), *res.corner) != list.end();
            o.require(listed && removal::verify_corner(grid, *res.corner), "corner not in the oracle list");
        }
        else {
            o.require(list.empty(), "oracle has a corner the pipeline missed");
        }
    }
    std::uint64_t grids = 0;
    for (int n = 1; n <= 3; ++n) {
        const int cells = n * n;
        for (std::uint32_t mask = 0; mask < (1u << cells); ++mask) {
            removal::GridColoring grid{n, 2, std::vector<int>(static_cast<std::size_t>(cells))};
            for (int c = 0; c < cells; ++c)
                grid.cells[static_cast<std::size_t>(c)] = (mask >> c) & 1u;
            auto res = removal::grid_pipeline(grid);
            auto list = removal::corner_oracle(grid);
            bool agree = res.oracle_agrees && res.corner.has_value() == !list.empty();
            if (res.corner)
                agree = agree && std::find(list.begin(), list.end(), *res.corner) != list.end();
            o.require(agree, "exhaustive disagreement at N = " + std::to_string(n));
            ++grids;
        }
    }
    o.detail = std::to_string(accepted) + " covers accepted, " + std::to_string(rejected) + "/20 mutations rejected, " +
               std::to_string(steps) + "/20 steps, " + std::to_string(premise) + " pigeonhole premises, " +
               std::to_string(grids) + " exhaustive grids";
    return o;
}

// ------------------------------------------------------------------ 10

Outcome determinism()
{
    Outcome o;
    const std::vector<std::pair<std::string, std::string>> ops{
        {"setmap", "violate"}, {"bipfree", "extract"}, {"embed", "lemma"},   {"embed", "cube"},
        {"weakseq", "oracle"}, {"rsgraph", "arrow"},   {"removal", "grid"}, {"removal", "step"}};
    int replayed = 0;
    for (const auto & [module, op] : ops) {
        expcli::ExperimentSpec spec;
        spec.module = module;
        spec.op = op;
        spec.seed = 20;
        spec.trials = 4;
        auto first = expcli::run(spec);
        // replay from the serialised record
        auto back = expcli::ExperimentRecord::from_json(json::parse(first.to_json().dump()));
        auto second = expcli::run(back.spec);
        auto third = expcli::run(back.spec);
        auto trials = [](const expcli::ExperimentRecord & r) {
            json a = json::array();
            for (const auto & t : r.trials)
                a.push_back(t.to_json());
            return a.dump();
        };
        bool same = trials(first) == trials(second) && trials(second) == trials(third);
        replayed += same;
        o.require(same, module + " " + op + " replay differs");
    }
    o.detail = std::to_string(replayed) + "/" + std::to_string(ops.size()) + " operations replayed";
    return o;
}

} // namespace

int main()
{
    struct Criterion {
        int id;
        std::string name;
        double limit_seconds; // 0: none
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> criteria{
        {1, "setmap exhaustive", 1, setmap_exhaustive},
        {2, "setmap sampled", 30, setmap_sampled},
        {3, "bipfree extraction", 60, bipfree_extract},
        {4, "bipfree tightness", 120, bipfree_tight},
        {5, "kpartite counting", 0, kpartite_counting},
        {6, "local lemma embedding", 0, embedding},
        {7, "weak sequences and minors", 0, weak_sequences},
        {8, "RS graphs", 0, rs_graphs},
        {9, "removal", 0, removal_lemma},
        {10, "determinism", 0, determinism},
    };
    int failed = 0;
    for (const auto & c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        }
        catch (const std::exception & e) {
            o.pass = false;
            o.failures.push_back(std::string("exception: ") + e.what());
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (c.limit_seconds > 0 && secs >= c.limit_seconds)
            o.require(false, "runtime over " + std::to_string(c.limit_seconds) + " s");
        std::ostringstream line;
        line << "criterion " << c.id << " [" << c.name << "]: " << (o.pass ? "PASS" : "FAIL") << "  " << o.detail;
        line.precision(3);
        line << std::fixed << "  (" << secs << " s)";
        for (const auto & f : o.failures)
            line << "\n    " << f;
        std::puts(line.str().c_str());
        std::fflush(stdout);
        failed += !o.pass;
    }
    return failed ? 1 : 0;
}
