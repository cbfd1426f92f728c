#include <exlab/bipfree.hpp>
#include <exlab/errors.hpp>
#include <exlab/expcli.hpp>
#include <exlab/generators.hpp>
#include <exlab/io.hpp>
#include <exlab/lll_embed.hpp>
#include <exlab/removal.hpp>
#include <exlab/rsgraph.hpp>
#include <exlab/setmap.hpp>
#include <exlab/weakseq.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>

namespace exlab::expcli {

using nlohmann::json;

namespace {

ParamSpec I(std::string name, json fallback, std::optional<double> lo, std::optional<double> hi, std::string help)
{
    return {std::move(name), ParamType::integer, std::move(fallback), lo, hi, {}, std::move(help)};
}
ParamSpec R(std::string name, json fallback, std::optional<double> lo, std::optional<double> hi, std::string help)
{
    return {std::move(name), ParamType::real, std::move(fallback), lo, hi, {}, std::move(help)};
}
ParamSpec T(std::string name, json fallback, std::vector<std::string> choices, std::string help)
{
    return {std::move(name), ParamType::text, std::move(fallback), {}, {}, std::move(choices), std::move(help)};
}
ParamSpec F(std::string name, bool fallback, std::string help)
{
    return {std::move(name), ParamType::flag, fallback, {}, {}, {}, std::move(help)};
}

int geti(const json & p, const char * k) { return p.at(k).get<int>(); }
double getd(const json & p, const char * k) { return p.at(k).get<double>(); }
std::string gets(const json & p, const char * k) { return p.at(k).get<std::string>(); }

json edges_json(const Graph & g)
{
    json out = json::array();
    for (const auto & e : g.edges())
        out.push_back({e.u, e.v});
    return out;
}

// ---------------------------------------------------------------- setmap

setmap::SetMapping make_mapping(const json & p)
{
    if (gets(p, "family") == "eh")
        return setmap::SetMapping::erdos_hajnal(geti(p, "n"), geti(p, "k"), gets(p, "variant") == "lex");
    return setmap::SetMapping::caro(geti(p, "n"), geti(p, "k"));
}

setmap::Mode mapping_mode(const setmap::SetMapping & f)
{
    return f.is_caro() ? setmap::Mode::not_subset : setmap::Mode::disjoint;
}

std::vector<ParamSpec> setmap_params()
{
    return {T("family", "eh", {"eh", "caro"}, "mapping family"),
            I("k", 2, 2, 8, "arity (eh) or dimension (caro)"),
            I("n", 6, 2, 1000, "side length"),
            T("variant", "full", {"full", "lex"}, "eh image rule"),
            I("size", 0, 0, 1e6, "|P| for violate; 0 picks the guarantee threshold")};
}

void setmap_check(json & p, const json &)
{
    if (gets(p, "family") == "caro" && geti(p, "k") > 3)
        throw ValidationError("caro mappings need k (dimension) 2 or 3");
    double ground = std::pow(geti(p, "n"), geti(p, "k"));
    if (ground > 1e6)
        throw ValidationError("n^k exceeds 10^6");
    if (geti(p, "size") == 0) {
        const int n = geti(p, "n"), k = geti(p, "k");
        int threshold = gets(p, "family") == "eh" ? k * k * n + 1 : (k == 2 ? 2 * n + 1 : 3 * n * n + 1);
        p["size"] = threshold;
    }
    if (geti(p, "size") > ground)
        throw ValidationError("size exceeds the ground set");
}

TrialResult setmap_construct(TrialContext & c)
{
    auto f = make_mapping(c.params);
    TrialResult r;
    r.success = true;
    json images = json::array();
    const int samples = std::min(200, f.ground_size());
    for (int i = 0; i < samples; ++i) {
        auto x = c.rng.sample(f.ground_size(), f.k());
        std::sort(x.begin(), x.end());
        auto img = f.image(x);
        int overlap = 0;
        for (int v : img)
            overlap += std::binary_search(x.begin(), x.end(), v);
        std::vector<int> sorted = img;
        std::sort(sorted.begin(), sorted.end());
        bool distinct = std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
        if (static_cast<int>(img.size()) != f.l() || overlap > f.overlap() || !distinct)
            r.success = false;
        images.push_back({x, img});
    }
    r.witness = images;
    r.stats = {{"ground", f.ground_size()}, {"l", f.l()}, {"samples", samples}};
    return r;
}

TrialResult setmap_violate(TrialContext & c)
{
    auto f = make_mapping(c.params);
    auto p = c.rng.sample(f.ground_size(), geti(c.params, "size"));
    std::sort(p.begin(), p.end());
    auto v = f.is_caro() ? setmap::caro_violator(f, p) : setmap::eh_violator(f, p);
    TrialResult r;
    r.success = v && setmap::verify_violation(f, p, *v, mapping_mode(f));
    r.stats = {{"size", p.size()}, {"found", v.has_value()}};
    if (v)
        r.witness = {{"x", v->x}, {"image", v->image}, {"witness", v->witness}};
    return r;
}

TrialResult setmap_oracle(TrialContext & c)
{
    auto f = make_mapping(c.params);
    auto o = setmap::free_set_oracle(f, mapping_mode(f));
    const int n = geti(c.params, "n"), k = geti(c.params, "k");
    const int bound = f.is_caro() ? (k == 2 ? 2 * n : 3 * n * n) : k * k * n;
    TrialResult r;
    r.success = setmap::is_free(f, o.witness, mapping_mode(f)) && o.lower <= bound;
    r.witness = o.witness;
    r.stats = {{"lower", o.lower}, {"upper", o.upper}, {"exact", o.exact()}, {"bound", bound}};
    return r;
}

// ---------------------------------------------------------------- bipfree

std::vector<ParamSpec> graph_source_params()
{
    return {T("input", "", {}, "edge-list file; empty for a random graph"), I("vertices", 40, 1, 2000, "G(n, p) order"),
            R("p", 0.5, 0, 1, "G(n, p) density"), I("complete", 0, 0, 200, "use K_{a,a} instead when positive")};
}

Graph source_graph(TrialContext & c)
{
    if (!gets(c.params, "input").empty())
        return read_graph(gets(c.params, "input"));
    if (geti(c.params, "complete") > 0)
        return complete_bipartite(geti(c.params, "complete"), geti(c.params, "complete")).to_graph();
    return random_graph(geti(c.params, "vertices"), getd(c.params, "p"), c.rng);
}

TrialResult bipfree_count(TrialContext & c)
{
    auto g = source_graph(c);
    const int r = geti(c.params, "r");
    auto count = bipfree::count_krr(g, r);
    const double bound = 2.0 * std::pow(static_cast<double>(g.edge_count()), r);
    TrialResult out;
    out.success = static_cast<double>(count) <= bound;
    out.witness = {{"m", g.edge_count()}, {"count", count}};
    out.stats = {{"m", g.edge_count()}, {"count", count}, {"bound", bound}};
    return out;
}

TrialResult bipfree_extract(TrialContext & c)
{
    auto g = source_graph(c);
    const int r = geti(c.params, "r");
    auto res = bipfree::extract_free(g, r, c.rng);
    const bool free = bipfree::count_krr(res.graph, r) == 0;
    TrialResult out;
    out.success = free && res.edges >= res.target_size;
    out.witness = edges_json(res.graph);
    out.stats = {{"m", g.edge_count()},
                 {"edges", res.edges},
                 {"floor", res.target_size},
                 {"size_floor_ratio", res.target_size ? static_cast<double>(res.edges) / res.target_size : 1.0},
                 {"rounds", res.trials_used},
                 {"short_circuit", res.short_circuit}};
    return out;
}

TrialResult bipfree_tight(TrialContext & c)
{
    auto inst = bipfree::tight_instance(geti(c.params, "r"), geti(c.params, "s"), static_cast<std::size_t>(geti(c.params, "m")));
    auto z = bipfree::zarankiewicz_oracle(inst.graph, inst.r, inst.s);
    TrialResult out;
    out.success = z.exact() && z.lower <= inst.bound() && bipfree::is_krs_free(z.witness, inst.r, inst.s);
    out.witness = {{"lower", z.lower}, {"upper", z.upper}};
    out.stats = {{"exact_value", z.lower}, {"upper", z.upper}, {"bound", inst.bound()}, {"nodes", z.nodes}};
    return out;
}

TrialResult bipfree_kcheck(TrialContext & c)
{
    const int k = geti(c.params, "k"), n = geti(c.params, "n"), r = geti(c.params, "r");
    std::vector<int> sizes;
    long long s = n;
    for (int i = 0; i < k; ++i) {
        sizes.push_back(static_cast<int>(s));
        s = static_cast<long long>(std::pow(s, r));
    }
    auto full = complete_kpartite_hypergraph(sizes);
    const double keep = c.rng.uniform01();
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < full.edge_count(); ++i)
        if (c.rng.bernoulli(keep))
            idx.push_back(i);
    auto sub = full.edge_subgraph(idx);
    auto chk = bipfree::kpartite_count_check(sub, sizes, r);
    TrialResult out;
    out.success = chk.pass;
    out.witness = {{"edges", sub.edge_count()}, {"exact", chk.exact}};
    out.stats = {{"edges", sub.edge_count()}, {"exact", chk.exact}, {"bound", chk.bound}, {"a", chk.a}};
    return out;
}

void kcheck_guard(json & p, const json &)
{
    double total = 1, s = geti(p, "n");
    for (int i = 0; i < geti(p, "k"); ++i) {
        total *= s;
        s = std::pow(s, geti(p, "r"));
    }
    if (total > 1e5)
        throw ValidationError("kcheck: complete instance above 10^5 edges");
}

// ---------------------------------------------------------------- embed

TrialResult embed_lemma(TrialContext & c)
{
    auto host = embed::random_dense_dch(geti(c.params, "N"), geti(c.params, "k"), getd(c.params, "delta"), c.rng);
    auto h = embed::cube_neighbourhood_hypergraph(geti(c.params, "d"));
    auto res = embed::resample_embed(h, host, c.rng, geti(c.params, "round_cap"));
    TrialResult out;
    out.success = embed::verify_embedding(h, host, res.map);
    out.witness = res.map;
    out.stats = {{"rounds", res.rounds},
                 {"in_regime", res.in_regime},
                 {"delta", res.delta},
                 {"delta_bound", res.delta_bound}};
    return out;
}

TrialResult embed_drc(TrialContext & c)
{
    const int n = geti(c.params, "N");
    auto b = random_bipartite(n, n, getd(c.params, "p"), c.rng);
    embed::DrcParams dp;
    // the realised density may fall just under p
    dp.eps = std::min(getd(c.params, "p"), b.density());
    if (dp.eps <= 0)
        throw std::runtime_error("drc: empty random graph");
    dp.k = geti(c.params, "k");
    dp.b = getd(c.params, "b");
    dp.n = geti(c.params, "n");
    auto res = embed::drc_subset(b, dp, c.rng);
    TrialResult out;
    out.success = static_cast<double>(res.u.size()) >= res.size_floor &&
                  static_cast<double>(res.bad) < res.bad_ceiling;
    out.witness = res.u;
    out.stats = {{"size", res.u.size()},      {"size_floor", res.size_floor}, {"bad", res.bad},
                 {"bad_ceiling", res.bad_ceiling}, {"attempts", res.attempts}};
    return out;
}

TrialResult embed_pipeline(TrialContext & c, const Graph & h)
{
    auto coloring = embed::random_two_coloring(geti(c.params, "N"), c.rng);
    auto copy = embed::bip_ramsey_pipeline(coloring, h, c.rng);
    TrialResult out;
    out.success = embed::verify_monochromatic_copy(coloring, h, copy.map, copy.color);
    out.witness = {{"color", copy.color}, {"map", copy.map}};
    out.stats = {{"color", copy.color}, {"rounds", copy.embedding.rounds}, {"U", copy.drc.u.size()},
                 {"b", copy.b}, {"eps", copy.eps}};
    return out;
}

Graph even_cycle(int len)
{
    std::vector<Edge> e;
    for (int i = 0; i < len; ++i)
        e.push_back(make_edge(i, (i + 1) % len));
    return Graph(len, e);
}

// ---------------------------------------------------------------- weakseq

TrialResult weakseq_pipeline(TrialContext & c)
{
    auto g = random_graph(geti(c.params, "n"), getd(c.params, "p"), c.rng);
    auto res = weakseq::weak_sequence_pipeline(g, geti(c.params, "r"), geti(c.params, "t"), c.rng);
    auto chk = weakseq::verify_sequence(g, res.sequence);
    bool clauses = std::all_of(res.stages.begin(), res.stages.end(), [](const auto & s) { return s.clauses_ok; });
    TrialResult out;
    out.success = chk.pass && clauses;
    out.witness = weakseq::to_json(res.sequence);
    out.stats = {{"order", res.sequence.order()}, {"clauses_ok", clauses}, {"stages", res.stages.size()}};
    return out;
}

TrialResult weakseq_verify(TrialContext & c)
{
    auto g = random_graph(geti(c.params, "n"), getd(c.params, "p"), c.rng);
    const int r = geti(c.params, "r");
    auto res = weakseq::weak_sequence_pipeline(g, r, geti(c.params, "t"), c.rng);
    bool direct = weakseq::verify_sequence(g, res.sequence).pass;
    bool complete = weakseq::verify_sequence(g, weakseq::as_complete(res.sequence)).pass;
    bool padded = weakseq::verify_sequence(g, weakseq::pad_sequence(g, res.sequence, r + 1)).pass;
    TrialResult out;
    out.success = direct && complete && padded;
    out.witness = weakseq::to_json(res.sequence);
    out.stats = {{"bicomplete", direct}, {"complete", complete}, {"padded", padded}};
    return out;
}

TrialResult weakseq_minor(TrialContext & c)
{
    auto constants = weakseq::MinorConstants::from_json(c.preset.at("weakseq").at("minor"));
    auto g = random_graph(geti(c.params, "n"), getd(c.params, "p"), c.rng);
    auto res = weakseq::minor_pipeline(g, geti(c.params, "r"), geti(c.params, "t"), constants, c.rng);
    auto chk = weakseq::verify_minor(g, res.model);
    std::size_t largest = 0;
    for (const auto & b : res.model.branch_sets)
        largest = std::max(largest, b.size());
    TrialResult out;
    out.success = chk.pass;
    out.witness = weakseq::to_json(res.model);
    out.stats = {{"t", res.model.branch_sets.size()}, {"largest_branch_set", largest}, {"size_cap", res.model.size_cap}};
    return out;
}

TrialResult weakseq_oracle(TrialContext & c)
{
    auto g = random_graph(geti(c.params, "n"), getd(c.params, "p"), c.rng);
    int best = weakseq::max_weakly_complete_order(g, geti(c.params, "r"));
    TrialResult out;
    out.success = true;
    out.witness = {{"edges", edges_json(g)}, {"order", best}};
    out.stats = {{"order", best}, {"edges", g.edge_count()}};
    return out;
}

void weakseq_check(json & p, const json &)
{
    if (geti(p, "t") == 0)
        p["t"] = weakseq::regime2_t(geti(p, "n"), getd(p, "p"), geti(p, "r"));
}

// ---------------------------------------------------------------- rsgraph

TrialResult rs_behrend(TrialContext & c)
{
    auto b = rsgraph::behrend_set(geti(c.params, "N"));
    bool free = b.elements.size() <= 100'000 ? !rsgraph::find_three_ap(b.elements)
                                             : !rsgraph::sample_three_ap(b.elements, c.rng, 1'000'000);
    TrialResult out;
    out.success = free;
    out.witness = b.elements;
    out.stats = {{"size", b.elements.size()}, {"d", b.d}, {"j", b.j}};
    return out;
}

std::optional<int> chunk_of(const json & p)
{
    return geti(p, "chunk") > 0 ? std::optional<int>(geti(p, "chunk")) : std::nullopt;
}

TrialResult rs_construct(TrialContext & c)
{
    auto d = rsgraph::rs_from_behrend(geti(c.params, "N"), chunk_of(c.params));
    TrialResult out;
    out.success = rsgraph::verify_rs(d).pass;
    out.witness = {{"matching_size", d.matching_size()}, {"matching_count", d.matching_count()},
                   {"edges", d.graph.edge_count()}};
    out.stats = {{"n", d.matching_size()}, {"t", d.matching_count()}, {"vertices", d.graph.vertex_count()},
                 {"edges", d.graph.edge_count()}};
    return out;
}

TrialResult rs_double(TrialContext & c)
{
    auto d = rsgraph::bipartite_double(rsgraph::rs_from_behrend(geti(c.params, "N"), chunk_of(c.params)));
    TrialResult out;
    out.success = rsgraph::verify_rs(d).pass;
    out.witness = {{"matching_size", d.matching_size()}, {"matching_count", d.matching_count()}};
    out.stats = {{"n", d.matching_size()}, {"t", d.matching_count()}, {"vertices", d.graph.vertex_count()}};
    return out;
}

TrialResult rs_decompose(TrialContext & c)
{
    Graph g;
    if (gets(c.params, "source") == "behrend")
        g = rsgraph::rs_from_behrend(geti(c.params, "N")).graph;
    else
        g = random_graph(geti(c.params, "vertices"), getd(c.params, "p"), c.rng);
    const int n = geti(c.params, "n"), t = geti(c.params, "t");
    auto res = rsgraph::greedy_decompose(g, n, t);
    TrialResult out;
    const char * names[] = {"rs_subgraph", "falsified", "unknown"};
    bool certified = false;
    if (res.verdict == rsgraph::Verdict::rs_subgraph)
        certified = rsgraph::verify_rs(res.extracted).pass && res.extracted.matching_count() >= t;
    else if (res.verdict == rsgraph::Verdict::falsified)
        certified = rsgraph::verify_falsifying(g, res.coloring, t, n).pass;
    out.success = certified;
    out.witness = {{"verdict", names[static_cast<int>(res.verdict)]}, {"coloring", res.coloring},
                   {"extracted", res.extracted.matching_count()}};
    out.stats = {{"verdict", names[static_cast<int>(res.verdict)]},
                 {"extracted", res.extracted.matching_count()},
                 {"red_max_degree", res.red_max_degree},
                 {"edges", g.edge_count()}};
    return out;
}

TrialResult rs_arrow(TrialContext & c)
{
    const char * names[] = {"arrows", "falsified", "unknown"};
    TrialResult out;
    if (gets(c.params, "mode") == "theorem") {
        auto dbl = rsgraph::bipartite_double(rsgraph::rs_from_behrend(geti(c.params, "N"), chunk_of(c.params)));
        long long s = dbl.matching_size(), cnt = dbl.matching_count(), v = dbl.graph.vertex_count();
        int n = geti(c.params, "n"), t = geti(c.params, "t");
        if (n == 0)
            n = static_cast<int>(s / 2);
        if (t == 0)
            t = static_cast<int>(std::min<long long>(n, cnt * s / v));
        auto res = rsgraph::arrow_check(dbl.graph, std::max(t, 1), std::max(n, 1), rsgraph::ArrowMode::theorem, &dbl);
        out.success = res.verdict == rsgraph::ArrowVerdict::arrows;
        out.witness = res.params;
        out.stats = {{"verdict", names[static_cast<int>(res.verdict)]}, {"t", t}, {"n", n}, {"matching_size", s}};
        return out;
    }
    // exhaustive: a random graph with the requested number of edges
    const int nv = geti(c.params, "vertices"), m = geti(c.params, "edges");
    auto all = complete_graph(nv);
    if (static_cast<std::size_t>(m) > all.edge_count())
        throw ValidationError("arrow: more edges than K_n has");
    auto pick = c.rng.sample(static_cast<int>(all.edge_count()), m);
    std::vector<Edge> e;
    for (int i : pick)
        e.push_back(all.edge(static_cast<std::size_t>(i)));
    Graph g(nv, e);
    const int t = std::max(1, geti(c.params, "t")), n = std::max(1, geti(c.params, "n"));
    auto res = rsgraph::arrow_check(g, t, n, rsgraph::ArrowMode::exhaustive);
    out.success = res.verdict == rsgraph::ArrowVerdict::arrows ||
                  (res.verdict == rsgraph::ArrowVerdict::falsified &&
                   !rsgraph::has_monochromatic_target(g, res.coloring, t, n));
    out.witness = {{"edges", edges_json(g)}, {"verdict", names[static_cast<int>(res.verdict)]}, {"coloring", res.coloring}};
    out.stats = {{"verdict", names[static_cast<int>(res.verdict)]}, {"arrows", res.verdict == rsgraph::ArrowVerdict::arrows}};
    return out;
}

// ---------------------------------------------------------------- removal

std::vector<ParamSpec> grid_params()
{
    return {T("grid_file", "", {}, "grid file; empty for a random grid"), I("N", 15, 1, 100, "random grid side"),
            I("r", 2, 1, 64, "random grid colours")};
}

removal::GridColoring source_grid(TrialContext & c)
{
    if (!gets(c.params, "grid_file").empty()) {
        std::ifstream f(gets(c.params, "grid_file"));
        if (!f)
            throw ValidationError("cannot read " + gets(c.params, "grid_file"));
        return removal::parse_grid(f);
    }
    return removal::random_grid(geti(c.params, "N"), geti(c.params, "r"), c.rng);
}

TrialResult removal_census(TrialContext & c)
{
    auto g = source_grid(c);
    auto cover = removal::grid_reduction(g);
    auto census = removal::triangle_census(cover.host);
    TrialResult out;
    out.success = removal::validate_cover(cover).pass && census.total >= cover.triangles.size();
    out.witness = census.per_color;
    out.stats = {{"census", census.total}, {"n_squared", cover.triangles.size()},
                 {"excess", census.total - cover.triangles.size()}};
    return out;
}

TrialResult removal_step(TrialContext & c)
{
    auto g = source_grid(c);
    auto step = removal::sparse_pair_step(removal::grid_reduction(g));
    TrialResult out;
    out.success = step.clauses_ok;
    out.witness = step.to_json();
    out.stats = {{"size", step.v1.size()},  {"size_floor", step.size_floor}, {"edges_in_color", step.edges_in_color},
                 {"edge_bound", step.edge_bound}, {"delta", step.delta}};
    return out;
}

TrialResult removal_iterate_op(TrialContext & c)
{
    auto g = source_grid(c);
    auto res = removal::removal_iterate(removal::grid_reduction(g), 0, c.params.at("stop_at_diamond").get<bool>());
    TrialResult out;
    out.success = res.bookkeeping_ok && res.theorem_bound_ok && res.base_bound_ok;
    out.witness = res.to_json();
    out.stats = {{"depth", res.trace.size()},
                 {"diamond", res.verdict == removal::IterVerdict::diamond_found},
                 {"theorem_bound", res.theorem_bound}};
    return out;
}

TrialResult removal_diamond(TrialContext & c)
{
    auto g = source_grid(c);
    auto cover = removal::grid_reduction(g);
    auto a = removal::diamond_find(cover.host);
    auto b = removal::diamond_find_transposed(cover.host);
    TrialResult out;
    out.success = a.has_value() == b.has_value();
    out.witness = a ? removal::to_json(*a) : json(nullptr);
    out.stats = {{"found", a.has_value()}};
    return out;
}

TrialResult removal_grid(TrialContext & c)
{
    auto g = source_grid(c);
    auto res = removal::grid_pipeline(g);
    TrialResult out;
    out.success = res.oracle_agrees && (!res.corner || removal::verify_corner(g, *res.corner));
    out.witness = res.corner ? removal::to_json(*res.corner) : json(nullptr);
    out.stats = {{"found", res.corner.has_value()}, {"oracle_corners", res.oracle_corners}};
    return out;
}

std::vector<Operation> build()
{
    std::vector<Operation> ops;
    auto add = [&](Operation o) { ops.push_back(std::move(o)); };

    add({"setmap", "construct", "build a mapping and check sampled images", setmap_params(), "", setmap_check,
         setmap_construct, "samples"});
    add({"setmap", "violate", "violator on a random set above the guarantee threshold", setmap_params(), "",
         setmap_check, setmap_violate, "found"});
    add({"setmap", "oracle", "largest free set by branch and bound", setmap_params(), "", setmap_check, setmap_oracle,
         "lower"});

    auto with = [](std::vector<ParamSpec> base, std::vector<ParamSpec> more) {
        base.insert(base.end(), more.begin(), more.end());
        return base;
    };
    add({"bipfree", "count", "count K_{r,r} copies against 2m^r", with(graph_source_params(), {I("r", 2, 1, 6, "")}),
         "", nullptr, bipfree_count, "count"});
    add({"bipfree", "extract", "K_{r,r}-free subgraph of size at least m^{r/(r+1)}/4",
         with(graph_source_params(), {I("r", 2, 1, 6, "")}), "", nullptr, bipfree_extract, "size_floor_ratio"});
    add({"bipfree", "tight", "exact Zarankiewicz value on K_{a,a^r}",
         {I("r", 2, 2, 6, ""), I("s", 2, 2, 6, ""), I("m", 64, 1, 1e6, "edge count, a perfect (r+1)-th power")}, "",
         nullptr, bipfree_tight, "exact_value"});
    add({"bipfree", "kcheck", "k-partite counting bound on a random sub-k-graph",
         {I("k", 2, 2, 4, ""), I("n", 2, 2, 10, ""), I("r", 2, 2, 4, "")}, "", kcheck_guard, bipfree_kcheck, "exact"});

    add({"embed", "lemma", "resampling embedding of the Q_d neighbourhood hypergraph",
         {I("N", 128, 2, 4096, ""), I("k", 3, 1, 6, ""), R("delta", 0.009, 0, 1, ""), I("d", 3, 1, 6, ""),
          I("round_cap", 10000, 1, 1e8, "")},
         "/lll_embed", nullptr, embed_lemma, "rounds"});
    add({"embed", "drc", "dependent random choice on a random bipartite graph",
         {I("N", 200, 2, 4000, ""), R("p", 0.5, 0.01, 1, ""), I("k", 2, 1, 6, ""), R("b", 2, 1, 1e6, ""),
          I("n", 2, 1, 1e6, "")},
         "", nullptr, embed_drc, "size"});
    add({"embed", "pipeline", "monochromatic even cycle C_d in a random 2-colouring of K_N",
         {I("N", 64, 2, 2048, ""), I("d", 6, 4, 64, "cycle length (even)")}, "", [](json & p, const json &) {
             if (geti(p, "d") % 2)
                 throw ValidationError("pipeline: cycle length must be even");
         },
         [](TrialContext & c) { return embed_pipeline(c, even_cycle(geti(c.params, "d"))); }, "rounds"});
    add({"embed", "cube", "monochromatic Q_d in a random 2-colouring of K_N",
         {I("N", 512, 2, 2048, ""), I("d", 3, 1, 5, "")}, "", nullptr,
         [](TrialContext & c) { return embed_pipeline(c, hypercube(geti(c.params, "d"))); }, "rounds"});

    auto seq_params = [] {
        return std::vector<ParamSpec>{I("n", 2000, 2, 20000, ""), R("p", 0.5, 0.001, 1, ""), I("r", 4, 1, 64, ""),
                                      I("t", 0, 0, 12, "0 picks the regime-2 value")};
    };
    add({"weakseq", "pipeline", "weakly bi-complete r-sequence in G(n, p)", seq_params(), "/weakseq/sequence_instance",
         weakseq_check, weakseq_pipeline, "order"});
    add({"weakseq", "verify", "pipeline output re-verified as bi-complete, complete and padded", seq_params(),
         "/weakseq/sequence_instance", weakseq_check, weakseq_verify, "complete"});
    add({"weakseq", "minor", "K_t minor with small branch sets, constants from the preset",
         {I("n", 2000, 2, 20000, ""), R("p", 0.5, 0.001, 1, ""), I("r", 3, 1, 64, ""), I("t", 6, 1, 12, "")},
         "/weakseq/minor_instance", [](json &, const json & pre) {
             if (!pre.contains("weakseq") || !pre["weakseq"].contains("minor"))
                 throw ValidationError("preset has no weakseq.minor constants");
         },
         weakseq_minor, "largest_branch_set"});
    add({"weakseq", "oracle", "largest weakly complete r-sequence order, exhaustive",
         {I("n", 10, 1, 12, ""), R("p", 0.5, 0, 1, ""), I("r", 1, 1, 6, "")}, "", nullptr, weakseq_oracle, "order"});

    add({"rsgraph", "behrend", "3-AP-free set in 1..N", {I("N", 1000, 1, 1e7, "")}, "", nullptr, rs_behrend, "size"});
    add({"rsgraph", "construct", "RS graph from a Behrend set",
         {I("N", 3000, 15, 1e6, ""), I("chunk", 0, 0, 1e6, "matching piece size; 0 keeps whole matchings")}, "",
         nullptr, rs_construct, "n"});
    add({"rsgraph", "double", "bipartite double of the Behrend RS graph",
         {I("N", 3000, 15, 1e6, ""), I("chunk", 0, 0, 1e6, "")}, "", nullptr, rs_double, "n"});
    add({"rsgraph", "decompose", "greedy induced-matching decomposition or falsifying colouring",
         {T("source", "random", {"random", "behrend"}, ""), I("N", 44, 15, 200, "Behrend source size"),
          I("vertices", 12, 1, 40, ""), R("p", 0.3, 0, 1, ""), I("n", 2, 1, 20, ""), I("t", 3, 1, 1000, "")},
         "", nullptr, rs_decompose, "extracted"});
    add({"rsgraph", "arrow", "induced arrowing (K_{1,t}, M_n)",
         {T("mode", "exhaustive", {"exhaustive", "theorem"}, ""), I("vertices", 6, 1, 64, ""),
          I("edges", 8, 0, 24, ""), I("t", 1, 0, 64, "0 picks the largest valid value (theorem mode)"),
          I("n", 1, 0, 1e6, ""), I("N", 3000, 15, 1e6, ""), I("chunk", 0, 0, 1e6, "")},
         "", nullptr, rs_arrow, "arrows"});

    add({"removal", "census", "monochromatic triangles of the grid reduction", grid_params(), "", nullptr,
         removal_census, "excess"});
    add({"removal", "step", "one sparse-pair step on the grid reduction", grid_params(), "", nullptr, removal_step,
         "size"});
    add({"removal", "iterate", "descent trace on the grid reduction",
         with(grid_params(), {F("stop_at_diamond", true, "")}), "", nullptr, removal_iterate_op, "depth"});
    add({"removal", "diamond", "diamond search, two loop orders", grid_params(), "", nullptr, removal_diamond,
         "found"});
    add({"removal", "grid", "corner via a diamond, checked against the direct scan", grid_params(), "", nullptr,
         removal_grid, "found"});
    return ops;
}

} // namespace

const std::vector<Operation> & registry()
{
    static const std::vector<Operation> ops = build();
    return ops;
}

} // namespace exlab::expcli
