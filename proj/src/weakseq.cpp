#include <exlab/errors.hpp>
#include <exlab/generators.hpp>
#include <exlab/weakseq.hpp>

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <queue>
#include <stdexcept>

namespace exlab::weakseq {

namespace {

constexpr double tol = 1e-12;

std::size_t sz(int v) { return static_cast<std::size_t>(v); }

Bitset mask_of(std::size_t size, std::span<const int> members)
{
    Bitset m(size);
    for (int v : members)
        m.set(sz(v));
    return m;
}

/// Indices 0..count-1 ordered by decreasing `key`, ties by index.
std::vector<int> by_decreasing(const std::vector<int> & key)
{
    std::vector<int> order(key.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return key[sz(a)] > key[sz(b)]; });
    return order;
}

/// The `keep` entries of 0..key.size()-1 with the largest keys, sorted.
std::vector<int> top_by_key(const std::vector<int> & key, std::size_t keep)
{
    auto order = by_decreasing(key);
    order.resize(std::min(keep, order.size()));
    std::sort(order.begin(), order.end());
    return order;
}

std::vector<int> all_of(int n)
{
    std::vector<int> v(sz(n));
    std::iota(v.begin(), v.end(), 0);
    return v;
}

/// Bipartite graph on (parts, right) where part i meets b when some member
/// of part i is adjacent to b.
BipartiteGraph contract_left(const BipartiteGraph & b, const std::vector<std::vector<int>> & parts)
{
    std::vector<int> part_of(sz(b.left_size()), -1);
    for (std::size_t i = 0; i < parts.size(); ++i)
        for (int v : parts[i])
            part_of[sz(v)] = static_cast<int>(i);
    std::vector<BipartiteGraph::Pair> pairs;
    std::vector<int> stamp(parts.size(), -1);
    for (int j = 0; j < b.right_size(); ++j)
        b.right_row(j).for_each([&](std::size_t v) {
            int i = part_of[v];
            if (i >= 0 && stamp[sz(i)] != j) {
                stamp[sz(i)] = j;
                pairs.push_back({i, j});
            }
        });
    return BipartiteGraph(static_cast<int>(parts.size()), b.right_size(), std::move(pairs));
}

} // namespace

// ------------------------------------------------------------ sequences

SequenceCheck verify_sequence(const Graph & g, const WeakSequence & w)
{
    auto fail = [](std::string why, int i = -1, int j = -1) { return SequenceCheck{false, std::move(why), i, j}; };
    if (!g.has_rows())
        throw ResourceGuard("verify_sequence: graph too large for adjacency rows");
    const int n = g.vertex_count();
    if (w.r < 1)
        return fail("r must be positive");
    bool bi = w.kind == WeakSequence::Kind::bicomplete;
    if (bi && w.t.size() != w.s.size())
        return fail("bi-complete sequence needs as many T sets as S sets");
    if (!bi && !w.t.empty())
        return fail("complete sequence carries T sets");
    std::vector<char> seen(sz(n), 0);
    auto check_sets = [&](const std::vector<std::vector<int>> & sets, const char * name) -> std::optional<SequenceCheck> {
        for (std::size_t i = 0; i < sets.size(); ++i) {
            if (static_cast<int>(sets[i].size()) != w.r)
                return fail(std::string(name) + " set " + std::to_string(i) + " does not have r vertices", static_cast<int>(i));
            for (int v : sets[i]) {
                if (v < 0 || v >= n)
                    return fail("vertex out of range", static_cast<int>(i));
                if (seen[sz(v)])
                    return fail("sets are not disjoint at vertex " + std::to_string(v), static_cast<int>(i));
                seen[sz(v)] = 1;
            }
        }
        return std::nullopt;
    };
    if (auto bad = check_sets(w.s, "S"))
        return *bad;
    if (auto bad = check_sets(w.t, "T"))
        return *bad;

    auto joined = [&](const std::vector<int> & a, const Bitset & mb) {
        return std::any_of(a.begin(), a.end(), [&](int v) { return g.row(v).intersects(mb); });
    };
    if (bi) {
        std::vector<Bitset> tm;
        for (const auto & t : w.t)
            tm.push_back(mask_of(sz(n), t));
        for (std::size_t i = 0; i < w.s.size(); ++i)
            for (std::size_t j = 0; j < w.t.size(); ++j)
                if (!joined(w.s[i], tm[j]))
                    return fail("no edge between S_" + std::to_string(i) + " and T_" + std::to_string(j),
                                static_cast<int>(i), static_cast<int>(j));
    }
    else {
        for (std::size_t j = 0; j < w.s.size(); ++j) {
            auto mj = mask_of(sz(n), w.s[j]);
            for (std::size_t i = 0; i < j; ++i)
                if (!joined(w.s[i], mj))
                    return fail("no edge between S_" + std::to_string(i) + " and S_" + std::to_string(j),
                                static_cast<int>(i), static_cast<int>(j));
        }
    }
    return {};
}

WeakSequence as_complete(const WeakSequence & w)
{
    if (w.kind != WeakSequence::Kind::bicomplete || w.s.size() != w.t.size())
        throw std::invalid_argument("as_complete: expected a bi-complete sequence");
    WeakSequence out;
    out.kind = WeakSequence::Kind::complete;
    out.r = 2 * w.r;
    for (std::size_t i = 0; i < w.s.size(); ++i) {
        auto merged = w.s[i];
        merged.insert(merged.end(), w.t[i].begin(), w.t[i].end());
        std::sort(merged.begin(), merged.end());
        out.s.push_back(std::move(merged));
    }
    return out;
}

WeakSequence pad_sequence(const Graph & g, const WeakSequence & w, int r2)
{
    const int n = g.vertex_count();
    std::size_t sets = w.s.size() + w.t.size();
    if (r2 < w.r || sets * sz(r2) > sz(n))
        throw std::invalid_argument("pad_sequence: need r <= r2 and enough spare vertices");
    std::vector<char> used(sz(n), 0);
    for (const auto * fam : {&w.s, &w.t})
        for (const auto & s : *fam)
            for (int v : s)
                used[sz(v)] = 1;
    WeakSequence out = w;
    out.r = r2;
    int next = 0;
    for (auto * fam : {&out.s, &out.t})
        for (auto & s : *fam) {
            while (static_cast<int>(s.size()) < r2) {
                while (used[sz(next)])
                    ++next;
                used[sz(next)] = 1;
                s.push_back(next);
            }
            std::sort(s.begin(), s.end());
        }
    return out;
}

SeqParams SeqParams::compute(int n, double p, int r, int t)
{
    SeqParams s;
    s.n = n;
    s.p = p;
    s.r = r;
    s.t = t;
    s.rho = std::pow(1.0 - p / 2.0, r);
    s.big_n = p * n / (16.0 * r);
    s.delta_bound = std::exp(-p * r * r / 8.0);
    s.proof_case = p <= 3.0 / r ? 1 : 2;
    const double ln = std::log(static_cast<double>(n));
    const double pr2 = p * r * r;
    if (p >= std::pow(n, -1.0 / 3) && r <= 2.0 / std::sqrt(p) && 32.0 / pr2 > 1.0)
        s.t_max[0] = ln / (4.0 * std::log(32.0 / pr2));
    if (p >= std::pow(n, -1.0 / 5) && r >= 4.0 / std::sqrt(p) && r <= std::sqrt(ln / p))
        s.t_max[1] = std::exp(pr2 / 8.0) * ln / 16.0;
    if (r >= 4.0 * std::sqrt(ln / p))
        s.t_max[2] = std::min(p * n / (64.0 * std::sqrt(ln)), n / (2.0 * r));
    for (int i = 0; i < 3; ++i)
        s.regime[sz(i)] = s.t_max[sz(i)] > 0 && t <= s.t_max[sz(i)];
    return s;
}

nlohmann::json SeqParams::to_json() const
{
    return {{"n", n},         {"p", p},
            {"r", r},         {"t", t},
            {"rho", rho},     {"N", big_n},
            {"delta_bound", delta_bound},
            {"case", proof_case},
            {"regime", regime},
            {"t_max", t_max}};
}

int regime2_t(int n, double p, int r)
{
    double v = std::exp(p * r * r / 8.0) * std::log(static_cast<double>(n)) / 16.0;
    return std::max(1, static_cast<int>(std::floor(v)));
}

// ------------------------------------------------------------ filter and partition

nlohmann::json FilterResult::to_json() const
{
    return {{"kept", kept.size()},
            {"size_floor", size_floor},
            {"degree_threshold", degree_threshold},
            {"min_kept_degree", min_kept_degree}};
}

FilterResult degree_filter(const BipartiteGraph & b, FilterMode mode, double param)
{
    const int l = b.left_size();
    const int r = b.right_size();
    if (l < 1 || r < 1)
        throw std::invalid_argument("degree_filter: empty side");
    const double density = b.density();
    FilterResult out;
    if (mode == FilterMode::sparse) {
        if (!(param > 0.0 && param <= 1.0))
            throw std::invalid_argument("degree_filter: sparse mode needs p in (0,1]");
        if (density + tol < param)
            throw std::invalid_argument("degree_filter: density " + std::to_string(density) + " below p");
        out.degree_threshold = param * l / 2.0;
        out.size_floor = param * r / 2.0;
    }
    else {
        if (!(param >= 0.0 && param < 1.0))
            throw std::invalid_argument("degree_filter: dense mode needs q in [0,1)");
        if (density + tol < 1.0 - param)
            throw std::invalid_argument("degree_filter: density " + std::to_string(density) + " below 1-q");
        out.degree_threshold = (1.0 - 2.0 * param) * l;
        out.size_floor = r / 2.0;
    }
    out.min_kept_degree = l + 1;
    for (int v = 0; v < r; ++v) {
        int d = b.right_degree(v);
        if (static_cast<double>(d) > out.degree_threshold) {
            out.kept.push_back(v);
            out.min_kept_degree = std::min(out.min_kept_degree, d);
        }
    }
    if (out.kept.empty())
        out.min_kept_degree = 0;
    if (static_cast<double>(out.kept.size()) + 1e-9 < out.size_floor)
        throw std::logic_error("degree_filter: kept set below its guaranteed size");
    return out;
}

nlohmann::json PartitionResult::to_json() const
{
    return {{"parts", parts.size()},
            {"uncovered", uncovered},
            {"fraction", fraction},
            {"bound", bound},
            {"attempts", attempts}};
}

PartitionResult cover_partition(const BipartiteGraph & b, double p, int r, RngStream & rng, int retry_cap)
{
    const int l = b.left_size();
    const int m = b.right_size();
    if (r < 1 || l < r || l % r != 0)
        throw std::invalid_argument("cover_partition: r must divide |V_1|");
    if (!(p >= 0.0 && p <= 1.0))
        throw std::invalid_argument("cover_partition: p must lie in [0,1]");
    for (int v = 0; v < m; ++v)
        if (b.right_degree(v) + 1e-9 < p * l)
            throw std::invalid_argument("cover_partition: right vertex " + std::to_string(v) +
                                        " has fewer than p|V_1| neighbours");
    const int d = l / r;
    PartitionResult best;
    best.bound = std::pow(1.0 - p, r);
    best.fraction = 2.0;
    std::vector<int> order = all_of(l);
    std::vector<int> part_of(sz(l));
    std::vector<int> stamp(sz(d));
    for (int attempt = 1; attempt <= retry_cap; ++attempt) {
        rng.shuffle(order);
        for (int i = 0; i < l; ++i)
            part_of[sz(order[sz(i)])] = i / r;
        // count (part, b) pairs with no edge, by marking the parts b hits
        std::fill(stamp.begin(), stamp.end(), -1);
        std::uint64_t uncovered = 0;
        for (int v = 0; v < m; ++v) {
            int hits = 0;
            b.right_row(v).for_each([&](std::size_t u) {
                int i = part_of[u];
                if (stamp[sz(i)] != v) {
                    stamp[sz(i)] = v;
                    ++hits;
                }
            });
            uncovered += static_cast<std::uint64_t>(d - hits);
        }
        double fraction = m == 0 ? 0.0 : static_cast<double>(uncovered) / (static_cast<double>(d) * m);
        if (fraction < best.fraction) {
            best.parts.assign(sz(d), {});
            for (int i = 0; i < l; ++i)
                best.parts[sz(i / r)].push_back(order[sz(i)]);
            for (auto & part : best.parts)
                std::sort(part.begin(), part.end());
            best.uncovered = uncovered;
            best.fraction = fraction;
        }
        best.attempts = attempt;
        if (fraction <= best.bound + tol)
            return best;
    }
    throw SearchFailure("cover_partition", "retry cap exhausted",
                        {{"retry_cap", retry_cap},
                         {"best_fraction", best.fraction},
                         {"bound", best.bound},
                         {"best_partition", best.parts}});
}

// ------------------------------------------------------------ K_{t,t}

KttSearch find_ktt(const BipartiteGraph & b, int t, std::uint64_t node_budget)
{
    if (t < 1 || t > 12)
        throw std::invalid_argument("find_ktt: t must lie in 1..12");
    KttSearch out;
    if (b.left_size() < t || b.right_size() < t)
        return out;
    std::vector<int> degree(sz(b.left_size()));
    for (int v = 0; v < b.left_size(); ++v)
        degree[sz(v)] = b.left_degree(v);
    std::vector<int> cand;
    for (int v : by_decreasing(degree))
        if (degree[sz(v)] >= t)
            cand.push_back(v);

    std::vector<Bitset> common(sz(t) + 1, Bitset(sz(b.right_size())));
    common[0].set_all();
    std::vector<int> chosen;
    bool aborted = false;
    auto rec = [&](auto && self, std::size_t from, int depth) -> bool {
        for (std::size_t i = from; i + sz(t - depth) <= cand.size(); ++i) {
            if (++out.nodes > node_budget) {
                aborted = true;
                return false;
            }
            auto & c = common[sz(depth) + 1];
            c = common[sz(depth)];
            c &= b.left_row(cand[i]);
            if (c.count() < sz(t))
                continue;
            chosen.push_back(cand[i]);
            if (depth + 1 == t)
                return true;
            if (self(self, i + 1, depth + 1))
                return true;
            chosen.pop_back();
            if (aborted)
                return false;
        }
        return false;
    };
    if (rec(rec, 0, 0)) {
        Ktt w;
        w.left = chosen;
        std::sort(w.left.begin(), w.left.end());
        auto right = common[sz(t)].to_vector();
        w.right.assign(right.begin(), right.begin() + t);
        out.witness = std::move(w);
    }
    out.exhaustive = !aborted;
    return out;
}

// ------------------------------------------------------------ pipeline

PipelineResult bipartite_sequence(const BipartiteGraph & b, double p, int r, int t, RngStream & rng)
{
    if (r < 1 || t < 1)
        throw std::invalid_argument("bipartite_sequence: r and t must be positive");
    if (!(p > 0.0 && p <= 1.0))
        throw std::invalid_argument("bipartite_sequence: p must lie in (0,1]");
    if (b.density() + tol < p)
        throw std::invalid_argument("bipartite_sequence: density below p");
    PipelineResult res;
    res.params = SeqParams::compute(b.left_size() + b.right_size(), p, r, t);
    if (!res.params.any_regime())
        res.warnings.push_back("parameters lie outside all three regimes");

    auto stage_fail = [&](const std::string & stage, const std::string & what, nlohmann::json stats) {
        stats["params"] = res.params.to_json();
        throw SearchFailure(stage, what, std::move(stats));
    };

    // trim V_1 to a multiple of r, dropping its lowest degrees (density only rises)
    std::vector<int> l_degree(sz(b.left_size()));
    for (int v = 0; v < b.left_size(); ++v)
        l_degree[sz(v)] = b.left_degree(v);
    auto keep_l = top_by_key(l_degree, sz(b.left_size() / r * r));
    if (keep_l.empty())
        stage_fail("trim", "|V_1| < r", {{"V1", b.left_size()}, {"r", r}});
    BipartiteGraph b1 = b.induced(keep_l, all_of(b.right_size()));

    FilterResult f1;
    try {
        f1 = degree_filter(b1, FilterMode::sparse, p);
    }
    catch (const std::invalid_argument & e) {
        stage_fail("filter1", e.what(), {{"density", b1.density()}});
    }
    std::vector<int> b_deg;
    for (int v : f1.kept)
        b_deg.push_back(b1.right_degree(v));
    auto b_pos = top_by_key(b_deg, f1.kept.size() / sz(r) * sz(r));
    std::vector<int> big_b;
    for (int i : b_pos)
        big_b.push_back(f1.kept[sz(i)]);
    {
        auto stats = f1.to_json();
        stats["trimmed"] = big_b.size();
        res.stages.push_back({"filter1", true, stats});
    }
    if (big_b.empty())
        stage_fail("filter1", "filtered set smaller than r", f1.to_json());

    BipartiteGraph h1 = b1.induced(all_of(b1.left_size()), big_b);
    PartitionResult part1;
    try {
        part1 = cover_partition(h1, p / 2.0, r, rng);
    }
    catch (const SearchFailure & e) {
        stage_fail("partition1", e.what(), e.report());
    }
    res.stages.push_back({"partition1", std::abs(part1.bound - res.params.rho) < 1e-9, part1.to_json()});

    // X: parts of V_1 against B
    BipartiteGraph x = contract_left(h1, part1.parts);
    BipartiteGraph xt = x.transposed(); // left = B, right = parts
    const double pr = p * r;
    FilterResult f2;
    double p2 = 0;
    try {
        if (res.params.proof_case == 1) {
            f2 = degree_filter(xt, FilterMode::sparse, pr / 4.0);
            p2 = pr / 8.0;
        }
        else {
            double q = std::exp(-pr / 2.0);
            f2 = degree_filter(xt, FilterMode::dense, q);
            p2 = 1.0 - 2.0 * q;
        }
    }
    catch (const std::invalid_argument & e) {
        stage_fail("filter2", e.what(), {{"x_density", x.density()}});
    }
    {
        auto stats = f2.to_json();
        stats["case"] = res.params.proof_case;
        stats["x_density"] = x.density();
        stats["x_density_floor"] = 1.0 - res.params.rho;
        res.stages.push_back({"filter2", x.density() + tol >= 1.0 - res.params.rho, stats});
    }
    const auto & big_s = f2.kept; // indices of parts

    BipartiteGraph h2 = xt.induced(all_of(xt.left_size()), big_s); // left = B, right = S
    PartitionResult part2;
    try {
        part2 = cover_partition(h2, p2, r, rng);
    }
    catch (const std::exception & e) {
        stage_fail("partition2", e.what(), {{"p2", p2}});
    }
    res.stages.push_back({"partition2", part2.bound <= res.params.delta_bound + 1e-9, part2.to_json()});

    // T: S against the parts of B
    BipartiteGraph tt = contract_left(h2, part2.parts).transposed(); // left = S, right = [h]
    double delta = 1.0 - tt.density();
    res.stages.push_back({"T",
                          delta <= part2.fraction + 1e-9 && delta <= res.params.delta_bound + 1e-9,
                          {{"S", tt.left_size()},
                           {"h", tt.right_size()},
                           {"delta", delta},
                           {"delta_bound", res.params.delta_bound}}});

    auto ktt = find_ktt(tt, t);
    res.stages.push_back({"ktt", ktt.witness.has_value(), {{"nodes", ktt.nodes}, {"exhaustive", ktt.exhaustive}}});
    if (!ktt.witness)
        stage_fail("ktt", ktt.exhaustive ? "T has no K_{t,t}" : "K_{t,t} search budget exhausted",
                   {{"S", tt.left_size()}, {"h", tt.right_size()}, {"delta", delta}, {"nodes", ktt.nodes}});

    WeakSequence & w = res.sequence;
    w.kind = WeakSequence::Kind::bicomplete;
    w.r = r;
    for (int i : ktt.witness->left) {
        std::vector<int> set;
        for (int v : part1.parts[sz(big_s[sz(i)])])
            set.push_back(keep_l[sz(v)]);
        std::sort(set.begin(), set.end());
        w.s.push_back(std::move(set));
    }
    for (int j : ktt.witness->right) {
        std::vector<int> set;
        for (int v : part2.parts[sz(j)])
            set.push_back(big_b[sz(v)]);
        std::sort(set.begin(), set.end());
        w.t.push_back(std::move(set));
    }
    return res;
}

PipelineResult weak_sequence_pipeline(const Graph & g, int r, int t, RngStream & rng)
{
    const double p = g.density();
    if (!(p > 0.0))
        throw SearchFailure("input", "graph has no edges", {{"n", g.vertex_count()}});
    Bipartition part = random_equitable_bipartition(g, rng);
    PipelineResult res = bipartite_sequence(part.graph, p, r, t, rng);
    res.params = SeqParams::compute(g.vertex_count(), p, r, t);
    res.stages.insert(res.stages.begin(),
                      StageRecord{"bipartition",
                                  part.cross_density + tol >= p,
                                  {{"cross_density", part.cross_density}, {"density", p}, {"attempts", part.attempts}}});
    for (auto & s : res.sequence.s)
        for (auto & v : s)
            v = part.left[sz(v)];
    for (auto & s : res.sequence.t)
        for (auto & v : s)
            v = part.right[sz(v)];
    for (auto * fam : {&res.sequence.s, &res.sequence.t})
        for (auto & s : *fam)
            std::sort(s.begin(), s.end());
    auto check = verify_sequence(g, res.sequence);
    if (!check.pass)
        throw std::logic_error("weak_sequence_pipeline: witness failed verification: " + check.reason);
    return res;
}

int max_weakly_complete_order(const Graph & g, int r)
{
    const int n = g.vertex_count();
    if (n > 12)
        throw ResourceGuard("max_weakly_complete_order: n must be at most 12");
    if (r < 1)
        throw std::invalid_argument("max_weakly_complete_order: r must be positive");
    if (r > n)
        return 0;
    std::vector<unsigned> nb(sz(n), 0);
    for (auto e : g.edges()) {
        nb[sz(e.u)] |= 1u << e.v;
        nb[sz(e.v)] |= 1u << e.u;
    }
    std::vector<unsigned> sets;
    for (unsigned m = 0; m < (1u << n); ++m)
        if (std::popcount(m) == r)
            sets.push_back(m);
    const std::size_t count = sets.size();
    auto reach = [&](unsigned m) {
        unsigned out = 0;
        for (unsigned x = m; x; x &= x - 1)
            out |= nb[sz(std::countr_zero(x))];
        return out;
    };
    std::vector<unsigned> reach_of(count);
    for (std::size_t i = 0; i < count; ++i)
        reach_of[i] = reach(sets[i]);
    // compatibility rows: disjoint and joined by an edge
    std::vector<Bitset> compat(count, Bitset(count));
    for (std::size_t i = 0; i < count; ++i)
        for (std::size_t j = i + 1; j < count; ++j)
            if (!(sets[i] & sets[j]) && (reach_of[i] & sets[j])) {
                compat[i].set(j);
                compat[j].set(i);
            }
    int best = 0;
    auto rec = [&](auto && self, const Bitset & cand, int depth, unsigned used) -> void {
        best = std::max(best, depth);
        int room = (n - std::popcount(used)) / r;
        if (depth + room <= best || depth + static_cast<int>(cand.count()) <= best)
            return;
        for (std::size_t i = cand.find_first(); i < count; i = cand.find_next(i + 1)) {
            Bitset next = cand;
            next &= compat[i];
            // only later sets, so each sequence is met once
            for (std::size_t j = next.find_first(); j <= i && j < count; j = next.find_next(j + 1))
                next.reset(j);
            self(self, next, depth + 1, used | sets[i]);
        }
    };
    Bitset all(count);
    all.set_all();
    rec(rec, all, 0, 0);
    return best;
}

// ------------------------------------------------------------ paths

nlohmann::json PathsDrcResult::to_json() const
{
    return {{"size", x.size()},
            {"size_floor", size_floor},
            {"budget", budget},
            {"p", p},
            {"n", n},
            {"attempts", attempts},
            {"min_paths", min_paths}};
}

std::vector<Path4> disjoint_paths(const BipartiteGraph & h, const Bitset & avoid, int x, int y, int want)
{
    std::vector<Path4> out;
    Bitset avail(sz(h.right_size()));
    avail.set_all();
    Bitset ax(sz(h.right_size())), by(sz(h.right_size()));
    for (int u = 0; u < h.left_size() && static_cast<int>(out.size()) < want; ++u) {
        if (u == x || u == y || avoid.test(sz(u)))
            continue;
        ax = h.left_row(u);
        ax &= avail;
        by = ax;
        ax &= h.left_row(x);
        by &= h.left_row(y);
        std::size_t a = ax.find_first();
        std::size_t b0 = by.find_first();
        if (a >= ax.size() || b0 >= by.size())
            continue;
        std::size_t b = b0 != a ? b0 : by.find_next(b0 + 1);
        if (b >= by.size()) {
            // a and b0 coincide; try another a
            a = ax.find_next(a + 1);
            b = b0;
            if (a >= ax.size())
                continue;
        }
        out.push_back({static_cast<int>(a), u, static_cast<int>(b)});
        avail.reset(a);
        avail.reset(b);
    }
    return out;
}

bool verify_paths(const BipartiteGraph & h, const Bitset & avoid, int x, int y, std::span<const Path4> paths)
{
    std::vector<char> used_r(sz(h.right_size()), 0), used_l(sz(h.left_size()), 0);
    for (const auto & q : paths) {
        if (q.a < 0 || q.b < 0 || q.a >= h.right_size() || q.b >= h.right_size() || q.u < 0 || q.u >= h.left_size())
            return false;
        if (q.a == q.b || q.u == x || q.u == y || avoid.test(sz(q.u)))
            return false;
        if (!h.has_edge(x, q.a) || !h.has_edge(q.u, q.a) || !h.has_edge(q.u, q.b) || !h.has_edge(y, q.b))
            return false;
        if (used_r[sz(q.a)] || used_r[sz(q.b)] || used_l[sz(q.u)])
            return false;
        used_r[sz(q.a)] = used_r[sz(q.b)] = used_l[sz(q.u)] = 1;
    }
    return true;
}

PathsDrcResult paths_drc(const BipartiteGraph & h, const DrcConstants & c, RngStream & rng, int retry_cap)
{
    const int half = h.left_size();
    if (half < 1 || h.right_size() != half)
        throw std::invalid_argument("paths_drc: parts must have equal positive size");
    PathsDrcResult out;
    out.n = 2 * half;
    out.p = h.density();
    if (out.p * out.p * out.n < c.guard)
        throw std::invalid_argument("paths_drc: p^2 n = " + std::to_string(out.p * out.p * out.n) +
                                    " is below the guard " + std::to_string(c.guard));
    out.size_floor = c.size_factor * out.p * out.n;
    out.budget = std::max(1, static_cast<int>(std::ceil(c.path_factor * std::pow(out.p, 5) * out.n - 1e-9)));

    std::size_t best = 0;
    for (int attempt = 1; attempt <= retry_cap; ++attempt) {
        // dependent random choice: neighbourhood of a random vertex of V,
        // capped at half of U so that middle vertices remain
        auto nbhd = h.right_row(static_cast<int>(rng.uniform(sz(half)))).to_vector();
        std::vector<int> xs;
        if (nbhd.size() > sz(half / 2)) {
            for (int i : rng.sample(static_cast<int>(nbhd.size()), half / 2))
                xs.push_back(static_cast<int>(nbhd[sz(i)]));
        }
        else
            for (auto v : nbhd)
                xs.push_back(static_cast<int>(v));
        std::sort(xs.begin(), xs.end());

        // drop vertices of bad pairs until every pair is certified
        int min_paths = out.budget;
        while (true) {
            Bitset in_x = mask_of(sz(half), xs);
            std::vector<std::vector<int>> bad(xs.size());
            std::size_t bad_pairs = 0;
            min_paths = out.budget;
            for (std::size_t i = 0; i < xs.size(); ++i)
                for (std::size_t j = i + 1; j < xs.size(); ++j) {
                    auto got = static_cast<int>(disjoint_paths(h, in_x, xs[i], xs[j], out.budget).size());
                    min_paths = std::min(min_paths, got);
                    if (got < out.budget) {
                        bad[i].push_back(static_cast<int>(j));
                        bad[j].push_back(static_cast<int>(i));
                        ++bad_pairs;
                    }
                }
            if (bad_pairs == 0)
                break;
            std::vector<int> deg(xs.size());
            for (std::size_t i = 0; i < xs.size(); ++i)
                deg[i] = static_cast<int>(bad[i].size());
            std::vector<char> gone(xs.size(), 0);
            while (bad_pairs > 0) {
                auto worst = static_cast<std::size_t>(std::max_element(deg.begin(), deg.end()) - deg.begin());
                gone[worst] = 1;
                for (int j : bad[worst])
                    if (!gone[sz(j)]) {
                        --deg[sz(j)];
                        --bad_pairs;
                    }
                deg[worst] = -1;
            }
            std::vector<int> kept;
            for (std::size_t i = 0; i < xs.size(); ++i)
                if (!gone[i])
                    kept.push_back(xs[i]);
            xs = std::move(kept);
        }
        best = std::max(best, xs.size());
        if (static_cast<double>(xs.size()) + 1e-9 >= out.size_floor) {
            out.x = std::move(xs);
            out.attempts = attempt;
            out.min_paths = min_paths;
            return out;
        }
    }
    throw SearchFailure("paths_drc", "retry cap exhausted",
                        {{"retry_cap", retry_cap}, {"best_size", best}, {"size_floor", out.size_floor},
                         {"budget", out.budget}, {"p", out.p}, {"n", out.n}});
}

// ------------------------------------------------------------ minors

MinorConstants MinorConstants::from_json(const nlohmann::json & j)
{
    MinorConstants c;
    auto drc = [](const nlohmann::json & d, DrcConstants & out) {
        out.size_factor = d.value("size_factor", out.size_factor);
        out.path_factor = d.value("path_factor", out.path_factor);
        out.guard = d.value("guard", out.guard);
    };
    c.cleanup = j.value("cleanup", c.cleanup);
    c.bip_min_degree = j.value("bip_min_degree", c.bip_min_degree);
    c.x_prime = j.value("x_prime", c.x_prime);
    c.z_threshold = j.value("z_threshold", c.z_threshold);
    if (j.contains("first"))
        drc(j.at("first"), c.first);
    if (j.contains("second"))
        drc(j.at("second"), c.second);
    c.enforce_regime = j.value("enforce_regime", c.enforce_regime);
    c.diameter_rule = j.value("diameter_rule", c.diameter_rule);
    return c;
}

nlohmann::json MinorConstants::to_json() const
{
    auto drc = [](const DrcConstants & d) {
        return nlohmann::json{{"size_factor", d.size_factor}, {"path_factor", d.path_factor}, {"guard", d.guard}};
    };
    return {{"cleanup", cleanup},
            {"bip_min_degree", bip_min_degree},
            {"x_prime", x_prime},
            {"z_threshold", z_threshold},
            {"first", drc(first)},
            {"second", drc(second)},
            {"enforce_regime", enforce_regime},
            {"diameter_rule", diameter_rule}};
}

MinorCheck verify_minor(const Graph & g, const MinorModel & m)
{
    auto fail = [](std::string why, int i = -1, int j = -1) { return MinorCheck{false, std::move(why), i, j}; };
    if (!g.has_rows())
        throw ResourceGuard("verify_minor: graph too large for adjacency rows");
    const int n = g.vertex_count();
    std::vector<int> owner(sz(n), -1);
    std::vector<Bitset> masks;
    for (std::size_t i = 0; i < m.branch_sets.size(); ++i) {
        const auto & set = m.branch_sets[i];
        auto ii = static_cast<int>(i);
        if (set.empty())
            return fail("empty branch set", ii);
        if (m.size_cap > 0 && static_cast<int>(set.size()) > m.size_cap)
            return fail("branch set above the size cap", ii);
        for (int v : set) {
            if (v < 0 || v >= n)
                return fail("vertex out of range", ii);
            if (owner[sz(v)] >= 0)
                return fail("branch sets touch at vertex " + std::to_string(v), owner[sz(v)], ii);
            owner[sz(v)] = ii;
        }
        masks.push_back(mask_of(sz(n), set));
    }
    // connectivity and diameter by BFS inside each set
    std::vector<int> dist(sz(n), -1);
    for (std::size_t i = 0; i < m.branch_sets.size(); ++i) {
        const auto & set = m.branch_sets[i];
        int diameter = 0;
        std::size_t sources = m.diameter_cap > 0 ? set.size() : 1;
        for (std::size_t si = 0; si < sources; ++si) {
            for (int v : set)
                dist[sz(v)] = -1;
            std::queue<int> q;
            dist[sz(set[si])] = 0;
            q.push(set[si]);
            std::size_t reached = 1;
            while (!q.empty()) {
                int v = q.front();
                q.pop();
                for (int w : g.neighbors(v))
                    if (owner[sz(w)] == static_cast<int>(i) && dist[sz(w)] < 0) {
                        dist[sz(w)] = dist[sz(v)] + 1;
                        diameter = std::max(diameter, dist[sz(w)]);
                        ++reached;
                        q.push(w);
                    }
            }
            if (reached != set.size())
                return fail("branch set is not connected", static_cast<int>(i));
        }
        if (m.diameter_cap > 0 && diameter > m.diameter_cap)
            return fail("branch set diameter " + std::to_string(diameter) + " above the cap", static_cast<int>(i));
    }
    for (std::size_t j = 0; j < masks.size(); ++j)
        for (std::size_t i = 0; i < j; ++i) {
            const auto & si = m.branch_sets[i];
            bool joined = std::any_of(si.begin(), si.end(), [&](int v) { return g.row(v).intersects(masks[j]); });
            if (!joined)
                return fail("no edge between branch sets", static_cast<int>(i), static_cast<int>(j));
        }
    return {};
}

bool minor_regime(int n, double p, int r)
{
    double ln = std::log(static_cast<double>(n));
    return p >= std::pow(n, -1.0 / 8) && 24.0 / std::sqrt(p) <= r && r <= 0.5 * std::sqrt(ln / p);
}

namespace {

/// A bipartite graph whose left and right indices name vertices of G.
struct Embedded {
    BipartiteGraph graph;
    std::vector<int> left, right;
};

/// Lexicographically first x - a - u - b - y path of the bipartite graph
/// whose internal vertices are unused in G. Returns the G vertices a, u, b.
std::optional<std::array<int, 3>> first_path(const Embedded & e, int x, int y, const Bitset & used)
{
    const auto & h = e.graph;
    Bitset free_l(sz(h.left_size())), free_r(sz(h.right_size()));
    for (int i = 0; i < h.left_size(); ++i)
        if (!used.test(sz(e.left[sz(i)])))
            free_l.set(sz(i));
    for (int i = 0; i < h.right_size(); ++i)
        if (!used.test(sz(e.right[sz(i)])))
            free_r.set(sz(i));
    free_l.reset(sz(x));
    free_l.reset(sz(y));
    Bitset mids(sz(h.left_size())), ends(sz(h.right_size()));
    const auto & ya = h.left_row(y);
    for (std::size_t a = h.left_row(x).find_first(); a < free_r.size(); a = h.left_row(x).find_next(a + 1)) {
        if (!free_r.test(a))
            continue;
        mids = h.right_row(static_cast<int>(a));
        mids &= free_l;
        for (std::size_t u = mids.find_first(); u < mids.size(); u = mids.find_next(u + 1)) {
            ends = h.left_row(static_cast<int>(u));
            ends &= ya;
            ends &= free_r;
            ends.reset(a);
            std::size_t b = ends.find_first();
            if (b < ends.size())
                return std::array<int, 3>{e.right[a], e.left[u], e.right[b]};
        }
    }
    return std::nullopt;
}

} // namespace

MinorResult minor_pipeline(const Graph & g, int r, int t, const MinorConstants & c, RngStream & rng)
{
    const int n = g.vertex_count();
    const double p = g.density();
    if (r < 1 || t < 1)
        throw std::invalid_argument("minor_pipeline: r and t must be positive");
    if (!(p > 0.0))
        throw SearchFailure("input", "graph has no edges", {{"n", n}});
    MinorResult res;
    if (!minor_regime(n, p, r)) {
        if (c.enforce_regime)
            throw std::invalid_argument("minor_pipeline: (n, p, r) outside the theorem's regime");
        res.warnings.push_back("(n, p, r) outside the theorem's regime; running under overridden constants");
    }

    // degree cleanup, one vertex at a time
    std::vector<int> deg(sz(n));
    for (int v = 0; v < n; ++v)
        deg[sz(v)] = g.degree(v);
    std::vector<char> alive(sz(n), 1);
    const double floor_deg = c.cleanup * p * n;
    std::queue<int> q;
    for (int v = 0; v < n; ++v)
        if (deg[sz(v)] < floor_deg) {
            alive[sz(v)] = 0;
            q.push(v);
        }
    while (!q.empty()) {
        int v = q.front();
        q.pop();
        for (int w : g.neighbors(v))
            if (alive[sz(w)] && --deg[sz(w)] < floor_deg) {
                alive[sz(w)] = 0;
                q.push(w);
            }
    }
    std::vector<int> core;
    for (int v = 0; v < n; ++v)
        if (alive[sz(v)])
            core.push_back(v);
    const int v_count = static_cast<int>(core.size());
    res.stages.push_back({"cleanup", true, {{"v", v_count}, {"degree_floor", floor_deg}}});
    if (v_count < 4)
        throw SearchFailure("cleanup", "too few vertices survive", {{"v", v_count}});

    // balanced bipartite H with large minimum degree
    const int half = v_count / 2;
    Embedded big_h;
    const double min_deg = c.bip_min_degree * p * n;
    const double min_edges = c.bip_min_degree * p * n * static_cast<double>(n);
    int attempt = 0;
    for (;;) {
        ++attempt;
        auto order = core;
        rng.shuffle(order);
        big_h.left.assign(order.begin(), order.begin() + half);
        big_h.right.assign(order.begin() + half, order.begin() + 2 * half);
        std::sort(big_h.left.begin(), big_h.left.end());
        std::sort(big_h.right.begin(), big_h.right.end());
        std::vector<int> right_index(sz(n), -1);
        for (int i = 0; i < half; ++i)
            right_index[sz(big_h.right[sz(i)])] = i;
        std::vector<BipartiteGraph::Pair> pairs;
        for (int i = 0; i < half; ++i)
            for (int w : g.neighbors(big_h.left[sz(i)]))
                if (right_index[sz(w)] >= 0)
                    pairs.push_back({i, right_index[sz(w)]});
        big_h.graph = BipartiteGraph(half, half, std::move(pairs));
        int low = n;
        for (int i = 0; i < half; ++i)
            low = std::min({low, big_h.graph.left_degree(i), big_h.graph.right_degree(i)});
        if (low >= min_deg && static_cast<double>(big_h.graph.edge_count()) >= min_edges) {
            res.stages.push_back({"bipartition", true,
                                  {{"half", half}, {"edges", big_h.graph.edge_count()}, {"min_degree", low},
                                   {"attempts", attempt}}});
            break;
        }
        if (attempt >= 1000)
            throw SearchFailure("bipartition", "no balanced split met the degree floor",
                                {{"min_degree", low}, {"floor", min_deg}});
    }
    const auto & h = big_h.graph;

    PathsDrcResult drc1;
    try {
        drc1 = paths_drc(h, c.first, rng);
    }
    catch (const std::invalid_argument & e) {
        throw SearchFailure("paths_drc1", e.what(), {{"p", h.density()}, {"n", 2 * half}});
    }
    res.stages.push_back({"paths_drc1", true, drc1.to_json()});

    // X' and Z'
    std::size_t xp_size = std::max<std::size_t>(2, static_cast<std::size_t>(std::ceil(c.x_prime * p * n - 1e-9)));
    if (xp_size > drc1.x.size()) {
        res.warnings.push_back("X smaller than the X' target; using all of X");
        xp_size = drc1.x.size();
    }
    std::vector<int> xp(drc1.x.begin(), drc1.x.begin() + static_cast<std::ptrdiff_t>(xp_size));
    Bitset xp_mask = mask_of(sz(half), xp);
    std::vector<int> z_deg(sz(half));
    for (int j = 0; j < half; ++j)
        z_deg[sz(j)] = static_cast<int>(Bitset::and_count(h.right_row(j), xp_mask));
    const double z_floor = c.z_threshold * p * n / v_count * static_cast<double>(xp.size());
    std::vector<int> z_key(sz(half), -1);
    std::size_t z_count = 0;
    for (int j = 0; j < half; ++j)
        if (z_deg[sz(j)] >= z_floor) {
            z_key[sz(j)] = z_deg[sz(j)];
            ++z_count;
        }
    if (z_count < xp.size())
        throw SearchFailure("z_select", "|Z| < |X'|", {{"Z", z_count}, {"X_prime", xp.size()}, {"floor", z_floor}});
    auto zp = top_by_key(z_key, xp.size());
    BipartiteGraph hp = h.induced(xp, zp);
    res.stages.push_back({"z_select", hp.density() + tol >= p / 64.0,
                          {{"X_prime", xp.size()}, {"Z", z_count}, {"z_floor", z_floor}, {"density", hp.density()}}});

    Embedded hpt;
    hpt.graph = hp.transposed(); // left = Z', right = X'
    for (int j : zp)
        hpt.left.push_back(big_h.right[sz(j)]);
    for (int i : xp)
        hpt.right.push_back(big_h.left[sz(i)]);
    PathsDrcResult drc2;
    try {
        drc2 = paths_drc(hpt.graph, c.second, rng);
    }
    catch (const std::invalid_argument & e) {
        throw SearchFailure("paths_drc2", e.what(), {{"p", hp.density()}, {"n", 2 * static_cast<int>(xp.size())}});
    }
    res.stages.push_back({"paths_drc2", true, drc2.to_json()});
    const auto & y_pos = drc2.x; // positions in Z'

    // W: the |Y| vertices of X' with most neighbours in Y
    Bitset y_mask = mask_of(hpt.graph.left_size(), y_pos);
    std::vector<int> w_deg(xp.size());
    for (std::size_t i = 0; i < xp.size(); ++i)
        w_deg[i] = static_cast<int>(Bitset::and_count(hpt.graph.right_row(static_cast<int>(i)), y_mask));
    auto w_pos = top_by_key(w_deg, y_pos.size()); // positions in X'
    BipartiteGraph wy = hpt.graph.induced(y_pos, w_pos).transposed(); // left = W, right = Y
    res.stages.push_back({"w_select", true, {{"size", w_pos.size()}, {"density", wy.density()}}});
    if (!(wy.density() > 0.0))
        throw SearchFailure("w_select", "no edges between W and Y", {{"size", w_pos.size()}});

    PipelineResult seq;
    try {
        seq = bipartite_sequence(wy, wy.density(), r, t, rng);
    }
    catch (const std::invalid_argument & e) {
        throw SearchFailure("sequence", e.what(), {{"size", w_pos.size()}});
    }
    for (auto & s : seq.stages) {
        s.name = "sequence/" + s.name;
        res.stages.push_back(std::move(s));
    }

    // sets in G, and where they live in H (S side) and in H'^T (T side)
    auto w_global = [&](int i) { return hpt.right[sz(w_pos[sz(i)])]; };
    auto y_global = [&](int j) { return hpt.left[sz(y_pos[sz(j)])]; };
    std::vector<int> h_left_index(sz(n), -1), hpt_left_index(sz(n), -1);
    for (int i = 0; i < half; ++i)
        h_left_index[sz(big_h.left[sz(i)])] = i;
    for (std::size_t i = 0; i < hpt.left.size(); ++i)
        hpt_left_index[sz(hpt.left[i])] = static_cast<int>(i);

    Bitset used(sz(n));
    std::vector<std::vector<int>> s_sets, t_sets;
    for (const auto & s : seq.sequence.s) {
        std::vector<int> set;
        for (int i : s)
            set.push_back(w_global(i));
        std::sort(set.begin(), set.end());
        s_sets.push_back(std::move(set));
    }
    for (const auto & s : seq.sequence.t) {
        std::vector<int> set;
        for (int j : s)
            set.push_back(y_global(j));
        std::sort(set.begin(), set.end());
        t_sets.push_back(std::move(set));
    }
    for (const auto * fam : {&s_sets, &t_sets})
        for (const auto & s : *fam)
            for (int v : s)
                used.set(sz(v));

    std::size_t paths_used = 0;
    auto connect = [&](std::vector<int> & set, int anchor, const Embedded & e, const std::vector<int> & local) {
        std::vector<int> grown = set;
        for (int b : set) {
            if (b == anchor)
                continue;
            auto path = first_path(e, local[sz(anchor)], local[sz(b)], used);
            if (!path)
                throw SearchFailure("connect", "no unused 4-edge path inside a part",
                                    {{"anchor", anchor}, {"vertex", b}, {"paths_used", paths_used}});
            for (int v : *path) {
                used.set(sz(v));
                grown.push_back(v);
            }
            ++paths_used;
        }
        std::sort(grown.begin(), grown.end());
        set = std::move(grown);
    };

    MinorModel & model = res.model;
    model.size_cap = 8 * r;
    model.diameter_cap = c.diameter_rule ? 9 : 0;
    for (std::size_t i = 0; i < s_sets.size(); ++i) {
        int a = s_sets[i].front(), b = t_sets[i].front();
        if (c.diameter_rule) {
            // anchors are the ends of an S_i - T_i edge
            bool found = false;
            for (int x : s_sets[i]) {
                for (int y : t_sets[i])
                    if (g.has_edge(x, y)) {
                        a = x;
                        b = y;
                        found = true;
                        break;
                    }
                if (found)
                    break;
            }
            if (!found)
                throw std::logic_error("minor_pipeline: S_i and T_i are not joined");
        }
        connect(s_sets[i], a, big_h, h_left_index);
        connect(t_sets[i], b, hpt, hpt_left_index);
        auto branch = s_sets[i];
        branch.insert(branch.end(), t_sets[i].begin(), t_sets[i].end());
        std::sort(branch.begin(), branch.end());
        model.branch_sets.push_back(std::move(branch));
    }
    res.stages.push_back({"connect", true, {{"paths", paths_used}}});
    auto check = verify_minor(g, model);
    if (!check.pass)
        throw std::logic_error("minor_pipeline: model failed verification: " + check.reason);
    return res;
}

nlohmann::json to_json(const WeakSequence & w)
{
    return {{"kind", w.kind == WeakSequence::Kind::complete ? "complete" : "bicomplete"},
            {"r", w.r},
            {"s", w.s},
            {"t", w.t}};
}

nlohmann::json to_json(const MinorModel & m)
{
    return {{"branch_sets", m.branch_sets}, {"size_cap", m.size_cap}, {"diameter_cap", m.diameter_cap}};
}

} // namespace exlab::weakseq
