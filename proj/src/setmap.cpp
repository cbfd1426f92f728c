#include <exlab/combinatorics.hpp>
#include <exlab/errors.hpp>
#include <exlab/setmap.hpp>

#include <algorithm>
#include <bit>
#include <numeric>
#include <stdexcept>

namespace exlab::setmap {

std::string to_string(Family f)
{
    switch (f) {
    case Family::eh_full: return "eh_full";
    case Family::eh_lex: return "eh_lex";
    case Family::caro2: return "caro2";
    case Family::caro3: return "caro3";
    }
    return "?";
}

namespace {

long long ipow(long long b, int e)
{
    long long r = 1;
    for (int i = 0; i < e; ++i) {
        r *= b;
        if (r > 1'000'000'000LL)
            return r;
    }
    return r;
}

long long factorial(int k)
{
    long long r = 1;
    for (int i = 2; i <= k; ++i)
        r *= i;
    return r;
}

} // namespace

SetMapping::SetMapping(Family f, int n, int dim, int l) : family_(f), n_(n), dim_(dim), l_(l)
{
    size_ = static_cast<int>(ipow(n, dim));
    pow_.assign(static_cast<std::size_t>(dim), 1);
    for (int i = dim - 2; i >= 0; --i)
        pow_[static_cast<std::size_t>(i)] = pow_[static_cast<std::size_t>(i) + 1] * n;
}

SetMapping SetMapping::erdos_hajnal(int n, int k, bool lexicographic)
{
    if (n < 2 || k < 2)
        throw std::invalid_argument("eh_map: need n >= 2 and k >= 2");
    long long m = ipow(n, k);
    if (m > 1'000'000)
        throw ResourceGuard("eh_map: n^k = " + std::to_string(m) + " exceeds 10^6");
    long long l = lexicographic ? factorial(k - 1) : factorial(k);
    if (m < k + l)
        throw ResourceGuard("eh_map: ground set of " + std::to_string(m) + " points cannot hold X and " +
                            std::to_string(l) + " image points");
    SetMapping f(lexicographic ? Family::eh_lex : Family::eh_full, n, k, static_cast<int>(l));
    std::vector<int> perm(static_cast<std::size_t>(k));
    std::iota(perm.begin(), perm.end(), 0);
    do {
        if (!lexicographic || perm[0] == 0)
            f.perms_.push_back(perm);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return f;
}

SetMapping SetMapping::caro(int m, int dim)
{
    if (m < 2)
        throw std::invalid_argument("caro_map: need m >= 2");
    if (dim != 2 && dim != 3)
        throw std::invalid_argument("caro_map: dim must be 2 or 3");
    if (ipow(m, dim) > 1'000'000)
        throw ResourceGuard("caro_map: m^dim exceeds 10^6");
    return SetMapping(dim == 2 ? Family::caro2 : Family::caro3, m, dim, 2);
}

int SetMapping::index(std::span<const int> c) const
{
    if (static_cast<int>(c.size()) != dim_)
        throw std::invalid_argument("point has wrong dimension");
    int idx = 0;
    for (int i = 0; i < dim_; ++i) {
        if (c[static_cast<std::size_t>(i)] < 0 || c[static_cast<std::size_t>(i)] >= n_)
            throw std::out_of_range("coordinate out of range");
        idx += c[static_cast<std::size_t>(i)] * pow_[static_cast<std::size_t>(i)];
    }
    return idx;
}

std::vector<int> SetMapping::coords(int index) const
{
    std::vector<int> c(static_cast<std::size_t>(dim_));
    for (int i = 0; i < dim_; ++i)
        c[static_cast<std::size_t>(i)] = coord(index, i);
    return c;
}

int SetMapping::coord(int index, int axis) const { return index / pow_[static_cast<std::size_t>(axis)] % n_; }

std::vector<int> SetMapping::image(std::span<const int> x) const
{
    if (static_cast<int>(x.size()) != k())
        throw std::invalid_argument("image: domain set must have exactly k points");
    std::vector<int> sorted(x.begin(), x.end());
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw std::invalid_argument("image: repeated point");
    if (sorted.front() < 0 || sorted.back() >= size_)
        throw std::out_of_range("image: point outside the ground set");
    return is_caro() ? caro_image(std::move(sorted)) : eh_image(std::move(sorted));
}

std::vector<int> SetMapping::eh_image(std::vector<int> x) const
{
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(l_));
    auto taken = [&](int p) {
        return std::binary_search(x.begin(), x.end(), p) || std::find(out.begin(), out.end(), p) != out.end();
    };
    for (const auto & perm : perms_) {
        int t = 0;
        for (int j = 0; j < dim_; ++j)
            t += coord(x[static_cast<std::size_t>(perm[static_cast<std::size_t>(j)])], j) * pow_[static_cast<std::size_t>(j)];
        if (taken(t)) {
            t = 0;
            while (taken(t))
                ++t;
        }
        out.push_back(t);
    }
    return out;
}

std::vector<int> SetMapping::caro_image(std::vector<int> x) const
{
    const int a = x[0];
    const int b = x[1];
    if (family_ == Family::caro2) {
        int xa = coord(a, 0), ya = coord(a, 1);
        int xb = coord(b, 0), yb = coord(b, 1);
        if (xa < xb && ya != yb)
            return {a, xa * n_ + yb};
        for (int u = 0; u < size_; ++u)
            for (int v = u + 1; v < size_; ++v)
                if ((u == a) + (u == b) + (v == a) + (v == b) <= 1)
                    return {u, v};
    }
    else {
        int xa = coord(a, 0), ya = coord(a, 1), za = coord(a, 2);
        int xb = coord(b, 0), yb = coord(b, 1), zb = coord(b, 2);
        if (xa < xb && ya != yb && za != zb)
            return {index(std::vector<int>{xb, ya, za}), index(std::vector<int>{xb, ya, zb})};
        for (int u = 0; u < size_; ++u) {
            if (u == a || u == b)
                continue;
            for (int v = u + 1; v < size_; ++v)
                if (v != a && v != b)
                    return {u, v};
        }
    }
    throw std::logic_error("caro_map: no fallback image");
}

bool verify_violation(const SetMapping & f, std::span<const int> s, const Violation & v, Mode mode)
{
    std::vector<int> set(s.begin(), s.end());
    std::sort(set.begin(), set.end());
    auto in = [&](int p) { return std::binary_search(set.begin(), set.end(), p); };
    if (static_cast<int>(v.x.size()) != f.k())
        return false;
    std::vector<int> xs = v.x;
    std::sort(xs.begin(), xs.end());
    if (std::adjacent_find(xs.begin(), xs.end()) != xs.end())
        return false;
    if (!std::all_of(xs.begin(), xs.end(), in))
        return false;
    auto img = f.image(xs);
    if (mode == Mode::disjoint) {
        if (v.witness >= 0)
            return in(v.witness) && std::find(img.begin(), img.end(), v.witness) != img.end();
        return std::any_of(img.begin(), img.end(), in);
    }
    return std::all_of(img.begin(), img.end(), in);
}

namespace {

std::vector<int> normalise(const SetMapping & f, std::span<const int> s)
{
    std::vector<int> out(s.begin(), s.end());
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    if (!out.empty() && (out.front() < 0 || out.back() >= f.ground_size()))
        throw std::out_of_range("point outside the ground set");
    return out;
}

} // namespace

std::optional<Violation> eh_violator(const SetMapping & f, std::span<const int> p_in)
{
    if (f.is_caro())
        throw std::invalid_argument("eh_violator: mapping is not an Erdos-Hajnal mapping");
    auto pts = normalise(f, p_in);
    const int n = f.side();
    const int k = f.dim();
    std::vector<int> count(static_cast<std::size_t>(k * n), 0);
    for (int p : pts)
        for (int a = 0; a < k; ++a)
            ++count[static_cast<std::size_t>(a * n + f.coord(p, a))];
    std::vector<char> alive(pts.size(), 1);

    // delete sparse hyperplanes in (axis, value) order until none is left
    while (true) {
        int hit = -1;
        for (int h = 0; h < k * n; ++h)
            if (count[static_cast<std::size_t>(h)] >= 1 && count[static_cast<std::size_t>(h)] <= k) {
                hit = h;
                break;
            }
        if (hit < 0)
            break;
        int axis = hit / n, value = hit % n;
        for (std::size_t i = 0; i < pts.size(); ++i)
            if (alive[i] && f.coord(pts[i], axis) == value) {
                alive[i] = 0;
                for (int a = 0; a < k; ++a)
                    --count[static_cast<std::size_t>(a * n + f.coord(pts[i], a))];
            }
    }
    std::vector<int> survivors;
    for (std::size_t i = 0; i < pts.size(); ++i)
        if (alive[i])
            survivors.push_back(pts[i]);
    if (survivors.empty())
        return std::nullopt;

    const int p = survivors.front();
    std::vector<int> picks;
    for (int i = 0; i < k; ++i) {
        int want = f.coord(p, i);
        auto it = std::find_if(survivors.begin(), survivors.end(), [&](int s) {
            return s != p && f.coord(s, i) == want && std::find(picks.begin(), picks.end(), s) == picks.end();
        });
        if (it == survivors.end())
            throw std::logic_error("eh_violator: surviving hyperplane has too few points");
        picks.push_back(*it);
    }
    Violation v;
    v.x = picks;
    std::sort(v.x.begin(), v.x.end());
    v.image = f.image(v.x);
    v.witness = p;
    if (!verify_violation(f, pts, v, Mode::disjoint))
        throw std::logic_error("eh_violator: witness failed re-verification");
    return v;
}

std::optional<Violation> caro_violator(const SetMapping & f, std::span<const int> q_in)
{
    if (!f.is_caro())
        throw std::invalid_argument("caro_violator: mapping is not a Caro mapping");
    auto pts = normalise(f, q_in);
    const int m = f.side();
    Violation v;
    if (f.dim() == 2) {
        // highest point on every vertical line (max y) and horizontal line (max x)
        std::vector<int> max_y(static_cast<std::size_t>(m), -1), max_x(static_cast<std::size_t>(m), -1);
        for (int p : pts) {
            int x = f.coord(p, 0), y = f.coord(p, 1);
            max_y[static_cast<std::size_t>(x)] = std::max(max_y[static_cast<std::size_t>(x)], y);
            max_x[static_cast<std::size_t>(y)] = std::max(max_x[static_cast<std::size_t>(y)], x);
        }
        auto it = std::find_if(pts.begin(), pts.end(), [&](int p) {
            int x = f.coord(p, 0), y = f.coord(p, 1);
            return max_y[static_cast<std::size_t>(x)] != y && max_x[static_cast<std::size_t>(y)] != x;
        });
        if (it == pts.end())
            return std::nullopt;
        int x = f.coord(*it, 0), y2 = f.coord(*it, 1);
        int a = f.index(std::vector<int>{x, max_y[static_cast<std::size_t>(x)]});
        int b = f.index(std::vector<int>{max_x[static_cast<std::size_t>(y2)], y2});
        v.x = {std::min(a, b), std::max(a, b)};
    }
    else {
        auto at = [m](int i, int j) { return static_cast<std::size_t>(i * m + j); };
        // lowest x on every line (.,y,z); highest y on every line (x,.,z)
        std::vector<int> min_x(static_cast<std::size_t>(m * m), m), max_y(static_cast<std::size_t>(m * m), -1);
        for (int p : pts) {
            int x = f.coord(p, 0), y = f.coord(p, 1), z = f.coord(p, 2);
            min_x[at(y, z)] = std::min(min_x[at(y, z)], x);
            max_y[at(x, z)] = std::max(max_y[at(x, z)], y);
        }
        // survivors come out grouped by (x, y) with z increasing
        int prev_xy = -1, prev_z = -1;
        int found_xy = -1, z1 = -1, z2 = -1;
        for (int p : pts) {
            int x = f.coord(p, 0), y = f.coord(p, 1), z = f.coord(p, 2);
            if (min_x[at(y, z)] == x || max_y[at(x, z)] == y)
                continue;
            int xy = x * m + y;
            if (xy == prev_xy) {
                found_xy = xy;
                z1 = prev_z;
                z2 = z;
                break;
            }
            prev_xy = xy;
            prev_z = z;
        }
        if (found_xy < 0)
            return std::nullopt;
        int x2 = found_xy / m, y = found_xy % m;
        int y2 = max_y[at(x2, z2)];
        int x = min_x[at(y, z1)];
        int a = f.index(std::vector<int>{x, y, z1});
        int b = f.index(std::vector<int>{x2, y2, z2});
        v.x = {std::min(a, b), std::max(a, b)};
    }
    v.image = f.image(v.x);
    if (!verify_violation(f, pts, v, Mode::not_subset))
        throw std::logic_error("caro_violator: witness failed re-verification");
    return v;
}

bool is_free(const SetMapping & f, std::span<const int> s, Mode mode)
{
    std::vector<int> set(s.begin(), s.end());
    std::sort(set.begin(), set.end());
    auto in = [&](int p) { return std::binary_search(set.begin(), set.end(), p); };
    return for_each_subset_of(set, f.k(), [&](std::span<const int> x) {
        auto img = f.image(x);
        bool bad = mode == Mode::disjoint ? std::any_of(img.begin(), img.end(), in) : std::all_of(img.begin(), img.end(), in);
        return !bad;
    });
}

namespace {

struct OracleSearch {
    int m = 0;
    std::vector<std::vector<std::uint64_t>> closing; // forbidden masks by their largest point
    std::uint64_t budget = 0;
    std::uint64_t nodes = 0;
    bool aborted = false;
    int best = 0;
    std::uint64_t best_mask = 0;
    int upper_open = 0;

    void run(int v, std::uint64_t cur, int size)
    {
        if (size + (m - v) <= best)
            return;
        if (aborted || ++nodes > budget) {
            aborted = true;
            upper_open = std::max(upper_open, size + (m - v));
            return;
        }
        if (v == m) {
            best = size;
            best_mask = cur;
            return;
        }
        std::uint64_t bit = std::uint64_t{1} << v;
        bool ok = true;
        for (auto fm : closing[static_cast<std::size_t>(v)])
            if ((fm & ~(cur | bit)) == 0) {
                ok = false;
                break;
            }
        if (ok)
            run(v + 1, cur | bit, size + 1);
        run(v + 1, cur, size);
    }
};

} // namespace

OracleResult free_set_oracle(const SetMapping & f, Mode mode, std::uint64_t node_budget)
{
    const int m = f.ground_size();
    if (m > 64)
        throw ResourceGuard("free_set_oracle: ground set of " + std::to_string(m) + " points exceeds 64");
    OracleSearch s;
    s.m = m;
    s.budget = node_budget;
    s.closing.assign(static_cast<std::size_t>(m), {});
    std::vector<std::uint64_t> all;
    for_each_subset(m, f.k(), [&](std::span<const int> x) {
        std::uint64_t xm = 0;
        for (int p : x)
            xm |= std::uint64_t{1} << p;
        auto img = f.image(x);
        if (mode == Mode::disjoint) {
            for (int y : img)
                all.push_back(xm | std::uint64_t{1} << y);
        }
        else {
            std::uint64_t mask = xm;
            for (int y : img)
                mask |= std::uint64_t{1} << y;
            all.push_back(mask);
        }
    });
    std::sort(all.begin(), all.end());
    all.erase(std::unique(all.begin(), all.end()), all.end());
    for (auto fm : all)
        s.closing[static_cast<std::size_t>(63 - std::countl_zero(fm))].push_back(fm);
    s.run(0, 0, 0);

    OracleResult r;
    r.lower = s.best;
    r.upper = s.aborted ? std::max(s.best, s.upper_open) : s.best;
    r.nodes = s.nodes;
    for (int v = 0; v < m; ++v)
        if (s.best_mask >> v & 1)
            r.witness.push_back(v);
    return r;
}

} // namespace exlab::setmap
