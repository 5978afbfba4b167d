#pragma once

#include <ramseyforge/class_spec.hpp>
#include <ramseyforge/closure.hpp>

#include <map>
#include <mutex>
#include <set>

namespace ramseyforge {

/// An oriented graph: no loops, no parallel or antiparallel arcs.
struct OrientedGraph
{
    std::size_t vertex_count = 0;
    std::vector<std::pair<Vertex, Vertex>> arcs;

    auto operator==(const OrientedGraph &) const -> bool = default;
};

inline auto canonical(OrientedGraph g) -> OrientedGraph
{
    std::sort(g.arcs.begin(), g.arcs.end());
    g.arcs.erase(std::unique(g.arcs.begin(), g.arcs.end()), g.arcs.end());
    return g;
}

inline auto out_neighbours(const OrientedGraph &g) -> std::vector<VertexSet>
{
    std::vector<VertexSet> out(g.vertex_count);
    for (auto [u, v] : g.arcs)
        out.at(u).push_back(v);
    for (auto &o : out)
        std::sort(o.begin(), o.end());
    return out;
}

/// Throws ClassError unless `g` is an oriented graph with out-degrees <= k.
inline void check_orientation(const OrientedGraph &g, unsigned k)
{
    std::set<std::pair<Vertex, Vertex>> seen;
    for (auto [u, v] : g.arcs) {
        auto arc = "arc " + std::to_string(u) + "->" + std::to_string(v);
        if (u >= g.vertex_count || v >= g.vertex_count)
            throw ClassError(arc + " leaves the vertex range");
        if (u == v)
            throw ClassError(arc + " is a loop");
        if (! seen.insert({u, v}).second)
            throw ClassError(arc + " is repeated");
        if (seen.contains({v, u}))
            throw ClassError(arc + " has an antiparallel twin");
    }
    auto out = out_neighbours(g);
    for (Vertex v = 0; v < out.size(); ++v)
        if (out[v].size() > k)
            throw ClassError("vertex " + std::to_string(v) + " has out-degree " + std::to_string(out[v].size()) +
                " > " + std::to_string(k));
}

/// Whether no arc leaves `inside` (a subset of the vertices of `g`).
inline auto successor_closed(const VertexSet &inside, const OrientedGraph &g) -> bool
{
    for (auto v : inside)
        if (v >= g.vertex_count)
            throw InputError("vertex " + std::to_string(v) + " is not in the graph");
    auto in = [&](Vertex v) { return std::binary_search(inside.begin(), inside.end(), v); };
    return std::none_of(g.arcs.begin(), g.arcs.end(), [&](auto a) { return in(a.first) && ! in(a.second); });
}

/// Whether `sub`, placed by `inclusion`, is the subgraph induced on its image
/// and no arc of `g` leaves the image.
inline auto successor_closed(const OrientedGraph &sub, const VertexMap &inclusion, const OrientedGraph &g) -> bool
{
    if (inclusion.size() != sub.vertex_count)
        throw InputError("inclusion must place every vertex");
    VertexSet image(inclusion.begin(), inclusion.end());
    auto sorted = make_set(image);
    if (sorted.size() != image.size())
        throw InputError("inclusion is not injective");
    std::set<std::pair<Vertex, Vertex>> mapped;
    for (auto [u, v] : sub.arcs)
        mapped.insert({inclusion.at(u), inclusion.at(v)});
    std::set<std::pair<Vertex, Vertex>> induced;
    auto in = [&](Vertex v) { return std::binary_search(sorted.begin(), sorted.end(), v); };
    for (auto a : g.arcs)
        if (in(a.first) && in(a.second))
            induced.insert(a);
    return mapped == induced && successor_closed(sorted, g);
}

namespace detail {

inline auto out_function_language(unsigned k, bool ordered, bool sized_ranges) -> LanguagePtr
{
    // F1..F9 keep symbol order equal to index order
    if (k == 0 || k > 9)
        throw InputError("k must lie in 1..9");
    static std::mutex mutex;
    static std::map<std::tuple<unsigned, bool, bool>, LanguagePtr> cache;
    std::lock_guard lock(mutex);
    auto &slot = cache[{k, ordered, sized_ranges}];
    if (! slot) {
        Language l;
        if (ordered)
            l.add_relation("le", 2).set_order("le");
        for (unsigned i = 1; i <= k; ++i)
            l.add_function("F" + std::to_string(i), 1, sized_ranges ? i : 1);
        slot = share(std::move(l));
    }
    return slot;
}

/// Reads k from a language of functions F1..Fk.
inline auto out_function_count(const Structure &s) -> unsigned
{
    return static_cast<unsigned>(s.language().functions().size());
}

} // namespace detail

/// Language {le, F1..Fk} with F_i unary of range arity i.
inline auto dkplus_language(unsigned k) -> LanguagePtr { return detail::out_function_language(k, true, true); }

/// Language {F1..Fk}, each unary with singleton values.
inline auto fl_language(unsigned k) -> LanguagePtr { return detail::out_function_language(k, false, false); }

/// F_i is defined exactly on the vertices of out-degree i and maps them to
/// their out-neighbourhood. Vertices are ordered by id.
inline auto dk_lift(const OrientedGraph &g, unsigned k) -> Structure
{
    check_orientation(g, k);
    Structure s(dkplus_language(k), g.vertex_count);
    auto out = out_neighbours(g);
    for (Vertex v = 0; v < out.size(); ++v)
        if (! out[v].empty())
            s.set_value("F" + std::to_string(out[v].size()), Tuple{v}, out[v]);
    set_id_order(s);
    return s;
}

/// Checks: (1) linear order, (2) at most one F_i defined per vertex,
/// (3) no vertex in its own out-neighbourhood, (4) no antiparallel arcs.
inline auto dk_validate(const Structure &s) -> MembershipReport
{
    MembershipReport report;
    auto k = detail::out_function_count(s);
    if (k == 0 || ! s.language().order_index()) {
        report.fail(0, "not a k-orientation language {le, F1..Fk}");
        return report;
    }
    if (! detail::check_shape(s, dkplus_language(k), report, 1))
        return report;

    std::vector<VertexSet> out(s.size());
    std::vector<int> defined(s.size(), 0);
    for (std::size_t f = 0; f < k; ++f)
        for (const auto &[dom, range] : s.function(f)) {
            auto v = dom[0];
            if (defined[v]++)
                report.fail(2, "vertex " + std::to_string(v) + " has two out-neighbourhoods");
            if (std::binary_search(range.begin(), range.end(), v))
                report.fail(3, "vertex " + std::to_string(v) + " is its own successor");
            out[v] = range;
        }
    for (Vertex u = 0; u < s.size(); ++u)
        for (auto v : out[u])
            if (u < v && std::binary_search(out[v].begin(), out[v].end(), u))
                report.fail(4, "arcs " + std::to_string(u) + "<->" + std::to_string(v) + " are antiparallel");
    return report;
}

/// Decodes a D+_k structure; vertices keep their ids.
inline auto dk_to_graph(const Structure &s) -> OrientedGraph
{
    auto report = dk_validate(s);
    if (! report.ok())
        throw ClassError("not a k-orientation: " + report.violations.front().message);
    OrientedGraph g{s.size(), {}};
    for (std::size_t f = 0; f < s.language().functions().size(); ++f)
        for (const auto &[dom, range] : s.function(f))
            for (auto v : range)
                g.arcs.emplace_back(dom[0], v);
    return canonical(std::move(g));
}

namespace detail {

/// Every oriented graph on n vertices with out-degrees <= k, in a fixed
/// order: out-neighbourhoods chosen vertex by vertex.
inline void enumerate_orientations(unsigned k, std::size_t n, const std::function<bool(const OrientedGraph &)> &visit)
{
    std::vector<std::vector<VertexSet>> options(n);
    for (Vertex v = 0; v < n; ++v) {
        VertexSet others;
        for (Vertex w = 0; w < n; ++w)
            if (w != v)
                others.push_back(w);
        for (std::size_t size = 0; size <= std::min<std::size_t>(k, others.size()); ++size)
            for (const auto &idx : k_subsets(others.size(), size)) {
                VertexSet chosen;
                for (auto i : idx)
                    chosen.push_back(others[i]);
                options[v].push_back(chosen);
            }
    }
    std::vector<VertexSet> out(n);
    bool stop = false;
    std::function<void(Vertex)> rec = [&](Vertex v) {
        if (stop)
            return;
        if (v == n) {
            OrientedGraph g{n, {}};
            for (Vertex u = 0; u < n; ++u)
                for (auto w : out[u])
                    g.arcs.emplace_back(u, w);
            stop = ! visit(g);
            return;
        }
        for (const auto &o : options[v]) {
            // antiparallel only needs checking against earlier vertices
            bool ok = std::none_of(o.begin(), o.end(), [&](Vertex w) {
                return w < v && std::binary_search(out[w].begin(), out[w].end(), v);
            });
            if (! ok)
                continue;
            out[v] = o;
            rec(v + 1);
            if (stop)
                return;
        }
    };
    rec(0);
}

} // namespace detail

/// Ordered lifts of k-orientations.
inline auto dkplus_class(unsigned k) -> ClassSpec
{
    ClassSpec spec;
    spec.name = "dkplus";
    spec.language = dkplus_language(k);
    spec.validate = dk_validate;
    spec.enumerate = [k](std::size_t n, const std::function<bool(const Structure &)> &visit) {
        detail::enumerate_orientations(k, n, [&](const OrientedGraph &g) { return visit(dk_lift(g, k)); });
    };
    return spec;
}

/// Splits the arcs of `g` into partial maps: the arcs leaving v go to
/// F1..F_outdeg in ascending target order, and a sink gets F1(v) = {v}.
inline auto fl_decompose(const OrientedGraph &g, unsigned k) -> Structure
{
    check_orientation(g, k);
    Structure s(fl_language(k), g.vertex_count);
    auto out = out_neighbours(g);
    for (Vertex v = 0; v < out.size(); ++v) {
        if (out[v].empty())
            s.set_value(0, Tuple{v}, VertexSet{v});
        for (std::size_t i = 0; i < out[v].size(); ++i)
            s.set_value(i, Tuple{v}, VertexSet{out[v][i]});
    }
    return s;
}

/// Checks: (1) apart from idempotent entries the maps F1..Fk have disjoint
/// arc sets, (2) the arcs form an oriented graph (no antiparallel pair).
inline auto fl_validate(const Structure &s) -> MembershipReport
{
    MembershipReport report;
    auto k = detail::out_function_count(s);
    if (k == 0 || s.language().order_index()) {
        report.fail(0, "not a decomposition language {F1..Fk}");
        return report;
    }
    if (! detail::check_shape(s, fl_language(k), report, std::nullopt))
        return report;

    std::set<std::pair<Vertex, Vertex>> arcs;
    for (std::size_t f = 0; f < k; ++f)
        for (const auto &[dom, range] : s.function(f)) {
            auto u = dom[0], v = range[0];
            if (u == v)
                continue;
            if (! arcs.insert({u, v}).second)
                report.fail(1, "arc " + std::to_string(u) + "->" + std::to_string(v) + " lies in two maps");
        }
    for (auto [u, v] : arcs)
        if (u < v && arcs.contains({v, u}))
            report.fail(2, "arcs " + std::to_string(u) + "<->" + std::to_string(v) + " are antiparallel");
    return report;
}

/// The oriented graph carried by a decomposition: all non-idempotent entries.
inline auto fl_to_graph(const Structure &s) -> OrientedGraph
{
    auto report = fl_validate(s);
    if (! report.ok())
        throw ClassError("not a decomposition: " + report.violations.front().message);
    OrientedGraph g{s.size(), {}};
    for (std::size_t f = 0; f < s.language().functions().size(); ++f)
        for (const auto &[dom, range] : s.function(f))
            if (dom[0] != range[0])
                g.arcs.emplace_back(dom[0], range[0]);
    return canonical(std::move(g));
}

/// Decompositions of k-orientations into k partial maps (unordered).
inline auto fl_class(unsigned k) -> ClassSpec
{
    ClassSpec spec;
    spec.name = "fl";
    spec.language = fl_language(k);
    spec.validate = fl_validate;
    spec.monotone = false;
    spec.enumerate = [k](std::size_t n, const std::function<bool(const Structure &)> &visit) {
        // each F_i(v) is undefined, v itself, or another vertex
        std::size_t slots = n * k;
        std::vector<std::size_t> choice(slots, 0);
        while (true) {
            Structure s(fl_language(k), n);
            for (std::size_t i = 0; i < slots; ++i)
                if (choice[i]) {
                    auto v = static_cast<Vertex>(i / k);
                    s.set_value(i % k, Tuple{v}, VertexSet{static_cast<Vertex>(choice[i] - 1)});
                }
            if (fl_validate(s).ok() && ! visit(s))
                return;
            std::size_t i = 0;
            while (i < slots && choice[i] == n)
                choice[i++] = 0;
            if (i == slots)
                return;
            ++choice[i];
        }
    };
    return spec;
}

} // namespace ramseyforge
