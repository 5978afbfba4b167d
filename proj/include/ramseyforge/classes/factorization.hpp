#pragma once

#include <ramseyforge/class_spec.hpp>
#include <ramseyforge/classes/graphs.hpp>

#include <map>
#include <mutex>
#include <numeric>
#include <set>

namespace ramseyforge {

/// An undirected simple graph on 0..vertex_count-1.
struct SimpleGraph
{
    std::size_t vertex_count = 0;
    std::vector<std::pair<Vertex, Vertex>> edges;

    auto operator==(const SimpleGraph &) const -> bool = default;
};

/// Orients every edge as (min, max), sorts and dedupes.
inline auto canonical(SimpleGraph g) -> SimpleGraph
{
    for (auto &[u, v] : g.edges)
        if (u > v)
            std::swap(u, v);
    std::sort(g.edges.begin(), g.edges.end());
    g.edges.erase(std::unique(g.edges.begin(), g.edges.end()), g.edges.end());
    return g;
}

/// Reads a pattern from a structure over the plain graph language.
inline auto simple_graph(const Structure &h) -> SimpleGraph
{
    if (! same_language(h.language_ptr(), graph_language()))
        throw InputError("pattern must be a structure over the graph language {E}");
    SimpleGraph g{h.size(), {}};
    for (const auto &t : h.relation("E")) {
        if (t[0] == t[1])
            throw InputError("pattern has a loop at " + std::to_string(t[0]));
        if (! h.has_tuple(0, Tuple{t[1], t[0]}))
            throw InputError("pattern edge " + tuple_string(t) + " is not symmetric");
        g.edges.emplace_back(t[0], t[1]);
    }
    return canonical(std::move(g));
}

/// A graph with a partial H-factorization: each matching lists vertex-disjoint
/// induced copies of H (as vertex sets); matchings may be empty.
struct HFactorizationInput
{
    SimpleGraph graph;
    SimpleGraph pattern;
    std::vector<std::vector<VertexSet>> matchings;

    auto operator==(const HFactorizationInput &) const -> bool = default;
};

inline auto canonical(HFactorizationInput in) -> HFactorizationInput
{
    in.graph = canonical(std::move(in.graph));
    in.pattern = canonical(std::move(in.pattern));
    for (auto &m : in.matchings) {
        for (auto &c : m)
            c = make_set(c);
        std::sort(m.begin(), m.end());
    }
    return in;
}

namespace detail {

/// Whether `adjacent` restricted to `vertices` is isomorphic to `pattern`.
template <class Adjacent>
auto induces_pattern(const VertexSet &vertices, const SimpleGraph &pattern, Adjacent adjacent) -> bool
{
    if (vertices.size() != pattern.vertex_count)
        return false;
    std::set<std::pair<Vertex, Vertex>> edges;
    for (auto [u, v] : pattern.edges)
        edges.insert({std::min(u, v), std::max(u, v)});
    std::size_t count = 0;
    for (std::size_t i = 0; i < vertices.size(); ++i)
        for (std::size_t j = i + 1; j < vertices.size(); ++j)
            count += adjacent(vertices[i], vertices[j]);
    if (count != edges.size())
        return false;
    std::vector<std::size_t> perm(vertices.size());
    std::iota(perm.begin(), perm.end(), 0);
    do {
        bool ok = true;
        for (auto [u, v] : edges)
            if (! adjacent(vertices[perm[u]], vertices[perm[v]])) {
                ok = false;
                break;
            }
        if (ok)
            return true;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return false;
}

} // namespace detail

/// Language {E binary, S unary, le, F1 with d = 2 and r = h, F2 with d = h and r = 1}.
inline auto facth_language(unsigned h) -> LanguagePtr
{
    if (h < 2)
        throw InputError("pattern needs at least two vertices");
    static std::mutex mutex;
    static std::map<unsigned, LanguagePtr> cache;
    std::lock_guard lock(mutex);
    auto &slot = cache[h];
    if (! slot) {
        Language l;
        l.add_relation("E", 2).add_relation("S", 1).add_relation("le", 2).set_order("le");
        l.add_function("F1", 2, h).add_function("F2", h, 1);
        slot = share(std::move(l));
    }
    return slot;
}

/// Graph vertices first, then one label vertex per matching. Each copy maps
/// its ordered pairs to itself under F1 and its orderings to the matching
/// label under F2.
inline auto facth_encode(const HFactorizationInput &input) -> Structure
{
    auto in = canonical(input);
    const auto &g = in.graph;
    auto h = static_cast<unsigned>(in.pattern.vertex_count);
    std::set<std::pair<Vertex, Vertex>> edge_set;
    for (auto [u, v] : g.edges) {
        if (u == v || v >= g.vertex_count)
            throw ClassError("bad edge " + std::to_string(u) + "-" + std::to_string(v));
        edge_set.insert({u, v});
    }
    auto adjacent = [&](Vertex u, Vertex v) { return edge_set.contains({std::min(u, v), std::max(u, v)}); };

    Structure s(facth_language(h), g.vertex_count + in.matchings.size());
    auto f1 = s.language().function("F1");
    auto f2 = s.language().function("F2");
    for (auto [u, v] : g.edges) {
        s.add_tuple("E", Tuple{u, v});
        s.add_tuple("E", Tuple{v, u});
    }
    std::map<std::pair<Vertex, Vertex>, VertexSet> pair_owner;
    for (std::size_t i = 0; i < in.matchings.size(); ++i) {
        auto label = static_cast<Vertex>(g.vertex_count + i);
        s.add_tuple("S", Tuple{label});
        std::set<Vertex> used;
        for (const auto &copy : in.matchings[i]) {
            if (copy.size() != h || (! copy.empty() && copy.back() >= g.vertex_count))
                throw ClassError("copy " + set_string(copy) + " is not a vertex set of size " + std::to_string(h));
            if (! detail::induces_pattern(copy, in.pattern, adjacent))
                throw ClassError("copy " + set_string(copy) + " does not induce H");
            for (auto v : copy)
                if (! used.insert(v).second)
                    throw ClassError("matching " + std::to_string(i) + " has two copies through " + std::to_string(v));
            for (std::size_t x = 0; x < copy.size(); ++x)
                for (std::size_t y = x + 1; y < copy.size(); ++y) {
                    auto [it, fresh] = pair_owner.emplace(std::pair{copy[x], copy[y]}, copy);
                    if (! fresh)
                        throw ClassError("pair {" + std::to_string(copy[x]) + "," + std::to_string(copy[y]) +
                            "} lies in copies " + set_string(it->second) + " and " + set_string(copy));
                }
            for (auto &t : detail::distinct_tuples(copy, 2))
                s.set_value(f1, std::move(t), copy);
            for (auto &t : detail::orderings(copy))
                s.set_value(f2, std::move(t), VertexSet{label});
        }
    }
    set_id_order(s);
    return s;
}

namespace detail {

inline auto facth_size(const Structure &s) -> std::optional<unsigned>
{
    const auto &fs = s.language().functions();
    if (fs.size() != 2 || fs[0].name != "F1" || fs[1].name != "F2" || fs[0].domain_arity != 2)
        return std::nullopt;
    return fs[0].range_arity;
}

} // namespace detail

/// Checks the fourteen factorization axioms against pattern `h`:
/// (1) linear order, (2) F2 domains avoid labels, (3) F2 values are labels,
/// (4) E is an undirected graph, (5) F2 domains induce H, (6) F1 is defined on
/// pairs of distinct vertices, (7) F2 is a partial function on h-tuples,
/// (8) F1 symmetric, (9) F2 symmetric on distinct tuples, (10) a pair lies in
/// its F1 value, (11) every pair inside an F1 value maps to that value,
/// (12) Dom F2 equals Rg F1, (13) no F2 value lies in an F2 domain,
/// (14) copies sharing a label are disjoint.
inline auto facth_validate(const Structure &s, const SimpleGraph &h) -> MembershipReport
{
    MembershipReport report;
    auto size = detail::facth_size(s);
    if (! size || *size != h.vertex_count || ! s.language().relation_index("S") ||
        ! s.language().relation_index("E")) {
        report.fail(0, "not a factorization language {E, S, le, F1, F2} for this pattern");
        return report;
    }
    if (! detail::check_shape(s, facth_language(*size), report, 1))
        return report;

    const auto &labels = s.relation("S");
    const auto &edges = s.relation("E");
    auto is_label = [&](Vertex v) { return labels.contains(Tuple{v}); };
    auto adjacent = [&](Vertex u, Vertex v) { return edges.contains(Tuple{u, v}); };
    const auto &f1 = s.function("F1");
    const auto &f2 = s.function("F2");

    for (const auto &t : edges) {
        if (t[0] == t[1])
            report.fail(4, "loop at " + std::to_string(t[0]));
        else if (! edges.contains(Tuple{t[1], t[0]}))
            report.fail(4, "edge " + tuple_string(t) + " is not symmetric");
    }

    std::set<VertexSet> values, domains;
    for (const auto &[dom, range] : f1) {
        values.insert(range);
        if (dom[0] == dom[1]) {
            report.fail(6, "F1 domain " + tuple_string(dom) + " repeats a vertex");
            continue;
        }
        const auto *swapped = s.value(0, Tuple{dom[1], dom[0]});
        if (! swapped || *swapped != range)
            report.fail(8, "F1 is not symmetric on " + tuple_string(dom));
        if (! is_subset(make_set(dom), range))
            report.fail(10, "pair " + tuple_string(dom) + " is not inside " + set_string(range));
        for (const auto &other : detail::distinct_tuples(range, 2)) {
            auto it = f1.find(other);
            if (it == f1.end() || it->second != range) {
                report.fail(11, "pair " + tuple_string(other) + " of " + set_string(range) + " does not map to it");
                break;
            }
        }
    }

    MembershipReport symmetric;
    detail::check_symmetric(f2, "F2", symmetric, 9);
    for (auto &v : symmetric.violations)
        report.violations.push_back(std::move(v));

    std::set<Vertex> in_domains;
    std::map<Vertex, std::vector<VertexSet>> by_label;
    for (const auto &[dom, range] : f2) {
        auto set = make_set(dom);
        domains.insert(set);
        in_domains.insert(dom.begin(), dom.end());
        if (std::any_of(dom.begin(), dom.end(), is_label))
            report.fail(2, "F2 domain " + tuple_string(dom) + " contains a label vertex");
        if (! is_label(range.front()))
            report.fail(3, "F2 value " + set_string(range) + " is not a label");
        if (set.size() == dom.size() && ! detail::induces_pattern(set, h, adjacent))
            report.fail(5, "F2 domain " + tuple_string(dom) + " does not induce H");
        if (std::is_sorted(dom.begin(), dom.end()))
            by_label[range.front()].push_back(set);
    }
    if (values != domains)
        report.fail(12, "F2 is not defined exactly on the F1 values");
    for (const auto &[dom, range] : f2)
        if (in_domains.contains(range.front())) {
            report.fail(13, "F2 value " + set_string(range) + " lies in an F2 domain");
            break;
        }
    for (const auto &[label, members] : by_label)
        for (std::size_t i = 0; i < members.size(); ++i)
            for (std::size_t j = i + 1; j < members.size(); ++j) {
                VertexSet common;
                std::set_intersection(members[i].begin(), members[i].end(), members[j].begin(), members[j].end(),
                    std::back_inserter(common));
                if (! common.empty())
                    report.fail(14, "copies " + set_string(members[i]) + " and " + set_string(members[j]) +
                        " share label " + std::to_string(label) + " but meet");
            }
    return report;
}

/// Decodes a member whose label vertices carry no edges.
inline auto facth_decode(const Structure &s, const SimpleGraph &h) -> HFactorizationInput
{
    auto report = facth_validate(s, h);
    if (! report.ok())
        throw ClassError("not a factorization: " + report.violations.front().message);
    auto ranks = *linear_order_ranks(s);
    std::vector<Vertex> by_rank(s.size());
    for (Vertex v = 0; v < s.size(); ++v)
        by_rank[ranks[v]] = v;
    const auto &labels = s.relation("S");
    auto is_label = [&](Vertex v) { return labels.contains(Tuple{v}); };
    std::vector<Vertex> index(s.size(), 0);
    Vertex points = 0, matchings = 0;
    for (auto v : by_rank)
        index[v] = is_label(v) ? matchings++ : points++;

    HFactorizationInput out{SimpleGraph{points, {}}, h, std::vector<std::vector<VertexSet>>(matchings)};
    for (const auto &t : s.relation("E")) {
        if (is_label(t[0]) || is_label(t[1]))
            throw ClassError("label vertex " + std::to_string(is_label(t[0]) ? t[0] : t[1]) + " carries an edge");
        if (t[0] < t[1])
            out.graph.edges.emplace_back(index[t[0]], index[t[1]]);
    }
    for (const auto &[dom, range] : s.function("F2")) {
        if (! std::is_sorted(dom.begin(), dom.end()))
            continue;
        Tuple copy;
        for (auto v : dom)
            copy.push_back(index[v]);
        out.matchings[index[range.front()]].push_back(make_set(copy));
    }
    return canonical(std::move(out));
}

/// Ordered graphs with partial H-factorizations.
inline auto facth_class(const SimpleGraph &pattern) -> ClassSpec
{
    auto h = canonical(pattern);
    ClassSpec spec;
    spec.name = "facth";
    spec.language = facth_language(static_cast<unsigned>(h.vertex_count));
    spec.validate = [h](const Structure &s) { return facth_validate(s, h); };
    spec.persistent_axioms = {14};
    spec.enumerate = [h](std::size_t n, const std::function<bool(const Structure &)> &visit) {
        if (n >= 32)
            throw InputError("factorization enumeration is limited to 31 vertices");
        bool stop = false;
        for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << n) && ! stop; ++mask) {
            std::vector<Vertex> points, labels;
            for (Vertex v = 0; v < n; ++v)
                ((mask >> v) & 1 ? labels : points).push_back(v);
            // edges may touch label vertices; only copies avoid them
            auto pairs = detail::k_subsets(n, 2);
            for (std::uint64_t emask = 0; emask < (std::uint64_t{1} << pairs.size()) && ! stop; ++emask) {
                SimpleGraph g{n, {}};
                std::set<std::pair<Vertex, Vertex>> edge_set;
                for (std::size_t i = 0; i < pairs.size(); ++i)
                    if ((emask >> i) & 1) {
                        std::pair e{pairs[i][0], pairs[i][1]};
                        g.edges.push_back(e);
                        edge_set.insert(e);
                    }
                auto adjacent = [&](Vertex u, Vertex v) { return edge_set.contains({std::min(u, v), std::max(u, v)}); };
                std::vector<VertexSet> copies;
                for (const auto &idx : detail::k_subsets(points.size(), h.vertex_count)) {
                    VertexSet c;
                    for (auto i : idx)
                        c.push_back(points[i]);
                    if (detail::induces_pattern(c, h, adjacent))
                        copies.push_back(c);
                }
                std::vector<std::pair<VertexSet, Vertex>> chosen;
                auto fits = [&](const VertexSet &c, Vertex label) {
                    for (const auto &[other, l] : chosen) {
                        VertexSet common;
                        std::set_intersection(c.begin(), c.end(), other.begin(), other.end(), std::back_inserter(common));
                        if (common.size() >= 2 || (l == label && ! common.empty()))
                            return false;
                    }
                    return true;
                };
                std::function<void(std::size_t)> rec = [&](std::size_t i) {
                    if (stop)
                        return;
                    if (i == copies.size()) {
                        Structure s(facth_language(static_cast<unsigned>(h.vertex_count)), n);
                        for (auto [u, v] : g.edges) {
                            s.add_tuple("E", Tuple{u, v});
                            s.add_tuple("E", Tuple{v, u});
                        }
                        for (auto l : labels)
                            s.add_tuple("S", Tuple{l});
                        for (const auto &[c, l] : chosen) {
                            for (auto &t : detail::distinct_tuples(c, 2))
                                s.set_value("F1", std::move(t), c);
                            for (auto &t : detail::orderings(c))
                                s.set_value("F2", std::move(t), VertexSet{l});
                        }
                        set_id_order(s);
                        stop = ! visit(s);
                        return;
                    }
                    rec(i + 1);
                    for (auto l : labels)
                        if (fits(copies[i], l)) {
                            chosen.emplace_back(copies[i], l);
                            rec(i + 1);
                            chosen.pop_back();
                        }
                };
                rec(0);
            }
        }
    };
    return spec;
}

} // namespace ramseyforge
