#pragma once

#include <ramseyforge/class_spec.hpp>

#include <utility>
#include <vector>

namespace ramseyforge {

/// Ordered graphs: symmetric irreflexive `E` plus the order `le`.
inline auto ordered_graph_language() -> const LanguagePtr &
{
    static const LanguagePtr lang = [] {
        Language l;
        l.add_relation("E", 2).add_relation("le", 2).set_order("le");
        return share(std::move(l));
    }();
    return lang;
}

/// Plain graphs (symmetric irreflexive `E`), used for H patterns.
inline auto graph_language() -> const LanguagePtr &
{
    static const LanguagePtr lang = [] {
        Language l;
        l.add_relation("E", 2);
        return share(std::move(l));
    }();
    return lang;
}

inline auto graph_structure(const LanguagePtr &lang, std::size_t n, const std::vector<std::pair<Vertex, Vertex>> &edges)
    -> Structure
{
    Structure s(lang, n);
    auto e = lang->relation("E");
    for (auto [u, v] : edges) {
        s.add_tuple(e, Tuple{u, v});
        s.add_tuple(e, Tuple{v, u});
    }
    if (lang->order_index())
        set_id_order(s);
    return s;
}

inline auto ordered_graph(std::size_t n, const std::vector<std::pair<Vertex, Vertex>> &edges) -> Structure
{
    return graph_structure(ordered_graph_language(), n, edges);
}

inline auto ordered_clique(std::size_t n) -> Structure
{
    std::vector<std::pair<Vertex, Vertex>> edges;
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v)
            edges.emplace_back(u, v);
    return ordered_graph(n, edges);
}

namespace detail {

inline void check_simple_graph(const Structure &s, MembershipReport &report, int axiom)
{
    const auto &e = s.relation("E");
    for (const auto &t : e) {
        if (t.size() == 2 && t[0] == t[1])
            report.fail(axiom, "loop at " + std::to_string(t[0]));
        else if (t.size() == 2 && ! e.contains(Tuple{t[1], t[0]}))
            report.fail(axiom, "edge " + tuple_string(t) + " is not symmetric");
    }
}

} // namespace detail

inline auto validate_ordered_graph(const Structure &s) -> MembershipReport
{
    MembershipReport report;
    if (! detail::check_shape(s, ordered_graph_language(), report, 1))
        return report;
    detail::check_simple_graph(s, report, 2);
    return report;
}

/// All ordered graphs, optionally truncated to at most `max_vertices` vertices.
inline auto ordered_graph_class(std::size_t max_vertices = static_cast<std::size_t>(-1)) -> ClassSpec
{
    ClassSpec spec;
    spec.name = max_vertices == static_cast<std::size_t>(-1) ? "graph" : "graph<=" + std::to_string(max_vertices);
    spec.language = ordered_graph_language();
    spec.validate = [max_vertices](const Structure &s) {
        auto report = validate_ordered_graph(s);
        if (s.size() > max_vertices)
            report.fail(3, "more than " + std::to_string(max_vertices) + " vertices");
        return report;
    };
    spec.enumerate = [max_vertices](std::size_t n, const std::function<bool(const Structure &)> &visit) {
        if (n > max_vertices)
            return;
        auto pairs = detail::k_subsets(n, 2);
        if (pairs.size() >= 63)
            throw InputError("ordered graph enumeration is limited to 11 vertices");
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << pairs.size()); ++mask) {
            std::vector<std::pair<Vertex, Vertex>> edges;
            for (std::size_t i = 0; i < pairs.size(); ++i)
                if ((mask >> i) & 1)
                    edges.emplace_back(pairs[i][0], pairs[i][1]);
            if (! visit(ordered_graph(n, edges)))
                return;
        }
    };
    return spec;
}

/// Ordered complete graphs: one member per size.
inline auto ordered_clique_class() -> ClassSpec
{
    ClassSpec spec;
    spec.name = "clique";
    spec.language = ordered_graph_language();
    spec.validate = [](const Structure &s) {
        auto report = validate_ordered_graph(s);
        if (report.ok() && s.relation("E").size() != s.size() * (s.size() - (s.size() ? 1 : 0)))
            report.fail(3, "graph is not complete");
        return report;
    };
    spec.enumerate = [](std::size_t n, const std::function<bool(const Structure &)> &visit) {
        visit(ordered_clique(n));
    };
    return spec;
}

} // namespace ramseyforge
