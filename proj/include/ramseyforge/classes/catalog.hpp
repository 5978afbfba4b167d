#pragma once

#include <ramseyforge/classes/factorization.hpp>
#include <ramseyforge/classes/graphs.hpp>
#include <ramseyforge/classes/leq.hpp>
#include <ramseyforge/classes/orientation.hpp>
#include <ramseyforge/classes/prbibd.hpp>
#include <ramseyforge/classes/steiner.hpp>

namespace ramseyforge {

/// Class parameters; unset values fall back to per-class defaults.
struct ClassOptions
{
    std::optional<unsigned> k;
    std::optional<unsigned> t;
    std::optional<SimpleGraph> pattern;
    /// Vertex bound for the truncated graph class.
    std::optional<std::size_t> max_vertices;
};

inline auto class_names() -> const std::vector<std::string> &
{
    static const std::vector<std::string> names{
        "clique", "dkplus", "eq", "facth", "fl", "graph", "leq", "prbibd", "steiner"};
    return names;
}

/// Builds a catalog class. Defaults: k = 1 for eq/leq/dkplus/fl, k = 3 for
/// prbibd, (k, t) = (3, 2) for steiner, H = K2 for facth.
inline auto make_class(const std::string &name, const ClassOptions &options = {}) -> ClassSpec
{
    auto k = [&](unsigned fallback) { return options.k.value_or(fallback); };
    if (name == "eq")
        return eq_class(k(1));
    if (name == "leq")
        return leq_class(k(1));
    if (name == "steiner")
        return steiner_class(k(3), options.t.value_or(2));
    if (name == "dkplus")
        return dkplus_class(k(1));
    if (name == "fl")
        return fl_class(k(1));
    if (name == "prbibd")
        return prbibd_class(k(3));
    if (name == "facth")
        return facth_class(options.pattern.value_or(SimpleGraph{2, {{0, 1}}}));
    if (name == "graph")
        return options.max_vertices ? ordered_graph_class(*options.max_vertices) : ordered_graph_class();
    if (name == "clique")
        return ordered_clique_class();
    throw InputError("unknown class '" + name + "'");
}

/// Fills in parameters that can be read off a structure's language.
inline auto infer_options(const std::string &name, const Structure &s, ClassOptions options) -> ClassOptions
{
    const auto &fs = s.language().functions();
    if (options.k || fs.empty())
        return options;
    if (name == "eq" || name == "leq")
        options.k = fs[0].domain_arity;
    else if (name == "steiner") {
        options.k = fs[0].range_arity;
        if (! options.t)
            options.t = fs[0].domain_arity;
    }
    else if (name == "dkplus" || name == "fl")
        options.k = static_cast<unsigned>(fs.size());
    else if (name == "prbibd")
        options.k = fs[0].range_arity;
    return options;
}

} // namespace ramseyforge
