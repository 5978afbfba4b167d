#pragma once

#include <ramseyforge/class_spec.hpp>
#include <ramseyforge/completion.hpp>

#include <map>
#include <mutex>

namespace ramseyforge {

/// A hypergraph on vertices 0..vertex_count-1; edges are sorted vertex sets.
struct Hypergraph
{
    std::size_t vertex_count = 0;
    std::vector<VertexSet> edges;

    auto operator==(const Hypergraph &) const -> bool = default;
};

inline auto canonical(Hypergraph g) -> Hypergraph
{
    for (auto &e : g.edges)
        e = make_set(e);
    std::sort(g.edges.begin(), g.edges.end());
    g.edges.erase(std::unique(g.edges.begin(), g.edges.end()), g.edges.end());
    return g;
}

/// Language {le, F} with d(F) = t and r(F) = k, for k > t >= 2.
inline auto steiner_language(unsigned k, unsigned t) -> LanguagePtr
{
    if (! (k > t && t >= 2))
        throw InputError("Steiner systems need k > t >= 2");
    static std::mutex mutex;
    static std::map<std::pair<unsigned, unsigned>, LanguagePtr> cache;
    std::lock_guard lock(mutex);
    auto &slot = cache[{k, t}];
    if (! slot) {
        Language l;
        l.add_relation("le", 2).set_order("le").add_function("F", t, k);
        slot = share(std::move(l));
    }
    return slot;
}

/// Encodes a partial (k,t)-Steiner system: F sends every t-tuple of distinct
/// vertices of an edge to that edge. Vertices are ordered by id.
inline auto hypergraph_to_steiner(const Hypergraph &g, unsigned k, unsigned t) -> Structure
{
    Structure s(steiner_language(k, t), g.vertex_count);
    auto f = s.language().function("F");
    for (const auto &raw : g.edges) {
        auto edge = make_set(raw);
        if (edge.size() != k || raw.size() != k)
            throw ClassError("edge " + set_string(raw) + " does not have " + std::to_string(k) + " vertices");
        if (edge.back() >= g.vertex_count)
            throw ClassError("edge " + set_string(raw) + " uses a vertex out of range");
        for (const auto &dom : detail::distinct_tuples(edge, t)) {
            const auto *prior = s.value(f, dom);
            if (prior && *prior != edge)
                throw ClassError("NotSteiner: " + set_string(make_set(dom)) + " lies in edges " + set_string(*prior) +
                    " and " + set_string(edge));
            s.set_value(f, dom, edge);
        }
    }
    set_id_order(s);
    return s;
}

/// The edges of a Steiner encoding: the distinct values of F.
inline auto steiner_to_hypergraph(const Structure &s) -> Hypergraph
{
    Hypergraph g{s.size(), {}};
    for (const auto &[dom, range] : s.function("F"))
        g.edges.push_back(range);
    return canonical(std::move(g));
}

namespace detail {

inline auto steiner_parameters(const Structure &s) -> std::optional<std::pair<unsigned, unsigned>>
{
    const auto &fs = s.language().functions();
    if (fs.size() != 1 || fs[0].name != "F")
        return std::nullopt;
    return std::pair{fs[0].range_arity, fs[0].domain_arity};
}

} // namespace detail

/// Checks the partial Steiner system axioms: linear order, F a partial
/// function into k-sets, domain tuples without repeats, and every domain tuple
/// inside its value with all distinct t-tuples of the value mapping to it.
/// `total` reports whether F is defined on every t-tuple of distinct vertices.
inline auto steiner_validate(const Structure &s) -> MembershipReport
{
    MembershipReport report;
    auto params = detail::steiner_parameters(s);
    if (! params || params->first <= params->second || params->second < 2) {
        report.fail(0, "not a Steiner language {le, F} with k > t >= 2");
        return report;
    }
    auto [k, t] = *params;
    if (! detail::check_shape(s, steiner_language(k, t), report, 1)) {
        for (auto &v : report.violations)
            if (v.axiom == 0)
                v.axiom = 2;
        return report;
    }

    const auto &table = s.function("F");
    for (const auto &[dom, range] : table) {
        if (has_repeats(dom)) {
            report.fail(3, "domain tuple " + tuple_string(dom) + " repeats a vertex");
            continue;
        }
        if (! is_subset(make_set(dom), range)) {
            report.fail(4, "domain tuple " + tuple_string(dom) + " is not inside its value " + set_string(range));
            continue;
        }
        for (const auto &other : detail::distinct_tuples(range, t)) {
            auto it = table.find(other);
            if (it == table.end() || it->second != range) {
                report.fail(4, "tuple " + tuple_string(other) + " of " + set_string(range) + " does not map to it");
                break;
            }
        }
    }

    if (report.ok()) {
        std::size_t expected = 1;
        for (std::size_t i = 0; i < t; ++i)
            expected *= s.size() >= i ? s.size() - i : 0;
        report.total = table.size() == expected;
    }
    return report;
}

/// Whether the monotone injection `f` is a hypergraph embedding of `g` into
/// `host` under which no t-subset of the image lies in a host edge that does
/// not come from `g`.
inline auto steiner_strong_embedding(const VertexMap &f, const Hypergraph &g, const Hypergraph &host, unsigned t) -> bool
{
    if (f.size() != g.vertex_count)
        throw InputError("map must assign every vertex");
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (f[i] >= host.vertex_count)
            throw InputError("map leaves the host");
        if (i && f[i - 1] >= f[i])
            return false;
    }
    auto image = [&](const VertexSet &e) {
        Tuple out;
        for (auto v : e)
            out.push_back(f[v]);
        return make_set(out);
    };
    std::vector<VertexSet> mapped;
    for (const auto &e : canonical(g).edges)
        mapped.push_back(image(e));
    auto host_edges = canonical(host).edges;
    for (const auto &e : mapped)
        if (! std::binary_search(host_edges.begin(), host_edges.end(), e))
            return false;

    VertexSet img = make_set(Tuple(f.begin(), f.end()));
    for (const auto &e : host_edges) {
        if (std::find(mapped.begin(), mapped.end(), e) != mapped.end())
            continue;
        std::size_t shared = 0;
        for (auto v : e)
            shared += std::binary_search(img.begin(), img.end(), v);
        // Covers both an unmapped edge inside the image and a stray t-subset.
        if (shared >= t)
            return false;
    }
    return true;
}

/// Steiner completion: linearize the order and keep F(t) = E only when t and E
/// lie inside one copy of `b`.
inline auto steiner_completion(const Structure &c, const Structure &b, const Structure *c0) -> CompletionResult
{
    if (! detail::steiner_parameters(c))
        throw InputError("steiner completion needs a Steiner language");
    return detail::copy_restricted_completion(c, b, c0);
}

/// Partial ordered (k,t)-Steiner systems.
inline auto steiner_class(unsigned k, unsigned t) -> ClassSpec
{
    ClassSpec spec;
    spec.name = "steiner";
    spec.language = steiner_language(k, t);
    spec.validate = steiner_validate;
    spec.enumerate = [k, t](std::size_t n, const std::function<bool(const Structure &)> &visit) {
        auto candidates = detail::k_subsets(n, k);
        std::vector<VertexSet> chosen;
        bool stop = false;
        auto compatible = [&](const VertexSet &e) {
            for (const auto &c : chosen) {
                VertexSet common;
                std::set_intersection(c.begin(), c.end(), e.begin(), e.end(), std::back_inserter(common));
                if (common.size() >= t)
                    return false;
            }
            return true;
        };
        std::function<void(std::size_t)> rec = [&](std::size_t i) {
            if (stop)
                return;
            if (i == candidates.size()) {
                if (! visit(hypergraph_to_steiner(Hypergraph{n, chosen}, k, t)))
                    stop = true;
                return;
            }
            rec(i + 1);
            if (compatible(candidates[i])) {
                chosen.push_back(candidates[i]);
                rec(i + 1);
                chosen.pop_back();
            }
        };
        rec(0);
    };
    spec.complete = steiner_completion;
    return spec;
}

/// The Fano plane as a (7,3,1) design.
inline auto fano_plane() -> Hypergraph
{
    return {7, {{0, 1, 2}, {0, 3, 4}, {0, 5, 6}, {1, 3, 5}, {1, 4, 6}, {2, 3, 6}, {2, 4, 5}}};
}

} // namespace ramseyforge
