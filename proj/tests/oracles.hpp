#pragma once

// Brute-force reference implementations and random class inputs. Nothing here
// calls the search code it is used to check.

#include <ramseyforge/amalgamation.hpp>
#include <ramseyforge/classes/catalog.hpp>
#include <ramseyforge/closure.hpp>

#include "random_structures.hpp"

#include <map>
#include <random>
#include <set>

namespace ramseyforge::testing {

/// Every tuple over {0..n-1} of the given arity.
inline auto all_tuples(std::size_t n, std::size_t arity) -> std::vector<Tuple>
{
    std::vector<Tuple> out;
    if (n == 0)
        return out;
    Tuple t(arity, 0);
    while (true) {
        out.push_back(t);
        std::size_t i = 0;
        while (i < arity && ++t[i] == n)
            t[i++] = 0;
        if (i == arity)
            return out;
    }
}

inline auto image(const VertexMap &f, const Tuple &t) -> Tuple
{
    Tuple out;
    for (auto v : t)
        out.push_back(f[v]);
    return out;
}

/// Embedding straight from the definition: injective, every relation
/// preserved and reflected on all tuples, every function defined on exactly
/// the preimages of defined domains with matching values. The order symbol is
/// skipped unless `monotone`.
inline auto naive_is_embedding(const VertexMap &f, const Structure &a, const Structure &b, bool monotone) -> bool
{
    if (std::set<Vertex>(f.begin(), f.end()).size() != f.size())
        return false;
    const auto &lang = a.language();
    for (std::size_t r = 0; r < lang.relations().size(); ++r) {
        if (! monotone && lang.order_index() == r)
            continue;
        for (const auto &t : all_tuples(a.size(), lang.relations()[r].arity))
            if (a.relation(r).contains(t) != b.relation(r).contains(image(f, t)))
                return false;
    }
    for (std::size_t g = 0; g < lang.functions().size(); ++g)
        for (const auto &t : all_tuples(a.size(), lang.functions()[g].domain_arity)) {
            const auto *va = a.value(g, t);
            const auto *vb = b.value(g, image(f, t));
            if (! va != ! vb)
                return false;
            if (va && make_set(image(f, *va)) != *vb)
                return false;
        }
    return true;
}

/// All maps A -> B filtered by naive_is_embedding, in lexicographic order.
inline auto naive_embeddings(const Structure &a, const Structure &b, bool monotone) -> std::vector<VertexMap>
{
    std::vector<VertexMap> out;
    if (a.size() == 0)
        return {VertexMap{}};
    for (const auto &t : all_tuples(b.size(), a.size())) {
        // all_tuples varies the first entry fastest; reverse for lex order
        VertexMap f(t.rbegin(), t.rend());
        if (naive_is_embedding(f, a, b, monotone))
            out.push_back(f);
    }
    std::sort(out.begin(), out.end());
    return out;
}

inline auto naive_copies(const Structure &a, const Structure &b, bool monotone) -> std::vector<VertexSet>
{
    std::set<VertexSet> sets;
    for (const auto &f : naive_embeddings(a, b, monotone))
        sets.insert(make_set(Tuple(f.begin(), f.end())));
    return {sets.begin(), sets.end()};
}

struct BruteArrow
{
    bool arrow = false;
    std::size_t a_copies = 0;
    std::size_t b_copies = 0;
    std::uint64_t colorings = 0;
};

/// Tries every k-colouring of the copies of A in C.
inline auto brute_force_arrow(const Structure &c, const Structure &b, const Structure &a, unsigned k, bool monotone)
    -> BruteArrow
{
    auto ac = naive_copies(a, c, monotone);
    auto bc = naive_copies(b, c, monotone);
    std::vector<std::vector<std::size_t>> edges;
    for (const auto &bs : bc) {
        std::vector<std::size_t> e;
        for (std::size_t i = 0; i < ac.size(); ++i)
            if (is_subset(ac[i], bs))
                e.push_back(i);
        edges.push_back(e);
    }
    BruteArrow out{true, ac.size(), bc.size(), 0};
    std::vector<unsigned> color(ac.size(), 0);
    while (true) {
        ++out.colorings;
        bool some_mono = false;
        for (const auto &e : edges) {
            bool mono = std::all_of(e.begin(), e.end(), [&](std::size_t v) { return color[v] == color[e.front()]; });
            if (mono) {
                some_mono = true;
                break;
            }
        }
        if (! some_mono) {
            out.arrow = false;
            return out;
        }
        std::size_t i = 0;
        while (i < color.size() && ++color[i] == k)
            color[i++] = 0;
        if (i == color.size())
            return out;
    }
}

// ---- random class inputs ---------------------------------------------------

inline auto random_partial_steiner(std::mt19937_64 &rng, std::size_t n, unsigned k, unsigned t) -> Hypergraph
{
    auto candidates = detail::k_subsets(n, k);
    std::shuffle(candidates.begin(), candidates.end(), rng);
    Hypergraph g{n, {}};
    auto want = candidates.empty() ? 0 : rng() % (candidates.size() + 1);
    for (const auto &b : candidates) {
        if (g.edges.size() >= want)
            break;
        bool fits = std::all_of(g.edges.begin(), g.edges.end(), [&](const VertexSet &e) {
            VertexSet common;
            std::set_intersection(b.begin(), b.end(), e.begin(), e.end(), std::back_inserter(common));
            return common.size() < t;
        });
        if (fits)
            g.edges.push_back(b);
    }
    return canonical(g);
}

inline auto random_equivalence(std::mt19937_64 &rng, std::size_t n, unsigned k) -> EquivalenceStructure
{
    auto sets = detail::k_subsets(n, k);
    std::size_t classes = 1 + rng() % std::max<std::size_t>(1, sets.size());
    EquivalenceStructure e{n, k, std::vector<std::vector<VertexSet>>(classes)};
    for (const auto &s : sets)
        e.classes[rng() % classes].push_back(s);
    return canonical(e);
}

inline auto random_orientation(std::mt19937_64 &rng, std::size_t n, unsigned k) -> OrientedGraph
{
    OrientedGraph g{n, {}};
    std::vector<unsigned> out(n, 0);
    std::set<std::pair<Vertex, Vertex>> used;
    for (std::size_t i = 0; n > 1 && i < 2 * n; ++i) {
        auto u = static_cast<Vertex>(rng() % n);
        auto v = static_cast<Vertex>(rng() % n);
        if (u == v || out[u] >= k || used.contains({u, v}) || used.contains({v, u}))
            continue;
        used.insert({u, v});
        ++out[u];
        g.arcs.emplace_back(u, v);
    }
    return canonical(g);
}

inline auto random_design(std::mt19937_64 &rng, std::size_t n, unsigned k) -> ResolvableDesign
{
    ResolvableDesign d{n, k, std::vector<std::vector<VertexSet>>(rng() % 4)};
    auto candidates = detail::k_subsets(n, k);
    std::shuffle(candidates.begin(), candidates.end(), rng);
    std::vector<VertexSet> chosen;
    for (const auto &b : candidates) {
        if (d.classes.empty() || rng() % 2)
            continue;
        auto &cls = d.classes[rng() % d.classes.size()];
        auto meets = [&](const VertexSet &e, std::size_t limit) {
            VertexSet common;
            std::set_intersection(b.begin(), b.end(), e.begin(), e.end(), std::back_inserter(common));
            return common.size() >= limit;
        };
        if (std::any_of(chosen.begin(), chosen.end(), [&](const auto &e) { return meets(e, 2); }) ||
            std::any_of(cls.begin(), cls.end(), [&](const auto &e) { return meets(e, 1); }))
            continue;
        chosen.push_back(b);
        cls.push_back(b);
    }
    return canonical(d);
}

/// A random graph with matchings of edges (pattern K2).
inline auto random_factorization(std::mt19937_64 &rng, std::size_t n) -> HFactorizationInput
{
    HFactorizationInput in{SimpleGraph{n, {}}, SimpleGraph{2, {{0, 1}}}, {}};
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v)
            if (rng() % 2)
                in.graph.edges.emplace_back(u, v);
    in.matchings.resize(rng() % 3);
    std::set<std::pair<Vertex, Vertex>> taken;
    for (auto &m : in.matchings) {
        std::set<Vertex> used;
        for (auto [u, v] : in.graph.edges)
            if (rng() % 2 && ! taken.contains({u, v}) && ! used.contains(u) && ! used.contains(v)) {
                taken.insert({u, v});
                used.insert(u);
                used.insert(v);
                m.push_back(VertexSet{u, v});
            }
    }
    return canonical(in);
}

/// A random amalgamation situation inside a host D: B1, B2 are closed
/// substructures of D, A a closed part of their intersection; alpha_i are the
/// inclusions of A and gamma_i the inclusions of B_i into D.
struct SituatedInstance
{
    Structure d;
    AmalgamationInstance inst;
    VertexMap gamma1, gamma2;
};

inline auto random_situated_instance(std::mt19937_64 &rng, const LanguagePtr &lang, std::size_t max_b,
    std::size_t max_d) -> SituatedInstance
{
    while (true) {
        auto d = random_structure(rng, lang, 1 + rng() % max_d, 1);
        auto b1 = closure(d, random_subset(rng, d.size(), 3));
        auto b2 = closure(d, random_subset(rng, d.size(), 3));
        if (b1.size() > max_b || b2.size() > max_b)
            continue;
        VertexSet both;
        std::set_intersection(b1.begin(), b1.end(), b2.begin(), b2.end(), std::back_inserter(both));
        VertexSet pick;
        for (auto v : both)
            if (rng() % 3)
                pick.push_back(v);
        auto a = closure(d, pick);
        auto local = [](const VertexSet &sub, const VertexSet &host) {
            VertexMap f;
            for (auto v : sub)
                f.push_back(static_cast<Vertex>(std::lower_bound(host.begin(), host.end(), v) - host.begin()));
            return f;
        };
        auto sub = [&](const VertexSet &set) {
            return std::get<Substructure>(induced_closed_substructure(d, set)).structure;
        };
        SituatedInstance out{d, AmalgamationInstance{sub(a), sub(b1), sub(b2), local(a, b1), local(a, b2)},
            VertexMap(b1.begin(), b1.end()), VertexMap(b2.begin(), b2.end())};
        return out;
    }
}

// ---- completion inputs -------------------------------------------------

struct CompletionInput
{
    Structure c, b;
};

inline auto pick_member(std::mt19937_64 &rng, const std::vector<std::vector<Structure>> &by_size, std::size_t min_size)
    -> const Structure &
{
    while (true) {
        const auto &pool = by_size[min_size + rng() % (by_size.size() - min_size)];
        if (! pool.empty())
            return pool[rng() % pool.size()];
    }
}

// Free amalgam of two members over a closed part of the first, then a few
// stray function entries that no copy of B can contain.
inline auto random_completion_input(std::mt19937_64 &rng, const std::vector<std::vector<Structure>> &by_size)
    -> CompletionInput
{
    while (true) {
        const auto &b1 = pick_member(rng, by_size, 2);
        const auto &b2 = pick_member(rng, by_size, 1);
        auto set = closure(b1, random_subset(rng, b1.size(), 2));
        auto a = std::get<Substructure>(induced_closed_substructure(b1, set)).structure;
        auto into_b2 = enumerate_embeddings(a, b2, true);
        if (into_b2.empty())
            continue;
        AmalgamationInstance inst{a, b1, b2, VertexMap(set.begin(), set.end()), into_b2[rng() % into_b2.size()]};
        auto c = free_amalgam(inst).c;

        const auto &lang = c.language();
        std::size_t f = 0;
        auto arity = lang.functions()[f].domain_arity;
        auto range_size = lang.functions()[f].range_arity;
        for (int extra = rng() % 3; extra > 0 && c.size() >= std::max(arity, range_size); --extra) {
            auto dom = random_tuple(rng, c.size(), arity);
            Tuple range;
            for (std::size_t i = 0; i < range_size; ++i)
                range.push_back(static_cast<Vertex>(rng() % c.size()));
            auto value = make_set(range);
            if (value.size() == range_size && ! has_repeats(dom))
                c.set_value(f, dom, value);
        }
        return {std::move(c), rng() % 2 ? b1 : b2};
    }
}

inline auto members_by_size(const ClassSpec &spec, std::size_t n) -> std::vector<std::vector<Structure>>
{
    std::vector<std::vector<Structure>> out;
    for (std::size_t i = 0; i <= n; ++i)
        out.push_back(members(spec, i));
    return out;
}

} // namespace ramseyforge::testing
