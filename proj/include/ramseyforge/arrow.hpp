#pragma once

#include <ramseyforge/class_spec.hpp>
#include <ramseyforge/morphism.hpp>

#include <cstdlib>
#include <optional>
#include <string>
#include <vector>

namespace ramseyforge {

/// C -> (B)^A_k: every k-colouring of the copies of A in C leaves some copy
/// of B whose A-copies all share a colour.
struct ArrowInstance
{
    Structure c, b, a;
    unsigned k = 2;
    bool monotone = true;
};

/// Vertices are the copies of A in C; each copy of B gives the edge of A-copies
/// inside it.
struct CopyHypergraph
{
    CopySet a_copies;
    CopySet b_copies;
    std::vector<std::vector<std::size_t>> edges;
    std::size_t edge_size = 0;
};

inline auto build_copy_hypergraph(const ArrowInstance &inst, unsigned threads = 1) -> CopyHypergraph
{
    detail::check_same_language(inst.c, inst.b);
    detail::check_same_language(inst.c, inst.a);
    CopyHypergraph h;
    h.a_copies = copies(inst.a, inst.c, inst.monotone, threads);
    h.b_copies = copies(inst.b, inst.c, inst.monotone, threads);
    auto inside_b = copies(inst.a, inst.b, inst.monotone).copies;
    h.edge_size = inside_b.size();
    const auto &all = h.a_copies.copies;
    for (const auto &rep : h.b_copies.representatives) {
        std::vector<std::size_t> edge;
        for (const auto &local : inside_b) {
            Tuple image;
            for (auto v : local)
                image.push_back(rep[v]);
            auto set = make_set(std::move(image));
            auto it = std::lower_bound(all.begin(), all.end(), set);
            if (it == all.end() || *it != set)
                throw std::logic_error("copy of A inside a copy of B is missing from C");
            edge.push_back(static_cast<std::size_t>(it - all.begin()));
        }
        std::sort(edge.begin(), edge.end());
        if (edge.size() != h.edge_size)
            throw std::logic_error("copy hypergraph edges differ in size");
        h.edges.push_back(std::move(edge));
    }
    return h;
}

enum class ArrowStatus
{
    verified,
    refuted,
    inconclusive
};

inline auto to_string(ArrowStatus s) -> std::string_view
{
    switch (s) {
    case ArrowStatus::verified: return "verified";
    case ArrowStatus::refuted: return "refuted";
    case ArrowStatus::inconclusive: return "inconclusive";
    }
    return "?";
}

struct ArrowResult
{
    ArrowStatus status = ArrowStatus::inconclusive;
    /// No copy of B in C (refuted by any colouring), or no copy of A in B
    /// (every copy of B is trivially monochromatic).
    bool vacuous = false;
    /// Colour of each copy of A, indexed like `a_copies` (refuted only).
    std::vector<unsigned> coloring;
    CopySet a_copies;
    CopySet b_copies;
    std::size_t edge_size = 0;
    std::uint64_t nodes = 0;
};

/// Default node cap: RAMSEYFORGE_NODE_LIMIT if set, else 1e8.
inline auto default_node_limit() -> std::uint64_t
{
    if (const char *env = std::getenv("RAMSEYFORGE_NODE_LIMIT")) {
        char *end = nullptr;
        auto v = std::strtoull(env, &end, 10);
        if (end != env && *end == '\0')
            return v;
    }
    return 100'000'000;
}

/// Whether `coloring` leaves some edge monochromatic.
inline auto has_monochromatic_edge(const CopyHypergraph &h, const std::vector<unsigned> &coloring) -> bool
{
    return std::any_of(h.edges.begin(), h.edges.end(), [&](const auto &e) {
        return std::all_of(e.begin(), e.end(), [&](std::size_t v) { return coloring.at(v) == coloring.at(e.front()); });
    });
}

namespace detail {

/// Backtracking over vertex colourings in index order with ascending colours,
/// new colours opened one at a time. An edge whose coloured vertices share a
/// colour and which has one uncoloured vertex forbids that colour there.
class ColoringSearch
{
public:
    ColoringSearch(const CopyHypergraph &h, unsigned k, std::uint64_t limit) :
        h_(h), k_(k), limit_(limit), n_(h.a_copies.size()), incident_(n_), color_(n_, k), forbidden_(n_ * k, 0),
        count_(h.edges.size() * k, 0), uncolored_(h.edges.size(), h.edge_size)
    {
        for (std::size_t e = 0; e < h.edges.size(); ++e)
            for (auto v : h.edges[e])
                incident_[v].push_back(e);
    }

    /// True: bad colouring found in `color()`. False: none exists.
    /// nullopt: node limit reached.
    auto run() -> std::optional<bool>
    {
        auto r = descend(0, 0);
        if (aborted_)
            return std::nullopt;
        return r;
    }

    [[nodiscard]] auto color() const -> const std::vector<unsigned> & { return color_; }
    [[nodiscard]] auto nodes() const -> std::uint64_t { return nodes_; }

private:
    auto descend(std::size_t v, unsigned used) -> bool
    {
        if (v == n_)
            return true;
        unsigned top = std::min(k_, used + 1);
        for (unsigned c = 0; c < top; ++c) {
            if (forbidden_[v * k_ + c])
                continue;
            if (++nodes_ > limit_) {
                aborted_ = true;
                return false;
            }
            std::size_t mark = trail_.size();
            bool ok = assign(v, c);
            if (ok && descend(v + 1, std::max(used, c + 1)))
                return true;
            unassign(v, c, mark);
            if (aborted_)
                return false;
        }
        return false;
    }

    auto assign(std::size_t v, unsigned c) -> bool
    {
        color_[v] = c;
        bool ok = true;
        for (auto e : incident_[v]) {
            auto &cnt = count_[e * k_ + c];
            ++cnt;
            auto left = --uncolored_[e];
            if (left == 0 && cnt == h_.edge_size)
                ok = false;
            else if (left == 1 && cnt == h_.edge_size - 1) {
                for (auto u : h_.edges[e])
                    if (color_[u] == k_) {
                        if (forbidden_[u * k_ + c]++ == 0 && wiped(u))
                            ok = false;
                        trail_.emplace_back(u, c);
                        break;
                    }
            }
        }
        return ok;
    }

    void unassign(std::size_t v, unsigned c, std::size_t mark)
    {
        while (trail_.size() > mark) {
            auto [u, col] = trail_.back();
            --forbidden_[u * k_ + col];
            trail_.pop_back();
        }
        for (auto e : incident_[v]) {
            --count_[e * k_ + c];
            ++uncolored_[e];
        }
        color_[v] = k_;
    }

    [[nodiscard]] auto wiped(std::size_t u) const -> bool
    {
        for (unsigned c = 0; c < k_; ++c)
            if (! forbidden_[u * k_ + c])
                return false;
        return true;
    }

    const CopyHypergraph &h_;
    unsigned k_;
    std::uint64_t limit_;
    std::size_t n_;
    std::vector<std::vector<std::size_t>> incident_;
    std::vector<unsigned> color_;
    std::vector<std::uint32_t> forbidden_;
    std::vector<std::size_t> count_;
    std::vector<std::size_t> uncolored_;
    std::vector<std::pair<std::size_t, unsigned>> trail_;
    std::uint64_t nodes_ = 0;
    bool aborted_ = false;
};

} // namespace detail

/// Decides the arrow exactly. A refutation carries the lexicographically least
/// bad colouring among those whose colours first appear in increasing order.
inline auto arrow_check(const ArrowInstance &inst, std::optional<std::uint64_t> node_limit = std::nullopt,
    unsigned threads = 1) -> ArrowResult
{
    if (inst.k == 0)
        throw InputError("k must be at least 1");
    auto h = build_copy_hypergraph(inst, threads);
    ArrowResult result;
    result.edge_size = h.edge_size;
    auto finish = [&](ArrowResult r) {
        r.a_copies = std::move(h.a_copies);
        r.b_copies = std::move(h.b_copies);
        return r;
    };

    if (h.edges.empty()) {
        result.status = ArrowStatus::refuted;
        result.vacuous = true;
        result.coloring.assign(h.a_copies.size(), 0);
        return finish(std::move(result));
    }
    if (h.edge_size <= 1) {
        // an empty or singleton edge is monochromatic under every colouring
        result.status = ArrowStatus::verified;
        result.vacuous = h.edge_size == 0;
        return finish(std::move(result));
    }

    detail::ColoringSearch search(h, inst.k, node_limit.value_or(default_node_limit()));
    auto found = search.run();
    result.nodes = search.nodes();
    if (! found)
        result.status = ArrowStatus::inconclusive;
    else if (*found) {
        result.status = ArrowStatus::refuted;
        result.coloring = search.color();
    }
    else
        result.status = ArrowStatus::verified;
    return finish(std::move(result));
}

enum class WitnessStatus
{
    found,
    exhausted,
    inconclusive
};

struct WitnessResult
{
    WitnessStatus status = WitnessStatus::exhausted;
    std::optional<Structure> c;
    ArrowResult arrow;
    std::size_t candidates = 0;
};

/// The first member of `spec`, by size and then enumeration order, with
/// C -> (B)^A_k verified. Members whose check hits the node limit make the
/// result inconclusive unless a later member is verified.
inline auto witness_search(const ClassSpec &spec, const Structure &a, const Structure &b, unsigned k,
    std::size_t max_vertices, std::optional<std::uint64_t> node_limit = std::nullopt) -> WitnessResult
{
    if (! spec.accepts(a) || ! spec.accepts(b))
        throw InputError("A and B must be members of class '" + spec.name + "'");
    WitnessResult out;
    bool undecided = false;
    for (std::size_t size = 0; size <= max_vertices && out.status != WitnessStatus::found; ++size)
        spec.enumerate(size, [&](const Structure &c) {
            ++out.candidates;
            auto r = arrow_check(ArrowInstance{c, b, a, k, spec.monotone}, node_limit);
            if (r.status == ArrowStatus::inconclusive)
                undecided = true;
            if (r.status != ArrowStatus::verified)
                return true;
            out.status = WitnessStatus::found;
            out.c = c;
            out.arrow = std::move(r);
            return false;
        });
    if (out.status != WitnessStatus::found && undecided)
        out.status = WitnessStatus::inconclusive;
    return out;
}

} // namespace ramseyforge
