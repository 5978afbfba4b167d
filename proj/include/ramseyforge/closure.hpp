#pragma once

#include <ramseyforge/structure.hpp>

#include <bit>
#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

namespace ramseyforge {

/// A closed substructure together with the original id of each of its vertices.
struct Substructure
{
    Structure structure;
    std::vector<Vertex> vertices;
};

/// A function entry whose domain lies inside the requested set but whose
/// value does not.
struct NotClosed
{
    std::string symbol;
    Tuple domain;
    VertexSet range;
};

/// Nonempty disjoint X and Y with separator A0 = V \ (X u Y): nothing meets
/// both X and Y, and A0 u X, A0 u Y are closed.
struct Separation
{
    VertexSet x, y, a0;
};

struct Irreducibility
{
    bool irreducible = true;
    std::optional<Separation> witness;
};

namespace detail {

inline void check_subset(const Structure &s, const VertexSet &subset)
{
    for (auto v : subset)
        if (v >= s.size())
            throw InputError("vertex " + std::to_string(v) + " is not a vertex of the structure");
}

/// Builds the structure induced on `subset` (sorted, unique), renumbering by
/// rank. Entries whose domain lies inside but whose value does not are
/// reported rather than copied.
inline auto induce(const Structure &s, const VertexSet &subset) -> std::variant<Substructure, NotClosed>
{
    std::vector<std::int64_t> rank(s.size(), -1);
    for (std::size_t i = 0; i < subset.size(); ++i)
        rank[subset[i]] = static_cast<std::int64_t>(i);

    auto inside = [&](const Tuple &t) {
        return std::all_of(t.begin(), t.end(), [&](Vertex v) { return v < rank.size() && rank[v] >= 0; });
    };
    auto renumber = [&](const Tuple &t) {
        Tuple out;
        for (auto v : t)
            out.push_back(static_cast<Vertex>(rank[v]));
        return out;
    };

    Structure out(s.language_ptr(), subset.size());
    const auto &lang = s.language();
    for (std::size_t r = 0; r < lang.relations().size(); ++r)
        for (const auto &t : s.relation(r))
            if (inside(t))
                out.add_tuple(r, renumber(t));
    for (std::size_t f = 0; f < lang.functions().size(); ++f)
        for (const auto &[dom, range] : s.function(f)) {
            if (! inside(dom))
                continue;
            if (! inside(range))
                return NotClosed{lang.functions()[f].name, dom, range};
            out.set_value(f, renumber(dom), renumber(range));
        }
    out.set_ordered(s.ordered());
    return Substructure{std::move(out), std::vector<Vertex>(subset.begin(), subset.end())};
}

/// Bitmask view of a structure with at most 64 vertices: one mask per
/// relation tuple and per function entry (domain and domain-plus-value).
class MaskIndex
{
public:
    using Mask = std::uint64_t;

    explicit MaskIndex(const Structure &s) : n_(s.size())
    {
        if (n_ > 64)
            throw InputError("exhaustive closed-set search supports at most 64 vertices");
        adjacency_.assign(n_, 0);
        const auto &lang = s.language();
        for (std::size_t r = 0; r < lang.relations().size(); ++r)
            for (const auto &t : s.relation(r))
                add_clique(mask_of(t));
        for (std::size_t f = 0; f < lang.functions().size(); ++f)
            for (const auto &[dom, range] : s.function(f)) {
                Mask d = mask_of(dom);
                Mask all = d | mask_of(range);
                entries_.push_back({d, all});
                add_clique(all);
            }
    }

    [[nodiscard]] auto size() const -> std::size_t { return n_; }
    [[nodiscard]] auto full() const -> Mask { return n_ == 64 ? ~Mask{0} : ((Mask{1} << n_) - 1); }

    [[nodiscard]] auto is_closed(Mask set) const -> bool
    {
        for (const auto &e : entries_)
            if ((e.domain & ~set) == 0 && (e.all & ~set) != 0)
                return false;
        return true;
    }

    [[nodiscard]] auto closure(Mask set) const -> Mask
    {
        bool changed = true;
        while (changed) {
            changed = false;
            for (const auto &e : entries_)
                if ((e.domain & ~set) == 0 && (e.all & ~set) != 0) {
                    set |= e.all;
                    changed = true;
                }
        }
        return set;
    }

    /// Connected component of `start` in the co-occurrence graph restricted to `within`.
    [[nodiscard]] auto component(unsigned start, Mask within) const -> Mask
    {
        Mask seen = Mask{1} << start, frontier = seen;
        while (frontier) {
            unsigned v = static_cast<unsigned>(std::countr_zero(frontier));
            frontier &= frontier - 1;
            Mask next = adjacency_[v] & within & ~seen;
            seen |= next;
            frontier |= next;
        }
        return seen;
    }

    /// Decides irreducibility of the closed substructure on `set`.
    [[nodiscard]] auto separation(Mask set) const -> std::optional<std::pair<Mask, Mask>>
    {
        // A complete co-occurrence graph leaves no room for a separation.
        bool complete = true;
        for (Mask m = set; m && complete; m &= m - 1) {
            unsigned v = static_cast<unsigned>(std::countr_zero(m));
            if ((adjacency_[v] & set) != (set & ~(Mask{1} << v)))
                complete = false;
        }
        if (complete)
            return std::nullopt;

        // Enumerate separators A0 as submasks of `set` in increasing numeric order.
        Mask a0 = 0;
        while (true) {
            Mask rest = set & ~a0;
            if (std::popcount(rest) >= 2 && separator_closed(a0, set)) {
                unsigned first = static_cast<unsigned>(std::countr_zero(rest));
                Mask x = component(first, rest);
                if (x != rest)
                    return std::pair{a0, x};
            }
            if (a0 == set)
                break;
            a0 = (a0 - set) & set;
        }
        return std::nullopt;
    }

    static auto mask_of(const Tuple &t) -> Mask
    {
        Mask m = 0;
        for (auto v : t)
            m |= Mask{1} << v;
        return m;
    }

    static auto set_of(Mask m) -> VertexSet
    {
        VertexSet out;
        for (; m; m &= m - 1)
            out.push_back(static_cast<Vertex>(std::countr_zero(m)));
        return out;
    }

private:
    struct Entry
    {
        Mask domain, all;
    };

    void add_clique(Mask m)
    {
        for (Mask it = m; it; it &= it - 1) {
            unsigned v = static_cast<unsigned>(std::countr_zero(it));
            adjacency_[v] |= m & ~(Mask{1} << v);
        }
    }

    // Within the substructure on `set`, A0 must absorb the values of entries
    // whose domain lies in A0.
    [[nodiscard]] auto separator_closed(Mask a0, Mask set) const -> bool
    {
        for (const auto &e : entries_)
            if ((e.all & ~set) == 0 && (e.domain & ~a0) == 0 && (e.all & ~a0) != 0)
                return false;
        return true;
    }

    std::size_t n_;
    std::vector<Mask> adjacency_;
    std::vector<Entry> entries_;
};

} // namespace detail

/// Least superset of `subset` closed under every function entry.
inline auto closure(const Structure &s, const VertexSet &subset) -> VertexSet
{
    detail::check_subset(s, subset);
    std::vector<bool> in(s.size(), false);
    for (auto v : subset)
        in[v] = true;
    const auto &lang = s.language();
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t f = 0; f < lang.functions().size(); ++f)
            for (const auto &[dom, range] : s.function(f)) {
                if (! std::all_of(dom.begin(), dom.end(), [&](Vertex v) { return v < in.size() && in[v]; }))
                    continue;
                for (auto v : range)
                    if (v < in.size() && ! in[v]) {
                        in[v] = true;
                        changed = true;
                    }
            }
    }
    VertexSet out;
    for (std::size_t v = 0; v < in.size(); ++v)
        if (in[v])
            out.push_back(static_cast<Vertex>(v));
    return out;
}

inline auto is_closed(const Structure &s, const VertexSet &subset) -> bool
{
    return closure(s, make_set(subset)) == make_set(subset);
}

/// The substructure induced on `subset`, or the entry witnessing that
/// `subset` is not closed.
inline auto induced_closed_substructure(const Structure &s, const VertexSet &subset)
    -> std::variant<Substructure, NotClosed>
{
    auto set = make_set(subset);
    detail::check_subset(s, set);
    return detail::induce(s, set);
}

/// Decides whether `s` is a free amalgam of two proper closed substructures,
/// by exhaustive search over closed separators.
inline auto is_irreducible(const Structure &s) -> Irreducibility
{
    detail::MaskIndex index(s);
    auto sep = index.separation(index.full());
    if (! sep)
        return {};
    auto [a0, x] = *sep;
    auto y = index.full() & ~a0 & ~x;
    return {false,
        Separation{detail::MaskIndex::set_of(x), detail::MaskIndex::set_of(y), detail::MaskIndex::set_of(a0)}};
}

} // namespace ramseyforge
