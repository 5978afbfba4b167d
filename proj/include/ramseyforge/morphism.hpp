#pragma once

#include <ramseyforge/closure.hpp>
#include <ramseyforge/detail/parallel.hpp>
#include <ramseyforge/structure.hpp>

#include <bit>
#include <cstdint>
#include <functional>
#include <optional>
#include <string_view>
#include <variant>
#include <vector>

namespace ramseyforge {

/// Morphism kinds from weakest to strongest. A monomorphism and a
/// homomorphism-embedding are incomparable; `strongest` prefers the latter.
enum class MorphismKind
{
    homomorphism,
    monomorphism,
    homomorphism_embedding,
    embedding
};

inline auto to_string(MorphismKind kind) -> std::string_view
{
    switch (kind) {
    case MorphismKind::homomorphism: return "homomorphism";
    case MorphismKind::monomorphism: return "monomorphism";
    case MorphismKind::homomorphism_embedding: return "homomorphism-embedding";
    case MorphismKind::embedding: return "embedding";
    }
    return "unknown";
}

/// Properties of a map already known to be a homomorphism.
struct MapProperties
{
    bool monomorphism = false;
    bool homomorphism_embedding = false;
    bool embedding = false;

    [[nodiscard]] auto strongest() const -> MorphismKind
    {
        if (embedding)
            return MorphismKind::embedding;
        if (homomorphism_embedding)
            return MorphismKind::homomorphism_embedding;
        if (monomorphism)
            return MorphismKind::monomorphism;
        return MorphismKind::homomorphism;
    }
};

struct NotHomomorphism
{
    std::string symbol;
    Tuple tuple;
    std::string reason;
};

using Classification = std::variant<MapProperties, NotHomomorphism>;

namespace detail {

inline void check_same_language(const Structure &a, const Structure &b)
{
    if (! same_language(a.language_ptr(), b.language_ptr()))
        throw InputError("structures are over different languages");
}

inline void check_map(const VertexMap &f, const Structure &s, const Structure &t)
{
    check_same_language(s, t);
    if (f.size() != s.size())
        throw InputError("map must assign an image to every source vertex");
    for (auto v : f)
        if (v >= t.size())
            throw InputError("map sends a vertex outside the target");
}

inline auto apply(const VertexMap &f, const Tuple &t) -> Tuple
{
    Tuple out;
    for (auto v : t)
        out.push_back(f[v]);
    return out;
}

inline auto homomorphism_failure(const VertexMap &f, const Structure &s, const Structure &t)
    -> std::optional<NotHomomorphism>
{
    const auto &lang = s.language();
    for (std::size_t r = 0; r < lang.relations().size(); ++r)
        for (const auto &tup : s.relation(r))
            if (! t.has_tuple(r, apply(f, tup)))
                return NotHomomorphism{lang.relations()[r].name, tup, "relation tuple not preserved"};
    for (std::size_t fn = 0; fn < lang.functions().size(); ++fn)
        for (const auto &[dom, range] : s.function(fn)) {
            const auto *image = t.value(fn, apply(f, dom));
            if (! image)
                return NotHomomorphism{lang.functions()[fn].name, dom, "domain tuple not preserved"};
            if (*image != make_set(apply(f, range)))
                return NotHomomorphism{lang.functions()[fn].name, dom, "function value not preserved"};
        }
    return std::nullopt;
}

/// Whether the homomorphism `f` restricted to the closed set `z` is an
/// embedding of the induced substructure.
inline auto embeds_on(const VertexMap &f, const Structure &s, const Structure &t, const std::vector<bool> &z) -> bool
{
    std::vector<std::int64_t> inverse(t.size(), -1);
    for (std::size_t v = 0; v < f.size(); ++v) {
        if (! z[v])
            continue;
        if (inverse[f[v]] >= 0)
            return false;
        inverse[f[v]] = static_cast<std::int64_t>(v);
    }
    auto pull_back = [&](const Tuple &tup, Tuple &out) {
        out.clear();
        for (auto v : tup) {
            if (v >= inverse.size() || inverse[v] < 0)
                return false;
            out.push_back(static_cast<Vertex>(inverse[v]));
        }
        return true;
    };
    const auto &lang = s.language();
    Tuple pre;
    for (std::size_t r = 0; r < lang.relations().size(); ++r)
        for (const auto &tup : t.relation(r))
            if (pull_back(tup, pre) && ! s.has_tuple(r, pre))
                return false;
    for (std::size_t fn = 0; fn < lang.functions().size(); ++fn)
        for (const auto &[dom, range] : t.function(fn))
            if (pull_back(dom, pre) && ! s.value(fn, pre))
                return false;
    return true;
}

inline auto homomorphism_embedding_given_homomorphism(const VertexMap &f, const Structure &s, const Structure &t)
    -> bool
{
    MaskIndex index(s);
    // Irreducible sources admit no proper separation: only the whole matters.
    if (! index.separation(index.full()))
        return embeds_on(f, s, t, std::vector<bool>(s.size(), true));
    if (s.size() > 24)
        throw InputError("homomorphism-embedding check supports at most 24 reducible source vertices");

    std::vector<bool> z(s.size());
    for (MaskIndex::Mask m = 1; m <= index.full(); ++m) {
        if (! index.is_closed(m))
            continue;
        for (std::size_t v = 0; v < s.size(); ++v)
            z[v] = (m >> v) & 1;
        if (embeds_on(f, s, t, z))
            continue;
        if (! index.separation(m))
            return false;
    }
    return true;
}

} // namespace detail

/// Returns the properties of `f : s -> t`, or why it fails to be a homomorphism.
/// The homomorphism-embedding property is tested on every irreducible closed
/// substructure of `s`.
inline auto classify_map(const VertexMap &f, const Structure &s, const Structure &t) -> Classification
{
    detail::check_map(f, s, t);
    if (auto failure = detail::homomorphism_failure(f, s, t))
        return *failure;

    MapProperties props;
    std::vector<bool> seen(t.size(), false);
    props.monomorphism = true;
    for (auto v : f) {
        if (seen[v])
            props.monomorphism = false;
        seen[v] = true;
    }
    props.embedding = props.monomorphism && detail::embeds_on(f, s, t, std::vector<bool>(s.size(), true));
    props.homomorphism_embedding = props.embedding || detail::homomorphism_embedding_given_homomorphism(f, s, t);
    return props;
}

inline auto is_embedding(const VertexMap &f, const Structure &s, const Structure &t) -> bool
{
    auto c = classify_map(f, s, t);
    return std::holds_alternative<MapProperties>(c) && std::get<MapProperties>(c).embedding;
}

inline auto is_homomorphism_embedding(const VertexMap &f, const Structure &s, const Structure &t) -> bool
{
    auto c = classify_map(f, s, t);
    return std::holds_alternative<MapProperties>(c) && std::get<MapProperties>(c).homomorphism_embedding;
}

namespace detail {

class Bits
{
public:
    Bits() = default;
    explicit Bits(std::size_t n, bool value = false) : n_(n), words_((n + 63) / 64, value ? ~std::uint64_t{0} : 0)
    {
        if (value && n % 64)
            words_.back() = (std::uint64_t{1} << (n % 64)) - 1;
    }

    [[nodiscard]] auto test(std::size_t i) const -> bool { return (words_[i / 64] >> (i % 64)) & 1; }
    void reset(std::size_t i) { words_[i / 64] &= ~(std::uint64_t{1} << (i % 64)); }
    void set(std::size_t i) { words_[i / 64] |= std::uint64_t{1} << (i % 64); }
    [[nodiscard]] auto none() const -> bool
    {
        return std::all_of(words_.begin(), words_.end(), [](auto w) { return w == 0; });
    }
    void keep_only(std::size_t i)
    {
        bool had = test(i);
        std::fill(words_.begin(), words_.end(), 0);
        if (had)
            set(i);
    }

    template <typename F>
    void for_each(F &&f) const
    {
        for (std::size_t w = 0; w < words_.size(); ++w)
            for (auto bits = words_[w]; bits; bits &= bits - 1)
                f(w * 64 + static_cast<std::size_t>(std::countr_zero(bits)));
    }

    /// Smallest set index >= from, or size() if none.
    [[nodiscard]] auto next(std::size_t from) const -> std::size_t
    {
        for (std::size_t w = from / 64; w < words_.size(); ++w) {
            auto bits = words_[w];
            if (w == from / 64)
                bits &= ~std::uint64_t{0} << (from % 64);
            if (bits)
                return w * 64 + static_cast<std::size_t>(std::countr_zero(bits));
        }
        return n_;
    }

    [[nodiscard]] auto size() const -> std::size_t { return n_; }

private:
    std::size_t n_ = 0;
    std::vector<std::uint64_t> words_;
};

enum class SearchMode
{
    embedding,
    homomorphism
};

/// Backtracking over maps from a pattern to a target, assigning pattern
/// vertices 0..n-1 in order and target candidates in increasing order, so
/// maps are produced in lexicographic order. Constraints are checked when
/// their last vertex is assigned; tuples with one unassigned vertex prune
/// that vertex's domain (forward checking). Embedding mode also enforces
/// injectivity and reflection of target tuples.
class MapSearch
{
public:
    MapSearch(const Structure &pattern, const Structure &target, SearchMode mode) :
        a_(pattern), b_(target), mode_(mode), n_(pattern.size()), m_(target.size())
    {
        check_same_language(pattern, target);
        build_checks();
        build_target_index();
        build_domains();
    }

    /// Calls `visit(map)` for each map in lexicographic order until it returns
    /// false. `first` restricts the image of vertex 0.
    template <typename Visit>
    void run(Visit &&visit, std::optional<Vertex> first = std::nullopt)
    {
        if (n_ == 0) {
            VertexMap empty;
            visit(empty);
            return;
        }
        auto domains = initial_;
        if (first)
            domains[0].keep_only(*first);
        map_.assign(n_, 0);
        inverse_.assign(m_, -1);
        stop_ = false;
        search(0, domains, visit);
    }

    [[nodiscard]] auto nodes() const -> std::uint64_t { return nodes_; }
    [[nodiscard]] auto first_candidates() const -> std::vector<Vertex>
    {
        std::vector<Vertex> out;
        if (n_ > 0)
            initial_[0].for_each([&](std::size_t b) { out.push_back(static_cast<Vertex>(b)); });
        return out;
    }

private:
    enum class CheckKind
    {
        relation,
        domain,
        value
    };

    struct Check
    {
        CheckKind kind;
        std::size_t symbol;
        Tuple tuple;
        VertexSet range;
    };

    struct Forward
    {
        std::size_t check;
        Vertex target;
    };

    void build_checks()
    {
        complete_at_.assign(n_, {});
        forward_at_.assign(n_, {});
        const auto &lang = a_.language();
        auto add = [&](Check c, const Tuple &support) {
            auto vs = make_set(support);
            std::size_t id = checks_.size();
            checks_.push_back(std::move(c));
            if (vs.empty())
                return;
            complete_at_[vs.back()].push_back(id);
            if (vs.size() >= 2 && checks_[id].kind != CheckKind::value)
                forward_at_[vs[vs.size() - 2]].push_back({id, vs.back()});
            if (vs.size() == 1 && checks_[id].kind != CheckKind::value)
                unary_.push_back({id, vs.back()});
        };
        for (std::size_t r = 0; r < lang.relations().size(); ++r)
            for (const auto &t : a_.relation(r))
                add({CheckKind::relation, r, t, {}}, t);
        for (std::size_t f = 0; f < lang.functions().size(); ++f)
            for (const auto &[dom, range] : a_.function(f)) {
                add({CheckKind::domain, f, dom, {}}, dom);
                Tuple support = dom;
                support.insert(support.end(), range.begin(), range.end());
                add({CheckKind::value, f, dom, range}, support);
            }
    }

    void build_target_index()
    {
        const auto &lang = b_.language();
        rel_incidence_.assign(m_, {});
        dom_incidence_.assign(m_, {});
        for (std::size_t r = 0; r < lang.relations().size(); ++r)
            for (const auto &t : b_.relation(r))
                for (auto v : make_set(t))
                    if (v < m_)
                        rel_incidence_[v].push_back({r, &t});
        for (std::size_t f = 0; f < lang.functions().size(); ++f)
            for (const auto &entry : b_.function(f))
                for (auto v : make_set(entry.first))
                    if (v < m_)
                        dom_incidence_[v].push_back({f, &entry.first});
    }

    // Per-position incidence counts, used as a degree filter for embeddings.
    static auto incidence_profile(const Structure &s) -> std::vector<std::vector<std::uint32_t>>
    {
        const auto &lang = s.language();
        std::size_t width = 0;
        for (const auto &r : lang.relations())
            width += r.arity;
        for (const auto &f : lang.functions())
            width += f.domain_arity;
        std::vector<std::vector<std::uint32_t>> prof(s.size(), std::vector<std::uint32_t>(width, 0));
        std::size_t base = 0;
        for (std::size_t r = 0; r < lang.relations().size(); ++r) {
            for (const auto &t : s.relation(r))
                for (std::size_t p = 0; p < t.size() && p < lang.relations()[r].arity; ++p)
                    if (t[p] < s.size())
                        ++prof[t[p]][base + p];
            base += lang.relations()[r].arity;
        }
        for (std::size_t f = 0; f < lang.functions().size(); ++f) {
            for (const auto &entry : s.function(f))
                for (std::size_t p = 0; p < entry.first.size() && p < lang.functions()[f].domain_arity; ++p)
                    if (entry.first[p] < s.size())
                        ++prof[entry.first[p]][base + p];
            base += lang.functions()[f].domain_arity;
        }
        return prof;
    }

    void build_domains()
    {
        initial_.assign(n_, Bits(m_, true));
        for (const auto &[id, a] : unary_) {
            for (std::size_t b = 0; b < m_; ++b)
                if (initial_[a].test(b) && ! holds(checks_[id], a, static_cast<Vertex>(b)))
                    initial_[a].reset(b);
        }
        if (mode_ != SearchMode::embedding)
            return;

        auto pa = incidence_profile(a_);
        auto pb = incidence_profile(b_);
        for (std::size_t a = 0; a < n_; ++a)
            for (std::size_t b = 0; b < m_; ++b) {
                if (! initial_[a].test(b))
                    continue;
                for (std::size_t p = 0; p < pa[a].size(); ++p)
                    if (pa[a][p] > pb[b][p]) {
                        initial_[a].reset(b);
                        break;
                    }
            }

        // Target tuples over a single vertex must be reflected.
        const auto &lang = b_.language();
        for (std::size_t r = 0; r < lang.relations().size(); ++r)
            for (const auto &t : b_.relation(r)) {
                auto vs = make_set(t);
                if (vs.size() != 1 || vs[0] >= m_)
                    continue;
                for (std::size_t a = 0; a < n_; ++a) {
                    Tuple pre(t.size(), static_cast<Vertex>(a));
                    if (! a_.has_tuple(r, pre))
                        initial_[a].reset(vs[0]);
                }
            }
        for (std::size_t f = 0; f < lang.functions().size(); ++f)
            for (const auto &entry : b_.function(f)) {
                auto vs = make_set(entry.first);
                if (vs.size() != 1 || vs[0] >= m_)
                    continue;
                for (std::size_t a = 0; a < n_; ++a) {
                    Tuple pre(entry.first.size(), static_cast<Vertex>(a));
                    if (! a_.value(f, pre))
                        initial_[a].reset(vs[0]);
                }
            }
    }

    // Evaluates a relation or domain check with `free_vertex` sent to `image`
    // and every other vertex read from the current map.
    [[nodiscard]] auto holds(const Check &c, Vertex free_vertex, Vertex image) const -> bool
    {
        scratch_.clear();
        for (auto v : c.tuple)
            scratch_.push_back(v == free_vertex ? image : map_[v]);
        if (c.kind == CheckKind::relation)
            return b_.has_tuple(c.symbol, scratch_);
        return b_.value(c.symbol, scratch_) != nullptr;
    }

    [[nodiscard]] auto satisfied(const Check &c) const -> bool
    {
        scratch_.clear();
        for (auto v : c.tuple)
            scratch_.push_back(map_[v]);
        switch (c.kind) {
        case CheckKind::relation: return b_.has_tuple(c.symbol, scratch_);
        case CheckKind::domain: return b_.value(c.symbol, scratch_) != nullptr;
        case CheckKind::value: {
            const auto *image = b_.value(c.symbol, scratch_);
            if (! image)
                return false;
            Tuple mapped;
            for (auto v : c.range)
                mapped.push_back(map_[v]);
            return *image == make_set(std::move(mapped));
        }
        }
        return false;
    }

    [[nodiscard]] auto reflected(Vertex b) const -> bool
    {
        Tuple pre;
        auto pull = [&](const Tuple &t) {
            pre.clear();
            for (auto v : t) {
                if (v >= m_ || inverse_[v] < 0)
                    return false;
                pre.push_back(static_cast<Vertex>(inverse_[v]));
            }
            return true;
        };
        for (const auto &[r, t] : rel_incidence_[b])
            if (pull(*t) && ! a_.has_tuple(r, pre))
                return false;
        for (const auto &[f, dom] : dom_incidence_[b])
            if (pull(*dom) && ! a_.value(f, pre))
                return false;
        return true;
    }

    template <typename Visit>
    void search(std::size_t depth, std::vector<Bits> &domains, Visit &visit)
    {
        if (depth == n_) {
            if (! visit(static_cast<const VertexMap &>(map_)))
                stop_ = true;
            return;
        }
        const bool injective = mode_ == SearchMode::embedding;
        for (std::size_t b = domains[depth].next(0); b < m_; b = domains[depth].next(b + 1)) {
            if (injective && inverse_[b] >= 0)
                continue;
            ++nodes_;
            map_[depth] = static_cast<Vertex>(b);
            if (injective)
                inverse_[b] = static_cast<std::int64_t>(depth);

            bool ok = true;
            for (auto id : complete_at_[depth])
                if (! satisfied(checks_[id])) {
                    ok = false;
                    break;
                }
            if (ok && injective)
                ok = reflected(static_cast<Vertex>(b));

            if (ok) {
                std::vector<std::pair<std::size_t, Bits>> saved;
                for (const auto &[id, target] : forward_at_[depth]) {
                    if (std::none_of(saved.begin(), saved.end(), [&](auto &s) { return s.first == target; }))
                        saved.emplace_back(target, domains[target]);
                    auto &dom = domains[target];
                    dom.for_each([&](std::size_t w) {
                        if (! holds(checks_[id], target, static_cast<Vertex>(w)))
                            dom.reset(w);
                    });
                    if (dom.none()) {
                        ok = false;
                        break;
                    }
                }
                if (ok)
                    search(depth + 1, domains, visit);
                for (auto &[target, bits] : saved)
                    domains[target] = std::move(bits);
            }

            if (injective)
                inverse_[b] = -1;
            if (stop_)
                return;
        }
    }

    const Structure &a_;
    const Structure &b_;
    SearchMode mode_;
    std::size_t n_, m_;

    std::vector<Check> checks_;
    std::vector<std::vector<std::size_t>> complete_at_;
    std::vector<std::vector<Forward>> forward_at_;
    std::vector<std::pair<std::size_t, Vertex>> unary_;
    std::vector<std::vector<std::pair<std::size_t, const Tuple *>>> rel_incidence_, dom_incidence_;
    std::vector<Bits> initial_;

    VertexMap map_;
    std::vector<std::int64_t> inverse_;
    mutable Tuple scratch_;
    bool stop_ = false;
    std::uint64_t nodes_ = 0;
};

inline void check_monotone_args(const Structure &a, const Structure &b)
{
    if (! a.language().order_index() || ! b.language().order_index())
        throw InputError("monotone morphisms need a language with an order symbol");
}

} // namespace detail

/// Every embedding of `a` into `b`, in lexicographic order of image tuples.
/// With `monotone` the order relation must be preserved and reflected like
/// any other relation; without it the order relation is ignored.
inline auto enumerate_embeddings(const Structure &a, const Structure &b, bool monotone, unsigned threads = 1)
    -> std::vector<VertexMap>
{
    detail::check_same_language(a, b);
    if (monotone)
        detail::check_monotone_args(a, b);
    const Structure sa = monotone ? a : without_order(a);
    const Structure sb = monotone ? b : without_order(b);

    if (threads <= 1 || sa.size() == 0) {
        std::vector<VertexMap> out;
        detail::MapSearch search(sa, sb, detail::SearchMode::embedding);
        search.run([&](const VertexMap &f) {
            out.push_back(f);
            return true;
        });
        return out;
    }

    auto firsts = detail::MapSearch(sa, sb, detail::SearchMode::embedding).first_candidates();
    std::vector<std::vector<VertexMap>> parts(firsts.size());
    detail::parallel_for(firsts.size(), threads, [&](std::size_t i) {
        detail::MapSearch search(sa, sb, detail::SearchMode::embedding);
        search.run(
            [&](const VertexMap &f) {
                parts[i].push_back(f);
                return true;
            },
            firsts[i]);
    });
    std::vector<VertexMap> out;
    for (auto &p : parts)
        out.insert(out.end(), std::make_move_iterator(p.begin()), std::make_move_iterator(p.end()));
    return out;
}

/// Whether some embedding of `a` into `b` exists.
inline auto embeds(const Structure &a, const Structure &b, bool monotone) -> bool
{
    detail::check_same_language(a, b);
    if (monotone)
        detail::check_monotone_args(a, b);
    const Structure sa = monotone ? a : without_order(a);
    const Structure sb = monotone ? b : without_order(b);
    bool found = false;
    detail::MapSearch(sa, sb, detail::SearchMode::embedding).run([&](const VertexMap &) {
        found = true;
        return false;
    });
    return found;
}

/// The copies of a pattern in a host: distinct image vertex sets of
/// embeddings, sorted, each with its lexicographically least embedding.
struct CopySet
{
    std::vector<VertexSet> copies;
    std::vector<VertexMap> representatives;

    [[nodiscard]] auto size() const -> std::size_t { return copies.size(); }
};

inline auto copies(const Structure &a, const Structure &b, bool monotone, unsigned threads = 1) -> CopySet
{
    auto maps = enumerate_embeddings(a, b, monotone, threads);
    std::vector<std::pair<VertexSet, VertexMap>> keyed;
    keyed.reserve(maps.size());
    for (auto &f : maps)
        keyed.emplace_back(make_set(Tuple(f.begin(), f.end())), std::move(f));
    std::stable_sort(keyed.begin(), keyed.end(), [](const auto &x, const auto &y) { return x.first < y.first; });
    CopySet out;
    for (auto &[set, f] : keyed) {
        if (! out.copies.empty() && out.copies.back() == set)
            continue;
        out.copies.push_back(std::move(set));
        out.representatives.push_back(std::move(f));
    }
    return out;
}

/// Searches for a homomorphism-embedding `s -> t`, in lexicographic order of maps.
inline auto find_homomorphism_embedding(const Structure &s, const Structure &t) -> std::optional<VertexMap>
{
    detail::check_same_language(s, t);
    detail::MaskIndex index(s);
    std::optional<VertexMap> found;
    if (! index.separation(index.full())) {
        // Irreducible sources: homomorphism-embeddings are exactly embeddings.
        detail::MapSearch(s, t, detail::SearchMode::embedding).run([&](const VertexMap &f) {
            found = f;
            return false;
        });
        return found;
    }
    detail::MapSearch(s, t, detail::SearchMode::homomorphism).run([&](const VertexMap &f) {
        if (detail::homomorphism_embedding_given_homomorphism(f, s, t)) {
            found = f;
            return false;
        }
        return true;
    });
    return found;
}

inline auto compose(const VertexMap &first, const VertexMap &second) -> VertexMap
{
    VertexMap out(first.size());
    for (std::size_t i = 0; i < first.size(); ++i)
        out[i] = second.at(first[i]);
    return out;
}

} // namespace ramseyforge
