#pragma once

#include <ramseyforge/language.hpp>

#include <boost/container/flat_map.hpp>
#include <boost/container/flat_set.hpp>
#include <boost/container/small_vector.hpp>

#include <algorithm>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace ramseyforge {

using Vertex = std::uint32_t;

/// Relation tuples and function domain tuples. Small arities stay inline.
using Tuple = boost::container::small_vector<Vertex, 4>;

/// A sorted tuple without repetitions.
using VertexSet = Tuple;

using TupleSet = boost::container::flat_set<Tuple>;
using FunctionTable = boost::container::flat_map<Tuple, VertexSet>;

/// A vertex map given as the image of every source vertex.
using VertexMap = std::vector<Vertex>;

inline auto make_set(Tuple t) -> VertexSet
{
    std::sort(t.begin(), t.end());
    t.erase(std::unique(t.begin(), t.end()), t.end());
    return t;
}

inline auto has_repeats(const Tuple &t) -> bool
{
    for (std::size_t i = 0; i < t.size(); ++i)
        for (std::size_t j = i + 1; j < t.size(); ++j)
            if (t[i] == t[j])
                return true;
    return false;
}

inline auto is_subset(const VertexSet &small, const VertexSet &big) -> bool
{
    return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

inline auto tuple_string(const Tuple &t, char open = '(', char close = ')') -> std::string
{
    std::string s(1, open);
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (i)
            s += ',';
        s += std::to_string(t[i]);
    }
    s += close;
    return s;
}

inline auto set_string(const VertexSet &s) -> std::string { return tuple_string(s, '{', '}'); }

/// A finite L-structure on vertices 0..n-1 with relation tuple sets and
/// partial functions from domain tuples to vertex sets.
///
/// Mutators store what they are given (ranges are sorted); use
/// validate_structure to check arities and the ordered flag.
class Structure
{
public:
    Structure() : Structure(share(Language{}), 0) {}

    Structure(LanguagePtr language, std::size_t vertex_count) :
        language_(std::move(language)),
        size_(vertex_count),
        relations_(language_->relations().size()),
        functions_(language_->functions().size())
    {
    }

    [[nodiscard]] auto language() const -> const Language & { return *language_; }
    [[nodiscard]] auto language_ptr() const -> const LanguagePtr & { return language_; }
    [[nodiscard]] auto size() const -> std::size_t { return size_; }

    [[nodiscard]] auto ordered() const -> bool { return ordered_; }
    void set_ordered(bool flag) { ordered_ = flag; }

    [[nodiscard]] auto relation(std::size_t r) const -> const TupleSet & { return relations_.at(r); }
    [[nodiscard]] auto relation(const std::string &name) const -> const TupleSet &
    {
        return relations_.at(language_->relation(name));
    }
    [[nodiscard]] auto function(std::size_t f) const -> const FunctionTable & { return functions_.at(f); }
    [[nodiscard]] auto function(const std::string &name) const -> const FunctionTable &
    {
        return functions_.at(language_->function(name));
    }

    auto add_tuple(std::size_t r, Tuple t) -> bool { return relations_.at(r).insert(std::move(t)).second; }
    auto add_tuple(const std::string &name, Tuple t) -> bool { return add_tuple(language_->relation(name), std::move(t)); }

    [[nodiscard]] auto has_tuple(std::size_t r, const Tuple &t) const -> bool { return relations_[r].contains(t); }

    /// Defines F(domain) = range; returns false if F(domain) was already defined.
    auto set_value(std::size_t f, Tuple domain, VertexSet range) -> bool
    {
        std::sort(range.begin(), range.end());
        return functions_.at(f).emplace(std::move(domain), std::move(range)).second;
    }
    auto set_value(const std::string &name, Tuple domain, VertexSet range) -> bool
    {
        return set_value(language_->function(name), std::move(domain), std::move(range));
    }

    [[nodiscard]] auto value(std::size_t f, const Tuple &domain) const -> const VertexSet *
    {
        auto it = functions_[f].find(domain);
        return it == functions_[f].end() ? nullptr : &it->second;
    }

    void clear_relation(std::size_t r) { relations_.at(r).clear(); }
    void replace_relation(std::size_t r, TupleSet tuples) { relations_.at(r) = std::move(tuples); }
    void erase_value(std::size_t f, const Tuple &domain) { functions_.at(f).erase(domain); }

    /// Appends a fresh isolated vertex and returns its id.
    auto add_vertex() -> Vertex { return static_cast<Vertex>(size_++); }

    [[nodiscard]] auto tuple_count() const -> std::size_t
    {
        std::size_t n = 0;
        for (const auto &r : relations_)
            n += r.size();
        for (const auto &f : functions_)
            n += f.size();
        return n;
    }

    friend auto operator==(const Structure &a, const Structure &b) -> bool
    {
        return a.size_ == b.size_ && a.ordered_ == b.ordered_ && same_language(a.language_, b.language_) &&
            a.relations_ == b.relations_ && a.functions_ == b.functions_;
    }

private:
    LanguagePtr language_;
    std::size_t size_ = 0;
    bool ordered_ = false;
    std::vector<TupleSet> relations_;
    std::vector<FunctionTable> functions_;
};

struct Violation
{
    std::string symbol;
    std::string tuple;
    std::string message;
};

struct ValidationReport
{
    std::vector<Violation> violations;

    [[nodiscard]] auto ok() const -> bool { return violations.empty(); }
};

/// Ranks of vertices under the order relation if it is a strict linear order
/// on all vertices.
inline auto linear_order_ranks(const Structure &s) -> std::optional<std::vector<std::size_t>>
{
    auto order = s.language().order_index();
    if (! order)
        return std::nullopt;
    const auto &pairs = s.relation(*order);
    const std::size_t n = s.size();
    if (pairs.size() != n * (n - (n ? 1 : 0)) / 2)
        return std::nullopt;
    std::vector<std::size_t> below(n, 0);
    for (const auto &p : pairs) {
        if (p.size() != 2 || p[0] >= n || p[1] >= n || p[0] == p[1])
            return std::nullopt;
        ++below[p[1]];
    }
    // Exactly n(n-1)/2 irreflexive pairs with in-degrees 0..n-1 and every
    // pair comparable in the right direction is a strict total order.
    std::vector<std::size_t> seen(n, 0);
    for (auto b : below) {
        if (b >= n || seen[b]++)
            return std::nullopt;
    }
    for (const auto &p : pairs)
        if (below[p[0]] >= below[p[1]])
            return std::nullopt;
    return below;
}

inline auto is_linear_order(const Structure &s) -> bool { return linear_order_ranks(s).has_value(); }

/// Replaces the order relation by the strict order listing `sequence` from
/// least to greatest, and sets the ordered flag.
inline void set_linear_order(Structure &s, const std::vector<Vertex> &sequence)
{
    auto order = s.language().order_index();
    if (! order)
        throw InputError("language has no order symbol");
    if (sequence.size() != s.size())
        throw InputError("order sequence must list every vertex once");
    std::vector<bool> seen(sequence.size(), false);
    for (auto v : sequence) {
        if (v >= sequence.size() || seen[v])
            throw InputError("order sequence must list every vertex once");
        seen[v] = true;
    }
    std::vector<Tuple> pairs;
    pairs.reserve(sequence.size() * sequence.size() / 2);
    for (std::size_t i = 0; i < sequence.size(); ++i)
        for (std::size_t j = i + 1; j < sequence.size(); ++j)
            pairs.push_back(Tuple{sequence[i], sequence[j]});
    std::sort(pairs.begin(), pairs.end());
    s.replace_relation(*order, TupleSet(boost::container::ordered_unique_range, pairs.begin(), pairs.end()));
    s.set_ordered(true);
}

/// Orders vertices by id.
inline void set_id_order(Structure &s)
{
    std::vector<Vertex> seq(s.size());
    for (std::size_t i = 0; i < seq.size(); ++i)
        seq[i] = static_cast<Vertex>(i);
    set_linear_order(s, seq);
}

/// The same structure with the order relation emptied and the ordered flag
/// cleared; used for order-forgetting (non-monotone) morphism questions.
inline auto without_order(Structure s) -> Structure
{
    if (auto order = s.language().order_index())
        s.clear_relation(*order);
    s.set_ordered(false);
    return s;
}

inline auto validate_structure(const Structure &s) -> ValidationReport
{
    ValidationReport report;
    const auto &lang = s.language();
    const auto n = s.size();
    auto in_range = [n](const Tuple &t) {
        return std::all_of(t.begin(), t.end(), [n](Vertex v) { return v < n; });
    };

    for (std::size_t r = 0; r < lang.relations().size(); ++r) {
        const auto &sym = lang.relations()[r];
        for (const auto &t : s.relation(r)) {
            if (t.size() != sym.arity)
                report.violations.push_back({sym.name, tuple_string(t), "arity mismatch"});
            else if (! in_range(t))
                report.violations.push_back({sym.name, tuple_string(t), "vertex out of range"});
        }
    }

    for (std::size_t f = 0; f < lang.functions().size(); ++f) {
        const auto &sym = lang.functions()[f];
        for (const auto &[dom, range] : s.function(f)) {
            const char *problem = nullptr;
            if (dom.size() != sym.domain_arity)
                problem = "domain arity mismatch";
            else if (range.size() != sym.range_arity || has_repeats(range))
                problem = "range size";
            else if (! in_range(dom) || ! in_range(range))
                problem = "vertex out of range";
            if (problem)
                report.violations.push_back({sym.name, tuple_string(dom) + " -> " + set_string(range), problem});
        }
    }

    if (s.ordered()) {
        if (! lang.order_index())
            report.violations.push_back({"", "", "ordered flag set but language has no order symbol"});
        else if (! is_linear_order(s))
            report.violations.push_back({*lang.order_name(), "", "order relation is not a linear order"});
    }
    return report;
}

} // namespace ramseyforge
