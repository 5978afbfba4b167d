#pragma once

#include <ramseyforge/class_spec.hpp>
#include <ramseyforge/completion.hpp>

#include <map>
#include <set>
#include <mutex>

namespace ramseyforge {

/// An equivalence on the k-subsets of the ordered point set {0..size-1}.
struct EquivalenceStructure
{
    std::size_t size = 0;
    unsigned k = 1;
    std::vector<std::vector<VertexSet>> classes;

    auto operator==(const EquivalenceStructure &) const -> bool = default;
};

/// Sorts every class and orders classes by their least k-subset.
inline auto canonical(EquivalenceStructure e) -> EquivalenceStructure
{
    for (auto &c : e.classes) {
        for (auto &m : c)
            m = make_set(m);
        std::sort(c.begin(), c.end());
    }
    std::erase_if(e.classes, [](const auto &c) { return c.empty(); });
    std::sort(e.classes.begin(), e.classes.end());
    return e;
}

/// Throws ClassError unless the classes partition the k-subsets.
inline void check_equivalence(const EquivalenceStructure &e)
{
    if (e.k == 0)
        throw ClassError("k must be positive");
    std::set<VertexSet> seen;
    for (const auto &c : e.classes) {
        if (c.empty())
            throw ClassError("empty equivalence class");
        for (const auto &raw : c) {
            auto m = make_set(raw);
            if (m.size() != e.k || raw.size() != e.k)
                throw ClassError(set_string(raw) + " is not a " + std::to_string(e.k) + "-subset");
            if (m.back() >= e.size)
                throw ClassError(set_string(raw) + " uses a point out of range");
            if (! seen.insert(m).second)
                throw ClassError(set_string(m) + " appears in two classes");
        }
    }
    if (seen.size() != detail::k_subsets(e.size, e.k).size())
        throw ClassError("classes do not cover every k-subset");
}

/// Language {R unary, le, F with d = k and r = 1}.
inline auto leq_language(unsigned k) -> LanguagePtr
{
    if (k == 0)
        throw InputError("k must be positive");
    static std::mutex mutex;
    static std::map<unsigned, LanguagePtr> cache;
    std::lock_guard lock(mutex);
    auto &slot = cache[k];
    if (! slot) {
        Language l;
        l.add_relation("R", 1).add_relation("le", 2).set_order("le").add_function("F", k, 1);
        slot = share(std::move(l));
    }
    return slot;
}

/// Labelled encoding: points 0..size-1 first, then one label vertex per class
/// in canonical class order. F sends every ordering of a k-subset to its label.
inline auto eq_to_leq(const EquivalenceStructure &input) -> Structure
{
    check_equivalence(input);
    auto e = canonical(input);
    Structure s(leq_language(e.k), e.size + e.classes.size());
    auto f = s.language().function("F");
    auto r = s.language().relation("R");
    for (std::size_t i = 0; i < e.classes.size(); ++i) {
        auto label = static_cast<Vertex>(e.size + i);
        s.add_tuple(r, Tuple{label});
        for (const auto &m : e.classes[i])
            for (auto &t : detail::orderings(m))
                s.set_value(f, std::move(t), VertexSet{label});
    }
    set_id_order(s);
    return s;
}

namespace detail {

inline auto leq_parameter(const Structure &s) -> std::optional<unsigned>
{
    const auto &fs = s.language().functions();
    if (fs.size() != 1 || fs[0].name != "F" || fs[0].range_arity != 1)
        return std::nullopt;
    return fs[0].domain_arity;
}

} // namespace detail

/// Checks the labelled k-equivalence axioms inside ordered structures:
/// (1) label vertices occur in no domain tuple, (2) domain tuples have distinct
/// entries, (3) values are labels, (4) F is invariant under reordering.
/// `total` reports whether every k-set of non-label vertices has a label.
inline auto leq_validate(const Structure &s) -> MembershipReport
{
    MembershipReport report;
    auto k = detail::leq_parameter(s);
    if (! k || ! s.language().relation_index("R")) {
        report.fail(0, "not a labelled equivalence language {R, le, F}");
        return report;
    }
    if (! detail::check_shape(s, leq_language(*k), report, 0))
        return report;

    const auto &labels = s.relation("R");
    auto is_label = [&](Vertex v) { return labels.contains(Tuple{v}); };
    const auto &table = s.function("F");
    for (const auto &[dom, range] : table) {
        if (std::any_of(dom.begin(), dom.end(), is_label))
            report.fail(1, "domain tuple " + tuple_string(dom) + " contains a label vertex");
        if (has_repeats(dom))
            report.fail(2, "domain tuple " + tuple_string(dom) + " repeats a vertex");
        if (! is_label(range.front()))
            report.fail(3, "value " + set_string(range) + " of " + tuple_string(dom) + " is not a label");
        for (const auto &other : detail::orderings(make_set(dom))) {
            auto it = table.find(other);
            if (it == table.end() || it->second != range) {
                report.fail(4, "reordering " + tuple_string(other) + " of " + tuple_string(dom) + " has another value");
                break;
            }
        }
    }

    if (report.ok()) {
        std::size_t points = s.size() - labels.size();
        std::size_t subsets = detail::k_subsets(points, *k).size();
        std::size_t perms = 1;
        for (unsigned i = 2; i <= *k; ++i)
            perms *= i;
        report.total = table.size() == subsets * perms;
    }
    return report;
}

/// Decodes a total labelled equivalence in which every label is used.
inline auto leq_to_eq(const Structure &s) -> EquivalenceStructure
{
    auto report = leq_validate(s);
    if (! report.ok())
        throw ClassError("not a labelled equivalence: " + report.violations.front().message);
    if (! report.total)
        throw ClassError("labelling is partial");
    auto ranks = *linear_order_ranks(s);
    const auto &labels = s.relation("R");

    std::vector<Vertex> by_rank(s.size());
    for (Vertex v = 0; v < s.size(); ++v)
        by_rank[ranks[v]] = v;
    std::vector<Vertex> point_index(s.size(), 0);
    std::vector<Vertex> label_vertices;
    Vertex next = 0;
    for (auto v : by_rank) {
        if (labels.contains(Tuple{v}))
            label_vertices.push_back(v);
        else
            point_index[v] = next++;
    }

    EquivalenceStructure e{next, *detail::leq_parameter(s), {}};
    std::map<Vertex, std::vector<VertexSet>> grouped;
    for (auto v : label_vertices)
        grouped[v];
    for (const auto &[dom, range] : s.function("F")) {
        Tuple mapped;
        for (auto v : dom)
            mapped.push_back(point_index[v]);
        if (std::is_sorted(mapped.begin(), mapped.end()))
            grouped[range.front()].push_back(make_set(mapped));
    }
    for (auto &[label, members] : grouped) {
        if (members.empty())
            throw ClassError("label vertex " + std::to_string(label) + " is unused");
        e.classes.push_back(std::move(members));
    }
    return canonical(std::move(e));
}

namespace detail {

/// Every ordered labelled k-equivalence on n vertices in id order: a label set
/// and, for each k-set of points, either no label or one of the labels.
inline void enumerate_leq(unsigned k, std::size_t n, const std::function<bool(const Structure &)> &visit)
{
    if (n >= 32)
        throw InputError("labelled equivalence enumeration is limited to 31 vertices");
    auto lang = leq_language(k);
    auto f = lang->function("F");
    auto r = lang->relation("R");
    for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << n); ++mask) {
        std::vector<Vertex> points, labels;
        for (Vertex v = 0; v < n; ++v)
            ((mask >> v) & 1 ? labels : points).push_back(v);
        std::vector<VertexSet> sets;
        for (const auto &idx : k_subsets(points.size(), k)) {
            VertexSet m;
            for (auto i : idx)
                m.push_back(points[i]);
            sets.push_back(m);
        }
        std::vector<std::size_t> choice(sets.size(), 0);
        while (true) {
            Structure s(lang, n);
            for (auto v : labels)
                s.add_tuple(r, Tuple{v});
            for (std::size_t i = 0; i < sets.size(); ++i)
                if (choice[i])
                    for (auto &t : orderings(sets[i]))
                        s.set_value(f, std::move(t), VertexSet{labels[choice[i] - 1]});
            set_id_order(s);
            if (! visit(s))
                return;
            std::size_t i = 0;
            while (i < choice.size() && choice[i] == labels.size())
                choice[i++] = 0;
            if (i == choice.size())
                break;
            ++choice[i];
        }
    }
}

} // namespace detail

/// Labelled k-equivalence completion: linearize the order and keep F(t) = {v}
/// only when t and v lie inside one copy of `b`.
inline auto leq_completion(const Structure &c, const Structure &b, const Structure *c0) -> CompletionResult
{
    if (! detail::leq_parameter(c))
        throw InputError("leq completion needs a labelled equivalence language");
    return detail::copy_restricted_completion(c, b, c0);
}

/// Ordered labelled k-equivalences with partial labellings.
inline auto leq_class(unsigned k) -> ClassSpec
{
    ClassSpec spec;
    spec.name = "leq";
    spec.language = leq_language(k);
    spec.validate = leq_validate;
    spec.enumerate = [k](std::size_t n, const std::function<bool(const Structure &)> &visit) {
        detail::enumerate_leq(k, n, visit);
    };
    spec.complete = leq_completion;
    return spec;
}

/// Encodings of k-equivalences: total labellings with every label used.
inline auto eq_class(unsigned k) -> ClassSpec
{
    ClassSpec spec;
    spec.name = "eq";
    spec.language = leq_language(k);
    spec.validate = [](const Structure &s) {
        auto report = leq_validate(s);
        if (! report.ok())
            return report;
        if (! report.total)
            report.fail(5, "some k-set of points has no label");
        std::set<Vertex> used;
        for (const auto &[dom, range] : s.function("F"))
            used.insert(range.front());
        for (const auto &t : s.relation("R"))
            if (! used.contains(t[0]))
                report.fail(6, "label vertex " + std::to_string(t[0]) + " is unused");
        return report;
    };
    spec.enumerate = [k, validate = spec.validate](std::size_t n, const std::function<bool(const Structure &)> &visit) {
        detail::enumerate_leq(k, n, [&](const Structure &s) { return validate(s).ok() ? visit(s) : true; });
    };
    return spec;
}

} // namespace ramseyforge
