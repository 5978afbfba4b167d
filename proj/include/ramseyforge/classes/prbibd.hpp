#pragma once

#include <ramseyforge/class_spec.hpp>

#include <map>
#include <mutex>
#include <set>

namespace ramseyforge {

/// A partial resolvable design on points 0..point_count-1: blocks of size k
/// grouped into resolution classes of pairwise disjoint blocks, with every
/// pair of points in at most one block. Classes may be empty.
struct ResolvableDesign
{
    std::size_t point_count = 0;
    unsigned k = 3;
    std::vector<std::vector<VertexSet>> classes;

    auto operator==(const ResolvableDesign &) const -> bool = default;
};

/// Sorts blocks inside each class; class order is kept.
inline auto canonical(ResolvableDesign d) -> ResolvableDesign
{
    for (auto &c : d.classes) {
        for (auto &b : c)
            b = make_set(b);
        std::sort(c.begin(), c.end());
    }
    return d;
}

inline void check_design(const ResolvableDesign &d)
{
    if (d.k < 3)
        throw ClassError("block size must exceed 2");
    std::map<std::pair<Vertex, Vertex>, VertexSet> pair_owner;
    for (std::size_t i = 0; i < d.classes.size(); ++i) {
        std::set<Vertex> used;
        for (const auto &raw : d.classes[i]) {
            auto b = make_set(raw);
            if (b.size() != d.k || raw.size() != d.k)
                throw ClassError("block " + set_string(raw) + " does not have " + std::to_string(d.k) + " points");
            if (b.back() >= d.point_count)
                throw ClassError("block " + set_string(raw) + " uses a point out of range");
            for (auto v : b)
                if (! used.insert(v).second)
                    throw ClassError("class " + std::to_string(i) + " has two blocks through point " + std::to_string(v));
            for (std::size_t x = 0; x < b.size(); ++x)
                for (std::size_t y = x + 1; y < b.size(); ++y) {
                    auto [it, fresh] = pair_owner.emplace(std::pair{b[x], b[y]}, b);
                    if (! fresh)
                        throw ClassError("pair {" + std::to_string(b[x]) + "," + std::to_string(b[y]) +
                            "} lies in blocks " + set_string(it->second) + " and " + set_string(b));
                }
        }
    }
}

/// Language {le, S unary, F1 with d = 2 and r = k, F2 with d = k and r = 1}.
inline auto prbibd_language(unsigned k) -> LanguagePtr
{
    if (k < 3)
        throw InputError("block size must exceed 2");
    static std::mutex mutex;
    static std::map<unsigned, LanguagePtr> cache;
    std::lock_guard lock(mutex);
    auto &slot = cache[k];
    if (! slot) {
        Language l;
        l.add_relation("S", 1).add_relation("le", 2).set_order("le");
        l.add_function("F1", 2, k).add_function("F2", k, 1);
        slot = share(std::move(l));
    }
    return slot;
}

/// Points first, then one label vertex per class. F1 sends both orders of a
/// pair to its block and F2 sends every ordering of a block to its label.
inline auto prbibd_encode(const ResolvableDesign &input) -> Structure
{
    check_design(input);
    auto d = canonical(input);
    Structure s(prbibd_language(d.k), d.point_count + d.classes.size());
    auto f1 = s.language().function("F1");
    auto f2 = s.language().function("F2");
    for (std::size_t i = 0; i < d.classes.size(); ++i) {
        auto label = static_cast<Vertex>(d.point_count + i);
        s.add_tuple("S", Tuple{label});
        for (const auto &b : d.classes[i]) {
            for (auto &t : detail::distinct_tuples(b, 2))
                s.set_value(f1, std::move(t), b);
            for (auto &t : detail::orderings(b))
                s.set_value(f2, std::move(t), VertexSet{label});
        }
    }
    set_id_order(s);
    return s;
}

namespace detail {

inline auto prbibd_parameter(const Structure &s) -> std::optional<unsigned>
{
    const auto &fs = s.language().functions();
    if (fs.size() != 2 || fs[0].name != "F1" || fs[1].name != "F2" || fs[0].domain_arity != 2)
        return std::nullopt;
    return fs[0].range_arity;
}

} // namespace detail

/// Checks the design axioms: (1) linear order, (2) F2 domains avoid labels,
/// (3) F2 values are labels, (4) a pair lies in its block, (5) every pair of a
/// block maps to the block, (6) F2 is defined exactly on the blocks, (7) blocks
/// with one label are disjoint. Axiom 0 also covers F1, F2 being symmetric on
/// tuples of distinct vertices.
inline auto prbibd_validate(const Structure &s) -> MembershipReport
{
    MembershipReport report;
    auto k = detail::prbibd_parameter(s);
    if (! k || *k < 3 || ! s.language().relation_index("S")) {
        report.fail(0, "not a design language {le, S, F1, F2}");
        return report;
    }
    if (! detail::check_shape(s, prbibd_language(*k), report, 1))
        return report;

    const auto &labels = s.relation("S");
    auto is_label = [&](Vertex v) { return labels.contains(Tuple{v}); };
    const auto &f1 = s.function("F1");
    const auto &f2 = s.function("F2");
    detail::check_symmetric(f1, "F1", report, 0);
    detail::check_symmetric(f2, "F2", report, 0);

    std::set<VertexSet> blocks, f2_domains;
    for (const auto &[dom, range] : f1) {
        blocks.insert(range);
        if (! is_subset(make_set(dom), range))
            report.fail(4, "pair " + tuple_string(dom) + " is not inside its block " + set_string(range));
        for (const auto &other : detail::distinct_tuples(range, 2)) {
            auto it = f1.find(other);
            if (it == f1.end() || it->second != range) {
                report.fail(5, "pair " + tuple_string(other) + " of block " + set_string(range) + " does not map to it");
                break;
            }
        }
    }
    std::map<Vertex, std::vector<VertexSet>> by_label;
    for (const auto &[dom, range] : f2) {
        auto set = make_set(dom);
        f2_domains.insert(set);
        if (std::any_of(dom.begin(), dom.end(), is_label))
            report.fail(2, "F2 domain " + tuple_string(dom) + " contains a label vertex");
        if (! is_label(range.front()))
            report.fail(3, "F2 value " + set_string(range) + " is not a label");
        if (std::is_sorted(dom.begin(), dom.end()))
            by_label[range.front()].push_back(set);
    }
    if (blocks != f2_domains)
        report.fail(6, "F2 is not defined exactly on the blocks");
    for (const auto &[label, members] : by_label)
        for (std::size_t i = 0; i < members.size(); ++i)
            for (std::size_t j = i + 1; j < members.size(); ++j) {
                VertexSet common;
                std::set_intersection(members[i].begin(), members[i].end(), members[j].begin(), members[j].end(),
                    std::back_inserter(common));
                if (! common.empty())
                    report.fail(7, "blocks " + set_string(members[i]) + " and " + set_string(members[j]) +
                        " share label " + std::to_string(label) + " but meet");
            }
    return report;
}

/// Decodes a member: points and labels are numbered by their order ranks.
inline auto prbibd_decode(const Structure &s) -> ResolvableDesign
{
    auto report = prbibd_validate(s);
    if (! report.ok())
        throw ClassError("not a resolvable design: " + report.violations.front().message);
    auto ranks = *linear_order_ranks(s);
    std::vector<Vertex> by_rank(s.size());
    for (Vertex v = 0; v < s.size(); ++v)
        by_rank[ranks[v]] = v;
    const auto &labels = s.relation("S");
    std::vector<Vertex> index(s.size(), 0);
    Vertex points = 0, classes = 0;
    for (auto v : by_rank)
        index[v] = labels.contains(Tuple{v}) ? classes++ : points++;

    ResolvableDesign d{points, *detail::prbibd_parameter(s), std::vector<std::vector<VertexSet>>(classes)};
    for (const auto &[dom, range] : s.function("F2")) {
        if (! std::is_sorted(dom.begin(), dom.end()))
            continue;
        Tuple block;
        for (auto v : dom)
            block.push_back(index[v]);
        d.classes[index[range.front()]].push_back(make_set(block));
    }
    return canonical(std::move(d));
}

/// Ordered partial resolvable designs with block size k.
inline auto prbibd_class(unsigned k) -> ClassSpec
{
    ClassSpec spec;
    spec.name = "prbibd";
    spec.language = prbibd_language(k);
    spec.validate = prbibd_validate;
    // two blocks with one label meeting in a vertex stay that way in any extension
    spec.persistent_axioms = {7};
    spec.enumerate = [k](std::size_t n, const std::function<bool(const Structure &)> &visit) {
        if (n >= 32)
            throw InputError("design enumeration is limited to 31 vertices");
        for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << n); ++mask) {
            std::vector<Vertex> points, labels;
            for (Vertex v = 0; v < n; ++v)
                ((mask >> v) & 1 ? labels : points).push_back(v);
            std::vector<VertexSet> candidates;
            for (const auto &idx : detail::k_subsets(points.size(), k)) {
                VertexSet b;
                for (auto i : idx)
                    b.push_back(points[i]);
                candidates.push_back(b);
            }
            std::vector<std::pair<VertexSet, Vertex>> chosen;
            bool stop = false;
            auto fits = [&](const VertexSet &b, Vertex label) {
                for (const auto &[other, l] : chosen) {
                    VertexSet common;
                    std::set_intersection(b.begin(), b.end(), other.begin(), other.end(), std::back_inserter(common));
                    if (common.size() >= 2 || (l == label && ! common.empty()))
                        return false;
                }
                return true;
            };
            std::function<void(std::size_t)> rec = [&](std::size_t i) {
                if (stop)
                    return;
                if (i == candidates.size()) {
                    Structure s(prbibd_language(k), n);
                    for (auto l : labels)
                        s.add_tuple("S", Tuple{l});
                    for (const auto &[b, l] : chosen) {
                        for (auto &t : detail::distinct_tuples(b, 2))
                            s.set_value("F1", std::move(t), b);
                        for (auto &t : detail::orderings(b))
                            s.set_value("F2", std::move(t), VertexSet{l});
                    }
                    set_id_order(s);
                    stop = ! visit(s);
                    return;
                }
                rec(i + 1);
                for (auto l : labels)
                    if (fits(candidates[i], l)) {
                        chosen.emplace_back(candidates[i], l);
                        rec(i + 1);
                        chosen.pop_back();
                    }
            };
            rec(0);
            if (stop)
                return;
        }
    };
    return spec;
}

} // namespace ramseyforge
