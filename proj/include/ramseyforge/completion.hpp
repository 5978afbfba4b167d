#pragma once

#include <ramseyforge/class_spec.hpp>
#include <ramseyforge/closure.hpp>
#include <ramseyforge/morphism.hpp>

#include <functional>
#include <optional>
#include <queue>
#include <string>
#include <vector>

namespace ramseyforge {

/// The order relation of a structure to be completed contains a cycle.
class CyclicOrder : public InputError
{
public:
    explicit CyclicOrder(std::vector<Vertex> cycle) :
        InputError("order relation is cyclic: " + describe(cycle)), cycle_(std::move(cycle))
    {
    }

    [[nodiscard]] auto cycle() const -> const std::vector<Vertex> & { return cycle_; }

private:
    static auto describe(const std::vector<Vertex> &cycle) -> std::string
    {
        std::string s;
        for (auto v : cycle)
            s += std::to_string(v) + " <= ";
        if (! cycle.empty())
            s += std::to_string(cycle.front());
        return s;
    }

    std::vector<Vertex> cycle_;
};

namespace detail {

inline auto find_order_cycle(const Structure &c, std::size_t order) -> std::optional<std::vector<Vertex>>
{
    std::vector<std::vector<Vertex>> succ(c.size());
    for (const auto &p : c.relation(order))
        succ[p[0]].push_back(p[1]);
    std::vector<int> state(c.size(), 0);
    std::vector<Vertex> stack;
    std::optional<std::vector<Vertex>> cycle;
    std::function<bool(Vertex)> dfs = [&](Vertex v) {
        state[v] = 1;
        stack.push_back(v);
        for (auto w : succ[v]) {
            if (state[w] == 1) {
                auto from = std::find(stack.begin(), stack.end(), w);
                cycle = std::vector<Vertex>(from, stack.end());
                return true;
            }
            if (state[w] == 0 && dfs(w))
                return true;
        }
        stack.pop_back();
        state[v] = 2;
        return false;
    };
    for (Vertex v = 0; v < c.size(); ++v)
        if (state[v] == 0 && dfs(v))
            return cycle;
    return std::nullopt;
}

/// Linear extension of an acyclic order relation; ties go to the smallest id.
inline auto stable_topological_order(const Structure &c, std::size_t order) -> std::vector<Vertex>
{
    std::vector<std::vector<Vertex>> succ(c.size());
    std::vector<std::size_t> indegree(c.size(), 0);
    for (const auto &p : c.relation(order)) {
        succ[p[0]].push_back(p[1]);
        ++indegree[p[1]];
    }
    std::priority_queue<Vertex, std::vector<Vertex>, std::greater<>> ready;
    for (Vertex v = 0; v < c.size(); ++v)
        if (indegree[v] == 0)
            ready.push(v);
    std::vector<Vertex> out;
    while (! ready.empty()) {
        auto v = ready.top();
        ready.pop();
        out.push_back(v);
        for (auto w : succ[v])
            if (--indegree[w] == 0)
                ready.push(w);
    }
    return out;
}

/// Shared recipe of the LEQ and Steiner completions: linearize the order and
/// keep exactly the function entries whose domain and value lie inside a
/// single copy of `b`.
inline auto copy_restricted_completion(const Structure &c, const Structure &b, const Structure *c0) -> CompletionResult
{
    check_same_language(c, b);
    auto order = c.language().order_index();
    if (! order)
        throw InputError("completion needs a language with an order symbol");
    if (auto cycle = find_order_cycle(c, *order))
        throw CyclicOrder(*cycle);
    if (c0) {
        check_same_language(c, *c0);
        if (! is_linear_order(*c0))
            throw InputError("C0 must be linearly ordered");
        if (! find_homomorphism_embedding(c, *c0))
            throw InputError("no homomorphism-embedding from C to C0");
    }

    auto found = copies(b, c, true);
    auto inside_some_copy = [&](const Tuple &dom, const VertexSet &range) {
        Tuple support = dom;
        support.insert(support.end(), range.begin(), range.end());
        auto set = make_set(std::move(support));
        return std::any_of(found.copies.begin(), found.copies.end(),
            [&](const VertexSet &copy) { return is_subset(set, copy); });
    };

    Structure out(c.language_ptr(), c.size());
    const auto &lang = c.language();
    for (std::size_t r = 0; r < lang.relations().size(); ++r)
        if (r != *order)
            for (const auto &t : c.relation(r))
                out.add_tuple(r, t);
    for (std::size_t f = 0; f < lang.functions().size(); ++f)
        for (const auto &[dom, range] : c.function(f))
            if (inside_some_copy(dom, range))
                out.set_value(f, dom, range);
    set_linear_order(out, stable_topological_order(c, *order));

    CompletionResult result;
    result.map.resize(c.size());
    for (Vertex v = 0; v < c.size(); ++v)
        result.map[v] = v;
    result.irreducible = is_irreducible(out).irreducible;
    result.completed = std::move(out);
    result.mode = CompletionMode::wrt_copies;
    return result;
}

} // namespace detail

/// Whether `result.map` restricted to every copy of `b` in `c` is an embedding
/// into the completed structure.
inline auto preserves_copies(const Structure &c, const Structure &b, const CompletionResult &result, bool monotone = true)
    -> bool
{
    for (const auto &e : enumerate_embeddings(b, c, monotone)) {
        auto mapped = compose(e, result.map);
        bool ok = monotone ? is_embedding(mapped, b, result.completed)
                           : is_embedding(mapped, without_order(b), without_order(result.completed));
        if (! ok)
            return false;
    }
    return true;
}

/// Smallest irreducible member of `spec` (size-lexicographic in enumeration
/// order) receiving a homomorphism-embedding from `c`, searched up to
/// `size_cap` vertices.
inline auto generic_completion(const Structure &c, const ClassSpec &spec, std::size_t size_cap)
    -> std::optional<CompletionResult>
{
    if (size_cap < c.size())
        throw InputError("size cap is smaller than the structure");
    detail::check_same_language(c, Structure(spec.language, 0));

    if (spec.accepts(c) && is_irreducible(c).irreducible) {
        CompletionResult same{c, VertexMap(c.size()), CompletionMode::homomorphism_embedding, true};
        for (Vertex v = 0; v < c.size(); ++v)
            same.map[v] = v;
        return same;
    }

    std::optional<CompletionResult> result;
    for (std::size_t size = 0; size <= size_cap && ! result; ++size)
        spec.enumerate(size, [&](const Structure &candidate) {
            if (! is_irreducible(candidate).irreducible)
                return true;
            if (auto f = find_homomorphism_embedding(c, candidate)) {
                result = CompletionResult{candidate, *f, CompletionMode::homomorphism_embedding, true};
                return false;
            }
            return true;
        });
    return result;
}

struct LocallyFiniteReport
{
    bool homomorphism_embedding_to_c0 = false;
    bool small_substructures_complete = false;
    std::optional<CompletionResult> completion;
    bool completion_in_class = false;
    bool copies_preserved = false;
    std::string note;

    [[nodiscard]] auto satisfied() const -> bool
    {
        return homomorphism_embedding_to_c0 && small_substructures_complete && completion && completion_in_class &&
            copies_preserved;
    }
};

/// Instance-level check of the locally finite completion property. If `c`
/// maps into `c0` by a homomorphism-embedding and every substructure of at
/// most `n` vertices has a completion, does the class completer complete `c`
/// with respect to copies of `b`? Substructure completions are searched with
/// `extra_vertices` beyond their own size.
inline auto check_locally_finite_instance(const Structure &b, const Structure &c0, const Structure &c,
    const ClassSpec &spec, std::size_t n, std::size_t extra_vertices = 2) -> LocallyFiniteReport
{
    if (! spec.complete)
        throw InputError("class '" + spec.name + "' has no completion procedure");
    LocallyFiniteReport report;
    report.homomorphism_embedding_to_c0 = find_homomorphism_embedding(c, c0).has_value();
    if (! report.homomorphism_embedding_to_c0) {
        report.note = "C has no homomorphism-embedding into C0";
        return report;
    }

    report.small_substructures_complete = true;
    for (std::size_t size = 0; size <= std::min(n, c.size()); ++size)
        for (const auto &subset : detail::k_subsets(c.size(), size)) {
            auto induced = detail::induce(c, subset);
            if (! std::holds_alternative<Substructure>(induced))
                continue;
            const auto &sub = std::get<Substructure>(induced).structure;
            if (! generic_completion(sub, spec, sub.size() + extra_vertices)) {
                report.small_substructures_complete = false;
                report.note = "substructure " + set_string(subset) + " has no completion";
                return report;
            }
        }

    try {
        report.completion = spec.complete(c, b, &c0);
    }
    catch (const InputError &e) {
        report.note = std::string("completer failed: ") + e.what();
        return report;
    }
    report.completion_in_class = spec.accepts(report.completion->completed);
    report.copies_preserved = preserves_copies(c, b, *report.completion, spec.monotone);
    return report;
}

} // namespace ramseyforge
