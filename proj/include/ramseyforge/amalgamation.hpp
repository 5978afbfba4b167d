#pragma once

#include <ramseyforge/morphism.hpp>
#include <ramseyforge/structure.hpp>

#include <functional>
#include <optional>

namespace ramseyforge {

/// B1 and B2 glued along embeddings of A.
struct AmalgamationInstance
{
    Structure a, b1, b2;
    VertexMap alpha1, alpha2;
};

struct Amalgam
{
    Structure c;
    VertexMap beta1, beta2;
};

inline void check_instance(const AmalgamationInstance &inst)
{
    detail::check_same_language(inst.a, inst.b1);
    detail::check_same_language(inst.a, inst.b2);
    if (! is_embedding(inst.alpha1, inst.a, inst.b1))
        throw InputError("alpha1 is not an embedding of A into B1");
    if (! is_embedding(inst.alpha2, inst.a, inst.b2))
        throw InputError("alpha2 is not an embedding of A into B2");
}

/// The free amalgam: B1 keeps its ids, the vertices of B2 outside the image of
/// A follow in increasing order. Nothing mixes the two new sides; the order
/// relation is the union of both orders, so C is flagged ordered only if that
/// union happens to be linear.
inline auto free_amalgam(const AmalgamationInstance &inst, bool checked = true) -> Amalgam
{
    if (checked)
        check_instance(inst);
    const auto &b1 = inst.b1;
    const auto &b2 = inst.b2;
    Amalgam out{Structure(b1.language_ptr(), b1.size()), VertexMap(b1.size()), VertexMap(b2.size(), 0)};
    for (Vertex v = 0; v < b1.size(); ++v)
        out.beta1[v] = v;
    std::vector<bool> glued(b2.size(), false);
    for (Vertex x = 0; x < inst.a.size(); ++x) {
        out.beta2[inst.alpha2[x]] = inst.alpha1[x];
        glued[inst.alpha2[x]] = true;
    }
    for (Vertex v = 0; v < b2.size(); ++v)
        if (! glued[v])
            out.beta2[v] = out.c.add_vertex();

    const auto &lang = b1.language();
    for (std::size_t r = 0; r < lang.relations().size(); ++r) {
        for (const auto &t : b1.relation(r))
            out.c.add_tuple(r, t);
        for (const auto &t : b2.relation(r))
            out.c.add_tuple(r, detail::apply(out.beta2, t));
    }
    for (std::size_t f = 0; f < lang.functions().size(); ++f) {
        for (const auto &[dom, range] : b1.function(f))
            out.c.set_value(f, dom, range);
        for (const auto &[dom, range] : b2.function(f))
            out.c.set_value(f, detail::apply(out.beta2, dom), detail::apply(out.beta2, range));
    }
    out.c.set_ordered(lang.order_index() && is_linear_order(out.c));
    return out;
}

/// Whether the embeddings overlap only on the image of A. Throws if they do
/// not commute over A.
inline auto is_strong_amalgam(const Amalgam &c, const AmalgamationInstance &inst) -> bool
{
    if (c.beta1.size() != inst.b1.size() || c.beta2.size() != inst.b2.size())
        throw InputError("beta maps must cover B1 and B2");
    for (Vertex x = 0; x < inst.a.size(); ++x)
        if (c.beta1[inst.alpha1[x]] != c.beta2[inst.alpha2[x]])
            throw InputError("beta1 . alpha1 and beta2 . alpha2 differ at " + std::to_string(x));
    std::vector<bool> in_a1(inst.b1.size(), false), in_a2(inst.b2.size(), false);
    for (Vertex x = 0; x < inst.a.size(); ++x) {
        in_a1[inst.alpha1[x]] = true;
        in_a2[inst.alpha2[x]] = true;
    }
    for (Vertex x1 = 0; x1 < inst.b1.size(); ++x1)
        for (Vertex x2 = 0; x2 < inst.b2.size(); ++x2)
            if (c.beta1[x1] == c.beta2[x2] && ! (in_a1[x1] && in_a2[x2]))
                return false;
    return true;
}

/// For embeddings gamma_i: B_i -> D commuting over A, the map h from the free
/// amalgam with h . beta_i = gamma_i, if it is a homomorphism-embedding.
inline auto factor_through(const Amalgam &amalgam, const Structure &d, const VertexMap &gamma1, const VertexMap &gamma2)
    -> std::optional<VertexMap>
{
    VertexMap h(amalgam.c.size(), 0);
    std::vector<bool> set(amalgam.c.size(), false);
    auto assign = [&](const VertexMap &beta, const VertexMap &gamma) {
        for (Vertex v = 0; v < beta.size(); ++v) {
            if (set[beta[v]] && h[beta[v]] != gamma[v])
                return false;
            h[beta[v]] = gamma[v];
            set[beta[v]] = true;
        }
        return true;
    };
    if (! assign(amalgam.beta1, gamma1) || ! assign(amalgam.beta2, gamma2))
        return std::nullopt;
    if (! is_homomorphism_embedding(h, amalgam.c, d))
        return std::nullopt;
    return h;
}

/// Visits the linear extensions of the order relation of `c` in
/// lexicographic order of their vertex sequences until `visit` returns false.
/// Returns false if the relation is cyclic.
inline auto for_each_linear_extension(const Structure &c, const std::function<bool(const std::vector<Vertex> &)> &visit)
    -> bool
{
    auto order = c.language().order_index();
    if (! order)
        throw InputError("language has no order symbol");
    std::size_t n = c.size();
    std::vector<std::uint64_t> below(n, 0);
    if (n > 64)
        throw InputError("linear extensions are limited to 64 vertices");
    for (const auto &p : c.relation(*order))
        if (p[0] != p[1])
            below[p[1]] |= std::uint64_t{1} << p[0];
        else
            return false;
    std::vector<Vertex> seq;
    std::uint64_t placed = 0;
    bool stop = false, any = false;
    std::function<void()> rec = [&] {
        if (stop)
            return;
        if (seq.size() == n) {
            any = true;
            stop = ! visit(seq);
            return;
        }
        for (Vertex v = 0; v < n && ! stop; ++v)
            if (! ((placed >> v) & 1) && (below[v] & ~placed) == 0) {
                placed |= std::uint64_t{1} << v;
                seq.push_back(v);
                rec();
                seq.pop_back();
                placed &= ~(std::uint64_t{1} << v);
            }
    };
    rec();
    return any;
}

} // namespace ramseyforge
