#pragma once

#include <ramseyforge/classes/catalog.hpp>
#include <ramseyforge/lms.hpp>

#include <string>
#include <string_view>

namespace ramseyforge {

// Plain-text inputs for the class encoders, one directive per line:
//   steiner   k K / t T / points N / block a b c ...
//   eq, leq   k K / points N / class {a,b} {c,d} ...
//   prbibd    k K / points N / class {a,b,c} {d,e,f} ...
//   dkplus,fl k K / points N / arc u v ...
//   facth     points N / edge u v ... / matching {a,b} {c,d} ...
// An optional first line names the class.

namespace detail {

struct NativeFields
{
    std::optional<unsigned> k, t;
    std::optional<std::size_t> points;
    std::vector<VertexSet> blocks;
    std::vector<std::pair<Vertex, Vertex>> pairs; // arcs or edges
    std::vector<std::vector<VertexSet>> groups;   // classes or matchings
};

inline auto parse_native(const std::string &cls, std::string_view text) -> NativeFields
{
    NativeFields f;
    std::string pair_word = cls == "facth" ? "edge" : "arc";
    std::string group_word = cls == "facth" ? "matching" : "class";
    std::size_t line_no = 0, start = 0;
    bool first = true;
    while (start <= text.size()) {
        auto end = text.find('\n', start);
        if (end == std::string_view::npos)
            end = text.size();
        auto raw = text.substr(start, end - start);
        start = end + 1;
        ++line_no;
        if (auto hash = raw.find('#'); hash != std::string_view::npos)
            raw = raw.substr(0, hash);
        LineReader in(raw, line_no);
        if (in.done())
            continue;
        auto word = in.word();
        bool was_first = std::exchange(first, false);
        if (word == cls && was_first) {
            if (! in.done())
                in.fail("trailing text after class name");
            continue;
        }
        auto number = [&]() -> std::uint64_t { return in.number(); };
        if (word == "k")
            f.k = static_cast<unsigned>(number());
        else if (word == "t" && cls == "steiner")
            f.t = static_cast<unsigned>(number());
        else if (word == "points")
            f.points = number();
        else if (word == "block" && cls == "steiner") {
            VertexSet b;
            while (! in.done())
                b.push_back(static_cast<Vertex>(number()));
            f.blocks.push_back(std::move(b));
        }
        else if (word == pair_word && (cls == "dkplus" || cls == "fl" || cls == "facth")) {
            auto u = static_cast<Vertex>(number());
            auto v = static_cast<Vertex>(number());
            f.pairs.emplace_back(u, v);
        }
        else if (word == group_word && (cls == "eq" || cls == "leq" || cls == "prbibd" || cls == "facth")) {
            std::vector<VertexSet> group;
            while (! in.done())
                group.push_back(in.list('{', '}'));
            f.groups.push_back(std::move(group));
        }
        else
            in.fail("unknown directive '" + word + "' for class " + cls);
        if (! in.done())
            in.fail("trailing text");
    }
    if (! f.points)
        throw ParseError(0, "missing points line");
    return f;
}

inline auto need_k(const NativeFields &f, const ClassOptions &options, unsigned fallback) -> unsigned
{
    if (f.k && options.k && *f.k != *options.k)
        throw InputError("k in the file differs from the class parameter");
    return f.k.value_or(options.k.value_or(fallback));
}

} // namespace detail

/// Encodes a native document of class `cls` as a structure.
inline auto encode_native(const std::string &cls, std::string_view text, const ClassOptions &options = {}) -> Structure
{
    auto f = detail::parse_native(cls, text);
    auto n = *f.points;
    if (cls == "steiner") {
        auto t = f.t.value_or(options.t.value_or(2));
        return hypergraph_to_steiner(Hypergraph{n, f.blocks}, detail::need_k(f, options, 3), t);
    }
    if (cls == "eq" || cls == "leq")
        return eq_to_leq(EquivalenceStructure{n, detail::need_k(f, options, 1), f.groups});
    if (cls == "prbibd")
        return prbibd_encode(ResolvableDesign{n, detail::need_k(f, options, 3), f.groups});
    if (cls == "dkplus")
        return dk_lift(OrientedGraph{n, f.pairs}, detail::need_k(f, options, 1));
    if (cls == "fl")
        return fl_decompose(OrientedGraph{n, f.pairs}, detail::need_k(f, options, 1));
    if (cls == "facth")
        return facth_encode(HFactorizationInput{
            SimpleGraph{n, f.pairs}, options.pattern.value_or(SimpleGraph{2, {{0, 1}}}), f.groups});
    throw InputError("class '" + cls + "' has no native format");
}

/// Decodes a member of class `cls` into its native document.
inline auto decode_native(const std::string &cls, const Structure &s, const ClassOptions &options = {}) -> std::string
{
    std::string out = cls + "\n";
    auto groups = [&](const std::string &word, const std::vector<std::vector<VertexSet>> &gs) {
        for (const auto &g : gs) {
            out += word;
            for (const auto &b : g)
                out += " " + set_string(b);
            out += "\n";
        }
    };
    auto pairs = [&](const std::string &word, const std::vector<std::pair<Vertex, Vertex>> &ps) {
        for (auto [u, v] : ps)
            out += word + " " + std::to_string(u) + " " + std::to_string(v) + "\n";
    };
    if (cls == "steiner") {
        auto report = steiner_validate(s);
        if (! report.ok())
            throw ClassError("not a partial Steiner system: " + report.violations.front().message);
        auto [k, t] = *detail::steiner_parameters(s);
        auto g = steiner_to_hypergraph(s);
        out += "k " + std::to_string(k) + "\nt " + std::to_string(t) + "\npoints " + std::to_string(g.vertex_count) + "\n";
        for (const auto &b : g.edges) {
            out += "block";
            for (auto v : b)
                out += " " + std::to_string(v);
            out += "\n";
        }
    }
    else if (cls == "eq" || cls == "leq") {
        auto e = leq_to_eq(s);
        out += "k " + std::to_string(e.k) + "\npoints " + std::to_string(e.size) + "\n";
        groups("class", e.classes);
    }
    else if (cls == "prbibd") {
        auto d = prbibd_decode(s);
        out += "k " + std::to_string(d.k) + "\npoints " + std::to_string(d.point_count) + "\n";
        groups("class", d.classes);
    }
    else if (cls == "dkplus" || cls == "fl") {
        auto g = cls == "dkplus" ? dk_to_graph(s) : fl_to_graph(s);
        out += "k " + std::to_string(detail::out_function_count(s)) + "\npoints " + std::to_string(g.vertex_count) + "\n";
        pairs("arc", g.arcs);
    }
    else if (cls == "facth") {
        auto in = facth_decode(s, options.pattern.value_or(SimpleGraph{2, {{0, 1}}}));
        out += "points " + std::to_string(in.graph.vertex_count) + "\n";
        pairs("edge", in.graph.edges);
        groups("matching", in.matchings);
    }
    else
        throw InputError("class '" + cls + "' has no native format");
    return out;
}

} // namespace ramseyforge
