#include <catch_amalgamated.hpp>

#include <ramseyforge/classes/graphs.hpp>
#include <ramseyforge/classes/steiner.hpp>
#include <ramseyforge/closure.hpp>

#include "random_structures.hpp"

using namespace ramseyforge;

namespace {

auto order_only_language() -> LanguagePtr
{
    Language l;
    l.add_relation("le", 2).set_order("le");
    return share(std::move(l));
}

} // namespace

TEST_CASE("empty structure validates", "[model-core]")
{
    Structure s(ordered_graph_language(), 0);
    CHECK(validate_structure(s).ok());
}

TEST_CASE("arity mismatch is reported with its symbol", "[model-core]")
{
    Structure s(ordered_graph_language(), 3);
    s.add_tuple("E", Tuple{0, 1, 2});
    auto report = validate_structure(s);
    REQUIRE_FALSE(report.ok());
    CHECK(report.violations.front().symbol == "E");
    CHECK(report.violations.front().message == "arity mismatch");
}

TEST_CASE("range size mismatch is reported", "[model-core]")
{
    Structure s(steiner_language(3, 2), 3);
    s.set_value("F", Tuple{0, 1}, VertexSet{0, 1});
    auto report = validate_structure(s);
    REQUIRE_FALSE(report.ok());
    CHECK(report.violations.front().message == "range size");
}

TEST_CASE("ordered flag requires a linear order", "[model-core]")
{
    Structure s(order_only_language(), 3);
    s.add_tuple("le", Tuple{0, 1});
    s.set_ordered(true);
    CHECK_FALSE(validate_structure(s).ok());
    set_id_order(s);
    CHECK(validate_structure(s).ok());
    CHECK(s.relation("le").size() == 3);
}

TEST_CASE("Fano encoding validates", "[model-core]")
{
    auto fano = hypergraph_to_steiner(fano_plane(), 3, 2);
    CHECK(validate_structure(fano).ok());
    // hand check: each of the 21 pairs lies in exactly one line
    for (Vertex u = 0; u < 7; ++u)
        for (Vertex v = u + 1; v < 7; ++v) {
            int lines = 0;
            for (const auto &e : fano_plane().edges)
                lines += std::count(e.begin(), e.end(), u) && std::count(e.begin(), e.end(), v);
            CHECK(lines == 1);
        }
}

TEST_CASE("induced closed substructures of a Steiner encoding", "[model-core]")
{
    Hypergraph g{5, {{0, 1, 2}}};
    auto s = hypergraph_to_steiner(g, 3, 2);

    auto whole = induced_closed_substructure(s, {0, 1, 2, 3, 4});
    REQUIRE(std::holds_alternative<Substructure>(whole));
    CHECK(std::get<Substructure>(whole).structure == s);

    auto block = induced_closed_substructure(s, {0, 1, 2});
    REQUIRE(std::holds_alternative<Substructure>(block));
    CHECK(std::get<Substructure>(block).structure.function("F").size() == 6);

    auto pair = induced_closed_substructure(s, {0, 1, 3});
    REQUIRE(std::holds_alternative<NotClosed>(pair));
    const auto &witness = std::get<NotClosed>(pair);
    CHECK(witness.symbol == "F");
    CHECK(witness.domain == Tuple{0, 1});
    CHECK(witness.range == VertexSet{0, 1, 2});

    CHECK_THROWS_AS(induced_closed_substructure(s, {0, 9}), InputError);
}

TEST_CASE("closure examples", "[model-core]")
{
    auto g = ordered_graph(4, {{0, 1}, {2, 3}});
    CHECK(closure(g, {1, 3}) == VertexSet{1, 3});

    auto s = hypergraph_to_steiner(Hypergraph{5, {{1, 2, 4}}}, 3, 2);
    CHECK(closure(s, {1, 2}) == VertexSet{1, 2, 4});
    CHECK(closure(s, {1, 3}) == VertexSet{1, 3});
    CHECK_THROWS_AS(closure(s, {7}), InputError);
}

TEST_CASE("irreducibility examples", "[model-core]")
{
    Structure one(graph_language(), 1);
    CHECK(is_irreducible(one).irreducible);

    Structure two(graph_language(), 2);
    auto r = is_irreducible(two);
    REQUIRE_FALSE(r.irreducible);
    REQUIRE(r.witness);
    CHECK(r.witness->a0.empty());
    CHECK(r.witness->x.size() == 1);
    CHECK(r.witness->y.size() == 1);

    Structure chain(order_only_language(), 3);
    set_id_order(chain);
    CHECK(is_irreducible(chain).irreducible);
}

TEST_CASE("glued Steiner blocks are reducible over the shared vertex", "[model-core]")
{
    auto s = hypergraph_to_steiner(Hypergraph{5, {{0, 1, 2}, {2, 3, 4}}}, 3, 2);
    auto unordered = without_order(s);
    auto r = is_irreducible(unordered);
    REQUIRE_FALSE(r.irreducible);
    CHECK(r.witness->a0 == VertexSet{2});
}

TEST_CASE("closure is extensive, monotone and idempotent", "[model-core][property]")
{
    std::mt19937_64 rng(11);
    for (int round = 0; round < 200; ++round) {
        auto s = testing::random_structure(rng, testing::mixed_language(), 1 + rng() % 6);
        auto a = testing::random_subset(rng, s.size());
        auto b = a;
        for (Vertex v = 0; v < s.size(); ++v)
            if (rng() % 3 == 0)
                b.push_back(v);
        b = make_set(b);
        auto ca = closure(s, a);
        CHECK(is_subset(a, ca));
        CHECK(is_subset(ca, closure(s, b)));
        CHECK(closure(s, ca) == ca);
        CHECK(std::holds_alternative<Substructure>(induced_closed_substructure(s, ca)));
    }
}

TEST_CASE("relational irreducibility matches pairwise co-occurrence", "[model-core][property]")
{
    std::mt19937_64 rng(12);
    for (int round = 0; round < 300; ++round) {
        auto s = testing::random_structure(rng, testing::relational_language(), 1 + rng() % 6);
        bool complete = true;
        for (Vertex u = 0; u < s.size(); ++u)
            for (Vertex v = u + 1; v < s.size(); ++v) {
                bool together = false;
                for (std::size_t r = 0; r < s.language().relations().size(); ++r)
                    for (const auto &t : s.relation(r))
                        together = together || (std::count(t.begin(), t.end(), u) && std::count(t.begin(), t.end(), v));
                complete = complete && together;
            }
        CHECK(is_irreducible(s).irreducible == complete);
    }
}

TEST_CASE("reducibility witnesses are genuine separations", "[model-core][property]")
{
    std::mt19937_64 rng(13);
    for (int round = 0; round < 300; ++round) {
        auto s = testing::random_structure(rng, testing::mixed_language(), 1 + rng() % 6);
        auto r = is_irreducible(s);
        if (r.irreducible)
            continue;
        const auto &w = *r.witness;
        REQUIRE_FALSE(w.x.empty());
        REQUIRE_FALSE(w.y.empty());
        auto meets = [](const Tuple &t, const VertexSet &side) {
            return std::any_of(t.begin(), t.end(), [&](Vertex v) { return std::binary_search(side.begin(), side.end(), v); });
        };
        for (std::size_t i = 0; i < s.language().relations().size(); ++i)
            for (const auto &t : s.relation(i))
                CHECK_FALSE((meets(t, w.x) && meets(t, w.y)));
        for (std::size_t f = 0; f < s.language().functions().size(); ++f)
            for (const auto &[dom, range] : s.function(f)) {
                Tuple all = dom;
                all.insert(all.end(), range.begin(), range.end());
                CHECK_FALSE((meets(all, w.x) && meets(all, w.y)));
            }
        auto left = w.a0, right = w.a0;
        left.insert(left.end(), w.x.begin(), w.x.end());
        right.insert(right.end(), w.y.begin(), w.y.end());
        CHECK(is_closed(s, make_set(left)));
        CHECK(is_closed(s, make_set(right)));
    }
}
