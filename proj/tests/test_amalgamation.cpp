#include <catch_amalgamated.hpp>

#include <ramseyforge/amalgamation.hpp>
#include <ramseyforge/classes/catalog.hpp>

#include "oracles.hpp"

using namespace ramseyforge;
using namespace ramseyforge::testing;

namespace {

// Tuples and function entries are carried along by h.
auto naive_homomorphism(const VertexMap &h, const Structure &c, const Structure &d) -> bool
{
    const auto &lang = c.language();
    for (std::size_t r = 0; r < lang.relations().size(); ++r)
        for (const auto &t : c.relation(r))
            if (! d.relation(r).contains(image(h, t)))
                return false;
    for (std::size_t f = 0; f < lang.functions().size(); ++f)
        for (const auto &[dom, range] : c.function(f)) {
            const auto *v = d.value(f, image(h, dom));
            if (! v || *v != make_set(image(h, range)))
                return false;
        }
    return true;
}

} // namespace

TEST_CASE("free amalgam satisfies the universal property", "[amalgamation]")
{
    std::mt19937_64 rng(99);
    std::size_t nontrivial = 0;
    for (int round = 0; round < 100; ++round) {
        const auto &lang = round % 3 == 2 ? relational_language() : mixed_language();
        auto sit = random_situated_instance(rng, lang, 4, 6);
        const auto &inst = sit.inst;
        REQUIRE(inst.b1.size() <= 4);
        REQUIRE(inst.b2.size() <= 4);
        REQUIRE(sit.d.size() <= 6);

        auto am = free_amalgam(inst);
        CHECK(am.c.size() == inst.b1.size() + inst.b2.size() - inst.a.size());
        CHECK(is_embedding(am.beta1, inst.b1, am.c));
        CHECK(is_embedding(am.beta2, inst.b2, am.c));
        CHECK(compose(inst.alpha1, am.beta1) == compose(inst.alpha2, am.beta2));
        CHECK(is_strong_amalgam(am, inst));

        auto h = factor_through(am, sit.d, sit.gamma1, sit.gamma2);
        REQUIRE(h);
        CHECK(compose(am.beta1, *h) == sit.gamma1);
        CHECK(compose(am.beta2, *h) == sit.gamma2);
        CHECK(naive_homomorphism(*h, am.c, sit.d));
        CHECK(is_homomorphism_embedding(*h, am.c, sit.d));
        nontrivial += inst.b1.size() > inst.a.size() && inst.b2.size() > inst.a.size();
    }
    CHECK(nontrivial > 20);
}

TEST_CASE("factor_through rejects maps that do not commute", "[amalgamation]")
{
    auto edge = ordered_graph(2, {{0, 1}});
    auto point = ordered_graph(1, {});
    AmalgamationInstance inst{point, edge, edge, {0}, {0}};
    auto am = free_amalgam(inst);
    auto d = ordered_clique(3);
    CHECK(factor_through(am, d, {0, 1}, {0, 2}));
    // the shared point lands on two different vertices
    CHECK_FALSE(factor_through(am, d, {0, 1}, {1, 2}));
}

TEST_CASE("free amalgam of two edges over a point", "[amalgamation]")
{
    auto edge = ordered_graph(2, {{0, 1}});
    auto point = ordered_graph(1, {});
    AmalgamationInstance inst{point, edge, edge, {0}, {0}};
    auto am = free_amalgam(inst);
    CHECK(am.c.size() == 3);
    CHECK(am.beta2 == VertexMap{0, 2});
    CHECK(am.c.relation("E").size() == 4);
    // 1 and 2 are incomparable, so the order is not linear
    CHECK_FALSE(am.c.ordered());
    CHECK_FALSE(is_linear_order(am.c));

    std::vector<std::vector<Vertex>> extensions;
    for_each_linear_extension(am.c, [&](const std::vector<Vertex> &seq) {
        extensions.push_back(seq);
        return true;
    });
    CHECK(extensions == std::vector<std::vector<Vertex>>{{0, 1, 2}, {0, 2, 1}});
}

TEST_CASE("bad instances are rejected", "[amalgamation]")
{
    auto edge = ordered_graph(2, {{0, 1}});
    auto empty = ordered_graph(2, {});
    AmalgamationInstance inst{edge, edge, empty, {0, 1}, {0, 1}};
    CHECK_THROWS_AS(free_amalgam(inst), InputError);

    auto point = ordered_graph(1, {});
    AmalgamationInstance ok{point, edge, edge, {0}, {1}};
    auto am = free_amalgam(ok);
    Amalgam not_commuting{am.c, {0, 1}, {0, 1}};
    CHECK_THROWS_AS(is_strong_amalgam(not_commuting, ok), InputError);
    Amalgam overlapping{ordered_clique(2), {0, 1}, {1, 0}};
    AmalgamationInstance empty_a{ordered_graph(0, {}), edge, edge, {}, {}};
    CHECK_FALSE(is_strong_amalgam(overlapping, empty_a));
}

TEST_CASE("free amalgams keep function values of both sides", "[amalgamation]")
{
    std::mt19937_64 rng(7);
    for (int round = 0; round < 50; ++round) {
        auto sit = random_situated_instance(rng, mixed_language(), 4, 6);
        auto am = free_amalgam(sit.inst);
        for (std::size_t f = 0; f < mixed_language()->functions().size(); ++f)
            CHECK(am.c.function(f).size() ==
                sit.inst.b1.function(f).size() + sit.inst.b2.function(f).size() - sit.inst.a.function(f).size());
    }
}
