#include <catch_amalgamated.hpp>

#include <ramseyforge/arrow.hpp>
#include <ramseyforge/classes/catalog.hpp>

#include "oracles.hpp"

#include <chrono>

using namespace ramseyforge;
using namespace ramseyforge::testing;

namespace {

auto random_ordered_graph(std::mt19937_64 &rng, std::size_t n) -> Structure
{
    std::vector<std::pair<Vertex, Vertex>> edges;
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v)
            if (rng() % 2)
                edges.emplace_back(u, v);
    return ordered_graph(n, edges);
}

// First colouring in lexicographic order (vertex 0 most significant) whose
// colours appear in increasing order and that leaves no edge monochromatic.
auto least_bad_coloring(const CopyHypergraph &h, unsigned k) -> std::optional<std::vector<unsigned>>
{
    std::size_t n = h.a_copies.size();
    std::vector<unsigned> c(n, 0);
    std::optional<std::vector<unsigned>> best;
    std::function<void(std::size_t, unsigned)> go = [&](std::size_t i, unsigned used) {
        if (best)
            return;
        if (i == n) {
            if (! has_monochromatic_edge(h, c))
                best = c;
            return;
        }
        for (unsigned col = 0; col < k && col <= used; ++col) {
            c[i] = col;
            go(i + 1, std::max(used, col + 1));
        }
    };
    go(0, 0);
    return best;
}

} // namespace

TEST_CASE("K6 arrows (K3)^K2_2 and K5 does not", "[arrow]")
{
    auto start = std::chrono::steady_clock::now();
    auto k2 = ordered_clique(2), k3 = ordered_clique(3);

    auto yes = arrow_check({ordered_clique(6), k3, k2, 2});
    CHECK(yes.status == ArrowStatus::verified);
    CHECK(yes.a_copies.size() == 15);
    CHECK(yes.b_copies.size() == 20);

    auto no = arrow_check({ordered_clique(5), k3, k2, 2});
    REQUIRE(no.status == ArrowStatus::refuted);
    CHECK_FALSE(no.vacuous);
    auto h = build_copy_hypergraph({ordered_clique(5), k3, k2, 2});
    CHECK_FALSE(has_monochromatic_edge(h, no.coloring));

    auto brute6 = brute_force_arrow(ordered_clique(6), k3, k2, 2, true);
    auto brute5 = brute_force_arrow(ordered_clique(5), k3, k2, 2, true);
    CHECK(brute6.arrow);
    CHECK(brute6.colorings == (1u << 15));
    CHECK_FALSE(brute5.arrow);
    CHECK(brute5.colorings <= (1u << 10));

    double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    CHECK(seconds < 5.0);
}

TEST_CASE("clique witnesses for the vertex pigeonhole", "[arrow]")
{
    auto start = std::chrono::steady_clock::now();
    auto spec = ordered_clique_class();
    for (unsigned k = 1; k <= 4; ++k) {
        auto r = witness_search(spec, ordered_clique(1), ordered_clique(2), k, 8);
        REQUIRE(r.status == WitnessStatus::found);
        CHECK(r.c->size() == k + 1);
    }
    double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    CHECK(seconds < 10.0);
}

TEST_CASE("exhausted witness search", "[arrow]")
{
    auto r = witness_search(ordered_clique_class(), ordered_clique(2), ordered_clique(3), 2, 5);
    CHECK(r.status == WitnessStatus::exhausted);
    CHECK(r.candidates == 6);
    CHECK_THROWS_AS(witness_search(ordered_clique_class(), ordered_graph(2, {}), ordered_clique(3), 2, 5), InputError);
}

TEST_CASE("arrow_check agrees with brute force on random instances", "[arrow]")
{
    std::mt19937_64 rng(2024);
    int done = 0, verified = 0, refuted = 0;
    while (done < 200) {
        bool graphs = done % 4 != 3;
        Structure a, b, c;
        bool monotone = true;
        if (graphs) {
            a = random_ordered_graph(rng, 1 + rng() % 2);
            b = random_ordered_graph(rng, a.size() + rng() % 2);
            c = random_ordered_graph(rng, b.size() + rng() % 4);
        }
        else {
            a = random_structure(rng, mixed_language(), 1 + rng() % 2, 1);
            b = random_structure(rng, mixed_language(), a.size() + rng() % 2, 1);
            c = random_structure(rng, mixed_language(), b.size() + rng() % 3, 2);
            monotone = rng() % 2;
        }
        unsigned k = 2 + rng() % 2;
        auto a_copies = naive_copies(a, c, monotone);
        if (a_copies.size() > 12 || (k == 3 && a_copies.size() > 9))
            continue;
        ++done;
        ArrowInstance inst{c, b, a, k, monotone};
        auto got = arrow_check(inst);
        auto brute = brute_force_arrow(c, b, a, k, monotone);
        REQUIRE(got.status != ArrowStatus::inconclusive);
        CHECK((got.status == ArrowStatus::verified) == brute.arrow);
        CHECK(got.a_copies.copies == a_copies);
        CHECK(got.b_copies.copies == naive_copies(b, c, monotone));
        if (got.status == ArrowStatus::refuted) {
            ++refuted;
            auto h = build_copy_hypergraph(inst);
            CHECK_FALSE(has_monochromatic_edge(h, got.coloring));
            if (! got.vacuous)
                CHECK(least_bad_coloring(h, k) == got.coloring);
        }
        else
            ++verified;
    }
    CHECK(verified > 10);
    CHECK(refuted > 10);
}

TEST_CASE("vacuous arrows", "[arrow]")
{
    // no copy of B: refuted by the all-zero colouring
    auto r = arrow_check({ordered_clique(2), ordered_clique(3), ordered_clique(1), 2});
    CHECK(r.status == ArrowStatus::refuted);
    CHECK(r.vacuous);
    CHECK(r.coloring == std::vector<unsigned>{0, 0});

    // A does not embed in B: every edge is empty
    auto e = arrow_check({ordered_graph(4, {}), ordered_graph(3, {}), ordered_clique(2), 2});
    CHECK(e.status == ArrowStatus::verified);
    CHECK(e.vacuous);
    CHECK(e.edge_size == 0);

    // A empty: every B-copy holds the single empty copy
    auto one = arrow_check({ordered_clique(3), ordered_clique(2), ordered_clique(0), 2});
    CHECK(one.status == ArrowStatus::verified);
    CHECK(one.edge_size == 1);

    // A = B: singleton edges
    auto s = arrow_check({ordered_clique(3), ordered_clique(2), ordered_clique(2), 5});
    CHECK(s.status == ArrowStatus::verified);
    CHECK_FALSE(s.vacuous);

    CHECK_THROWS_AS(arrow_check({ordered_clique(3), ordered_clique(2), ordered_clique(1), 0}), InputError);
}

TEST_CASE("node limit makes the check inconclusive", "[arrow]")
{
    auto r = arrow_check({ordered_clique(6), ordered_clique(3), ordered_clique(2), 2}, 5);
    CHECK(r.status == ArrowStatus::inconclusive);
}
