#include <catch_amalgamated.hpp>

#include <ramseyforge/classes/catalog.hpp>
#include <ramseyforge/lms.hpp>

#include "random_structures.hpp"

#include <random>

using namespace ramseyforge;
using namespace ramseyforge::testing;

namespace {

// Sets a random linear order on about half the structures that have an order
// symbol, so the `ordered` flag gets exercised.
auto maybe_linear(std::mt19937_64 &rng, Structure s) -> Structure
{
    if (! s.language().order_index() || rng() % 2)
        return s;
    std::vector<Vertex> perm(s.size());
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    s.clear_relation(*s.language().order_index());
    set_linear_order(s, perm);
    return s;
}

auto parse_error_line(std::string_view text) -> std::pair<std::size_t, std::string>
{
    try {
        parse_lms(text);
    }
    catch (const ParseError &e) {
        return {e.line(), e.message()};
    }
    return {0, "no error"};
}

} // namespace

TEST_CASE("parse(print(s)) == s on random structures", "[lms]")
{
    std::mt19937_64 rng(500);
    std::size_t ordered = 0;
    for (int i = 0; i < 500; ++i) {
        const auto &lang = i % 2 ? mixed_language() : relational_language();
        auto s = maybe_linear(rng, random_structure(rng, lang, rng() % 7, 1 + rng() % 4));
        ordered += s.ordered();
        auto text = print_lms(s);
        auto back = parse_lms(text);
        REQUIRE(back == s);
        CHECK(back.ordered() == s.ordered());
        CHECK(same_language(back.language_ptr(), s.language_ptr()));
        CHECK(print_lms(back) == text);
    }
    CHECK(ordered > 50);
}

TEST_CASE("class members print and parse back", "[lms]")
{
    for (const auto &name : class_names()) {
        auto spec = make_class(name);
        for (std::size_t n = 0; n <= 4; ++n)
            for (const auto &s : members(spec, n, 200)) {
                auto back = parse_lms(print_lms(s));
                CHECK(back == s);
                CHECK(spec.accepts(back));
            }
    }
}

TEST_CASE("hand-written documents", "[lms]")
{
    auto s = parse_lms(R"(# a labelled triangle
lang rel E 2
lang rel le 2
lang order le
lang fun F 1 2

vertices 3
ordered
rel E: (0,1) (1,0)
rel E: (1,2) (2,1)    # second line merges
rel le: (0,1) (0,2) (1,2)
fun F: (2) -> {0,1}
)");
    CHECK(s.size() == 3);
    CHECK(s.ordered());
    CHECK(s.relation("E").size() == 4);
    REQUIRE(s.value(s.language().function("F"), Tuple{2}));
    CHECK(*s.value(s.language().function("F"), Tuple{2}) == VertexSet{0, 1});

    auto empty = parse_lms("lms 1\nvertices 0\n");
    CHECK(empty.size() == 0);
    CHECK(empty.language().relations().empty());
}

TEST_CASE("parse errors carry the line", "[lms]")
{
    using P = std::pair<std::size_t, std::string>;
    CHECK(parse_error_line("lang rel E 2\nvertices 2\nrel E: (0,1,1)\n") == P{3, "arity mismatch in (0,1,1)"});
    CHECK(parse_error_line("lang fun F 1 2\nvertices 3\nfun F: (0) -> {1,2,0}\n") == P{3, "range size"});
    CHECK(parse_error_line("lang rel E 2\nvertices 2\nrel E: (0,2)\n").first == 3);
    CHECK(parse_error_line("lang rel E 2\nvertices 2\nrel E: (0,1) (0,1)\n") == P{3, "duplicate entry (0,1)"});
    CHECK(parse_error_line("vertices 2\nvertices 2\n") == P{2, "duplicate vertices line"});
    CHECK(parse_error_line("lang rel E 2\nvertices 2\nrel D: (0,1)\n") == P{3, "unknown symbol 'D'"});
    CHECK(parse_error_line("lang rel E 2\nvertex 2\n") == P{2, "unknown keyword 'vertex'"});
    CHECK(parse_error_line("lang rel E 2\n") == P{0, "missing vertices line"});
    CHECK(parse_error_line("lang rel le 2\nlang order le\nvertices 3\nordered\nrel le: (0,1)\n") ==
        P{4, "order relation is not a linear order"});
    CHECK(parse_error_line("vertices 1\nlms 1\n") == P{2, "the lms header must come first"});
    CHECK(parse_error_line("lang fun F 1 1\nvertices 2\nfun F: (0) -> {1}\nfun F: (0) -> {0}\n") ==
        P{4, "duplicate entry (0)"});
    CHECK(parse_error_line("vertices 1\nlang rel E 2\n").first == 2);
}

TEST_CASE("files", "[lms]")
{
    auto k3 = read_lms_file(RAMSEYFORGE_TEST_DATA "/k3.lms");
    CHECK(k3 == ordered_clique(3));
    CHECK_THROWS_AS(read_lms_file(RAMSEYFORGE_TEST_DATA "/no-such-file.lms"), MissingFile);
    try {
        read_lms_file(RAMSEYFORGE_TEST_DATA "/bad_range.lms");
        FAIL("no exception");
    }
    catch (const ParseError &e) {
        CHECK(e.message().find("bad_range.lms") != std::string::npos);
        CHECK(e.message().find("range size") != std::string::npos);
    }
}
