#include <catch_amalgamated.hpp>

#include <ramseyforge/audit.hpp>
#include <ramseyforge/classes/catalog.hpp>

using namespace ramseyforge;

namespace {

void check_passes(const ClassSpec &spec, std::size_t n)
{
    auto report = audit_class(spec, AuditOptions{n});
    INFO(spec.name << ": " << report.strong_amalgamation.counterexample << report.hereditary.counterexample);
    CHECK(report.hereditary.status == AuditStatus::pass);
    CHECK(report.strong_amalgamation.status == AuditStatus::pass);
    CHECK(report.joint_embedding.status == AuditStatus::pass);
    CHECK(report.members_per_size.size() == n + 1);
    CHECK(report.seconds < 60.0);
}

} // namespace

TEST_CASE("ordered graphs are hereditary with strong amalgamation", "[audit]")
{
    check_passes(ordered_graph_class(), 3);
    check_passes(ordered_clique_class(), 4);
}

TEST_CASE("bounded graphs fail joint embedding", "[audit]")
{
    auto report = audit_class(ordered_graph_class(2), AuditOptions{3});
    CHECK(report.hereditary.status == AuditStatus::pass);
    CHECK(report.joint_embedding.status == AuditStatus::fail);
    CHECK(report.strong_amalgamation.status == AuditStatus::fail);
    CHECK(report.status() == AuditStatus::fail);
}

TEST_CASE("catalog classes at four vertices", "[audit][slow]")
{
    check_passes(leq_class(1), 4);
    check_passes(leq_class(2), 4);
    check_passes(steiner_class(3, 2), 4);
    check_passes(dkplus_class(1), 4);
    check_passes(dkplus_class(2), 4);
}

TEST_CASE("member counts reported by the audit", "[audit]")
{
    auto report = audit_class(leq_class(1), AuditOptions{4});
    CHECK(report.members_per_size == std::vector<std::size_t>{1, 2, 6, 23, 104});
}

TEST_CASE("resolvable designs: two blocks of one class through a point", "[audit]")
{
    auto report = audit_class(prbibd_class(3), AuditOptions{4});
    CHECK(report.hereditary.status == AuditStatus::pass);
    REQUIRE(report.strong_amalgamation.status == AuditStatus::fail);
    const auto &text = report.strong_amalgamation.counterexample;
    CHECK(text.find("every strong amalgam violates axiom 7") != std::string::npos);
    CHECK(text.find("A = {2 vertices; S: (0)") != std::string::npos);
}

TEST_CASE("factorizations: two edges of one matching through a point", "[audit]")
{
    auto report = audit_class(facth_class(SimpleGraph{2, {{0, 1}}}), AuditOptions{3});
    CHECK(report.hereditary.status == AuditStatus::pass);
    REQUIRE(report.strong_amalgamation.status == AuditStatus::fail);
    CHECK(report.strong_amalgamation.counterexample.find("every strong amalgam violates axiom 14") !=
        std::string::npos);
}

TEST_CASE("member limit below the audited sizes is an input error", "[audit]")
{
    AuditOptions options{4};
    options.member_limit = 10;
    CHECK_THROWS_AS(audit_class(leq_class(1), options), InputError);
}

TEST_CASE("joint embedding can be skipped", "[audit]")
{
    AuditOptions options{3};
    options.check_jep = false;
    auto report = audit_class(ordered_graph_class(2), options);
    CHECK(report.joint_embedding.status != AuditStatus::fail);
}
