#pragma once

#include <ramseyforge/amalgamation.hpp>
#include <ramseyforge/class_spec.hpp>
#include <ramseyforge/closure.hpp>

#include <chrono>
#include <map>
#include <string>
#include <vector>

namespace ramseyforge {

enum class AuditStatus
{
    pass,
    fail,
    inconclusive,
    skipped
};

inline auto to_string(AuditStatus s) -> std::string_view
{
    switch (s) {
    case AuditStatus::pass: return "pass";
    case AuditStatus::fail: return "fail";
    case AuditStatus::inconclusive: return "inconclusive";
    case AuditStatus::skipped: return "skipped";
    }
    return "?";
}

struct PropertyResult
{
    AuditStatus status = AuditStatus::pass;
    std::string counterexample;
    std::string note;
    /// Structures involved in the counterexample (e.g. A, B1, B2).
    std::vector<Structure> witnesses;
    std::size_t instances = 0;
    std::size_t inconclusive_instances = 0;
};

struct AuditOptions
{
    std::size_t n = 3;
    /// Total number of members visited by witness searches beyond the free
    /// amalgam candidates before an instance counts as inconclusive.
    std::size_t member_limit = 2'000'000;
    bool check_jep = true;
};

struct AuditReport
{
    std::string class_name;
    std::size_t n = 0;
    std::vector<std::size_t> members_per_size;
    PropertyResult hereditary, joint_embedding, strong_amalgamation;
    double seconds = 0;

    [[nodiscard]] auto status() const -> AuditStatus
    {
        auto worst = AuditStatus::pass;
        for (const auto *p : {&hereditary, &joint_embedding, &strong_amalgamation}) {
            if (p->status == AuditStatus::fail)
                return AuditStatus::fail;
            if (p->status == AuditStatus::inconclusive)
                worst = AuditStatus::inconclusive;
        }
        return worst;
    }
};

namespace detail {

inline auto describe(const Structure &s) -> std::string
{
    std::string out = std::to_string(s.size()) + " vertices";
    const auto &lang = s.language();
    for (std::size_t r = 0; r < lang.relations().size(); ++r) {
        if (lang.order_index() == r || s.relation(r).empty())
            continue;
        out += "; " + lang.relations()[r].name + ":";
        for (const auto &t : s.relation(r))
            out += " " + tuple_string(t);
    }
    for (std::size_t f = 0; f < lang.functions().size(); ++f) {
        if (s.function(f).empty())
            continue;
        out += "; " + lang.functions()[f].name + ":";
        for (const auto &[dom, range] : s.function(f))
            out += " " + tuple_string(dom) + "->" + set_string(range);
    }
    if (auto ranks = linear_order_ranks(s)) {
        std::vector<Vertex> seq(s.size());
        for (Vertex v = 0; v < s.size(); ++v)
            seq[(*ranks)[v]] = v;
        out += "; order:";
        for (auto v : seq)
            out += " " + std::to_string(v);
    }
    return out;
}

inline auto map_string(const VertexMap &f) -> std::string
{
    std::string out = "[";
    for (std::size_t i = 0; i < f.size(); ++i)
        out += (i ? "," : "") + std::to_string(f[i]);
    return out + "]";
}

/// Lazily enumerated members per size, shared by the witness searches. A size
/// with more than `limit` members is kept truncated.
class MemberCache
{
public:
    MemberCache(const ClassSpec &spec, std::size_t limit) : spec_(spec), limit_(limit) {}

    struct Entry
    {
        std::vector<Structure> members;
        bool truncated = false;
    };

    auto entry(std::size_t size) -> const Entry &
    {
        auto it = sizes_.find(size);
        if (it == sizes_.end()) {
            Entry e{ramseyforge::members(spec_, size, limit_ == SIZE_MAX ? limit_ : limit_ + 1), false};
            if (e.members.size() > limit_) {
                e.members.pop_back();
                e.truncated = true;
            }
            it = sizes_.emplace(size, std::move(e)).first;
        }
        return it->second;
    }

    auto members(std::size_t size) -> const std::vector<Structure> & { return entry(size).members; }

private:
    const ClassSpec &spec_;
    std::size_t limit_;
    // node-based so references handed out stay valid
    std::map<std::size_t, Entry> sizes_;
};

/// Whether some linear extension of the free amalgam (or the amalgam itself,
/// for unordered languages) is a member.
inline auto free_candidate_accepted(const ClassSpec &spec, const Amalgam &amalgam) -> bool
{
    if (! amalgam.c.language().order_index())
        return spec.accepts(amalgam.c);
    if (amalgam.c.ordered())
        return spec.accepts(amalgam.c);
    bool found = false;
    Structure candidate = amalgam.c;
    for_each_linear_extension(amalgam.c, [&](const std::vector<Vertex> &seq) {
        set_linear_order(candidate, seq);
        found = spec.accepts(candidate);
        return ! found;
    });
    return found;
}

/// The first persistent axiom violated by every linear extension of the free
/// amalgam. Any witness restricts to one of those extensions plus extra
/// tuples, so such an instance has no strong amalgam at all.
inline auto persistent_obstruction(const ClassSpec &spec, const Amalgam &amalgam) -> std::optional<AxiomViolation>
{
    if (spec.persistent_axioms.empty())
        return std::nullopt;
    std::optional<AxiomViolation> first;
    auto blocked = [&](const Structure &c) {
        for (const auto &v : spec.validate(c).violations)
            if (std::find(spec.persistent_axioms.begin(), spec.persistent_axioms.end(), v.axiom) !=
                spec.persistent_axioms.end()) {
                if (! first)
                    first = v;
                return true;
            }
        return false;
    };
    if (! amalgam.c.language().order_index() || amalgam.c.ordered())
        return blocked(amalgam.c) ? first : std::nullopt;
    bool all = true;
    Structure candidate = amalgam.c;
    for_each_linear_extension(amalgam.c, [&](const std::vector<Vertex> &seq) {
        set_linear_order(candidate, seq);
        all = blocked(candidate);
        return all;
    });
    return all ? first : std::nullopt;
}

enum class SearchOutcome
{
    found,
    none,
    limit
};

/// Exhaustive search for a member of size in [lo, hi] admitting embeddings
/// beta_i of B_i that commute over A (and overlap only there when `strong`).
inline auto search_witness(MemberCache &cache, const ClassSpec &spec, const AmalgamationInstance &inst, bool strong,
    std::size_t lo, std::size_t hi, std::size_t &budget) -> SearchOutcome
{
    bool truncated = false;
    for (std::size_t size = lo; size <= hi; ++size) {
        const auto &entry = cache.entry(size);
        truncated = truncated || entry.truncated;
        for (const auto &c : entry.members) {
            if (budget == 0)
                return SearchOutcome::limit;
            --budget;
            auto e1 = enumerate_embeddings(inst.b1, c, spec.monotone);
            if (e1.empty())
                continue;
            auto e2 = enumerate_embeddings(inst.b2, c, spec.monotone);
            for (const auto &beta1 : e1)
                for (const auto &beta2 : e2) {
                    Amalgam am{c, beta1, beta2};
                    bool commute = true;
                    for (Vertex x = 0; x < inst.a.size() && commute; ++x)
                        commute = beta1[inst.alpha1[x]] == beta2[inst.alpha2[x]];
                    if (commute && (! strong || is_strong_amalgam(am, inst)))
                        return SearchOutcome::found;
                }
        }
    }
    return truncated ? SearchOutcome::limit : SearchOutcome::none;
}

} // namespace detail

/// Exhaustive desk-scale audit over all members with at most `n` vertices:
/// hereditary property (closed substructures of members are members), strong
/// amalgamation (witnesses up to |B1| + |B2| vertices) and joint embedding.
/// The first counterexample in enumeration order is reported.
inline auto audit_class(const ClassSpec &spec, const AuditOptions &options = {}) -> AuditReport
{
    auto start = std::chrono::steady_clock::now();
    AuditReport report;
    report.class_name = spec.name;
    report.n = options.n;
    detail::MemberCache cache(spec, options.member_limit);
    std::vector<const std::vector<Structure> *> by_size;
    for (std::size_t s = 0; s <= options.n; ++s) {
        if (cache.entry(s).truncated)
            throw InputError("more than " + std::to_string(options.member_limit) + " members with " +
                std::to_string(s) + " vertices");
        by_size.push_back(&cache.members(s));
        report.members_per_size.push_back(by_size.back()->size());
    }

    // hereditary
    for (std::size_t s = 0; s <= options.n && report.hereditary.status == AuditStatus::pass; ++s)
        for (const auto &m : *by_size[s]) {
            detail::MaskIndex index(m);
            bool failed = false;
            for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m.size()); ++mask) {
                if (! index.is_closed(mask))
                    continue;
                ++report.hereditary.instances;
                auto sub = std::get<Substructure>(detail::induce(m, detail::MaskIndex::set_of(mask)));
                if (! spec.accepts(sub.structure)) {
                    auto &h = report.hereditary;
                    h.status = AuditStatus::fail;
                    h.counterexample = "closed substructure on " + set_string(detail::MaskIndex::set_of(mask)) +
                        " of member {" + detail::describe(m) + "} is not a member";
                    h.witnesses = {m, sub.structure};
                    failed = true;
                    break;
                }
            }
            if (failed)
                break;
        }

    // strong amalgamation, smallest |B1| + |B2| first; A = empty instances
    // double as joint embedding
    std::size_t budget = options.member_limit;
    bool empty_member = ! by_size[0]->empty();
    bool empty_instances_ok = true;
    auto &sap = report.strong_amalgamation;

    using Target = std::pair<const Structure *, VertexMap>;
    struct Base
    {
        const Structure *a;
        std::vector<std::vector<Target>> targets; // by size of B
    };
    std::vector<Base> bases;
    for (std::size_t as = 0; as < options.n; ++as)
        for (const auto &a : *by_size[as]) {
            Base base{&a, std::vector<std::vector<Target>>(options.n + 1)};
            for (std::size_t bs = as + 1; bs <= options.n; ++bs)
                for (const auto &b : *by_size[bs])
                    for (auto &e : enumerate_embeddings(a, b, spec.monotone))
                        base.targets[bs].emplace_back(&b, std::move(e));
            bases.push_back(std::move(base));
        }

    // true once a failure is recorded
    auto check = [&](const Structure &a, const Target &t1, const Target &t2) {
        AmalgamationInstance inst{a, *t1.first, *t2.first, t1.second, t2.second};
        ++sap.instances;
        auto amalgam = free_amalgam(inst, false);
        if (detail::free_candidate_accepted(spec, amalgam))
            return false;
        auto fail = [&](const std::string &why) {
            if (a.size() == 0)
                empty_instances_ok = false;
            sap.status = AuditStatus::fail;
            sap.counterexample = why + ": A = {" + detail::describe(a) + "}, B1 = {" + detail::describe(inst.b1) +
                "} via " + detail::map_string(inst.alpha1) + ", B2 = {" + detail::describe(inst.b2) + "} via " +
                detail::map_string(inst.alpha2);
            sap.witnesses = {inst.a, inst.b1, inst.b2};
            return true;
        };
        if (auto v = detail::persistent_obstruction(spec, amalgam))
            return fail("every strong amalgam violates axiom " + std::to_string(v->axiom) + " (" + v->message + ")");
        auto hi = inst.b1.size() + inst.b2.size();
        auto outcome = detail::search_witness(cache, spec, inst, true, hi - a.size(), hi, budget);
        if (outcome == detail::SearchOutcome::found)
            return false;
        if (outcome == detail::SearchOutcome::limit) {
            if (a.size() == 0)
                empty_instances_ok = false;
            ++sap.inconclusive_instances;
            sap.status = AuditStatus::inconclusive;
            return false;
        }
        return fail("no strong amalgam up to " + std::to_string(hi) + " vertices");
    };

    bool stop = false;
    for (std::size_t total = 2; total <= 2 * options.n && ! stop; ++total)
        for (std::size_t x = 0; x < bases.size() && ! stop; ++x) {
            const auto &base = bases[x];
            for (std::size_t s1 = base.a->size() + 1; 2 * s1 <= total && ! stop; ++s1) {
                auto s2 = total - s1;
                if (s2 > options.n)
                    continue;
                const auto &g1 = base.targets[s1];
                const auto &g2 = base.targets[s2];
                for (std::size_t i = 0; i < g1.size() && ! stop; ++i)
                    for (std::size_t j = s1 == s2 ? i : 0; j < g2.size() && ! stop; ++j)
                        stop = check(*base.a, g1[i], g2[j]);
            }
        }

    // joint embedding: implied by strong amalgamation over the empty member
    auto &jep = report.joint_embedding;
    if (! options.check_jep)
        jep.status = AuditStatus::skipped;
    else if (empty_member && empty_instances_ok && sap.status != AuditStatus::fail)
        jep.note = "implied by strong amalgamation over the empty member";
    else {
        Structure empty(spec.language, 0);
        for (std::size_t s1 = 1; s1 <= options.n && jep.status != AuditStatus::fail; ++s1)
            for (std::size_t i = 0; i < by_size[s1]->size() && jep.status != AuditStatus::fail; ++i)
                for (std::size_t s2 = s1; s2 <= options.n && jep.status != AuditStatus::fail; ++s2)
                    for (std::size_t j = s1 == s2 ? i : 0; j < by_size[s2]->size(); ++j) {
                        const auto &m1 = (*by_size[s1])[i];
                        const auto &m2 = (*by_size[s2])[j];
                        AmalgamationInstance inst{empty, m1, m2, {}, {}};
                        ++jep.instances;
                        if (detail::free_candidate_accepted(spec, free_amalgam(inst, false)))
                            continue;
                        auto outcome = detail::search_witness(cache, spec, inst, false, std::max(s1, s2), s1 + s2, budget);
                        if (outcome == detail::SearchOutcome::found)
                            continue;
                        if (outcome == detail::SearchOutcome::limit) {
                            ++jep.inconclusive_instances;
                            jep.status = AuditStatus::inconclusive;
                            continue;
                        }
                        jep.status = AuditStatus::fail;
                        jep.counterexample = "no member up to " + std::to_string(s1 + s2) + " vertices contains {" +
                            detail::describe(m1) + "} and {" + detail::describe(m2) + "}";
                        jep.witnesses = {m1, m2};
                        break;
                    }
    }

    report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
}

} // namespace ramseyforge
