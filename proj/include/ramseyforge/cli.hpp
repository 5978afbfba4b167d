#pragma once

#include <ramseyforge/arrow.hpp>
#include <ramseyforge/audit.hpp>
#include <ramseyforge/classes/catalog.hpp>
#include <ramseyforge/completion.hpp>
#include <ramseyforge/lms.hpp>
#include <ramseyforge/native_format.hpp>
#include <ramseyforge/report.hpp>

#include <CLI11.hpp>

#include <ostream>
#include <string>
#include <vector>

namespace ramseyforge {

/// Process exit codes.
namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int negative = 1; // refuted, invalid, fail, not found
inline constexpr int inconclusive = 2;
inline constexpr int usage = 64;
inline constexpr int data = 65;
inline constexpr int no_input = 66;
inline constexpr int internal = 70;
} // namespace exit_code

/// Bad command-line usage (unknown class, malformed parameter).
class UsageError : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

namespace detail {

/// `name` or `name:key=value,key=value` with keys k, t, H (pattern file) and
/// max (vertex bound of the truncated graph class).
inline auto parse_class_argument(const std::string &arg) -> std::pair<std::string, ClassOptions>
{
    auto colon = arg.find(':');
    std::string name = arg.substr(0, colon);
    const auto &names = class_names();
    if (std::find(names.begin(), names.end(), name) == names.end())
        throw UsageError("unknown class '" + name + "'");
    ClassOptions options;
    if (colon == std::string::npos)
        return {name, options};
    std::stringstream params(arg.substr(colon + 1));
    std::string item;
    while (std::getline(params, item, ',')) {
        auto eq = item.find('=');
        if (eq == std::string::npos)
            throw UsageError("class parameter '" + item + "' is not key=value");
        auto key = item.substr(0, eq);
        auto value = item.substr(eq + 1);
        auto number = [&]() -> unsigned {
            unsigned v = 0;
            auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
            if (ec != std::errc() || ptr != value.data() + value.size())
                throw UsageError("class parameter '" + key + "' needs a number");
            return v;
        };
        if (key == "k")
            options.k = number();
        else if (key == "t")
            options.t = number();
        else if (key == "max")
            options.max_vertices = number();
        else if (key == "H")
            options.pattern = simple_graph(read_lms_file(value));
        else
            throw UsageError("unknown class parameter '" + key + "'");
    }
    return {name, options};
}

inline auto parse_map(const std::string &text) -> VertexMap
{
    VertexMap f;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        Vertex v = 0;
        auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
        if (ec != std::errc() || ptr != item.data() + item.size())
            throw UsageError("map entries must be vertex ids: '" + text + "'");
        f.push_back(v);
    }
    return f;
}

inline auto vertex_list(const VertexMap &f) -> std::string
{
    std::string out;
    for (std::size_t i = 0; i < f.size(); ++i)
        out += (i ? "," : "") + std::to_string(f[i]);
    return out;
}

inline auto add_property(Report &r, const std::string &key, const PropertyResult &p)
{
    r.add(key, std::string(to_string(p.status)));
    r.add(key + "_instances", p.instances);
    if (p.inconclusive_instances)
        r.add(key + "_inconclusive_instances", p.inconclusive_instances);
    if (! p.note.empty())
        r.add(key + "_note", p.note);
    if (! p.counterexample.empty())
        r.add(key + "_counterexample", p.counterexample);
}

inline auto looks_like_lms(const std::string &text) -> bool
{
    std::stringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (auto hash = line.find('#'); hash != std::string::npos)
            line.resize(hash);
        std::stringstream words(line);
        std::string first;
        if (words >> first)
            return first == "lms" || first == "lang" || first == "vertices";
    }
    return false;
}

inline auto read_text_file(const std::string &path) -> std::string
{
    std::ifstream in(path);
    if (! in)
        throw MissingFile("cannot open '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

} // namespace detail

/// Runs one command line (without the program name). The report goes to
/// `out`, diagnostics to `err`; the return value is the exit code.
inline auto cli_dispatch(std::vector<std::string> args, std::ostream &out, std::ostream &err) -> int
{
    CLI::App app{"Structural Ramsey toolkit: classes, amalgams, completions and arrows", "ramseyforge"};
    app.require_subcommand(1);
    // lets --threads follow the subcommand too
    app.fallthrough();
    unsigned threads = 1;
    app.add_option("--threads", threads, "Worker threads for embedding enumeration")->check(CLI::Range(1u, 1u << 20));

    std::string cls, file_a, file_b, file_c, file_b2, alpha1, alpha2, wrt, c0_file, member_class;
    unsigned k = 2;
    std::size_t n = 3, max_vertices = 0, member_limit = 2'000'000;
    std::uint64_t node_limit = 0;
    bool monotone = false, non_monotone = false, no_jep = false;

    auto *validate = app.add_subcommand("validate", "Check class membership");
    validate->add_option("class", cls, "Class, e.g. steiner:k=3,t=2")->required();
    validate->add_option("file", file_a, "LMS structure")->required();

    auto *embeddings = app.add_subcommand("embeddings", "List embeddings of A into B");
    embeddings->add_option("A", file_a)->required();
    embeddings->add_option("B", file_b)->required();
    embeddings->add_flag("--monotone", monotone, "Embeddings must preserve the order");

    auto *amalgamate = app.add_subcommand("amalgamate", "Free amalgam of B1 and B2 over A");
    amalgamate->add_option("A", file_a)->required();
    amalgamate->add_option("B1", file_b)->required();
    amalgamate->add_option("B2", file_b2)->required();
    amalgamate->add_option("--alpha1", alpha1, "Embedding of A into B1 as comma-separated images");
    amalgamate->add_option("--alpha2", alpha2, "Embedding of A into B2 as comma-separated images");
    amalgamate->add_option("--class", member_class, "Also test whether a linear extension is a member");

    auto *complete = app.add_subcommand("complete", "Complete C with respect to copies of B");
    complete->add_option("class", cls)->required();
    complete->add_option("C", file_c)->required();
    complete->add_option("--wrt", wrt, "Structure B whose copies are preserved")->required();
    complete->add_option("--c0", c0_file, "Ordered structure C must map into");

    auto *arrow = app.add_subcommand("arrow", "Decide C -> (B)^A_k");
    arrow->add_option("C", file_c)->required();
    arrow->add_option("B", file_b)->required();
    arrow->add_option("A", file_a)->required();
    arrow->add_option("-k", k, "Number of colours")->required()->check(CLI::Range(1u, 1u << 20));
    arrow->add_flag("--non-monotone", non_monotone, "Ignore the order when counting copies");
    arrow->add_option("--node-limit", node_limit, "Search node cap (default RAMSEYFORGE_NODE_LIMIT or 1e8)");

    auto *search = app.add_subcommand("search", "Smallest class member C with C -> (B)^A_k");
    search->add_option("class", cls)->required();
    search->add_option("A", file_a)->required();
    search->add_option("B", file_b)->required();
    search->add_option("-k", k, "Number of colours")->required()->check(CLI::Range(1u, 1u << 20));
    search->add_option("--max", max_vertices, "Largest candidate size")->required();
    search->add_option("--node-limit", node_limit, "Search node cap per candidate");

    auto *audit = app.add_subcommand("audit", "Exhaustive hereditary / amalgamation audit");
    audit->add_option("class", cls)->required();
    audit->add_option("-n", n, "Largest member size")->required();
    audit->add_option("--member-limit", member_limit, "Budget of members visited by witness searches");
    audit->add_flag("--no-jep", no_jep, "Skip the joint embedding check");

    auto *convert = app.add_subcommand("convert", "Native document <-> LMS structure");
    convert->add_option("class", cls)->required();
    convert->add_option("infile", file_a)->required();

    std::reverse(args.begin(), args.end());
    try {
        app.parse(args);
    }
    catch (const CLI::CallForHelp &) {
        out << app.help();
        return exit_code::ok;
    }
    catch (const CLI::ParseError &e) {
        err << "error: " << e.what() << "\n";
        return exit_code::usage;
    }

    auto limit = node_limit ? std::optional<std::uint64_t>(node_limit) : std::nullopt;
    Report r;
    int code = exit_code::ok;
    try {
        if (*validate) {
            auto [name, options] = detail::parse_class_argument(cls);
            auto s = read_lms_file(file_a);
            auto spec = make_class(name, infer_options(name, s, options));
            auto report = spec.validate(s);
            r.add("command", "validate").add("class", spec.name).add("vertices", s.size());
            r.add("status", report.ok() ? "valid" : "invalid");
            if (report.ok())
                r.add("total", report.total);
            r.add("violations", report.violations.size());
            for (const auto &v : report.violations)
                r.add("violation", "axiom " + std::to_string(v.axiom) + ": " + v.message);
            code = report.ok() ? exit_code::ok : exit_code::negative;
        }
        else if (*embeddings) {
            auto a = read_lms_file(file_a);
            auto b = read_lms_file(file_b);
            auto found = enumerate_embeddings(a, b, monotone, threads);
            auto cs = copies(a, b, monotone, threads);
            r.add("command", "embeddings").add("monotone", monotone);
            r.add("embeddings", found.size()).add("copies", cs.size());
            for (const auto &e : found)
                r.add("embedding", detail::vertex_list(e));
            code = found.empty() ? exit_code::negative : exit_code::ok;
        }
        else if (*amalgamate) {
            AmalgamationInstance inst{read_lms_file(file_a), read_lms_file(file_b), read_lms_file(file_b2), {}, {}};
            auto pick = [&](const std::string &given, const Structure &b, const char *which) {
                if (! given.empty())
                    return detail::parse_map(given);
                auto all = enumerate_embeddings(inst.a, b, true);
                if (all.empty())
                    throw InputError(std::string("A does not embed into ") + which);
                return all.front();
            };
            inst.alpha1 = pick(alpha1, inst.b1, "B1");
            inst.alpha2 = pick(alpha2, inst.b2, "B2");
            auto am = free_amalgam(inst);
            r.add("command", "amalgamate").add("alpha1", detail::vertex_list(inst.alpha1));
            r.add("alpha2", detail::vertex_list(inst.alpha2)).add("vertices", am.c.size());
            r.add("beta1", detail::vertex_list(am.beta1)).add("beta2", detail::vertex_list(am.beta2));
            r.add("strong", is_strong_amalgam(am, inst)).add("ordered", am.c.ordered());
            if (! member_class.empty()) {
                auto [name, options] = detail::parse_class_argument(member_class);
                auto spec = make_class(name, infer_options(name, inst.b1, options));
                bool member = detail::free_candidate_accepted(spec, am);
                r.add("class", spec.name).add("member", member);
                code = member ? exit_code::ok : exit_code::negative;
            }
            r.add("amalgam", print_lms(am.c));
        }
        else if (*complete) {
            auto [name, options] = detail::parse_class_argument(cls);
            auto c = read_lms_file(file_c);
            auto b = read_lms_file(wrt);
            std::optional<Structure> c0;
            if (! c0_file.empty())
                c0 = read_lms_file(c0_file);
            auto spec = make_class(name, infer_options(name, c, options));
            if (! spec.complete)
                throw InputError("class '" + spec.name + "' has no completion procedure");
            auto result = spec.complete(c, b, c0 ? &*c0 : nullptr);
            bool member = spec.accepts(result.completed);
            bool preserved = preserves_copies(c, b, result, spec.monotone);
            r.add("command", "complete").add("class", spec.name).add("mode", std::string(to_string(result.mode)));
            r.add("member", member).add("copies_preserved", preserved).add("irreducible", result.irreducible);
            r.add("map", detail::vertex_list(result.map)).add("completion", print_lms(result.completed));
            code = member && preserved ? exit_code::ok : exit_code::negative;
        }
        else if (*arrow) {
            ArrowInstance inst{read_lms_file(file_c), read_lms_file(file_b), read_lms_file(file_a), k, ! non_monotone};
            auto result = arrow_check(inst, limit, threads);
            r.add("command", "arrow").add("k", std::size_t{k}).add("monotone", inst.monotone);
            r.add("status", std::string(to_string(result.status))).add("vacuous", result.vacuous);
            r.add("a_copies", result.a_copies.size()).add("b_copies", result.b_copies.size());
            r.add("edge_size", result.edge_size).add("nodes", std::to_string(result.nodes));
            if (result.status == ArrowStatus::refuted) {
                std::string witness;
                for (std::size_t i = 0; i < result.coloring.size(); ++i)
                    witness += set_string(result.a_copies.copies[i]) + " " + std::to_string(result.coloring[i]) + "\n";
                r.add("coloring", witness.empty() ? std::string("none\n") : witness);
            }
            code = result.status == ArrowStatus::verified ? exit_code::ok
                : result.status == ArrowStatus::refuted   ? exit_code::negative
                                                          : exit_code::inconclusive;
        }
        else if (*search) {
            auto [name, options] = detail::parse_class_argument(cls);
            auto a = read_lms_file(file_a);
            auto b = read_lms_file(file_b);
            auto spec = make_class(name, infer_options(name, b, options));
            auto result = witness_search(spec, a, b, k, max_vertices, limit);
            r.add("command", "search").add("class", spec.name).add("k", std::size_t{k});
            const char *status = result.status == WitnessStatus::found ? "found"
                : result.status == WitnessStatus::exhausted           ? "exhausted"
                                                                      : "inconclusive";
            r.add("status", status).add("candidates", result.candidates);
            if (result.c)
                r.add("vertices", result.c->size()).add("witness", print_lms(*result.c));
            code = result.status == WitnessStatus::found ? exit_code::ok
                : result.status == WitnessStatus::exhausted ? exit_code::negative
                                                            : exit_code::inconclusive;
        }
        else if (*audit) {
            auto [name, options] = detail::parse_class_argument(cls);
            auto spec = make_class(name, options);
            auto report = audit_class(spec, AuditOptions{n, member_limit, ! no_jep});
            r.add("command", "audit").add("class", report.class_name).add("n", report.n);
            std::string sizes;
            for (std::size_t i = 0; i < report.members_per_size.size(); ++i)
                sizes += (i ? " " : "") + std::to_string(report.members_per_size[i]);
            r.add("members_per_size", sizes);
            r.add("status", std::string(to_string(report.status())));
            detail::add_property(r, "hereditary", report.hereditary);
            detail::add_property(r, "strong_amalgamation", report.strong_amalgamation);
            detail::add_property(r, "joint_embedding", report.joint_embedding);
            auto s = report.status();
            code = s == AuditStatus::fail ? exit_code::negative
                : s == AuditStatus::inconclusive ? exit_code::inconclusive
                                                 : exit_code::ok;
        }
        else if (*convert) {
            auto [name, options] = detail::parse_class_argument(cls);
            auto text = detail::read_text_file(file_a);
            if (detail::looks_like_lms(text))
                out << decode_native(name, parse_lms(text), options);
            else
                out << print_lms(encode_native(name, text, options));
            return exit_code::ok;
        }
    }
    catch (const UsageError &e) {
        err << "error: " << e.what() << "\n";
        return exit_code::usage;
    }
    catch (const MissingFile &e) {
        err << "error: " << e.what() << "\n";
        return exit_code::no_input;
    }
    catch (const InputError &e) {
        err << "error: " << e.what() << "\n";
        return exit_code::data;
    }
    catch (const ClassError &e) {
        err << "error: " << e.what() << "\n";
        return exit_code::data;
    }
    catch (const std::exception &e) {
        err << "internal error: " << e.what() << "\n";
        return exit_code::internal;
    }
    r.write(out);
    return code;
}

} // namespace ramseyforge
