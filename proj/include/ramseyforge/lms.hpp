#pragma once

#include <ramseyforge/structure.hpp>

#include <charconv>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>

namespace ramseyforge {

/// Malformed LMS text; `line` is 1-based (0 when the problem is global).
class ParseError : public InputError
{
public:
    ParseError(std::size_t line, const std::string &message) :
        InputError(line ? "line " + std::to_string(line) + ": " + message : message), line_(line), message_(message)
    {
    }

    [[nodiscard]] auto line() const -> std::size_t { return line_; }
    [[nodiscard]] auto message() const -> const std::string & { return message_; }

private:
    std::size_t line_;
    std::string message_;
};

/// A file that could not be opened.
class MissingFile : public InputError
{
public:
    using InputError::InputError;
};

/// Canonical text: header, language (relations, order, functions, each sorted
/// by name), vertex count, ordered flag, one line per relation, one line per
/// function entry.
inline auto print_lms(const Structure &s) -> std::string
{
    const auto &lang = s.language();
    std::string out = "lms 1\n";
    for (const auto &r : lang.relations())
        out += "lang rel " + r.name + " " + std::to_string(r.arity) + "\n";
    if (lang.order_name())
        out += "lang order " + *lang.order_name() + "\n";
    for (const auto &f : lang.functions())
        out += "lang fun " + f.name + " " + std::to_string(f.domain_arity) + " " + std::to_string(f.range_arity) + "\n";
    out += "vertices " + std::to_string(s.size()) + "\n";
    if (s.ordered())
        out += "ordered\n";
    for (std::size_t r = 0; r < lang.relations().size(); ++r) {
        out += "rel " + lang.relations()[r].name + ":";
        for (const auto &t : s.relation(r))
            out += " " + tuple_string(t);
        out += "\n";
    }
    for (std::size_t f = 0; f < lang.functions().size(); ++f)
        for (const auto &[dom, range] : s.function(f))
            out += "fun " + lang.functions()[f].name + ": " + tuple_string(dom) + " -> " + set_string(range) + "\n";
    return out;
}

namespace detail {

/// Cursor over one line with whitespace skipping.
class LineReader
{
public:
    LineReader(std::string_view text, std::size_t line) : text_(text), line_(line) {}

    void skip_space()
    {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }

    auto done() -> bool
    {
        skip_space();
        return pos_ == text_.size();
    }

    auto peek() -> char
    {
        skip_space();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    void expect(char c)
    {
        if (peek() != c)
            fail(std::string("expected '") + c + "'");
        ++pos_;
    }

    auto word() -> std::string
    {
        skip_space();
        auto start = pos_;
        while (pos_ < text_.size() && ! std::isspace(static_cast<unsigned char>(text_[pos_])) &&
            text_[pos_] != ':' && text_[pos_] != '(' && text_[pos_] != '{')
            ++pos_;
        if (start == pos_)
            fail("expected a name");
        return std::string(text_.substr(start, pos_ - start));
    }

    auto number() -> std::uint64_t
    {
        skip_space();
        std::uint64_t v = 0;
        auto [ptr, ec] = std::from_chars(text_.data() + pos_, text_.data() + text_.size(), v);
        if (ec != std::errc())
            fail("expected a number");
        pos_ = static_cast<std::size_t>(ptr - text_.data());
        return v;
    }

    /// `(a,b,...)` or `{a,b,...}` depending on the opening bracket.
    auto list(char open, char close) -> Tuple
    {
        expect(open);
        Tuple t;
        if (peek() == close) {
            ++pos_;
            return t;
        }
        while (true) {
            auto v = number();
            if (v > std::numeric_limits<Vertex>::max())
                fail("vertex out of range");
            t.push_back(static_cast<Vertex>(v));
            if (peek() == ',') {
                ++pos_;
                continue;
            }
            expect(close);
            return t;
        }
    }

    [[noreturn]] void fail(const std::string &message) const { throw ParseError(line_, message); }

private:
    std::string_view text_;
    std::size_t line_;
    std::size_t pos_ = 0;
};

} // namespace detail

/// Parses LMS text into a structure that passes validate_structure.
inline auto parse_lms(std::string_view text) -> Structure
{
    Language lang;
    std::optional<std::string> order_name;
    std::optional<std::size_t> order_line;
    std::optional<Structure> s;
    std::size_t ordered_line = 0;
    bool seen_content = false;

    auto freeze = [&](std::size_t line, const std::string &what) {
        if (! s)
            throw ParseError(line, "'" + what + "' before the vertices line");
    };

    std::size_t line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        auto end = text.find('\n', start);
        if (end == std::string_view::npos)
            end = text.size();
        auto raw = text.substr(start, end - start);
        start = end + 1;
        ++line_no;
        if (auto hash = raw.find('#'); hash != std::string_view::npos)
            raw = raw.substr(0, hash);
        detail::LineReader in(raw, line_no);
        if (in.done())
            continue;
        auto keyword = in.word();

        if (keyword == "lms") {
            if (seen_content)
                in.fail("the lms header must come first");
            if (in.number() != 1)
                in.fail("unsupported format version");
        }
        else if (keyword == "lang") {
            if (s)
                in.fail("language declarations must precede the vertices line");
            auto kind = in.word();
            try {
                if (kind == "rel") {
                    auto name = in.word();
                    lang.add_relation(name, static_cast<unsigned>(in.number()));
                }
                else if (kind == "fun") {
                    auto name = in.word();
                    auto d = static_cast<unsigned>(in.number());
                    lang.add_function(name, d, static_cast<unsigned>(in.number()));
                }
                else if (kind == "order") {
                    if (order_name)
                        in.fail("order symbol declared twice");
                    order_name = in.word();
                    order_line = line_no;
                }
                else
                    in.fail("unknown declaration '" + kind + "'");
            }
            catch (const ParseError &) {
                throw;
            }
            catch (const InputError &e) {
                in.fail(e.what());
            }
        }
        else if (keyword == "vertices") {
            if (s)
                in.fail("duplicate vertices line");
            auto n = in.number();
            if (n > std::numeric_limits<Vertex>::max())
                in.fail("too many vertices");
            if (order_name) {
                try {
                    lang.set_order(*order_name);
                }
                catch (const InputError &e) {
                    throw ParseError(*order_line, e.what());
                }
            }
            s.emplace(share(lang), static_cast<std::size_t>(n));
        }
        else if (keyword == "ordered") {
            freeze(line_no, keyword);
            if (ordered_line)
                in.fail("duplicate ordered flag");
            if (! s->language().order_index())
                in.fail("ordered flag without an order symbol");
            ordered_line = line_no;
        }
        else if (keyword == "rel") {
            freeze(line_no, keyword);
            auto name = in.word();
            in.expect(':');
            auto r = s->language().relation_index(name);
            if (! r)
                in.fail("unknown symbol '" + name + "'");
            auto arity = s->language().relations()[*r].arity;
            while (! in.done()) {
                auto t = in.list('(', ')');
                if (t.size() != arity)
                    in.fail("arity mismatch in " + tuple_string(t));
                for (auto v : t)
                    if (v >= s->size())
                        in.fail("vertex out of range in " + tuple_string(t));
                if (! s->add_tuple(*r, t))
                    in.fail("duplicate entry " + tuple_string(t));
            }
        }
        else if (keyword == "fun") {
            freeze(line_no, keyword);
            auto name = in.word();
            in.expect(':');
            auto f = s->language().function_index(name);
            if (! f)
                in.fail("unknown symbol '" + name + "'");
            const auto &sym = s->language().functions()[*f];
            auto dom = in.list('(', ')');
            in.expect('-');
            in.expect('>');
            auto range = in.list('{', '}');
            if (! in.done())
                in.fail("trailing text after function entry");
            if (dom.size() != sym.domain_arity)
                in.fail("arity mismatch in " + tuple_string(dom));
            if (range.size() != sym.range_arity || has_repeats(range))
                in.fail("range size");
            for (auto v : dom)
                if (v >= s->size())
                    in.fail("vertex out of range in " + tuple_string(dom));
            for (auto v : range)
                if (v >= s->size())
                    in.fail("vertex out of range in " + set_string(range));
            if (! s->set_value(*f, dom, range))
                in.fail("duplicate entry " + tuple_string(dom));
        }
        else
            in.fail("unknown keyword '" + keyword + "'");
        seen_content = true;
    }
    if (! s)
        throw ParseError(0, "missing vertices line");
    if (ordered_line) {
        s->set_ordered(true);
        if (! is_linear_order(*s))
            throw ParseError(ordered_line, "order relation is not a linear order");
    }
    return std::move(*s);
}

inline auto read_lms_file(const std::string &path) -> Structure
{
    std::ifstream in(path);
    if (! in)
        throw MissingFile("cannot open '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    try {
        return parse_lms(buf.str());
    }
    catch (const ParseError &e) {
        throw ParseError(e.line(), path + ": " + e.message());
    }
}

} // namespace ramseyforge
