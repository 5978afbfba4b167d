#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ramseyforge {

/// Raised when an operation receives arguments that violate its precondition.
class InputError : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

struct RelationSymbol
{
    std::string name;
    unsigned arity = 0;

    auto operator<=>(const RelationSymbol &) const = default;
};

struct FunctionSymbol
{
    std::string name;
    unsigned domain_arity = 0;
    unsigned range_arity = 0;

    auto operator<=>(const FunctionSymbol &) const = default;
};

/// A finite signature: relational symbols with arities, set-valued function
/// symbols with domain arity d and range arity r, and an optional binary
/// relational symbol designated as the linear order.
///
/// Symbols of each kind are kept sorted by name so that indices are canonical;
/// build the language completely before creating structures over it.
class Language
{
public:
    Language() = default;

    auto add_relation(std::string name, unsigned arity) -> Language &
    {
        check_new_name(name);
        if (arity == 0)
            throw InputError("relation '" + name + "' must have positive arity");
        RelationSymbol sym{std::move(name), arity};
        auto pos = std::lower_bound(relations_.begin(), relations_.end(), sym,
            [](const auto &a, const auto &b) { return a.name < b.name; });
        relations_.insert(pos, std::move(sym));
        return *this;
    }

    auto add_function(std::string name, unsigned domain_arity, unsigned range_arity) -> Language &
    {
        check_new_name(name);
        if (domain_arity == 0 || range_arity == 0)
            throw InputError("function '" + name + "' must have positive arities");
        FunctionSymbol sym{std::move(name), domain_arity, range_arity};
        auto pos = std::lower_bound(functions_.begin(), functions_.end(), sym,
            [](const auto &a, const auto &b) { return a.name < b.name; });
        functions_.insert(pos, std::move(sym));
        return *this;
    }

    /// Designates an existing binary relation as the order symbol.
    auto set_order(const std::string &name) -> Language &
    {
        auto idx = relation_index(name);
        if (! idx)
            throw InputError("order symbol '" + name + "' is not a declared relation");
        if (relations_[*idx].arity != 2)
            throw InputError("order symbol '" + name + "' must be binary");
        order_name_ = name;
        return *this;
    }

    [[nodiscard]] auto relations() const -> const std::vector<RelationSymbol> & { return relations_; }
    [[nodiscard]] auto functions() const -> const std::vector<FunctionSymbol> & { return functions_; }

    [[nodiscard]] auto relation_index(const std::string &name) const -> std::optional<std::size_t>
    {
        for (std::size_t i = 0; i < relations_.size(); ++i)
            if (relations_[i].name == name)
                return i;
        return std::nullopt;
    }

    [[nodiscard]] auto function_index(const std::string &name) const -> std::optional<std::size_t>
    {
        for (std::size_t i = 0; i < functions_.size(); ++i)
            if (functions_[i].name == name)
                return i;
        return std::nullopt;
    }

    [[nodiscard]] auto relation(const std::string &name) const -> std::size_t
    {
        if (auto i = relation_index(name))
            return *i;
        throw InputError("unknown relation symbol '" + name + "'");
    }

    [[nodiscard]] auto function(const std::string &name) const -> std::size_t
    {
        if (auto i = function_index(name))
            return *i;
        throw InputError("unknown function symbol '" + name + "'");
    }

    [[nodiscard]] auto order_name() const -> const std::optional<std::string> & { return order_name_; }

    [[nodiscard]] auto order_index() const -> std::optional<std::size_t>
    {
        if (! order_name_)
            return std::nullopt;
        return relation_index(*order_name_);
    }

    [[nodiscard]] auto has_functions() const -> bool { return ! functions_.empty(); }

    auto operator==(const Language &) const -> bool = default;

private:
    void check_new_name(const std::string &name) const
    {
        if (name.empty())
            throw InputError("symbol names must be nonempty");
        if (relation_index(name) || function_index(name))
            throw InputError("duplicate symbol '" + name + "'");
    }

    std::vector<RelationSymbol> relations_;
    std::vector<FunctionSymbol> functions_;
    std::optional<std::string> order_name_;
};

using LanguagePtr = std::shared_ptr<const Language>;

inline auto share(Language lang) -> LanguagePtr
{
    return std::make_shared<const Language>(std::move(lang));
}

inline auto same_language(const LanguagePtr &a, const LanguagePtr &b) -> bool
{
    return a == b || (a && b && *a == *b);
}

} // namespace ramseyforge
