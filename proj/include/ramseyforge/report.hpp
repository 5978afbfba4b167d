#pragma once

#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace ramseyforge {

/// Key: value lines in insertion order. Multi-line values are written as
/// `key: |` followed by the lines indented by two spaces.
class Report
{
public:
    auto add(std::string key, std::string value) -> Report &
    {
        fields_.emplace_back(std::move(key), std::move(value));
        return *this;
    }

    auto add(std::string key, std::size_t value) -> Report & { return add(std::move(key), std::to_string(value)); }

    auto add(std::string key, bool value) -> Report & { return add(std::move(key), std::string(value ? "true" : "false")); }

    auto add(std::string key, const char *value) -> Report & { return add(std::move(key), std::string(value)); }

    [[nodiscard]] auto fields() const -> const std::vector<std::pair<std::string, std::string>> & { return fields_; }

    void write(std::ostream &out) const
    {
        for (const auto &[key, value] : fields_) {
            if (value.find('\n') == std::string::npos) {
                out << key << ": " << value << "\n";
                continue;
            }
            out << key << ": |\n";
            std::size_t start = 0;
            while (start < value.size()) {
                auto end = value.find('\n', start);
                if (end == std::string::npos)
                    end = value.size();
                out << "  " << value.substr(start, end - start) << "\n";
                start = end + 1;
            }
        }
    }

private:
    std::vector<std::pair<std::string, std::string>> fields_;
};

} // namespace ramseyforge
