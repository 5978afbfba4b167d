#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace ramseyforge::testing {

struct Golden
{
    int exit_code = 0;
    std::vector<std::string> args;
    std::string expect; // a full stdout line, or empty
    std::string text;   // the arguments as written, for messages
};

inline auto trim(std::string s) -> std::string
{
    auto b = s.find_first_not_of(" \t");
    if (b == std::string::npos)
        return {};
    auto e = s.find_last_not_of(" \t");
    return s.substr(b, e - b + 1);
}

/// Reads `exit | args | expected line` records, expanding $DATA.
inline auto load_goldens(const std::string &path, const std::string &data_dir) -> std::vector<Golden>
{
    std::ifstream in(path);
    if (! in)
        throw std::runtime_error("cannot open " + path);
    std::vector<Golden> out;
    std::string line;
    while (std::getline(in, line)) {
        if (trim(line).empty() || trim(line)[0] == '#')
            continue;
        auto bar1 = line.find('|');
        auto bar2 = line.find('|', bar1 + 1);
        Golden g;
        g.exit_code = std::stoi(line.substr(0, bar1));
        g.text = trim(line.substr(bar1 + 1, bar2 - bar1 - 1));
        g.expect = bar2 == std::string::npos ? "" : trim(line.substr(bar2 + 1));
        for (std::size_t at; (at = g.text.find("$DATA")) != std::string::npos;)
            g.text.replace(at, 5, data_dir);
        std::istringstream words(g.text);
        for (std::string w; words >> w;)
            g.args.push_back(w);
        out.push_back(std::move(g));
    }
    return out;
}

} // namespace ramseyforge::testing
