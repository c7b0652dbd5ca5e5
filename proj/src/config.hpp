#pragma once
#include <map>
#include <string>
#include <vector>

namespace nle {

// line-oriented key = value configuration grouped by [block] headers;
// '#' starts a comment, blank lines ignored
struct ConfigFile {
    std::map<std::string, std::map<std::string, std::string>> blocks;

    static ConfigFile parse(const std::string& text);      // throws with line info
    static ConfigFile load(const std::string& path);

    bool has(const std::string& block, const std::string& key) const;
    std::string get(const std::string& block, const std::string& key,
                    const std::string& fallback) const;
    double get_num(const std::string& block, const std::string& key,
                   double fallback) const;
    int get_int(const std::string& block, const std::string& key,
                int fallback) const;
    // comma- or space-separated list of reals
    std::vector<double> get_list(const std::string& block,
                                 const std::string& key) const;
};

std::vector<double> parse_list(const std::string& text);

}  // namespace nle
