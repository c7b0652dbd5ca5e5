#include "config.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace nle {

namespace {

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

}  // namespace

ConfigFile ConfigFile::parse(const std::string& text) {
    ConfigFile cf;
    std::istringstream is(text);
    std::string line, block;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw std::invalid_argument("config line " +
                                            std::to_string(lineno) +
                                            ": unterminated [block] header");
            block = trim(line.substr(1, line.size() - 2));
            if (block.empty())
                throw std::invalid_argument("config line " +
                                            std::to_string(lineno) +
                                            ": empty block name");
            cf.blocks[block];
            continue;
        }
        size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config line " + std::to_string(lineno) +
                                        ": expected key = value");
        std::string key = trim(line.substr(0, eq));
        std::string val = trim(line.substr(eq + 1));
        if (key.empty())
            throw std::invalid_argument("config line " + std::to_string(lineno) +
                                        ": empty key");
        cf.blocks[block][key] = val;
    }
    return cf;
}

ConfigFile ConfigFile::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config file: " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return parse(os.str());
}

bool ConfigFile::has(const std::string& block, const std::string& key) const {
    auto b = blocks.find(block);
    return b != blocks.end() && b->second.count(key) > 0;
}

std::string ConfigFile::get(const std::string& block, const std::string& key,
                            const std::string& fallback) const {
    auto b = blocks.find(block);
    if (b == blocks.end()) return fallback;
    auto k = b->second.find(key);
    return k == b->second.end() ? fallback : k->second;
}

double ConfigFile::get_num(const std::string& block, const std::string& key,
                           double fallback) const {
    if (!has(block, key)) return fallback;
    const std::string& v = blocks.at(block).at(key);
    size_t pos = 0;
    double out;
    try {
        out = std::stod(v, &pos);
    } catch (const std::exception&) {
        throw std::invalid_argument("config [" + block + "] " + key +
                                    ": not a number: " + v);
    }
    if (pos != v.size())
        throw std::invalid_argument("config [" + block + "] " + key +
                                    ": trailing junk: " + v);
    return out;
}

int ConfigFile::get_int(const std::string& block, const std::string& key,
                        int fallback) const {
    double v = get_num(block, key, fallback);
    int i = static_cast<int>(v);
    if (static_cast<double>(i) != v)
        throw std::invalid_argument("config [" + block + "] " + key +
                                    ": expected integer");
    return i;
}

std::vector<double> parse_list(const std::string& text) {
    std::string t = text;
    for (char& c : t)
        if (c == ',') c = ' ';
    std::istringstream is(t);
    std::vector<double> out;
    double v;
    while (is >> v) out.push_back(v);
    if (!is.eof()) throw std::invalid_argument("bad numeric list: " + text);
    return out;
}

std::vector<double> ConfigFile::get_list(const std::string& block,
                                         const std::string& key) const {
    if (!has(block, key)) return {};
    return parse_list(blocks.at(block).at(key));
}

}  // namespace nle
