#include "backfrac/config.hpp"

#include "backfrac/errors.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace backfrac::config {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace((unsigned char)s[a])) ++a;
    while (b > a && std::isspace((unsigned char)s[b - 1])) --b;
    return s.substr(a, b - a);
}

// strip a trailing comment, respecting double-quoted strings
std::string strip_comment(const std::string& line) {
    bool in_str = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        if (line[i] == '"') in_str = !in_str;
        if (line[i] == '#' && !in_str) return line.substr(0, i);
    }
    return line;
}

Value parse_scalar(const std::string& tok, int line_no) {
    if (tok == "true") return true;
    if (tok == "false") return false;
    if (tok.size() >= 2 && tok.front() == '"' && tok.back() == '"')
        return tok.substr(1, tok.size() - 2);
    try {
        std::size_t used = 0;
        double v = std::stod(tok, &used);
        if (used == tok.size()) return v;
    } catch (...) {
    }
    throw config_error("config line " + std::to_string(line_no) + ": cannot parse value '" + tok +
                       "'");
}

Value parse_value(const std::string& raw, int line_no) {
    const std::string tok = trim(raw);
    if (tok.empty()) throw config_error("config line " + std::to_string(line_no) + ": empty value");
    if (tok.front() == '[') {
        if (tok.back() != ']')
            throw config_error("config line " + std::to_string(line_no) + ": unterminated array");
        std::vector<double> nums;
        std::vector<std::string> strs;
        bool any_str = false;
        std::string body = tok.substr(1, tok.size() - 2);
        std::stringstream ss(body);
        std::string item;
        while (std::getline(ss, item, ',')) {
            item = trim(item);
            if (item.empty()) continue;
            Value v = parse_scalar(item, line_no);
            if (std::holds_alternative<double>(v)) {
                nums.push_back(std::get<double>(v));
            } else if (std::holds_alternative<std::string>(v)) {
                any_str = true;
                strs.push_back(std::get<std::string>(v));
            } else {
                throw config_error("config line " + std::to_string(line_no) +
                                   ": arrays hold numbers or strings");
            }
        }
        if (any_str) {
            if (!nums.empty())
                throw config_error("config line " + std::to_string(line_no) + ": mixed array");
            return strs;
        }
        return nums;
    }
    return parse_scalar(tok, line_no);
}

}  // namespace

Table parse_toml(std::istream& in) {
    Table table;
    std::string section = "";
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        line = trim(strip_comment(line));
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw config_error("config line " + std::to_string(line_no) +
                                   ": malformed section header");
            section = trim(line.substr(1, line.size() - 2));
            table[section];
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw config_error("config line " + std::to_string(line_no) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        if (key.empty())
            throw config_error("config line " + std::to_string(line_no) + ": empty key");
        table[section][key] = parse_value(line.substr(eq + 1), line_no);
    }
    return table;
}

Table parse_toml_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw config_error("cannot open config file: " + path);
    return parse_toml(in);
}

bool has_key(const Table& t, const std::string& section, const std::string& key) {
    auto s = t.find(section);
    return s != t.end() && s->second.count(key) > 0;
}

namespace {
const Value* find(const Table& t, const std::string& section, const std::string& key) {
    auto s = t.find(section);
    if (s == t.end()) return nullptr;
    auto k = s->second.find(key);
    return k == s->second.end() ? nullptr : &k->second;
}
}  // namespace

bool get_bool(const Table& t, const std::string& section, const std::string& key, bool fallback) {
    const Value* v = find(t, section, key);
    if (!v) return fallback;
    if (auto* b = std::get_if<bool>(v)) return *b;
    throw config_error("config: [" + section + "] " + key + " must be a boolean");
}

double get_number(const Table& t, const std::string& section, const std::string& key,
                  double fallback) {
    const Value* v = find(t, section, key);
    if (!v) return fallback;
    if (auto* d = std::get_if<double>(v)) return *d;
    throw config_error("config: [" + section + "] " + key + " must be a number");
}

std::string get_string(const Table& t, const std::string& section, const std::string& key,
                       const std::string& fallback) {
    const Value* v = find(t, section, key);
    if (!v) return fallback;
    if (auto* s = std::get_if<std::string>(v)) return *s;
    throw config_error("config: [" + section + "] " + key + " must be a string");
}

std::vector<double> get_numbers(const Table& t, const std::string& section, const std::string& key,
                                std::vector<double> fallback) {
    const Value* v = find(t, section, key);
    if (!v) return fallback;
    if (auto* a = std::get_if<std::vector<double>>(v)) return *a;
    if (auto* d = std::get_if<double>(v)) return {*d};
    throw config_error("config: [" + section + "] " + key + " must be a number array");
}

}  // namespace backfrac::config
