#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace finsim::doc {

// Nested key-value document: '#' comments, 'key = value' pairs, and
// '[section]' headers where dots open subsections ([fin.ray]). Repeating a
// section name appends a sibling, which is how a robot lists several fins.
// The same tree can also be populated from a JSON object of identical shape.

struct ParseError : std::runtime_error {
    int line;
    ParseError(int line_, const std::string& what_)
        : std::runtime_error("line " + std::to_string(line_) + ": " + what_), line(line_) {}
};

struct Node {
    struct Entry {
        std::string key;
        std::string value;
        int line = 0;
    };
    std::string name;
    int line = 0;
    std::vector<Entry> entries;
    std::vector<Node> children;

    const Entry* find(const std::string& key) const;
    bool has(const std::string& key) const { return find(key) != nullptr; }
    // Base-SI scalar (unit suffixes converted). Throws ParseError on bad value.
    double quantity(const std::string& key) const;
    double quantity_or(const std::string& key, double fallback) const;
    std::string text(const std::string& key) const;
    std::string text_or(const std::string& key, const std::string& fallback) const;
    std::vector<double> quantity_list(const std::string& key) const;
    std::vector<std::string> list(const std::string& key) const;

    const Node* child(const std::string& name) const;  // first match or null
    std::vector<const Node*> all(const std::string& name) const;

    Node& add_child(const std::string& name);
    void set(const std::string& key, const std::string& value);
    void set_quantity(const std::string& key, double si_value);
};

// Parses either the key-value format or JSON (detected by a leading '{').
Node parse(const std::string& text);

// Renders a tree back to the key-value format.
std::string render(const Node& root);
// Renders to the JSON flavour of the schema.
std::string render_json(const Node& root);

}  // namespace finsim::doc
