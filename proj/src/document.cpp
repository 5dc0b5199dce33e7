#include "finsim/document.hpp"

#include <json.hpp>

#include <cctype>
#include <sstream>

#include "finsim/units.hpp"

namespace finsim::doc {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(trim(cur));
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    out.push_back(trim(cur));
    return out;
}

void from_json(const nlohmann::json& j, Node& node) {
    for (auto it = j.begin(); it != j.end(); ++it) {
        const auto& v = it.value();
        if (v.is_object()) {
            Node& c = node.add_child(it.key());
            from_json(v, c);
        } else if (v.is_array() && !v.empty() && v.front().is_object()) {
            for (const auto& elem : v) {
                Node& c = node.add_child(it.key());
                from_json(elem, c);
            }
        } else if (v.is_array()) {
            std::string joined;
            for (std::size_t i = 0; i < v.size(); ++i) {
                if (i) joined += ", ";
                joined += v[i].is_string() ? v[i].get<std::string>()
                                           : units::format_double(v[i].get<double>());
            }
            node.set(it.key(), joined);
        } else if (v.is_string()) {
            node.set(it.key(), v.get<std::string>());
        } else if (v.is_boolean()) {
            node.set(it.key(), v.get<bool>() ? "true" : "false");
        } else {
            node.set(it.key(), units::format_double(v.get<double>()));
        }
    }
}

void render_node(const Node& node, const std::string& path, int depth, std::ostringstream& out) {
    const std::string indent(static_cast<std::size_t>(depth < 0 ? 0 : depth) * 2, ' ');
    if (!path.empty()) out << indent << "[" << path << "]\n";
    for (const auto& e : node.entries) {
        out << indent << e.key << " = " << e.value << "\n";
    }
    for (const auto& c : node.children) {
        out << "\n";
        render_node(c, path.empty() ? c.name : path + "." + c.name, depth + 1, out);
    }
}

bool plain_number(const std::string& v, double& out) {
    try {
        out = units::parse_quantity(v);
    } catch (const std::exception&) {
        return false;
    }
    // only treat as number when there was no unit suffix
    for (char c : v) {
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '%') return false;
    }
    return true;
}

nlohmann::json to_json(const Node& node) {
    nlohmann::json j = nlohmann::json::object();
    for (const auto& e : node.entries) {
        double num;
        if (e.value.find(',') != std::string::npos) {
            auto parts = split(e.value, ',');
            nlohmann::json arr = nlohmann::json::array();
            for (const auto& p : parts) {
                if (plain_number(p, num))
                    arr.push_back(num);
                else
                    arr.push_back(p);
            }
            j[e.key] = arr;
        } else if (plain_number(e.value, num)) {
            j[e.key] = num;
        } else {
            j[e.key] = e.value;
        }
    }
    for (const auto& c : node.children) {
        auto sub = to_json(c);
        if (j.contains(c.name)) {
            if (!j[c.name].is_array()) {
                nlohmann::json arr = nlohmann::json::array();
                arr.push_back(j[c.name]);
                j[c.name] = arr;
            }
            j[c.name].push_back(sub);
        } else {
            bool repeated = false;
            for (const auto& other : node.children)
                repeated = repeated || (&other != &c && other.name == c.name);
            if (repeated) {
                j[c.name] = nlohmann::json::array({sub});
            } else {
                j[c.name] = sub;
            }
        }
    }
    return j;
}

}  // namespace

const Node::Entry* Node::find(const std::string& key) const {
    for (const auto& e : entries)
        if (e.key == key) return &e;
    return nullptr;
}

double Node::quantity(const std::string& key) const {
    const Entry* e = find(key);
    if (!e) throw ParseError(line, "missing field '" + key + "' in [" + name + "]");
    try {
        return units::parse_quantity(e->value);
    } catch (const std::exception& ex) {
        throw ParseError(e->line, "field '" + key + "': " + ex.what());
    }
}

double Node::quantity_or(const std::string& key, double fallback) const {
    return find(key) ? quantity(key) : fallback;
}

std::string Node::text(const std::string& key) const {
    const Entry* e = find(key);
    if (!e) throw ParseError(line, "missing field '" + key + "' in [" + name + "]");
    return e->value;
}

std::string Node::text_or(const std::string& key, const std::string& fallback) const {
    const Entry* e = find(key);
    return e ? e->value : fallback;
}

std::vector<double> Node::quantity_list(const std::string& key) const {
    const Entry* e = find(key);
    if (!e) throw ParseError(line, "missing field '" + key + "' in [" + name + "]");
    std::vector<double> out;
    for (const auto& part : split(e->value, ',')) {
        if (part.empty()) continue;
        try {
            out.push_back(units::parse_quantity(part));
        } catch (const std::exception& ex) {
            throw ParseError(e->line, "field '" + key + "': " + ex.what());
        }
    }
    return out;
}

std::vector<std::string> Node::list(const std::string& key) const {
    const Entry* e = find(key);
    if (!e) return {};
    return split(e->value, ',');
}

const Node* Node::child(const std::string& name_) const {
    for (const auto& c : children)
        if (c.name == name_) return &c;
    return nullptr;
}

std::vector<const Node*> Node::all(const std::string& name_) const {
    std::vector<const Node*> out;
    for (const auto& c : children)
        if (c.name == name_) out.push_back(&c);
    return out;
}

Node& Node::add_child(const std::string& name_) {
    children.push_back(Node{});
    children.back().name = name_;
    return children.back();
}

void Node::set(const std::string& key, const std::string& value) {
    entries.push_back(Entry{key, value, 0});
}

void Node::set_quantity(const std::string& key, double si_value) {
    set(key, units::format_double(si_value));
}

Node parse(const std::string& text) {
    // JSON flavour
    for (char c : text) {
        if (std::isspace(static_cast<unsigned char>(c))) continue;
        if (c == '{') {
            Node root;
            try {
                auto j = nlohmann::json::parse(text);
                from_json(j, root);
            } catch (const nlohmann::json::exception& ex) {
                throw ParseError(0, std::string("json: ") + ex.what());
            }
            return root;
        }
        break;
    }

    Node root;
    Node* current = &root;
    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        std::string line = raw;
        if (auto pos = line.find('#'); pos != std::string::npos) line.erase(pos);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') throw ParseError(lineno, "unterminated section header");
            std::string path = trim(line.substr(1, line.size() - 2));
            if (path.empty()) throw ParseError(lineno, "empty section name");
            auto parts = split(path, '.');
            Node* node = &root;
            for (std::size_t i = 0; i + 1 < parts.size(); ++i) {
                Node* next = nullptr;
                for (auto& c : node->children)
                    if (c.name == parts[i]) next = &c;  // last sibling
                if (!next) throw ParseError(lineno, "section [" + parts[i] + "] not open yet");
                node = next;
            }
            current = &node->add_child(parts.back());
            current->line = lineno;
        } else {
            auto eq = line.find('=');
            if (eq == std::string::npos) throw ParseError(lineno, "expected 'key = value': " + line);
            std::string key = trim(line.substr(0, eq));
            std::string value = trim(line.substr(eq + 1));
            if (key.empty()) throw ParseError(lineno, "empty key");
            current->entries.push_back(Node::Entry{key, value, lineno});
        }
    }
    return root;
}

std::string render(const Node& root) {
    std::ostringstream out;
    render_node(root, "", -1, out);
    std::string s = out.str();
    if (!s.empty() && s.front() == '\n') s.erase(0, 1);
    return s;
}

std::string render_json(const Node& root) { return to_json(root).dump(2) + "\n"; }

}  // namespace finsim::doc
