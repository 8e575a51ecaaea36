#include "hyperim/io.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_map>

#include "hyperim/errors.hpp"

namespace hyperim {

namespace {

bool is_integer_token(const std::string& tok) {
    std::size_t i = (tok[0] == '-' || tok[0] == '+') ? 1 : 0;
    if (i == tok.size()) {
        return false;
    }
    return std::all_of(tok.begin() + static_cast<long>(i), tok.end(),
                       [](unsigned char c) { return std::isdigit(c); });
}

std::vector<std::string> split_tokens(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == ' ' || c == '\t' || c == '\r' || c == ',') {
            if (!cur.empty()) {
                out.push_back(std::move(cur));
                cur.clear();
            }
        } else {
            cur.push_back(c);
        }
    }
    if (!cur.empty()) {
        out.push_back(std::move(cur));
    }
    return out;
}

class LabelMap {
  public:
    explicit LabelMap(LabelPolicy policy) : policy_(policy) {}

    NodeId intern(const std::string& tok, std::size_t line) {
        if (policy_ == LabelPolicy::Integer && !is_integer_token(tok)) {
            throw ParseError(line, "malformed token '" + tok + "' (expected integer label)");
        }
        auto [it, inserted] = ids_.try_emplace(tok, static_cast<NodeId>(labels_.size()));
        if (inserted) {
            labels_.push_back(tok);
        }
        return it->second;
    }

    std::vector<std::string> take_labels() { return std::move(labels_); }
    std::size_t size() const { return labels_.size(); }

  private:
    LabelPolicy policy_;
    std::unordered_map<std::string, NodeId> ids_;
    std::vector<std::string> labels_;
};

Hypergraph load_lines(std::istream& in, LabelPolicy policy) {
    LabelMap nodes(policy);
    std::vector<std::vector<NodeId>> edges;
    std::string line;
    std::size_t lineno = 0;
    std::vector<NodeId> members;
    while (std::getline(in, line)) {
        ++lineno;
        const auto tokens = split_tokens(line);
        if (tokens.empty()) {
            continue;
        }
        members.clear();
        for (const auto& tok : tokens) {
            const NodeId v = nodes.intern(tok, lineno);
            if (std::find(members.begin(), members.end(), v) == members.end()) {
                members.push_back(v);
            }
        }
        edges.push_back(members);
    }
    if (edges.empty()) {
        throw std::runtime_error("empty input: no hyperedges after cleaning");
    }
    const std::size_t n = nodes.size();
    return Hypergraph::from_edges(n, edges, nodes.take_labels());
}

Hypergraph load_bipartite(std::istream& in, LabelPolicy policy) {
    LabelMap nodes(policy);
    std::unordered_map<std::string, EdgeId> edge_ids;
    std::vector<std::vector<NodeId>> edges;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto tokens = split_tokens(line);
        if (tokens.empty()) {
            continue;
        }
        if (tokens.size() != 2) {
            throw ParseError(lineno, "expected 'node_label edge_label'");
        }
        const NodeId v = nodes.intern(tokens[0], lineno);
        auto [it, inserted] = edge_ids.try_emplace(tokens[1], static_cast<EdgeId>(edges.size()));
        if (inserted) {
            edges.emplace_back();
        }
        auto& members = edges[it->second];
        if (std::find(members.begin(), members.end(), v) == members.end()) {
            members.push_back(v);
        }
    }
    if (edges.empty()) {
        throw std::runtime_error("empty input: no hyperedges after cleaning");
    }
    const std::size_t n = nodes.size();
    return Hypergraph::from_edges(n, edges, nodes.take_labels());
}

} // namespace

FileFormat parse_file_format(const std::string& name) {
    if (name == "lines") {
        return FileFormat::Lines;
    }
    if (name == "bipartite") {
        return FileFormat::Bipartite;
    }
    throw ConfigError("unknown file format '" + name + "' (expected lines|bipartite)");
}

LabelPolicy parse_label_policy(const std::string& name) {
    if (name == "int" || name == "integer") {
        return LabelPolicy::Integer;
    }
    if (name == "string") {
        return LabelPolicy::String;
    }
    throw ConfigError("unknown label policy '" + name + "' (expected int|string)");
}

Hypergraph load_hyperedge_list(std::istream& in, FileFormat format, LabelPolicy labels) {
    return format == FileFormat::Lines ? load_lines(in, labels) : load_bipartite(in, labels);
}

Hypergraph load_hyperedge_file(const std::string& path, FileFormat format, LabelPolicy labels) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open '" + path + "' for reading");
    }
    return load_hyperedge_list(in, format, labels);
}

void write_lines(std::ostream& out, const Hypergraph& h) {
    for (EdgeId e = 0; e < h.num_edges(); ++e) {
        bool first = true;
        for (NodeId v : h.nodes_of(e)) {
            if (!first) {
                out << ' ';
            }
            out << h.label_of(v);
            first = false;
        }
        out << '\n';
    }
}

void write_lines_file(const std::string& path, const Hypergraph& h) {
    std::ofstream out(path);
    if (!out) {
        throw IoError("cannot open '" + path + "' for writing");
    }
    write_lines(out, h);
    if (!out.flush()) {
        throw IoError("write failed for '" + path + "'");
    }
}

} // namespace hyperim
