#include "cglearn/graph_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <unordered_map>

namespace cglearn {

namespace {

std::vector<std::string> tokenize(const std::string& line) {
    std::vector<std::string> tokens;
    std::istringstream stream(line);
    std::string token;
    while (stream >> token) tokens.push_back(token);
    return tokens;
}

std::string strip_comment(const std::string& line) {
    const auto pos = line.find('#');
    return pos == std::string::npos ? line : line.substr(0, pos);
}

[[noreturn]] void fail(std::size_t line_no, const std::string& message) {
    throw GraphError("line " + std::to_string(line_no) + ": " + message);
}

class TokenResolver {
public:
    TokenResolver(std::size_t vertex_count, const std::vector<std::string>* labels)
        : p_(vertex_count) {
        if (labels != nullptr) {
            for (std::size_t i = 0; i < labels->size(); ++i) by_label_[(*labels)[i]] = i;
        }
    }

    VertexId resolve(const std::string& token, std::size_t line_no) const {
        const auto hit = by_label_.find(token);
        if (hit != by_label_.end()) {
            if (hit->second >= p_) fail(line_no, "label '" + token + "' out of range");
            return static_cast<VertexId>(hit->second);
        }
        VertexId value = 0;
        const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
        if (ec != std::errc() || ptr != token.data() + token.size()) {
            fail(line_no, "unknown vertex token '" + token + "'");
        }
        if (value >= p_) fail(line_no, "vertex id " + token + " out of range");
        return value;
    }

private:
    std::size_t p_;
    std::unordered_map<std::string, std::size_t> by_label_;
};

}  // namespace

std::string vertex_name(VertexId v, const std::vector<std::string>* labels) {
    if (labels != nullptr && v < labels->size()) return (*labels)[v];
    return std::to_string(v);
}

MixedGraph parse_graph(std::istream& in, const std::vector<std::string>* labels) {
    std::string line;
    std::size_t line_no = 0;
    bool have_header = false;
    std::size_t vertex_count = 0;
    MixedGraphBuilder builder(0);
    TokenResolver resolver(0, nullptr);

    while (std::getline(in, line)) {
        ++line_no;
        const auto tokens = tokenize(strip_comment(line));
        if (tokens.empty()) continue;
        if (tokens[0] == "p") {
            if (have_header) fail(line_no, "duplicate 'p' header");
            if (tokens.size() != 2) fail(line_no, "expected 'p <vertex-count>'");
            std::size_t count = 0;
            const auto& tok = tokens[1];
            const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), count);
            if (ec != std::errc() || ptr != tok.data() + tok.size()) {
                fail(line_no, "bad vertex count '" + tok + "'");
            }
            have_header = true;
            vertex_count = count;
            builder = MixedGraphBuilder(vertex_count);
            resolver = TokenResolver(vertex_count, labels);
            continue;
        }
        if (!have_header) fail(line_no, "edge before 'p' header");
        if (tokens.size() != 3 || (tokens[1] != "->" && tokens[1] != "--")) {
            fail(line_no, "expected '<u> -> <v>' or '<u> -- <v>'");
        }
        const VertexId u = resolver.resolve(tokens[0], line_no);
        const VertexId v = resolver.resolve(tokens[2], line_no);
        try {
            if (tokens[1] == "->") {
                builder.add_directed(u, v);
            } else {
                builder.add_undirected(u, v);
            }
        } catch (const GraphError& e) {
            fail(line_no, e.what());
        }
    }
    if (!have_header) throw GraphError("missing 'p <vertex-count>' header");
    return builder.build();
}

MixedGraph parse_graph(const std::string& text, const std::vector<std::string>* labels) {
    std::istringstream stream(text);
    return parse_graph(stream, labels);
}

MixedGraph load_graph(const std::string& path, const std::vector<std::string>* labels) {
    std::ifstream in(path);
    if (!in) throw GraphError("cannot open graph file: " + path);
    return parse_graph(in, labels);
}

std::string format_graph(const MixedGraph& g, const std::vector<std::string>* labels) {
    std::ostringstream out;
    out << "p " << g.vertex_count() << '\n';
    for (const auto& [u, v] : g.directed_edges()) {
        out << vertex_name(u, labels) << " -> " << vertex_name(v, labels) << '\n';
    }
    for (const auto& [u, v] : g.undirected_edges()) {
        out << vertex_name(u, labels) << " -- " << vertex_name(v, labels) << '\n';
    }
    return out.str();
}

void save_graph(const std::string& path, const MixedGraph& g,
                const std::vector<std::string>* labels) {
    std::ofstream out(path);
    if (!out) throw GraphError("cannot write graph file: " + path);
    out << format_graph(g, labels);
}

std::vector<std::string> parse_labels(std::istream& in) {
    std::vector<std::string> labels;
    std::string line;
    while (std::getline(in, line)) {
        const auto tokens = tokenize(strip_comment(line));
        if (tokens.empty()) continue;
        labels.push_back(tokens[0]);
    }
    return labels;
}

std::vector<std::string> load_labels(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw GraphError("cannot open labels file: " + path);
    return parse_labels(in);
}

PatternSidecar parse_pattern_sidecar(std::istream& in, std::size_t vertex_count,
                                     const std::vector<std::string>* labels) {
    PatternSidecar sidecar;
    TokenResolver resolver(vertex_count, labels);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto tokens = tokenize(strip_comment(line));
        if (tokens.empty()) continue;
        if (tokens.size() != 3) fail(line_no, "expected '<kind> <u> <v>'");
        const VertexId u = resolver.resolve(tokens[1], line_no);
        const VertexId v = resolver.resolve(tokens[2], line_no);
        if (tokens[0] == "arrow") {
            sidecar.arrows.emplace_back(u, v);
        } else if (tokens[0] == "ambiguous") {
            sidecar.ambiguous.emplace_back(std::min(u, v), std::max(u, v));
        } else {
            fail(line_no, "unknown sidecar entry '" + tokens[0] + "'");
        }
    }
    return sidecar;
}

std::string format_pattern_sidecar(const PatternSidecar& sidecar,
                                   const std::vector<std::string>* labels) {
    std::ostringstream out;
    for (const auto& [u, v] : sidecar.arrows) {
        out << "arrow " << vertex_name(u, labels) << ' ' << vertex_name(v, labels) << '\n';
    }
    for (const auto& [u, v] : sidecar.ambiguous) {
        out << "ambiguous " << vertex_name(u, labels) << ' ' << vertex_name(v, labels) << '\n';
    }
    return out.str();
}

}  // namespace cglearn
