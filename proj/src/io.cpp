#include "chsbm/io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace chsbm::io {

namespace {

bool parses_back(const std::string& text, double value) {
    char* end = nullptr;
    const double parsed = std::strtod(text.c_str(), &end);
    return end && *end == '\0' && parsed == value;
}

double parse_double_token(const std::string& token, const char* what,
                          std::size_t line) {
    char* end = nullptr;
    const double value = std::strtod(token.c_str(), &end);
    if (!end || *end != '\0' || token.empty()) {
        throw FormatError(std::string("expected a real for ") + what + ", got '" +
                              token + "'",
                          line);
    }
    return value;
}

std::uint64_t parse_uint_token(const std::string& token, const char* what,
                               std::size_t line) {
    char* end = nullptr;
    const unsigned long long value = std::strtoull(token.c_str(), &end, 10);
    if (!end || *end != '\0' || token.empty() || token[0] == '-') {
        throw FormatError(std::string("expected an integer for ") + what + ", got '" +
                              token + "'",
                          line);
    }
    return value;
}

std::string expect_kv(const std::string& token, const std::string& key,
                      std::size_t line) {
    const std::string prefix = key + "=";
    if (token.rfind(prefix, 0) != 0) {
        throw FormatError("expected '" + key + "=<value>', got '" + token + "'", line);
    }
    return token.substr(prefix.size());
}

}  // namespace

std::string format_double(double value) {
    char buf[40];
    for (int precision = 15; precision <= 17; ++precision) {
        std::snprintf(buf, sizeof(buf), "%.*g", precision, value);
        if (parses_back(buf, value)) {
            return buf;
        }
    }
    return buf;
}

std::string format_double_10sig(double value) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.10g", value);
    return buf;
}

void write_hypergraph(const CensoredHypergraph& graph, std::ostream& out) {
    const ModelParams& params = graph.params();
    out << "chsbm v1 n=" << params.n << " m=" << params.m
        << " p=" << format_double(params.p) << " q=" << format_double(params.q)
        << " t=" << format_double(params.t) << "\n";
    for (const auto& [key, status] : graph.revealed_sorted()) {
        for (NodeId node : key.nodes) {
            out << (node + 1) << ' ';
        }
        out << (status == EdgeStatus::Present ? '1' : '0') << "\n";
    }
}

void write_hypergraph_file(const CensoredHypergraph& graph, const std::string& path) {
    std::ofstream out(path);
    if (!out) {
        throw IoError("cannot open '" + path + "' for writing");
    }
    write_hypergraph(graph, out);
    if (!out) {
        throw IoError("write failed for '" + path + "'");
    }
}

CensoredHypergraph read_hypergraph(std::istream& in) {
    std::string line;
    std::size_t line_number = 0;

    if (!std::getline(in, line)) {
        throw FormatError("missing chsbm header", 1);
    }
    ++line_number;
    std::istringstream header(line);
    std::string magic, version, tok_n, tok_m, tok_p, tok_q, tok_t;
    header >> magic >> version >> tok_n >> tok_m >> tok_p >> tok_q >> tok_t;
    if (magic != "chsbm" || version != "v1") {
        throw FormatError("expected header 'chsbm v1 ...', got '" + line + "'",
                          line_number);
    }
    const std::uint64_t n = parse_uint_token(expect_kv(tok_n, "n", 1), "n", 1);
    const std::uint64_t m = parse_uint_token(expect_kv(tok_m, "m", 1), "m", 1);
    const double p = parse_double_token(expect_kv(tok_p, "p", 1), "p", 1);
    const double q = parse_double_token(expect_kv(tok_q, "q", 1), "q", 1);
    const double t = parse_double_token(expect_kv(tok_t, "t", 1), "t", 1);

    ModelParams params(static_cast<std::uint32_t>(n), static_cast<std::uint32_t>(m), p,
                       q, t);
    CensoredHypergraph graph(params);

    while (std::getline(in, line)) {
        ++line_number;
        if (line.empty()) {
            continue;
        }
        std::istringstream row(line);
        std::vector<NodeId> nodes;
        std::string token;
        for (std::uint32_t i = 0; i < m; ++i) {
            if (!(row >> token)) {
                throw FormatError("edge line has fewer than m indices", line_number);
            }
            const std::uint64_t external = parse_uint_token(token, "node index",
                                                            line_number);
            if (external == 0 || external > n) {
                throw FormatError("node index " + token + " outside [1, " +
                                      std::to_string(n) + "]",
                                  line_number);
            }
            nodes.push_back(static_cast<NodeId>(external - 1));  // 1-based on disk
        }
        if (!(row >> token)) {
            throw FormatError("edge line is missing the status field", line_number);
        }
        EdgeStatus status;
        if (token == "1") {
            status = EdgeStatus::Present;
        } else if (token == "0") {
            status = EdgeStatus::Absent;
        } else {
            throw FormatError("status must be 1 or 0, got '" + token + "'",
                              line_number);
        }
        if (row >> token) {
            throw FormatError("trailing token '" + token + "' after status",
                              line_number);
        }
        for (std::size_t i = 1; i < nodes.size(); ++i) {
            if (nodes[i] <= nodes[i - 1]) {
                throw FormatError("node indices must be strictly ascending",
                                  line_number);
            }
        }
        HyperedgeKey key{std::move(nodes)};
        try {
            graph.set_status(key, status);
        } catch (const InvalidEdge& e) {
            throw FormatError(e.what(), line_number);
        }
    }
    return graph;
}

CensoredHypergraph read_hypergraph_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open '" + path + "' for reading");
    }
    return read_hypergraph(in);
}

void write_labels(const LabelVector& labels, std::ostream& out) {
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (i > 0) {
            out << ' ';
        }
        out << (labels[i] > 0 ? "+1" : "-1");
    }
    out << "\n";
}

void write_labels_file(const LabelVector& labels, const std::string& path) {
    std::ofstream out(path);
    if (!out) {
        throw IoError("cannot open '" + path + "' for writing");
    }
    write_labels(labels, out);
    if (!out) {
        throw IoError("write failed for '" + path + "'");
    }
}

LabelVector read_labels(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) {
        throw FormatError("missing label line", 1);
    }
    std::istringstream row(line);
    std::vector<std::int8_t> labels;
    std::string token;
    while (row >> token) {
        if (token == "+1") {
            labels.push_back(1);
        } else if (token == "-1") {
            labels.push_back(-1);
        } else {
            throw FormatError("label token must be +1 or -1, got '" + token + "'", 1);
        }
    }
    if (labels.empty()) {
        throw FormatError("label line is empty", 1);
    }
    return LabelVector(std::move(labels));
}

LabelVector read_labels_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open '" + path + "' for reading");
    }
    return read_labels(in);
}

}  // namespace chsbm::io
