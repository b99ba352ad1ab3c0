#pragma once

#include <iosfwd>
#include <string>

#include "chsbm/core.hpp"

namespace chsbm::io {

/// Shortest decimal that parses back to the same double. Used in the
/// `chsbm v1` header so parameters round-trip exactly.
std::string format_double(double value);

/// Fixed 10-significant-digit rendering, the CSV contract.
std::string format_double_10sig(double value);

// Hypergraph text format (line oriented, 1-based node indices):
//   chsbm v1 n=<n> m=<m> p=<p> q=<q> t=<t>
//   <i1> <i2> ... <im> <s>        with s in {1, 0}; censored edges omitted.
void write_hypergraph(const CensoredHypergraph& graph, std::ostream& out);
void write_hypergraph_file(const CensoredHypergraph& graph, const std::string& path);
CensoredHypergraph read_hypergraph(std::istream& in);
CensoredHypergraph read_hypergraph_file(const std::string& path);

// Label file: one line of n space-separated tokens from {+1, -1}.
void write_labels(const LabelVector& labels, std::ostream& out);
void write_labels_file(const LabelVector& labels, const std::string& path);
LabelVector read_labels(std::istream& in);
LabelVector read_labels_file(const std::string& path);

}  // namespace chsbm::io
