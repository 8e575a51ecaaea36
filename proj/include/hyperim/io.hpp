#pragma once

#include <iosfwd>
#include <string>

#include "hyperim/hypergraph.hpp"

namespace hyperim {

/// Hyperedge-list text formats.
///  - Lines: one hyperedge per line, member node labels separated by
///    whitespace and/or commas.
///  - Bipartite: one incidence per line, "node_label edge_label".
enum class FileFormat { Lines, Bipartite };

/// How node labels are interpreted. Integer requires every token to parse
/// as a base-10 integer (the common dataset convention); String accepts
/// arbitrary tokens. Either way labels are remapped to dense 0-based ids
/// in order of first appearance and retained on the hypergraph.
enum class LabelPolicy { Integer, String };

FileFormat parse_file_format(const std::string& name);
LabelPolicy parse_label_policy(const std::string& name);

/// Parses a hyperedge list. Duplicate node occurrences within one hyperedge
/// are collapsed, empty lines skipped. Throws ParseError with the offending
/// 1-based line number on malformed input, and std::runtime_error if no
/// hyperedge survives cleaning.
Hypergraph load_hyperedge_list(std::istream& in, FileFormat format,
                               LabelPolicy labels = LabelPolicy::Integer);

Hypergraph load_hyperedge_file(const std::string& path, FileFormat format,
                               LabelPolicy labels = LabelPolicy::Integer);

/// Writes the Lines format using the hypergraph's retained labels.
void write_lines(std::ostream& out, const Hypergraph& h);
void write_lines_file(const std::string& path, const Hypergraph& h);

} // namespace hyperim
