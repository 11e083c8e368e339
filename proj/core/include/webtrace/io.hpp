#pragma once

#include <optional>
#include <string>

#include "webtrace/connection.hpp"
#include "webtrace/graph.hpp"
#include "webtrace/multiweb.hpp"

namespace webtrace {

// Self-describing graph document: graph, connection rank, optional cilia and
// connection matrices, optional symbolic edge weight names.
struct GraphDocument {
  std::size_t n = 1;
  EmbeddedBipartiteGraph graph;
  std::optional<Cilia> cilia;
  std::optional<Connection<Rational>> connection;
  std::map<int, std::string> weights;
};

// Throws std::runtime_error with a location-anchored message on bad input.
GraphDocument parse_graph_document(const std::string& text);
GraphDocument load_graph_document(const std::string& path);

std::string serialize_graph_document(const GraphDocument& doc);
void save_graph_document(const GraphDocument& doc, const std::string& path);

// Multiwebs serialize as edge-id -> multiplicity mappings.
Multiweb parse_multiweb(const std::string& text);
Multiweb load_multiweb(const std::string& path);
std::string serialize_multiweb(const Multiweb& m);

bool documents_equal(const GraphDocument& a, const GraphDocument& b);

}  // namespace webtrace
