#pragma once

#include "rankgap/extraction.hpp"
#include "rankgap/graph.hpp"
#include "rankgap/matrix.hpp"
#include "rankgap/nets.hpp"
#include "rankgap/partial.hpp"
#include "rankgap/reductions.hpp"
#include "rankgap/representations.hpp"

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

// Text formats. Vertices, arcs and net points are 1-indexed on disk. Reals are
// written in shortest round-trip form, so write -> read -> write is the identity.
namespace rankgap::io {

std::string format_double(double x);
double parse_double(const std::string& token);

using Meta = std::vector<std::pair<std::string, std::string>>;

struct GraphFile {
  Graph graph;
  /// `v <index> <tail> <head>` lines, if any.
  std::vector<Arc> provenance;
  /// `c <key> <value...>` comment lines, in order.
  Meta meta;
};

void write_graph(std::ostream& os, const Graph& g, const Meta& meta = {});
void write_provenance(std::ostream& os, const std::vector<Arc>& provenance);
GraphFile read_graph_file(std::istream& is);
Graph read_graph(std::istream& is);

void write_coloring(std::ostream& os, const Coloring& c);
Coloring read_coloring(std::istream& is);

void write_matrix(std::ostream& os, const Matrix& m);
Matrix read_matrix(std::istream& is);

void write_partial(std::ostream& os, const PartialMatrix& a);
PartialMatrix read_partial(std::istream& is);

void write_fitness(std::ostream& os, const FitnessInstance& inst);
FitnessInstance read_fitness(std::istream& is);

void write_completion(std::ostream& os, const CompletionInstance& inst);
CompletionInstance read_completion(std::istream& is);

/// `cert <kind>`, then a coloring block, then a matrix block.
void write_certificate(std::ostream& os, const std::string& kind, const YesCertificate& cert);
YesCertificate read_certificate(std::istream& is, std::string* kind = nullptr);

void write_representation(std::ostream& os, const Representation& r);
Representation read_representation(std::istream& is);

void write_net(std::ostream& os, const Net& net);

/// `v <vertex> kept <arcs|-> color <net points>` per vertex.
void write_trace(std::ostream& os, const std::vector<TraceEntry>& trace);

}  // namespace rankgap::io
