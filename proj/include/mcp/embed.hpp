#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mcp/cover.hpp"
#include "mcp/graph.hpp"
#include "mcp/reduced.hpp"

namespace mcp {

/// Graph to embed: vertex-disjoint monochromatic cycles plus at most one
/// isolated vertex, each H-vertex tagged with its cluster.
struct Blueprint {
  std::vector<int> cluster_of;
  std::vector<AllocationCycle> cycles;
  std::optional<Vertex> isolated;

  static Blueprint from(const AllocationResult& allocation);
  int clusters() const;
};

struct EmbedOptions {
  long long node_limit = 2'000'000;  // over all restarts
  int restarts = 8;
  int min_run = 4;      // shortest run interior filled by rotation-extension
  int run_retries = 3;  // per run, before a full restart
  std::uint64_t seed = 0;
};

struct EmbedResult {
  bool success = false;
  std::string failure;
  std::vector<Vertex> psi;  // H-vertex -> host vertex
  CycleCover cover;         // images of the cycles, then the isolated vertex
  long long nodes = 0;
  int attempts = 0;
  int rotations = 0;
};

/// Finds ψ with ψ(X_i) = V_i and every H-edge of colour c mapped to a
/// colour-c host edge. The interiors of long two-cluster runs are left for
/// last: first every other position is placed by backtracking (fewest onward
/// options first), then each run interior is filled as a path between its
/// fixed ends by extension and Pósa rotations, shortest runs first.
/// Requires |X_i| = |V_i| (ParameterError); search exhaustion is reported in
/// `failure`, never thrown.
EmbedResult embed_blueprint(const Blueprint& h, const ColoredGraph& g,
                            const std::vector<VertexSet>& clusters,
                            const EmbedOptions& options = {});

}  // namespace mcp
