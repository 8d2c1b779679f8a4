#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "swarm/vec2.hpp"

namespace swarm::graph {

/// Radius-induced communication graph over robot positions. At most 64 nodes
/// (the 6-bit address space), so an adjacency row is a single bitmask.
struct ConnectivityGraph {
    int n = 0;
    std::vector<std::uint64_t> rows;  // rows[i] bit j set iff edge (i, j)
};

/// Edge (i, j) iff distance <= comm_radius, i != j. Closed ball, so the
/// relation is exactly symmetric.
ConnectivityGraph build_graph(std::span<const Vec2> positions,
                              double comm_radius);

/// Number of information connections of robot `id`. Throws std::out_of_range
/// for an unknown id.
int degree(const ConnectivityGraph& g, int id);

/// Hop distance from `source` to every node; -1 where unreachable.
std::vector<int> bfs_distances(const ConnectivityGraph& g, int source);

/// Longest hop distance from `source` to any node it can reach.
int eccentricity(const ConnectivityGraph& g, int source);

/// Connected components, each sorted ascending, ordered by smallest member.
std::vector<std::vector<int>> components(const ConnectivityGraph& g);

enum class ClusterLabel { Main, ParallelProcess, Lost };

const char* label_name(ClusterLabel label);

/// Largest component is Main (ties go to the one holding the smallest id).
/// Any other component of at least a third of the swarm runs a parallel
/// process; smaller detached groups are lost to the swarm.
struct ClusterReport {
    std::vector<std::vector<int>> components;
    std::vector<ClusterLabel> labels;
};

ClusterReport classify(std::vector<std::vector<int>> partition, int n);

/// One CSV row per component: tick,component_index,size,label.
void write_cluster_rows(std::ostream& os, long tick, const ClusterReport& report);

}  // namespace swarm::graph
