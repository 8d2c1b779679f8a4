#include "swarm/graph.hpp"

#include <algorithm>
#include <bit>
#include <ostream>
#include <stdexcept>

#include "swarm/kernels.hpp"

namespace swarm::graph {

ConnectivityGraph build_graph(std::span<const Vec2> positions,
                              double comm_radius) {
    const std::size_t n = positions.size();
    if (n > kernels::max_points)
        throw std::invalid_argument("more than 64 positions");
    std::vector<double> xs(n), ys(n);
    for (std::size_t i = 0; i < n; ++i) {
        xs[i] = positions[i].x;
        ys[i] = positions[i].y;
    }
    ConnectivityGraph g;
    g.n = static_cast<int>(n);
    g.rows.resize(n);
    kernels::adjacency_masks(xs.data(), ys.data(), n,
                             comm_radius * comm_radius, g.rows.data());
    return g;
}

int degree(const ConnectivityGraph& g, int id) {
    if (id < 0 || id >= g.n) throw std::out_of_range("unknown robot id");
    return std::popcount(g.rows[static_cast<std::size_t>(id)]);
}

std::vector<int> bfs_distances(const ConnectivityGraph& g, int source) {
    if (source < 0 || source >= g.n) throw std::out_of_range("unknown robot id");
    std::vector<int> dist(static_cast<std::size_t>(g.n), -1);
    dist[static_cast<std::size_t>(source)] = 0;
    std::uint64_t seen = std::uint64_t{1} << source;
    std::uint64_t frontier = seen;
    int d = 0;
    while (frontier) {
        ++d;
        std::uint64_t next = 0;
        std::uint64_t f = frontier;
        while (f) {
            const int i = std::countr_zero(f);
            f &= f - 1;
            next |= g.rows[static_cast<std::size_t>(i)];
        }
        next &= ~seen;
        std::uint64_t nf = next;
        while (nf) {
            dist[static_cast<std::size_t>(std::countr_zero(nf))] = d;
            nf &= nf - 1;
        }
        seen |= next;
        frontier = next;
    }
    return dist;
}

int eccentricity(const ConnectivityGraph& g, int source) {
    int ecc = 0;
    for (int d : bfs_distances(g, source)) ecc = std::max(ecc, d);
    return ecc;
}

std::vector<std::vector<int>> components(const ConnectivityGraph& g) {
    std::vector<std::vector<int>> out;
    std::uint64_t unseen =
        g.n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << g.n) - 1;
    while (unseen) {
        const int start = std::countr_zero(unseen);
        // Closure of the start node under adjacency.
        std::uint64_t comp = std::uint64_t{1} << start;
        std::uint64_t frontier = comp;
        while (frontier) {
            std::uint64_t next = 0;
            std::uint64_t f = frontier;
            while (f) {
                const int i = std::countr_zero(f);
                f &= f - 1;
                next |= g.rows[static_cast<std::size_t>(i)];
            }
            frontier = next & ~comp;
            comp |= next;
        }
        std::vector<int> members;
        std::uint64_t c = comp;
        while (c) {
            members.push_back(std::countr_zero(c));
            c &= c - 1;
        }
        out.push_back(std::move(members));
        unseen &= ~comp;
    }
    return out;
}

const char* label_name(ClusterLabel label) {
    switch (label) {
        case ClusterLabel::Main: return "Main";
        case ClusterLabel::ParallelProcess: return "ParallelProcess";
        case ClusterLabel::Lost: return "Lost";
    }
    return "?";
}

ClusterReport classify(std::vector<std::vector<int>> partition, int n) {
    ClusterReport report;
    report.components = std::move(partition);
    report.labels.assign(report.components.size(), ClusterLabel::Lost);
    if (report.components.empty()) return report;

    // Main = largest component; on equal size, the one with the smallest id.
    std::size_t main_idx = 0;
    for (std::size_t i = 1; i < report.components.size(); ++i) {
        const auto& cand = report.components[i];
        const auto& best = report.components[main_idx];
        if (cand.size() > best.size() ||
            (cand.size() == best.size() && cand.front() < best.front()))
            main_idx = i;
    }
    for (std::size_t i = 0; i < report.components.size(); ++i) {
        if (i == main_idx) {
            report.labels[i] = ClusterLabel::Main;
        } else {
            // Detached group of 1/3 or more of the swarm starts a parallel
            // process; the boundary is inclusive.
            const auto size = static_cast<long>(report.components[i].size());
            report.labels[i] = (3 * size >= n) ? ClusterLabel::ParallelProcess
                                               : ClusterLabel::Lost;
        }
    }
    return report;
}

void write_cluster_rows(std::ostream& os, long tick,
                        const ClusterReport& report) {
    for (std::size_t i = 0; i < report.components.size(); ++i) {
        os << tick << ',' << i << ',' << report.components[i].size() << ','
           << label_name(report.labels[i]) << '\n';
    }
}

}  // namespace swarm::graph
