#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "etfsim/geometry.hpp"

// UAV fleet representation plus the multicast-side machinery: LCRT-style tree
// construction, overlap classification, covering-forwarder selection, and the
// forwarder overlap graph the long-distance planner runs Dijkstra over.

namespace etfsim {

enum class Role { Source, Forwarder, Receiver, Idle };

struct Uav {
    int id = 0;
    Point3 position;
    double rtr_radius = 0.0;  // referred coverage radius r_i
    Role role = Role::Idle;

    Sphere rtr() const { return Sphere{position, rtr_radius}; }
};

// Ordered collection of UAVs with exactly one source. Immutable after
// construction; lookups by id are O(1).
class Fleet {
  public:
    Fleet(std::vector<Uav> uavs, int source_id);

    const std::vector<Uav>& uavs() const { return uavs_; }
    int source_id() const { return source_id_; }
    bool has(int id) const { return index_.count(id) != 0; }
    const Uav& uav(int id) const;
    Uav& uav(int id);

  private:
    std::vector<Uav> uavs_;
    int source_id_;
    std::map<int, std::size_t> index_;
};

// Level-based multicast tree: hop levels from the source, parent links for
// tree nodes, and the forwarder set. Queries are read-only.
struct MulticastTree {
    std::map<int, int> levels;   // every UAV reachable over RTR adjacency
    std::map<int, int> parent;   // tree nodes other than the source
    std::set<int> forwarders;    // includes the source

    bool is_forwarder(int id) const { return forwarders.count(id) != 0; }
    int level(int id) const { return levels.at(id); }
    std::optional<int> parent_of(int id) const {
        auto it = parent.find(id);
        if (it == parent.end()) return std::nullopt;
        return it->second;
    }
};

// BFS hop levels over RTR adjacency (u_j adjacent to u_i iff u_j lies within
// u_i's RTR), then per-level greedy set cover processed deepest level first:
// the level-k node covering the most still-uncovered level-(k+1) tree nodes
// becomes a forwarder, ties by smaller id. Receivers and idle UAVs may both be
// promoted to Forwarder. Throws UnreachableReceiverError naming any receiver
// the source cannot reach.
MulticastTree build_lcrt_tree(const Fleet& fleet);

// Strictly-less-than test on the center distance vs. the radius sum, so exact
// tangency counts as non-overlapping.
bool are_overlapping(const Uav& a, const Uav& b);

// Every forwarder whose Heron line distance to the SLT is at most its own
// radius, ordered by id.
std::vector<int> covering_forwarders(const MulticastTree& tree, const Fleet& fleet, const Segment& slt);

// Inclusive forwarder chain from fa to fb when one is an ancestor of the
// other; absent otherwise.
std::optional<std::vector<int>> same_path_chain(const MulticastTree& tree, int fa, int fb);

// Undirected graph over forwarder ids; an edge joins every overlapping pair,
// weighted by the Euclidean distance between the centers.
struct OverlapGraph {
    std::vector<int> vertices;
    std::map<int, std::vector<std::pair<int, double>>> adjacency;  // id -> (neighbor, weight)

    bool has_edge(int i, int j) const;
    double weight(int i, int j) const;
};

OverlapGraph overlap_graph(const MulticastTree& tree, const Fleet& fleet);

}  // namespace etfsim
