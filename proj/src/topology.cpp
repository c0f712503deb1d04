#include "etfsim/topology.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

namespace etfsim {

Fleet::Fleet(std::vector<Uav> uavs, int source_id) : uavs_(std::move(uavs)), source_id_(source_id) {
    if (uavs_.size() < 2) throw ValidationError("fleet: need more than one UAV");
    for (std::size_t i = 0; i < uavs_.size(); ++i) {
        const Uav& u = uavs_[i];
        if (!index_.emplace(u.id, i).second)
            throw ValidationError("fleet: duplicate uav id " + std::to_string(u.id));
        if (!(u.rtr_radius > 0.0))
            throw ValidationError("fleet: uav " + std::to_string(u.id) + " has non-positive rtr_radius");
        if (!is_finite(u.position))
            throw ValidationError("fleet: uav " + std::to_string(u.id) + " has non-finite position");
    }
    if (!has(source_id_)) throw ValidationError("fleet: source id " + std::to_string(source_id_) + " unknown");
    int sources = 0;
    for (const Uav& u : uavs_)
        if (u.role == Role::Source) ++sources;
    if (sources != 1 || uav(source_id_).role != Role::Source)
        throw ValidationError("fleet: exactly one Source required, matching source_id");
}

const Uav& Fleet::uav(int id) const {
    auto it = index_.find(id);
    if (it == index_.end()) throw ValidationError("fleet: unknown uav id " + std::to_string(id));
    return uavs_[it->second];
}

Uav& Fleet::uav(int id) {
    return const_cast<Uav&>(static_cast<const Fleet*>(this)->uav(id));
}

bool are_overlapping(const Uav& a, const Uav& b) {
    return distance(a.position, b.position) < a.rtr_radius + b.rtr_radius;
}

MulticastTree build_lcrt_tree(const Fleet& fleet) {
    MulticastTree tree;

    // BFS hop levels from the source. Adjacency is directed: u covers v iff v
    // lies inside u's RTR.
    auto covers = [&](const Uav& u, const Uav& v) {
        return distance(u.position, v.position) <= u.rtr_radius;
    };
    tree.levels[fleet.source_id()] = 0;
    std::deque<int> frontier{fleet.source_id()};
    while (!frontier.empty()) {
        const Uav& u = fleet.uav(frontier.front());
        frontier.pop_front();
        for (const Uav& v : fleet.uavs()) {
            if (tree.levels.count(v.id) || !covers(u, v)) continue;
            tree.levels[v.id] = tree.levels.at(u.id) + 1;
            frontier.push_back(v.id);
        }
    }

    std::vector<int> unreachable;
    for (const Uav& u : fleet.uavs())
        if (u.role == Role::Receiver && !tree.levels.count(u.id)) unreachable.push_back(u.id);
    if (!unreachable.empty()) {
        std::ostringstream msg;
        msg << "receivers unreachable from source:";
        for (int id : unreachable) msg << ' ' << id;
        throw UnreachableReceiverError(msg.str());
    }

    int max_level = 0;
    std::map<int, std::vector<int>> by_level;
    for (auto& [id, lvl] : tree.levels) {
        by_level[lvl].push_back(id);
        max_level = std::max(max_level, lvl);
    }

    // Deepest level first: the tree nodes of level k+1 are its receivers plus
    // any forwarders already selected there; pick level-k forwarders greedily
    // by uncovered-coverage count, ties by smaller id.
    tree.forwarders.insert(fleet.source_id());
    for (int k = max_level - 1; k >= 0; --k) {
        std::vector<int> targets;
        for (int id : by_level[k + 1])
            if (fleet.uav(id).role == Role::Receiver || tree.is_forwarder(id)) targets.push_back(id);

        std::set<int> uncovered(targets.begin(), targets.end());
        while (!uncovered.empty()) {
            int best = -1;
            std::size_t best_count = 0;
            for (int cand : by_level[k]) {
                std::size_t count = 0;
                for (int t : uncovered)
                    if (covers(fleet.uav(cand), fleet.uav(t))) ++count;
                if (count > best_count || (count == best_count && count > 0 && cand < best)) {
                    best = cand;
                    best_count = count;
                }
            }
            // BFS guarantees some level-k node covers each level-(k+1) node.
            if (best < 0 || best_count == 0)
                throw UnreachableReceiverError("internal: uncoverable tree node at level " +
                                               std::to_string(k + 1));
            tree.forwarders.insert(best);
            for (auto it = uncovered.begin(); it != uncovered.end();) {
                if (covers(fleet.uav(best), fleet.uav(*it))) {
                    tree.parent[*it] = best;
                    it = uncovered.erase(it);
                } else {
                    ++it;
                }
            }
        }
    }
    return tree;
}

std::vector<int> covering_forwarders(const MulticastTree& tree, const Fleet& fleet, const Segment& slt) {
    if (slt.a == slt.b) throw DegenerateSegmentError{};
    std::vector<int> out;
    for (int id : tree.forwarders) {
        const Uav& u = fleet.uav(id);
        if (point_line_distance(slt, u.position) <= u.rtr_radius) out.push_back(id);
    }
    return out;  // forwarders is an ordered set, so out is ordered by id
}

std::optional<std::vector<int>> same_path_chain(const MulticastTree& tree, int fa, int fb) {
    if (!tree.is_forwarder(fa)) throw NotAForwarderError("uav " + std::to_string(fa) + " is not a forwarder");
    if (!tree.is_forwarder(fb)) throw NotAForwarderError("uav " + std::to_string(fb) + " is not a forwarder");
    if (fa == fb) return std::vector<int>{fa};

    auto ancestor_path = [&](int from, int to) -> std::optional<std::vector<int>> {
        // Walk parent links from `from`; success if we reach `to`.
        std::vector<int> path{from};
        int cur = from;
        while (auto p = tree.parent_of(cur)) {
            cur = *p;
            path.push_back(cur);
            if (cur == to) return path;
        }
        return std::nullopt;
    };

    if (auto up = ancestor_path(fa, fb)) return up;
    if (auto down = ancestor_path(fb, fa)) {
        std::reverse(down->begin(), down->end());
        return down;
    }
    return std::nullopt;
}

bool OverlapGraph::has_edge(int i, int j) const {
    auto it = adjacency.find(i);
    if (it == adjacency.end()) return false;
    for (auto& [n, w] : it->second)
        if (n == j) return true;
    return false;
}

double OverlapGraph::weight(int i, int j) const {
    for (auto& [n, w] : adjacency.at(i))
        if (n == j) return w;
    throw ValidationError("overlap graph: no edge " + std::to_string(i) + "-" + std::to_string(j));
}

OverlapGraph overlap_graph(const MulticastTree& tree, const Fleet& fleet) {
    OverlapGraph g;
    g.vertices.assign(tree.forwarders.begin(), tree.forwarders.end());
    for (int id : g.vertices) g.adjacency[id];
    for (std::size_t i = 0; i < g.vertices.size(); ++i) {
        for (std::size_t j = i + 1; j < g.vertices.size(); ++j) {
            const Uav& u = fleet.uav(g.vertices[i]);
            const Uav& v = fleet.uav(g.vertices[j]);
            if (!are_overlapping(u, v)) continue;
            const double w = distance(u.position, v.position);
            g.adjacency[u.id].emplace_back(v.id, w);
            g.adjacency[v.id].emplace_back(u.id, w);
        }
    }
    return g;
}

}  // namespace etfsim
