#pragma once

#include "etfsim/topology.hpp"

// Hand-laid fleets mirroring the scenario fixtures shipped under scenarios/.

namespace etfsim::testing {

inline Uav make_uav(int id, double x, double y, double z, double r, Role role = Role::Idle) {
    return Uav{id, {x, y, z}, r, role};
}

// Nine-UAV fleet whose LCRT tree has forwarders {0,1,2,3,5,8}; the long SLT of
// mobile 6 from (0,0,60) to (300,0,60) has covering forwarders {0,1,2,3,5} and
// is seamless via checking points owned by 3 and then 1.
inline Fleet walkthrough_fleet() {
    std::vector<Uav> uavs{
        make_uav(0, 100, -60, 60, 61),
        make_uav(1, 130, -20, 60, 125),
        make_uav(2, 40, 65, 60, 66),
        make_uav(3, 20, 30, 60, 70),
        make_uav(4, 275, 35, 60, 50, Role::Receiver),
        make_uav(5, 245, 15, 60, 65),
        make_uav(6, 0, 0, 60, 50, Role::Receiver),
        make_uav(7, 10, 120, 60, 50, Role::Receiver),
        make_uav(8, 30, -130, 60, 100, Role::Source),
    };
    return Fleet(std::move(uavs), 8);
}

// Fleet whose mobile 6 must transit between non-overlapping forwarders 3 and 5
// with an interrupted SLT; the overlap-graph chain is 3 -> 1 -> 5.
inline Fleet chain_fleet() {
    std::vector<Uav> uavs{
        make_uav(1, 160, 70, 60, 110),
        make_uav(3, 0, 0, 60, 80),
        make_uav(4, 350, -60, 60, 40, Role::Receiver),
        make_uav(5, 330, 10, 60, 80),
        make_uav(6, -30, -40, 60, 40, Role::Receiver),
        make_uav(7, 120, -30, 60, 40, Role::Receiver),
        make_uav(8, 150, 190, 60, 170, Role::Source),
        make_uav(9, -80, 100, 60, 130),
        make_uav(10, 360, 120, 60, 120),
        make_uav(12, 30, 150, 60, 135),
        make_uav(13, 260, 170, 60, 125),
    };
    return Fleet(std::move(uavs), 8);
}

// Synthetic tree where every fleet member is a forwarder; used by randomized
// planner instances that do not need a real LCRT build.
inline MulticastTree all_forwarder_tree(const Fleet& fleet) {
    MulticastTree tree;
    for (const Uav& u : fleet.uavs()) {
        tree.forwarders.insert(u.id);
        tree.levels[u.id] = u.id == fleet.source_id() ? 0 : 1;
    }
    return tree;
}

}  // namespace etfsim::testing
