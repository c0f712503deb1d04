#include <doctest.h>

#include <algorithm>
#include <random>

#include "etfsim/topology.hpp"
#include "support/fixtures.hpp"

using namespace etfsim;
using etfsim::testing::walkthrough_fleet;

namespace {

Uav make(int id, double x, double y, double z, double r, Role role = Role::Idle) {
    return Uav{id, {x, y, z}, r, role};
}

}  // namespace

TEST_CASE("fleet validation") {
    CHECK_THROWS_AS(Fleet({make(0, 0, 0, 0, 10, Role::Source)}, 0), ValidationError);
    CHECK_THROWS_AS(Fleet({make(0, 0, 0, 0, 10, Role::Source), make(0, 1, 0, 0, 10)}, 0),
                    ValidationError);
    CHECK_THROWS_AS(Fleet({make(0, 0, 0, 0, 10, Role::Source), make(1, 1, 0, 0, -1)}, 0),
                    ValidationError);
    CHECK_THROWS_AS(Fleet({make(0, 0, 0, 0, 10), make(1, 1, 0, 0, 10)}, 0), ValidationError);
}

TEST_CASE("are_overlapping is strict at the boundary and symmetric") {
    const Uav a = make(0, 0, 0, 0, 10);
    CHECK(are_overlapping(a, make(1, 15, 0, 0, 10)));
    CHECK_FALSE(are_overlapping(a, make(1, 20, 0, 0, 10)));  // 20 is not < 20
    CHECK_FALSE(are_overlapping(make(0, 0, 0, 0, 5), make(1, 0, 12, 0, 6)));

    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-100.0, 100.0), ur(1.0, 60.0);
    for (int i = 0; i < 500; ++i) {
        const Uav p = make(0, u(rng), u(rng), u(rng), ur(rng));
        const Uav q = make(1, u(rng), u(rng), u(rng), ur(rng));
        CHECK(are_overlapping(p, q) == are_overlapping(q, p));
    }
}

TEST_CASE("lcrt tree: minimal and forced-chain fleets") {
    {
        Fleet fleet({make(0, 0, 0, 0, 50, Role::Source), make(1, 30, 0, 0, 20, Role::Receiver)}, 0);
        const MulticastTree tree = build_lcrt_tree(fleet);
        CHECK(tree.level(0) == 0);
        CHECK(tree.level(1) == 1);
        CHECK(tree.parent.at(1) == 0);
        CHECK(tree.forwarders == std::set<int>{0});
    }
    {
        // Each UAV only reaches the next: every intermediate becomes a forwarder.
        Fleet fleet({make(0, 0, 0, 0, 11, Role::Source), make(1, 10, 0, 0, 11),
                     make(2, 20, 0, 0, 11), make(3, 30, 0, 0, 11, Role::Receiver)},
                    0);
        const MulticastTree tree = build_lcrt_tree(fleet);
        for (int id = 0; id < 4; ++id) CHECK(tree.level(id) == id);
        CHECK(tree.forwarders == std::set<int>{0, 1, 2});
        CHECK(tree.parent.at(3) == 2);
        CHECK(tree.parent.at(2) == 1);
        CHECK(tree.parent.at(1) == 0);
    }
    {
        Fleet fleet({make(0, 0, 0, 0, 10, Role::Source), make(1, 40, 0, 0, 10, Role::Receiver)}, 0);
        CHECK_THROWS_AS(build_lcrt_tree(fleet), UnreachableReceiverError);
    }
}

TEST_CASE("lcrt tree: greedy cover prefers the widest coverage, ids break ties") {
    // Source 0; level-1 candidates 1, 2, 3; level-2 receivers 4..7.
    // Candidate 1 covers {4,5,6}, candidate 2 covers {6,7}, candidate 3 covers {7}.
    std::vector<Uav> uavs{
        make(0, 0, 0, 0, 100, Role::Source),
        make(1, 0, 90, 0, 45),
        make(2, 60, 70, 0, 60),
        make(3, 80, 50, 0, 58),
        make(4, 0, 130, 0, 1, Role::Receiver),
        make(5, -30, 120, 0, 1, Role::Receiver),
        make(6, 30, 120, 0, 1, Role::Receiver),
        make(7, 95, 105, 0, 1, Role::Receiver),
    };
    Fleet fleet(std::move(uavs), 0);
    const MulticastTree tree = build_lcrt_tree(fleet);
    CHECK(tree.forwarders == std::set<int>{0, 1, 2});
    CHECK(tree.parent.at(4) == 1);
    CHECK(tree.parent.at(5) == 1);
    CHECK(tree.parent.at(6) == 1);
    CHECK(tree.parent.at(7) == 2);

    // Brute-force check: {1,2} is a minimal cover of the level-2 receivers.
    const std::vector<std::set<int>> covers{{4, 5, 6}, {6, 7}, {7}};
    bool single = false;
    for (const auto& c : covers) single = single || c == std::set<int>{4, 5, 6, 7};
    CHECK_FALSE(single);
}

TEST_CASE("lcrt tree invariants on random connected fleets") {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> upos(-150.0, 150.0), ur(40.0, 90.0), urole(0.0, 1.0);
    int kept = 0;
    while (kept < 200) {
        std::vector<Uav> uavs;
        const int n = 3 + static_cast<int>(rng() % 12);
        for (int id = 0; id < n; ++id) {
            const Role role = id == 0          ? Role::Source
                              : urole(rng) < 0.5 ? Role::Receiver
                                                 : Role::Idle;
            uavs.push_back(make(id, upos(rng), upos(rng), upos(rng) / 3.0, ur(rng), role));
        }
        Fleet fleet(std::move(uavs), 0);
        MulticastTree tree;
        try {
            tree = build_lcrt_tree(fleet);
        } catch (const UnreachableReceiverError&) {
            continue;  // disconnected draw
        }
        ++kept;
        for (const auto& [child, parent] : tree.parent) {
            CHECK(tree.level(child) == tree.level(parent) + 1);
            CHECK(tree.is_forwarder(parent));
            CHECK(distance(fleet.uav(child).position, fleet.uav(parent).position) <=
                  fleet.uav(parent).rtr_radius);
        }
        for (const Uav& u : fleet.uavs())
            if (u.role == Role::Receiver && u.id != fleet.source_id()) CHECK(tree.parent.count(u.id));
    }
}

TEST_CASE("covering forwarders on the walkthrough fleet") {
    const Fleet fleet = walkthrough_fleet();
    const MulticastTree tree = build_lcrt_tree(fleet);

    CHECK(tree.forwarders == std::set<int>{0, 1, 2, 3, 5, 8});
    CHECK(tree.parent.at(6) == 3);
    CHECK(tree.parent.at(4) == 5);
    CHECK(tree.parent.at(7) == 2);

    const Segment blue{{0, 0, 60}, {300, 0, 60}};
    CHECK(covering_forwarders(tree, fleet, blue) == std::vector<int>{0, 1, 2, 3, 5});
    CHECK_THROWS_AS(covering_forwarders(tree, fleet, {{1, 2, 3}, {1, 2, 3}}), DegenerateSegmentError);
}

TEST_CASE("covering forwarders include every forwarder whose sphere meets the segment") {
    std::mt19937_64 rng(29);
    std::uniform_real_distribution<double> upos(-120.0, 120.0), ur(30.0, 80.0);
    int kept = 0;
    while (kept < 100) {
        std::vector<Uav> uavs;
        const int n = 4 + static_cast<int>(rng() % 8);
        for (int id = 0; id < n; ++id)
            uavs.push_back(make(id, upos(rng), upos(rng), 0, ur(rng),
                                id == 0 ? Role::Source : Role::Receiver));
        Fleet fleet(std::move(uavs), 0);
        MulticastTree tree;
        try {
            tree = build_lcrt_tree(fleet);
        } catch (const UnreachableReceiverError&) {
            continue;
        }
        ++kept;
        const Segment slt{{upos(rng), upos(rng), 0}, {upos(rng), upos(rng), 0}};
        if (slt.a == slt.b) continue;
        const auto covering = covering_forwarders(tree, fleet, slt);
        // Sampling oracle: a forwarder covering any sampled segment point must
        // be in the covering list.
        for (int f : tree.forwarders) {
            const Sphere ball = fleet.uav(f).rtr();
            bool touches = false;
            for (int k = 0; k <= 200; ++k)
                if (ball.contains(slt.at(k / 200.0))) touches = true;
            if (touches)
                CHECK(std::find(covering.begin(), covering.end(), f) != covering.end());
        }
    }
}

TEST_CASE("same-path chains") {
    Fleet fleet({make(0, 0, 0, 0, 11, Role::Source), make(1, 10, 0, 0, 11), make(2, 20, 0, 0, 11),
                 make(3, 30, 0, 0, 11, Role::Receiver)},
                0);
    const MulticastTree tree = build_lcrt_tree(fleet);
    CHECK(same_path_chain(tree, 0, 0) == std::vector<int>{0});
    CHECK(same_path_chain(tree, 0, 2) == std::vector<int>{0, 1, 2});
    CHECK(same_path_chain(tree, 2, 0) == std::vector<int>{2, 1, 0});
    CHECK_THROWS_AS(same_path_chain(tree, 0, 3), NotAForwarderError);

    // Sibling forwarders have no ancestor relation.
    Fleet star({make(0, 0, 0, 0, 50, Role::Source), make(1, 40, 0, 0, 30), make(2, -40, 0, 0, 30),
                make(3, 60, 0, 0, 5, Role::Receiver), make(4, -60, 0, 0, 5, Role::Receiver)},
               0);
    const MulticastTree star_tree = build_lcrt_tree(star);
    CHECK(star_tree.is_forwarder(1));
    CHECK(star_tree.is_forwarder(2));
    CHECK_FALSE(same_path_chain(star_tree, 1, 2).has_value());
}

TEST_CASE("overlap graph edges and weights") {
    {
        // Hand-built forwarder sets exercise the graph itself.
        Fleet fleet({make(0, 0, 0, 0, 30, Role::Source), make(1, 100, 0, 0, 30)}, 0);
        MulticastTree tree;
        tree.forwarders = {0, 1};
        const OverlapGraph g = overlap_graph(tree, fleet);
        CHECK(g.vertices.size() == 2);
        CHECK_FALSE(g.has_edge(0, 1));
    }
    {
        Fleet fleet({make(0, 0, 0, 0, 30, Role::Source), make(1, 40, 0, 0, 30),
                     make(2, 20, 30, 0, 30)},
                    0);
        MulticastTree tree;
        tree.forwarders = {0, 1, 2};
        const OverlapGraph g = overlap_graph(tree, fleet);
        int edges = 0;
        for (int v : g.vertices) edges += static_cast<int>(g.adjacency.at(v).size());
        CHECK(edges == 6);  // 3 undirected edges
        CHECK(g.weight(0, 1) == g.weight(1, 0));
    }
    {
        const Fleet fleet = walkthrough_fleet();
        const MulticastTree tree = build_lcrt_tree(fleet);
        const OverlapGraph g = overlap_graph(tree, fleet);
        CHECK(g.has_edge(3, 1));
        CHECK(g.has_edge(1, 5));
        CHECK_FALSE(g.has_edge(3, 5));
        for (int v : g.vertices) {
            for (auto& [w, weight] : g.adjacency.at(v)) {
                CHECK(weight == doctest::Approx(distance(fleet.uav(v).position, fleet.uav(w).position)));
                CHECK(weight < fleet.uav(v).rtr_radius + fleet.uav(w).rtr_radius);
                CHECK(g.weight(w, v) == weight);  // symmetric
            }
        }
    }
}
