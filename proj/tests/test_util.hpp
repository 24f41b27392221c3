#pragma once

#include "mapbij/flags.hpp"

#include <utility>
#include <vector>

namespace mapbij_test {

// Builds a flag system from a rotation system with optional per-edge
// twists. Half-edge 2e is the first endpoint's end of edge e, 2e+1 the
// second's. Each rotation lists a vertex's half-edges in cyclic order; a
// half-edge at rotation position k yields flag 4e(+2) toward the previous
// slot and +1 toward the next slot.
inline mapbij::FlagSystem from_rotations(const std::vector<std::pair<int, int>>& edges,
                                         const std::vector<std::vector<int>>& rotations,
                                         const std::vector<char>& twisted = {}) {
    int ne = static_cast<int>(edges.size());
    mapbij::FlagSystem fs;
    int n = 4 * ne;
    fs.t0.assign(n, -1);
    fs.t1.assign(n, -1);
    fs.t2.assign(n, -1);
    auto prev_side = [](int h) { return 2 * h; };
    auto next_side = [](int h) { return 2 * h + 1; };
    for (int h = 0; h < 2 * ne; h++) {
        fs.t2[prev_side(h)] = next_side(h);
        fs.t2[next_side(h)] = prev_side(h);
    }
    for (const auto& rot : rotations) {
        int d = static_cast<int>(rot.size());
        for (int k = 0; k < d; k++) {
            int a = next_side(rot[k]);
            int b = prev_side(rot[(k + 1) % d]);
            fs.t1[a] = b;
            fs.t1[b] = a;
        }
    }
    for (int e = 0; e < ne; e++) {
        int h0 = 2 * e, h1 = 2 * e + 1;
        bool tw = e < static_cast<int>(twisted.size()) && twisted[e];
        if (tw) {
            fs.t0[next_side(h0)] = next_side(h1);
            fs.t0[next_side(h1)] = next_side(h0);
            fs.t0[prev_side(h0)] = prev_side(h1);
            fs.t0[prev_side(h1)] = prev_side(h0);
        } else {
            fs.t0[next_side(h0)] = prev_side(h1);
            fs.t0[prev_side(h1)] = next_side(h0);
            fs.t0[prev_side(h0)] = next_side(h1);
            fs.t0[next_side(h1)] = prev_side(h0);
        }
    }
    fs.root = 0;
    return fs;
}

inline mapbij::FlagSystem single_edge() {
    return from_rotations({{0, 1}}, {{0}, {1}});
}

inline mapbij::FlagSystem sphere_loop() {
    return from_rotations({{0, 0}}, {{0, 1}});
}

inline mapbij::FlagSystem projective_loop() {
    return from_rotations({{0, 0}}, {{0, 1}}, {1});
}

inline mapbij::FlagSystem triangle_cycle() {
    return from_rotations({{0, 1}, {1, 2}, {2, 0}},
                          {{0, 5}, {2, 1}, {4, 3}});
}

inline mapbij::FlagSystem path_two_edges() {
    return from_rotations({{0, 1}, {1, 2}}, {{0}, {1, 2}, {3}});
}

inline mapbij::FlagSystem torus_square() {
    return from_rotations({{0, 0}, {0, 0}}, {{0, 2, 1, 3}});
}

inline mapbij::FlagSystem klein_square() {
    return from_rotations({{0, 0}, {0, 0}}, {{0, 2, 1, 3}}, {1, 0});
}

// Two vertices joined by two parallel edges; sphere, two faces of degree 2.
inline mapbij::FlagSystem two_cycle() {
    return from_rotations({{0, 1}, {0, 1}}, {{0, 2}, {1, 3}});
}

// Two vertices joined by three parallel edges; sphere, three faces of
// degree 2.
inline mapbij::FlagSystem theta() {
    return from_rotations({{0, 1}, {0, 1}, {0, 1}}, {{0, 2, 4}, {5, 3, 1}});
}

// Cycle on four vertices; sphere, two faces of degree 4.
inline mapbij::FlagSystem four_cycle() {
    return from_rotations({{0, 1}, {1, 2}, {2, 3}, {3, 0}},
                          {{0, 7}, {1, 2}, {3, 4}, {5, 6}});
}

} // namespace mapbij_test
