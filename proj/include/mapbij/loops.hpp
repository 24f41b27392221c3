#pragma once

#include "mapbij/flags.hpp"

#include <string>
#include <utility>
#include <vector>

namespace mapbij {

// One directed traversal of a level loop. The walk lists the oriented
// corners visited, each recorded by its exit flag: the flag of the edge
// through which the walk leaves the corner. crossed[k] tells whether the
// walk leaves corner k by crossing that edge or by traveling along it
// toward the other endpoint. A loop at level i travels edge sides whose
// endpoint labels are at most i and crosses edges of type i-(i+1); the
// level-0 loop circles the point crossing every incident edge.
//
// Every loop is materialized twice, once per direction; partner points to
// the reverse traversal, whose walk is the reversed t1-image of this one.
struct LevelLoop {
    int level = 0;
    std::vector<int> walk;
    std::vector<char> crossed;
    bool maximal = false;    // crossing-free: the border walk of one face
    int partner = -1;
    int origin = -1;         // visit index where traversal starts, set by ordering
    int rank = -1;           // position in the loop order; -1 when unranked

    int length() const { return static_cast<int>(walk.size()); }
};

// All directed level-loop traversals of a pointed bipartite map, with a
// per-level index from exit flag to its unique visit.
struct LoopSystem {
    std::vector<LevelLoop> loops;
    int max_level = 0;
    // exit_of[i][f] = (loop, visit) with walk[visit] == f at level i, or (-1,-1).
    std::vector<std::vector<std::pair<int, int>>> exit_of;

    std::pair<int, int> find_exit(int level, int flag) const;
};

LoopSystem build_level_loops(const PointedMap& pm);

// Sign rules consumed one per orientation event; the last entry repeats
// forever, and an empty sequence means all "+".
struct OrientationPolicy {
    std::vector<int> rules;

    int rule(int index) const;
    static OrientationPolicy all_plus() { return {}; }
    static OrientationPolicy all_minus() { return {{-1}}; }
    static OrientationPolicy parse(const std::string& text);
    std::string to_string() const;
};

// Result of orienting: one traversal per loop is chosen; ranked lists the
// chosen traversals in process order. Maximal loops are oriented by a
// fixed convention, left unranked, and never travel or discover.
struct LoopOrder {
    std::vector<int> ranked;
    std::vector<char> chosen;
    int events = 0;    // policy decisions consumed
};

// Orients every loop and assigns origins and ranks. Loops visiting the
// root corner come first, ordered by increasing level, oriented as the
// root directs; traveling the ranked loops from their origins then
// discovers the rest at shared corners, orienting each as the traveling
// loop sweeps, with simultaneous discoveries ranked by increasing level.
// The policy flips the chosen direction at each orientation event.
LoopOrder orient_and_order_loops(LoopSystem& ls, const PointedMap& pm,
                                 const OrientationPolicy& policy = {});

// Exit flags of the corners selected by the oriented loops: corners whose
// label equals the loop level and whose predecessor on the chosen
// traversal is labeled one less. Sorted ascending.
std::vector<int> selected_corners(const LoopSystem& ls, const LoopOrder& lo,
                                  const PointedMap& pm);

} // namespace mapbij
