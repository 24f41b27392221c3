#pragma once

#include "mapbij/flags.hpp"
#include "mapbij/loops.hpp"
#include "mapbij/mobile.hpp"

#include <string>
#include <utility>
#include <vector>

namespace mapbij {

// Mirror of the level-loop machinery on the mobile side.  A directed level-i
// curve runs alongside the contour, staying at corners labeled at most i and
// crossing one mobile edge at every such corner.  From a stop the curve
// crosses the edge the walk arrives by, resurfaces on the far flank of that
// edge, and walks on to the next corner labeled at most i.  One crossing plus
// the walk that follows it is a visit.

struct MobileVisit {
    int corner = 0;  // contour position whose arrival edge is crossed
    int dir = 1;     // +1 crosses the forward-arrival edge, -1 the backward one
    int land = 0;    // contour position reached on the far flank of that edge
    int pdir = 1;    // walk direction after landing
    Arc window;      // canonical window walked from land to the next stop
    int window_arc = -1;        // index of the window in the arc list
    std::vector<int> internals; // corners labeled level+1 strictly inside the
                                // window, in travel order
};

struct MobileLoop {
    int level = 0;
    std::vector<MobileVisit> visits;
    bool maximal = false;  // every window trivial; the curve circles one green
    int partner = -1;      // loop running the same cycle in reverse
    int rank = -1;         // orientation order, -1 until oriented
    int origin_visit = -1;
    int origin_phase = -1;
};

// Loops at level 0 circle the future pointed vertex.  They are stored with one
// visit per label-1 corner: corner == land is that contour position, dir ==
// pdir is the travel direction, and the window is the gap to the next label-1
// corner in that direction.

struct MobileLoopSystem {
    std::vector<MobileLoop> loops;
    int max_level = 0;
    Contour contour;
    std::vector<Arc> arcs;
    // state_of[i][2*corner + (dir < 0)] locates the level-i visit crossing at
    // (corner, dir), or (-1,-1).  Level-i curves whose stops all carry labels
    // below i bound no edge bundle and are omitted, so lookups may miss.
    std::vector<std::vector<std::pair<int, int>>> state_of;
    // portion_of[i][2*land + (pdir < 0)] locates the level-i visit landing at
    // (land, pdir); level 0 indexes its visits by (corner, dir).
    std::vector<std::vector<std::pair<int, int>>> portion_of;

    std::pair<int, int> find_state(int level, int corner, int dir) const;
    std::pair<int, int> find_portion(int level, int corner, int pdir) const;
    int arc_index(int start, int len) const;
};

MobileLoopSystem build_mobile_loops(const Mobile& m);

struct MobileOrder {
    bool well_labeled = true;
    std::string reason;         // set when well_labeled is false
    std::vector<int> ranked;    // oriented loops in discovery order
    std::vector<char> chosen;   // per loop: traversal retained by the process
    int events = 0;             // orientation decisions consumed from the policy
    // anchor[arc] = (loop, visit) whose window is that nontrivial arc; the
    // level-(j-1) corners inside descend to the land corner of that visit.
    std::vector<std::pair<int, int>> anchor;
};

// Runs the orientation process on the loop system, writing origins and ranks
// into the loops.  The policy decides, for each newly met loop pair, which
// traversal is kept, exactly as on the map side.  Reports well_labeled =
// false when the labels fail the arc climb condition or some kept traversal
// stops at a corner labeled below its level.
MobileOrder orient_mobile_loops(MobileLoopSystem& mls, const Mobile& m,
                                const OrientationPolicy& policy = OrientationPolicy{});

// True when the mobile is well labeled relative to the policy: contour arcs
// climb by one and the orientation process never keeps a traversal that stops
// below its level.  On failure *reason names the first failed condition.
bool check_well_labeled(const Mobile& m,
                        const OrientationPolicy& policy = OrientationPolicy{},
                        std::string* reason = nullptr);

struct PsiResult {
    PointedMap pm;
    // edge_of_corner[p] is the map edge built for contour position p; its
    // half-edge 2p sits at the white vertex of that corner, 2p+1 at the
    // descent target.
    std::vector<int> edge_of_corner;
    // vertex_of_white[p] is the map vertex carrying contour position p.
    std::vector<int> vertex_of_white;
};

// Inverse construction: builds the pointed bipartite map whose image under
// the forward construction is (m, epsilon).  Requires a corner-rooted mobile
// without flagged edges that is well labeled relative to the policy; throws
// std::invalid_argument naming the failed condition otherwise.
PsiResult psi_bipartite(const Mobile& m, int epsilon,
                        const OrientationPolicy& policy = OrientationPolicy{});

}  // namespace mapbij
