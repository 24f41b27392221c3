#pragma once

#include "mapbij/flags.hpp"

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace mapbij {

// A unicellular mobile: a one-face map whose vertices are colored white
// or green. Ordinary edges join a white vertex to a green one; flagged
// edges join two green vertices and carry their own positive label, as do
// white vertices. The smallest label is 1. The mobile is rooted either at
// a white corner flag or on a flagged edge (the root flag then encodes the
// chosen side and direction), and it remembers the sign produced by the
// forward mapping.
struct Mobile {
    FlagSystem fs;
    std::vector<char> green;        // per flag: set when its vertex is green
    std::vector<int> wlabel;        // per flag: white vertex label, -1 at green vertices
    std::map<int, int> flag_label;  // flagged edge orbit id -> label
    bool edge_rooted = false;
    int epsilon = 1;                // +1 or -1

    bool is_flagged(int edge_id) const { return flag_label.count(edge_id) != 0; }
    bool generalized() const { return !flag_label.empty(); }
    int min_label() const;
};

ValidationReport validate_mobile(const Mobile& m);

// Canonical form covering structure, coloring, labels, flagged edges,
// rooting mode and sign. Equal codes = equal rooted labeled mobiles.
std::string mobile_code(const Mobile& m);

// Text format: the map flag block plus `white:`/`green:` vertex lists,
// `labels:` white labels, `flagged:` edge labels for generalized mobiles,
// a `rooting:` line and `epsilon:`.
Mobile read_mobile(std::istream& in);
void write_mobile(std::ostream& out, const Mobile& m);

// The white corners of the single face in border order, starting at the
// root corner. exits[j] is the flag the walk leaves corner j through;
// entries[j] = t1(exits[j]) is the flag it came in by.
struct Contour {
    std::vector<int> exits;
    std::vector<int> entries;
    std::vector<int> labels;

    int size() const { return static_cast<int>(exits.size()); }
};

// Requires a corner-rooted mobile without flagged edges.
Contour contour_of(const Mobile& m);

// Window of the cyclic corner label sequence whose two end corners carry
// strictly smaller labels than every corner between them. A window may
// wrap around, up to one full turn ending back on its starting corner.
struct Arc {
    int start = 0;  // contour position of the first end corner
    int len = 0;    // corners counted along the window, always >= 2
    int level = 0;  // larger end label

    bool trivial() const { return len == 2; }
    int end(int n) const { return (start + len - 1) % n; }
};

std::vector<Arc> arcs_of_labels(const std::vector<int>& labels);
std::vector<Arc> arcs_of_contour(const Mobile& m);

// Three readings of one growth condition on cyclic positive label
// sequences; they agree whenever the minimum label is 1.
// Every nontrivial arc holds a corner labeled one above its level.
bool arcs_climb_by_one(const std::vector<int>& labels);
// The labels strictly inside every nontrivial arc fill a contiguous
// integer range starting one above its level.
bool arc_interiors_fill_ranges(const std::vector<int>& labels);
// From every corner labeled 2 or more, the first strictly smaller label
// reached in at least one direction is exactly one less.
bool descents_step_by_one(const std::vector<int>& labels);

// The unique nontrivial arc one level below the corner at `pos` that
// holds it strictly inside; -1 for corners labeled 1. Requires
// arcs_climb_by_one to hold.
int arc_over_corner(const std::vector<int>& labels, const std::vector<Arc>& arcs, int pos);

// Same for a whole arc: the unique nontrivial arc one level below
// containing `arc_index`; -1 for arcs at level 1.
int arc_over_arc(const std::vector<int>& labels, const std::vector<Arc>& arcs, int arc_index);

} // namespace mapbij
