#pragma once

#include "mapbij/flags.hpp"

namespace mapbij {

// A one-face map cut open along its edges: the face border, read from the
// root, becomes a polygon with 2E sides glued in pairs. A twisted gluing
// identifies the two sides so that both are traversed in the same border
// direction.
struct PolygonPairing {
    int n_sides = 0;
    std::vector<int> mate;      // mate[i] = side glued to side i
    std::vector<char> twisted;  // symmetric; valid at i and mate[i]

    bool operator==(const PolygonPairing& o) const {
        return n_sides == o.n_sides && mate == o.mate && twisted == o.twisted;
    }
};

// Requires a one-face map; sides are numbered along the border walk from
// the root flag.
PolygonPairing polygon_representation(const FlagSystem& fs);

// Rebuilds the flag system; the root is the first corner of side 0.
FlagSystem build_from_pairing(const PolygonPairing& p);

} // namespace mapbij
