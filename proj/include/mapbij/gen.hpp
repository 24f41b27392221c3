#pragma once

#include "mapbij/flags.hpp"
#include "mapbij/polygon.hpp"

#include <functional>
#include <optional>

namespace mapbij {

// Filters for exhaustive generation. Unset fields mean no constraint.
struct GenSpec {
    int edges = 0;
    std::optional<SurfaceClass> surface;
    bool bipartite_only = false;
    // All face degrees equal to this value (3 for triangulations, 4 for
    // quadrangulations).
    std::optional<int> face_degree;
};

// Enumerates rooted maps with the given edge count up to rooted
// isomorphism, streaming each exactly once in a deterministic order.
// Rooted isomorphism is flag-system isomorphism mapping root to root,
// which identifies mirror images.
void gen_rooted_maps(const GenSpec& spec, const std::function<void(const FlagSystem&)>& emit);

// Enumerates rooted one-face maps: every pairing of a 2E-gon with a twist
// bit per pair corresponds to exactly one rooted map.
void gen_unicellular_maps(int edges, const std::function<void(const FlagSystem&)>& emit);

// Number of rooted maps with n edges whose underlying surface matches,
// counted by the polygon-gluing generator.
long long count_rooted_maps(const GenSpec& spec);

// Independent count of rooted maps on the sphere via permutation pairs:
// a fixed-point-free involution on darts together with an arbitrary
// transitive dart permutation, normalized by the relabelings fixing the
// root dart.
long long count_rooted_sphere_maps_by_permutations(int edges);

} // namespace mapbij
