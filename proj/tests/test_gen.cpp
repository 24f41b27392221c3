#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "mapbij/gen.hpp"

#include <set>
#include <vector>

using namespace mapbij;

namespace {

GenSpec on_surface(int edges, int chi, bool orientable) {
    GenSpec g;
    g.edges = edges;
    g.surface = SurfaceClass{chi, orientable};
    return g;
}

} // namespace

TEST_CASE("rooted sphere map counts match the classical sequence") {
    CHECK(count_rooted_maps(on_surface(1, 2, true)) == 2);
    CHECK(count_rooted_maps(on_surface(2, 2, true)) == 9);
    CHECK(count_rooted_maps(on_surface(3, 2, true)) == 54);
}

TEST_CASE("permutation-pair generator agrees on the sphere") {
    CHECK(count_rooted_sphere_maps_by_permutations(1) == 2);
    CHECK(count_rooted_sphere_maps_by_permutations(2) == 9);
    CHECK(count_rooted_sphere_maps_by_permutations(3) == 54);
}

TEST_CASE("one-edge counts on the small surfaces") {
    CHECK(count_rooted_maps(on_surface(1, 1, false)) == 1);
    CHECK(count_rooted_maps(on_surface(1, 0, true)) == 0);
    CHECK(count_rooted_maps(on_surface(1, 0, false)) == 0);
    GenSpec all;
    all.edges = 1;
    CHECK(count_rooted_maps(all) == 3);
}

TEST_CASE("two-edge torus maps") {
    CHECK(count_rooted_maps(on_surface(2, 0, true)) == 1);
}

TEST_CASE("generated maps are valid and the stream is deterministic") {
    GenSpec g;
    g.edges = 2;
    std::vector<std::string> first, second;
    gen_rooted_maps(g, [&](const FlagSystem& fs) {
        CHECK(validate(fs).ok());
        first.push_back(canonical_code(fs));
    });
    gen_rooted_maps(g, [&](const FlagSystem& fs) { second.push_back(canonical_code(fs)); });
    CHECK(first == second);
    std::set<std::string> uniq(first.begin(), first.end());
    CHECK(uniq.size() == first.size());
}

TEST_CASE("unicellular generator enumerates pairings bijectively") {
    int n1 = 0, n2 = 0;
    std::set<std::string> codes;
    gen_unicellular_maps(1, [&](const FlagSystem& fs) {
        CHECK(validate(fs).ok());
        CHECK(face_orbits(fs).count == 1);
        n1++;
    });
    CHECK(n1 == 2);
    int sphere = 0, torus = 0;
    gen_unicellular_maps(2, [&](const FlagSystem& fs) {
        CHECK(validate(fs).ok());
        CHECK(face_orbits(fs).count == 1);
        codes.insert(canonical_code(fs));
        SurfaceClass sc = classify_surface(fs);
        if (sc.name() == "sphere") sphere++;
        if (sc.name() == "torus") torus++;
        n2++;
    });
    CHECK(n2 == 12);
    CHECK(codes.size() == 12);
    CHECK(sphere == 2);
    CHECK(torus == 1);
}

TEST_CASE("face degree filter keeps only uniform face degrees") {
    GenSpec quads;
    quads.edges = 2;
    quads.face_degree = 4;
    quads.surface = SurfaceClass{2, true};
    int count = 0;
    gen_rooted_maps(quads, [&](const FlagSystem& fs) {
        Orbits f = face_orbits(fs);
        std::vector<int> sz(fs.nflags(), 0);
        for (int x = 0; x < fs.nflags(); x++) sz[f.comp[x]]++;
        for (int id : f.ids()) CHECK(sz[id] == 8);
        count++;
    });
    // One square face on the sphere means a plane tree with two edges;
    // there are two rooted ones.
    CHECK(count == 2);
}

TEST_CASE("bipartite filter") {
    GenSpec g;
    g.edges = 2;
    g.bipartite_only = true;
    gen_rooted_maps(g, [&](const FlagSystem& fs) { CHECK(is_bipartite_map(fs)); });
}
