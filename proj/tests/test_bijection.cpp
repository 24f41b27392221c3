#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "mapbij/gen.hpp"
#include "mapbij/mobile.hpp"
#include "mapbij/phi.hpp"
#include "mapbij/psi.hpp"
#include "test_util.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

using namespace mapbij;
using namespace mapbij_test;

namespace {

// One green center with a white leaf per label, met by the contour in
// list order when rooted at the first leaf.
Mobile star_mobile(const std::vector<int>& labels) {
    int n = static_cast<int>(labels.size());
    std::vector<std::pair<int, int>> edges;
    std::vector<std::vector<int>> rot(n + 1);
    for (int i = 0; i < n; i++) {
        edges.push_back({0, i + 1});
        rot[0].push_back(2 * i);
        rot[i + 1] = {2 * i + 1};
    }
    Mobile m;
    m.fs = from_rotations(edges, rot);
    m.fs.root = 2;
    int nf = m.fs.nflags();
    m.green.assign(nf, 0);
    m.wlabel.assign(nf, -1);
    for (int j = 0; j < n; j++) {
        m.green[4 * j] = m.green[4 * j + 1] = 1;
        m.wlabel[4 * j + 2] = m.wlabel[4 * j + 3] = labels[j];
    }
    return m;
}

// White ends labeled a and b around one green middle vertex.
Mobile path_mobile(int a, int b) {
    Mobile m;
    m.fs = path_two_edges();
    m.green.assign(8, 0);
    m.wlabel.assign(8, -1);
    for (int f : {2, 3, 4, 5}) m.green[f] = 1;
    for (int f : {0, 1}) m.wlabel[f] = a;
    for (int f : {6, 7}) m.wlabel[f] = b;
    return m;
}

// A single flagged edge joining two green vertices, rooted on the edge.
Mobile flagged_edge_mobile(int root) {
    Mobile m;
    m.fs = single_edge();
    m.fs.root = root;
    m.green.assign(4, 1);
    m.wlabel.assign(4, -1);
    m.flag_label[0] = 1;
    m.edge_rooted = true;
    return m;
}

std::vector<std::tuple<int, int, int>> arc_tuples(const std::vector<Arc>& arcs) {
    std::vector<std::tuple<int, int, int>> out;
    for (const Arc& a : arcs) out.emplace_back(a.start, a.len, a.level);
    return out;
}

std::vector<Arc> naive_arcs(const std::vector<int>& labels) {
    int n = static_cast<int>(labels.size());
    std::vector<Arc> out;
    for (int s = 0; s < n; s++)
        for (int len = 2; len <= n + 1; len++) {
            int e = (s + len - 1) % n;
            int lev = std::max(labels[s], labels[e]);
            bool ok = true;
            for (int k = 1; k < len - 1 && ok; k++)
                if (labels[(s + k) % n] <= lev) ok = false;
            if (ok) out.push_back({s, len, lev});
        }
    return out;
}

// Distinct arcs overlapping beyond shared end corners must nest, with the
// wider arc at a strictly lower level.
void check_arc_nesting(const std::vector<int>& labels, const std::vector<Arc>& arcs) {
    int n = static_cast<int>(labels.size());
    std::vector<const Arc*> big;
    for (const Arc& a : arcs)
        if (!a.trivial()) big.push_back(&a);
    for (const Arc* A : big)
        for (const Arc* B : big) {
            if (A == B) continue;
            long a1 = A->start, a2 = a1 + A->len - 1;
            for (int t = -1; t <= 1; t++) {
                long b1 = B->start + static_cast<long>(t) * n, b2 = b1 + B->len - 1;
                long lo = std::max(a1, b1), hi = std::min(a2, b2);
                if (lo > hi) continue;
                bool internal = false;
                for (long p = lo; p <= hi && !internal; p++)
                    internal = (p > a1 && p < a2) || (p > b1 && p < b2);
                if (!internal) continue;
                bool a_in_b = b1 <= a1 && a2 <= b2;
                bool b_in_a = a1 <= b1 && b2 <= a2;
                REQUIRE((a_in_b || b_in_a));
                REQUIRE(!(a_in_b && b_in_a));
                if (a_in_b) REQUIRE(B->level < A->level);
                if (b_in_a) REQUIRE(A->level < B->level);
            }
        }
}

// The window of arcs[found] must contain position pos strictly inside.
bool window_covers(const Arc& w, int pos, int n) {
    for (long p = pos; p <= w.start + w.len - 1; p += n)
        if (p > w.start && p < w.start + w.len - 1) return true;
    return false;
}

bool window_contains_arc(const Arc& outer, const Arc& inner, int n) {
    for (long s = inner.start; s <= outer.start + outer.len - 1; s += n)
        if (s >= outer.start && s + inner.len - 1 <= outer.start + outer.len - 1) return true;
    return false;
}

void check_enclosing_arcs(const std::vector<int>& labels, const std::vector<Arc>& arcs) {
    int n = static_cast<int>(labels.size());
    for (int p = 0; p < n; p++) {
        int o = arc_over_corner(labels, arcs, p);
        if (labels[p] == 1) {
            REQUIRE(o == -1);
        } else {
            REQUIRE(o >= 0);
            REQUIRE(arcs[o].level == labels[p] - 1);
            REQUIRE(window_covers(arcs[o], p, n));
        }
    }
    for (int a = 0; a < static_cast<int>(arcs.size()); a++) {
        int o = arc_over_arc(labels, arcs, a);
        if (arcs[a].level == 1) {
            REQUIRE(o == -1);
        } else {
            REQUIRE(o >= 0);
            REQUIRE(o != a);
            REQUIRE(arcs[o].level == arcs[a].level - 1);
            REQUIRE(window_contains_arc(arcs[o], arcs[a], n));
        }
    }
}

// Calls fn on every label sequence of length len over 1..len+1 that
// reaches 1 somewhere.
template <typename Fn>
void each_label_sequence(int len, Fn fn) {
    std::vector<int> labels(len, 1);
    while (true) {
        if (std::find(labels.begin(), labels.end(), 1) != labels.end()) fn(labels);
        int k = len - 1;
        while (k >= 0 && labels[k] == len + 1) labels[k--] = 1;
        if (k < 0) break;
        labels[k]++;
    }
}

} // namespace

TEST_CASE("mobile validation accepts hand built examples") {
    CHECK(validate_mobile(star_mobile({1})).ok());
    CHECK(validate_mobile(star_mobile({3, 1, 2})).ok());
    CHECK(validate_mobile(path_mobile(1, 2)).ok());
    for (int root : {0, 1, 2, 3}) CHECK(validate_mobile(flagged_edge_mobile(root)).ok());
}

TEST_CASE("mobile validation rejects broken structure") {
    SUBCASE("white vertices need a neighbor of the other color") {
        Mobile m = path_mobile(1, 1);
        for (int f = 0; f < 8; f++) m.green[f] = f >= 6;
        for (int f : {2, 3, 4, 5}) m.wlabel[f] = 1;
        for (int f : {6, 7}) m.wlabel[f] = -1;
        CHECK_FALSE(validate_mobile(m).ok());
    }
    SUBCASE("smallest label must be 1") {
        Mobile m = star_mobile({2, 3});
        CHECK_FALSE(validate_mobile(m).ok());
    }
    SUBCASE("corner root must sit at a white vertex") {
        Mobile m = star_mobile({1, 2});
        m.fs.root = 0;
        CHECK_FALSE(validate_mobile(m).ok());
    }
    SUBCASE("two faces are rejected") {
        Mobile m;
        m.fs = two_cycle();
        m.green.assign(8, 0);
        m.wlabel.assign(8, -1);
        Orbits v = vertex_orbits(m.fs);
        for (int f = 0; f < 8; f++) {
            if (v.comp[f] == v.comp[0]) m.wlabel[f] = 1;
            else m.green[f] = 1;
        }
        m.fs.root = 0;
        CHECK_FALSE(validate_mobile(m).ok());
    }
    SUBCASE("flagged edge needs green ends") {
        Mobile m = star_mobile({1, 2});
        m.flag_label[edge_orbits(m.fs).comp[0]] = 1;
        CHECK_FALSE(validate_mobile(m).ok());
    }
    SUBCASE("edge rooting needs the flag and a plus sign") {
        Mobile m = flagged_edge_mobile(0);
        m.epsilon = -1;
        CHECK_FALSE(validate_mobile(m).ok());
        Mobile u = flagged_edge_mobile(0);
        u.flag_label.clear();
        u.wlabel.assign(4, -1);
        u.wlabel[0] = u.wlabel[1] = 1;
        u.green[0] = u.green[1] = 0;
        CHECK_FALSE(validate_mobile(u).ok());
    }
    SUBCASE("labels must be positive") {
        Mobile m = star_mobile({1, 2});
        m.wlabel[2] = m.wlabel[3] = 0;
        CHECK_FALSE(validate_mobile(m).ok());
    }
}

TEST_CASE("mobile codes separate distinct mobiles") {
    Mobile a = star_mobile({1, 2, 3});
    Mobile b = star_mobile({1, 3, 2});
    CHECK(mobile_code(a) != mobile_code(b));
    CHECK(mobile_code(a) == mobile_code(star_mobile({1, 2, 3})));
    Mobile c = star_mobile({1, 2, 3});
    c.epsilon = -1;
    CHECK(mobile_code(a) != mobile_code(c));
    Mobile d = flagged_edge_mobile(0);
    Mobile e = flagged_edge_mobile(0);
    e.flag_label[0] = 2;
    CHECK(mobile_code(d) != mobile_code(e));
}

TEST_CASE("mobile files round trip") {
    auto roundtrip = [](const Mobile& m) {
        std::ostringstream os;
        write_mobile(os, m);
        std::istringstream is(os.str());
        Mobile r = read_mobile(is);
        CHECK(r.fs.t0 == m.fs.t0);
        CHECK(r.fs.t1 == m.fs.t1);
        CHECK(r.fs.t2 == m.fs.t2);
        CHECK(r.fs.root == m.fs.root);
        CHECK(r.green == m.green);
        CHECK(r.wlabel == m.wlabel);
        CHECK(r.flag_label == m.flag_label);
        CHECK(r.edge_rooted == m.edge_rooted);
        CHECK(r.epsilon == m.epsilon);
    };
    roundtrip(star_mobile({1}));
    roundtrip(star_mobile({2, 1, 3, 1}));
    Mobile minus = star_mobile({1, 2});
    minus.epsilon = -1;
    roundtrip(minus);
    for (int root : {0, 1, 2, 3}) roundtrip(flagged_edge_mobile(root));
}

TEST_CASE("mobile reader reads a hand written file") {
    std::istringstream is("# one edge, one white end\n"
                          "nflags: 4\n"
                          "t0: 4 3 2 1\n"
                          "t1: 2 1 4 3\n"
                          "t2: 2 1 4 3\n"
                          "root: 1\n"
                          "white: 1\n"
                          "green: 3\n"
                          "labels: 1=1\n"
                          "rooting: corner 1\n"
                          "epsilon: +\n");
    Mobile m = read_mobile(is);
    CHECK(validate_mobile(m).ok());
    CHECK(m.fs.root == 0);
    CHECK(m.wlabel[0] == 1);
    CHECK(m.green[2]);
    CHECK_FALSE(m.edge_rooted);
    CHECK(m.epsilon == 1);
}

TEST_CASE("mobile reader rejects malformed files") {
    std::string base = "nflags: 4\n"
                       "t0: 4 3 2 1\n"
                       "t1: 2 1 4 3\n"
                       "t2: 2 1 4 3\n"
                       "root: 1\n";
    auto fails = [&](const std::string& tail) {
        std::istringstream is(base + tail);
        CHECK_THROWS_AS(read_mobile(is), parse_error);
    };
    fails("white: 1\ngreen: 3\nrooting: corner 1\nepsilon: +\n");
    fails("white: 1\ngreen: 3\nlabels: 1=1\nrooting: corner 3\nepsilon: +\n");
    fails("white: 1\ngreen: 3\nlabels: 1=1\nrooting: corner 1\nepsilon: ?\n");
    fails("white: 1\ngreen: 3\nlabels: 1=1\nepsilon: +\n");
    fails("white: 1\ngreen: 1 3\nlabels: 1=1\nrooting: corner 1\nepsilon: +\n");
    fails("white: 1\ngreen: 3\nlabels: 1=0\nrooting: corner 1\nepsilon: +\n");
    fails("white: 1\ngreen: 3\nlabels: 3=1\nrooting: corner 1\nepsilon: +\n");
}

TEST_CASE("contour walk lists white corners in rotation order") {
    Mobile m = star_mobile({3, 1, 2});
    Contour c = contour_of(m);
    CHECK(c.size() == 3);
    CHECK(c.exits == std::vector<int>{2, 6, 10});
    CHECK(c.entries == std::vector<int>{3, 7, 11});
    CHECK(c.labels == std::vector<int>{3, 1, 2});

    Contour p = contour_of(path_mobile(1, 2));
    CHECK(p.labels == std::vector<int>{1, 2});
    CHECK(p.exits == std::vector<int>{0, 6});

    CHECK_THROWS_AS(contour_of(flagged_edge_mobile(0)), std::invalid_argument);
}

TEST_CASE("contour exits and entries split the white flags") {
    for (const std::vector<int>& labs :
         {std::vector<int>{1}, {1, 1}, {2, 1, 3}, {1, 2, 2, 1}}) {
        Mobile m = star_mobile(labs);
        Contour c = contour_of(m);
        std::set<int> seen;
        for (int f : c.exits) seen.insert(f);
        for (int f : c.entries) seen.insert(f);
        int whites = 0;
        for (int f = 0; f < m.fs.nflags(); f++)
            if (!m.green[f]) whites++;
        CHECK(static_cast<int>(seen.size()) == whites);
        for (int j = 0; j < c.size(); j++) CHECK(c.entries[j] == m.fs.t1[c.exits[j]]);
    }
}

TEST_CASE("arc windows of small label sequences") {
    using T = std::vector<std::tuple<int, int, int>>;
    CHECK(arc_tuples(arcs_of_labels({1})) == T{{0, 2, 1}});
    CHECK(arc_tuples(arcs_of_labels({1, 1})) == T{{0, 2, 1}, {1, 2, 1}});
    CHECK(arc_tuples(arcs_of_labels({1, 3})) == T{{0, 2, 3}, {0, 3, 1}, {1, 2, 3}});
    CHECK(arc_tuples(arcs_of_labels({1, 2, 1})) ==
          T{{0, 2, 2}, {0, 3, 1}, {1, 2, 2}, {2, 2, 1}});
    CHECK_THROWS_AS(arcs_of_labels({}), std::invalid_argument);
    CHECK_THROWS_AS(arcs_of_labels({0, 1}), std::invalid_argument);
    Arc full{0, 3, 1};
    CHECK(full.end(2) == 0);
    CHECK_FALSE(full.trivial());
    CHECK(Arc{1, 2, 4}.trivial());
}

TEST_CASE("arc windows match a direct scan") {
    for (int n = 1; n <= 4; n++)
        each_label_sequence(n, [&](const std::vector<int>& labels) {
            REQUIRE(arc_tuples(arcs_of_labels(labels)) == arc_tuples(naive_arcs(labels)));
        });
}

TEST_CASE("growth conditions on known sequences") {
    auto all3 = [](const std::vector<int>& l) {
        bool a = arcs_climb_by_one(l);
        CHECK(arc_interiors_fill_ranges(l) == a);
        CHECK(descents_step_by_one(l) == a);
        return a;
    };
    CHECK(all3({1}));
    CHECK(all3({1, 1}));
    CHECK(all3({1, 2}));
    CHECK_FALSE(all3({1, 3}));
    CHECK(all3({1, 2, 1}));
    CHECK(all3({1, 2, 2}));
    CHECK(all3({3, 1, 2}));
    CHECK(all3({2, 1, 3}));
    CHECK_FALSE(all3({1, 2, 4, 2}));
    CHECK_FALSE(all3({1, 4, 2, 3}));
    CHECK(all3({1, 2, 3, 2}));
}

TEST_CASE("enclosing arcs on known sequences") {
    std::vector<int> labels{1, 2, 3, 2};
    std::vector<Arc> arcs = arcs_of_labels(labels);
    int over3 = arc_over_corner(labels, arcs, 2);
    CHECK(arcs[over3].start == 1);
    CHECK(arcs[over3].len == 3);
    CHECK(arcs[over3].level == 2);
    int over2a = arc_over_corner(labels, arcs, 1);
    CHECK(arcs[over2a].start == 0);
    CHECK(arcs[over2a].len == 5);
    CHECK(arcs[over2a].level == 1);
    CHECK(arc_over_corner(labels, arcs, 3) == over2a);
    CHECK(arc_over_corner(labels, arcs, 0) == -1);
    CHECK(arc_over_arc(labels, arcs, over3) == over2a);
    CHECK(arc_over_arc(labels, arcs, over2a) == -1);

    std::vector<int> bad{1, 3};
    std::vector<Arc> bad_arcs = arcs_of_labels(bad);
    CHECK_THROWS_AS(arc_over_corner(bad, bad_arcs, 1), std::logic_error);
}

TEST_CASE("growth conditions agree and arcs nest across all small sequences") {
    for (int n = 1; n <= 6; n++) {
        long long count = 0, good = 0;
        each_label_sequence(n, [&](const std::vector<int>& labels) {
            count++;
            bool a = arcs_climb_by_one(labels);
            bool b = arc_interiors_fill_ranges(labels);
            bool c = descents_step_by_one(labels);
            if (a != b || a != c) {
                CAPTURE(labels);
                REQUIRE(a == b);
                REQUIRE(a == c);
            }
            std::vector<Arc> arcs = arcs_of_labels(labels);
            check_arc_nesting(labels, arcs);
            if (a) {
                good++;
                check_enclosing_arcs(labels, arcs);
            }
        });
        REQUIRE(count > 0);
        REQUIRE(good > 0);
    }
}

TEST_CASE("star mobile contours feed the arc machinery") {
    for (const std::vector<int>& labs :
         {std::vector<int>{1, 2, 3, 2}, {2, 1, 2}, {1, 1, 1}}) {
        Mobile m = star_mobile(labs);
        REQUIRE(validate_mobile(m).ok());
        std::vector<Arc> via_mobile = arcs_of_contour(m);
        CHECK(arc_tuples(via_mobile) == arc_tuples(arcs_of_labels(labs)));
    }
}

namespace {

std::vector<int> orbit_sizes(const FlagSystem& fs, const Orbits& o) {
    std::vector<int> size(fs.nflags(), 0);
    for (int f = 0; f < fs.nflags(); f++) size[o.comp[f]]++;
    return size;
}

// Structural facts every phi image must satisfy, whatever the policy:
// whites carry the vertex distances, green degrees halve the face
// degrees, white degrees count the half edges leading closer to the
// point, and the contour labels obey the growth condition.
void check_phi_properties(const PointedMap& pm_in, const OrientationPolicy& pol) {
    PhiResult r = phi_bipartite(pm_in, pol);
    const Mobile& mb = r.mobile;
    REQUIRE(validate_mobile(mb).ok());

    PointedMap pm = pm_in;
    if (r.mobile.epsilon < 0) pm.fs = root_flip(pm.fs);
    const FlagSystem& fs = pm.fs;
    int n = fs.nflags();

    CHECK(mb.fs.edge_count() == fs.edge_count());
    CHECK(static_cast<int>(r.selected.size()) == fs.edge_count());

    Orbits pv = vertex_orbits(fs);
    Orbits pf = face_orbits(fs);
    Orbits mv = vertex_orbits(mb.fs);
    std::vector<int> msize = orbit_sizes(mb.fs, mv);
    std::vector<int> pfsize = orbit_sizes(fs, pf);

    std::vector<int> down(n, 0);
    for (int f = 0; f < n; f++)
        if (pm.vlabel[f] == pm.vlabel[fs.t0[f]] + 1) down[pv.comp[f]]++;

    for (int f = 0; f < n; f++) {
        int w = r.white_of_vertex[f];
        if (pm.vlabel[f] == 0) {
            CHECK(w == -1);
        } else {
            REQUIRE(w >= 0);
            CHECK(mb.wlabel[w] == pm.vlabel[f]);
            CHECK(msize[w] / 2 == down[pv.comp[f]] / 2);
        }
        int g = r.green_of_face[f];
        REQUIRE(g >= 0);
        CHECK(msize[g] / 2 == pfsize[pf.comp[f]] / 4);
    }

    // The root corner sits at the far end of the root edge.
    CHECK(mb.wlabel[mb.fs.root] == pm.vlabel[fs.t0[fs.root]]);

    Contour c = contour_of(mb);
    CHECK(arcs_climb_by_one(c.labels));
    CHECK(arc_interiors_fill_ranges(c.labels));
    CHECK(descents_step_by_one(c.labels));
}

} // namespace

TEST_CASE("phi sends the single edge map to the one edge mobile") {
    FlagSystem fs = single_edge();
    int pt = vertex_orbits(fs).comp[0];

    PointedMap pm = make_pointed(fs, pt);
    PhiResult r = phi_bipartite(pm);
    CHECK(r.mobile.epsilon == 1);
    CHECK(r.mobile.fs.edge_count() == 1);
    CHECK(r.mobile.wlabel[r.mobile.fs.root] == 1);

    FlagSystem far = fs;
    far.root = fs.t0[fs.root];
    PhiResult r2 = phi_bipartite(make_pointed(far, pt));
    CHECK(r2.mobile.epsilon == -1);
    Mobile unsigned_a = r.mobile, unsigned_b = r2.mobile;
    unsigned_a.epsilon = unsigned_b.epsilon = 1;
    CHECK(mobile_code(unsigned_a) == mobile_code(unsigned_b));
}

TEST_CASE("phi selection depends on the policy but rooting follows the root edge") {
    FlagSystem fs = four_cycle();
    PointedMap pm = make_pointed(fs, vertex_orbits(fs).comp[0]);

    PhiResult plus = phi_bipartite(pm);
    CHECK(plus.mobile.epsilon == 1);
    CHECK(plus.mobile.fs.edge_count() == 4);
    int far = fs.t0[fs.root];
    int jroot = -1;
    for (int j = 0; j < 4; j++)
        if (plus.selected[j] == fs.t1[far]) jroot = j;
    REQUIRE(jroot >= 0);
    CHECK(plus.mobile.fs.root == 4 * jroot + 1);

    PhiResult minus = phi_bipartite(pm, OrientationPolicy::all_minus());
    CHECK(minus.mobile.fs.edge_count() == 4);
    CHECK(minus.selected != plus.selected);
}

TEST_CASE("phi images of small maps are well formed under every policy") {
    std::vector<OrientationPolicy> pols = {OrientationPolicy::all_plus(),
                                           OrientationPolicy::all_minus(),
                                           OrientationPolicy::parse("+-")};
    int pointed = 0;
    for (int e = 1; e <= 3; e++) {
        GenSpec spec;
        spec.edges = e;
        spec.bipartite_only = true;
        gen_rooted_maps(spec, [&](const FlagSystem& fs) {
            Orbits v = vertex_orbits(fs);
            for (int pt : v.ids()) {
                PointedMap pm = make_pointed(fs, pt);
                for (const OrientationPolicy& pol : pols)
                    check_phi_properties(pm, pol);
                pointed++;
            }
        });
    }
    REQUIRE(pointed == 84);
}

namespace {

std::multiset<std::pair<int, int>> loop_shape_mobile(const MobileLoopSystem& mls) {
    std::multiset<std::pair<int, int>> shape;
    for (const MobileLoop& L : mls.loops)
        shape.insert({L.level, static_cast<int>(L.visits.size())});
    return shape;
}

} // namespace

TEST_CASE("mobile loops on a single corner mobile") {
    Mobile m = star_mobile({1});
    MobileLoopSystem mls = build_mobile_loops(m);

    // Two point rings and the two traversals of the level-1 circler.
    REQUIRE(mls.loops.size() == 4);
    CHECK(mls.max_level == 1);
    int maximal = 0, rings = 0;
    for (const MobileLoop& L : mls.loops) {
        CHECK(L.visits.size() == 1);
        CHECK(mls.loops[L.partner].partner == &L - mls.loops.data());
        if (L.level == 0) rings++;
        if (L.maximal) maximal++;
    }
    CHECK(rings == 2);
    CHECK(maximal == 2);

    MobileOrder ord = orient_mobile_loops(mls, m);
    REQUIRE(ord.well_labeled);
    CHECK(ord.ranked.size() == 1);
    CHECK(mls.loops[ord.ranked[0]].level == 0);
    CHECK(ord.events == 1);
}

TEST_CASE("mobile loops on a two corner path mobile") {
    Mobile m = path_mobile(1, 2);
    MobileLoopSystem mls = build_mobile_loops(m);

    REQUIRE(mls.loops.size() == 6);
    CHECK(mls.max_level == 2);
    CHECK(loop_shape_mobile(mls) ==
          std::multiset<std::pair<int, int>>(
              {{0, 1}, {0, 1}, {1, 1}, {1, 1}, {2, 2}, {2, 2}}));
    for (const MobileLoop& L : mls.loops)
        CHECK(L.maximal == (L.level == 2));

    MobileOrder ord = orient_mobile_loops(mls, m);
    REQUIRE(ord.well_labeled);

    // The ring and one level-1 traversal get ranked; the full-turn window of
    // the ranked level-1 traversal anchors the deep corner at its land.
    REQUIRE(ord.ranked.size() == 2);
    CHECK(mls.loops[ord.ranked[0]].level == 0);
    const MobileLoop& L1 = mls.loops[ord.ranked[1]];
    CHECK(L1.level == 1);
    REQUIRE(L1.visits.size() == 1);
    CHECK(L1.visits[0].window.len == 3);
    CHECK(L1.visits[0].internals == std::vector<int>{1});
    int full = mls.arc_index(L1.visits[0].window.start, 3);
    REQUIRE(full >= 0);
    CHECK(ord.anchor[full].first == ord.ranked[1]);
}

TEST_CASE("psi builds the path map from the two corner path mobile") {
    Mobile m = path_mobile(1, 2);
    for (int eps : {1, -1}) {
        PsiResult r = psi_bipartite(m, eps);
        const FlagSystem& fs = r.pm.fs;
        CHECK(fs.edge_count() == 2);
        CHECK(vertex_orbits(fs).ids().size() == 3);
        CHECK(face_orbits(fs).ids().size() == 1);
        CHECK(classify_surface(fs).chi == 2);
        int near = r.pm.vlabel[fs.root], far = r.pm.vlabel[fs.t0[fs.root]];
        if (eps > 0) CHECK(near + 1 == far);
        else CHECK(near == far + 1);
        CHECK(std::max(near, far) == 1);
    }
}

TEST_CASE("psi inverts phi on small bipartite maps") {
    std::vector<OrientationPolicy> pols = {OrientationPolicy::all_plus(),
                                           OrientationPolicy::all_minus(),
                                           OrientationPolicy::parse("+-")};
    int pointed = 0;
    for (int e = 1; e <= 3; e++) {
        GenSpec spec;
        spec.edges = e;
        spec.bipartite_only = true;
        gen_rooted_maps(spec, [&](const FlagSystem& fs) {
            Orbits v = vertex_orbits(fs);
            for (int pt : v.ids()) {
                PointedMap pm = make_pointed(fs, pt);
                std::string want = canonical_code_pointed(fs, pt);
                for (const OrientationPolicy& pol : pols) {
                    PhiResult r = phi_bipartite(pm, pol);
                    std::string reason;
                    bool wl = check_well_labeled(r.mobile, pol, &reason);
                    CAPTURE(reason);
                    CHECK(wl);
                    PsiResult back = psi_bipartite(r.mobile, r.mobile.epsilon, pol);
                    CHECK(canonical_code_pointed(back.pm.fs, back.pm.point) == want);
                }
                pointed++;
            }
        });
    }
    REQUIRE(pointed == 84);
}
