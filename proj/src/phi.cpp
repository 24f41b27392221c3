#include "mapbij/phi.hpp"

#include <stdexcept>

namespace mapbij {

namespace {

void check(bool ok, const char* what)
{
    if (!ok) throw std::logic_error(what);
}

} // namespace

PhiResult phi_bipartite(const PointedMap& pm_in, const OrientationPolicy& policy)
{
    if (!is_bipartite_map(pm_in.fs))
        throw std::invalid_argument("phi_bipartite requires a bipartite map");

    PointedMap pm = pm_in;
    int eps = 1;
    if (pm.vlabel[pm.fs.root] > pm.vlabel[pm.fs.t0[pm.fs.root]]) {
        pm.fs = root_flip(pm.fs);
        eps = -1;
    }
    const FlagSystem& fs = pm.fs;
    int n = fs.nflags();

    LoopSystem ls = build_level_loops(pm);
    LoopOrder lo = orient_and_order_loops(ls, pm, policy);
    std::vector<int> sel = selected_corners(ls, lo, pm);
    int k = static_cast<int>(sel.size());
    check(k == fs.edge_count(), "one corner is selected per map edge");

    // sector_of[f] = mobile edge standing on the corner {f, t1 f}, or -1.
    std::vector<int> sector_of(n, -1);
    for (int j = 0; j < k; j++) {
        check(sector_of[sel[j]] < 0 && sector_of[fs.t1[sel[j]]] < 0,
              "selected corners occupy distinct sectors");
        sector_of[sel[j]] = j;
        sector_of[fs.t1[sel[j]]] = j;
    }

    // Mobile edge j owns flags 4j..4j+3: white end 4j on the sel[j] flank
    // and 4j+1 on the t1 flank, green end 4j+2 and 4j+3 likewise.
    auto wflag = [&](int j, int f) {
        check(f == sel[j] || f == fs.t1[sel[j]], "flank flag belongs to its sector");
        return 4 * j + (f == sel[j] ? 0 : 1);
    };
    auto gflag = [&](int j, int f) { return wflag(j, f) + 2; };

    std::vector<int> t0m(4 * k), t2m(4 * k), t1m(4 * k, -1);
    for (int j = 0; j < k; j++) {
        t0m[4 * j] = 4 * j + 2;
        t0m[4 * j + 2] = 4 * j;
        t0m[4 * j + 1] = 4 * j + 3;
        t0m[4 * j + 3] = 4 * j + 1;
        t2m[4 * j] = 4 * j + 1;
        t2m[4 * j + 1] = 4 * j;
        t2m[4 * j + 2] = 4 * j + 3;
        t2m[4 * j + 3] = 4 * j + 2;
    }

    auto glue = [&](int u, int v) {
        check(u != v, "flank gluing is fixed point free");
        check((t1m[u] < 0 || t1m[u] == v) && (t1m[v] < 0 || t1m[v] == u),
              "flank gluings agree from both sides");
        t1m[u] = v;
        t1m[v] = u;
    };

    for (int j = 0; j < k; j++) {
        for (int a : {sel[j], fs.t1[sel[j]]}) {
            // Around the white: rotate across map edges until the next
            // selected sector, then join flank to flank.
            int y = fs.t2[a];
            int guard = 0;
            while (sector_of[y] < 0) {
                y = fs.t2[fs.t1[y]];
                check(++guard <= n, "white flank walk reaches a selected sector");
            }
            glue(wflag(j, a), wflag(sector_of[y], y));

            // Around the green: walk the face border until the next
            // selected sector of the same face.
            int z = fs.t0[a];
            guard = 0;
            while (sector_of[z] < 0) {
                z = fs.t0[fs.t1[z]];
                check(++guard <= n, "green flank walk reaches a selected sector");
            }
            glue(gflag(j, a), gflag(sector_of[z], z));
        }
    }
    for (int i = 0; i < 4 * k; i++) check(t1m[i] >= 0, "every flank is glued");

    PhiResult out;
    Mobile& mb = out.mobile;
    mb.fs.t0 = t0m;
    mb.fs.t1 = t1m;
    mb.fs.t2 = t2m;
    mb.green.assign(4 * k, 0);
    mb.wlabel.assign(4 * k, -1);
    for (int j = 0; j < k; j++) {
        mb.green[4 * j + 2] = mb.green[4 * j + 3] = 1;
        mb.wlabel[4 * j] = mb.wlabel[4 * j + 1] = pm.vlabel[sel[j]];
    }
    mb.epsilon = eps;

    // The mobile root sits on the white flank facing the root edge:
    // rotate from the far end of the root edge away from it until the
    // first selected sector.
    int y = fs.t0[fs.root];
    int guard = 0;
    while (sector_of[y] < 0) {
        y = fs.t2[fs.t1[y]];
        check(++guard <= n, "root flank walk reaches a selected sector");
    }
    mb.fs.root = wflag(sector_of[y], y);

    ValidationReport rep = validate_mobile(mb);
    if (!rep.ok()) throw std::logic_error("phi built an invalid mobile: " + rep.joined());

    out.selected = sel;

    Orbits mvert = vertex_orbits(mb.fs);
    Orbits pvert = vertex_orbits(fs);
    Orbits pface = face_orbits(fs);
    std::vector<int> white_of(n, -1), green_of(n, -1);
    for (int j = 0; j < k; j++) {
        int vid = pvert.comp[sel[j]];
        int w = mvert.comp[4 * j];
        if (white_of[vid] < 0) white_of[vid] = w;
        check(white_of[vid] == w, "selected sectors of one vertex share a white");
        int fid = pface.comp[sel[j]];
        int g = mvert.comp[4 * j + 2];
        if (green_of[fid] < 0) green_of[fid] = g;
        check(green_of[fid] == g, "selected sectors of one face share a green");
    }
    out.white_of_vertex.resize(n);
    out.green_of_face.resize(n);
    for (int f = 0; f < n; f++) {
        out.white_of_vertex[f] = white_of[pvert.comp[f]];
        check((out.white_of_vertex[f] < 0) == (pm.vlabel[f] == 0),
              "whites cover exactly the non-pointed vertices");
        out.green_of_face[f] = green_of[pface.comp[f]];
        check(out.green_of_face[f] >= 0, "every face carries a green");
    }
    return out;
}

} // namespace mapbij
