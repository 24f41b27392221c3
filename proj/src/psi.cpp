#include "mapbij/psi.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace mapbij {

namespace {

constexpr int FWD = 1;
constexpr int BWD = -1;

void check(bool cond, const char* what);

}  // namespace

// Orientation convention bits, fixed by requiring that the construction
// inverts the forward one on every small map: the direction of the first
// kept traversal, the flank of the future root corner at the lower end of
// the contour-start edge, and which member of a met pair counts as the
// policy's plus at each kind of shared slot.
namespace detail {
int psi_seed_dir = BWD;
int psi_seed_state_dir = BWD;
bool psi_root_next = false;
bool psi_state_plus_same = true;
bool psi_batch_plus_direct = true;
bool psi_tz_plus_direct = true;
}  // namespace detail

namespace {

using detail::psi_batch_plus_direct;
using detail::psi_root_next;
using detail::psi_seed_dir;
using detail::psi_seed_state_dir;
using detail::psi_state_plus_same;
using detail::psi_tz_plus_direct;

void check(bool cond, const char* what) {
    if (!cond) throw std::logic_error(what);
}

int key_of(int corner, int dir) { return 2 * corner + (dir < 0 ? 1 : 0); }

int index_of(const std::vector<int>& xs, int x) {
    for (int j = 0; j < static_cast<int>(xs.size()); j++)
        if (xs[j] == x) return j;
    return -1;
}

// Unwinds the orientation sweep when a kept traversal stops below its level.
struct not_well_oriented {};

}  // namespace

std::pair<int, int> MobileLoopSystem::find_state(int level, int corner, int dir) const {
    if (level < 1 || level > max_level) return {-1, -1};
    return state_of[level][key_of(corner, dir)];
}

std::pair<int, int> MobileLoopSystem::find_portion(int level, int corner, int pdir) const {
    if (level < 0 || level > max_level) return {-1, -1};
    return portion_of[level][key_of(corner, pdir)];
}

int MobileLoopSystem::arc_index(int start, int len) const {
    for (int a = 0; a < static_cast<int>(arcs.size()); a++)
        if (arcs[a].start == start && arcs[a].len == len) return a;
    return -1;
}

MobileLoopSystem build_mobile_loops(const Mobile& m) {
    MobileLoopSystem mls;
    mls.contour = contour_of(m);
    const Contour& ct = mls.contour;
    const std::vector<int>& labels = ct.labels;
    int n = ct.size();
    check(n > 0, "mobile contour is empty");
    mls.arcs = arcs_of_labels(labels);
    mls.max_level = *std::max_element(labels.begin(), labels.end());

    const FlagSystem& fs = m.fs;
    std::vector<int> pos_of(fs.nflags(), -1);
    for (int p = 0; p < n; p++) {
        pos_of[ct.exits[p]] = p;
        pos_of[ct.entries[p]] = p;
    }

    // One crossing of a level-i curve: cross the arrival edge of (q, d),
    // resurface on the far flank, walk on to the next corner labeled <= i.
    auto advance = [&](int q, int d, int level, MobileVisit* out) {
        int g = d > 0 ? ct.entries[q] : ct.exits[q];
        int y = fs.t2[g];
        int land = pos_of[y];
        check(land >= 0, "crossing flag left the contour");
        int pdir = y == ct.exits[land] ? FWD : BWD;
        out->corner = q;
        out->dir = d;
        out->land = land;
        out->pdir = pdir;
        out->internals.clear();
        int stop = -1, steps = 0;
        for (int s = 1; s <= n; s++) {
            int p = ((land + pdir * s) % n + n) % n;
            if (labels[p] <= level) {
                stop = p;
                steps = s;
                break;
            }
            if (labels[p] == level + 1) out->internals.push_back(p);
        }
        check(stop >= 0, "level walk failed to stop");
        out->window_arc = mls.arc_index(pdir > 0 ? land : stop, steps + 1);
        check(out->window_arc >= 0, "walked window is not an arc");
        out->window = mls.arcs[out->window_arc];
        return stop;
    };

    // Level 0: the two rotations around the future point, one visit per
    // label-1 corner, windows being the gaps between consecutive ones.
    std::vector<int> ones;
    for (int p = 0; p < n; p++)
        if (labels[p] == 1) ones.push_back(p);
    int sz = static_cast<int>(ones.size());
    if (sz > 0) {
        MobileLoop F, B;
        F.level = 0;
        B.level = 0;
        for (int j = 0; j < sz; j++) {
            int a = ones[j], b = ones[(j + 1) % sz];
            MobileVisit v;
            v.corner = a;
            v.dir = FWD;
            v.land = a;
            v.pdir = FWD;
            v.window_arc = mls.arc_index(a, sz == 1 ? n + 1 : (b - a + n) % n + 1);
            check(v.window_arc >= 0, "point gap is not an arc");
            v.window = mls.arcs[v.window_arc];
            F.visits.push_back(v);
        }
        for (int j = 0; j < sz; j++) {
            int at = (sz - j) % sz;
            int x = ones[at], pb = ones[(at + sz - 1) % sz];
            MobileVisit v;
            v.corner = x;
            v.dir = BWD;
            v.land = x;
            v.pdir = BWD;
            v.window_arc = mls.arc_index(pb, sz == 1 ? n + 1 : (x - pb + n) % n + 1);
            check(v.window_arc >= 0, "point gap is not an arc");
            v.window = mls.arcs[v.window_arc];
            B.visits.push_back(v);
        }
        F.partner = 1;
        B.partner = 0;
        mls.loops.push_back(std::move(F));
        mls.loops.push_back(std::move(B));
    }

    mls.state_of.assign(mls.max_level + 1,
                        std::vector<std::pair<int, int>>(2 * n, {-1, -1}));
    mls.portion_of.assign(mls.max_level + 1,
                          std::vector<std::pair<int, int>>(2 * n, {-1, -1}));
    for (int li = 0; li < static_cast<int>(mls.loops.size()); li++)
        for (int vi = 0; vi < static_cast<int>(mls.loops[li].visits.size()); vi++) {
            const MobileVisit& v = mls.loops[li].visits[vi];
            mls.portion_of[0][key_of(v.corner, v.dir)] = {li, vi};
        }

    Orbits vo = vertex_orbits(fs);

    for (int i = 1; i <= mls.max_level; i++) {
        std::vector<char> seen(2 * n, 0);
        std::vector<int> made;
        for (int seed = 0; seed < 2 * n; seed++) {
            int q0 = seed / 2;
            int d0 = seed % 2 == 0 ? FWD : BWD;
            if (labels[q0] > i || seen[seed]) continue;
            std::vector<MobileVisit> visits;
            bool kept = false, all_trivial = true;
            int q = q0, d = d0;
            int guard = 2 * n + 1;
            while (true) {
                if (!visits.empty() && q == q0 && d == d0) break;
                check(!seen[key_of(q, d)], "crossing cycle is not a bijection");
                seen[key_of(q, d)] = 1;
                if (labels[q] == i) kept = true;
                MobileVisit v;
                int stop = advance(q, d, i, &v);
                int pd = v.pdir;
                if (!v.window.trivial()) all_trivial = false;
                visits.push_back(std::move(v));
                q = stop;
                d = pd;
                check(--guard >= 0, "crossing cycle failed to close");
            }
            if (!kept) {
                // The curve meets no corner at its own level: it bounds no
                // edge bundle and is dropped, like the map-side loops that
                // exist only below their level.
                check(all_trivial, "idle crossing cycle bounds a nontrivial window");
                continue;
            }
            MobileLoop L;
            L.level = i;
            L.visits = std::move(visits);
            L.maximal = all_trivial;
            if (L.maximal) {
                int g0 = -1;
                for (const MobileVisit& v : L.visits) {
                    int g = vo.comp[fs.t0[ct.exits[v.window.start]]];
                    check(g0 < 0 || g == g0, "crossing-free cycle strays from one green vertex");
                    g0 = g;
                }
            }
            made.push_back(static_cast<int>(mls.loops.size()));
            mls.loops.push_back(std::move(L));
        }
        for (int li : made)
            for (int vi = 0; vi < static_cast<int>(mls.loops[li].visits.size()); vi++) {
                const MobileVisit& v = mls.loops[li].visits[vi];
                auto& st = mls.state_of[i][key_of(v.corner, v.dir)];
                check(st.first < 0, "duplicate crossing state at one level");
                st = {li, vi};
                auto& po = mls.portion_of[i][key_of(v.land, v.pdir)];
                check(po.first < 0, "duplicate landing at one level");
                po = {li, vi};
            }
        for (int li : made) {
            MobileLoop& L = mls.loops[li];
            const MobileVisit& v0 = L.visits[0];
            auto [pl, pv] = mls.find_state(i, v0.land, -v0.pdir);
            check(pl >= 0 && pl != li, "missing reverse traversal");
            L.partner = pl;
        }
        for (int li : made) {
            const MobileLoop& L = mls.loops[li];
            const MobileLoop& P = mls.loops[L.partner];
            check(P.partner == li && P.level == L.level &&
                      P.visits.size() == L.visits.size() && P.maximal == L.maximal,
                  "reverse traversal mismatch");
        }
    }
    return mls;
}

MobileOrder orient_mobile_loops(MobileLoopSystem& mls, const Mobile& m,
                                const OrientationPolicy& policy) {
    const Contour& ct = mls.contour;
    const std::vector<int>& labels = ct.labels;
    int n = ct.size();
    int nl = static_cast<int>(mls.loops.size());
    for (MobileLoop& L : mls.loops) {
        L.origin_visit = -1;
        L.origin_phase = -1;
        L.rank = -1;
    }
    MobileOrder ord;
    ord.chosen.assign(nl, 0);
    ord.anchor.assign(mls.arcs.size(), {-1, -1});

    if (*std::min_element(labels.begin(), labels.end()) != 1) {
        ord.well_labeled = false;
        ord.reason = "the smallest white label is not 1";
        return ord;
    }
    if (!arcs_climb_by_one(labels)) {
        ord.well_labeled = false;
        ord.reason = "contour arcs do not climb by one";
        return ord;
    }

    std::vector<char> done(nl, 0);

    // Reverse of the visit just before visit vi of loop li: the partner
    // traversal's visit crossing the same edge the other way.
    auto rv = [&](int li, int vi) {
        const MobileLoop& L = mls.loops[li];
        int nv = static_cast<int>(L.visits.size());
        const MobileVisit& v = L.visits[((vi % nv) + nv) % nv];
        auto w = mls.find_state(L.level, v.land, -v.pdir);
        check(w.first == L.partner, "reverse visit lookup mismatch");
        return w;
    };
    auto tz_phase = [&](std::pair<int, int> lv) {
        return static_cast<int>(mls.loops[lv.first].visits[lv.second].internals.size()) + 1;
    };
    auto wend = [&](const MobileVisit& v) {
        return v.pdir > 0 ? v.window.end(n) : v.window.start;
    };

    auto orient_at = [&](int cli, int pvis, int pphase, std::pair<int, int> mslot,
                         int mphase) {
        MobileLoop& C = mls.loops[cli];
        int use = cli, ov = pvis, op = pphase;
        if (policy.rule(ord.events++) < 0) {
            check(mslot.first == C.partner, "reverse visit lookup mismatch");
            use = mslot.first;
            ov = mslot.second;
            op = mphase;
        }
        mls.loops[use].origin_visit = ov;
        mls.loops[use].origin_phase = op;
        mls.loops[use].rank = static_cast<int>(ord.ranked.size());
        ord.chosen[use] = 1;
        done[cli] = done[C.partner] = 1;
        ord.ranked.push_back(use);
        // A kept traversal must stop at its own level across every
        // nontrivial window; those windows then receive their bundle.
        const MobileLoop& K = mls.loops[use];
        if (K.level == 0) return;
        for (int v = 0; v < static_cast<int>(K.visits.size()); v++) {
            const MobileVisit& w = K.visits[v];
            if (w.window.trivial()) continue;
            if (labels[w.land] != K.level) {
                ord.well_labeled = false;
                ord.reason =
                    "loop at level " + std::to_string(K.level) + " is not well oriented";
                throw not_well_oriented{};
            }
            auto& slot = ord.anchor[w.window_arc];
            check(slot.first < 0, "nontrivial arc anchored twice");
            slot = {use, v};
        }
    };

    auto orient_pair = [&](std::pair<int, int> p, int pph, std::pair<int, int> m,
                           int mph, bool direct) {
        if (direct)
            orient_at(p.first, p.second, pph, m, mph);
        else
            orient_at(m.first, m.second, mph, p, pph);
    };

    // The ladder of loops stacked at one shared slot, met in increasing
    // level; candidates must land at the key corner and walk the reference
    // window.
    auto stack_at = [&](int corner, int pdir, int ref_arc) {
        for (int lv = 1; lv <= mls.max_level; lv++) {
            auto [cli, cvi] = mls.find_portion(lv, corner, pdir);
            if (cli < 0 || mls.loops[cli].maximal || done[cli]) continue;
            const MobileVisit& cv = mls.loops[cli].visits[cvi];
            if (cv.window_arc != ref_arc) continue;
            auto ms = rv(cli, cvi + 1);
            orient_pair({cli, cvi}, tz_phase({cli, cvi}), ms, tz_phase(ms),
                        psi_batch_plus_direct);
        }
    };

    try {
        // First traversal: the one passing the future root corner, which
        // flanks the lower end of the contour-start edge.
        int l0 = labels[0];
        if (l0 == 1) {
            // the point gap flanking the root side of the contour-start edge
            int other = -1;
            for (int s = 1; s <= n && other < 0; s++) {
                int p = psi_root_next ? s % n : ((-s) % n + n) % n;
                if (labels[p] == 1) other = p;
            }
            check(other >= 0, "point gap end missing");
            int ga = psi_root_next ? 0 : other, gb = psi_root_next ? other : 0;
            auto cover = [&](int dir) {
                return mls.find_portion(0, dir > 0 ? ga : gb, dir);
            };
            auto plus = cover(psi_seed_dir), minus = cover(-psi_seed_dir);
            check(plus.first >= 0 && minus.first >= 0, "point rotation missing at the root");
            orient_at(plus.first, plus.second, 1, minus, 1);
        } else {
            int B0 = arc_over_corner(labels, mls.arcs, 0);
            const Arc& B = mls.arcs[B0];
            auto [oli, ovi] = mls.find_portion(l0 - 1, psi_seed_dir > 0 ? B.start : B.end(n), psi_seed_dir);
            check(oli >= 0, "window delimiter missing at the root corner");
            const MobileVisit& ov = mls.loops[oli].visits[ovi];
            check(ov.window_arc == B0, "delimiter window differs from the enclosing arc");
            int idx = index_of(ov.internals, 0);
            check(idx >= 0, "root corner lost in the enclosing bundle");
            auto [wli, wvi] = rv(oli, ovi + 1);
            const MobileVisit& wv = mls.loops[wli].visits[wvi];
            int jdx = index_of(wv.internals, 0);
            check(jdx == static_cast<int>(ov.internals.size()) - 1 - idx,
                  "reverse bundle order mismatch");
            // The rebuilt rotation lists a backward lander's edges in travel
            // order and a forward lander's reversed, so the slot flanking the
            // chosen side of the contour-start edge depends on the seed
            // direction.
            bool low_side = psi_root_next == (psi_seed_dir > 0);
            orient_at(oli, ovi, low_side ? idx : idx + 1, {wli, wvi},
                      low_side ? jdx + 1 : jdx);
        }

        // The remaining traversals crossing the contour-start edge, by
        // increasing level, oriented as the root directs. The crossing from
        // the start corner leaves by the exit flank, so its state travels
        // backward; the reverse crossing enters from the far side.
        for (int lv = l0; lv <= mls.max_level; lv++) {
            auto a = mls.find_state(lv, 0, BWD);
            if (a.first < 0 || mls.loops[a.first].maximal || done[a.first]) continue;
            auto b = rv(a.first, a.second);
            auto plus = psi_seed_state_dir == BWD ? a : b;
            auto minus = psi_seed_state_dir == BWD ? b : a;
            orient_at(plus.first, plus.second, 0, minus, 0);
        }

        // Travel the ranked traversals from their origin slots, discovering
        // the rest at shared corners.
        for (size_t qi = 0; qi < ord.ranked.size(); qi++) {
            int li = ord.ranked[qi];
            const MobileLoop& L = mls.loops[li];
            int nv = static_cast<int>(L.visits.size());
            int vi = L.origin_visit, ph = L.origin_phase;
            if (L.level == 0) {
                check(ph == 1, "point rotation origin out of range");
                for (int j = 0; j < nv; j++) {
                    const MobileVisit& v = L.visits[(vi + j) % nv];
                    stack_at(v.corner, v.dir, v.window_arc);
                }
                continue;
            }
            int total = 0;
            for (const MobileVisit& v : L.visits)
                total += static_cast<int>(v.internals.size()) + 2;
            check(ph >= 0 && ph <= static_cast<int>(L.visits[vi].internals.size()) + 1,
                  "origin slot out of range");
            for (int step = 0; step < total; step++) {
                const MobileVisit& v = L.visits[vi];
                int k = static_cast<int>(v.internals.size());
                if (ph == 0) {
                    // the parallel crossings of the same mobile edge
                    for (int lv = 1; lv <= mls.max_level; lv++) {
                        auto [cli, cvi] = mls.find_state(lv, v.corner, v.dir);
                        if (cli < 0 || mls.loops[cli].maximal || done[cli]) continue;
                        const MobileVisit& cv = mls.loops[cli].visits[cvi];
                        auto ms = mls.find_state(lv, cv.land, -cv.pdir);
                        check(ms.first == mls.loops[cli].partner,
                              "reverse visit lookup mismatch");
                        orient_pair({cli, cvi}, 0, ms, 0, psi_state_plus_same);
                    }
                } else if (ph <= k) {
                    // the ladder descending between two bundle edges
                    int c = v.internals[ph - 1];
                    int nxt = ph < k ? v.internals[ph] : wend(v);
                    int rstart = v.pdir > 0 ? c : nxt;
                    int rlen = ((nxt - c) * v.pdir % n + n) % n + 1;
                    int ref = mls.arc_index(rstart, rlen);
                    check(ref >= 0, "bundle gap is not an arc");
                    stack_at(c, v.pdir, ref);
                } else {
                    // the single traversal overflying this window
                    int q1 = v.land, q2 = wend(v);
                    if (v.window.level == 1) {
                        auto plus = mls.find_portion(0, q1, v.pdir);
                        auto minus = mls.find_portion(0, q2, -v.pdir);
                        check(plus.first >= 0 && minus.first >= 0,
                              "point rotation missing under a window");
                        if (!done[plus.first]) {
                            const MobileVisit& pv =
                                mls.loops[plus.first].visits[plus.second];
                            check(pv.window_arc == v.window_arc,
                                  "point gap differs from the unit window");
                            orient_pair(plus, 1, minus, 1, psi_tz_plus_direct);
                        }
                    } else {
                        int B0 = arc_over_arc(labels, mls.arcs, v.window_arc);
                        const Arc& B = mls.arcs[B0];
                        auto [oli, ovi] = mls.find_portion(
                            v.window.level - 1, v.pdir > 0 ? B.start : B.end(n), v.pdir);
                        check(oli >= 0, "window delimiter missing");
                        if (!done[oli]) {
                            const MobileVisit& ov = mls.loops[oli].visits[ovi];
                            check(ov.window_arc == B0,
                                  "delimiter window differs from the enclosing arc");
                            int pphase = 0;
                            if (labels[q1] == v.window.level) {
                                int idx = index_of(ov.internals, q1);
                                check(idx >= 0, "window end lost in the enclosing bundle");
                                pphase = idx + 1;
                            } else {
                                check(q1 == ov.land, "shallow window end misses the delimiter");
                            }
                            auto [wli, wvi] = rv(oli, ovi + 1);
                            const MobileVisit& wv = mls.loops[wli].visits[wvi];
                            int mphase = 0;
                            if (labels[q2] == v.window.level) {
                                int jdx = index_of(wv.internals, q2);
                                check(jdx >= 0, "window end lost in the reverse bundle");
                                mphase = jdx + 1;
                            } else {
                                check(q2 == wv.land, "shallow window end misses the delimiter");
                            }
                            orient_pair({oli, ovi}, pphase, {wli, wvi}, mphase,
                                        psi_tz_plus_direct);
                        }
                    }
                }
                ph++;
                if (ph > k + 1) {
                    ph = 0;
                    vi = (vi + 1) % nv;
                }
            }
        }
    } catch (const not_well_oriented&) {
        return ord;
    }

    for (int li = 0; li < nl; li++)
        check(done[li] || mls.loops[li].maximal, "orientation process left a loop behind");

    // Crossing-free traversals: keep the one holding the smallest crossing
    // flag of the pair, starting there. Their direction never matters.
    auto cross_flag = [&](const MobileVisit& v) {
        return v.dir > 0 ? ct.entries[v.corner] : ct.exits[v.corner];
    };
    for (int li = 0; li < nl; li++) {
        if (!mls.loops[li].maximal || done[li]) continue;
        int pi = mls.loops[li].partner;
        int best_loop = li, best_visit = 0;
        for (int cand : {li, pi}) {
            const MobileLoop& C = mls.loops[cand];
            for (int v = 0; v < static_cast<int>(C.visits.size()); v++)
                if (cross_flag(C.visits[v]) <
                    cross_flag(mls.loops[best_loop].visits[best_visit])) {
                    best_loop = cand;
                    best_visit = v;
                }
        }
        mls.loops[best_loop].origin_visit = best_visit;
        mls.loops[best_loop].origin_phase = 0;
        ord.chosen[best_loop] = 1;
        done[li] = done[pi] = 1;
    }

    return ord;
}

bool check_well_labeled(const Mobile& m, const OrientationPolicy& policy,
                        std::string* reason) {
    ValidationReport rep = validate_mobile(m);
    if (!rep.ok()) {
        if (reason) *reason = "invalid mobile: " + rep.joined();
        return false;
    }
    if (m.generalized() || m.edge_rooted) {
        if (reason) *reason = "flagged mobiles are checked after splitting";
        return false;
    }
    MobileLoopSystem mls = build_mobile_loops(m);
    MobileOrder ord = orient_mobile_loops(mls, m, policy);
    if (!ord.well_labeled && reason) *reason = ord.reason;
    return ord.well_labeled;
}

PsiResult psi_bipartite(const Mobile& m, int epsilon, const OrientationPolicy& policy) {
    if (epsilon != 1 && epsilon != -1)
        throw std::invalid_argument("epsilon must be +1 or -1");
    ValidationReport rep = validate_mobile(m);
    if (!rep.ok()) throw std::invalid_argument("invalid mobile: " + rep.joined());
    if (m.generalized() || m.edge_rooted)
        throw std::invalid_argument("flagged or edge-rooted mobiles take the general construction");

    MobileLoopSystem mls = build_mobile_loops(m);
    MobileOrder ord = orient_mobile_loops(mls, m, policy);
    if (!ord.well_labeled) throw std::invalid_argument(ord.reason);

    const Contour& ct = mls.contour;
    const std::vector<int>& labels = ct.labels;
    int n = ct.size();
    const FlagSystem& mfs = m.fs;
    std::vector<int> pos_of(mfs.nflags(), -1);
    for (int p = 0; p < n; p++) {
        pos_of[ct.exits[p]] = p;
        pos_of[ct.entries[p]] = p;
    }

    // Map edge p descends from the white vertex of corner p; half-edge 2p
    // sits there, half-edge 2p+1 at the descent target. Bundles gather the
    // lower ends inside the corner their arc descends to, split by the
    // flank the anchoring traversal lands on.
    std::vector<std::vector<int>> before(n), after(n);
    for (int ai = 0; ai < static_cast<int>(mls.arcs.size()); ai++) {
        auto [li, vi] = ord.anchor[ai];
        if (mls.arcs[ai].trivial()) {
            check(li < 0, "trivial arc anchored");
            continue;
        }
        check(li >= 0, "nontrivial arc never anchored");
        const MobileVisit& v = mls.loops[li].visits[vi];
        std::vector<int>& side = v.pdir > 0 ? after[v.land] : before[v.land];
        check(side.empty(), "two bundles on one corner flank");
        side = v.internals;
    }
    {
        std::vector<char> covered(n, 0);
        for (int c = 0; c < n; c++)
            for (const std::vector<int>* side : {&before[c], &after[c]})
                for (int q : *side) {
                    check(!covered[q], "corner descends twice");
                    covered[q] = 1;
                }
        for (int p = 0; p < n; p++)
            check((labels[p] >= 2) == (covered[p] == 1),
                  "descent targets miss the deep corners");
    }

    // Rotations: vertex 0 is the point, collecting the lower ends of the
    // label-1 corners in contour order; every white vertex lists, corner by
    // corner along its corner cycle, the bundle on the entry flank, its own
    // upper end, then the bundle on the exit flank reversed. A corner met
    // against the cycle sense contributes its list reversed, and its ends
    // remember the frame so that each edge can be twisted when its two
    // frames disagree.
    std::vector<std::vector<int>> rot;
    std::vector<char> hflip(2 * n, 0);
    {
        std::vector<int> r;
        for (int p = n - 1; p >= 0; p--)
            if (labels[p] == 1) r.push_back(2 * p + 1);
        rot.push_back(r);
    }
    std::vector<int> vertex_of(n, -1);
    for (int p0 = 0; p0 < n; p0++) {
        if (vertex_of[p0] >= 0) continue;
        std::vector<int> r;
        int c = p0, fl = 0;
        int guard = n;
        do {
            check(vertex_of[c] < 0, "corner cycle revisits a corner");
            vertex_of[c] = static_cast<int>(rot.size());
            const std::vector<int>& lead = fl ? after[c] : before[c];
            const std::vector<int>& trail = fl ? before[c] : after[c];
            for (int q : lead) {
                r.push_back(2 * q + 1);
                hflip[2 * q + 1] = static_cast<char>(fl);
            }
            r.push_back(2 * c);
            hflip[2 * c] = static_cast<char>(fl);
            for (int t = static_cast<int>(trail.size()) - 1; t >= 0; t--) {
                r.push_back(2 * trail[t] + 1);
                hflip[2 * trail[t] + 1] = static_cast<char>(fl);
            }
            int arrive = mfs.t2[fl ? ct.exits[c] : ct.entries[c]];
            c = pos_of[arrive];
            check(c >= 0, "corner cycle left the contour");
            fl = arrive == ct.exits[c] ? 0 : 1;
            check(--guard >= 0, "corner cycle failed to close");
        } while (c != p0);
        check(fl == 0, "corner cycle returned in a flipped frame");
        rot.push_back(std::move(r));
    }
    {
        std::vector<char> used(2 * n, 0);
        for (const std::vector<int>& r : rot)
            for (int h : r) {
                check(!used[h], "half edge placed twice");
                used[h] = 1;
            }
        for (int h = 0; h < 2 * n; h++) check(used[h], "half edge never placed");
    }

    // Assemble the flag system: half-edge h owns flags 2h and 2h+1, its
    // trailing and leading side in the local rotation sense.
    FlagSystem fs;
    fs.t0.assign(4 * n, -1);
    fs.t1.assign(4 * n, -1);
    fs.t2.assign(4 * n, -1);
    for (int h = 0; h < 2 * n; h++) {
        fs.t2[2 * h] = 2 * h + 1;
        fs.t2[2 * h + 1] = 2 * h;
    }
    for (const std::vector<int>& r : rot) {
        int s = static_cast<int>(r.size());
        for (int j = 0; j < s; j++) {
            int a = r[j], b = r[(j + 1) % s];
            fs.t1[2 * a + 1] = 2 * b;
            fs.t1[2 * b] = 2 * a + 1;
        }
    }
    for (int p = 0; p < n; p++) {
        int h0 = 2 * p, h1 = 2 * p + 1;
        if (hflip[h0] == hflip[h1]) {
            fs.t0[2 * h0 + 1] = 2 * h1;
            fs.t0[2 * h1] = 2 * h0 + 1;
            fs.t0[2 * h0] = 2 * h1 + 1;
            fs.t0[2 * h1 + 1] = 2 * h0;
        } else {
            fs.t0[2 * h0 + 1] = 2 * h1 + 1;
            fs.t0[2 * h1 + 1] = 2 * h0 + 1;
            fs.t0[2 * h0] = 2 * h1;
            fs.t0[2 * h1] = 2 * h0;
        }
    }
    bool next_side = hflip[1] != 0;
    fs.root = next_side ? 3 : 2;
    if (epsilon < 0) fs = root_flip(fs);

    ValidationReport vr = validate(fs);
    check(vr.ok(), "assembled flag system is invalid");
    check(is_bipartite_map(fs), "assembled map is not bipartite");

    Orbits vo = vertex_orbits(fs);
    PsiResult res;
    res.pm = make_pointed(fs, vo.comp[2 * rot[0][0]]);
    for (int p = 0; p < n; p++)
        check(res.pm.vlabel[4 * p] == labels[p],
              "rebuilt distances disagree with the labels");
    res.edge_of_corner.resize(n);
    res.vertex_of_white.resize(n);
    for (int p = 0; p < n; p++) {
        res.edge_of_corner[p] = p;
        res.vertex_of_white[p] = vo.comp[4 * p];
    }
    return res;
}

}  // namespace mapbij
