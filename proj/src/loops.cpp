#include "mapbij/loops.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace mapbij {

namespace {

// Sweeps corners at the vertex reached by traveling state flag f at level
// i. Appends one entry per corner visited, the last being the travel exit
// that becomes the next state.
int step_level(const PointedMap& pm, int i, int f, std::vector<int>* walk,
               std::vector<char>* crossed)
{
    const FlagSystem& fs = pm.fs;
    int h = fs.t1[fs.t0[f]];
    int guard = fs.nflags();
    while (pm.vlabel[fs.t0[h]] == i + 1) {
        if (walk) {
            walk->push_back(h);
            crossed->push_back(1);
        }
        h = fs.t1[fs.t2[h]];
        if (--guard < 0) throw std::logic_error("level step failed to terminate");
    }
    if (walk) {
        walk->push_back(h);
        crossed->push_back(0);
    }
    return h;
}

void check(bool cond, const char* what)
{
    if (!cond) throw std::logic_error(what);
}

} // namespace

std::pair<int, int> LoopSystem::find_exit(int level, int flag) const
{
    if (level < 0 || level > max_level) return {-1, -1};
    return exit_of[level][flag];
}

LoopSystem build_level_loops(const PointedMap& pm)
{
    const FlagSystem& fs = pm.fs;
    if (!is_bipartite_map(fs)) throw std::invalid_argument("level loops need a bipartite map");
    int n = fs.nflags();
    LoopSystem ls;
    ls.max_level = *std::max_element(pm.vlabel.begin(), pm.vlabel.end());
    ls.exit_of.assign(ls.max_level + 1, std::vector<std::pair<int, int>>(n, {-1, -1}));

    auto record_exits = [&](int li) {
        const LevelLoop& L = ls.loops[li];
        for (int v = 0; v < L.length(); v++) {
            auto& slot = ls.exit_of[L.level][L.walk[v]];
            check(slot.first < 0, "duplicate exit flag at one level");
            slot = {li, v};
        }
    };

    // Level 0: the two rotations around the point.
    Orbits vo = vertex_orbits(fs);
    {
        std::vector<char> seen(n, 0);
        int made = 0;
        for (int f0 = 0; f0 < n; f0++) {
            if (vo.comp[f0] != pm.point || seen[f0]) continue;
            LevelLoop L;
            L.level = 0;
            int x = f0;
            do {
                seen[x] = 1;
                L.walk.push_back(x);
                L.crossed.push_back(1);
                x = fs.t1[fs.t2[x]];
            } while (x != f0);
            ls.loops.push_back(std::move(L));
            record_exits(static_cast<int>(ls.loops.size()) - 1);
            made++;
        }
        check(made == 2, "point rotation must split into two directions");
    }

    // Levels 1..max: cycles of the level step over flags whose edge has
    // both endpoint labels at most i, kept when they travel an edge of
    // type (i-1)-i.
    for (int i = 1; i <= ls.max_level; i++) {
        std::vector<char> dom(n, 0), covered(n, 0);
        for (int f = 0; f < n; f++)
            dom[f] = pm.vlabel[f] <= i && pm.vlabel[fs.t0[f]] <= i;
        for (int f = 0; f < n; f++) {
            if (dom[f]) {
                int img = step_level(pm, i, f, nullptr, nullptr);
                check(dom[img] && !covered[img], "level step is not a bijection");
                covered[img] = 1;
            }
        }
        std::vector<char> seen(n, 0);
        for (int f0 = 0; f0 < n; f0++) {
            if (!dom[f0] || seen[f0]) continue;
            LevelLoop L;
            L.level = i;
            bool kept = false;
            int crossings = 0;
            int s = f0;
            do {
                seen[s] = 1;
                int lo = std::min(pm.vlabel[s], pm.vlabel[fs.t0[s]]);
                int hi = std::max(pm.vlabel[s], pm.vlabel[fs.t0[s]]);
                if (lo == i - 1 && hi == i) kept = true;
                s = step_level(pm, i, s, &L.walk, &L.crossed);
            } while (s != f0);
            for (char c : L.crossed) crossings += c;
            if (!kept) {
                check(crossings == 0, "crossing cycle must travel a frontier edge");
                continue;
            }
            L.maximal = crossings == 0;
            ls.loops.push_back(std::move(L));
            record_exits(static_cast<int>(ls.loops.size()) - 1);
        }
    }

    // Partner linking: the reverse traversal's walk is the reversed
    // t1-image, so its visit of this loop's first corner exits by the
    // other corner edge.
    for (int li = 0; li < static_cast<int>(ls.loops.size()); li++) {
        LevelLoop& L = ls.loops[li];
        auto [pi, pv] = ls.exit_of[L.level][fs.t1[L.walk[0]]];
        check(pi >= 0 && pi != li, "missing reverse traversal");
        L.partner = pi;
        const LevelLoop& P = ls.loops[pi];
        check(P.length() == L.length() && P.level == L.level && P.maximal == L.maximal,
              "reverse traversal shape mismatch");
        for (int v = 0; v < L.length(); v++) {
            int w = (pv - v % L.length() + L.length()) % L.length();
            check(P.walk[w] == fs.t1[L.walk[v % L.length()]],
                  "reverse traversal is not the reversed t1-image");
        }
    }

    // Every flag at a vertex labeled i is the exit of exactly one level-i
    // visit, and every edge side of type (i-1)-i is traveled exactly once
    // per direction at level i.
    for (int f = 0; f < n; f++) {
        int lf = pm.vlabel[f];
        if (lf >= 1)
            check(ls.exit_of[lf][f].first >= 0, "corner missed by the loops of its level");
        int lo = std::min(lf, pm.vlabel[fs.t0[f]]);
        int hi = std::max(lf, pm.vlabel[fs.t0[f]]);
        if (hi == lo + 1 && hi >= 1) {
            auto [li, vi] = ls.exit_of[hi][f];
            check(li >= 0 && !ls.loops[li].crossed[vi],
                  "frontier edge side must be traveled at its level");
        }
    }

    // One crossing-free loop pair per face, at the face's top label.
    Orbits fo = face_orbits(fs);
    std::set<int> maximal_faces;
    int maximal_count = 0;
    for (const LevelLoop& L : ls.loops) {
        if (!L.maximal) continue;
        maximal_count++;
        int face = fo.comp[L.walk[0]];
        int top = 0;
        for (int f = 0; f < n; f++)
            if (fo.comp[f] == face) top = std::max(top, pm.vlabel[f]);
        check(L.level == top, "face border loop at the wrong level");
        maximal_faces.insert(face);
    }
    check(maximal_count == 2 * fo.count && static_cast<int>(maximal_faces.size()) == fo.count,
          "each face needs one crossing-free loop pair");

    return ls;
}

int OrientationPolicy::rule(int index) const
{
    if (rules.empty()) return +1;
    if (index >= static_cast<int>(rules.size())) return rules.back();
    return rules[index];
}

OrientationPolicy OrientationPolicy::parse(const std::string& text)
{
    OrientationPolicy p;
    for (char c : text) {
        if (c == '+')
            p.rules.push_back(+1);
        else if (c == '-')
            p.rules.push_back(-1);
        else
            throw parse_error("policy must be a string over +-");
    }
    return p;
}

std::string OrientationPolicy::to_string() const
{
    std::string s;
    for (int r : rules) s += r > 0 ? '+' : '-';
    return s.empty() ? "+" : s;
}

LoopOrder orient_and_order_loops(LoopSystem& ls, const PointedMap& pm,
                                 const OrientationPolicy& policy)
{
    const FlagSystem& fs = pm.fs;
    int nl = static_cast<int>(ls.loops.size());
    for (LevelLoop& L : ls.loops) {
        L.origin = -1;
        L.rank = -1;
    }
    LoopOrder lo;
    lo.chosen.assign(nl, 0);
    std::vector<char> done(nl, 0);

    auto orient_at = [&](int li, int vi) {
        int use = li, origin = vi;
        if (policy.rule(lo.events++) < 0) {
            const LevelLoop& L = ls.loops[li];
            auto [pl, pv] = ls.exit_of[L.level][fs.t1[L.walk[vi]]];
            check(pl == L.partner, "reverse visit lookup mismatch");
            use = pl;
            origin = pv;
        }
        ls.loops[use].origin = origin;
        ls.loops[use].rank = static_cast<int>(lo.ranked.size());
        lo.chosen[use] = 1;
        done[use] = done[ls.loops[use].partner] = 1;
        lo.ranked.push_back(use);
    };

    // Loops visiting the root corner, by increasing level, oriented as the
    // root directs.
    for (int i = 0; i <= ls.max_level; i++) {
        auto [li, vi] = ls.exit_of[i][fs.root];
        if (li < 0 || ls.loops[li].maximal || done[li]) continue;
        orient_at(li, vi);
    }

    // Travel the ranked loops from their origins, discovering the rest at
    // shared corners.
    for (size_t qi = 0; qi < lo.ranked.size(); qi++) {
        int li = lo.ranked[qi];
        int len = ls.loops[li].length();
        int origin = ls.loops[li].origin;
        for (int t = 0; t < len; t++) {
            int x = ls.loops[li].walk[(origin + t) % len];
            for (int j = 0; j <= ls.max_level; j++) {
                auto [mj, vj] = ls.exit_of[j][x];
                if (mj < 0 || ls.loops[mj].maximal || done[mj]) continue;
                orient_at(mj, vj);
            }
        }
    }

    for (int li = 0; li < nl; li++)
        check(done[li] || ls.loops[li].maximal, "orientation process left a loop behind");

    // Maximal loops: keep the traversal holding the smallest exit flag of
    // the pair, starting there. Their direction never affects selection.
    for (int li = 0; li < nl; li++) {
        if (!ls.loops[li].maximal || done[li]) continue;
        int pi = ls.loops[li].partner;
        int best_loop = li, best_visit = 0;
        for (int cand : {li, pi}) {
            const LevelLoop& C = ls.loops[cand];
            for (int v = 0; v < C.length(); v++) {
                if (C.walk[v] < ls.loops[best_loop].walk[best_visit]) {
                    best_loop = cand;
                    best_visit = v;
                }
            }
        }
        ls.loops[best_loop].origin = best_visit;
        lo.chosen[best_loop] = 1;
        done[li] = done[pi] = 1;
    }

    return lo;
}

std::vector<int> selected_corners(const LoopSystem& ls, const LoopOrder& lo,
                                  const PointedMap& pm)
{
    std::vector<int> sel;
    for (int li = 0; li < static_cast<int>(ls.loops.size()); li++) {
        if (!lo.chosen[li]) continue;
        const LevelLoop& L = ls.loops[li];
        if (L.level == 0) continue;
        int len = L.length();
        for (int v = 0; v < len; v++) {
            int x = L.walk[v];
            int prev = L.walk[(v + len - 1) % len];
            if (pm.vlabel[x] == L.level && pm.vlabel[prev] == L.level - 1)
                sel.push_back(x);
        }
    }
    std::sort(sel.begin(), sel.end());
    for (size_t k = 1; k < sel.size(); k++)
        if (sel[k] == sel[k - 1]) throw std::logic_error("corner selected twice");
    return sel;
}

} // namespace mapbij
