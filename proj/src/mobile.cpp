#include "mapbij/mobile.hpp"

#include <algorithm>
#include <climits>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace mapbij {

namespace {

void check(bool cond, const char* what) {
    if (!cond) throw std::logic_error(what);
}

} // namespace

int Mobile::min_label() const {
    int best = INT_MAX;
    for (int f = 0; f < fs.nflags(); f++)
        if (!green[f]) best = std::min(best, wlabel[f]);
    for (const auto& [eid, lab] : flag_label) best = std::min(best, lab);
    return best;
}

ValidationReport validate_mobile(const Mobile& m) {
    ValidationReport r = validate(m.fs);
    if (!r.ok()) return r;
    int n = m.fs.nflags();
    auto complain = [&](const std::string& what) { r.errors.push_back(what); };
    if (static_cast<int>(m.green.size()) != n || static_cast<int>(m.wlabel.size()) != n) {
        complain("coloring or label table size does not match the flag count");
        return r;
    }

    Orbits v = vertex_orbits(m.fs);
    for (int f = 0; f < n; f++) {
        int id = v.comp[f];
        if (m.green[f] != m.green[id])
            complain("vertex " + std::to_string(id + 1) + " mixes colors");
        if (m.wlabel[f] != m.wlabel[id])
            complain("vertex " + std::to_string(id + 1) + " mixes labels");
    }
    for (int id : v.ids()) {
        if (m.green[id] && m.wlabel[id] != -1)
            complain("green vertex " + std::to_string(id + 1) + " carries a label");
        if (!m.green[id] && m.wlabel[id] < 1)
            complain("white vertex " + std::to_string(id + 1) + " needs a positive label");
    }

    if (face_orbits(m.fs).count != 1) complain("a mobile has exactly one face");

    Orbits e = edge_orbits(m.fs);
    for (const auto& [eid, lab] : m.flag_label) {
        if (eid < 0 || eid >= n || e.comp[eid] != eid)
            complain("flagged entry " + std::to_string(eid + 1) + " is not an edge");
        else if (lab < 1)
            complain("flagged edge " + std::to_string(eid + 1) + " needs a positive label");
    }
    for (int eid : e.ids()) {
        bool a = m.green[eid], b = m.green[m.fs.t0[eid]];
        if (m.is_flagged(eid)) {
            if (!a || !b)
                complain("flagged edge " + std::to_string(eid + 1) + " must join green vertices");
        } else if (a == b) {
            complain("edge " + std::to_string(eid + 1) + " must join a white and a green vertex");
        }
    }

    if (!r.ok()) return r;
    if (m.min_label() != 1) complain("smallest label must be 1");
    if (m.epsilon != 1 && m.epsilon != -1) complain("sign must be +1 or -1");
    if (m.edge_rooted) {
        if (!m.is_flagged(e.comp[m.fs.root]))
            complain("edge rooting needs the root edge flagged");
        if (m.epsilon != 1) complain("edge rooting forces sign +");
    } else {
        if (m.green[m.fs.root]) complain("corner rooting needs a white root vertex");
    }
    return r;
}

std::string mobile_code(const Mobile& m) {
    int n = m.fs.nflags();
    std::vector<int> num = bfs_flag_numbering(m.fs, m.fs.root);
    std::vector<int> inv(n);
    for (int f = 0; f < n; f++) inv[num[f]] = f;
    std::ostringstream os;
    os << "u " << n;
    for (const auto* t : {&m.fs.t0, &m.fs.t1, &m.fs.t2}) {
        os << " |";
        for (int i = 0; i < n; i++) os << " " << num[(*t)[inv[i]]];
    }
    os << " | c";
    for (int i = 0; i < n; i++) os << (m.green[inv[i]] ? " g" : " w");
    os << " | l";
    for (int i = 0; i < n; i++) os << " " << (m.green[inv[i]] ? 0 : m.wlabel[inv[i]]);
    os << " | f";
    std::vector<std::pair<int, int>> flagged;
    for (const auto& [eid, lab] : m.flag_label) {
        int cmin = std::min({num[eid], num[m.fs.t0[eid]], num[m.fs.t2[eid]],
                             num[m.fs.t0[m.fs.t2[eid]]]});
        flagged.emplace_back(cmin, lab);
    }
    std::sort(flagged.begin(), flagged.end());
    for (const auto& [cmin, lab] : flagged) os << " " << cmin << "=" << lab;
    os << " | r " << (m.edge_rooted ? "e" : "c");
    os << " | s " << (m.epsilon > 0 ? "+" : "-");
    return os.str();
}

namespace {

// Splits the root flag into the written side/direction pair; the minimum
// flag of the root edge is side 1, direction 1.
void root_edge_coords(const Mobile& m, int& edge, int& side, int& dir) {
    Orbits e = edge_orbits(m.fs);
    edge = e.comp[m.fs.root];
    int r = m.fs.root;
    side = (r == edge || r == m.fs.t0[edge]) ? 1 : 2;
    dir = (r == edge || r == m.fs.t2[edge]) ? 1 : 2;
}

} // namespace

void write_mobile(std::ostream& out, const Mobile& m) {
    write_map(out, m.fs);
    Orbits v = vertex_orbits(m.fs);
    std::vector<int> whites, greens;
    for (int id : v.ids()) (m.green[id] ? greens : whites).push_back(id);
    out << "white:";
    for (int id : whites) out << " " << (id + 1);
    out << "\ngreen:";
    for (int id : greens) out << " " << (id + 1);
    out << "\nlabels:";
    for (int id : whites) out << " " << (id + 1) << "=" << m.wlabel[id];
    out << "\n";
    if (!m.flag_label.empty()) {
        out << "flagged:";
        for (const auto& [eid, lab] : m.flag_label) out << " " << (eid + 1) << "=" << lab;
        out << "\n";
    }
    if (m.edge_rooted) {
        int edge, side, dir;
        root_edge_coords(m, edge, side, dir);
        out << "rooting: edge " << (edge + 1) << " side " << side << " dir " << dir << "\n";
    } else {
        out << "rooting: corner " << (m.fs.root + 1) << "\n";
    }
    out << "epsilon: " << (m.epsilon > 0 ? "+" : "-") << "\n";
}

Mobile read_mobile(std::istream& in) {
    auto fields = read_field_lines(in);
    Mobile m;
    m.fs = parse_flag_fields(fields);
    int n = m.fs.nflags();
    auto need = [&](const std::string& k) -> std::pair<std::string, int> {
        auto it = fields.find(k);
        if (it == fields.end()) throw parse_error("missing '" + k + "' line");
        return it->second;
    };
    auto bad = [](int lineno, const std::string& what) {
        throw parse_error("line " + std::to_string(lineno) + ": " + what);
    };

    Orbits v = vertex_orbits(m.fs);
    m.green.assign(n, 0);
    m.wlabel.assign(n, -1);
    std::vector<int> seen(n, 0);
    for (const char* key : {"white", "green"}) {
        auto [body, lineno] = need(key);
        std::istringstream is(body);
        int f;
        while (is >> f) {
            if (f < 1 || f > n) bad(lineno, "vertex flag out of range");
            int id = v.comp[f - 1];
            if (seen[id]) bad(lineno, "vertex listed twice");
            seen[id] = 1;
            if (key[0] == 'g')
                for (int g = 0; g < n; g++)
                    if (v.comp[g] == id) m.green[g] = 1;
        }
        if (!is.eof()) bad(lineno, "expected flag numbers");
    }
    for (int id : v.ids())
        if (!seen[id]) bad(need("white").second, "vertex missing from the color lists");

    {
        auto [body, lineno] = need("labels");
        std::istringstream is(body);
        std::string tok;
        while (is >> tok) {
            size_t eq = tok.find('=');
            int f = 0, lab = 0;
            if (eq == std::string::npos ||
                !(std::istringstream(tok.substr(0, eq)) >> f) ||
                !(std::istringstream(tok.substr(eq + 1)) >> lab))
                bad(lineno, "expected flag=label entries");
            if (f < 1 || f > n) bad(lineno, "label flag out of range");
            if (lab < 1) bad(lineno, "labels must be positive");
            int id = v.comp[f - 1];
            if (m.green[id]) bad(lineno, "label on a green vertex");
            if (m.wlabel[id] != -1 && m.wlabel[id] != lab) bad(lineno, "conflicting labels");
            for (int g = 0; g < n; g++)
                if (v.comp[g] == id) m.wlabel[g] = lab;
        }
        for (int id : v.ids())
            if (!m.green[id] && m.wlabel[id] == -1) bad(lineno, "white vertex without a label");
    }

    if (fields.count("flagged")) {
        auto [body, lineno] = fields["flagged"];
        Orbits e = edge_orbits(m.fs);
        std::istringstream is(body);
        std::string tok;
        while (is >> tok) {
            size_t eq = tok.find('=');
            int f = 0, lab = 0;
            if (eq == std::string::npos ||
                !(std::istringstream(tok.substr(0, eq)) >> f) ||
                !(std::istringstream(tok.substr(eq + 1)) >> lab))
                bad(lineno, "expected edge=label entries");
            if (f < 1 || f > n) bad(lineno, "flagged edge out of range");
            if (lab < 1) bad(lineno, "flag labels must be positive");
            int eid = e.comp[f - 1];
            if (m.flag_label.count(eid)) bad(lineno, "edge flagged twice");
            m.flag_label[eid] = lab;
        }
    }

    {
        auto [body, lineno] = need("rooting");
        std::istringstream is(body);
        std::string kind;
        is >> kind;
        if (kind == "corner") {
            int f;
            if (!(is >> f) || f < 1 || f > n) bad(lineno, "corner rooting needs a flag");
            if (f - 1 != m.fs.root) bad(lineno, "rooting disagrees with the root line");
        } else if (kind == "edge") {
            int f = 0, side = 0, dir = 0;
            std::string sword, dword;
            if (!(is >> f >> sword >> side >> dword >> dir) || sword != "side" ||
                dword != "dir" || f < 1 || f > n || side < 1 || side > 2 || dir < 1 ||
                dir > 2)
                bad(lineno, "edge rooting needs 'edge e side s dir d'");
            Orbits e = edge_orbits(m.fs);
            int em = e.comp[f - 1];
            int flag = em;
            if (side == 2) flag = m.fs.t2[flag];
            if (dir == 2) flag = m.fs.t0[flag];
            if (flag != m.fs.root) bad(lineno, "rooting disagrees with the root line");
            m.edge_rooted = true;
        } else {
            bad(lineno, "rooting must be 'corner' or 'edge'");
        }
    }

    {
        auto [body, lineno] = need("epsilon");
        std::istringstream is(body);
        std::string sign;
        if (!(is >> sign) || (sign != "+" && sign != "-")) bad(lineno, "epsilon must be + or -");
        m.epsilon = sign == "+" ? 1 : -1;
    }
    return m;
}

Contour contour_of(const Mobile& m) {
    if (m.edge_rooted || m.generalized())
        throw std::invalid_argument("contour needs a corner-rooted mobile without flagged edges");
    Contour c;
    int p = m.fs.root;
    int guard = m.fs.nflags();
    do {
        check(!m.green[p], "contour walk left the white vertices");
        c.exits.push_back(p);
        c.entries.push_back(m.fs.t1[p]);
        c.labels.push_back(m.wlabel[p]);
        int q = m.fs.t1[m.fs.t0[p]];
        check(m.green[q], "mobile edge misses a green end");
        p = m.fs.t1[m.fs.t0[q]];
        check(static_cast<int>(c.exits.size()) <= guard, "contour walk failed to close");
    } while (p != m.fs.root);
    check(c.size() == m.fs.edge_count(), "contour must visit every white corner once");
    return c;
}

std::vector<Arc> arcs_of_labels(const std::vector<int>& labels) {
    int n = static_cast<int>(labels.size());
    if (n == 0) throw std::invalid_argument("arcs need at least one corner");
    for (int l : labels)
        if (l < 1) throw std::invalid_argument("corner labels must be positive");
    std::vector<Arc> arcs;
    for (int s = 0; s < n; s++) {
        int min_int = INT_MAX;
        for (int off = 1; off <= n; off++) {
            int e = (s + off) % n;
            int lev = std::max(labels[s], labels[e]);
            if (min_int > lev) arcs.push_back({s, off + 1, lev});
            min_int = std::min(min_int, labels[e]);
        }
    }
    return arcs;
}

std::vector<Arc> arcs_of_contour(const Mobile& m) {
    return arcs_of_labels(contour_of(m).labels);
}

bool arcs_climb_by_one(const std::vector<int>& labels) {
    int n = static_cast<int>(labels.size());
    if (n == 0) throw std::invalid_argument("arcs need at least one corner");
    int top = 1;
    for (int l : labels) {
        if (l < 1) throw std::invalid_argument("corner labels must be positive");
        top = std::max(top, l);
    }
    std::vector<int> cnt(top + 2, 0);
    for (int s = 0; s < n; s++) {
        std::fill(cnt.begin(), cnt.end(), 0);
        int min_int = INT_MAX;
        for (int off = 1; off <= n; off++) {
            int e = (s + off) % n;
            if (off >= 2) {
                int lev = std::max(labels[s], labels[e]);
                if (min_int > lev && cnt[lev + 1] == 0) return false;
            }
            cnt[labels[e]]++;
            min_int = std::min(min_int, labels[e]);
        }
    }
    return true;
}

bool arc_interiors_fill_ranges(const std::vector<int>& labels) {
    int n = static_cast<int>(labels.size());
    if (n == 0) throw std::invalid_argument("arcs need at least one corner");
    int top = 1;
    for (int l : labels) {
        if (l < 1) throw std::invalid_argument("corner labels must be positive");
        top = std::max(top, l);
    }
    std::vector<int> cnt(top + 2, 0);
    for (int s = 0; s < n; s++) {
        std::fill(cnt.begin(), cnt.end(), 0);
        int min_int = INT_MAX, max_int = 0;
        for (int off = 1; off <= n; off++) {
            int e = (s + off) % n;
            if (off >= 2) {
                int lev = std::max(labels[s], labels[e]);
                if (min_int > lev) {
                    if (min_int != lev + 1) return false;
                    for (int k = lev + 1; k <= max_int; k++)
                        if (cnt[k] == 0) return false;
                }
            }
            cnt[labels[e]]++;
            min_int = std::min(min_int, labels[e]);
            max_int = std::max(max_int, labels[e]);
        }
    }
    return true;
}

bool descents_step_by_one(const std::vector<int>& labels) {
    int n = static_cast<int>(labels.size());
    if (n == 0) throw std::invalid_argument("arcs need at least one corner");
    for (int l : labels)
        if (l < 1) throw std::invalid_argument("corner labels must be positive");
    for (int p = 0; p < n; p++) {
        int i = labels[p];
        if (i < 2) continue;
        bool ok = false;
        for (int d = 1; d < n; d++) {
            int q = labels[(p + d) % n];
            if (q < i) {
                ok = q == i - 1;
                break;
            }
        }
        if (!ok) {
            for (int d = 1; d < n; d++) {
                int q = labels[((p - d) % n + n) % n];
                if (q < i) {
                    ok = q == i - 1;
                    break;
                }
            }
        }
        if (!ok) return false;
    }
    return true;
}

namespace {

int find_arc(const std::vector<Arc>& arcs, int start, int len) {
    for (int a = 0; a < static_cast<int>(arcs.size()); a++)
        if (arcs[a].start == start && arcs[a].len == len) return a;
    return -1;
}

} // namespace

int arc_over_corner(const std::vector<int>& labels, const std::vector<Arc>& arcs, int pos) {
    int n = static_cast<int>(labels.size());
    int i = labels[pos];
    if (i <= 1) return -1;
    int b = -1, b2 = -1;
    for (int d = 1; d < n && b < 0; d++)
        if (labels[((pos - d) % n + n) % n] < i) b = ((pos - d) % n + n) % n;
    for (int d = 1; d < n && b2 < 0; d++)
        if (labels[(pos + d) % n] < i) b2 = (pos + d) % n;
    check(b >= 0 && b2 >= 0, "corner has no smaller label to descend to");
    int len = b == b2 ? n + 1 : (b2 - b + n) % n + 1;
    int a = find_arc(arcs, b, len);
    check(a >= 0, "enclosing window is not an arc");
    check(arcs[a].level == i - 1, "enclosing arc sits at the wrong level");
    check(!arcs[a].trivial(), "enclosing arc cannot be trivial");
    return a;
}

int arc_over_arc(const std::vector<int>& labels, const std::vector<Arc>& arcs, int arc_index) {
    int n = static_cast<int>(labels.size());
    const Arc& A = arcs[arc_index];
    int i = A.level;
    if (i <= 1) return -1;
    int a = A.start, a2 = A.end(n);
    int b = -1, b2 = -1;
    for (int d = 0; d < n && b < 0; d++)
        if (labels[((a - d) % n + n) % n] < i) b = ((a - d) % n + n) % n;
    for (int d = 0; d < n && b2 < 0; d++)
        if (labels[(a2 + d) % n] < i) b2 = (a2 + d) % n;
    check(b >= 0 && b2 >= 0, "arc has no smaller label to descend to");
    int head = (a - b + n) % n;
    int tail = (b2 - a2 + n) % n;
    int len = head + A.len + tail;
    check(len <= n + 1, "enclosing window wraps more than once");
    int o = find_arc(arcs, b, len);
    check(o >= 0, "enclosing window is not an arc");
    check(arcs[o].level == i - 1, "enclosing arc sits at the wrong level");
    check(!arcs[o].trivial(), "enclosing arc cannot be trivial");
    return o;
}

} // namespace mapbij
