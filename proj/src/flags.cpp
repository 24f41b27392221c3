#include "mapbij/flags.hpp"

#include <algorithm>
#include <deque>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

namespace mapbij {

std::string ValidationReport::joined() const {
    std::string out;
    for (const auto& e : errors) {
        if (!out.empty()) out += "; ";
        out += e;
    }
    return out;
}

std::vector<int> Orbits::ids() const {
    std::vector<int> out;
    for (int f = 0; f < static_cast<int>(comp.size()); f++)
        if (comp[f] == f) out.push_back(f);
    return out;
}

Orbits orbits_under(const FlagSystem& fs, const std::vector<const std::vector<int>*>& perms) {
    int n = fs.nflags();
    Orbits o;
    o.comp.assign(n, -1);
    for (int s = 0; s < n; s++) {
        if (o.comp[s] != -1) continue;
        o.count++;
        std::deque<int> q{s};
        o.comp[s] = s;
        while (!q.empty()) {
            int f = q.front();
            q.pop_front();
            for (const auto* p : perms) {
                int g = (*p)[f];
                if (o.comp[g] == -1) {
                    o.comp[g] = s;
                    q.push_back(g);
                }
            }
        }
    }
    return o;
}

Orbits vertex_orbits(const FlagSystem& fs) { return orbits_under(fs, {&fs.t1, &fs.t2}); }
Orbits edge_orbits(const FlagSystem& fs) { return orbits_under(fs, {&fs.t0, &fs.t2}); }
Orbits face_orbits(const FlagSystem& fs) { return orbits_under(fs, {&fs.t0, &fs.t1}); }
Orbits corner_orbits(const FlagSystem& fs) { return orbits_under(fs, {&fs.t2}); }

ValidationReport validate(const FlagSystem& fs) {
    ValidationReport rep;
    int n = fs.nflags();
    auto size_ok = [&](const std::vector<int>& t, const char* name) {
        if (static_cast<int>(t.size()) != n) {
            rep.errors.push_back(std::string(name) + " has wrong size");
            return false;
        }
        for (int f = 0; f < n; f++)
            if (t[f] < 0 || t[f] >= n) {
                rep.errors.push_back(std::string(name) + " maps flag " + std::to_string(f + 1) + " out of range");
                return false;
            }
        return true;
    };
    bool shapes = size_ok(fs.t0, "t0") && size_ok(fs.t1, "t1") && size_ok(fs.t2, "t2");
    if (n == 0) rep.errors.push_back("empty flag set");
    if (!shapes || n == 0) return rep;
    if (fs.root < 0 || fs.root >= n) rep.errors.push_back("root flag out of range");

    auto involution = [&](const std::vector<int>& t, const char* name) {
        for (int f = 0; f < n; f++) {
            if (t[t[f]] != f) {
                rep.errors.push_back(std::string(name) + " is not an involution at flag " + std::to_string(f + 1));
                return;
            }
            if (t[f] == f) {
                rep.errors.push_back(std::string(name) + " fixes flag " + std::to_string(f + 1));
                return;
            }
        }
    };
    involution(fs.t0, "t0");
    involution(fs.t1, "t1");
    involution(fs.t2, "t2");

    for (int f = 0; f < n; f++) {
        if (fs.t0[fs.t2[f]] != fs.t2[fs.t0[f]]) {
            rep.errors.push_back("t0 and t2 do not commute at flag " + std::to_string(f + 1));
            break;
        }
    }
    for (int f = 0; f < n; f++) {
        if (fs.t0[fs.t2[f]] == f) {
            rep.errors.push_back("t0*t2 fixes flag " + std::to_string(f + 1));
            break;
        }
    }

    Orbits all = orbits_under(fs, {&fs.t0, &fs.t1, &fs.t2});
    if (all.count != 1) rep.errors.push_back("flag graph is not connected");
    return rep;
}

std::string SurfaceClass::name() const {
    if (orientable && chi == 2) return "sphere";
    if (!orientable && chi == 1) return "projective";
    if (orientable && chi == 0) return "torus";
    if (!orientable && chi == 0) return "klein";
    std::ostringstream os;
    os << (orientable ? "orientable" : "nonorientable") << "(chi=" << chi << ")";
    return os.str();
}

SurfaceClass classify_surface(const FlagSystem& fs) {
    SurfaceClass sc;
    int v = vertex_orbits(fs).count;
    int e = edge_orbits(fs).count;
    int f = face_orbits(fs).count;
    sc.chi = v - e + f;

    // Orientable exactly when the graph on flags with one edge per
    // involution image is bipartite.
    int n = fs.nflags();
    std::vector<int> color(n, -1);
    sc.orientable = true;
    std::deque<int> q{0};
    color[0] = 0;
    while (!q.empty() && sc.orientable) {
        int x = q.front();
        q.pop_front();
        for (const auto* t : {&fs.t0, &fs.t1, &fs.t2}) {
            int y = (*t)[x];
            if (color[y] == -1) {
                color[y] = 1 - color[x];
                q.push_back(y);
            } else if (color[y] == color[x]) {
                sc.orientable = false;
                break;
            }
        }
    }
    return sc;
}

FlagSystem root_flip(const FlagSystem& fs) {
    FlagSystem out = fs;
    out.root = fs.t0[fs.root];
    return out;
}

bool is_bipartite_map(const FlagSystem& fs) {
    Orbits v = vertex_orbits(fs);
    std::vector<int> color(fs.nflags(), -1);   // indexed by vertex id
    std::deque<int> q;
    int start = v.comp[0];
    color[start] = 0;
    q.push_back(start);
    while (!q.empty()) {
        int a = q.front();
        q.pop_front();
        for (int f = 0; f < fs.nflags(); f++) {
            if (v.comp[f] != a) continue;
            int b = v.comp[fs.t0[f]];
            if (color[b] == -1) {
                color[b] = 1 - color[a];
                q.push_back(b);
            } else if (color[b] == color[a]) {
                return false;
            }
        }
    }
    return true;
}

std::vector<int> distance_labels(const FlagSystem& fs, int point_vertex) {
    Orbits v = vertex_orbits(fs);
    int n = fs.nflags();
    std::vector<int> dist(n, -1);   // per vertex id
    if (v.comp[point_vertex] != point_vertex)
        throw std::invalid_argument("point is not a vertex orbit id");
    dist[point_vertex] = 0;
    std::deque<int> q{point_vertex};
    while (!q.empty()) {
        int a = q.front();
        q.pop_front();
        for (int f = 0; f < n; f++) {
            if (v.comp[f] != a) continue;
            int b = v.comp[fs.t0[f]];
            if (dist[b] == -1) {
                dist[b] = dist[a] + 1;
                q.push_back(b);
            }
        }
    }
    std::vector<int> out(n);
    for (int f = 0; f < n; f++) out[f] = dist[v.comp[f]];
    return out;
}

PointedMap make_pointed(const FlagSystem& fs, int point_vertex) {
    PointedMap pm;
    pm.fs = fs;
    pm.point = point_vertex;
    pm.vlabel = distance_labels(fs, point_vertex);
    return pm;
}

SubdivisionResult subdivide_equilabeled(const PointedMap& pm) {
    const FlagSystem& fs = pm.fs;
    Orbits e = edge_orbits(fs);
    FlagSystem out = fs;
    std::vector<int> added_flags;
    for (int rep : e.ids()) {
        int a = rep;
        int b = fs.t0[a];
        if (pm.vlabel[a] != pm.vlabel[b]) continue;
        // Edge flags: a, b = t0 a, c = t2 a, d = t0 c. New midpoint flags
        // pair up with each old flag along its half of the edge.
        int c = fs.t2[a];
        int d = fs.t0[c];
        int base = out.nflags();
        int na = base, nb = base + 1, nc = base + 2, nd = base + 3;
        out.t0.resize(base + 4);
        out.t1.resize(base + 4);
        out.t2.resize(base + 4);
        out.t0[a] = na; out.t0[na] = a;
        out.t0[b] = nb; out.t0[nb] = b;
        out.t0[c] = nc; out.t0[nc] = c;
        out.t0[d] = nd; out.t0[nd] = d;
        out.t1[na] = nb; out.t1[nb] = na;
        out.t1[nc] = nd; out.t1[nd] = nc;
        out.t2[na] = nc; out.t2[nc] = na;
        out.t2[nb] = nd; out.t2[nd] = nb;
        added_flags.push_back(na);
    }
    SubdivisionResult res;
    res.pm = make_pointed(out, pm.point);
    Orbits v = vertex_orbits(out);
    for (int f : added_flags) res.added_vertices.push_back(v.comp[f]);
    std::sort(res.added_vertices.begin(), res.added_vertices.end());
    res.added_vertices.erase(std::unique(res.added_vertices.begin(), res.added_vertices.end()),
                             res.added_vertices.end());
    return res;
}

std::vector<int> bfs_flag_numbering(const FlagSystem& fs, int start) {
    int n = fs.nflags();
    std::vector<int> num(n, -1);
    int next = 0;
    std::deque<int> q{start};
    num[start] = next++;
    while (!q.empty()) {
        int f = q.front();
        q.pop_front();
        for (const auto* t : {&fs.t0, &fs.t1, &fs.t2}) {
            int g = (*t)[f];
            if (num[g] == -1) {
                num[g] = next++;
                q.push_back(g);
            }
        }
    }
    return num;
}

std::string canonical_code(const FlagSystem& fs) {
    int n = fs.nflags();
    std::vector<int> num = bfs_flag_numbering(fs, fs.root);
    std::vector<int> inv(n);
    for (int f = 0; f < n; f++) inv[num[f]] = f;
    std::ostringstream os;
    os << "m " << n;
    for (const auto* t : {&fs.t0, &fs.t1, &fs.t2}) {
        os << " |";
        for (int i = 0; i < n; i++) os << " " << num[(*t)[inv[i]]];
    }
    return os.str();
}

std::string canonical_code_pointed(const FlagSystem& fs, int point_vertex) {
    std::vector<int> num = bfs_flag_numbering(fs, fs.root);
    Orbits v = vertex_orbits(fs);
    int pmin = fs.nflags();
    for (int f = 0; f < fs.nflags(); f++)
        if (v.comp[f] == point_vertex) pmin = std::min(pmin, num[f]);
    return canonical_code(fs) + " | p " + std::to_string(pmin);
}

FlagSystem decode_code(const std::string& code) {
    std::istringstream is(code);
    std::string tag;
    is >> tag;
    if (tag != "m") throw parse_error("bad code tag");
    int n;
    is >> n;
    FlagSystem fs;
    fs.root = 0;
    for (auto* t : {&fs.t0, &fs.t1, &fs.t2}) {
        std::string bar;
        is >> bar;
        if (bar != "|") throw parse_error("bad code separator");
        t->resize(n);
        for (int i = 0; i < n; i++) is >> (*t)[i];
    }
    if (!is) throw parse_error("truncated code");
    return fs;
}

namespace {

std::vector<int> parse_flag_line(const std::string& body, int n, int lineno) {
    std::istringstream is(body);
    std::vector<int> out;
    long long v;
    while (is >> v) {
        if (v < 1 || v > n)
            throw parse_error("line " + std::to_string(lineno) + ": flag index " + std::to_string(v) + " out of range");
        out.push_back(static_cast<int>(v - 1));
    }
    if (static_cast<int>(out.size()) != n)
        throw parse_error("line " + std::to_string(lineno) + ": expected " + std::to_string(n) + " entries");
    return out;
}

} // namespace

std::map<std::string, std::pair<std::string, int>> read_field_lines(std::istream& in) {
    std::map<std::string, std::pair<std::string, int>> fields;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        lineno++;
        size_t h = line.find('#');
        if (h != std::string::npos) line = line.substr(0, h);
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        size_t colon = line.find(':');
        if (colon == std::string::npos)
            throw parse_error("line " + std::to_string(lineno) + ": expected 'key: values'");
        std::string key = line.substr(0, colon);
        key.erase(std::remove_if(key.begin(), key.end(), [](char c) { return c == ' ' || c == '\t'; }), key.end());
        fields[key] = {line.substr(colon + 1), lineno};
    }
    return fields;
}

FlagSystem parse_flag_fields(const std::map<std::string, std::pair<std::string, int>>& fields) {
    auto need = [&](const std::string& k) -> std::pair<std::string, int> {
        auto it = fields.find(k);
        if (it == fields.end()) throw parse_error("missing '" + k + "' line");
        return it->second;
    };
    auto [nbody, nline] = need("nflags");
    int n;
    {
        std::istringstream is(nbody);
        if (!(is >> n) || n <= 0 || n % 4 != 0)
            throw parse_error("line " + std::to_string(nline) + ": nflags must be a positive multiple of 4");
    }
    FlagSystem fs;
    fs.t0 = parse_flag_line(need("t0").first, n, need("t0").second);
    fs.t1 = parse_flag_line(need("t1").first, n, need("t1").second);
    fs.t2 = parse_flag_line(need("t2").first, n, need("t2").second);
    auto [rbody, rline] = need("root");
    std::istringstream is(rbody);
    int r;
    if (!(is >> r) || r < 1 || r > n)
        throw parse_error("line " + std::to_string(rline) + ": root out of range");
    fs.root = r - 1;
    return fs;
}

MapFile read_map(std::istream& in) {
    MapFile mf;
    auto fields = read_field_lines(in);
    mf.fs = parse_flag_fields(fields);
    if (fields.count("point")) {
        auto [pbody, pline] = fields["point"];
        std::istringstream is(pbody);
        int p;
        if (!(is >> p) || p < 1 || p > mf.fs.nflags())
            throw parse_error("line " + std::to_string(pline) + ": point out of range");
        Orbits v = vertex_orbits(mf.fs);
        mf.point = v.comp[p - 1];
    }
    return mf;
}

void write_map(std::ostream& out, const FlagSystem& fs, std::optional<int> point) {
    out << "nflags: " << fs.nflags() << "\n";
    const std::pair<const std::vector<int>*, const char*> rows[] = {
        {&fs.t0, "t0"}, {&fs.t1, "t1"}, {&fs.t2, "t2"}};
    for (const auto& [t, name] : rows) {
        out << name << ":";
        for (int v : *t) out << " " << (v + 1);
        out << "\n";
    }
    out << "root: " << (fs.root + 1) << "\n";
    if (point) out << "point: " << (*point + 1) << "\n";
}

} // namespace mapbij
