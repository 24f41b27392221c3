#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace mapbij {

// Error for malformed input files; the CLI maps it to its own exit code.
class parse_error : public std::runtime_error {
public:
    explicit parse_error(const std::string& what) : std::runtime_error(what) {}
};

struct ValidationReport {
    std::vector<std::string> errors;
    bool ok() const { return errors.empty(); }
    std::string joined() const;
};

// A map on a compact surface encoded by three involutions on flags.
// Flags are 0-based indices. t0 changes the vertex (travel along an edge
// side), t1 changes the edge (rotate inside a face corner), t2 changes the
// face (cross an edge). Vertices are <t1,t2>-orbits, edges <t0,t2>-orbits
// (4 flags each), faces <t0,t1>-orbits, corners t2-orbits. The root flag is
// an oriented corner.
struct FlagSystem {
    std::vector<int> t0, t1, t2;
    int root = 0;

    int nflags() const { return static_cast<int>(t0.size()); }
    int edge_count() const { return nflags() / 4; }
};

// Orbit decomposition under a set of involutions; comp[f] is the smallest
// flag in f's orbit and doubles as the orbit id.
struct Orbits {
    std::vector<int> comp;
    int count = 0;

    std::vector<int> ids() const;
};

Orbits orbits_under(const FlagSystem& fs, const std::vector<const std::vector<int>*>& perms);
Orbits vertex_orbits(const FlagSystem& fs);
Orbits edge_orbits(const FlagSystem& fs);
Orbits face_orbits(const FlagSystem& fs);
Orbits corner_orbits(const FlagSystem& fs);

ValidationReport validate(const FlagSystem& fs);

struct SurfaceClass {
    int chi = 2;
    bool orientable = true;

    // 2h for orientable genus h surfaces, and the crosscap count halved
    // twice for nonorientable ones; always the integer 2 - chi.
    int twice_h() const { return 2 - chi; }
    std::string name() const;
    bool operator==(const SurfaceClass& o) const { return chi == o.chi && orientable == o.orientable; }
};

SurfaceClass classify_surface(const FlagSystem& fs);

// Reroots at the other end of the root edge, staying on the same edge side.
FlagSystem root_flip(const FlagSystem& fs);

// True if the vertex graph is 2-colorable.
bool is_bipartite_map(const FlagSystem& fs);

// Vertex graph distances from the vertex orbit containing `point_vertex`,
// reported per flag (each flag gets its vertex's distance).
std::vector<int> distance_labels(const FlagSystem& fs, int point_vertex);

// A map with a distinguished vertex and per-flag vertex labels.
struct PointedMap {
    FlagSystem fs;
    int point = 0;               // vertex orbit id
    std::vector<int> vlabel;     // label of each flag's vertex

    int label(int flag) const { return vlabel[flag]; }
};

// Builds a pointed map with labels = distances from the point.
PointedMap make_pointed(const FlagSystem& fs, int point_vertex);

struct SubdivisionResult {
    PointedMap pm;
    std::vector<int> added_vertices;   // vertex ids in the subdivided map
};

// Subdivides every edge whose endpoints share a label; the new midpoint
// gets the common label plus one. The result is bipartite with labels
// equal to distances from the point.
SubdivisionResult subdivide_equilabeled(const PointedMap& pm);

// Breadth-first flag numbering from `start`, following t0, t1, t2 in that
// order; the basis of the canonical codes.
std::vector<int> bfs_flag_numbering(const FlagSystem& fs, int start);

// Canonical form via breadth-first flag relabeling from the root. Two
// rooted maps are isomorphic exactly when their codes coincide.
std::string canonical_code(const FlagSystem& fs);
std::string canonical_code_pointed(const FlagSystem& fs, int point_vertex);
FlagSystem decode_code(const std::string& code);

// Text format: nflags/t0/t1/t2/root lines, 1-indexed flags, plus an
// optional point line for pointed maps.
struct MapFile {
    FlagSystem fs;
    std::optional<int> point;
};

MapFile read_map(std::istream& in);
void write_map(std::ostream& out, const FlagSystem& fs, std::optional<int> point = std::nullopt);

// Shared pieces of the text formats: 'key: body' lines with '#' comments
// and blank lines skipped, keyed with the body and its line number; and
// the flag block (nflags/t0/t1/t2/root) rebuilt from such fields.
std::map<std::string, std::pair<std::string, int>> read_field_lines(std::istream& in);
FlagSystem parse_flag_fields(const std::map<std::string, std::pair<std::string, int>>& fields);

} // namespace mapbij
