#include "mapbij/polygon.hpp"

#include <stdexcept>

namespace mapbij {

PolygonPairing polygon_representation(const FlagSystem& fs) {
    if (face_orbits(fs).count != 1)
        throw std::invalid_argument("polygon representation needs a one-face map");
    int sides = 2 * fs.edge_count();
    Orbits e = edge_orbits(fs);

    std::vector<int> start(sides);
    int g = fs.root;
    for (int k = 0; k < sides; k++) {
        start[k] = g;
        g = fs.t1[fs.t0[g]];
    }
    if (g != fs.root) throw std::logic_error("border walk did not close");

    PolygonPairing p;
    p.n_sides = sides;
    p.mate.assign(sides, -1);
    p.twisted.assign(sides, 0);
    std::vector<int> first_of_edge(fs.nflags(), -1);
    for (int k = 0; k < sides; k++) {
        int id = e.comp[start[k]];
        if (first_of_edge[id] == -1) {
            first_of_edge[id] = k;
        } else {
            int j = first_of_edge[id];
            p.mate[j] = k;
            p.mate[k] = j;
            bool tw = (start[k] == fs.t2[start[j]]);
            if (!tw && start[k] != fs.t2[fs.t0[start[j]]])
                throw std::logic_error("paired side does not traverse the partner edge side");
            p.twisted[j] = p.twisted[k] = tw ? 1 : 0;
        }
    }
    return p;
}

FlagSystem build_from_pairing(const PolygonPairing& p) {
    int sides = p.n_sides;
    if (sides <= 0 || sides % 2 != 0)
        throw std::invalid_argument("side count must be a positive even number");
    for (int i = 0; i < sides; i++) {
        if (p.mate[i] < 0 || p.mate[i] >= sides || p.mate[i] == i || p.mate[p.mate[i]] != i)
            throw std::invalid_argument("mate is not a perfect matching");
        if (p.twisted[i] != p.twisted[p.mate[i]])
            throw std::invalid_argument("twist marks disagree across a pair");
    }
    // Flags 2i and 2i+1 are the interior flags at the start and end corner
    // of side i.
    FlagSystem fs;
    int n = 2 * sides;
    fs.t0.resize(n);
    fs.t1.resize(n);
    fs.t2.resize(n);
    auto u = [](int i) { return 2 * i; };
    auto w = [](int i) { return 2 * i + 1; };
    for (int i = 0; i < sides; i++) {
        fs.t0[u(i)] = w(i);
        fs.t0[w(i)] = u(i);
        int j = (i + 1) % sides;
        fs.t1[w(i)] = u(j);
        fs.t1[u(j)] = w(i);
        int m = p.mate[i];
        if (p.twisted[i]) {
            fs.t2[u(i)] = u(m);
            fs.t2[w(i)] = w(m);
        } else {
            fs.t2[u(i)] = w(m);
            fs.t2[w(i)] = u(m);
        }
    }
    fs.root = 0;
    return fs;
}

} // namespace mapbij
