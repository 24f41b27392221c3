#include "mapbij/gen.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace mapbij {

namespace {

// Perfect matchings of {0..n-1} with a twist bit per pair, streamed as
// (mate, twisted) pairs.
void enumerate_pairings(int n_sides,
                        const std::function<void(const PolygonPairing&)>& emit) {
    PolygonPairing p;
    p.n_sides = n_sides;
    p.mate.assign(n_sides, -1);
    p.twisted.assign(n_sides, 0);
    std::function<void()> rec = [&]() {
        int i = 0;
        while (i < n_sides && p.mate[i] != -1) i++;
        if (i == n_sides) {
            emit(p);
            return;
        }
        for (int j = i + 1; j < n_sides; j++) {
            if (p.mate[j] != -1) continue;
            p.mate[i] = j;
            p.mate[j] = i;
            for (int tw = 0; tw < 2; tw++) {
                p.twisted[i] = p.twisted[j] = static_cast<char>(tw);
                rec();
            }
            p.mate[i] = p.mate[j] = -1;
            p.twisted[i] = p.twisted[j] = 0;
        }
    };
    rec();
}

// Builds a map from face polygons with globally numbered sides glued by a
// pairing. Returns nullopt when the gluing is disconnected.
std::optional<FlagSystem> glue_faces(const std::vector<int>& face_degrees,
                                     const PolygonPairing& p) {
    int sides = p.n_sides;
    FlagSystem fs;
    fs.t0.resize(2 * sides);
    fs.t1.resize(2 * sides);
    fs.t2.resize(2 * sides);
    auto u = [](int i) { return 2 * i; };
    auto w = [](int i) { return 2 * i + 1; };
    int off = 0;
    for (int d : face_degrees) {
        for (int k = 0; k < d; k++) {
            int i = off + k;
            int j = off + (k + 1) % d;
            fs.t0[u(i)] = w(i);
            fs.t0[w(i)] = u(i);
            fs.t1[w(i)] = u(j);
            fs.t1[u(j)] = w(i);
        }
        off += d;
    }
    for (int i = 0; i < sides; i++) {
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
    if (orbits_under(fs, {&fs.t0, &fs.t1, &fs.t2}).count != 1) return std::nullopt;
    return fs;
}

void partitions_of(int total, int max_part,
                   std::vector<int>& acc,
                   const std::function<void(const std::vector<int>&)>& emit) {
    if (total == 0) {
        emit(acc);
        return;
    }
    for (int part = std::min(total, max_part); part >= 1; part--) {
        acc.push_back(part);
        partitions_of(total - part, part, acc, emit);
        acc.pop_back();
    }
}

bool passes(const GenSpec& spec, const FlagSystem& fs) {
    if (spec.surface && !(classify_surface(fs) == *spec.surface)) return false;
    if (spec.bipartite_only && !is_bipartite_map(fs)) return false;
    return true;
}

} // namespace

void gen_rooted_maps(const GenSpec& spec, const std::function<void(const FlagSystem&)>& emit) {
    int sides = 2 * spec.edges;
    if (sides <= 0) return;
    std::set<std::string> seen;
    auto run_arrangement = [&](const std::vector<int>& degrees) {
        enumerate_pairings(sides, [&](const PolygonPairing& p) {
            std::optional<FlagSystem> fs = glue_faces(degrees, p);
            if (!fs || !passes(spec, *fs)) return;
            std::string code = canonical_code(*fs);
            if (seen.insert(code).second) emit(*fs);
        });
    };
    if (spec.face_degree) {
        int d = *spec.face_degree;
        if (sides % d != 0) return;
        run_arrangement(std::vector<int>(sides / d, d));
        return;
    }
    std::vector<int> acc;
    partitions_of(sides, sides, acc, [&](const std::vector<int>& part) {
        // The root face can have any degree of the multiset, so each
        // distinct value takes a turn in front.
        std::vector<int> values(part);
        values.erase(std::unique(values.begin(), values.end()), values.end());
        for (int v : values) {
            std::vector<int> arr{v};
            bool removed = false;
            for (int d : part) {
                if (!removed && d == v) {
                    removed = true;
                    continue;
                }
                arr.push_back(d);
            }
            run_arrangement(arr);
        }
    });
}

void gen_unicellular_maps(int edges, const std::function<void(const FlagSystem&)>& emit) {
    if (edges <= 0) return;
    enumerate_pairings(2 * edges, [&](const PolygonPairing& p) {
        emit(build_from_pairing(p));
    });
}

long long count_rooted_maps(const GenSpec& spec) {
    long long n = 0;
    gen_rooted_maps(spec, [&](const FlagSystem&) { n++; });
    return n;
}

long long count_rooted_sphere_maps_by_permutations(int edges) {
    int darts = 2 * edges;
    std::vector<int> alpha(darts);
    for (int d = 0; d < darts; d += 2) {
        alpha[d] = d + 1;
        alpha[d + 1] = d;
    }
    auto cycles = [&](const std::vector<int>& perm) {
        std::vector<char> vis(darts, 0);
        int c = 0;
        for (int s = 0; s < darts; s++) {
            if (vis[s]) continue;
            c++;
            for (int x = s; !vis[x]; x = perm[x]) vis[x] = 1;
        }
        return c;
    };
    std::vector<int> sigma(darts);
    std::iota(sigma.begin(), sigma.end(), 0);
    long long hits = 0;
    do {
        // Transitivity of the group generated by sigma and alpha.
        std::vector<char> vis(darts, 0);
        std::vector<int> stack{0};
        vis[0] = 1;
        int reached = 1;
        while (!stack.empty()) {
            int x = stack.back();
            stack.pop_back();
            for (int y : {sigma[x], alpha[x]}) {
                if (!vis[y]) {
                    vis[y] = 1;
                    reached++;
                    stack.push_back(y);
                }
            }
        }
        if (reached != darts) continue;
        std::vector<int> phi(darts);
        for (int d = 0; d < darts; d++) phi[d] = sigma[alpha[d]];
        int chi = cycles(sigma) - edges + cycles(phi);
        if (chi == 2) hits++;
    } while (std::next_permutation(sigma.begin(), sigma.end()));
    long long denom = 1;
    for (int k = 1; k < edges; k++) denom *= 2 * k;
    return hits / denom;
}

} // namespace mapbij
