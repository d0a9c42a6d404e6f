#include "orthoforge/surface_combinatorics.hpp"

#include <algorithm>
#include <queue>
#include <string>

#include <nlohmann/json.hpp>

namespace orthoforge {

namespace {

std::string slot_str(Slot s) {
    return "(" + std::to_string(s.hex) + ", " + std::to_string(s.side) + ")";
}

}  // namespace

std::vector<Slot> partner_table(const HexagonDecomposition& d) {
    const int N = d.num_hexagons;
    if (N <= 0) throw domain_error("decomposition needs at least one hexagon");
    if (N % 2 != 0) throw domain_error("hexagon count must be even");
    std::vector<Slot> partner(6 * N, Slot{-1, -1});
    if ((int)d.arc_gluings.size() != 3 * N / 2) {
        throw domain_error("expected " + std::to_string(3 * N / 2) + " arc gluings, got " +
                           std::to_string(d.arc_gluings.size()));
    }
    for (const auto& pair : d.arc_gluings) {
        for (Slot s : pair) {
            if (s.hex < 0 || s.hex >= N || s.side < 0 || s.side >= 6) {
                throw domain_error("slot " + slot_str(s) + " out of range");
            }
            if (s.side % 2 != 0) {
                throw domain_error("slot " + slot_str(s) + " is a boundary side; only even slots glue");
            }
        }
        if (pair[0] == pair[1]) {
            throw domain_error("slot " + slot_str(pair[0]) + " glued to itself");
        }
        for (int k : {0, 1}) {
            Slot s = pair[k], t = pair[1 - k];
            Slot& cell = partner[s.hex * 6 + s.side];
            if (cell.hex != -1) {
                throw domain_error("slot " + slot_str(s) + " appears in two gluings");
            }
            cell = t;
        }
    }
    for (int h = 0; h < N; ++h) {
        for (int s = 0; s < 6; s += 2) {
            if (partner[h * 6 + s].hex == -1) {
                throw domain_error("slot " + slot_str({h, s}) + " is unmatched");
            }
        }
    }
    return partner;
}

Slot next_boundary_slot(const HexagonDecomposition& d, Slot odd) {
    const auto partner = partner_table(d);
    Slot across = partner[odd.hex * 6 + (odd.side + 1) % 6];
    return {across.hex, (across.side + 1) % 6};
}

namespace {

std::vector<BoundaryCycle> cycles_from_partner(int N, const std::vector<Slot>& partner) {
    std::vector<char> seen(6 * N, 0);
    std::vector<BoundaryCycle> cycles;
    for (int h = 0; h < N; ++h) {
        for (int s = 1; s < 6; s += 2) {
            if (seen[h * 6 + s]) continue;
            BoundaryCycle cyc;
            Slot cur{h, s};
            do {
                seen[cur.hex * 6 + cur.side] = 1;
                cyc.push_back(cur);
                Slot across = partner[cur.hex * 6 + (cur.side + 1) % 6];
                cur = {across.hex, (across.side + 1) % 6};
            } while (!(cur.hex == h && cur.side == s));
            // rotate so the smallest slot leads
            auto mn = std::min_element(cyc.begin(), cyc.end());
            std::rotate(cyc.begin(), mn, cyc.end());
            cycles.push_back(std::move(cyc));
        }
    }
    std::sort(cycles.begin(), cycles.end(),
              [](const BoundaryCycle& a, const BoundaryCycle& b) { return a[0] < b[0]; });
    return cycles;
}

void require_connected(const HexagonDecomposition& d, const std::vector<Slot>& partner) {
    const int N = d.num_hexagons;
    std::vector<char> seen(N, 0);
    std::queue<int> q;
    q.push(0);
    seen[0] = 1;
    int count = 1;
    while (!q.empty()) {
        int h = q.front();
        q.pop();
        for (int s = 0; s < 6; s += 2) {
            int nh = partner[h * 6 + s].hex;
            if (!seen[nh]) {
                seen[nh] = 1;
                ++count;
                q.push(nh);
            }
        }
    }
    if (count != N) throw domain_error("glued complex is disconnected");
}

}  // namespace

Signature validate(const HexagonDecomposition& d) {
    const auto partner = partner_table(d);
    require_connected(d, partner);
    const int N = d.num_hexagons;
    const int n = (int)cycles_from_partner(N, partner).size();
    // N = 4g-4+2n determines the genus; it must come out a non-negative integer.
    if ((N + 4 - 2 * n) % 4 != 0) {
        throw domain_error("counts are inconsistent: " + std::to_string(N) + " hexagons with " +
                           std::to_string(n) + " boundary components match no orientable signature");
    }
    const int g = (N + 4 - 2 * n) / 4;
    if (g < 0 || 2 * g - 2 + n <= 0) {
        throw domain_error("derived signature (" + std::to_string(g) + ", " + std::to_string(n) +
                           ") is not hyperbolic");
    }
    return {g, n};
}

std::vector<BoundaryCycle> boundary_cycles(const HexagonDecomposition& d) {
    const auto partner = partner_table(d);
    return cycles_from_partner(d.num_hexagons, partner);
}

FillCensus fills(const HexagonDecomposition& d, const std::vector<int>& arc_subset) {
    validate(d);
    const int N = d.num_hexagons;
    const int A = (int)d.arc_gluings.size();
    std::vector<char> cut(A, 0);
    for (int a : arc_subset) {
        if (a < 0 || a >= A) throw domain_error("unknown arc id " + std::to_string(a));
        cut[a] = 1;
    }

    // Map each glued even slot to its arc id, for cut lookups.
    std::vector<int> arc_of(6 * N, -1);
    for (int a = 0; a < A; ++a) {
        for (Slot s : d.arc_gluings[a]) arc_of[s.hex * 6 + s.side] = a;
    }
    const auto partner = partner_table(d);

    // Components of the complement: hexagons connected through uncut arcs.
    std::vector<int> comp(N, -1);
    int ncomp = 0;
    for (int h0 = 0; h0 < N; ++h0) {
        if (comp[h0] != -1) continue;
        std::queue<int> q;
        q.push(h0);
        comp[h0] = ncomp;
        while (!q.empty()) {
            int h = q.front();
            q.pop();
            for (int s = 0; s < 6; s += 2) {
                if (cut[arc_of[h * 6 + s]]) continue;
                int nh = partner[h * 6 + s].hex;
                if (comp[nh] == -1) {
                    comp[nh] = ncomp;
                    q.push(nh);
                }
            }
        }
        ++ncomp;
    }

    // Per component: hexagon count and interior (uncut) arc count give
    // chi = hexagons - interior arcs; boundary circles come from walking the
    // free sides (odd slots plus sides of cut arcs).
    std::vector<int> hexes(ncomp, 0), interior(ncomp, 0);
    for (int h = 0; h < N; ++h) ++hexes[comp[h]];
    for (int a = 0; a < A; ++a) {
        if (!cut[a]) ++interior[comp[d.arc_gluings[a][0].hex]];
    }

    auto is_free = [&](Slot s) {
        return s.side % 2 == 1 || cut[arc_of[s.hex * 6 + s.side]];
    };
    // Successor among free sides: step ccw, crossing uncut gluings.
    auto next_free = [&](Slot s) {
        Slot t{s.hex, (s.side + 1) % 6};
        while (!is_free(t)) {
            Slot across = partner[t.hex * 6 + t.side];
            t = {across.hex, (across.side + 1) % 6};
        }
        return t;
    };

    std::vector<int> circles(ncomp, 0);
    std::vector<char> pure_boundary_circle(ncomp, 0);  // some circle uses odd slots only
    std::vector<char> seen(6 * N, 0);
    for (int h = 0; h < N; ++h) {
        for (int s = 0; s < 6; ++s) {
            Slot start{h, s};
            if (!is_free(start) || seen[h * 6 + s]) continue;
            bool odd_only = true;
            Slot cur = start;
            do {
                seen[cur.hex * 6 + cur.side] = 1;
                if (cur.side % 2 == 0) odd_only = false;
                cur = next_free(cur);
            } while (cur != start);
            ++circles[comp[h]];
            if (odd_only) pure_boundary_circle[comp[h]] = 1;
        }
    }

    FillCensus census;
    bool all_annuli_peripheral = true;
    for (int c = 0; c < ncomp; ++c) {
        int chi = hexes[c] - interior[c];
        if (chi == 1 && circles[c] == 1) {
            ++census.disks;
        } else if (chi == 0 && circles[c] == 2) {
            ++census.annuli;
            if (pure_boundary_circle[c]) {
                ++census.peripheral_annuli;
            } else {
                all_annuli_peripheral = false;
            }
        } else {
            ++census.other;
        }
    }
    census.fills = (census.other == 0) && all_annuli_peripheral;
    return census;
}

int min_filling_size(int g, int n) {
    if (g < 0 || n < 1 || 2 * g - 2 + n <= 0) {
        throw domain_error("signature (" + std::to_string(g) + ", " + std::to_string(n) +
                           ") is not hyperbolic");
    }
    return n == 1 ? 2 * g : 2 * g - 2 + n;
}

nlohmann::json decomposition_to_json(const HexagonDecomposition& d) {
    nlohmann::json gluings = nlohmann::json::array();
    for (const auto& pair : d.arc_gluings) {
        gluings.push_back({{pair[0].hex, pair[0].side}, {pair[1].hex, pair[1].side}});
    }
    return {{"hexagons", d.num_hexagons}, {"gluings", gluings}};
}

HexagonDecomposition decomposition_from_json(const nlohmann::json& j) {
    HexagonDecomposition d;
    try {
        d.num_hexagons = j.at("hexagons").get<int>();
        for (const auto& pair : j.at("gluings")) {
            if (pair.size() != 2 || pair[0].size() != 2 || pair[1].size() != 2) {
                throw domain_error("each gluing must be a pair of [hexagon, slot] pairs");
            }
            d.arc_gluings.push_back({Slot{pair[0][0].get<int>(), pair[0][1].get<int>()},
                                     Slot{pair[1][0].get<int>(), pair[1][1].get<int>()}});
        }
    } catch (const nlohmann::json::exception& e) {
        throw domain_error(std::string("malformed surface JSON: ") + e.what());
    }
    return d;
}

}  // namespace orthoforge
