#pragma once

#include <random>
#include <vector>

#include "stpq/grid.hpp"

namespace stpq::fixtures {

// Three cells in a row; objects hop between them per the worked example:
//   C1: O1 in [4,5), O2 in [7,8)
//   C2: O1 in [3,4), O2 in [8,9) and [10,11), O3 in [3,4)
//   C3: O2 in [3,4) and [9,10), O3 in [2,3)
inline const CellId kC1{0, 0};
inline const CellId kC2{1, 0};
inline const CellId kC3{2, 0};

inline GridSpec three_cell_spec() {
    GridSpec spec;
    spec.width_cells = 3;
    spec.height_cells = 1;
    spec.max_x = 3.0;
    spec.max_y = 1.0;
    return spec;
}

inline std::vector<RawEvent> three_cell_events() {
    std::vector<RawEvent> ev{
        {3, 1, kC2, EventKind::Enter}, {4, 1, kC2, EventKind::Exit},
        {4, 1, kC1, EventKind::Enter}, {5, 1, kC1, EventKind::Exit},
        {3, 2, kC3, EventKind::Enter}, {4, 2, kC3, EventKind::Exit},
        {7, 2, kC1, EventKind::Enter}, {8, 2, kC1, EventKind::Exit},
        {8, 2, kC2, EventKind::Enter}, {9, 2, kC2, EventKind::Exit},
        {9, 2, kC3, EventKind::Enter}, {10, 2, kC3, EventKind::Exit},
        {10, 2, kC2, EventKind::Enter}, {11, 2, kC2, EventKind::Exit},
        {2, 3, kC3, EventKind::Enter}, {3, 3, kC3, EventKind::Exit},
        {3, 3, kC2, EventKind::Enter}, {4, 3, kC2, EventKind::Exit},
    };
    sort_events(ev);
    return ev;
}

// A random but alternation-valid event log: objects hop cells on a small
// grid, each enter matched by a later (or final, open) exit.
inline std::vector<RawEvent> random_events(std::mt19937_64& rng,
                                           std::size_t objects,
                                           std::size_t cols, std::size_t rows,
                                           Timestamp duration) {
    std::vector<RawEvent> events;
    for (ObjectId obj = 0; obj < objects; ++obj) {
        bool inside = false;
        CellId cur;
        for (Timestamp t = 1; t <= duration; ++t) {
            switch (rng() % 4) {
                case 0:  // move to a random cell
                    if (inside) events.push_back({t, obj, cur, EventKind::Exit});
                    cur = {static_cast<std::uint32_t>(rng() % cols),
                           static_cast<std::uint32_t>(rng() % rows)};
                    events.push_back({t, obj, cur, EventKind::Enter});
                    inside = true;
                    break;
                case 1:  // leave the universe
                    if (inside) events.push_back({t, obj, cur, EventKind::Exit});
                    inside = false;
                    break;
                default:  // stay put
                    break;
            }
        }
    }
    sort_events(events);
    return events;
}

}  // namespace stpq::fixtures
