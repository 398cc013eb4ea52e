#include "stpq/grid.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

namespace stpq {

void GridSpec::validate() const {
    if (width_cells == 0 || height_cells == 0)
        throw std::invalid_argument("grid: zero cell count");
    if (!(min_x < max_x) || !(min_y < max_y))
        throw std::invalid_argument("grid: empty universe");
}

Grid::Grid(GridSpec spec) : spec_(spec) { spec_.validate(); }

bool Grid::contains(double x, double y) const {
    return x >= spec_.min_x && x < spec_.max_x && y >= spec_.min_y && y < spec_.max_y;
}

CellId Grid::locate(double x, double y) const {
    if (!contains(x, y))
        throw std::invalid_argument("grid: point (" + std::to_string(x) + "," +
                                    std::to_string(y) + ") outside universe");
    auto col = static_cast<std::uint32_t>((x - spec_.min_x) / spec_.cell_width());
    auto row = static_cast<std::uint32_t>((y - spec_.min_y) / spec_.cell_height());
    if (col >= spec_.width_cells) col = static_cast<std::uint32_t>(spec_.width_cells - 1);
    if (row >= spec_.height_cells) row = static_cast<std::uint32_t>(spec_.height_cells - 1);
    return {col, row};
}

std::vector<RawEvent> Grid::samples_to_events(ObjectId object,
                                              const std::vector<Sample>& samples) {
    std::vector<RawEvent> events;
    bool inside = false;
    CellId cur;
    Timestamp prev_t = 0;
    bool have_prev = false;
    for (const auto& s : samples) {
        if (have_prev && s.t <= prev_t)
            throw std::invalid_argument("grid: non-monotone sample timestamps");
        prev_t = s.t;
        have_prev = true;
        if (!contains(s.x, s.y)) {
            ++dropped_samples_;
            if (inside) {
                events.push_back({s.t, object, cur, EventKind::Exit});
                inside = false;
            }
            continue;
        }
        CellId c = locate(s.x, s.y);
        if (inside && c == cur) continue;
        if (inside) events.push_back({s.t, object, cur, EventKind::Exit});
        events.push_back({s.t, object, c, EventKind::Enter});
        cur = c;
        inside = true;
    }
    return events;
}

void sort_events(std::vector<RawEvent>& events) {
    std::stable_sort(events.begin(), events.end(),
                     [](const RawEvent& a, const RawEvent& b) {
                         if (a.t != b.t) return a.t < b.t;
                         if (a.kind != b.kind) return a.kind == EventKind::Exit;
                         return a.object < b.object;
                     });
}

Router::Router(const Grid& grid, Sink sink) : grid_(grid), sink_(std::move(sink)) {}

void Router::route(const std::vector<RawEvent>& events) {
    std::map<std::pair<ObjectId, std::size_t>, bool> inside;  // true after Enter
    Timestamp prev = 0;
    bool have_prev = false;
    for (const auto& ev : events) {
        if (have_prev && ev.t < prev)
            throw DataError("route: events not globally time-ordered at t=" +
                            std::to_string(ev.t));
        prev = ev.t;
        have_prev = true;
        if (ev.cell.col >= grid_.spec().width_cells ||
            ev.cell.row >= grid_.spec().height_cells)
            throw DataError("route: cell out of range");
        auto key = std::make_pair(ev.object, grid_.cell_index(ev.cell));
        bool& in = inside[key];
        bool entering = ev.kind == EventKind::Enter;
        if (in == entering)
            throw DataError("route: enter/exit alternation broken for object " +
                            std::to_string(ev.object) + " in cell (" +
                            std::to_string(ev.cell.col) + "," +
                            std::to_string(ev.cell.row) + ") at t=" +
                            std::to_string(ev.t));
        in = entering;
        sink_(ev.cell, {ev.object, ev.t, ev.kind});
    }
}

}  // namespace stpq
