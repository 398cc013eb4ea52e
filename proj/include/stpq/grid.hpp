#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "stpq/common.hpp"

namespace stpq {

struct GridSpec {
    std::size_t width_cells = 32;
    std::size_t height_cells = 32;
    double min_x = 0.0;
    double min_y = 0.0;
    double max_x = 1000.0;
    double max_y = 1000.0;

    void validate() const;
    double cell_width() const { return (max_x - min_x) / double(width_cells); }
    double cell_height() const { return (max_y - min_y) / double(height_cells); }
};

struct CellId {
    std::uint32_t col = 0;
    std::uint32_t row = 0;

    auto operator<=>(const CellId&) const = default;
};

enum class EventKind { Enter, Exit };

struct CellEvent {
    ObjectId object = 0;
    Timestamp t = 0;
    EventKind kind = EventKind::Enter;
};

// A raw ingestion event: object enters or leaves a cell at t.
struct RawEvent {
    Timestamp t = 0;
    ObjectId object = 0;
    CellId cell;
    EventKind kind = EventKind::Enter;

    bool operator==(const RawEvent&) const = default;
};

struct Sample {
    Timestamp t = 0;
    double x = 0.0;
    double y = 0.0;
};

class Grid {
public:
    explicit Grid(GridSpec spec);

    const GridSpec& spec() const { return spec_; }
    std::size_t cell_count() const { return spec_.width_cells * spec_.height_cells; }
    std::size_t cell_index(CellId c) const { return c.row * spec_.width_cells + c.col; }
    bool contains(double x, double y) const;

    // Half-open cells: points on a shared edge belong to the higher cell.
    CellId locate(double x, double y) const;

    // Cell-crossing events for one object's samples. Out-of-universe samples
    // are dropped and counted. Consecutive samples in the same cell emit
    // nothing; the final sample emits no Exit.
    std::vector<RawEvent> samples_to_events(ObjectId object,
                                            const std::vector<Sample>& samples);

    std::uint64_t dropped_samples() const { return dropped_samples_; }

private:
    GridSpec spec_;
    std::uint64_t dropped_samples_ = 0;
};

// Checks the per-(object, cell) Enter/Exit alternation while dispatching a
// time-ordered event stream. Ties at one timestamp must arrive Exit first.
class Router {
public:
    using Sink = std::function<void(const CellId&, const CellEvent&)>;

    Router(const Grid& grid, Sink sink);
    void route(const std::vector<RawEvent>& events);

private:
    const Grid& grid_;
    Sink sink_;
};

// Sorts an event stream into routing order: by t, Exit before Enter, then
// object id for determinism.
void sort_events(std::vector<RawEvent>& events);

}  // namespace stpq
