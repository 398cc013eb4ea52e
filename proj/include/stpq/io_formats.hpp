#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "stpq/grid.hpp"
#include "stpq/query.hpp"

namespace stpq {

struct TrajectoryPoint {
    Timestamp t = 0;
    ObjectId object = 0;
    double x = 0;
    double y = 0;
};

// Event log CSV: header `t,object_id,cell_col,cell_row,kind`, kind E or X.
void write_event_log(std::ostream& os, const std::vector<RawEvent>& events);
std::vector<RawEvent> read_event_log(std::istream& in);
void write_event_log_file(const std::string& path, const std::vector<RawEvent>& events);
std::vector<RawEvent> read_event_log_file(const std::string& path);

// Raw trajectory CSV: header `t,object_id,x,y`.
void write_trajectories(std::ostream& os, const std::vector<TrajectoryPoint>& points);

// Query workload: one query per line, '#' comments allowed.
void write_queries(std::ostream& os, const std::vector<StpQuery>& queries);
std::vector<StpQuery> read_queries(std::istream& in);
std::vector<StpQuery> read_queries_file(const std::string& path);

}  // namespace stpq
