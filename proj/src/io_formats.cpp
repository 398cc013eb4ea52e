#include "stpq/io_formats.hpp"

#include <fstream>
#include <sstream>

namespace stpq {

namespace {

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, ',')) out.push_back(field);
    return out;
}

[[noreturn]] void bad_line(const char* what, int lineno) {
    throw ParseError(std::string(what) + " at line " + std::to_string(lineno));
}

}  // namespace

void write_event_log(std::ostream& os, const std::vector<RawEvent>& events) {
    os << "t,object_id,cell_col,cell_row,kind\n";
    for (const auto& ev : events)
        os << ev.t << ',' << ev.object << ',' << ev.cell.col << ',' << ev.cell.row
           << ',' << (ev.kind == EventKind::Enter ? 'E' : 'X') << '\n';
}

std::vector<RawEvent> read_event_log(std::istream& in) {
    std::vector<RawEvent> events;
    std::string line;
    int lineno = 0;
    if (!std::getline(in, line)) throw ParseError("event log: empty file");
    ++lineno;
    if (line.rfind("t,object_id,cell_col,cell_row,kind", 0) != 0)
        throw ParseError("event log: missing header line");
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        auto fields = split_csv(line);
        if (fields.size() != 5) bad_line("event log: expected 5 fields", lineno);
        RawEvent ev;
        try {
            ev.t = std::stoll(fields[0]);
            ev.object = std::stoull(fields[1]);
            ev.cell.col = static_cast<std::uint32_t>(std::stoul(fields[2]));
            ev.cell.row = static_cast<std::uint32_t>(std::stoul(fields[3]));
        } catch (const std::exception&) {
            bad_line("event log: bad number", lineno);
        }
        if (fields[4] == "E")
            ev.kind = EventKind::Enter;
        else if (fields[4] == "X")
            ev.kind = EventKind::Exit;
        else
            bad_line("event log: kind must be E or X", lineno);
        events.push_back(ev);
    }
    return events;
}

void write_event_log_file(const std::string& path, const std::vector<RawEvent>& events) {
    std::ofstream os(path);
    if (!os) throw ParseError("cannot open " + path + " for writing");
    write_event_log(os, events);
}

std::vector<RawEvent> read_event_log_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    return read_event_log(in);
}

void write_trajectories(std::ostream& os, const std::vector<TrajectoryPoint>& points) {
    os << "t,object_id,x,y\n";
    for (const auto& p : points)
        os << p.t << ',' << p.object << ',' << p.x << ',' << p.y << '\n';
}

void write_queries(std::ostream& os, const std::vector<StpQuery>& queries) {
    for (const auto& q : queries) os << format_query(q) << '\n';
}

std::vector<StpQuery> read_queries(std::istream& in) {
    std::vector<StpQuery> queries;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        bool blank = line.find_first_not_of(" \t\r") == std::string::npos;
        if (blank) continue;
        try {
            queries.push_back(parse_query_line(line));
        } catch (const ParseError& e) {
            throw ParseError("line " + std::to_string(lineno) + ": " + e.what());
        }
    }
    return queries;
}

std::vector<StpQuery> read_queries_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    return read_queries(in);
}

}  // namespace stpq
