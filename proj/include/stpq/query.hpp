#pragma once

#include <string>
#include <vector>

#include "stpq/grid.hpp"

namespace stpq {

// An instant `@t` or a closed interval `@[t1,t2]`.
struct TemporalConstraint {
    Timestamp lo = 0;
    Timestamp hi = 0;
    bool interval = false;

    static TemporalConstraint instant(Timestamp t) { return {t, t, false}; }
    static TemporalConstraint between(Timestamp t1, Timestamp t2) {
        if (t1 > t2) throw std::invalid_argument("constraint: t1 > t2");
        return {t1, t2, true};
    }
    // Membership [a, b) against this constraint.
    bool intersects(Timestamp a, Timestamp b) const { return a <= hi && b > lo; }

    bool operator==(const TemporalConstraint&) const = default;
};

struct Predicate {
    CellId cell;
    TemporalConstraint constraint;  // ignored for order queries

    bool operator==(const Predicate&) const = default;
};

enum class QueryVariant { WithTime, WithOrder };

struct StpQuery {
    QueryVariant variant = QueryVariant::WithTime;
    std::vector<Predicate> predicates;

    bool operator==(const StpQuery&) const = default;
};

struct PredicateResult {
    std::vector<ObjectId> objects;  // sorted, duplicate-free
    std::uint64_t io_cost = 0;
};

// Query file format, one query per line:
//   TIME (col,row)@t ; (col,row)@[t1,t2] ; ...
//   ORDER (col,row) ; (col,row) ; ...
StpQuery parse_query_line(const std::string& line);
std::string format_query(const StpQuery& query);

// Result line: sorted ids as O<id>, comma-separated, then io=<reads>.
std::string format_result(const std::vector<ObjectId>& objects, std::uint64_t reads);

}  // namespace stpq
