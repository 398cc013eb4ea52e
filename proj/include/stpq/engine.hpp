#pragma once

#include <map>
#include <memory>
#include <set>

#include "stpq/backend.hpp"

namespace stpq {

// Ground truth: per-object membership intervals reconstructed by a linear
// scan of the raw event log. No index, no page I/O.
class Oracle {
public:
    explicit Oracle(const std::vector<RawEvent>& log);

    std::vector<ObjectId> eval(const StpQuery& query) const;
    std::vector<ObjectId> eval_predicate(const CellId& cell,
                                         const TemporalConstraint& T) const;
    bool satisfies(ObjectId object, const CellId& cell,
                   const TemporalConstraint& T) const;

    const std::set<ObjectId>& objects() const { return objects_; }
    // Distinct objects that ever visited the cell.
    std::size_t cell_population(const CellId& cell) const;

private:
    using CellKey = std::pair<std::uint32_t, std::uint32_t>;
    std::vector<ObjectId> eval_order(const StpQuery& query) const;

    std::map<CellKey, std::map<ObjectId, std::vector<std::pair<Timestamp, Timestamp>>>>
        intervals_;
    std::map<CellKey, std::map<ObjectId, std::vector<Timestamp>>> enters_;
    std::set<ObjectId> objects_;
};

struct PredicateTrace {
    std::size_t predicate_index = 0;
    bool interval = false;
    std::uint64_t reads = 0;
    std::size_t output_size = 0;
    std::size_t tree_height = 0;  // advanced backend, 0 otherwise
};

struct QueryTrace {
    std::uint64_t reads_total = 0;
    PredicateTrace seed;
};

// Evaluates STP queries over any backend: one seed predicate evaluated in
// full, the candidates verified per-object against the rest.
class Engine {
public:
    Engine(CellIndex& index, PageStore& store,
           const std::vector<RawEvent>* log = nullptr);

    void set_seed_heuristic(bool on) { heuristic_ = on; }
    std::size_t choose_seed(const StpQuery& query) const;

    std::vector<ObjectId> eval(const StpQuery& query, QueryTrace* trace = nullptr);

private:
    std::vector<ObjectId> eval_with_time(const StpQuery& query, QueryTrace* trace);
    std::vector<ObjectId> eval_with_order(const StpQuery& query);

    CellIndex& index_;
    PageStore& store_;
    const std::vector<RawEvent>* log_;
    std::unique_ptr<Oracle> order_fallback_;
    bool heuristic_ = false;
    std::map<std::pair<std::uint32_t, std::uint32_t>, std::size_t> enter_counts_;
};

}  // namespace stpq
