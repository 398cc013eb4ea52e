#include "stpq/engine.hpp"

#include <algorithm>

#include "stpq/baselines.hpp"

namespace stpq {

// ---------------------------------------------------------------------- Oracle

Oracle::Oracle(const std::vector<RawEvent>& log) {
    std::map<std::pair<ObjectId, CellKey>, bool> inside;
    for (const auto& ev : log) {
        CellKey key{ev.cell.col, ev.cell.row};
        objects_.insert(ev.object);
        bool& in = inside[{ev.object, key}];
        if (ev.kind == EventKind::Enter) {
            if (in) throw DataError("oracle: double enter for object " +
                                    std::to_string(ev.object));
            in = true;
            intervals_[key][ev.object].emplace_back(ev.t, kOpen);
            enters_[key][ev.object].push_back(ev.t);
        } else {
            if (!in) throw DataError("oracle: exit without enter for object " +
                                     std::to_string(ev.object));
            in = false;
            intervals_[key][ev.object].back().second = ev.t;
        }
    }
}

bool Oracle::satisfies(ObjectId object, const CellId& cell,
                       const TemporalConstraint& T) const {
    auto cit = intervals_.find({cell.col, cell.row});
    if (cit == intervals_.end()) return false;
    auto oit = cit->second.find(object);
    if (oit == cit->second.end()) return false;
    for (const auto& iv : oit->second)
        if (T.intersects(iv.first, iv.second)) return true;
    return false;
}

std::vector<ObjectId> Oracle::eval_predicate(const CellId& cell,
                                             const TemporalConstraint& T) const {
    std::vector<ObjectId> out;
    auto cit = intervals_.find({cell.col, cell.row});
    if (cit == intervals_.end()) return out;
    for (const auto& [object, ivs] : cit->second)
        for (const auto& iv : ivs)
            if (T.intersects(iv.first, iv.second)) {
                out.push_back(object);
                break;
            }
    return out;
}

std::vector<ObjectId> Oracle::eval_order(const StpQuery& query) const {
    std::vector<ObjectId> out;
    for (ObjectId object : objects_) {
        Timestamp prev = -1;
        bool ok = true;
        for (const auto& pred : query.predicates) {
            auto cit = enters_.find({pred.cell.col, pred.cell.row});
            const std::vector<Timestamp>* ts = nullptr;
            if (cit != enters_.end()) {
                auto oit = cit->second.find(object);
                if (oit != cit->second.end()) ts = &oit->second;
            }
            if (!ts) {
                ok = false;
                break;
            }
            auto next = std::upper_bound(ts->begin(), ts->end(), prev);
            if (next == ts->end()) {
                ok = false;
                break;
            }
            prev = *next;
        }
        if (ok) out.push_back(object);
    }
    return out;
}

std::vector<ObjectId> Oracle::eval(const StpQuery& query) const {
    if (query.predicates.empty()) throw std::invalid_argument("oracle: empty query");
    if (query.variant == QueryVariant::WithOrder) return eval_order(query);
    std::vector<ObjectId> out;
    for (ObjectId object : objects_) {
        bool ok = true;
        for (const auto& pred : query.predicates)
            if (!satisfies(object, pred.cell, pred.constraint)) {
                ok = false;
                break;
            }
        if (ok) out.push_back(object);
    }
    return out;
}

std::size_t Oracle::cell_population(const CellId& cell) const {
    auto cit = intervals_.find({cell.col, cell.row});
    return cit == intervals_.end() ? 0 : cit->second.size();
}

// ---------------------------------------------------------------------- Engine

Engine::Engine(CellIndex& index, PageStore& store, const std::vector<RawEvent>* log)
    : index_(index), store_(store), log_(log) {
    if (log_)
        for (const auto& ev : *log_)
            if (ev.kind == EventKind::Enter)
                ++enter_counts_[{ev.cell.col, ev.cell.row}];
}

std::size_t Engine::choose_seed(const StpQuery& query) const {
    if (!heuristic_ || enter_counts_.empty()) return 0;
    std::size_t best = 0;
    std::size_t best_estimate = SIZE_MAX;
    for (std::size_t i = 0; i < query.predicates.size(); ++i) {
        const auto& cell = query.predicates[i].cell;
        auto it = enter_counts_.find({cell.col, cell.row});
        std::size_t estimate = it == enter_counts_.end() ? 0 : it->second;
        if (estimate < best_estimate) {
            best_estimate = estimate;
            best = i;
        }
    }
    return best;
}

std::vector<ObjectId> Engine::eval(const StpQuery& query, QueryTrace* trace) {
    if (query.predicates.empty()) throw std::invalid_argument("engine: empty query");
    std::uint64_t before = store_.stats().reads;
    std::vector<ObjectId> out = query.variant == QueryVariant::WithTime
                                    ? eval_with_time(query, trace)
                                    : eval_with_order(query);
    if (trace) trace->reads_total = store_.stats().reads - before;
    return out;
}

std::vector<ObjectId> Engine::eval_with_time(const StpQuery& query, QueryTrace* trace) {
    std::size_t seed = choose_seed(query);
    const auto& sp = query.predicates[seed];

    std::uint64_t before = store_.stats().reads;
    std::vector<ObjectId> candidates = index_.eval_predicate(sp.cell, sp.constraint);
    if (trace) {
        trace->seed.predicate_index = seed;
        trace->seed.interval = sp.constraint.interval;
        trace->seed.reads = store_.stats().reads - before;
        trace->seed.output_size = candidates.size();
        if (auto* adv = dynamic_cast<AdvancedIndex*>(&index_))
            trace->seed.tree_height = adv->height_for(sp.cell, sp.constraint);
    }
    if (candidates.empty()) return {};

    std::vector<ObjectId> out;
    for (ObjectId object : candidates) {
        bool ok = true;
        for (std::size_t i = 0; i < query.predicates.size(); ++i) {
            if (i == seed) continue;
            const auto& pred = query.predicates[i];
            if (!index_.verify(pred.cell, object, pred.constraint)) {
                ok = false;
                break;
            }
        }
        if (ok) out.push_back(object);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<ObjectId> Engine::eval_with_order(const StpQuery& query) {
    if (auto* list = dynamic_cast<ListIndex*>(&index_)) {
        std::vector<CellId> cells;
        for (const auto& pred : query.predicates) cells.push_back(pred.cell);
        return list->eval_order(cells);
    }
    // Order queries are the list solution's home turf; other backends fall
    // back to a raw-log check.
    if (!log_)
        throw std::invalid_argument(
            "engine: order query on this backend needs the raw event log");
    if (!order_fallback_) order_fallback_ = std::make_unique<Oracle>(*log_);
    return order_fallback_->eval(query);
}

}  // namespace stpq
