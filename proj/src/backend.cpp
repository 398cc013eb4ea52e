#include "stpq/backend.hpp"

namespace stpq {

AdvancedIndex::AdvancedIndex(PageStore& store, mv::MvConfig cfg)
    : store_(store), cfg_(cfg) {}

mv::MvTree& AdvancedIndex::cell_tree(const CellId& cell) {
    auto key = std::make_pair(cell.col, cell.row);
    auto it = trees_.find(key);
    if (it == trees_.end())
        it = trees_.emplace(key, std::make_unique<mv::MvTree>(store_, cfg_)).first;
    return *it->second;
}

mv::MvTree* AdvancedIndex::tree(const CellId& cell) {
    auto it = trees_.find(std::make_pair(cell.col, cell.row));
    return it == trees_.end() ? nullptr : it->second.get();
}

void AdvancedIndex::apply(const CellId& cell, const CellEvent& event) {
    auto& tree = cell_tree(cell);
    if (event.kind == EventKind::Enter)
        tree.insert(event.object, event.t);
    else
        tree.logical_delete(event.object, event.t);
}

std::vector<ObjectId> AdvancedIndex::eval_predicate(const CellId& cell,
                                                    const TemporalConstraint& T) {
    auto it = trees_.find(std::make_pair(cell.col, cell.row));
    if (it == trees_.end()) return {};
    if (T.interval) return it->second->interval_scan(T.lo, T.hi);
    return it->second->snapshot(T.lo);
}

bool AdvancedIndex::verify(const CellId& cell, ObjectId object,
                           const TemporalConstraint& T) {
    auto it = trees_.find(std::make_pair(cell.col, cell.row));
    if (it == trees_.end()) return false;
    if (T.interval) return it->second->key_interval_query(object, T.lo, T.hi);
    return it->second->point_query(object, T.lo);
}

std::size_t AdvancedIndex::pages_total() const {
    std::size_t total = 0;
    for (const auto& [key, tree] : trees_) total += tree->page_count();
    return total;
}

std::size_t AdvancedIndex::height_for(const CellId& cell,
                                      const TemporalConstraint& T) const {
    auto it = trees_.find(std::make_pair(cell.col, cell.row));
    return it == trees_.end() ? 0 : it->second->height_at(T.lo);
}

}  // namespace stpq
