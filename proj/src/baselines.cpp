#include "stpq/baselines.hpp"

#include <algorithm>
#include <cassert>

namespace stpq {

namespace {

constexpr std::uint64_t kEnter = 0;
constexpr std::uint64_t kExit = 1;

// (object, t) order with exits before enters at equal timestamps, so an
// exit-and-reenter at one instant reconstructs as two intervals.
bool entry_less(const PageRecord& a, const PageRecord& b) {
    if (a.key != b.key) return a.key < b.key;
    if (a.start != b.start) return a.start < b.start;
    return a.aux > b.aux;
}

}  // namespace

// ---------------------------------------------------------------- PackedRecords

PackedRecords::PackedRecords(PageStore& store, PageKind kind)
    : store_(store), kind_(kind) {}

void PackedRecords::insert_at(std::size_t pos, const PageRecord& rec) {
    assert(pos <= mirror_.size());
    mirror_.insert(mirror_.begin() + static_cast<std::ptrdiff_t>(pos), rec);
    rewrite_from(page_of(pos));
}

void PackedRecords::assign(std::vector<PageRecord> recs) {
    mirror_ = std::move(recs);
    rewrite_from(0);
}

void PackedRecords::rewrite_from(std::size_t page_idx) {
    const std::size_t cap = store_.capacity();
    const std::size_t needed = (mirror_.size() + cap - 1) / cap;
    while (pages_.size() < needed) pages_.push_back(store_.allocate(kind_));
    for (std::size_t i = page_idx; i < needed; ++i) {
        Page p;
        p.kind = kind_;
        auto first = mirror_.begin() + static_cast<std::ptrdiff_t>(i * cap);
        auto last = mirror_.begin() +
                    static_cast<std::ptrdiff_t>(std::min(mirror_.size(), (i + 1) * cap));
        p.records.assign(first, last);
        store_.write(pages_[i], std::move(p));
    }
}

std::vector<PageRecord> PackedRecords::read_all() const {
    std::vector<PageRecord> out;
    out.reserve(mirror_.size());
    const std::size_t cap = store_.capacity();
    const std::size_t used = (mirror_.size() + cap - 1) / cap;
    for (std::size_t i = 0; i < used; ++i) {
        const Page& p = store_.read(pages_[i]);
        out.insert(out.end(), p.records.begin(), p.records.end());
    }
    return out;
}

void PackedRecords::read_page(std::size_t page_idx, std::vector<PageRecord>& out) const {
    const Page& p = store_.read(pages_.at(page_idx));
    out.insert(out.end(), p.records.begin(), p.records.end());
}

// ------------------------------------------------------------------ LevelIndex

LevelIndex::LevelIndex(PageStore& store) : store_(store) {}

void LevelIndex::rebuild(const PackedRecords& lower) {
    const std::size_t cap = store_.capacity();
    const PackedRecords* below = &lower;
    std::size_t level = 0;
    while (below->page_count() > 1) {
        if (levels_.size() <= level)
            levels_.push_back(std::make_unique<PackedRecords>(store_, PageKind::ListNode));
        std::vector<PageRecord> seps;
        for (std::size_t i = 0; i < below->page_count(); ++i) {
            std::size_t first = i * cap;
            if (first >= below->size()) break;
            seps.push_back({below->mirror()[first].key, 0, kOpen, i});
        }
        levels_[level]->assign(std::move(seps));
        below = levels_[level].get();
        ++level;
    }
    levels_.resize(level);
}

std::size_t LevelIndex::descend(ObjectId key) const {
    if (levels_.empty()) return 0;
    std::size_t page_idx = 0;
    for (auto it = levels_.rbegin(); it != levels_.rend(); ++it) {
        std::vector<PageRecord> recs;
        (*it)->read_page(page_idx, recs);
        std::size_t next = 0;
        for (const auto& rec : recs)
            if (rec.key <= key) next = static_cast<std::size_t>(rec.aux);
        page_idx = next;
    }
    return page_idx;
}

std::size_t LevelIndex::page_count() const {
    std::size_t total = 0;
    for (const auto& level : levels_) total += level->page_count();
    return total;
}

// ------------------------------------------------------------------- intervals

std::vector<std::pair<Timestamp, Timestamp>> entries_to_intervals(
    const std::vector<PageRecord>& entries, ObjectId object) {
    std::vector<std::pair<Timestamp, Timestamp>> intervals;
    bool open = false;
    for (const auto& rec : entries) {
        if (rec.key != object) continue;
        if (rec.aux == kEnter) {
            intervals.emplace_back(rec.start, kOpen);
            open = true;
        } else if (open) {
            intervals.back().second = rec.start;
            open = false;
        }
    }
    return intervals;
}

// ------------------------------------------------------------------- ListIndex

ListIndex::ListIndex(PageStore& store) : store_(store) {}

ListIndex::Cell& ListIndex::cell_state(const CellId& cell) {
    auto key = std::make_pair(cell.col, cell.row);
    auto it = cells_.find(key);
    if (it == cells_.end())
        it = cells_.emplace(key, std::make_unique<Cell>(store_)).first;
    return *it->second;
}

const ListIndex::Cell* ListIndex::find_cell(const CellId& cell) const {
    auto it = cells_.find(std::make_pair(cell.col, cell.row));
    return it == cells_.end() ? nullptr : it->second.get();
}

void ListIndex::apply(const CellId& cell, const CellEvent& event) {
    Cell& state = cell_state(cell);
    PageRecord rec{event.object, event.t, kOpen,
                   event.kind == EventKind::Enter ? kEnter : kExit};
    const auto& mirror = state.entries.mirror();
    auto it = std::upper_bound(mirror.begin(), mirror.end(), rec, entry_less);
    state.entries.insert_at(static_cast<std::size_t>(it - mirror.begin()), rec);
}

std::vector<ObjectId> ListIndex::eval_predicate(const CellId& cell,
                                                const TemporalConstraint& T) {
    const Cell* state = find_cell(cell);
    if (!state) return {};
    auto entries = state->entries.read_all();
    std::vector<ObjectId> out;
    std::size_t i = 0;
    while (i < entries.size()) {
        ObjectId object = entries[i].key;
        for (const auto& iv : entries_to_intervals(entries, object)) {
            if (T.intersects(iv.first, iv.second)) {
                out.push_back(object);
                break;
            }
        }
        while (i < entries.size() && entries[i].key == object) ++i;
    }
    return out;
}

bool ListIndex::verify(const CellId& cell, ObjectId object,
                       const TemporalConstraint& T) {
    const Cell* state = find_cell(cell);
    if (!state) return false;
    auto entries = state->entries.read_all();
    for (const auto& iv : entries_to_intervals(entries, object))
        if (T.intersects(iv.first, iv.second)) return true;
    return false;
}

std::vector<ObjectId> ListIndex::eval_order(const std::vector<CellId>& cells) {
    if (cells.empty()) throw std::invalid_argument("order query needs >= 1 cell");
    // One read pass per distinct list, then a per-object merge of enter times.
    std::map<std::pair<std::uint32_t, std::uint32_t>, std::vector<PageRecord>> lists;
    for (const auto& cell : cells) {
        auto key = std::make_pair(cell.col, cell.row);
        if (lists.count(key)) continue;
        const Cell* state = find_cell(cell);
        lists[key] = state ? state->entries.read_all() : std::vector<PageRecord>{};
    }
    // enter times per (cell, object), already time-sorted by list order
    std::map<std::pair<std::uint32_t, std::uint32_t>,
             std::map<ObjectId, std::vector<Timestamp>>> enters;
    std::set<ObjectId> candidates;
    for (const auto& [key, entries] : lists) {
        auto& per_obj = enters[key];
        for (const auto& rec : entries)
            if (rec.aux == kEnter) per_obj[rec.key].push_back(rec.start);
        for (const auto& [obj, ts] : per_obj) candidates.insert(obj);
    }
    std::vector<ObjectId> out;
    for (ObjectId object : candidates) {
        Timestamp prev = -1;
        bool ok = true;
        for (const auto& cell : cells) {
            const auto& per_obj = enters[std::make_pair(cell.col, cell.row)];
            auto it = per_obj.find(object);
            if (it == per_obj.end()) {
                ok = false;
                break;
            }
            auto next = std::upper_bound(it->second.begin(), it->second.end(), prev);
            if (next == it->second.end()) {
                ok = false;
                break;
            }
            prev = *next;
        }
        if (ok) out.push_back(object);
    }
    return out;
}

std::size_t ListIndex::pages_total() const {
    std::size_t total = 0;
    for (const auto& [key, cell] : cells_) total += cell->entries.page_count();
    return total;
}

std::size_t ListIndex::list_pages(const CellId& cell) const {
    const Cell* state = find_cell(cell);
    return state ? state->entries.page_count() : 0;
}

std::size_t ListIndex::list_entries(const CellId& cell) const {
    const Cell* state = find_cell(cell);
    return state ? state->entries.size() : 0;
}

// -------------------------------------------------------------- PrimitiveIndex

PrimitiveIndex::PrimitiveIndex(PageStore& store, std::uint64_t max_events)
    : store_(store), max_events_(max_events) {}

PrimitiveIndex::Cell& PrimitiveIndex::cell_state(const CellId& cell) {
    auto key = std::make_pair(cell.col, cell.row);
    auto it = cells_.find(key);
    if (it == cells_.end())
        it = cells_.emplace(key, std::make_unique<Cell>(store_)).first;
    return *it->second;
}

const PrimitiveIndex::Cell* PrimitiveIndex::find_cell(const CellId& cell) const {
    auto it = cells_.find(std::make_pair(cell.col, cell.row));
    return it == cells_.end() ? nullptr : it->second.get();
}

void PrimitiveIndex::flush_snapshot(Cell& cell) {
    if (!cell.dirty) return;
    const std::size_t cap = store_.capacity();
    std::vector<PageId> chain;
    std::vector<PageRecord> batch;
    for (ObjectId id : cell.live) {
        batch.push_back({id, cell.pending_t, kOpen, 0});
        if (batch.size() == cap) {
            PageId pid = store_.allocate(PageKind::ListNode);
            Page p;
            p.kind = PageKind::ListNode;
            p.records = std::move(batch);
            store_.write(pid, std::move(p));
            chain.push_back(pid);
            batch.clear();
        }
    }
    if (!batch.empty()) {
        PageId pid = store_.allocate(PageKind::ListNode);
        Page p;
        p.kind = PageKind::ListNode;
        p.records = std::move(batch);
        store_.write(pid, std::move(p));
        chain.push_back(pid);
    }
    std::size_t slot = cell.snapshots.size();
    cell.snapshots.push_back(std::move(chain));
    cell.b_times.insert_at(cell.b_times.size(),
                           {static_cast<ObjectId>(cell.pending_t), cell.pending_t,
                            kOpen, slot});
    cell.b_upper.rebuild(cell.b_times);
    cell.dirty = false;
}

void PrimitiveIndex::apply(const CellId& cell, const CellEvent& event) {
    if (++events_seen_ > max_events_)
        throw DataError("primitive backend: event cap (" +
                        std::to_string(max_events_) + ") exceeded");
    Cell& state = cell_state(cell);
    if (state.dirty && event.t != state.pending_t) flush_snapshot(state);
    if (event.kind == EventKind::Enter) {
        if (!state.live.insert(event.object).second)
            throw DataError("primitive: duplicate enter");
    } else {
        if (state.live.erase(event.object) == 0)
            throw DataError("primitive: exit without enter");
    }
    state.pending_t = event.t;
    state.dirty = true;

    PageRecord rec{event.object, event.t, kOpen,
                   event.kind == EventKind::Enter ? kEnter : kExit};
    const auto& mirror = state.a_lower.mirror();
    auto it = std::upper_bound(mirror.begin(), mirror.end(), rec, entry_less);
    state.a_lower.insert_at(static_cast<std::size_t>(it - mirror.begin()), rec);
    state.a_upper.rebuild(state.a_lower);
}

void PrimitiveIndex::finish() {
    for (auto& [key, cell] : cells_) flush_snapshot(*cell);
}

std::vector<ObjectId> PrimitiveIndex::read_snapshot(const Cell& cell,
                                                    std::size_t slot) const {
    std::vector<ObjectId> out;
    for (PageId pid : cell.snapshots[slot]) {
        const Page& p = store_.read(pid);
        for (const auto& rec : p.records) out.push_back(rec.key);
    }
    return out;
}

std::vector<ObjectId> PrimitiveIndex::eval_predicate(const CellId& cell,
                                                     const TemporalConstraint& T) {
    const Cell* state = find_cell(cell);
    if (!state || state->b_times.size() == 0) return {};
    const auto& times = state->b_times.mirror();
    // slots to union: the version in force at T.lo plus every version
    // created inside (T.lo, T.hi]
    const std::size_t n = times.size();
    std::size_t from = n;
    for (std::size_t i = 0; i < n && times[i].start <= T.lo; ++i) from = i;
    if (from == n)
        for (std::size_t i = 0; i < n; ++i)
            if (times[i].start > T.lo && times[i].start <= T.hi) {
                from = i;
                break;
            }
    if (from == n) return {};
    std::size_t to = from;
    for (std::size_t i = from + 1; i < n && times[i].start <= T.hi; ++i) to = i;

    // charged accesses: the upper-index descent, the b_times pages holding
    // [from, to], then each snapshot chain
    state->b_upper.descend(static_cast<ObjectId>(T.lo));
    std::vector<PageRecord> scratch;
    for (std::size_t pg = state->b_times.page_of(from);
         pg <= state->b_times.page_of(to); ++pg)
        state->b_times.read_page(pg, scratch);

    std::set<ObjectId> out;
    for (std::size_t i = from; i <= to; ++i)
        for (ObjectId id : read_snapshot(*state, static_cast<std::size_t>(times[i].aux)))
            out.insert(id);
    return {out.begin(), out.end()};
}

bool PrimitiveIndex::verify(const CellId& cell, ObjectId object,
                            const TemporalConstraint& T) {
    const Cell* state = find_cell(cell);
    if (!state || state->a_lower.size() == 0) return false;
    const auto& mirror = state->a_lower.mirror();
    auto lo = std::lower_bound(mirror.begin(), mirror.end(), object,
                               [](const PageRecord& r, ObjectId key) { return r.key < key; });
    if (lo == mirror.end() || lo->key != object) {
        state->a_upper.descend(object);
        // one probe into the lower level settles absence
        std::vector<PageRecord> scratch;
        state->a_lower.read_page(
            state->a_lower.page_of(std::min<std::size_t>(
                static_cast<std::size_t>(lo - mirror.begin()), mirror.size() - 1)),
            scratch);
        return false;
    }
    auto hi = std::upper_bound(lo, mirror.end(), object,
                               [](ObjectId key, const PageRecord& r) { return key < r.key; });
    std::size_t first_pg = state->a_lower.page_of(static_cast<std::size_t>(lo - mirror.begin()));
    std::size_t last_pg =
        state->a_lower.page_of(static_cast<std::size_t>(hi - mirror.begin() - 1));
    state->a_upper.descend(object);
    std::vector<PageRecord> entries;
    for (std::size_t pg = first_pg; pg <= last_pg; ++pg)
        state->a_lower.read_page(pg, entries);
    for (const auto& iv : entries_to_intervals(entries, object))
        if (T.intersects(iv.first, iv.second)) return true;
    return false;
}

std::size_t PrimitiveIndex::structure_a_pages() const {
    std::size_t total = 0;
    for (const auto& [key, cell] : cells_)
        total += cell->a_lower.page_count() + cell->a_upper.page_count();
    return total;
}

std::size_t PrimitiveIndex::structure_b_pages() const {
    std::size_t total = 0;
    for (const auto& [key, cell] : cells_) {
        total += cell->b_times.page_count() + cell->b_upper.page_count();
        for (const auto& chain : cell->snapshots) total += chain.size();
    }
    return total;
}

std::size_t PrimitiveIndex::pages_total() const {
    return structure_a_pages() + structure_b_pages();
}

}  // namespace stpq
