#pragma once

#include <map>
#include <memory>
#include <set>

#include "stpq/backend.hpp"

namespace stpq {

// A sorted record sequence packed densely over chained pages. Keeps an
// uncounted in-memory mirror for maintenance; query paths must go through
// read_pages/read_all so every page access is charged.
class PackedRecords {
public:
    PackedRecords(PageStore& store, PageKind kind);

    void insert_at(std::size_t pos, const PageRecord& rec);
    void assign(std::vector<PageRecord> recs);

    std::vector<PageRecord> read_all() const;
    void read_page(std::size_t page_idx, std::vector<PageRecord>& out) const;

    std::size_t size() const { return mirror_.size(); }
    std::size_t page_count() const { return pages_.size(); }
    std::size_t page_of(std::size_t pos) const { return pos / store_.capacity(); }
    const std::vector<PageRecord>& mirror() const { return mirror_; }

private:
    void rewrite_from(std::size_t page_idx);

    PageStore& store_;
    PageKind kind_;
    std::vector<PageId> pages_;
    std::vector<PageRecord> mirror_;
};

// Static multi-level index over a PackedRecords level: level k+1 holds one
// separator per level-k page. Search costs one read per level.
class LevelIndex {
public:
    explicit LevelIndex(PageStore& store);

    void rebuild(const PackedRecords& lower);
    // Greatest lower page whose separator is <= key; charges one read per
    // level. Returns lower page count when the index is empty.
    std::size_t descend(ObjectId key) const;
    std::size_t level_count() const { return levels_.size(); }
    std::size_t page_count() const;

private:
    PageStore& store_;
    std::vector<std::unique_ptr<PackedRecords>> levels_;  // levels_[0] over lower
};

// The per-cell list baseline: one (object, t) entry per enter and exit,
// ordered by (object, t), scanned in full for every predicate.
class ListIndex : public CellIndex {
public:
    explicit ListIndex(PageStore& store);

    const char* name() const override { return "list"; }
    void apply(const CellId& cell, const CellEvent& event) override;
    std::vector<ObjectId> eval_predicate(const CellId& cell,
                                         const TemporalConstraint& T) override;
    bool verify(const CellId& cell, ObjectId object,
                const TemporalConstraint& T) override;
    std::size_t pages_total() const override;

    // STP query with order: one merged pass over the cells' lists, answers
    // in object-id order. Entry times must increase strictly across cells.
    std::vector<ObjectId> eval_order(const std::vector<CellId>& cells);

    std::size_t list_pages(const CellId& cell) const;
    std::size_t list_entries(const CellId& cell) const;

private:
    struct Cell {
        PackedRecords entries;
        explicit Cell(PageStore& store) : entries(store, PageKind::ListNode) {}
    };
    Cell& cell_state(const CellId& cell);
    const Cell* find_cell(const CellId& cell) const;

    PageStore& store_;
    std::map<std::pair<std::uint32_t, std::uint32_t>, std::unique_ptr<Cell>> cells_;
};

// The primitive baseline: per cell, Structure A (object -> membership
// intervals) answers per-object checks, Structure B (timestamp -> full
// snapshot list, copied on every version) answers predicate evaluation.
class PrimitiveIndex : public CellIndex {
public:
    PrimitiveIndex(PageStore& store, std::uint64_t max_events);

    const char* name() const override { return "primitive"; }
    void apply(const CellId& cell, const CellEvent& event) override;
    void finish() override;
    std::vector<ObjectId> eval_predicate(const CellId& cell,
                                         const TemporalConstraint& T) override;
    bool verify(const CellId& cell, ObjectId object,
                const TemporalConstraint& T) override;
    std::size_t pages_total() const override;

    std::size_t structure_a_pages() const;
    std::size_t structure_b_pages() const;

private:
    struct Cell {
        PackedRecords a_lower;  // (object, t, kind) entries, dense
        LevelIndex a_upper;
        PackedRecords b_times;  // (timestamp, snapshot slot)
        LevelIndex b_upper;
        std::vector<std::vector<PageId>> snapshots;
        std::set<ObjectId> live;
        Timestamp pending_t = 0;
        bool dirty = false;

        explicit Cell(PageStore& store)
            : a_lower(store, PageKind::ListNode),
              a_upper(store),
              b_times(store, PageKind::ListNode),
              b_upper(store) {}
    };

    Cell& cell_state(const CellId& cell);
    const Cell* find_cell(const CellId& cell) const;
    void flush_snapshot(Cell& cell);
    std::vector<ObjectId> read_snapshot(const Cell& cell, std::size_t slot) const;

    PageStore& store_;
    std::uint64_t max_events_;
    std::uint64_t events_seen_ = 0;
    std::map<std::pair<std::uint32_t, std::uint32_t>, std::unique_ptr<Cell>> cells_;
};

// Interval reconstruction shared by the list paths: entries sorted by
// (object, t, exit-first); an unmatched Enter yields an open interval.
std::vector<std::pair<Timestamp, Timestamp>> entries_to_intervals(
    const std::vector<PageRecord>& entries, ObjectId object);

}  // namespace stpq
