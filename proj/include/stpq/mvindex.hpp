#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "stpq/pagestore.hpp"

namespace stpq::mv {

// Restructure parameters for one partially persistent B+-tree.
// d is the weak-version minimum; a restructure leaves each newborn node
// with a live count inside [split_low, split_high].
struct MvConfig {
    std::size_t b = 42;
    std::size_t d = 10;
    std::size_t split_low = 15;
    std::size_t split_high = 36;

    static MvConfig for_capacity(std::size_t b);
    void validate() const;
};

struct RootEntry {
    Timestamp start = 0;
    Timestamp end = kOpen;
    PageId root = 0;
};

struct IndexStats {
    std::uint64_t m_updates = 0;  // update operations applied
    std::uint64_t n_live = 0;     // live data records in the current version
};

struct ScanTrace {
    std::size_t leaves_accessed = 0;
    std::size_t initial_leaves = 0;
    std::size_t dead_in_interval = 0;
};

// Multiversion B+-tree over a PageStore. Timestamped inserts and logical
// deletes evolve the current version; every historical version stays
// queryable. Dead leaves keep succession pointers to their replacements so
// an interval scan can walk the history forward without re-descending.
class MvTree {
public:
    MvTree(PageStore& store, MvConfig cfg);

    void insert(ObjectId key, Timestamp t);
    void logical_delete(ObjectId key, Timestamp t);

    std::vector<ObjectId> snapshot(Timestamp t) const;
    bool point_query(ObjectId key, Timestamp t) const;
    std::vector<ObjectId> interval_scan(Timestamp t1, Timestamp t2,
                                        ScanTrace* trace = nullptr) const;
    bool key_interval_query(ObjectId key, Timestamp t1, Timestamp t2) const;

    // Length in pages of the root-to-leaf descent for version t (0 if empty).
    std::size_t height_at(Timestamp t) const;

    bool empty() const { return roots_.empty(); }
    Timestamp last_update() const { return last_t_; }
    const std::vector<RootEntry>& root_log() const { return roots_; }
    const IndexStats& stats() const { return stats_; }
    std::size_t page_count() const { return meta_.size(); }
    const MvConfig& config() const { return cfg_; }

    // One line per page: `page_id kind [(key,start,end),...] succ=[ids]`,
    // '$' for open ends.
    void dump(std::ostream& os) const;

    // Structural validation: capacity, weak version condition,
    // post-restructure live counts. Returns one message per violation.
    std::vector<std::string> check_invariants() const;

private:
    struct NodeMeta {
        Timestamp born = 0;
        Timestamp died = kOpen;
        bool restructure_child = false;
        std::size_t born_live = 0;  // live records handed over at birth
    };

    PageId root_at(Timestamp t) const;  // kNoPage if t precedes all versions
    std::vector<PageId> descend_live(ObjectId key);
    void version_split(std::vector<PageId>& path,
                       std::vector<PageRecord> extras, Timestamp t);
    void apply_replacement(std::vector<PageId>& path,
                           const std::vector<PageId>& dead,
                           std::vector<PageRecord> born, Timestamp t);
    void collect_at(PageId node, Timestamp t, std::vector<ObjectId>& out) const;
    void leaves_at(PageId node, Timestamp t, std::vector<PageId>& out) const;
    bool key_window_search(PageId node, ObjectId key, Timestamp lo,
                           Timestamp hi) const;
    bool was_root_at(PageId id, Timestamp t) const;
    PageId alloc_node(PageKind kind, Timestamp t, bool from_restructure);

    static constexpr PageId kNoPage = static_cast<PageId>(-1);

    PageStore& store_;
    MvConfig cfg_;
    std::vector<RootEntry> roots_;
    std::vector<RootEntry> old_roots_;  // tenures ended by a root grow
    std::unordered_map<PageId, NodeMeta> meta_;
    IndexStats stats_;
    Timestamp last_t_ = -1;
};

}  // namespace stpq::mv
