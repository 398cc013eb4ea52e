#pragma once

#include <cstddef>
#include <vector>

#include "stpq/common.hpp"

namespace stpq {

using PageId = std::uint32_t;

enum class PageKind { Leaf, Internal, ListNode };

const char* page_kind_name(PageKind kind);

struct StoreConfig {
    std::size_t record_capacity = 42;  // records per page
    std::size_t page_size_bytes = 512;
};

// Records per page for the classic geometry: floor(page / (key + ptr)).
std::size_t record_capacity_for(std::size_t page_size_bytes,
                                std::size_t key_bytes,
                                std::size_t ptr_bytes);

// One fixed-size record slot. Interpretation is up to the owning index:
// data records carry a payload in aux, index records a child page id,
// list entries an enter/exit tag.
struct PageRecord {
    ObjectId key = 0;
    Timestamp start = 0;
    Timestamp end = kOpen;
    std::uint64_t aux = 0;

    bool live() const { return end == kOpen; }
    bool valid_at(Timestamp t) const { return start <= t && t < end; }
    bool operator==(const PageRecord&) const = default;
};

struct Page {
    PageKind kind = PageKind::Leaf;
    std::vector<PageRecord> records;
    std::vector<PageId> succ;  // succession pointers, filled when a leaf dies
};

struct IoStats {
    std::uint64_t reads = 0;
    std::uint64_t writes = 0;
    std::uint64_t allocated_pages = 0;
};

// Simulated secondary memory. Every read() and write() counts as one node
// access; page ids are never reused, so dead pages stay readable forever.
class PageStore {
public:
    explicit PageStore(StoreConfig cfg);

    PageId allocate(PageKind kind);
    const Page& read(PageId id);
    void write(PageId id, Page page);

    // Uncounted access for dumps and invariant checks only.
    const Page& inspect(PageId id) const;

    std::size_t page_count() const { return pages_.size(); }
    const StoreConfig& config() const { return cfg_; }
    std::size_t capacity() const { return cfg_.record_capacity; }

    const IoStats& stats() const { return stats_; }
    void reset_stats();

private:
    void check_id(PageId id) const;

    StoreConfig cfg_;
    std::vector<Page> pages_;
    IoStats stats_;
};

}  // namespace stpq
