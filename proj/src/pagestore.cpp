#include "stpq/pagestore.hpp"

#include <string>

namespace stpq {

const char* page_kind_name(PageKind kind) {
    switch (kind) {
        case PageKind::Leaf: return "leaf";
        case PageKind::Internal: return "internal";
        case PageKind::ListNode: return "list-node";
    }
    return "?";
}

std::size_t record_capacity_for(std::size_t page_size_bytes,
                                std::size_t key_bytes,
                                std::size_t ptr_bytes) {
    return page_size_bytes / (key_bytes + ptr_bytes);
}

PageStore::PageStore(StoreConfig cfg) : cfg_(cfg) {
    if (cfg_.record_capacity < 4)
        throw std::invalid_argument("record_capacity must be at least 4");
}

PageId PageStore::allocate(PageKind kind) {
    Page p;
    p.kind = kind;
    pages_.push_back(std::move(p));
    ++stats_.allocated_pages;
    return static_cast<PageId>(pages_.size() - 1);
}

const Page& PageStore::read(PageId id) {
    check_id(id);
    ++stats_.reads;
    return pages_[id];
}

void PageStore::write(PageId id, Page page) {
    check_id(id);
    if (page.records.size() > cfg_.record_capacity)
        throw StoreError("page " + std::to_string(id) + " overflow: " +
                         std::to_string(page.records.size()) + " records, capacity " +
                         std::to_string(cfg_.record_capacity));
    page.kind = pages_[id].kind;
    pages_[id] = std::move(page);
    ++stats_.writes;
}

const Page& PageStore::inspect(PageId id) const {
    check_id(id);
    return pages_[id];
}

void PageStore::reset_stats() {
    stats_.reads = 0;
    stats_.writes = 0;
}

void PageStore::check_id(PageId id) const {
    if (id >= pages_.size())
        throw StoreError("read of unallocated page " + std::to_string(id));
}

}  // namespace stpq
