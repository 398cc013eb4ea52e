#include "stpq/mvindex.hpp"

#include <algorithm>
#include <cassert>
#include <ostream>
#include <set>
#include <unordered_set>

namespace stpq::mv {

MvConfig MvConfig::for_capacity(std::size_t b) {
    MvConfig cfg;
    cfg.b = b;
    cfg.d = b / 4;
    cfg.split_low = std::max(cfg.d + 1, 3 * b / 8);
    cfg.split_high = std::max(cfg.split_low + 1, 7 * b / 8);
    return cfg;
}

void MvConfig::validate() const {
    if (b < 4) throw std::invalid_argument("mv: b must be at least 4");
    if (d < 1 || d >= split_low)
        throw std::invalid_argument("mv: need 1 <= d < split_low");
    if (split_low >= split_high || split_high >= b)
        throw std::invalid_argument("mv: need split_low < split_high < b");
}

MvTree::MvTree(PageStore& store, MvConfig cfg) : store_(store), cfg_(cfg) {
    cfg_.validate();
    if (cfg_.b > store_.capacity())
        throw std::invalid_argument("mv: b exceeds page capacity");
}

PageId MvTree::root_at(Timestamp t) const {
    for (auto it = roots_.rbegin(); it != roots_.rend(); ++it)
        if (it->start <= t && t < it->end) return it->root;
    return kNoPage;
}

std::vector<PageId> MvTree::descend_live(ObjectId key) {
    std::vector<PageId> path;
    PageId cur = roots_.back().root;
    for (;;) {
        path.push_back(cur);
        const Page& page = store_.read(cur);
        if (page.kind == PageKind::Leaf) return path;
        const PageRecord* best = nullptr;
        for (const auto& rec : page.records) {
            if (!rec.live()) continue;
            if (rec.key <= key && (!best || rec.key > best->key)) best = &rec;
        }
        if (!best) {
            // key below every separator; take the leftmost live child
            for (const auto& rec : page.records)
                if (rec.live() && (!best || rec.key < best->key)) best = &rec;
        }
        if (!best) throw StoreError("mv: internal node with no live child");
        cur = static_cast<PageId>(best->aux);
    }
}

PageId MvTree::alloc_node(PageKind kind, Timestamp t, bool from_restructure) {
    PageId id = store_.allocate(kind);
    meta_[id] = NodeMeta{t, kOpen, from_restructure};
    return id;
}

void MvTree::insert(ObjectId key, Timestamp t) {
    if (t < last_t_) throw DataError("mv: decreasing update timestamp");
    if (roots_.empty()) {
        PageId leaf = alloc_node(PageKind::Leaf, t, false);
        Page p;
        p.kind = PageKind::Leaf;
        p.records.push_back({key, t, kOpen, 0});
        store_.write(leaf, std::move(p));
        roots_.push_back({t, kOpen, leaf});
    } else {
        auto path = descend_live(key);
        Page leaf = store_.inspect(path.back());
        for (const auto& rec : leaf.records)
            if (rec.live() && rec.key == key)
                throw DataError("mv: key already live");
        if (leaf.records.size() < cfg_.b) {
            leaf.records.push_back({key, t, kOpen, 0});
            store_.write(path.back(), std::move(leaf));
        } else {
            version_split(path, {{key, t, kOpen, 0}}, t);
        }
    }
    ++stats_.m_updates;
    ++stats_.n_live;
    last_t_ = t;
}

void MvTree::logical_delete(ObjectId key, Timestamp t) {
    if (t < last_t_) throw DataError("mv: decreasing update timestamp");
    if (roots_.empty()) throw DataError("mv: delete on empty index");
    auto path = descend_live(key);
    Page leaf = store_.inspect(path.back());
    bool found = false;
    std::size_t live = 0;
    for (auto& rec : leaf.records) {
        if (!rec.live()) continue;
        if (rec.key == key) {
            rec.end = t;
            found = true;
        } else {
            ++live;
        }
    }
    if (!found) throw DataError("mv: key not live, cannot delete");
    store_.write(path.back(), std::move(leaf));
    if (path.size() > 1 && live < cfg_.d) version_split(path, {}, t);
    ++stats_.m_updates;
    --stats_.n_live;
    last_t_ = t;
}

// Copies the live records of path.back() (plus extras) into one or two fresh
// nodes, merging an adjacent sibling when the live set is too small. The old
// node dies at t; leaves record succession pointers.
void MvTree::version_split(std::vector<PageId>& path,
                           std::vector<PageRecord> extras, Timestamp t) {
    PageId xid = path.back();
    Page px = store_.inspect(xid);
    const PageKind kind = px.kind;

    std::vector<PageRecord> entries = std::move(extras);
    for (auto& rec : px.records) {
        if (!rec.live()) continue;
        entries.push_back({rec.key, t, kOpen, rec.aux});
        rec.end = t;
    }
    std::vector<PageId> dead{xid};

    // Weak underflow: borrow the live records of a neighbor, killing it too.
    if (entries.size() < cfg_.split_low && path.size() > 1) {
        const Page& parent = store_.read(path[path.size() - 2]);
        std::vector<const PageRecord*> siblings;
        for (const auto& rec : parent.records)
            if (rec.live()) siblings.push_back(&rec);
        std::sort(siblings.begin(), siblings.end(),
                  [](const PageRecord* a, const PageRecord* b) { return a->key < b->key; });
        std::size_t pos = 0;
        while (pos < siblings.size() && siblings[pos]->aux != xid) ++pos;
        PageId sid = kNoPage;
        if (pos + 1 < siblings.size())
            sid = static_cast<PageId>(siblings[pos + 1]->aux);
        else if (pos > 0 && pos < siblings.size())
            sid = static_cast<PageId>(siblings[pos - 1]->aux);
        if (sid != kNoPage) {
            Page ps = store_.inspect(sid);
            for (auto& rec : ps.records) {
                if (!rec.live()) continue;
                entries.push_back({rec.key, t, kOpen, rec.aux});
                rec.end = t;
            }
            dead.push_back(sid);
            store_.write(sid, std::move(ps));  // succ patched below
        }
    }
    std::sort(entries.begin(), entries.end(),
              [](const PageRecord& a, const PageRecord& b) { return a.key < b.key; });

    meta_[xid].died = t;
    if (dead.size() > 1) meta_[dead[1]].died = t;

    // Degenerate internal root: route straight to the surviving child.
    if (kind == PageKind::Internal && path.size() == 1 && entries.size() == 1) {
        store_.write(xid, std::move(px));
        roots_.back().end = t;
        roots_.push_back({t, kOpen, static_cast<PageId>(entries[0].aux)});
        return;
    }

    std::vector<std::vector<PageRecord>> groups;
    if (entries.size() > cfg_.split_high) {
        std::size_t half = entries.size() / 2;
        groups.emplace_back(entries.begin(), entries.begin() + half);
        groups.emplace_back(entries.begin() + half, entries.end());
    } else {
        groups.push_back(std::move(entries));
    }

    std::vector<PageId> born_ids;
    std::vector<PageRecord> born;
    for (auto& group : groups) {
        PageId nid = alloc_node(kind, t, true);
        meta_[nid].born_live = group.size();
        born_ids.push_back(nid);
        born.push_back({group.front().key, t, kOpen, nid});
        Page np;
        np.kind = kind;
        np.records = std::move(group);
        store_.write(nid, std::move(np));
    }

    if (kind == PageKind::Leaf) {
        px.succ = born_ids;
        if (dead.size() > 1) {
            Page ps = store_.inspect(dead[1]);
            ps.succ = born_ids;
            store_.write(dead[1], std::move(ps));
        }
    }
    store_.write(xid, std::move(px));

    if (path.size() == 1) {
        RootEntry& cur = roots_.back();
        if (born_ids.size() == 1) {
            cur.end = t;
            roots_.push_back({t, kOpen, born_ids[0]});
        } else {
            // Grow: the new root keeps a dead record for its predecessor so
            // historical descents start from the current root.
            born[0].key = 0;
            PageId rid = alloc_node(PageKind::Internal, t, false);
            Page rp;
            rp.kind = PageKind::Internal;
            rp.records.push_back({0, cur.start, t, xid});
            rp.records.push_back(born[0]);
            rp.records.push_back(born[1]);
            store_.write(rid, std::move(rp));
            old_roots_.push_back({cur.start, t, xid});
            cur.root = rid;
        }
        return;
    }

    path.pop_back();
    apply_replacement(path, dead, std::move(born), t);
}

void MvTree::apply_replacement(std::vector<PageId>& path,
                               const std::vector<PageId>& dead,
                               std::vector<PageRecord> born, Timestamp t) {
    PageId pid = path.back();
    Page pp = store_.inspect(pid);
    ObjectId minsep = 0;
    bool first = true;
    for (auto& rec : pp.records) {
        if (!rec.live()) continue;
        if (std::find(dead.begin(), dead.end(), static_cast<PageId>(rec.aux)) ==
            dead.end())
            continue;
        if (first || rec.key < minsep) minsep = rec.key;
        first = false;
        rec.end = t;
    }
    // The leftmost replacement inherits the dead range's lower bound.
    if (!born.empty()) born[0].key = minsep;

    if (pp.records.size() + born.size() <= cfg_.b) {
        for (auto& rec : born) pp.records.push_back(rec);
        std::size_t live = 0;
        PageRecord* only_live = nullptr;
        for (auto& rec : pp.records)
            if (rec.live()) {
                ++live;
                only_live = &rec;
            }
        bool collapse = path.size() == 1 && pp.kind == PageKind::Internal && live == 1;
        PageId child = collapse ? static_cast<PageId>(only_live->aux) : kNoPage;
        if (collapse) only_live->end = t;
        store_.write(pid, std::move(pp));
        if (collapse) {
            meta_[pid].died = t;
            roots_.back().end = t;
            roots_.push_back({t, kOpen, child});
        } else if (path.size() > 1 && live < cfg_.d) {
            version_split(path, {}, t);
        }
    } else {
        store_.write(pid, std::move(pp));
        version_split(path, std::move(born), t);
    }
}

void MvTree::collect_at(PageId node, Timestamp t, std::vector<ObjectId>& out) const {
    const Page& page = store_.read(node);
    if (page.kind == PageKind::Leaf) {
        for (const auto& rec : page.records)
            if (rec.valid_at(t)) out.push_back(rec.key);
        return;
    }
    std::vector<PageId> children;
    for (const auto& rec : page.records)
        if (rec.valid_at(t)) children.push_back(static_cast<PageId>(rec.aux));
    for (PageId child : children) collect_at(child, t, out);
}

std::vector<ObjectId> MvTree::snapshot(Timestamp t) const {
    std::vector<ObjectId> out;
    PageId root = root_at(t);
    if (root != kNoPage) collect_at(root, t, out);
    std::sort(out.begin(), out.end());
    return out;
}

bool MvTree::point_query(ObjectId key, Timestamp t) const {
    PageId cur = root_at(t);
    if (cur == kNoPage) return false;
    for (;;) {
        const Page& page = store_.read(cur);
        if (page.kind == PageKind::Leaf) {
            for (const auto& rec : page.records)
                if (rec.key == key && rec.valid_at(t)) return true;
            return false;
        }
        const PageRecord* best = nullptr;
        for (const auto& rec : page.records) {
            if (!rec.valid_at(t)) continue;
            if (rec.key <= key && (!best || rec.key > best->key)) best = &rec;
        }
        if (!best) return false;
        cur = static_cast<PageId>(best->aux);
    }
}

void MvTree::leaves_at(PageId node, Timestamp t, std::vector<PageId>& out) const {
    const Page& page = store_.read(node);
    if (page.kind == PageKind::Leaf) {
        out.push_back(node);
        return;
    }
    std::vector<PageId> children;
    for (const auto& rec : page.records)
        if (rec.valid_at(t)) children.push_back(static_cast<PageId>(rec.aux));
    for (PageId child : children) leaves_at(child, t, out);
}

std::vector<ObjectId> MvTree::interval_scan(Timestamp t1, Timestamp t2,
                                            ScanTrace* trace) const {
    if (t1 > t2) throw std::invalid_argument("mv: interval_scan needs t1 <= t2");
    std::vector<PageId> frontier;
    PageId root = root_at(t1);
    if (root != kNoPage) {
        leaves_at(root, t1, frontier);
    } else {
        // History starts inside the interval; seed from the first version.
        for (const auto& entry : roots_) {
            if (entry.start > t1 && entry.start <= t2) {
                leaves_at(entry.root, entry.start, frontier);
                break;
            }
        }
    }
    if (trace) trace->initial_leaves = frontier.size();

    std::set<ObjectId> out;
    std::unordered_set<PageId> visited;
    while (!frontier.empty()) {
        PageId id = frontier.back();
        frontier.pop_back();
        if (!visited.insert(id).second) continue;
        const Page& page = store_.read(id);
        if (trace) ++trace->leaves_accessed;
        for (const auto& rec : page.records)
            if (rec.valid_at(t1) || (rec.start > t1 && rec.start <= t2))
                out.insert(rec.key);
        Timestamp died = meta_.at(id).died;
        if (died != kOpen && died > t1 && died <= t2) {
            if (trace) ++trace->dead_in_interval;
            for (PageId s : page.succ) frontier.push_back(s);
        }
    }
    return {out.begin(), out.end()};
}

bool MvTree::key_window_search(PageId node, ObjectId key, Timestamp lo,
                               Timestamp hi) const {
    const Page& page = store_.read(node);
    if (page.kind == PageKind::Leaf) {
        for (const auto& rec : page.records)
            if (rec.key == key && rec.start <= hi && rec.end > lo) return true;
        return false;
    }
    // The chosen child only changes at record boundaries, so probing the
    // window start plus every boundary inside the window covers all instants.
    std::set<Timestamp> probes{lo};
    for (const auto& rec : page.records) {
        if (rec.start > lo && rec.start <= hi) probes.insert(rec.start);
        if (rec.end != kOpen && rec.end > lo && rec.end <= hi) probes.insert(rec.end);
    }
    std::set<PageId> children;
    for (Timestamp tt : probes) {
        const PageRecord* best = nullptr;
        for (const auto& rec : page.records) {
            if (!rec.valid_at(tt)) continue;
            if (rec.key <= key && (!best || rec.key > best->key)) best = &rec;
        }
        if (best) children.insert(static_cast<PageId>(best->aux));
    }
    for (PageId child : children)
        if (key_window_search(child, key, lo, hi)) return true;
    return false;
}

bool MvTree::key_interval_query(ObjectId key, Timestamp t1, Timestamp t2) const {
    if (t1 > t2) throw std::invalid_argument("mv: key_interval_query needs t1 <= t2");
    for (const auto& entry : roots_) {
        if (entry.start > t2 || entry.end <= t1) continue;
        Timestamp lo = std::max(t1, entry.start);
        Timestamp hi = entry.end == kOpen ? t2 : std::min(t2, entry.end - 1);
        if (lo > hi) continue;
        if (key_window_search(entry.root, key, lo, hi)) return true;
    }
    return false;
}

std::size_t MvTree::height_at(Timestamp t) const {
    PageId cur = root_at(t);
    std::size_t h = 0;
    while (cur != kNoPage) {
        const Page& page = store_.inspect(cur);
        ++h;
        if (page.kind == PageKind::Leaf) break;
        PageId next = kNoPage;
        for (const auto& rec : page.records)
            if (rec.valid_at(t)) {
                next = static_cast<PageId>(rec.aux);
                break;
            }
        cur = next;
    }
    return h;
}

bool MvTree::was_root_at(PageId id, Timestamp t) const {
    for (const auto& entry : roots_)
        if (entry.root == id && entry.start <= t && t < entry.end) return true;
    for (const auto& entry : old_roots_)
        if (entry.root == id && entry.start <= t && t < entry.end) return true;
    return false;
}

void MvTree::dump(std::ostream& os) const {
    std::vector<PageId> ids;
    ids.reserve(meta_.size());
    for (const auto& [id, m] : meta_) ids.push_back(id);
    std::sort(ids.begin(), ids.end());
    for (PageId id : ids) {
        const Page& page = store_.inspect(id);
        os << id << ' ' << page_kind_name(page.kind) << " [";
        for (std::size_t i = 0; i < page.records.size(); ++i) {
            const auto& rec = page.records[i];
            if (i) os << ',';
            os << '(' << rec.key << ',' << rec.start << ',';
            if (rec.end == kOpen)
                os << '$';
            else
                os << rec.end;
            os << ')';
        }
        os << "] succ=[";
        for (std::size_t i = 0; i < page.succ.size(); ++i) {
            if (i) os << ',';
            os << page.succ[i];
        }
        os << "]\n";
    }
}

std::vector<std::string> MvTree::check_invariants() const {
    std::vector<std::string> violations;
    auto flag = [&](PageId id, const std::string& what) {
        violations.push_back("page " + std::to_string(id) + ": " + what);
    };
    for (const auto& [id, m] : meta_) {
        const Page& page = store_.inspect(id);
        if (page.records.size() > cfg_.b)
            flag(id, "capacity exceeded");
        // a node born and dead at one instant never serves any version
        if (m.died == m.born) {
            if (page.kind == PageKind::Leaf && page.succ.empty())
                flag(id, "dead leaf without succession pointers");
            continue;
        }
        Timestamp died = m.died == kOpen ? last_t_ + 1 : m.died;
        std::set<Timestamp> probes{m.born};
        for (const auto& rec : page.records) {
            if (rec.start > m.born && rec.start < died) probes.insert(rec.start);
            if (rec.end != kOpen && rec.end > m.born && rec.end < died)
                probes.insert(rec.end);
        }
        for (Timestamp tt : probes) {
            if (was_root_at(id, tt)) continue;
            std::size_t live = 0;
            for (const auto& rec : page.records)
                if (rec.valid_at(tt)) ++live;
            if (live < cfg_.d)
                flag(id, "weak version condition broken at t=" + std::to_string(tt) +
                             " (live=" + std::to_string(live) + ")");
        }
        if (m.restructure_child && !was_root_at(id, m.born) &&
            (m.born_live < cfg_.split_low || m.born_live > cfg_.split_high))
            flag(id, "post-restructure live count " + std::to_string(m.born_live) +
                         " outside [" + std::to_string(cfg_.split_low) + "," +
                         std::to_string(cfg_.split_high) + "]");
        if (m.died != kOpen && page.kind == PageKind::Leaf && page.succ.empty())
            flag(id, "dead leaf without succession pointers");
    }
    return violations;
}

}  // namespace stpq::mv
