#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "stpq/mvindex.hpp"

using namespace stpq;
using namespace stpq::mv;

namespace {

// Reference model: replays the same operations into per-timestamp live sets.
struct Model {
    std::map<Timestamp, std::set<ObjectId>> states;  // state after all ops at t
    std::set<ObjectId> live;
    std::map<ObjectId, std::vector<Timestamp>> enters;

    void insert(ObjectId key, Timestamp t) {
        live.insert(key);
        states[t] = live;
        enters[key].push_back(t);
    }
    void erase(ObjectId key, Timestamp t) {
        live.erase(key);
        states[t] = live;
    }
    std::set<ObjectId> at(Timestamp t) const {
        auto it = states.upper_bound(t);
        if (it == states.begin()) return {};
        return std::prev(it)->second;
    }
    std::set<ObjectId> window(Timestamp t1, Timestamp t2) const {
        auto out = at(t1);
        for (const auto& [key, ts] : enters)
            for (Timestamp t : ts)
                if (t > t1 && t <= t2) out.insert(key);
        return out;
    }
};

struct Op {
    bool insert;
    ObjectId key;
    Timestamp t;
};

std::vector<Op> random_ops(std::mt19937_64& rng, std::size_t count,
                           std::size_t key_range, bool bursty) {
    std::vector<Op> ops;
    std::set<ObjectId> live;
    Timestamp t = 0;
    while (ops.size() < count) {
        if (!bursty || rng() % 3 == 0) ++t;
        ObjectId key = rng() % key_range;
        if (live.count(key)) {
            if (rng() % 2) {
                ops.push_back({false, key, t});
                live.erase(key);
            }
        } else {
            ops.push_back({true, key, t});
            live.insert(key);
        }
    }
    return ops;
}

void replay(MvTree& tree, Model& model, const std::vector<Op>& ops) {
    for (const auto& op : ops) {
        if (op.insert) {
            tree.insert(op.key, op.t);
            model.insert(op.key, op.t);
        } else {
            tree.logical_delete(op.key, op.t);
            model.erase(op.key, op.t);
        }
    }
}

}  // namespace

TEST_CASE("config derivation and validation") {
    MvConfig cfg = MvConfig::for_capacity(42);
    CHECK(cfg.d == 10);
    CHECK(cfg.split_low == 15);
    CHECK(cfg.split_high == 36);
    CHECK_NOTHROW(cfg.validate());
    CHECK_NOTHROW(MvConfig::for_capacity(4).validate());
    CHECK_NOTHROW(MvConfig::for_capacity(7).validate());
    CHECK_THROWS_AS((MvConfig{42, 20, 15, 36}.validate()), std::invalid_argument);
    CHECK_THROWS_AS((MvConfig{42, 10, 36, 15}.validate()), std::invalid_argument);
    CHECK_THROWS_AS((MvConfig{42, 10, 15, 42}.validate()), std::invalid_argument);
}

TEST_CASE("single leaf lifecycle") {
    PageStore store({42, 512});
    MvTree tree(store, MvConfig::for_capacity(42));
    CHECK(tree.empty());
    CHECK(tree.snapshot(5).empty());

    tree.insert(10, 1);
    tree.insert(20, 2);
    tree.logical_delete(10, 3);

    CHECK(tree.snapshot(0).empty());
    CHECK(tree.snapshot(1) == std::vector<ObjectId>{10});
    CHECK(tree.snapshot(2) == std::vector<ObjectId>{10, 20});
    CHECK(tree.snapshot(3) == std::vector<ObjectId>{20});
    CHECK(tree.point_query(10, 2));
    CHECK_FALSE(tree.point_query(10, 3));
    CHECK(tree.key_interval_query(10, 3, 9) == false);
    CHECK(tree.key_interval_query(10, 2, 9));
    CHECK(tree.height_at(2) == 1);
    CHECK(tree.stats().m_updates == 3);
    CHECK(tree.stats().n_live == 1);
    CHECK(tree.check_invariants().empty());
}

TEST_CASE("update timestamps must not decrease") {
    PageStore store({42, 512});
    MvTree tree(store, MvConfig::for_capacity(42));
    tree.insert(1, 5);
    CHECK_THROWS_AS(tree.insert(2, 4), DataError);
    CHECK_THROWS_AS(tree.logical_delete(1, 4), DataError);
    CHECK_THROWS_AS(tree.insert(1, 6), DataError);       // already live
    CHECK_THROWS_AS(tree.logical_delete(9, 6), DataError);  // never inserted
}

TEST_CASE("exit and reenter at one timestamp") {
    PageStore store({42, 512});
    MvTree tree(store, MvConfig::for_capacity(42));
    tree.insert(7, 1);
    tree.logical_delete(7, 4);
    tree.insert(7, 4);
    CHECK(tree.snapshot(4) == std::vector<ObjectId>{7});
    CHECK(tree.point_query(7, 4));
    CHECK(tree.check_invariants().empty());
}

TEST_CASE("leaf overflow walkthrough: version split with two successors") {
    // b=5 with one key updated twice fills the first leaf by time 5; the
    // next insert at 6 forces a version split into two leaves under a new
    // root that keeps a dead record pointing at the old leaf.
    PageStore store({5, 512});
    MvTree tree(store, MvConfig{5, 1, 2, 3});
    const ObjectId A = 1, B = 2, C = 3, D = 4;

    tree.insert(A, 1);
    tree.insert(C, 2);
    tree.logical_delete(C, 3);
    tree.insert(C, 3);
    tree.logical_delete(C, 4);
    tree.insert(C, 4);
    tree.insert(B, 5);
    REQUIRE(tree.page_count() == 1);  // one full leaf, leaf-as-root
    tree.insert(D, 6);

    // old leaf dead with two successors, plus a fresh internal root
    const Page& old_leaf = store.inspect(0);
    CHECK(old_leaf.kind == PageKind::Leaf);
    CHECK(old_leaf.succ.size() == 2);
    std::size_t live_leaves = 0;
    std::size_t dead_leaves = 0;
    for (PageId id = 0; id < store.page_count(); ++id) {
        const Page& p = store.inspect(id);
        if (p.kind != PageKind::Leaf) continue;
        bool any_live = false;
        for (const auto& rec : p.records) any_live |= rec.live();
        (any_live ? live_leaves : dead_leaves) += 1;
    }
    CHECK(dead_leaves == 1);
    CHECK(live_leaves == 2);

    // the root carries a dead record for the old leaf, keeping history
    // reachable from the current root
    REQUIRE(tree.root_log().size() == 1);
    const Page& root = store.inspect(tree.root_log().back().root);
    CHECK(root.kind == PageKind::Internal);
    bool dead_root_record = false;
    for (const auto& rec : root.records)
        if (!rec.live() && rec.aux == 0 && rec.end == 6) dead_root_record = true;
    CHECK(dead_root_record);

    // historical and current queries
    CHECK(tree.point_query(C, 3));
    CHECK_FALSE(tree.point_query(D, 5));
    CHECK(tree.snapshot(5) == std::vector<ObjectId>{A, B, C});
    CHECK(tree.snapshot(6) == std::vector<ObjectId>{A, B, C, D});
    CHECK(tree.height_at(3) == 2);  // via the dead root record
    CHECK(tree.check_invariants().empty());

    std::ostringstream dump;
    tree.dump(dump);
    CHECK(dump.str().find("succ=[") != std::string::npos);
    CHECK(dump.str().find('$') != std::string::npos);
}

TEST_CASE("snapshots match the reference model") {
    std::mt19937_64 rng(1234);
    for (int round = 0; round < 6; ++round) {
        PageStore store({8, 512});
        MvTree tree(store, MvConfig::for_capacity(8));
        Model model;
        replay(tree, model, random_ops(rng, 400, 40, round % 2 == 0));
        CHECK(tree.check_invariants().empty());

        for (Timestamp t = 0; t <= tree.last_update() + 1; ++t) {
            auto got = tree.snapshot(t);
            auto want = model.at(t);
            CHECK(std::set<ObjectId>(got.begin(), got.end()) == want);
        }
    }
}

TEST_CASE("point queries match the reference model") {
    std::mt19937_64 rng(99);
    PageStore store({8, 512});
    MvTree tree(store, MvConfig::for_capacity(8));
    Model model;
    replay(tree, model, random_ops(rng, 500, 30, true));

    for (Timestamp t = 0; t <= tree.last_update() + 1; ++t) {
        auto want = model.at(t);
        for (ObjectId key = 0; key < 30; ++key)
            CHECK(tree.point_query(key, t) == (want.count(key) > 0));
    }
}

TEST_CASE("interval scans match the reference model") {
    std::mt19937_64 rng(7);
    PageStore store({8, 512});
    MvTree tree(store, MvConfig::for_capacity(8));
    Model model;
    replay(tree, model, random_ops(rng, 400, 25, false));

    Timestamp last = tree.last_update();
    for (int i = 0; i < 300; ++i) {
        Timestamp t1 = static_cast<Timestamp>(rng() % (last + 2));
        Timestamp t2 = t1 + static_cast<Timestamp>(rng() % 10);
        auto got = tree.interval_scan(t1, t2);
        auto want = model.window(t1, t2);
        CHECK(std::set<ObjectId>(got.begin(), got.end()) == want);
        CHECK(tree.interval_scan(t1, t1) == tree.snapshot(t1));
    }
}

TEST_CASE("key interval queries match the reference model") {
    std::mt19937_64 rng(55);
    PageStore store({8, 512});
    MvTree tree(store, MvConfig::for_capacity(8));
    Model model;
    replay(tree, model, random_ops(rng, 400, 25, true));

    Timestamp last = tree.last_update();
    for (int i = 0; i < 200; ++i) {
        Timestamp t1 = static_cast<Timestamp>(rng() % (last + 2));
        Timestamp t2 = t1 + static_cast<Timestamp>(rng() % 12);
        auto want = model.window(t1, t2);
        for (ObjectId key = 0; key < 25; ++key)
            CHECK(tree.key_interval_query(key, t1, t2) == (want.count(key) > 0));
    }
}

TEST_CASE("interval scan leaf accesses respect the succession bound") {
    std::mt19937_64 rng(21);
    PageStore store({8, 512});
    MvTree tree(store, MvConfig::for_capacity(8));
    Model model;
    replay(tree, model, random_ops(rng, 600, 40, false));

    Timestamp last = tree.last_update();
    for (int i = 0; i < 400; ++i) {
        Timestamp t1 = static_cast<Timestamp>(rng() % (last + 1));
        Timestamp t2 = t1 + static_cast<Timestamp>(rng() % 20);
        ScanTrace trace;
        tree.interval_scan(t1, t2, &trace);
        CHECK(trace.leaves_accessed <=
              trace.initial_leaves + 2 * trace.dead_in_interval);
    }
}

TEST_CASE("history is immutable under further updates") {
    std::mt19937_64 rng(31);
    PageStore store({8, 512});
    MvTree tree(store, MvConfig::for_capacity(8));
    Model model;
    auto ops = random_ops(rng, 500, 30, false);
    std::size_t half = ops.size() / 2;
    replay(tree, model, {ops.begin(), ops.begin() + half});

    Timestamp frozen = tree.last_update();
    std::vector<std::vector<ObjectId>> before;
    for (Timestamp t = 0; t <= frozen; ++t) before.push_back(tree.snapshot(t));

    Model rest_model;
    replay(tree, rest_model, {ops.begin() + half, ops.end()});

    for (Timestamp t = 0; t <= frozen; ++t) CHECK(tree.snapshot(t) == before[t]);
    CHECK(tree.check_invariants().empty());
}

TEST_CASE("full capacity config runs clean") {
    std::mt19937_64 rng(77);
    PageStore store({42, 512});
    MvTree tree(store, MvConfig::for_capacity(42));
    Model model;
    replay(tree, model, random_ops(rng, 3000, 300, true));
    CHECK(tree.check_invariants().empty());

    for (Timestamp t = 0; t <= tree.last_update() + 1; t += 3) {
        auto got = tree.snapshot(t);
        CHECK(std::set<ObjectId>(got.begin(), got.end()) == model.at(t));
    }
}
