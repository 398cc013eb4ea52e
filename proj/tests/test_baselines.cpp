#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "fixtures.hpp"
#include "stpq/baselines.hpp"
#include "stpq/bench.hpp"
#include "stpq/engine.hpp"

using namespace stpq;
using namespace stpq::fixtures;

namespace {

template <class Index>
Index build(PageStore& store, const std::vector<RawEvent>& events) {
    // route directly; tests construct their own indexes
    Grid grid(three_cell_spec());
    Index index = [&] {
        if constexpr (std::is_same_v<Index, PrimitiveIndex>)
            return PrimitiveIndex(store, 1u << 20);
        else
            return ListIndex(store);
    }();
    Router router(grid, [&](const CellId& cell, const CellEvent& ev) {
        index.apply(cell, ev);
    });
    router.route(events);
    index.finish();
    return index;
}

}  // namespace

TEST_CASE("packed records stay dense and charge reads per page") {
    PageStore store({4, 512});
    PackedRecords recs(store, PageKind::ListNode);
    for (ObjectId i = 0; i < 10; ++i)
        recs.insert_at(recs.size(), {i, Timestamp(i), kOpen, 0});
    CHECK(recs.size() == 10);
    CHECK(recs.page_count() == 3);

    store.reset_stats();
    auto all = recs.read_all();
    CHECK(all.size() == 10);
    CHECK(store.stats().reads == 3);  // ceil(10/4)

    recs.insert_at(0, {100, 0, kOpen, 0});
    CHECK(recs.read_all().front().key == 100);
    CHECK(recs.page_count() == 3);  // 11 records still fit in 3 pages
}

TEST_CASE("level index descends in one read per level") {
    PageStore store({4, 512});
    PackedRecords lower(store, PageKind::ListNode);
    std::vector<PageRecord> recs;
    for (ObjectId i = 0; i < 64; ++i) recs.push_back({i * 2, 0, kOpen, 0});
    lower.assign(std::move(recs));
    REQUIRE(lower.page_count() == 16);

    LevelIndex upper(store);
    upper.rebuild(lower);
    CHECK(upper.level_count() == 2);  // 16 separators -> 4 pages -> 1 page

    store.reset_stats();
    CHECK(upper.descend(0) == 0);
    CHECK(store.stats().reads == 2);
    CHECK(upper.descend(25) == 3);   // key 25 falls in page holding 24..30
    CHECK(upper.descend(126) == 15);
    CHECK(upper.descend(999) == 15);
}

TEST_CASE("entries to intervals pairs enters with exits") {
    std::vector<PageRecord> entries{
        {5, 2, kOpen, 0}, {5, 4, kOpen, 1},   // [2,4)
        {5, 4, kOpen, 0},                     // reopened at 4, never exited
        {9, 1, kOpen, 0}, {9, 3, kOpen, 1},
    };
    auto ivs = entries_to_intervals(entries, 5);
    REQUIRE(ivs.size() == 2);
    CHECK(ivs[0] == std::pair<Timestamp, Timestamp>{2, 4});
    CHECK(ivs[1] == std::pair<Timestamp, Timestamp>{4, kOpen});
    CHECK(entries_to_intervals(entries, 9).size() == 1);
    CHECK(entries_to_intervals(entries, 7).empty());
}

TEST_CASE("list index reproduces the worked-example lists") {
    PageStore store({42, 512});
    auto index = build<ListIndex>(store, three_cell_events());

    CHECK(index.list_entries(kC1) == 4);
    CHECK(index.list_entries(kC2) == 8);
    CHECK(index.list_entries(kC3) == 6);
    CHECK(index.pages_total() == 3);

    CHECK(index.eval_predicate(kC2, TemporalConstraint::between(6, 8)) ==
          std::vector<ObjectId>{2});
    CHECK(index.eval_predicate(kC1, TemporalConstraint::instant(7)) ==
          std::vector<ObjectId>{2});
    CHECK(index.eval_predicate(kC3, TemporalConstraint::instant(9)) ==
          std::vector<ObjectId>{2});
    CHECK(index.eval_predicate(kC2, TemporalConstraint::instant(3)) ==
          std::vector<ObjectId>{1, 3});
    CHECK(index.eval_predicate({0, 0}, TemporalConstraint::instant(99)).empty());

    CHECK(index.verify(kC2, 2, TemporalConstraint::between(6, 8)));
    CHECK_FALSE(index.verify(kC2, 1, TemporalConstraint::between(6, 8)));
}

TEST_CASE("list predicate cost is the full list scan") {
    PageStore store({4, 512});  // tiny pages force multi-page lists
    auto index = build<ListIndex>(store, three_cell_events());
    REQUIRE(index.list_entries(kC2) == 8);

    store.reset_stats();
    index.eval_predicate(kC2, TemporalConstraint::instant(3));
    CHECK(store.stats().reads == 2);  // ceil(8/4), independent of output

    store.reset_stats();
    index.eval_predicate(kC2, TemporalConstraint::instant(999));
    CHECK(store.stats().reads == 2);
}

TEST_CASE("list order queries merge enter times") {
    PageStore store({42, 512});
    auto index = build<ListIndex>(store, three_cell_events());

    CHECK(index.eval_order({kC3, kC2}) == std::vector<ObjectId>{2, 3});
    CHECK(index.eval_order({kC2, kC1}) == std::vector<ObjectId>{1});
    CHECK(index.eval_order({kC3, kC1, kC2}) == std::vector<ObjectId>{2});
    CHECK(index.eval_order({kC1, kC1}).empty());  // needs two distinct enters
    CHECK(index.eval_order({kC2, kC2}) == std::vector<ObjectId>{2});
    CHECK_THROWS_AS(index.eval_order({}), std::invalid_argument);

    // one read pass per distinct list
    store.reset_stats();
    index.eval_order({kC3, kC1, kC3});
    CHECK(store.stats().reads == 2);
}

TEST_CASE("primitive index answers match the list index") {
    PageStore store({42, 512});
    auto prim = build<PrimitiveIndex>(store, three_cell_events());
    PageStore store2({42, 512});
    auto list = build<ListIndex>(store2, three_cell_events());

    for (std::uint32_t col = 0; col < 3; ++col) {
        CellId cell{col, 0};
        for (Timestamp t = 0; t <= 12; ++t) {
            CHECK(prim.eval_predicate(cell, TemporalConstraint::instant(t)) ==
                  list.eval_predicate(cell, TemporalConstraint::instant(t)));
            CHECK(prim.eval_predicate(cell, TemporalConstraint::between(t, t + 3)) ==
                  list.eval_predicate(cell, TemporalConstraint::between(t, t + 3)));
            for (ObjectId obj = 1; obj <= 3; ++obj)
                CHECK(prim.verify(cell, obj, TemporalConstraint::between(t, t + 2)) ==
                      list.verify(cell, obj, TemporalConstraint::between(t, t + 2)));
        }
    }
}

TEST_CASE("primitive index matches the oracle on random logs") {
    std::mt19937_64 rng(11);
    for (int round = 0; round < 3; ++round) {
        auto events = random_events(rng, 20, 3, 2, 40);
        Oracle oracle(events);

        PageStore store({8, 512});
        PrimitiveIndex index(store, 1u << 20);
        Grid grid({3, 2, 0, 0, 3, 2});
        Router router(grid, [&](const CellId& cell, const CellEvent& ev) {
            index.apply(cell, ev);
        });
        router.route(events);
        index.finish();

        for (std::uint32_t col = 0; col < 3; ++col)
            for (std::uint32_t row = 0; row < 2; ++row) {
                CellId cell{col, row};
                for (Timestamp t = 0; t <= 42; t += 2) {
                    auto want = oracle.eval_predicate(cell, TemporalConstraint::instant(t));
                    CHECK(index.eval_predicate(cell, TemporalConstraint::instant(t)) == want);
                    auto w2 =
                        oracle.eval_predicate(cell, TemporalConstraint::between(t, t + 5));
                    CHECK(index.eval_predicate(cell, TemporalConstraint::between(t, t + 5)) ==
                          w2);
                }
            }
    }
}

TEST_CASE("primitive event cap refuses oversized logs") {
    PageStore store({42, 512});
    PrimitiveIndex index(store, 3);
    CellId cell{0, 0};
    index.apply(cell, {1, 1, EventKind::Enter});
    index.apply(cell, {2, 2, EventKind::Enter});
    index.apply(cell, {3, 3, EventKind::Enter});
    CHECK_THROWS_AS(index.apply(cell, {4, 4, EventKind::Enter}), DataError);
}

TEST_CASE("structure B snapshots dwarf structure A on a dense cell") {
    PageStore store({42, 512});
    PrimitiveIndex index(store, 1u << 24);
    CellId cell{0, 0};
    // 200 objects enter once; then 300 timestamps of light churn keep
    // copying the big snapshot list
    for (ObjectId obj = 0; obj < 200; ++obj)
        index.apply(cell, {obj, 1, EventKind::Enter});
    for (Timestamp t = 2; t <= 301; ++t) {
        ObjectId obj = 200 + static_cast<ObjectId>(t);
        index.apply(cell, {obj, t, EventKind::Enter});
    }
    index.finish();
    CHECK(index.structure_b_pages() >= 10 * index.structure_a_pages());
}
