#include "stpq/bench.hpp"

#include <algorithm>
#include <ostream>

namespace stpq {

std::unique_ptr<CellIndex> make_backend(const std::string& name, PageStore& store,
                                        const Config& cfg) {
    if (name == "list") return std::make_unique<ListIndex>(store);
    if (name == "primitive")
        return std::make_unique<PrimitiveIndex>(store, cfg.gen.primitive_max_events);
    if (name == "advanced") return std::make_unique<AdvancedIndex>(store, cfg.mv);
    throw std::invalid_argument("unknown backend: " + name);
}

void build_index(CellIndex& index, const Grid& grid,
                 const std::vector<RawEvent>& log) {
    Router router(grid, [&](const CellId& cell, const CellEvent& ev) {
        index.apply(cell, ev);
    });
    router.route(log);
    index.finish();
}

BackendRun run_backend(const std::string& name, const Config& cfg,
                       const std::vector<RawEvent>& log,
                       const std::vector<StpQuery>& queries) {
    BackendRun run;
    run.backend = name;
    run.store = std::make_unique<PageStore>(cfg.store);
    run.index = make_backend(name, *run.store, cfg);

    Grid grid(cfg.gen.grid);
    build_index(*run.index, grid, log);
    run.build_reads = run.store->stats().reads;
    run.build_writes = run.store->stats().writes;
    run.pages_total = run.index->pages_total();

    Engine engine(*run.index, *run.store, &log);
    std::size_t query_id = 0;
    for (const auto& q : queries) {
        if (q.variant != QueryVariant::WithTime) continue;
        run.store->reset_stats();
        QueryTrace trace;
        auto result = engine.eval(q, &trace);

        BenchRow row;
        row.backend = name;
        row.query_id = query_id++;
        row.output_size = result.size();
        row.reads = run.store->stats().reads;
        row.writes = run.store->stats().writes;
        row.pages_total = run.pages_total;
        run.rows.push_back(row);
        run.traces.push_back(trace);
        run.results.push_back(std::move(result));
    }
    run.store->reset_stats();
    return run;
}

void write_bench_csv(std::ostream& os, const std::vector<BenchRow>& rows) {
    auto sorted = rows;
    std::stable_sort(sorted.begin(), sorted.end(),
                     [](const BenchRow& a, const BenchRow& b) {
                         return a.output_size < b.output_size;
                     });
    os << "backend,query_id,output_size,reads,writes,pages_total\n";
    for (const auto& r : sorted)
        os << r.backend << ',' << r.query_id << ',' << r.output_size << ','
           << r.reads << ',' << r.writes << ',' << r.pages_total << '\n';
}

void write_space_csv(std::ostream& os, const std::vector<BackendRun>& runs) {
    os << "backend,pages_total,structure_a_pages,structure_b_pages\n";
    for (const auto& run : runs) {
        std::size_t a = 0;
        std::size_t b = 0;
        if (auto* prim = dynamic_cast<const PrimitiveIndex*>(run.index.get())) {
            a = prim->structure_a_pages();
            b = prim->structure_b_pages();
        }
        os << run.backend << ',' << run.pages_total << ',' << a << ',' << b << '\n';
    }
}

std::string plot_script_text() {
    return R"(#!/usr/bin/env python3
"""Plots query cost vs output size and index size from the bench CSVs."""
import csv
import sys
from collections import defaultdict

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt

bench_csv = sys.argv[1] if len(sys.argv) > 1 else "bench.csv"
space_csv = sys.argv[2] if len(sys.argv) > 2 else "space.csv"

series = defaultdict(lambda: ([], []))
with open(bench_csv) as f:
    for row in csv.DictReader(f):
        xs, ys = series[row["backend"]]
        xs.append(int(row["output_size"]))
        ys.append(int(row["reads"]))

fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(11, 4))
for backend, (xs, ys) in sorted(series.items()):
    ax1.scatter(xs, ys, s=12, label=backend, alpha=0.7)
ax1.set_xlabel("query output size")
ax1.set_ylabel("page reads")
ax1.set_yscale("log")
ax1.legend()
ax1.set_title("query cost")

names, sizes = [], []
with open(space_csv) as f:
    for row in csv.DictReader(f):
        names.append(row["backend"])
        sizes.append(int(row["pages_total"]))
ax2.bar(names, sizes)
ax2.set_ylabel("pages")
ax2.set_yscale("log")
ax2.set_title("index size")

fig.tight_layout()
out = "bench.png"
fig.savefig(out, dpi=150)
print(f"wrote {out}")
)";
}

}  // namespace stpq
