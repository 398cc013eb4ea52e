#pragma once

#include <memory>

#include "stpq/baselines.hpp"
#include "stpq/config.hpp"
#include "stpq/engine.hpp"

namespace stpq {

struct BenchRow {
    std::string backend;
    std::size_t query_id = 0;
    std::size_t output_size = 0;
    std::uint64_t reads = 0;
    std::uint64_t writes = 0;
    std::size_t pages_total = 0;
};

struct BackendRun {
    std::string backend;
    std::unique_ptr<PageStore> store;
    std::unique_ptr<CellIndex> index;
    std::uint64_t build_reads = 0;
    std::uint64_t build_writes = 0;
    std::size_t pages_total = 0;
    std::vector<BenchRow> rows;             // one per WithTime query
    std::vector<QueryTrace> traces;         // parallel to rows
    std::vector<std::vector<ObjectId>> results;
};

std::unique_ptr<CellIndex> make_backend(const std::string& name, PageStore& store,
                                        const Config& cfg);

// Replays a time-ordered event log through the backend, enforcing the
// per-cell alternation invariant.
void build_index(CellIndex& index, const Grid& grid,
                 const std::vector<RawEvent>& log);

// Build + query one backend; IoStats are reset per query so rows carry
// query cost only.
BackendRun run_backend(const std::string& name, const Config& cfg,
                       const std::vector<RawEvent>& log,
                       const std::vector<StpQuery>& queries);

void write_bench_csv(std::ostream& os, const std::vector<BenchRow>& rows);
void write_space_csv(std::ostream& os, const std::vector<BackendRun>& runs);
std::string plot_script_text();

}  // namespace stpq
