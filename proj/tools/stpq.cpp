#include <fstream>
#include <iostream>
#include <set>

#include <CLI11.hpp>

#include "stpq/bench.hpp"
#include "stpq/datagen.hpp"
#include "stpq/io_formats.hpp"

namespace {

using namespace stpq;

Config load_or_default(const std::string& path) {
    if (path.empty()) return parse_config(default_config_text());
    return load_config(path);
}

std::ofstream open_out(const std::string& path) {
    std::ofstream os(path);
    if (!os) throw ParseError("cannot open " + path + " for writing");
    return os;
}

int cmd_generate(const Config& cfg, const std::string& out_dir) {
    auto log = generate_trajectories(cfg.gen);
    std::uint64_t misses = 0;
    auto queries = generate_queries(cfg.gen, log, &misses);

    write_event_log_file(out_dir + "/events.csv", log);
    {
        auto os = open_out(out_dir + "/queries.txt");
        write_queries(os, queries);
    }

    std::set<std::pair<std::uint32_t, std::uint32_t>> cells;
    for (const auto& ev : log) cells.insert({ev.cell.col, ev.cell.row});
    std::cout << "objects=" << cfg.gen.num_objects << " events=" << log.size()
              << " cells_touched=" << cells.size() << " queries=" << queries.size()
              << " off_target=" << misses << '\n';
    std::cout << "wrote " << out_dir << "/events.csv and " << out_dir
              << "/queries.txt\n";
    return 0;
}

int cmd_build(const Config& cfg, const std::string& backend,
              const std::string& log_path) {
    auto log = read_event_log_file(log_path);
    PageStore store(cfg.store);
    auto index = make_backend(backend, store, cfg);
    Grid grid(cfg.gen.grid);
    build_index(*index, grid, log);

    std::set<std::pair<std::uint32_t, std::uint32_t>> cells;
    for (const auto& ev : log) cells.insert({ev.cell.col, ev.cell.row});
    std::cout << "backend=" << index->name() << " events=" << log.size()
              << " cells=" << cells.size() << " pages_total=" << index->pages_total()
              << " reads=" << store.stats().reads
              << " writes=" << store.stats().writes << '\n';
    return 0;
}

int cmd_query(const Config& cfg, const std::string& backend,
              const std::string& log_path, const std::string& query_path) {
    auto log = read_event_log_file(log_path);
    auto queries = read_queries_file(query_path);

    PageStore store(cfg.store);
    auto index = make_backend(backend, store, cfg);
    Grid grid(cfg.gen.grid);
    build_index(*index, grid, log);

    Engine engine(*index, store, &log);
    for (const auto& q : queries) {
        store.reset_stats();
        auto result = engine.eval(q);
        std::cout << format_result(result, store.stats().reads) << '\n';
    }
    return 0;
}

int cmd_bench(const Config& cfg, const std::string& out_dir) {
    std::cout << "generating workload...\n";
    auto log = generate_trajectories(cfg.gen);
    auto queries = generate_queries(cfg.gen, log);
    std::cout << "events=" << log.size() << " queries=" << queries.size() << '\n';

    std::vector<BackendRun> runs;
    for (const char* backend : {"list", "primitive", "advanced"}) {
        std::cout << "running backend " << backend << "...\n";
        runs.push_back(run_backend(backend, cfg, log, queries));
        const auto& run = runs.back();
        std::uint64_t reads = 0;
        for (const auto& row : run.rows) reads += row.reads;
        std::cout << "  pages_total=" << run.pages_total << " build_writes="
                  << run.build_writes << " mean_query_reads="
                  << (run.rows.empty() ? 0.0 : double(reads) / double(run.rows.size()))
                  << '\n';
    }

    std::vector<BenchRow> rows;
    for (const auto& run : runs)
        rows.insert(rows.end(), run.rows.begin(), run.rows.end());
    {
        auto os = open_out(out_dir + "/bench.csv");
        write_bench_csv(os, rows);
    }
    {
        auto os = open_out(out_dir + "/space.csv");
        write_space_csv(os, runs);
    }
    {
        auto os = open_out(out_dir + "/plot_bench.py");
        os << plot_script_text();
    }
    std::cout << "wrote " << out_dir << "/bench.csv, space.csv, plot_bench.py\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Grid-partitioned spatiotemporal index benchmark tool"};
    app.require_subcommand(1);

    std::string config_path;
    std::string backend = "advanced";
    std::string out_dir = ".";
    std::string log_path = "events.csv";
    std::string query_path = "queries.txt";
    std::int64_t seed = -1;

    app.add_option("--config", config_path, "config file (flat key = value)");
    app.add_option("--seed", seed, "override the config seed");

    auto* gen = app.add_subcommand("generate", "write event log + query workload");
    gen->add_option("--out", out_dir, "output directory");

    auto* build = app.add_subcommand("build", "replay an event log into a backend");
    build->add_option("--backend", backend, "list|primitive|advanced");
    build->add_option("--log", log_path, "event log CSV");

    auto* query = app.add_subcommand("query", "run a query file against a backend");
    query->add_option("--backend", backend, "list|primitive|advanced");
    query->add_option("--log", log_path, "event log CSV");
    query->add_option("--queries", query_path, "query file");

    auto* bench = app.add_subcommand("bench", "full generate/build/query comparison");
    bench->add_option("--out", out_dir, "output directory");

    auto* defaults = app.add_subcommand("default-config", "print the default config");

    CLI11_PARSE(app, argc, argv);

    try {
        stpq::Config cfg = load_or_default(config_path);
        if (seed >= 0) cfg.gen.seed = static_cast<std::uint64_t>(seed);
        if (gen->parsed()) return cmd_generate(cfg, out_dir);
        if (build->parsed()) return cmd_build(cfg, backend, log_path);
        if (query->parsed()) return cmd_query(cfg, backend, log_path, query_path);
        if (bench->parsed()) return cmd_bench(cfg, out_dir);
        if (defaults->parsed()) {
            std::cout << stpq::default_config_text();
            return 0;
        }
    } catch (const stpq::ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const stpq::DataError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
