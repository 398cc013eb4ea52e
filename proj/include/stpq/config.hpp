#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "stpq/grid.hpp"
#include "stpq/mvindex.hpp"
#include "stpq/pagestore.hpp"

namespace stpq {

// Workload generator parameters plus the knobs shared by build and bench.
struct GenConfig {
    std::uint64_t seed = 1;
    std::size_t num_objects = 10000;
    double universe_miles = 1000.0;
    GridSpec grid;
    Timestamp duration = 500;
    double velocity_max = 50.0;
    double zipf_skew = 1.0;
    std::size_t query_count = 200;
    std::size_t order_query_count = 50;
    std::size_t predicates_per_query_max = 10;
    std::size_t target_output_lo = 5;
    std::size_t target_output_hi = 500;
    double instant_fraction = 0.75;     // remaining queries use intervals
    Timestamp interval_len_max = 3;
    double heading_sigma = 0.4;         // per-step heading drift, radians
    double density_skew = 0.0;          // 0 = uniform starts, >0 clusters them
    std::uint64_t primitive_max_events = 2000000;

    void validate() const;
};

struct Config {
    StoreConfig store;
    mv::MvConfig mv = mv::MvConfig::for_capacity(42);
    GenConfig gen;
};

// Flat `key = value` file, '#' comments. Unknown keys are an error.
Config load_config(const std::string& path);
Config parse_config(const std::string& text);
std::string default_config_text();

}  // namespace stpq
