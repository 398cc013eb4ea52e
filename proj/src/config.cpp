#include "stpq/config.hpp"

#include <fstream>
#include <sstream>

namespace stpq {

void GenConfig::validate() const {
    if (num_objects == 0 && query_count > 0)
        throw std::invalid_argument("config: queries requested for zero objects");
    if (universe_miles <= 0) throw std::invalid_argument("config: universe_miles <= 0");
    if (duration < 1) throw std::invalid_argument("config: duration < 1");
    if (velocity_max < 0) throw std::invalid_argument("config: velocity_max < 0");
    if (zipf_skew <= 0) throw std::invalid_argument("config: zipf_skew <= 0");
    if (target_output_lo > target_output_hi)
        throw std::invalid_argument("config: target_output range inverted");
    if (predicates_per_query_max < 1)
        throw std::invalid_argument("config: predicates_per_query_max < 1");
    if (instant_fraction < 0 || instant_fraction > 1)
        throw std::invalid_argument("config: instant_fraction outside [0,1]");
    if (density_skew < 0) throw std::invalid_argument("config: density_skew < 0");
    grid.validate();
}

namespace {

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

}  // namespace

Config parse_config(const std::string& text) {
    std::map<std::string, std::string> kv;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ParseError("config line " + std::to_string(lineno) +
                             ": expected key = value");
        kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }

    Config cfg;
    auto geti = [&](const std::string& key, auto def) {
        auto it = kv.find(key);
        if (it == kv.end()) return def;
        try {
            return static_cast<decltype(def)>(std::stoll(it->second));
        } catch (const std::exception&) {
            throw ParseError("config: bad integer for '" + key + "': " + it->second);
        }
    };
    auto getf = [&](const std::string& key, double def) {
        auto it = kv.find(key);
        if (it == kv.end()) return def;
        try {
            return std::stod(it->second);
        } catch (const std::exception&) {
            throw ParseError("config: bad number for '" + key + "': " + it->second);
        }
    };

    cfg.store.page_size_bytes = geti("page_size_bytes", cfg.store.page_size_bytes);
    cfg.store.record_capacity = geti("record_capacity", cfg.store.record_capacity);
    cfg.mv = mv::MvConfig::for_capacity(cfg.store.record_capacity);
    cfg.mv.d = geti("d", cfg.mv.d);
    cfg.mv.split_low = geti("split_low", cfg.mv.split_low);
    cfg.mv.split_high = geti("split_high", cfg.mv.split_high);

    GenConfig& g = cfg.gen;
    g.seed = geti("seed", g.seed);
    g.num_objects = geti("num_objects", g.num_objects);
    g.universe_miles = getf("universe_miles", g.universe_miles);
    g.grid.width_cells = geti("width_cells", g.grid.width_cells);
    g.grid.height_cells = geti("height_cells", g.grid.height_cells);
    g.grid.min_x = 0;
    g.grid.min_y = 0;
    g.grid.max_x = g.universe_miles;
    g.grid.max_y = g.universe_miles;
    g.duration = geti("duration", g.duration);
    g.velocity_max = getf("velocity_max", g.velocity_max);
    g.zipf_skew = getf("zipf_skew", g.zipf_skew);
    g.query_count = geti("query_count", g.query_count);
    g.order_query_count = geti("order_query_count", g.order_query_count);
    g.predicates_per_query_max =
        geti("predicates_per_query_max", g.predicates_per_query_max);
    g.target_output_lo = geti("target_output_lo", g.target_output_lo);
    g.target_output_hi = geti("target_output_hi", g.target_output_hi);
    g.instant_fraction = getf("instant_fraction", g.instant_fraction);
    g.interval_len_max = geti("interval_len_max", g.interval_len_max);
    g.heading_sigma = getf("heading_sigma", g.heading_sigma);
    g.density_skew = getf("density_skew", g.density_skew);
    g.primitive_max_events = geti("primitive_max_events", g.primitive_max_events);

    static const char* known[] = {
        "page_size_bytes", "record_capacity", "d", "split_low", "split_high",
        "seed", "num_objects", "universe_miles", "width_cells", "height_cells",
        "duration", "velocity_max", "zipf_skew", "query_count", "order_query_count",
        "predicates_per_query_max", "target_output_lo", "target_output_hi",
        "instant_fraction", "interval_len_max", "heading_sigma", "density_skew",
        "primitive_max_events"};
    for (const auto& [key, value] : kv) {
        bool ok = false;
        for (const char* k : known)
            if (key == k) ok = true;
        if (!ok) throw ParseError("config: unknown key '" + key + "'");
    }

    cfg.mv.b = cfg.store.record_capacity;
    cfg.mv.validate();
    g.validate();
    return cfg;
}

Config load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("config: cannot open " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

std::string default_config_text() {
    Config cfg;
    std::ostringstream os;
    os << "# workload and index configuration\n"
       << "page_size_bytes = " << cfg.store.page_size_bytes << "\n"
       << "record_capacity = " << cfg.store.record_capacity << "\n"
       << "d = " << cfg.mv.d << "\n"
       << "split_low = " << cfg.mv.split_low << "\n"
       << "split_high = " << cfg.mv.split_high << "\n"
       << "seed = " << cfg.gen.seed << "\n"
       << "num_objects = " << cfg.gen.num_objects << "\n"
       << "universe_miles = " << cfg.gen.universe_miles << "\n"
       << "width_cells = " << cfg.gen.grid.width_cells << "\n"
       << "height_cells = " << cfg.gen.grid.height_cells << "\n"
       << "duration = " << cfg.gen.duration << "\n"
       << "velocity_max = " << cfg.gen.velocity_max << "\n"
       << "zipf_skew = " << cfg.gen.zipf_skew << "\n"
       << "query_count = " << cfg.gen.query_count << "\n"
       << "order_query_count = " << cfg.gen.order_query_count << "\n"
       << "predicates_per_query_max = " << cfg.gen.predicates_per_query_max << "\n"
       << "target_output_lo = " << cfg.gen.target_output_lo << "\n"
       << "target_output_hi = " << cfg.gen.target_output_hi << "\n"
       << "instant_fraction = " << cfg.gen.instant_fraction << "\n"
       << "interval_len_max = " << cfg.gen.interval_len_max << "\n"
       << "heading_sigma = " << cfg.gen.heading_sigma << "\n"
       << "density_skew = " << cfg.gen.density_skew << "\n"
       << "primitive_max_events = " << cfg.gen.primitive_max_events << "\n";
    return os.str();
}

}  // namespace stpq
