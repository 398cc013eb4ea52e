#include "stpq/datagen.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "stpq/engine.hpp"

namespace stpq {

std::vector<double> zipf_speed_weights(double skew) {
    std::vector<double> weights(51);
    for (std::size_t i = 0; i < weights.size(); ++i)
        weights[i] = 1.0 / std::pow(double(i + 1), skew);
    return weights;
}

std::vector<RawEvent> generate_trajectories(const GenConfig& cfg,
                                            std::vector<TrajectoryPoint>* points) {
    cfg.validate();
    Grid grid(cfg.grid);
    const auto weights = zipf_speed_weights(cfg.zipf_skew);

    std::vector<RawEvent> events;
    for (std::size_t obj = 0; obj < cfg.num_objects; ++obj) {
        std::seed_seq seq{static_cast<unsigned>(cfg.seed),
                          static_cast<unsigned>(cfg.seed >> 32),
                          static_cast<unsigned>(obj), 0x6d6f7665u};
        std::mt19937_64 rng(seq);
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        std::discrete_distribution<int> speed_bucket(weights.begin(), weights.end());
        std::normal_distribution<double> drift(0.0, cfg.heading_sigma);

        // density_skew > 0 piles start positions towards the origin corner,
        // so cell populations span a wide range instead of being uniform
        double ux = std::pow(unit(rng), 1.0 + cfg.density_skew);
        double uy = std::pow(unit(rng), 1.0 + cfg.density_skew);
        double x = cfg.grid.min_x + ux * (cfg.grid.max_x - cfg.grid.min_x);
        double y = cfg.grid.min_y + uy * (cfg.grid.max_y - cfg.grid.min_y);
        double heading = unit(rng) * 2.0 * std::numbers::pi;

        std::vector<Sample> samples;
        samples.reserve(static_cast<std::size_t>(cfg.duration));
        for (Timestamp t = 1; t <= cfg.duration; ++t) {
            samples.push_back({t, x, y});
            if (points) points->push_back({t, static_cast<ObjectId>(obj), x, y});
            double speed = cfg.velocity_max * double(speed_bucket(rng)) / 50.0;
            heading += drift(rng);
            x += speed * std::cos(heading);
            y += speed * std::sin(heading);
            // reflect off the universe boundary
            if (x < cfg.grid.min_x) {
                x = 2 * cfg.grid.min_x - x;
                heading = std::numbers::pi - heading;
            } else if (x >= cfg.grid.max_x) {
                x = 2 * cfg.grid.max_x - x - 1e-9;
                heading = std::numbers::pi - heading;
            }
            if (y < cfg.grid.min_y) {
                y = 2 * cfg.grid.min_y - y;
                heading = -heading;
            } else if (y >= cfg.grid.max_y) {
                y = 2 * cfg.grid.max_y - y - 1e-9;
                heading = -heading;
            }
            x = std::clamp(x, cfg.grid.min_x, std::nextafter(cfg.grid.max_x, cfg.grid.min_x));
            y = std::clamp(y, cfg.grid.min_y, std::nextafter(cfg.grid.max_y, cfg.grid.min_y));
        }
        auto obj_events = grid.samples_to_events(static_cast<ObjectId>(obj), samples);
        events.insert(events.end(), obj_events.begin(), obj_events.end());
    }
    sort_events(events);
    return events;
}

std::vector<StpQuery> generate_queries(const GenConfig& cfg,
                                       const std::vector<RawEvent>& log,
                                       std::uint64_t* misses) {
    cfg.validate();
    Oracle oracle(log);

    // enter events grouped per object, in time order
    std::map<ObjectId, std::vector<std::pair<Timestamp, CellId>>> journeys;
    for (const auto& ev : log)
        if (ev.kind == EventKind::Enter) journeys[ev.object].emplace_back(ev.t, ev.cell);
    std::vector<ObjectId> with_journey;
    for (const auto& [obj, js] : journeys) with_journey.push_back(obj);

    std::seed_seq seq{static_cast<unsigned>(cfg.seed),
                      static_cast<unsigned>(cfg.seed >> 32), 0x71727965u};
    std::mt19937_64 rng(seq);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    std::vector<StpQuery> queries;
    std::uint64_t kept_off_target = 0;
    if (with_journey.empty()) {
        if (misses) *misses = 0;
        return queries;
    }

    auto make_query = [&](QueryVariant variant) {
        const auto& journey =
            journeys[with_journey[rng() % with_journey.size()]];
        std::size_t want = 1 + rng() % cfg.predicates_per_query_max;
        want = std::min(want, journey.size());
        // a sorted random subsequence of the journey keeps predicates satisfiable
        std::vector<std::size_t> picks;
        for (std::size_t i = 0; i < journey.size(); ++i) picks.push_back(i);
        std::shuffle(picks.begin(), picks.end(), rng);
        picks.resize(want);
        std::sort(picks.begin(), picks.end());

        StpQuery q;
        q.variant = variant;
        for (std::size_t idx : picks) {
            Predicate p;
            p.cell = journey[idx].second;
            if (variant == QueryVariant::WithTime) {
                Timestamp t = journey[idx].first;
                if (unit(rng) < cfg.instant_fraction || cfg.interval_len_max == 0) {
                    p.constraint = TemporalConstraint::instant(t);
                } else {
                    Timestamp len = 1 + static_cast<Timestamp>(
                                            rng() % static_cast<std::uint64_t>(
                                                        cfg.interval_len_max));
                    p.constraint = TemporalConstraint::between(
                        t, std::min(t + len, cfg.duration));
                }
            }
            q.predicates.push_back(p);
        }
        return q;
    };

    auto fill = [&](QueryVariant variant, std::size_t count) {
        for (std::size_t i = 0; i < count; ++i) {
            StpQuery best;
            bool have = false;
            for (int attempt = 0; attempt < 60; ++attempt) {
                StpQuery q = make_query(variant);
                std::size_t size = oracle.eval(q).size();
                if (size >= cfg.target_output_lo && size <= cfg.target_output_hi) {
                    best = q;
                    have = true;
                    break;
                }
                if (!have || attempt == 0) best = q;
            }
            if (!have) ++kept_off_target;
            queries.push_back(best);
        }
    };
    fill(QueryVariant::WithTime, cfg.query_count);
    fill(QueryVariant::WithOrder, cfg.order_query_count);
    if (misses) *misses = kept_off_target;
    return queries;
}

}  // namespace stpq
