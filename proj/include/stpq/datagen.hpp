#pragma once

#include "stpq/config.hpp"
#include "stpq/io_formats.hpp"

namespace stpq {

// Synthetic moving objects: uniform start positions, smoothly drifting
// headings, per-step speeds zipf-skewed towards 0, reflected at the universe
// boundary. Fully deterministic per (seed, config); each object draws from
// its own sub-seeded generator.
std::vector<RawEvent> generate_trajectories(const GenConfig& cfg,
                                            std::vector<TrajectoryPoint>* points = nullptr);

// Query workload anchored on generated journeys; rejection-sampled so the
// oracle output size lands in [target_output_lo, target_output_hi] where
// possible. `misses` counts queries kept best-effort outside the range.
std::vector<StpQuery> generate_queries(const GenConfig& cfg,
                                       const std::vector<RawEvent>& log,
                                       std::uint64_t* misses = nullptr);

// Speed buckets 0..50 with P(i) proportional to 1/(i+1)^skew.
std::vector<double> zipf_speed_weights(double skew);

}  // namespace stpq
