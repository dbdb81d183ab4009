#pragma once

// Row-wise pair sums shared by the particle system and its observables.
// Each row is accumulated in ascending j, so the result does not depend on
// how rows are split across workers.

#include <cstddef>
#include <span>

namespace freefp::detail {

/// Worker cap: FREEFP_THREADS if set and positive, else the hardware count.
unsigned worker_count();

/// out[i] = sum_{j != i} 1/(x_i - x_j). Throws CollisionError on a zero gap
/// (reported against time t).
void interaction_field(std::span<const double> xs, std::span<double> out,
                       double t = 0.0, unsigned workers = 1);

/// Index of the first adjacent pair with a non-positive gap, or xs.size().
std::size_t first_collision(std::span<const double> xs);

} // namespace freefp::detail
