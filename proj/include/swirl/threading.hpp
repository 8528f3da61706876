#pragma once

namespace swirl {

/// Set the OpenMP thread count (no-op in serial builds).  All reductions use
/// fixed per-row partial sums combined in index order, so results are
/// bitwise independent of the thread count.
void set_threads(int n);
int max_threads();

} // namespace swirl
