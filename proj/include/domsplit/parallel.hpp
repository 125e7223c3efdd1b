#pragma once

#include <cstddef>

namespace domsplit {

// Orbit-level kernels come in two flavours: a plain loop kept as the
// reference, and an OpenMP loop. Both write per-orbit results into indexed
// slots and reduce serially, so their outputs are bitwise identical.
enum class Execution { Serial, Parallel };

// 0 leaves the OpenMP default in place.
void set_thread_count(int threads);
int thread_count();

}  // namespace domsplit
