#pragma once

namespace surfpoisson {

/// Caps the number of worker threads used by sample sweeps (validate_chart).
/// Clamped to [1, 64]. Default 1 keeps every code path deterministic.
void set_worker_cap(int n);
int worker_cap();

}  // namespace surfpoisson
