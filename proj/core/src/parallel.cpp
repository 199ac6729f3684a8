#include "surfpoisson/parallel.hpp"

#include <algorithm>
#include <atomic>

namespace surfpoisson {

namespace {
std::atomic<int> g_worker_cap{1};
}

void set_worker_cap(int n) { g_worker_cap.store(std::clamp(n, 1, 64)); }

int worker_cap() { return g_worker_cap.load(); }

}  // namespace surfpoisson
