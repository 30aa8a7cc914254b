#include "metricline/parallel.hpp"

#include <algorithm>
#include <cstdlib>

namespace metricline {

int thread_count() {
    static const int cached = [] {
        int n = 0;
        if (const char* env = std::getenv("METRICLINE_THREADS")) {
            n = std::atoi(env);
        }
        if (n <= 0) n = static_cast<int>(std::thread::hardware_concurrency());
        return std::max(1, n);
    }();
    return cached;
}

} // namespace metricline
