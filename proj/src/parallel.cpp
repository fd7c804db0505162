#include "pulsecool/parallel.hpp"

#include <omp.h>

namespace pulsecool {

int worker_threads() { return omp_get_max_threads(); }

void set_worker_threads(int threads) {
    if (threads >= 1)
        omp_set_num_threads(threads);
}

} // namespace pulsecool
