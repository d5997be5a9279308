#include "wscub/execution.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace wscub {

namespace {
#ifdef _OPENMP
const int kDefaultThreads = omp_get_max_threads();
#endif
} // namespace

void set_thread_count(int threads) {
#ifdef _OPENMP
    omp_set_num_threads(threads >= 1 ? threads : kDefaultThreads);
#else
    (void)threads;
#endif
}

int thread_count() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

} // namespace wscub
