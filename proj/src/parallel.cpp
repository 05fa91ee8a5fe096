#include "sparsecut/parallel.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace sparsecut {

#ifdef _OPENMP
namespace {
const int default_workers = omp_get_max_threads();
}

void set_worker_count(int workers) { omp_set_num_threads(workers > 0 ? workers : default_workers); }
int worker_count() { return omp_get_max_threads(); }
#else
void set_worker_count(int) {}
int worker_count() { return 1; }
#endif

}  // namespace sparsecut
