#include "tsptw/parallel.hpp"

#include <exception>
#include <thread>

#ifdef TSPTW_HAVE_OPENMP
#include <omp.h>
#endif

namespace tsptw {

int default_jobs() {
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

void parallel_for(int count, int jobs, const std::function<void(int)>& body) {
  if (jobs <= 1) {
    for (int i = 0; i < count; ++i) body(i);
    return;
  }

#ifdef TSPTW_HAVE_OPENMP
  std::exception_ptr failure = nullptr;
#pragma omp parallel for num_threads(jobs) schedule(dynamic, 1)
  for (int i = 0; i < count; ++i) {
    try {
      body(i);
    } catch (...) {
#pragma omp critical(tsptw_parallel_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
#else
  for (int i = 0; i < count; ++i) body(i);
#endif
}

}  // namespace tsptw
