#pragma once

#include <functional>

namespace tsptw {

// Fan-out for independent work items. jobs <= 1 runs the plain serial loop
// (the reference path used by the tests); jobs > 1 dispatches over OpenMP
// threads. Results must be written to pre-sized, per-index slots so the two
// paths produce identical output. The first exception thrown by a body is
// re-thrown after the loop completes.
void parallel_for(int count, int jobs, const std::function<void(int)>& body);

// Hardware concurrency, >= 1.
int default_jobs();

}  // namespace tsptw
