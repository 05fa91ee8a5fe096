#pragma once

namespace sparsecut {

/// Number of OpenMP threads used by the parallel kernels. 0 restores the
/// runtime default. Without OpenMP this is a no-op and worker_count() is 1.
void set_worker_count(int workers);
int worker_count();

/// Selects between the OpenMP kernel and the serial reference kernel.
enum class Execution { parallel, serial };

}  // namespace sparsecut
