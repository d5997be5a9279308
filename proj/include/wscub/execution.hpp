#pragma once

namespace wscub {

/// Selects the OpenMP path or the single-threaded reference path of a kernel.
/// Both produce bit-identical results.
enum class Execution { parallel, serial };

/// Caps the OpenMP worker count; values < 1 restore the runtime default.
void set_thread_count(int threads);

/// Worker count the parallel paths will use.
int thread_count();

} // namespace wscub
