#pragma once

namespace ltpc {

/// Scheduling of embarrassingly parallel kernels. Every item writes its own
/// result slot, so Serial and Parallel produce bit-identical output; Serial is
/// kept as the reference implementation for tests and benchmarks.
enum class ExecutionPolicy { Serial, Parallel };

} // namespace ltpc
