#pragma once

namespace codetect {

// Kernels that have a parallel implementation also keep a serial reference
// path. Both must produce identical results.
enum class Exec { serial, parallel };

/// Sets the worker count for parallel kernels; 0 leaves the runtime default.
void set_jobs(int jobs);
int max_jobs();

}  // namespace codetect
