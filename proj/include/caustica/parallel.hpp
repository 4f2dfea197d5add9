#pragma once

// Thread-count policy for the OpenMP kernels. CAUSTICA_THREADS, when set to a
// positive integer, caps the team size; otherwise the OpenMP default is used.

namespace caustica {

int max_threads();

}  // namespace caustica
