#include "caustica/parallel.hpp"

#include <omp.h>

#include <algorithm>
#include <cstdlib>

namespace caustica {

int max_threads() {
  int n = omp_get_max_threads();
  if (const char* env = std::getenv("CAUSTICA_THREADS")) {
    char* end = nullptr;
    long cap = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && cap > 0) n = std::min<long>(n, cap);
  }
  return std::max(1, n);
}

}  // namespace caustica
