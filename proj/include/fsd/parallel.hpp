#pragma once

#if defined(_OPENMP)
#include <omp.h>
#endif

namespace fsd::par {

inline bool compiled_with_openmp() {
#if defined(_OPENMP)
  return true;
#else
  return false;
#endif
}

inline int max_threads() {
#if defined(_OPENMP)
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace fsd::par
