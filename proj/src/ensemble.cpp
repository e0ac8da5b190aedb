#include "jcir/ensemble.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace jcir {

int ensemble_threads() noexcept {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace jcir
