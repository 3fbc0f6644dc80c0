#include "gpm/par.hpp"

namespace gpm::par {

bool& use_parallel() {
  static bool enabled = true;
  return enabled;
}

}  // namespace gpm::par
