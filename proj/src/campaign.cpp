#include "qot/campaign.hpp"

namespace qot {

std::string_view to_string(Execution e) { return e == Execution::serial ? "serial" : "parallel"; }

int available_workers() {
#ifdef QOT_HAVE_OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace qot
