#include "omega/params.hpp"

#include "omega/error.hpp"

namespace omega {

void HorizonParams::validate() const {
  if (rows < 1) fail(ErrorKind::InvalidSpec, "rows must be >= 1");
  if (N < rows) fail(ErrorKind::InvalidSpec, "N must be >= rows");
  if (eps <= 0) fail(ErrorKind::InvalidSpec, "eps must be positive");
  if (recurrence <= 0 || recurrence > 1)
    fail(ErrorKind::InvalidSpec, "recurrence must lie in (0,1]");
}

std::uint64_t HorizonParams::sample_point(std::uint64_t i) const {
  // (i+1)*N/rows - 1, computed without overflow for the supported ranges.
  return static_cast<std::uint64_t>(
             (static_cast<unsigned __int128>(i + 1) * N) / rows) -
         1;
}

}  // namespace omega
