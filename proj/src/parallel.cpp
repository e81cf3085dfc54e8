#include "corrtwo/parallel.hpp"

#include <cstdlib>

#include "corrtwo/numfmt.hpp"

namespace corrtwo {

unsigned default_workers() {
  if (const char* env = std::getenv("CORRTWO_WORKERS")) {
    if (auto v = parse_real(env); v && *v >= 1 && *v == static_cast<unsigned>(*v))
      return static_cast<unsigned>(*v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

std::vector<Block> partition(std::size_t count, unsigned workers) {
  std::vector<Block> blocks;
  if (count == 0) return blocks;
  const std::size_t parts = std::min<std::size_t>(std::max(1u, workers), count);
  const std::size_t base = count / parts, extra = count % parts;
  std::size_t begin = 0;
  for (std::size_t k = 0; k < parts; ++k) {
    const std::size_t len = base + (k < extra ? 1 : 0);
    blocks.push_back({begin, begin + len});
    begin += len;
  }
  return blocks;
}

}  // namespace corrtwo
