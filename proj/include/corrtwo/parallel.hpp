#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace corrtwo {

/// Worker count used when the caller does not choose one: the
/// CORRTWO_WORKERS environment variable if set, else the hardware thread
/// count.
unsigned default_workers();

/// Half-open index range handed to one worker.
struct Block {
  std::size_t begin = 0;
  std::size_t end = 0;
};

/// Splits [0, count) into at most `workers` contiguous blocks whose sizes
/// differ by at most one. The split depends only on (count, workers).
std::vector<Block> partition(std::size_t count, unsigned workers);

/// Runs fn(Block) for every block of partition(count, workers). With one
/// worker (or one block) everything runs on the calling thread. The first
/// exception thrown by any block is rethrown after all threads have joined.
template <typename Fn>
void for_each_block(std::size_t count, unsigned workers, Fn&& fn) {
  const auto blocks = partition(count, workers);
  if (blocks.size() <= 1) {
    for (const Block& b : blocks) fn(b);
    return;
  }
  std::vector<std::exception_ptr> errors(blocks.size());
  {
    std::vector<std::jthread> threads;
    threads.reserve(blocks.size() - 1);
    for (std::size_t k = 1; k < blocks.size(); ++k) {
      threads.emplace_back([&, k] {
        try {
          fn(blocks[k]);
        } catch (...) {
          errors[k] = std::current_exception();
        }
      });
    }
    try {
      fn(blocks[0]);
    } catch (...) {
      errors[0] = std::current_exception();
    }
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace corrtwo
