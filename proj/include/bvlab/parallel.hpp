#pragma once

#include <cstddef>
#include <functional>

namespace bvlab {

// Parallel-map capability handed to the numeric modules. Work items are indexed
// 0..n-1; callers write results into per-index slots and reduce in index order,
// so output never depends on the thread count.
class ParallelMap {
 public:
  // threads == 0 selects std::thread::hardware_concurrency().
  explicit ParallelMap(unsigned threads = 1);

  unsigned threads() const { return threads_; }

  // Runs body(i) for every i in [0, n). Exceptions thrown by body are rethrown
  // on the calling thread (the first one by index wins).
  void for_each(std::size_t n, const std::function<void(std::size_t)>& body) const;

  static const ParallelMap& serial();

 private:
  unsigned threads_;
};

}  // namespace bvlab
