#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <functional>
#include <thread>
#include <vector>

#include "chipfire/divisor.hpp"

namespace chipfire::detail {

/// Streams candidates from `enumerate` in batches, evaluates `keep` on each
/// batch with up to `threads` workers, and returns the kept candidates in
/// enumeration order. With `first_only` the scan stops after the first batch
/// that yields a hit and only that hit is returned.
///
/// `enumerate` receives a sink that returns false when the producer should stop.
inline std::vector<Divisor> ordered_filter(const std::function<void(const std::function<bool(const Divisor&)>&)>& enumerate,
                                           const std::function<bool(const Divisor&)>& keep, unsigned threads,
                                           bool first_only) {
  constexpr std::size_t kBatch = 2048;
  threads = std::max(1u, threads);
  std::vector<Divisor> kept;
  std::vector<Divisor> batch;
  bool done = false;

  auto flush = [&] {
    std::vector<char> verdict(batch.size(), 0);
    if (threads == 1 || batch.size() < 64) {
      for (std::size_t i = 0; i < batch.size(); ++i) verdict[i] = keep(batch[i]);
    } else {
      std::vector<std::exception_ptr> errors(threads);
      std::vector<std::thread> workers;
      for (unsigned t = 0; t < threads; ++t)
        workers.emplace_back([&, t] {
          try {
            for (std::size_t i = t; i < batch.size(); i += threads) verdict[i] = keep(batch[i]);
          } catch (...) {
            errors[t] = std::current_exception();
          }
        });
      for (auto& w : workers) w.join();
      for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    }
    for (std::size_t i = 0; i < batch.size(); ++i)
      if (verdict[i]) {
        kept.push_back(batch[i]);
        if (first_only) {
          done = true;
          break;
        }
      }
    batch.clear();
  };

  enumerate([&](const Divisor& candidate) {
    batch.push_back(candidate);
    if (batch.size() == kBatch) flush();
    return !done;
  });
  if (!done) flush();
  return kept;
}

}  // namespace chipfire::detail
