#pragma once

#include <cstddef>
#include <functional>

namespace cpmedium::detail {

/// Runs body(i) for i in [0, n) on up to worker_count() threads. Exceptions
/// are collected per index and the one with the lowest index is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace cpmedium::detail
