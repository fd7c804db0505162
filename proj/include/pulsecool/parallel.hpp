#pragma once

#include <cstdint>
#include <exception>
#include <span>
#include <vector>

namespace pulsecool {

/// Number of OpenMP worker threads that parallel_map will use.
int worker_threads();

/// Sets the OpenMP thread count (values < 1 are ignored).
void set_worker_threads(int threads);

/// Applies fn to every input; results keep input order. The first exception
/// thrown by any item is rethrown after all items finish.
template <class In, class Fn>
auto serial_map(std::span<const In> inputs, Fn&& fn) {
    using Out = decltype(fn(inputs[0]));
    std::vector<Out> out;
    out.reserve(inputs.size());
    for (const In& x : inputs)
        out.push_back(fn(x));
    return out;
}

/// OpenMP parallel version of serial_map, one item per dynamic chunk.
template <class In, class Fn>
auto parallel_map(std::span<const In> inputs, Fn&& fn) {
    using Out = decltype(fn(inputs[0]));
    std::vector<Out> out(inputs.size());
    std::vector<std::exception_ptr> errors(inputs.size());
    const auto n = static_cast<std::int64_t>(inputs.size());
#pragma omp parallel for schedule(dynamic, 1)
    for (std::int64_t i = 0; i < n; ++i) {
        const auto k = static_cast<std::size_t>(i);
        try {
            out[k] = fn(inputs[k]);
        } catch (...) {
            errors[k] = std::current_exception();
        }
    }
    for (const auto& e : errors)
        if (e)
            std::rethrow_exception(e);
    return out;
}

} // namespace pulsecool
