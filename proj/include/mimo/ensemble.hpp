#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace mimo::ensemble {

template <typename Result>
struct TrialOutcome {
    std::optional<Result> value;
    std::string error;  // nonempty when the trial threw
};

// OpenMP map over trial indices [first, first + count). Each outcome lands in
// its own slot, so any later reduction walks slots in trial order and the
// aggregate is identical for every worker count. Exceptions are caught per
// trial and reported through the outcome.
template <typename Result, typename Fn>
std::vector<TrialOutcome<Result>> map_trials(std::size_t count, std::size_t first, int workers,
                                             Fn&& fn) {
    std::vector<TrialOutcome<Result>> out(count);
#ifdef _OPENMP
    const int threads = workers > 0 ? workers : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 4) num_threads(threads)
    for (long long t = 0; t < static_cast<long long>(count); ++t) {
        const std::size_t idx = static_cast<std::size_t>(t);
        try {
            out[idx].value = fn(first + idx);
        } catch (const std::exception& e) {
            out[idx].error = e.what();
        }
    }
#else
    (void)workers;
    for (std::size_t idx = 0; idx < count; ++idx) {
        try {
            out[idx].value = fn(first + idx);
        } catch (const std::exception& e) {
            out[idx].error = e.what();
        }
    }
#endif
    return out;
}

// Straight-line serial reference for the parallel map; kept for tests and the
// engine benchmark.
template <typename Result, typename Fn>
std::vector<TrialOutcome<Result>> map_trials_serial(std::size_t count, std::size_t first,
                                                    Fn&& fn) {
    std::vector<TrialOutcome<Result>> out(count);
    for (std::size_t idx = 0; idx < count; ++idx) {
        try {
            out[idx].value = fn(first + idx);
        } catch (const std::exception& e) {
            out[idx].error = e.what();
        }
    }
    return out;
}

inline int max_workers() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

}  // namespace mimo::ensemble
