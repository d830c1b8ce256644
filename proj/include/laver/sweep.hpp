#pragma once

#include <algorithm>
#include <cstdint>
#include <exception>
#include <vector>

#include "laver/witness.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace laver {

struct SweepOutcome {
    std::vector<Witness> witnesses;  // sorted by (a, b)
    std::uint64_t qualifying = 0;    // elements (or pairs) meeting the hypothesis
};

// A sweep kernel is called once per a in [begin, end) as
//   std::uint64_t kernel(std::uint64_t a, std::vector<Witness>& out)
// and returns how many instances satisfied the hypothesis. Kernels only
// read shared state.

// Reference implementation: a plain loop.
template <class Kernel>
SweepOutcome sweep_serial(std::uint64_t begin, std::uint64_t end, Kernel&& kernel) {
    SweepOutcome result;
    for (std::uint64_t a = begin; a < end; ++a) result.qualifying += kernel(a, result.witnesses);
    std::sort(result.witnesses.begin(), result.witnesses.end());
    return result;
}

// OpenMP version. Each thread collects into its own buffer; the merged
// list is sorted so the outcome does not depend on the worker count or
// on scheduling.
template <class Kernel>
SweepOutcome sweep_parallel(std::uint64_t begin, std::uint64_t end, int workers, Kernel&& kernel) {
#ifdef _OPENMP
    if (workers < 1) workers = 1;
    const auto count = static_cast<std::int64_t>(end > begin ? end - begin : 0);
    std::vector<std::vector<Witness>> buffers(static_cast<std::size_t>(workers));
    std::uint64_t qualifying = 0;
    std::exception_ptr failure;

#pragma omp parallel num_threads(workers) reduction(+ : qualifying)
    {
        auto& local = buffers[static_cast<std::size_t>(omp_get_thread_num())];
#pragma omp for schedule(dynamic, 64)
        for (std::int64_t i = 0; i < count; ++i) {
            try {
                qualifying += kernel(begin + static_cast<std::uint64_t>(i), local);
            } catch (...) {
#pragma omp critical(laver_sweep_failure)
                if (!failure) failure = std::current_exception();
            }
        }
    }
    if (failure) std::rethrow_exception(failure);

    SweepOutcome result;
    result.qualifying = qualifying;
    for (auto& buffer : buffers) {
        result.witnesses.insert(result.witnesses.end(), std::make_move_iterator(buffer.begin()),
                                std::make_move_iterator(buffer.end()));
    }
    std::sort(result.witnesses.begin(), result.witnesses.end());
    return result;
#else
    (void)workers;
    return sweep_serial(begin, end, std::forward<Kernel>(kernel));
#endif
}

// workers == 0 selects the serial reference path.
template <class Kernel>
SweepOutcome sweep(std::uint64_t begin, std::uint64_t end, int workers, Kernel&& kernel) {
    if (workers == 0) return sweep_serial(begin, end, std::forward<Kernel>(kernel));
    return sweep_parallel(begin, end, workers, std::forward<Kernel>(kernel));
}

}  // namespace laver
