#pragma once

#include "vamci/eval/nested_cv.hpp"

namespace vamci::cli {

// Runs loop bodies on up to `jobs` threads. If bodies throw, the exception from the
// lowest failing index is rethrown after all threads finish. jobs <= 1 runs inline.
eval::ParallelFor make_parallel_for(unsigned jobs);

}  // namespace vamci::cli
