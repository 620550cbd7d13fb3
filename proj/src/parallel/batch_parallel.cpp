#include <exception>

#include "conway/batch.hpp"

namespace conway::batch {

namespace {

// Runs fn(i) for every index on the OpenMP team and rethrows the first
// exception on the calling thread.
template <typename Fn>
void parallel_for(std::size_t n, Fn fn) {
  std::exception_ptr failure;
  const auto count = static_cast<long>(n);
#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < count; ++i) {
    try {
      fn(static_cast<std::size_t>(i));
    } catch (...) {
#pragma omp critical(conway_batch_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
}

}  // namespace

std::vector<CfProperties> cf_properties_parallel(const std::vector<QuadraticIrrational>& xs) {
  std::vector<CfProperties> out(xs.size());
  parallel_for(xs.size(), [&](std::size_t i) { out[i] = check_cf_properties(xs[i]); });
  return out;
}

std::vector<TheoremRatio> theorem_ratios_parallel(const std::vector<GrowthJob>& jobs) {
  std::vector<TheoremRatio> out(jobs.size());
  parallel_for(jobs.size(), [&](std::size_t i) { out[i] = theorem_ratio(jobs[i].form, jobs[i].path, jobs[i].steps); });
  return out;
}

std::vector<SandwichReport> sandwich_parallel(const std::vector<GrowthJob>& jobs) {
  std::vector<SandwichReport> out(jobs.size());
  parallel_for(jobs.size(), [&](std::size_t i) { out[i] = sandwich_check(jobs[i].form, jobs[i].path, jobs[i].steps); });
  return out;
}

}  // namespace conway::batch
