#pragma once

// Sweeps over many independent inputs. Each sweep has a serial reference and
// an OpenMP version that must return identical results in the same order.

#include <cstddef>
#include <vector>

#include "conway/exact.hpp"
#include "conway/lyapunov.hpp"
#include "conway/topograph.hpp"

namespace conway::batch {

struct CfProperties {
  bool round_trip = false;      // value(expand(x)) == x
  bool involution = false;      // conjugate(conjugate(cf)) == cf
  bool conjugate_agrees = false;  // conjugate(cf) has the value of conj(x)
  bool galois_agrees = false;   // pure periodic <=> x > 1 and -1 < conj(x) < 0

  bool all() const { return round_trip && involution && conjugate_agrees && galois_agrees; }
  friend bool operator==(const CfProperties&, const CfProperties&) = default;
};

CfProperties check_cf_properties(const QuadraticIrrational& x);
std::vector<CfProperties> cf_properties_serial(const std::vector<QuadraticIrrational>& xs);
std::vector<CfProperties> cf_properties_parallel(const std::vector<QuadraticIrrational>& xs);

struct GrowthJob {
  QuadraticForm form;
  PathSpec path;
  std::size_t steps = 0;
};

std::vector<TheoremRatio> theorem_ratios_serial(const std::vector<GrowthJob>& jobs);
std::vector<TheoremRatio> theorem_ratios_parallel(const std::vector<GrowthJob>& jobs);

std::vector<SandwichReport> sandwich_serial(const std::vector<GrowthJob>& jobs);
std::vector<SandwichReport> sandwich_parallel(const std::vector<GrowthJob>& jobs);

}  // namespace conway::batch
