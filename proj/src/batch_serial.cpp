#include "conway/batch.hpp"

#include "conway/cfrac.hpp"

namespace conway::batch {

CfProperties check_cf_properties(const QuadraticIrrational& x) {
  CfProperties out;
  const ContinuedFraction cf = cf::expand(x);
  out.round_trip = cf::value(cf) == x;
  const ContinuedFraction conj = cf::conjugate(cf);
  out.involution = cf::to_canonical(cf::conjugate(conj)) == cf;
  out.conjugate_agrees = cf::to_canonical(conj) == cf::expand(x.conjugate());
  out.galois_agrees = cf::is_pure_periodic(cf) == is_galois(x);
  return out;
}

std::vector<CfProperties> cf_properties_serial(const std::vector<QuadraticIrrational>& xs) {
  std::vector<CfProperties> out;
  out.reserve(xs.size());
  for (const auto& x : xs) out.push_back(check_cf_properties(x));
  return out;
}

std::vector<TheoremRatio> theorem_ratios_serial(const std::vector<GrowthJob>& jobs) {
  std::vector<TheoremRatio> out;
  out.reserve(jobs.size());
  for (const auto& j : jobs) out.push_back(theorem_ratio(j.form, j.path, j.steps));
  return out;
}

std::vector<SandwichReport> sandwich_serial(const std::vector<GrowthJob>& jobs) {
  std::vector<SandwichReport> out;
  out.reserve(jobs.size());
  for (const auto& j : jobs) out.push_back(sandwich_check(j.form, j.path, j.steps));
  return out;
}

}  // namespace conway::batch
