#pragma once

// JSON views of the library's values. Big integers are written as decimal
// strings so nothing is rounded; the schemas under schema/ describe these
// shapes.

#include "json.hpp"

#include "conway/cfrac.hpp"
#include "conway/exact.hpp"
#include "conway/lyapunov.hpp"
#include "conway/render.hpp"
#include "conway/topograph.hpp"

namespace conway::json_io {

using Json = nlohmann::ordered_json;

Json to_json(const BigInt& x);
Json to_json(const QuadraticIrrational& x, int digits = 12);
Json to_json(const ContinuedFraction& cf);
/// Reads {preperiod, period, sign}; digits may be strings or integers.
ContinuedFraction continued_fraction_from_json(const Json& j);

Json to_json(const QuadraticForm& q);
Json to_json(const SuperbaseTriple& t);
Json to_json(const Mat2& m);
Json to_json(const FormRoots& r, int digits = 12);
Json to_json(const RiverEdge& e);
Json to_json(const RiverDescription& r, int digits = 12);
Json to_json(const LakeDescription& l);
Json to_json(const TopographNeighborhood& nb);

Json to_json(const MonoidExponent& e, int digits = 12);
/// {n, w_n, abs_Q_n, log_ratio, exact: {rho, period_turns}} for the last
/// step, plus the whole log-ratio sequence.
Json to_json(const GrowthSeries& s, int digits = 12);
Json to_json(const SandwichReport& r);
Json to_json(const TheoremRatio& r);

}  // namespace conway::json_io
