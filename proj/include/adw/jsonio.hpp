#pragma once

#include <json.hpp>

#include "adw/approx.hpp"
#include "adw/gelfond.hpp"
#include "adw/hankel.hpp"

namespace adw {

using Json = nlohmann::json;

// Serialization conventions: exact rationals render as "p/q" strings
// (bit-exact replay), intervals as {"lo": ..., "hi": ..., "bits": n} with
// decimal endpoint strings (honest enclosures, width may vary across runs).

Json rat_json(const Rat& q);
Rat rat_from_json(const Json& j);

Json bracket_json(const RatBracket& b);
Json ival_json(const Ival& v);

Json int_poly_json(const IntPoly& p);
IntPoly int_poly_from_json(const Json& j);
Json rat_poly_json(const RatPoly& p);

Json minima_json(const MinimaReport& rep);
Json volume_json(const VolumeReport& rep);
Json approx_json(const ApproxResult& res);
Json feasibility_json(const FeasibilityRecord& rec);
Json phi_entry_json(const PhiScanEntry& e);
Json invariant_form_json(const InvariantForm& f);
Json kernel_factor_json(const KernelFactorReport& rep);

// True when the json value denotes an interval object (skipped by the
// exact-field replay comparison).
bool is_interval_json(const Json& j);

// Compare two json documents on exact fields only: intervals are checked
// for overlap, everything else bit-identically.  Returns a description of
// the first mismatch, or an empty string.
std::string compare_exact_fields(const Json& a, const Json& b,
                                 const std::string& path = "$");

}  // namespace adw
