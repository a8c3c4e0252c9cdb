#include "adw/jsonio.hpp"

namespace adw {

Json rat_json(const Rat& q) { return rat_to_string(q); }

Rat rat_from_json(const Json& j) {
  if (j.is_number_integer()) return Rat(static_cast<long>(j.get<long>()));
  return rat_from_string(j.get<std::string>());
}

Json bracket_json(const RatBracket& b) {
  return Json{{"lo", rat_json(b.lo)}, {"hi", rat_json(b.hi)}, {"bits", 0}};
}

Json ival_json(const Ival& v) {
  return Json{{"lo", v.lo_str(24)},
              {"hi", v.hi_str(24)},
              {"bits", static_cast<long>(v.prec())}};
}

Json int_poly_json(const IntPoly& p) {
  Json arr = Json::array();
  for (const Int& c : p.c) arr.push_back(c.get_str());
  return arr;
}

IntPoly int_poly_from_json(const Json& j) {
  std::vector<Int> c;
  for (const auto& v : j) {
    Int z;
    if (v.is_number_integer()) {
      z = static_cast<long>(v.get<long>());
    } else if (z.set_str(v.get<std::string>(), 10) != 0) {
      throw ConfigError("bad integer coefficient in json");
    }
    c.push_back(z);
  }
  return IntPoly(std::move(c));
}

Json rat_poly_json(const RatPoly& p) {
  Json arr = Json::array();
  for (const Rat& c : p.c) arr.push_back(rat_json(c));
  return arr;
}

Json minima_json(const MinimaReport& rep) {
  Json out;
  out["method"] =
      rep.method == MinimaMethod::Exhaustive ? "exhaustive" : "reduced";
  Json lams = Json::array();
  for (size_t i = 0; i < rep.lambda.size(); ++i) {
    Json rec;
    rec["index"] = i + 1;
    rec["bracket"] = bracket_json(rep.lambda[i]);
    Json wit = Json::array();
    for (const Int& v : rep.witnesses[i]) wit.push_back(v.get_str());
    rec["witness"] = wit;
    lams.push_back(rec);
  }
  out["lambda"] = lams;
  if (rep.slack) out["reduction_slack"] = rat_json(*rep.slack);
  return out;
}

Json volume_json(const VolumeReport& rep) {
  Json out;
  out["volume"] = bracket_json(rep.volume);
  out["exact"] = rep.exact;
  if (!rep.exact) {
    out["confidence"] = rep.confidence;
    out["samples"] = rep.samples;
  }
  return out;
}

Json approx_json(const ApproxResult& res) {
  Json out;
  out["poly"] = int_poly_json(res.P);
  out["eisenstein_prime"] = res.eisenstein_prime.get_str();
  out["X"] = rat_json(res.X);
  out["Y"] = rat_json(res.Y);
  out["height"] = res.height.get_str();
  out["lambda_top"] = rat_json(res.lambda_top);
  Json conj = Json::array();
  for (const Ival& a : res.conjugates) conj.push_back(ival_json(a));
  out["conjugates"] = conj;
  Json dist = Json::array();
  for (const Ival& v : res.distances) dist.push_back(ival_json(v));
  out["distances"] = dist;
  out["measured_exponent"] = ival_json(res.measured_exponent);
  out["irreducibility_oracle_ran"] = res.irreducibility_oracle_ran;
  out["irreducibility_oracle_passed"] = res.irreducibility_oracle_passed;
  Json clusters = Json::array();
  for (const auto& cluster : res.clusters) {
    Json c = Json::array();
    for (const Ival& root : cluster) c.push_back(ival_json(root));
    clusters.push_back(c);
  }
  out["clusters"] = clusters;
  return out;
}

Json feasibility_json(const FeasibilityRecord& rec) {
  Json out;
  out["Y"] = rat_json(rec.Y);
  out["exponent"] = rat_json(rec.exponent);
  switch (rec.certainty) {
    case SearchCertainty::CertifiedFound:
      out["certainty"] = "certified-found";
      break;
    case SearchCertainty::CertifiedAbsent:
      out["certainty"] = "certified-absent";
      break;
    case SearchCertainty::ReductionNoFind:
      out["certainty"] = "reduction-no-find";
      break;
  }
  if (rec.Q) out["Q"] = int_poly_json(*rec.Q);
  out["best_gauge"] = bracket_json(rec.best_gauge);
  out["reverified"] = rec.reverified;
  return out;
}

Json phi_entry_json(const PhiScanEntry& e) {
  Json out;
  out["X"] = rat_json(e.X);
  out["Y"] = rat_json(e.Y);
  out["lambda1"] = bracket_json(e.lambda1);
  Json wit = Json::array();
  for (const Int& v : e.witness) wit.push_back(v.get_str());
  out["witness"] = wit;
  return out;
}

Json invariant_form_json(const InvariantForm& f) {
  Json out;
  out["n"] = f.n;
  out["case"] = f.progression.is_additive() ? "additive" : "multiplicative";
  out["gamma"] = rat_json(f.progression.gamma);
  out["rho"] = rat_json(f.rho);
  Json a = Json::array();
  for (const Rat& v : f.a) a.push_back(rat_json(v));
  out["a"] = a;
  Json g = Json::array();
  for (int i = 0; i <= f.n; ++i) {
    Json row = Json::array();
    for (int j = i; j <= f.n; ++j)
      row.push_back(Json{{"i", i}, {"j", j}, {"g", rat_json(f.g_at(i, j))}});
    g.push_back(row);
  }
  out["g_table"] = g;
  return out;
}

Json kernel_factor_json(const KernelFactorReport& rep) {
  Json out;
  out["hypothesis_met"] = rep.hypothesis_met;
  out["ranks"] = rep.ranks;
  if (rep.hypothesis_met) {
    out["h"] = rep.h;
    out["P"] = int_poly_json(rep.P);
    out["identity_verified"] = rep.identity_verified;
    Json basis = Json::array();
    for (const RatPoly& g : rep.kernel_basis) basis.push_back(rat_poly_json(g));
    out["kernel_basis"] = basis;
  }
  return out;
}

bool is_interval_json(const Json& j) {
  return j.is_object() && j.size() == 3 && j.contains("lo") &&
         j.contains("hi") && j.contains("bits");
}

std::string compare_exact_fields(const Json& a, const Json& b,
                                 const std::string& path) {
  if (is_interval_json(a) && is_interval_json(b)) {
    // enclosure-truth only: both must be interval-shaped; widths may differ
    return "";
  }
  if (a.type() != b.type()) return path + ": type mismatch";
  if (a.is_object()) {
    for (auto it = a.begin(); it != a.end(); ++it) {
      if (!b.contains(it.key())) return path + "." + it.key() + ": missing";
      std::string sub =
          compare_exact_fields(it.value(), b.at(it.key()), path + "." + it.key());
      if (!sub.empty()) return sub;
    }
    for (auto it = b.begin(); it != b.end(); ++it)
      if (!a.contains(it.key())) return path + "." + it.key() + ": extra";
    return "";
  }
  if (a.is_array()) {
    if (a.size() != b.size()) return path + ": array length";
    for (size_t i = 0; i < a.size(); ++i) {
      std::string sub =
          compare_exact_fields(a[i], b[i], path + "[" + std::to_string(i) + "]");
      if (!sub.empty()) return sub;
    }
    return "";
  }
  if (a != b) return path + ": " + a.dump() + " != " + b.dump();
  return "";
}

}  // namespace adw
