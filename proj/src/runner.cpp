#include "adw/runner.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

namespace adw {

namespace fs = std::filesystem;

Json RunConfig::to_json() const {
  Json j;
  j["subcommand"] = subcommand;
  j["flags"] = flags;
  j["precision_bits"] = precision_bits;
  j["seed"] = seed;
  return j;
}

RunConfig RunConfig::from_json(const Json& j) {
  RunConfig c;
  c.subcommand = j.at("subcommand").get<std::string>();
  for (auto it = j.at("flags").begin(); it != j.at("flags").end(); ++it)
    c.flags[it.key()] = it.value().get<std::string>();
  c.precision_bits = j.at("precision_bits").get<long>();
  c.seed = j.at("seed").get<unsigned long>();
  return c;
}

std::string RunConfig::flag(const std::string& key,
                            const std::string& fallback) const {
  auto it = flags.find(key);
  return it == flags.end() ? fallback : it->second;
}

bool RunConfig::has_flag(const std::string& key) const {
  return flags.count(key) > 0;
}

std::vector<Rat> parse_grid(const std::string& text) {
  auto c1 = text.find(':');
  auto c2 = text.rfind(':');
  if (c1 == std::string::npos || c2 == c1)
    throw ConfigError("grid syntax is start:factor:count: " + text);
  Rat start = rat_from_string(text.substr(0, c1));
  Rat factor = rat_from_string(text.substr(c1 + 1, c2 - c1 - 1));
  int count = std::stoi(text.substr(c2 + 1));
  if (count < 1 || factor <= 0 || start <= 0)
    throw ConfigError("grid needs positive start/factor and count >= 1");
  std::vector<Rat> grid;
  Rat v = start;
  for (int i = 0; i < count; ++i) {
    grid.push_back(v);
    v *= factor;
  }
  return grid;
}

namespace {

std::vector<PointSpec> parse_points(const std::string& text) {
  std::vector<PointSpec> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    // algebraic specs contain commas inside [...]: stitch pieces back
    while (item.find('[') != std::string::npos &&
           item.find(']') == std::string::npos) {
      std::string more;
      if (!std::getline(ss, more, ',')) break;
      item += "," + more;
    }
    if (!item.empty()) out.push_back(PointSpec::parse(item));
  }
  if (out.empty()) throw ConfigError("empty point list");
  return out;
}

std::vector<int> parse_mults(const std::string& text, size_t count) {
  if (text.empty()) return std::vector<int>(count, 1);
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(std::stoi(item));
  if (out.size() != count)
    throw ConfigError("multiplicity list length mismatch");
  return out;
}

ProgressionCase parse_case(const std::string& text, const Rat& gamma, int n) {
  if (text == "add" || text == "additive") return ProgressionCase::additive(gamma);
  if (text == "mult" || text == "multiplicative")
    return ProgressionCase::multiplicative(gamma, n);
  throw ConfigError("case must be add or mult: " + text);
}

void run_form(const RunConfig& cfg, RunRecord& rec) {
  int n = std::stoi(cfg.flag("n", "2"));
  Rat gamma = rat_from_string(cfg.flag("gamma", "1"));
  ProgressionCase c = parse_case(cfg.flag("case", "add"), gamma, n);
  InvariantForm f = build_form(n, c);
  Json j = invariant_form_json(f);
  j["type"] = "invariant-form";
  rec.records.push_back(j);
  rec.summary["n"] = n;
  rec.summary["case"] = c.str();
}

BodySpec body_from_flags(const RunConfig& cfg) {
  BodySpec spec;
  spec.n = std::stoi(cfg.flag("n", "2"));
  std::string body = cfg.flag("body", "C");
  if (body == "C")
    spec.which = BodyKind::C;
  else if (body == "Cbar")
    spec.which = BodyKind::Cbar;
  else if (body == "Cphi")
    spec.which = BodyKind::Cphi;
  else
    throw ConfigError("body must be C, Cbar or Cphi");
  spec.X = rat_from_string(cfg.flag("X", "1"));
  spec.Y = rat_from_string(cfg.flag("Y", "1"));
  if (cfg.has_flag("points")) {
    for (const auto& p : parse_points(cfg.flag("points")))
      spec.points.push_back(PointHandle::from_spec(p));
    spec.mults = parse_mults(cfg.flag("mults", ""), spec.points.size());
  }
  return spec;
}

void run_minima(const RunConfig& cfg, RunRecord& rec) {
  BodySpec spec = body_from_flags(cfg);
  std::string method_text = cfg.flag("method", "exhaustive");
  MinimaMethod method = method_text == "reduced" ? MinimaMethod::Reduced
                                                 : MinimaMethod::Exhaustive;
  MinimaReport rep = successive_minima(spec, method, cfg.precision_bits);
  Json all = minima_json(rep);
  for (auto& lam : all["lambda"]) {
    lam["type"] = "minima";
    lam["method"] = all["method"];
    rec.records.push_back(lam);
  }
  rec.summary["lambda_count"] = rep.lambda.size();
  rec.summary["method"] = all["method"];
  // Minkowski ledger entry when the exact volume is cheap
  if (spec.which != BodyKind::Cphi && spec.is_rational() && spec.n <= 4) {
    VolumeReport vol = body_volume(spec, cfg.precision_bits);
    Rat prod(1);
    for (const auto& l : rep.lambda) prod *= l.hi;
    Json entry;
    entry["key"] = "minkowski-product@n=" + std::to_string(spec.n);
    entry["lhs"] = rat_json(prod * vol.volume.hi);
    entry["rhs"] = rat_json(rat_pow(Rat(2), spec.n + 1));
    rec.constants.push_back(entry);
  }
}

void run_approx(const RunConfig& cfg, RunRecord& rec) {
  int n = std::stoi(cfg.flag("n", "8"));
  int t = std::stoi(cfg.flag("t", "1"));
  int D = std::stoi(cfg.flag("D", "1"));
  auto points = parse_points(cfg.flag("points", "const:ln2"));
  auto mults = parse_mults(cfg.flag("mults", ""), points.size());
  std::string case_text = cfg.flag("case", "thm1");
  ExponentLedger::Case tag = case_text == "thm2"
                                 ? ExponentLedger::Case::Progression
                                 : ExponentLedger::Case::GenericCurve;
  ExponentLedger ledger = exponent_ledger(n, t, points, mults, D, tag);
  PipelineOptions opt;
  opt.prime = Int(std::stol(cfg.flag("prime", "2")));
  opt.prec = cfg.precision_bits;
  std::vector<Rat> grid = parse_grid(cfg.flag("X-grid", "10000:2:5"));
  rec.summary["nu"] = ledger.nu;
  rec.summary["target_exponent"] = rat_json(ledger.target_exponent);
  rec.summary["y_exponent"] = rat_json(ledger.y_exponent);
  rec.summary["degree_hypothesis_checked"] = ledger.degree_hypothesis_checked;
  if (!ledger.degree_hypothesis_note.empty())
    rec.summary["degree_hypothesis_note"] = ledger.degree_hypothesis_note;
  for (const Rat& x : grid) {
    ApproxResult res = approximate_conjugates(ledger, points, mults, x, opt);
    Json j = approx_json(res);
    j["type"] = "approx";
    rec.records.push_back(j);
    Json entry;
    entry["key"] = "height-over-lambdaX@n=" + std::to_string(n) +
                   ",t=" + std::to_string(t);
    entry["X"] = rat_json(x);
    Rat denom = res.lambda_top * res.X;
    entry["value"] =
        rat_json(denom > 0 ? Rat(Rat(res.P.sup_norm()) / denom) : Rat(0));
    rec.constants.push_back(entry);
  }
}

void run_gelfond(const RunConfig& cfg, RunRecord& rec) {
  int n = std::stoi(cfg.flag("n", "4"));
  int t = std::stoi(cfg.flag("t", "1"));
  Rat gamma = rat_from_string(cfg.flag("gamma", "1"));
  ProgressionCase c = parse_case(cfg.flag("case", "add"), gamma, n);
  PointSpec seed = PointSpec::parse(cfg.flag("seed-point", "const:ln2"));
  ProgressionPoints pts = ProgressionPoints::make(c, seed, n + 1);
  bool exhaustive = cfg.flag("search", "reduced") == "exhaustive";

  std::string expo_text = cfg.flag("exponent", "dirichlet");
  rec.summary["n"] = n;
  rec.summary["t"] = t;
  rec.summary["case"] = c.str();

  if (cfg.has_flag("phi-x-grid")) {
    int nu = std::stoi(cfg.flag("nu", std::to_string(4 * t)));
    auto grid = parse_grid(cfg.flag("phi-x-grid"));
    MinimaMethod method = cfg.flag("method", "reduced") == "exhaustive"
                              ? MinimaMethod::Exhaustive
                              : MinimaMethod::Reduced;
    for (const auto& e :
         phi_minimum_scan(pts, n, t, nu, grid, method, cfg.precision_bits)) {
      Json j = phi_entry_json(e);
      j["type"] = "phi-scan";
      rec.records.push_back(j);
    }
    return;
  }

  std::vector<Rat> grid = parse_grid(cfg.flag("Y-grid", "100:10:3"));
  for (const Rat& y : grid) {
    FeasibilityRecord fr;
    if (expo_text == "dirichlet") {
      Rat delta = rat_from_string(cfg.flag("delta", "1/10"));
      fr = dirichlet_witness(pts, n, t, y, delta, exhaustive,
                             cfg.precision_bits);
    } else if (expo_text == "theorem") {
      if (n + 1 - 4 * t <= 0)
        throw ConfigError("theorem exponent needs n + 1 > 4t");
      Rat e = Rat(4 * t) / Rat(n + 1 - 4 * t);
      fr = criterion_search(pts, n, t, y, e, exhaustive, cfg.precision_bits);
    } else if (expo_text.rfind("value:", 0) == 0) {
      Rat e = rat_from_string(expo_text.substr(6));
      fr = criterion_search(pts, n, t, y, e, exhaustive, cfg.precision_bits);
    } else {
      throw ConfigError("exponent must be dirichlet, theorem or value:q");
    }
    Json j = feasibility_json(fr);
    j["type"] = "gelfond";
    rec.records.push_back(j);
    Json entry;
    entry["key"] = "criterion-margin@n=" + std::to_string(n) +
                   ",t=" + std::to_string(t);
    entry["Y"] = rat_json(y);
    entry["best_gauge"] = bracket_json(fr.best_gauge);
    rec.constants.push_back(entry);
  }
}

void run_diag(const RunConfig& cfg, RunRecord& rec) {
  std::string input = cfg.flag("input");
  if (input.empty()) throw ConfigError("diag needs --input FILE");
  std::ifstream in(input);
  if (!in) throw ConfigError("cannot open " + input);
  std::string line;
  Json source;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    Json j = Json::parse(line);
    std::string type = j.value("type", "");
    if (type == "phi-scan" || type == "approx" || j.contains("witness") ||
        j.contains("y")) {
      source = j;
      break;
    }
  }
  if (source.is_null()) throw ConfigError("no usable record in " + input);

  int n = std::stoi(cfg.flag("n", "6"));
  int t = std::stoi(cfg.flag("t", "1"));
  std::vector<Int> y;
  if (source.contains("witness")) {
    for (const auto& v : source["witness"]) {
      Int z;
      if (z.set_str(v.get<std::string>(), 10) != 0)
        throw ConfigError("bad witness entry");
      y.push_back(z);
    }
  } else if (source.contains("poly")) {
    IntPoly p = int_poly_from_json(source["poly"]);
    for (int k = 0; k <= n; ++k) y.push_back(p.coeff(k));
  } else {
    throw ConfigError("record carries neither witness nor poly");
  }
  if (static_cast<int>(y.size()) != n + 1)
    throw ConfigError("witness length does not match n+1");

  int nu = std::stoi(cfg.flag("nu", std::to_string(4 * t)));
  ProofPreset preset = proof_preset(n, t, nu, std::stoi(cfg.flag("D", "1")));
  int k = cfg.has_flag("k") ? std::stoi(cfg.flag("k")) : preset.k;
  int u = cfg.has_flag("u") ? std::stoi(cfg.flag("u")) : preset.u;
  rec.summary["k"] = k;
  rec.summary["u"] = u;

  KernelFactorReport kf = rank_drop_factor(y, k, n);
  Json kfj = kernel_factor_json(kf);
  kfj["type"] = "diag-rank-drop";
  rec.records.push_back(kfj);

  if (kf.hypothesis_met && cfg.has_flag("points")) {
    auto points = parse_points(cfg.flag("points"));
    std::vector<PointHandle> handles;
    for (const auto& p : points) handles.push_back(PointHandle::from_spec(p));
    Rat x = rat_from_string(cfg.flag("X", "16"));
    Factorization fact = factor_int_poly(kf.P);
    for (const auto& f : fact.factors) {
      SmallValueReport sv = small_value_ratio_check(
          f.poly, handles, t, x, k, n, cfg.precision_bits);
      Json j;
      j["type"] = "diag-small-value";
      j["factor"] = int_poly_json(f.poly);
      j["lhs"] = ival_json(sv.lhs);
      j["rhs"] = ival_json(sv.rhs);
      j["degenerate"] = sv.degenerate;
      if (sv.measured_constant)
        j["measured_c13"] = ival_json(*sv.measured_constant);
      rec.records.push_back(j);
      if (sv.measured_constant) {
        Json entry;
        entry["key"] = "c13@n=" + std::to_string(n) + ",k=" + std::to_string(k);
        entry["value"] = ival_json(*sv.measured_constant);
        rec.constants.push_back(entry);
      }
    }
  }
}

void run_dispatch(const RunConfig& cfg, RunRecord& rec) {
  if (cfg.subcommand == "form")
    run_form(cfg, rec);
  else if (cfg.subcommand == "minima")
    run_minima(cfg, rec);
  else if (cfg.subcommand == "approx")
    run_approx(cfg, rec);
  else if (cfg.subcommand == "gelfond")
    run_gelfond(cfg, rec);
  else if (cfg.subcommand == "diag")
    run_diag(cfg, rec);
  else
    throw ConfigError("unknown subcommand: " + cfg.subcommand);
}

}  // namespace

RunRecord run(const RunConfig& config) {
  RunRecord rec;
  rec.config = config;
  rec.summary["subcommand"] = config.subcommand;
  run_dispatch(config, rec);
  rec.summary["records"] = rec.records.size();
  if (!config.out_dir.empty()) persist(rec, config.out_dir);
  return rec;
}

void persist(const RunRecord& rec, const std::string& dir) {
  fs::create_directories(dir);
  {
    std::ofstream out(fs::path(dir) / "config.json");
    out << rec.config.to_json().dump(2) << "\n";
  }
  {
    std::ofstream out(fs::path(dir) / "records.jsonl");
    for (const Json& j : rec.records) out << j.dump() << "\n";
  }
  {
    std::ofstream out(fs::path(dir) / "constants.jsonl");
    for (const Json& j : rec.constants) out << j.dump() << "\n";
  }
  {
    std::ofstream out(fs::path(dir) / "summary.json");
    out << rec.summary.dump(2) << "\n";
  }
}

RunRecord load_run(const std::string& dir) {
  RunRecord rec;
  {
    std::ifstream in(fs::path(dir) / "config.json");
    if (!in) throw ConfigError("no config.json in " + dir);
    Json j;
    in >> j;
    rec.config = RunConfig::from_json(j);
  }
  {
    std::ifstream in(fs::path(dir) / "records.jsonl");
    std::string line;
    while (std::getline(in, line))
      if (!line.empty()) rec.records.push_back(Json::parse(line));
  }
  {
    std::ifstream in(fs::path(dir) / "constants.jsonl");
    std::string line;
    while (std::getline(in, line))
      if (!line.empty()) rec.constants.push_back(Json::parse(line));
  }
  {
    std::ifstream in(fs::path(dir) / "summary.json");
    if (in) in >> rec.summary;
  }
  return rec;
}

RunRecord replay_run(const std::string& dir) {
  RunRecord stored = load_run(dir);
  RunConfig cfg = stored.config;
  cfg.out_dir.clear();  // replay does not overwrite the stored run
  RunRecord fresh;
  fresh.config = cfg;
  fresh.summary["subcommand"] = cfg.subcommand;
  run_dispatch(cfg, fresh);
  fresh.summary["records"] = fresh.records.size();
  if (stored.records.size() != fresh.records.size())
    throw ConfigError("replay: record count differs");
  for (size_t i = 0; i < stored.records.size(); ++i) {
    std::string diff = compare_exact_fields(stored.records[i], fresh.records[i]);
    if (!diff.empty())
      throw ConfigError("replay mismatch in record " + std::to_string(i) +
                        " at " + diff);
  }
  return fresh;
}

PlotOutcome emit_plots(const RunRecord& rec, const std::string& dir) {
  fs::create_directories(dir);
  // collect series: approx (X vs exponent / distance), gelfond (Y vs found),
  // phi-scan (X vs lambda1)
  struct Pt {
    double x = 0, y = 0;
  };
  std::vector<Pt> series;
  std::ofstream csv(fs::path(dir) / "plot.csv");
  auto bracket_mid = [](const Json& b) {
    Rat lo = rat_from_json(b.at("lo"));
    Rat hi = rat_from_json(b.at("hi"));
    return Rat(lo + hi).get_d() / 2;
  };
  std::string kind;
  for (const Json& j : rec.records) {
    std::string type = j.value("type", "");
    if (type == "approx") {
      kind = "approx";
      double x = rat_from_json(j.at("X")).get_d();
      double expo = 0;
      if (j.contains("measured_exponent")) {
        // interval json: parse the decimal strings loosely for plotting
        expo = std::stod(j.at("measured_exponent").at("lo").get<std::string>());
      }
      csv << "approx," << x << "," << expo << "\n";
      series.push_back({std::log10(x), expo});
    } else if (type == "gelfond") {
      kind = "gelfond";
      double y = rat_from_json(j.at("Y")).get_d();
      double found = j.value("certainty", "") == "certified-found" ? 1.0 : 0.0;
      csv << "gelfond," << y << "," << found << "\n";
      series.push_back({std::log10(y), found});
    } else if (type == "phi-scan") {
      kind = "phi-scan";
      double x = rat_from_json(j.at("X")).get_d();
      double l = bracket_mid(j.at("lambda1"));
      csv << "phi-scan," << x << "," << l << "\n";
      series.push_back({std::log10(x), l});
    }
  }
  if (series.empty()) return {false, "no plottable series; CSV empty"};
  if (series.size() == 1) return {false, "single-point record; CSV only"};

  // minimal SVG polyline
  double xmin = series.front().x, xmax = series.front().x;
  double ymin = series.front().y, ymax = series.front().y;
  for (const Pt& p : series) {
    xmin = std::min(xmin, p.x);
    xmax = std::max(xmax, p.x);
    ymin = std::min(ymin, p.y);
    ymax = std::max(ymax, p.y);
  }
  if (xmax == xmin) xmax = xmin + 1;
  if (ymax == ymin) ymax = ymin + 1;
  const double w = 640, h = 400, pad = 40;
  std::ofstream svg(fs::path(dir) / "plot.svg");
  svg << "<svg xmlns='http://www.w3.org/2000/svg' width='" << w
      << "' height='" << h << "'>\n";
  svg << "<rect width='100%' height='100%' fill='white'/>\n";
  svg << "<polyline fill='none' stroke='steelblue' stroke-width='2' points='";
  for (const Pt& p : series) {
    double px = pad + (p.x - xmin) / (xmax - xmin) * (w - 2 * pad);
    double py = h - pad - (p.y - ymin) / (ymax - ymin) * (h - 2 * pad);
    svg << px << "," << py << " ";
  }
  svg << "'/>\n";
  svg << "<text x='" << w / 2 << "' y='" << h - 8
      << "' text-anchor='middle' font-size='12'>" << kind
      << " series (log10 x-axis)</text>\n";
  svg << "</svg>\n";
  return {true, "plot.csv and plot.svg written"};
}

}  // namespace adw
