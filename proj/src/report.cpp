#include "dxm/report.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>

namespace dxm {

namespace {
Json cx_json(Cx z) { return Json::array({z.real(), z.imag()}); }
}  // namespace

Json weight_report_json(const WeightReport& rep) {
  Json thm1b;
  thm1b["ok"] = rep.thm1b.ok;
  if (rep.thm1b.ok) {
    thm1b["B"] = rep.thm1b.bound;
  } else if (rep.thm1b.worst_pair) {
    thm1b["counterexample"] = {{"m", rep.thm1b.worst_pair->first},
                               {"n", rep.thm1b.worst_pair->second}};
    thm1b["sup_seen"] = rep.thm1b.bound;
  }
  Json trace = Json::array();
  for (auto [n, r] : rep.nonanalytic_trace)
    trace.push_back(Json::array({n, r}));
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["weight"] = rep.weight_name;
  j["algebra_ok"] = rep.algebra.ok;
  j["max_checked"] = rep.algebra.max_checked;
  if (rep.algebra.violation)
    j["violation"] = {{"m", rep.algebra.violation->first},
                      {"n", rep.algebra.violation->second}};
  j["nonanalytic_trace"] = trace;
  j["nonanalytic_consistent"] = rep.nonanalytic_consistent;
  j["nonanalytic_threshold"] = rep.nonanalytic_threshold;
  j["quasi_partial_sums"] = rep.quasi_partial_sums;
  j["thm1b"] = thm1b;
  return j;
}

Json verdict_json(const Verdict& v) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["result"] = to_string(v.result);
  j["rule"] = v.rule;
  j["certificate"] = v.certificate;
  j["truncation"] = v.truncation;
  j["notes"] = v.notes;
  return j;
}

Json classification_json(const Classification& cls) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["case"] = to_string(cls.map_case);
  j["n_used"] = cls.n_used;
  if (cls.denjoy_wolff) j["denjoy_wolff"] = cx_json(*cls.denjoy_wolff);
  Json ev = Json::array();
  for (const auto& fp : cls.evidence) {
    ev.push_back({{"z", cx_json(fp.z)},
                  {"location", fp.location == FixedPointLocation::Boundary
                                   ? "Boundary"
                                   : "Interior"},
                  {"multiplier", cx_json(fp.multiplier)},
                  {"abs_multiplier", fp.abs_multiplier},
                  {"multiplicity", fp.multiplicity},
                  {"residual", fp.residual}});
  }
  j["evidence"] = ev;
  Json sn = Json::array();
  for (Cx s : cls.s_n) sn.push_back(cx_json(s));
  j["s_n"] = sn;
  if (!cls.note.empty()) j["note"] = cls.note;
  return j;
}

Json supnorm_json(const SupResult& s, const std::string& map_text,
                  const DomainSpec& X) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["map"] = map_text;
  j["domain"] = X.name();
  j["sup"] = s.value;
  j["argmax"] = cx_json(s.argmax);
  j["samples"] = s.samples_used;
  j["boundary_samples"] = X.boundary_samples;
  return j;
}

Json constructed_weights_json(const ConstructedWeights& cw) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["name"] = cw.name;
  j["method"] = cw.method;
  j["log_m"] = cw.log_m;
  Json prov = Json::array();
  for (const auto& rec : cw.provenance) {
    Json r;
    r["n"] = rec.n;
    r["log_m"] = rec.log_m;
    r["k_count"] = rec.k_count;
    Json cons = Json::array();
    for (const auto& c : rec.constraints)
      cons.push_back({{"name", c.name},
                      {"log_bound", c.log_bound},
                      {"binding", c.binding}});
    r["constraints"] = cons;
    if (rec.log_a) r["log_A"] = *rec.log_a;
    if (rec.c_n) r["c"] = cx_json(*rec.c_n);
    if (rec.d_n) r["d"] = *rec.d_n;
    if (rec.growth_ratio) r["growth_ratio"] = *rec.growth_ratio;
    prov.push_back(r);
  }
  j["provenance"] = prov;
  if (cw.method == "thm5") {
    j["b"] = cx_json(cw.b);
    j["abs_phi_prime_b"] = cw.abs_phi_prime_b;
    Json cp = Json::array();
    for (Cx c : cw.c_points) cp.push_back(cx_json(c));
    j["c_points"] = cp;
  }
  return j;
}

Json witness_table_json(const WitnessGrowthTable& t) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["b"] = cx_json(t.b);
  j["phi_b"] = cx_json(t.phi_b);
  j["abs_phi_prime_b"] = t.abs_phi_prime_b;
  j["theta"] = t.theta;
  j["under_truncated"] = t.under_truncated;
  j["growth_demonstrated"] = t.growth_demonstrated;
  Json rows = Json::array();
  for (const auto& r : t.rows)
    rows.push_back({{"R", r.R},
                    {"normF", r.norm_f},
                    {"normFphi", r.norm_f_phi},
                    {"ratio", r.ratio},
                    {"tail_ratio_f", r.tail_ratio_f},
                    {"tail_ratio_f_phi", r.tail_ratio_f_phi}});
  j["rows"] = rows;
  return j;
}

std::string witness_table_csv(const WitnessGrowthTable& t) {
  std::ostringstream os;
  os.precision(15);
  os << "R,normF,normFphi,ratio\n";
  for (const auto& r : t.rows)
    os << r.R << "," << r.norm_f << "," << r.norm_f_phi << "," << r.ratio
       << "\n";
  return os.str();
}

void save_json(const Json& j, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path);
  out << j.dump(2) << "\n";
}

Json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read " + path);
  Json j;
  try {
    in >> j;
  } catch (const Json::parse_error& e) {
    throw InputError("malformed JSON in " + path + ": " + e.what());
  }
  return j;
}

WeightSequence load_weight_file(const std::string& path) {
  Json j = load_json(path);
  if (!j.contains("log_m") || !j["log_m"].is_array())
    throw InputError("weight file " + path + " lacks a log_m array");
  std::vector<double> log_m;
  for (const auto& v : j["log_m"]) log_m.push_back(v.get<double>());
  std::string name = j.value("name", std::string("weight-file"));
  return WeightSequence::from_table(name, std::move(log_m));
}

WeightSequence weight_from_selector(const std::string& selector) {
  if (selector == "n!log^n") return WeightSequence::factorial_log_power();
  if (selector == "n!n^n2") return WeightSequence::factorial_superexp();
  if (selector.rfind("n!^", 0) == 0) {
    std::string a = selector.substr(3);
    try {
      size_t used = 0;
      double alpha = std::stod(a, &used);
      if (used == a.size()) return WeightSequence::factorial_power(alpha);
    } catch (const std::exception&) {
    }
    throw InputError("bad weight exponent in '" + selector + "'");
  }
  throw InputError("unknown weight selector '" + selector +
                   "' (expected n!^a, n!log^n, or n!n^n2)");
}

}  // namespace dxm
