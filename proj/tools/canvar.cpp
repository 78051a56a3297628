/// Command line front end: cone classification, variety decisions, family
// scans, counterexample witnesses, reduction certificates, inequality
// grids, and finite-field representation calculus.  All output is JSON
// with a fixed key order; exit codes: 0 ok/consistent, 1 usage, 2
// inconsistency found, 3 not applicable.

#include <cstdlib>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "canvar/bounds.hpp"
#include "canvar/classify.hpp"
#include "canvar/core.hpp"
#include "canvar/geometry.hpp"
#include "canvar/repcalc.hpp"
#include "canvar/witnesses.hpp"

using json = nlohmann::ordered_json;
using namespace canvar;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitInconsistent = 2;
constexpr int kExitNotApplicable = 3;

CanonicalType parse_type(const std::string& s) {
  std::vector<int> arms;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) arms.push_back(std::stoi(tok));
  return CanonicalType(arms);
}

DimVector parse_dimvector(const CanonicalType& t, const std::string& s) {
  json j = json::parse(s);
  DimVector d(t);
  d.alpha = j.at("alpha").get<i64>();
  d.omega = j.at("omega").get<i64>();
  auto arms = j.at("arms");
  if (arms.size() != d.arm.size()) {
    throw std::invalid_argument("dimension vector: wrong arm count");
  }
  for (size_t i = 0; i < d.arm.size(); ++i) {
    if (arms[i].size() != d.arm[i].size()) {
      throw std::invalid_argument("dimension vector: wrong arm length");
    }
    for (size_t k = 0; k < d.arm[i].size(); ++k) {
      d.arm[i][k] = arms[i][k].get<i64>();
    }
  }
  return d;
}

json dimvector_json(const DimVector& d) {
  json j;
  j["alpha"] = d.alpha;
  j["arms"] = d.arm;
  j["omega"] = d.omega;
  return j;
}

json type_json(const CanonicalType& t) {
  json j;
  j["m"] = t.arms();
  return j;
}

json rat_json(const Rat& r) {
  json j;
  j["num"] = r.numerator();
  j["den"] = r.denominator();
  return j;
}

i64 env_i64(const char* name, i64 fallback) {
  const char* v = std::getenv(name);
  return v ? std::stoll(v) : fallback;
}

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

const char* family_name(Family f) {
  switch (f) {
    case Family::Regular:
      return "regular";
    case Family::SincereRegular:
      return "sincere_regular";
    case Family::Rprime:
      return "rprime";
  }
  return "?";
}

Family parse_family(const std::string& s) {
  if (s == "regular") return Family::Regular;
  if (s == "sincere_regular" || s == "sincere-regular") {
    return Family::SincereRegular;
  }
  if (s == "rprime") return Family::Rprime;
  throw CLI::ValidationError("family", "unknown family " + s);
}

const char* step_name(StepKind k) {
  switch (k) {
    case StepKind::SubtractHFromDPrime:
      return "subtract_h_from_dprime";
    case StepKind::SubtractEijFromD:
      return "subtract_eij_from_d";
    case StepKind::SubtractEijFromBoth:
      return "subtract_eij_from_both";
    case StepKind::SubtractEimiFromD:
      return "subtract_eimi_from_d";
  }
  return "?";
}

const char* base_family_name(BaseFamily f) {
  switch (f) {
    case BaseFamily::N3:
      return "n3";
    case BaseFamily::Type222m:
      return "type_222m";
    case BaseFamily::Type2233:
      return "type_2233";
    case BaseFamily::Type22222:
      return "type_22222";
  }
  return "?";
}

json split_json(const SplitRecord& s) {
  json j;
  j["dprime"] = dimvector_json(s.dprime);
  j["dsecond"] = dimvector_json(s.dsecond);
  j["value"] = s.value;
  return j;
}

// module spec grammar for rep subcommands:
//   simple:alpha | simple:omega | simple:i.j | armreg:i.j |
//   homog:a.b | sample:seed  (sample needs --d)
Rep parse_module(const CanonicalType& t, const TubeParams& params,
                 const std::string& spec,
                 const std::optional<DimVector>& d) {
  auto colon = spec.find(':');
  std::string kind = spec.substr(0, colon);
  std::string rest = colon == std::string::npos ? "" : spec.substr(colon + 1);
  auto split_dot = [&]() {
    auto dot = rest.find('.');
    if (dot == std::string::npos) {
      throw std::invalid_argument("module spec: expected i.j in " + spec);
    }
    return std::pair<i64, i64>{std::stoll(rest.substr(0, dot)),
                               std::stoll(rest.substr(dot + 1))};
  };
  if (kind == "simple") {
    if (rest == "alpha") return build_simple(t, params, Vertex::alpha());
    if (rest == "omega") return build_simple(t, params, Vertex::omega());
    auto [i, j] = split_dot();
    return build_simple(t, params,
                        Vertex::arm_vertex(static_cast<int>(i),
                                           static_cast<int>(j)));
  }
  if (kind == "armreg") {
    auto [i, j] = split_dot();
    return build_arm_regular(t, params, static_cast<int>(i),
                             static_cast<int>(j));
  }
  if (kind == "homog") {
    auto [a, b] = split_dot();
    return build_homogeneous(t, params, a, b);
  }
  if (kind == "sample") {
    if (!d) throw std::invalid_argument("module spec sample: needs --d");
    auto rep = sample_point(t, params, *d, std::stoull(rest));
    if (!rep) throw std::runtime_error("sample: no point found");
    return *rep;
  }
  throw std::invalid_argument("module spec: unknown kind " + kind);
}

TubeParams make_params(const CanonicalType& t, i64 prime,
                       const std::vector<i64>& lambda) {
  TubeParams params = TubeParams::defaults(t, prime);
  if (!lambda.empty()) {
    if (static_cast<int>(lambda.size()) != t.arm_count() - 2) {
      throw std::invalid_argument("--lambda: need n - 2 values");
    }
    params.lambda = lambda;
    for (auto& l : params.lambda) l = ((l % prime) + prime) % prime;
    for (size_t i = 0; i < params.lambda.size(); ++i) {
      if (params.lambda[i] == 0) {
        throw std::invalid_argument("--lambda: values must be nonzero");
      }
      for (size_t k = 0; k < i; ++k) {
        if (params.lambda[i] == params.lambda[k]) {
          throw std::invalid_argument("--lambda: values must be distinct");
        }
      }
    }
  }
  return params;
}

struct Options {
  std::string type_str;
  std::string d_str;
  std::string dprime_str;
  std::string family_str = "regular";
  std::string csv_path;
  std::string lemma_id;
  std::string mod_a, mod_b;
  i64 bound = 3;
  i64 max_total = 12;
  int jobs = 1;
  i64 prime = 32003;
  std::uint64_t seed = 1;
  std::vector<i64> lambda;
  bool relaxed = false;
  bool minimal = false;
  bool sincere = false;
  int pairs = 100;
};

int run_classify(const Options& o) {
  CanonicalType t = parse_type(o.type_str);
  DimVector d = parse_dimvector(t, o.d_str);
  json out;
  out["config"] = {{"command", "classify"},
                   {"type", type_json(t)},
                   {"d", dimvector_json(d)}};
  out["in_P"] = in_P(t, d);
  out["in_Q"] = in_Q(t, d);
  out["in_R"] = in_R(t, d);
  out["in_RQ"] = in_RQ(t, d);
  out["in_Rprime"] = in_Rprime(t, d);
  out["sincere"] = is_sincere(d);
  auto pr = canonical_presentation(t, d);
  if (pr) {
    json p;
    p["p"] = pr->p;
    p["coeff"] = pr->coeff;
    p["p_omega"] = pr->p_omega;
    out["presentation"] = p;
  } else {
    out["presentation"] = nullptr;
  }
  emit(out);
  return kExitOk;
}

int run_decide(const Options& o) {
  CanonicalType t = parse_type(o.type_str);
  DimVector d = parse_dimvector(t, o.d_str);
  DecideOptions opts;
  opts.relaxed = o.relaxed;
  opts.witness_scan_budget =
      env_i64("CANVAR_WITNESS_BUDGET", opts.witness_scan_budget);
  GeometryVerdict v;
  try {
    v = decide(t, d, opts);
  } catch (const NotRegularError& e) {
    json out;
    out["error"] = e.what();
    emit(out);
    return kExitNotApplicable;
  }
  json out;
  out["config"] = {{"command", "decide"},
                   {"type", type_json(t)},
                   {"d", dimvector_json(d)},
                   {"relaxed", o.relaxed}};
  out["a"] = v.a;
  out["dim"] = v.dim;
  out["max_value"] = v.max_value;
  out["equality_pair_count"] = v.equality_pair_count;
  out["split_count"] = v.split_count;
  out["complete_intersection"] = v.is_complete_intersection;
  out["irreducible"] = v.is_irreducible;
  out["normal"] = v.is_normal ? json(*v.is_normal) : json(nullptr);
  json ws = json::array();
  for (const auto& w : v.witnesses) ws.push_back(split_json(w));
  out["max_splits"] = ws;
  emit(out);
  return kExitOk;
}

int run_scan(const Options& o) {
  CanonicalType t = parse_type(o.type_str);
  Family fam = parse_family(o.family_str);
  ScanOptions opts;
  opts.jobs = o.jobs;
  ScanReport rep = scan_family(t, o.bound, fam, opts);

  if (!o.csv_path.empty()) {
    std::ofstream csv(o.csv_path);
    csv << "vector,max_value,zero_value_count,split_count,ci,normal\n";
    for_each_family_vector(t, o.bound, fam, [&](const DimVector& d) {
      SplitStats st = split_stats(t, d);
      csv << dimvector_json(d).dump() << "," << st.max_value << ","
          << st.zero_value_count << "," << st.split_count << ","
          << (st.max_value <= 0) << ","
          << (st.max_value == 0 && st.zero_value_count == 1) << "\n";
    });
  }

  auto [thr1, thr2] = threshold(t);
  json out;
  out["config"] = {{"command", "scan"},
                   {"type", type_json(t)},
                   {"bound", o.bound},
                   {"family", family_name(fam)},
                   {"jobs", o.jobs}};
  out["threshold"] = rat_json(thr1);
  out["threshold_mvalue"] = rat_json(thr2);
  out["total_vectors"] = rep.total_vectors;
  out["ci_failures"] = rep.ci_failures;
  out["normality_failures"] = rep.normality_failures;
  out["first_ci_failure"] = rep.first_ci_failure
                                ? dimvector_json(*rep.first_ci_failure)
                                : json(nullptr);
  out["first_normality_failure"] =
      rep.first_normality_failure
          ? dimvector_json(*rep.first_normality_failure)
          : json(nullptr);
  out["predicted_all_ci"] = rep.predicted_all_ci;
  out["predicted_all_normal"] = rep.predicted_all_normal;
  out["consistent"] = rep.consistent;
  out["confirmed"] = rep.confirmed;
  emit(out);
  return rep.consistent ? kExitOk : kExitInconsistent;
}

int run_witness(const Options& o) {
  CanonicalType t = parse_type(o.type_str);
  WitnessPair w;
  try {
    w = make_witness(t);
  } catch (const NotApplicableError& e) {
    json out;
    out["error"] = e.what();
    emit(out);
    return kExitNotApplicable;
  }
  if (o.minimal) w = minimal_scale(t, w);

  json out;
  out["config"] = {{"command", "witness"},
                   {"type", type_json(t)},
                   {"minimal", o.minimal},
                   {"sincere", o.sincere}};
  out["scale"] = w.scale;
  out["slot_arm"] = w.slot_arm;
  out["dprime"] = dimvector_json(w.dprime);
  out["dsecond"] = dimvector_json(w.dsecond);
  out["d"] = dimvector_json(w.dprime + w.dsecond);
  out["predicted_value"] = rat_json(w.predicted_value);
  out["value"] = w.value;
  out["memberships"] = {{"dprime_in_P", in_P(t, w.dprime)},
                        {"dsecond_in_Q", in_Q(t, w.dsecond)},
                        {"sum_in_R", in_R(t, w.dprime + w.dsecond)}};
  if (o.sincere) {
    if (w.value <= 0) {
      out["sincere_lift"] = nullptr;
    } else {
      auto [lp, ls] = sincere_lift(t, w.dprime, w.dsecond);
      out["sincere_lift"] = {{"dprime", dimvector_json(lp)},
                             {"dsecond", dimvector_json(ls)},
                             {"d", dimvector_json(lp + ls)},
                             {"value", ringel_form(t, ls, lp)}};
    }
  }
  emit(out);
  return kExitOk;
}

int run_certify(const Options& o) {
  CanonicalType t = parse_type(o.type_str);
  DimVector d = parse_dimvector(t, o.d_str);
  DimVector dp = parse_dimvector(t, o.dprime_str);
  Certificate cert = reduce_pair(t, d, dp);

  json out;
  out["config"] = {{"command", "certify"},
                   {"type", type_json(t)},
                   {"d", dimvector_json(d)},
                   {"dprime", dimvector_json(dp)}};
  out["initial_value"] = cert.initial_value;
  out["policy"] =
      cert.policy == ReducePolicy::Greedy ? "greedy" : "breadth_first";
  json steps = json::array();
  for (const auto& s : cert.steps) {
    json sj;
    sj["kind"] = step_name(s.kind);
    if (s.i) sj["i"] = s.i;
    if (s.j) sj["j"] = s.j;
    sj["d_after"] = dimvector_json(s.d_after);
    sj["dprime_after"] = dimvector_json(s.dprime_after);
    sj["value_before"] = s.value_before;
    sj["value_after"] = s.value_after;
    steps.push_back(sj);
  }
  out["steps"] = steps;
  out["base_d"] = dimvector_json(cert.base_d);
  out["base_dprime"] = dimvector_json(cert.base_dprime);
  out["base_family"] = base_family_name(cert.base.family);
  out["base_bound"] = rat_json(cert.base.bound);
  out["conclusion"] = cert.conclusion == Conclusion::StrictlyNegative
                          ? "strictly_negative"
                          : "non_positive";
  emit(out);
  return kExitOk;
}

int run_verify_lemmas(const Options& o) {
  std::vector<std::string> ids =
      o.lemma_id.empty()
          ? std::vector<std::string>{"I1", "I2", "I3", "I4", "I5", "I6"}
          : std::vector<std::string>{o.lemma_id};
  json out;
  out["config"] = {{"command", "verify-lemmas"},
                   {"max", o.max_total},
                   {"lemmas", ids}};
  json reports = json::array();
  bool all_pass = true;
  for (const auto& id : ids) {
    LemmaReport rep = verify_lemma_grid(id, o.max_total);
    json rj;
    rj["lemma"] = rep.lemma_id;
    rj["cases"] = rep.cases_checked;
    rj["equality_cases"] = rep.equality_cases;
    rj["counterexamples"] = rep.counterexamples;
    if (!rep.first_counterexample.empty()) {
      rj["first_counterexample"] = rep.first_counterexample;
    }
    rj["pass"] = rep.pass;
    reports.push_back(rj);
    all_pass = all_pass && rep.pass;
  }
  out["reports"] = reports;
  out["pass"] = all_pass;
  emit(out);
  return all_pass ? kExitOk : kExitInconsistent;
}

json mat_json(const Mat& m) {
  json rows = json::array();
  for (int r = 0; r < m.rows; ++r) {
    json row = json::array();
    for (int c = 0; c < m.cols; ++c) row.push_back(m.at(r, c));
    rows.push_back(row);
  }
  return {{"rows", m.rows}, {"cols", m.cols}, {"entries", rows}};
}

int run_rep(const std::string& sub, const Options& o) {
  CanonicalType t = parse_type(o.type_str);
  i64 prime = env_i64("CANVAR_PRIME", o.prime);
  TubeParams params = make_params(t, prime, o.lambda);
  std::optional<DimVector> d;
  if (!o.d_str.empty()) d = parse_dimvector(t, o.d_str);

  json out;
  out["config"] = {{"command", "rep " + sub},
                   {"type", type_json(t)},
                   {"prime", prime},
                   {"lambda", params.lambda},
                   {"seed", o.seed}};
  if (d) out["config"]["d"] = dimvector_json(*d);

  if (sub == "sample" || sub == "check") {
    if (!d) throw std::invalid_argument("rep " + sub + ": needs --d");
    auto rep = sample_point(t, params, *d, o.seed);
    if (!rep) {
      out["found"] = false;
      emit(out);
      return kExitNotApplicable;
    }
    out["found"] = true;
    out["relations_ok"] = check_relations(*rep);
    if (sub == "sample") {
      json mats = json::array();
      for (const auto& m : rep->mats) mats.push_back(mat_json(m));
      out["mats"] = mats;
    }
    emit(out);
    return out["relations_ok"].get<bool>() ? kExitOk : kExitInconsistent;
  }

  if (sub == "hom" || sub == "ext1" || sub == "ext2") {
    Rep a = parse_module(t, params, o.mod_a, d);
    Rep b = parse_module(t, params, o.mod_b, d);
    out["config"]["a"] = o.mod_a;
    out["config"]["b"] = o.mod_b;
    i64 value = sub == "hom"    ? hom_dim(a, b)
                : sub == "ext1" ? ext1_dim(a, b)
                                : ext2_dim(a, b);
    out[sub] = value;
    emit(out);
    return kExitOk;
  }

  if (sub == "euler-test") {
    std::mt19937_64 rng(o.seed);
    std::uniform_int_distribution<i64> entry(0, 2);
    int failures = 0;
    int done = 0;
    while (done < o.pairs) {
      auto random_small = [&]() {
        DimVector d2(t);
        d2.alpha = entry(rng);
        d2.omega = entry(rng);
        for (auto& arm : d2.arm) {
          for (auto& v : arm) v = entry(rng);
        }
        return d2;
      };
      auto ra = sample_point(t, params, random_small(), rng());
      auto rb = sample_point(t, params, random_small(), rng());
      if (!ra || !rb) continue;
      i64 lhs = hom_dim(*ra, *rb) - ext1_dim(*ra, *rb) + ext2_dim(*ra, *rb);
      if (lhs != ringel_form(t, ra->dim, rb->dim)) ++failures;
      ++done;
    }
    out["pairs"] = done;
    out["failures"] = failures;
    out["pass"] = failures == 0;
    emit(out);
    return failures == 0 ? kExitOk : kExitInconsistent;
  }

  throw CLI::ValidationError("rep", "unknown subcommand " + sub);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact decision toolkit for module varieties over canonical "
               "algebras"};
  app.require_subcommand(1);
  Options o;

  auto add_type = [&](CLI::App* c) {
    c->add_option("--type", o.type_str, "arm lengths, e.g. 2,3,6")
        ->required();
  };

  auto* c_classify = app.add_subcommand("classify", "cone membership of d");
  add_type(c_classify);
  c_classify->add_option("--d", o.d_str, "dimension vector JSON")->required();

  auto* c_decide = app.add_subcommand("decide", "geometry of mod(d)");
  add_type(c_decide);
  c_decide->add_option("--d", o.d_str, "dimension vector JSON")->required();
  c_decide->add_flag("--relaxed", o.relaxed, "allow d outside R");

  auto* c_scan = app.add_subcommand("scan", "scan a family of vectors");
  add_type(c_scan);
  c_scan->add_option("--bound", o.bound, "max entry value");
  c_scan->add_option("--family", o.family_str,
                     "regular | sincere_regular | rprime");
  c_scan->add_option("--jobs", o.jobs, "worker threads");
  c_scan->add_option("--csv", o.csv_path, "per-vector CSV output path");

  auto* c_witness = app.add_subcommand("witness", "counterexample pair");
  add_type(c_witness);
  c_witness->add_flag("--minimal", o.minimal, "divide by the entry gcd");
  c_witness->add_flag("--sincere", o.sincere, "also emit the sincere lift");

  auto* c_certify = app.add_subcommand("certify", "reduction certificate");
  add_type(c_certify);
  c_certify->add_option("--d", o.d_str, "dimension vector JSON")->required();
  c_certify->add_option("--dprime", o.dprime_str, "split part JSON")
      ->required();

  auto* c_lemmas = app.add_subcommand("verify-lemmas", "inequality grids");
  c_lemmas->add_option("--max", o.max_total, "grid size limit");
  c_lemmas->add_option("--lemma", o.lemma_id, "single grid id I1..I6");

  auto* c_rep = app.add_subcommand("rep", "representation calculus");
  c_rep->require_subcommand(1);
  std::vector<std::string> rep_subs = {"check", "hom",    "ext1",
                                       "ext2",  "sample", "euler-test"};
  for (const auto& name : rep_subs) {
    auto* s = c_rep->add_subcommand(name);
    s->add_option("--type", o.type_str)->required();
    s->add_option("--d", o.d_str, "dimension vector JSON");
    s->add_option("--prime", o.prime);
    s->add_option("--seed", o.seed);
    s->add_option("--lambda", o.lambda, "relation scalars")->delimiter(',');
    if (name == "hom" || name == "ext1" || name == "ext2") {
      s->add_option("--a", o.mod_a, "module spec")->required();
      s->add_option("--b", o.mod_b, "module spec")->required();
    }
    if (name == "euler-test") s->add_option("--pairs", o.pairs);
  }

  CLI11_PARSE(app, argc, argv);

  try {
    if (c_classify->parsed()) return run_classify(o);
    if (c_decide->parsed()) return run_decide(o);
    if (c_scan->parsed()) return run_scan(o);
    if (c_witness->parsed()) return run_witness(o);
    if (c_certify->parsed()) return run_certify(o);
    if (c_lemmas->parsed()) return run_verify_lemmas(o);
    if (c_rep->parsed()) {
      return run_rep(c_rep->get_subcommands().front()->get_name(), o);
    }
  } catch (const NotApplicableError& e) {
    std::cerr << e.what() << "\n";
    return kExitNotApplicable;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
