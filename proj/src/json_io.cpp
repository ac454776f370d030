#include "rankineq/json_io.hpp"

#include "rankineq/errors.hpp"

namespace rankineq {

namespace {

Json terms_to_json(const std::vector<EntropyTerm>& terms) {
  Json arr = Json::array();
  for (const auto& t : terms) {
    Json vars = Json::array();
    for (const auto& v : t.vars) vars.push_back(v.name());
    arr.push_back({{"coeff", to_fraction_string(t.coeff)}, {"vars", vars}});
  }
  return arr;
}

template <class F>
auto guarded(const char* what, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed ") + what + ": " + e.what());
  }
}

std::vector<EntropyTerm> terms_from_json(const Json& arr) {
  if (!arr.is_array()) throw ParseError("terms must be an array");
  std::vector<EntropyTerm> out;
  for (const auto& t : arr) {
    EntropyTerm term;
    const auto& coeff = t.at("coeff");
    term.coeff = coeff.is_number_integer() ? Rational(coeff.get<long>()) : parse_rational(coeff.get<std::string>());
    std::vector<VariableLabel> labels;
    for (const auto& v : t.at("vars")) labels.push_back(VariableLabel::parse(v.get<std::string>()));
    if (labels.empty()) throw ParseError("term with no variables");
    term.vars = make_set(std::move(labels));
    out.push_back(std::move(term));
  }
  return out;
}

Json mask_labels(const AccessStructure& s, SubsetMask m) {
  Json arr = Json::array();
  for (const auto& l : s.labels_of(m)) arr.push_back(l);
  return arr;
}

Json index_list(const std::vector<std::size_t>& v) {
  Json arr = Json::array();
  for (auto i : v) arr.push_back(i + 1);
  return arr;
}

}  // namespace

Json inequality_to_json(const EntropyInequality& ineq) {
  Json j = {{"t", ineq.t},
            {"char_condition", to_string(ineq.char_condition)},
            {"terms", terms_to_json(ineq.terms)},
            {"provenance", ineq.provenance}};
  if (!ineq.lhs.empty() || !ineq.rhs.empty())
    j["original"] = {{"scale", to_fraction_string(ineq.scale)},
                     {"lhs", terms_to_json(ineq.lhs)},
                     {"rhs", terms_to_json(ineq.rhs)}};
  return j;
}

EntropyInequality inequality_from_json(const Json& j) {
  return guarded("inequality", [&] {
    if (!j.is_object()) throw ParseError("inequality must be a JSON object");
    EntropyInequality ineq;
    ineq.t = j.at("t").get<long>();
    ineq.char_condition = parse_char_condition(j.at("char_condition").get<std::string>());
    ineq.terms = canonicalize(terms_from_json(j.at("terms")));
    ineq.provenance = j.value("provenance", std::string());
    if (j.contains("original")) {
      const auto& o = j.at("original");
      ineq.scale = parse_rational(o.at("scale").get<std::string>());
      ineq.lhs = canonicalize(terms_from_json(o.at("lhs")));
      ineq.rhs = canonicalize(terms_from_json(o.at("rhs")));
      std::vector<EntropyTerm> cleared;
      for (const auto& t : ineq.rhs) cleared.push_back({ineq.scale * t.coeff, t.vars});
      for (const auto& t : ineq.lhs) cleared.push_back({-ineq.scale * t.coeff, t.vars});
      if (canonicalize(std::move(cleared)) != ineq.terms)
        throw ParseError("\"original\" does not match the cleared terms");
    }
    return ineq;
  });
}

Json seed_to_json(const SeedMatrix& seed) {
  Json rows = Json::array();
  for (const auto& r : seed.entries()) rows.push_back(r);
  Json witness = Json::array();
  for (const auto& w : seed.row_witness()) witness.push_back(index_list(w));
  return {{"size", seed.size()},
          {"entries", rows},
          {"det_abs", seed.det_abs().get_str()},
          {"class_prime", index_list(seed.class_prime())},
          {"class_single", index_list(seed.class_single())},
          {"row_witness", witness},
          {"witness_total", seed.witness_total()},
          {"signature", seed_signature(seed)}};
}

Json pair_to_json(const SeedMatrix& seed, const EntropyInequality& nondividing, const EntropyInequality& dividing) {
  return {{"seed", seed_to_json(seed)},
          {"inequalities", {inequality_to_json(nondividing), inequality_to_json(dividing)}}};
}

std::vector<EntropyInequality> inequalities_from_json(const Json& j) {
  std::vector<EntropyInequality> out;
  const Json* list = &j;
  if (j.is_object() && j.contains("inequalities")) list = &j.at("inequalities");
  if (list->is_array()) {
    for (const auto& e : *list) out.push_back(inequality_from_json(e));
  } else {
    out.push_back(inequality_from_json(*list));
  }
  return out;
}

Json access_structure_to_json(const AccessStructure& s) {
  Json mins = Json::array();
  for (auto m : s.minimal_qualified()) mins.push_back(mask_labels(s, m));
  return {{"participants", s.participants()}, {"dealer", s.dealer()}, {"minimal_qualified", mins}};
}

AccessStructure access_structure_from_json(const Json& j) {
  return guarded("access structure", [&] {
    if (!j.is_object()) throw ParseError("access structure must be a JSON object");
    auto participants = j.at("participants").get<std::vector<std::string>>();
    auto dealer = j.at("dealer").get<std::string>();
    auto mins = j.at("minimal_qualified").get<std::vector<std::vector<std::string>>>();
    try {
      return AccessStructure::from_labels(std::move(participants), std::move(dealer), mins);
    } catch (const InvalidArgument& e) {
      throw ParseError(std::string("invalid access structure: ") + e.what());
    }
  });
}

RoleMap role_map_from_json(const Json& j) {
  return guarded("role map", [&] {
    if (!j.is_object()) throw ParseError("role map must be a JSON object");
    RoleMap m;
    for (const auto& [k, v] : j.items()) m[VariableLabel::parse(k)] = v.get<std::string>();
    return m;
  });
}

Json role_map_to_json(const RoleMap& m) {
  Json j = Json::object();
  for (const auto& [k, v] : m) j[k.name()] = v;
  return j;
}

Json assignment_to_json(const Assignment& a) {
  Json subs = Json::object();
  for (const auto& [label, s] : a.map()) {
    Json basis = Json::array();
    for (std::size_t r = 0; r < s.dim(); ++r) {
      auto row = s.basis().row(r);
      basis.push_back(std::vector<FieldElement>(row.begin(), row.end()));
    }
    subs[label.name()] = basis;
  }
  return {{"p", a.field().modulus()}, {"ambient_dim", a.ambient_dim()}, {"digest", a.digest()}, {"subspaces", subs}};
}

Json check_report_to_json(const CheckReport& r) {
  return {{"holds", r.holds},
          {"lhs", to_fraction_string(r.lhs_value)},
          {"rhs", to_fraction_string(r.rhs_value)},
          {"slack", to_fraction_string(r.slack)},
          {"assignment_digest", r.assignment_digest}};
}

Json campaign_to_json(const EntropyInequality& ineq, const CampaignSummary& s) {
  Json primes = Json::array();
  for (const auto& p : s.per_prime) {
    Json e = {{"p", p.p}, {"conforming", p.conforming}, {"trials", p.trials}, {"violations", p.violations}};
    e["min_slack"] = p.min_slack ? Json(to_fraction_string(*p.min_slack)) : Json(nullptr);
    if (p.canonical) e["canonical"] = check_report_to_json(*p.canonical);
    if (p.first_violation) {
      const auto& v = *p.first_violation;
      e["first_violation"] = {{"trial", v.trial},
                              {"kind", v.kind},
                              {"lhs", to_fraction_string(v.lhs)},
                              {"rhs", to_fraction_string(v.rhs)},
                              {"assignment", assignment_to_json(v.assignment)}};
    } else {
      e["first_violation"] = nullptr;
    }
    primes.push_back(std::move(e));
  }
  return {{"provenance", ineq.provenance},
          {"char_condition", to_string(ineq.char_condition)},
          {"t", ineq.t},
          {"per_prime", primes},
          {"conforming_violation", s.conforming_violation()}};
}

Json lp_report_to_json(const LpReport& r, const std::vector<std::string>& ground, bool include_primal) {
  Json j = {{"status", to_string(r.status)}, {"kind", r.kind}, {"char_condition", r.char_condition}};
  j["optimum"] = r.status == LpStatus::optimal ? Json(to_fraction_string(r.optimum)) : Json(nullptr);
  Json binding = Json::array();
  for (const auto& b : r.binding)
    binding.push_back({{"constraint", b.provenance}, {"multiplier", to_fraction_string(b.multiplier)}});
  j["binding"] = binding;
  j["resubstitution_passed"] = r.resubstitution_passed;
  if (include_primal && r.status == LpStatus::optimal) {
    LpProblem names;
    names.ground = ground;
    Json primal = Json::object();
    for (std::size_t i = 0; i < r.primal.size(); ++i) primal[names.variable_name(i)] = to_fraction_string(r.primal[i]);
    j["primal"] = primal;
  }
  return j;
}

Json scheme_report_to_json(const LinearScheme& s, const SchemeSimulationReport& r) {
  Json j = {{"participants", s.participants()},
            {"dealer", s.dealer()},
            {"q", s.field().modulus()},
            {"deals", r.deals},
            {"subsets_checked", r.subsets_checked},
            {"correctness", r.correctness},
            {"privacy", r.privacy},
            {"matches_rank_port", r.matches_rank_port},
            {"entropy_matches_rank", r.entropy_matches_rank},
            {"information_ratio", to_fraction_string(r.information_ratio)},
            {"ok", r.ok()}};
  if (r.first_failure) {
    Json f = Json::array();
    for (std::size_t i = 0; i < s.participants().size(); ++i)
      if (*r.first_failure >> i & 1) f.push_back(s.participants()[i]);
    j["first_failure"] = f;
  }
  return j;
}

std::string dump_json(const Json& j) { return j.dump(2) + "\n"; }

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
}

}  // namespace rankineq
