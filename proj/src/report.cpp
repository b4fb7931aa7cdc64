#include "subseries/report.hpp"

namespace subseries {

Json to_json(const Inequality& link, double rel_tol) {
  return Json{{"lhs", link.lhs},
              {"lhs_value", link.lhs_value},
              {"relation", "<="},
              {"rhs", link.rhs},
              {"rhs_value", link.rhs_value},
              {"holds", link.holds(rel_tol)}};
}

Json to_json(const Certificate& cert, double rel_tol) {
  Json params = Json::object();
  for (const auto& [k, v] : cert.params) params[k] = v;
  Json chain = Json::array();
  for (const auto& l : cert.chain) chain.push_back(to_json(l, rel_tol));
  Json premises = Json::array();
  for (const auto& p : cert.premises) premises.push_back(to_json(p, rel_tol));
  return Json{{"kind", cert.kind},
              {"statement", cert.statement},
              {"params", params},
              {"chain", chain},
              {"premises", premises}};
}

Json to_json(const SandwichReport& s) {
  return Json{{"K", s.K},
              {"lower", s.lower},
              {"middle", s.middle},
              {"upper", s.upper},
              {"tight_lower", s.tight_lower()},
              {"width", s.width()},
              {"a_first", s.a_first},
              {"a_after", s.a_after}};
}

Json to_json(const SchlomilchReport& r) {
  return Json{{"K", r.K}, {"c", r.c}, {"lower", r.lower}, {"middle", r.middle}, {"upper", r.upper}};
}

Json to_json(const Verdict& v, double rel_tol) {
  Json evidence = Json::array();
  for (const auto& [name, value] : v.evidence) evidence.push_back(Json{{"name", name}, {"value", value}});
  return Json{{"outcome", to_string(v.outcome)},
              {"certificate", v.certificate ? to_json(*v.certificate, rel_tol) : Json(nullptr)},
              {"sandwich", v.sandwich ? to_json(*v.sandwich) : Json(nullptr)},
              {"evidence", evidence},
              {"notes", v.notes}};
}

Json to_json(const ThinningResult& r) {
  return Json{{"target", r.target},
              {"achieved_sum", r.achieved_sum},
              {"residual", r.residual},
              {"terms_scanned", r.terms_scanned},
              {"reached", r.reached},
              {"chosen_count", r.chosen_indices.size()},
              {"list_spec", r.as_list_spec()}};
}

}  // namespace subseries
