#include "subseries/config.hpp"

#include <fstream>
#include <stdexcept>

namespace subseries {

Config Config::from_json(const nlohmann::json& j) {
  Config c;
  c.monotone_horizon = j.value("monotone_horizon", c.monotone_horizon);
  c.default_K = j.value("default_K", c.default_K);
  c.max_terms = j.value("max_terms", c.max_terms);
  c.poly_horizon = j.value("poly_horizon", c.poly_horizon);
  c.rel_tol = j.value("rel_tol", c.rel_tol);
  if (c.monotone_horizon < 2 || c.default_K < 2 || c.max_terms < 1 || c.poly_horizon < 1 ||
      !(c.rel_tol >= 0.0))
    throw std::invalid_argument("config: horizons must be positive and rel_tol nonnegative");
  return c;
}

Config Config::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("config: cannot open " + path.string());
  return from_json(nlohmann::json::parse(in));
}

nlohmann::json Config::to_json() const {
  return {{"monotone_horizon", monotone_horizon},
          {"default_K", default_K},
          {"max_terms", max_terms},
          {"poly_horizon", poly_horizon},
          {"rel_tol", rel_tol}};
}

}  // namespace subseries
