#include "gbundle/report.hpp"

#include "gbundle/error.hpp"

namespace gbundle {

namespace {

template <typename T>
Json optional_value(const std::optional<T>& v) {
  return v ? Json(*v) : Json(nullptr);
}

}  // namespace

Json to_json(const BigInt& value) { return value.str(); }

Json to_json(const Path& path) { return path.vertices; }

Json to_json(const Permutation& p) { return p.image(); }

Json to_json(const ProjectionPair& p) {
  return {{"base", to_json(p.base_part)}, {"fiber", to_json(p.fiber_part)}};
}

Json to_json(const TrivialityResult& r) {
  Json j{{"trivial", r.trivial}};
  if (r.trivial) {
    Json rho = Json::array();
    for (const auto& p : r.rho) rho.push_back(to_json(p));
    j["rho"] = std::move(rho);
  } else {
    j["witness"] = to_json(r.witness);
    j["witness_holonomy"] = to_json(r.witness_holonomy);
  }
  return j;
}

Json to_json(const SeparationReport& r) {
  Json j{{"x0", r.x0},
         {"v0", r.v0},
         {"m", r.m},
         {"witness", to_json(r.witness)},
         {"witness_holonomy", to_json(r.witness_holonomy)},
         {"bundle_count", to_json(r.bundle_count)},
         {"product_count", to_json(r.product_count)},
         {"bundle_full_base", to_json(r.bundle_full_base)},
         {"product_full_base", to_json(r.product_full_base)},
         {"bundle_short_base", to_json(r.bundle_short_base)},
         {"product_short_base", to_json(r.product_short_base)},
         {"strictly_fewer", r.strictly_fewer}};
  j["null_element"] = optional_value(r.null_element);
  j["null_count"] = r.null_count ? to_json(*r.null_count) : Json(nullptr);
  j["null_count_differs"] = r.null_count_differs;
  return j;
}

Json to_json(const Frame& f) {
  return {{"center", f.center}, {"ball", f.ball}, {"maps", f.maps}};
}

Json to_json(const FrameCertificate& c) {
  Json frames = Json::array();
  for (const auto& f : c.frames) frames.push_back(f ? to_json(*f) : Json(nullptr));
  Json j{{"ricci_flat", c.ricci_flat}};
  if (c.commuting_checked) j["s_ricci_flat"] = c.s_ricci_flat;
  j["failures"] = c.failures;
  j["frames"] = std::move(frames);
  return j;
}

Json to_json(const FourLoopCheck& c) {
  Json j{{"balanced", c.balanced}};
  if (!c.balanced) j["witness"] = to_json(c.witness);
  return j;
}

Json to_json(const AutomorphismGroup& g) {
  Json gens = Json::array();
  for (const auto& p : g.generators) gens.push_back(to_json(p));
  return {{"order", to_json(g.order())},
          {"orbit_count", g.orbits.count},
          {"orbits", g.orbits.orbits()},
          {"base", g.base},
          {"generators", std::move(gens)}};
}

Json to_json(const LocallyAbelianReport& r) {
  return {{"null_elements", r.null_elements},
          {"unbalanced_loop", to_json(r.unbalanced_loop)},
          {"four_loops_balanced", r.four_loops_balanced},
          {"base_s_ricci_flat", r.base_s_ricci_flat},
          {"fiber_s_ricci_flat", r.fiber_s_ricci_flat},
          {"base_transitive", r.base_transitive},
          {"fiber_transitive", r.fiber_transitive},
          {"s_ricci_flat", r.s_ricci_flat},
          {"vertex_transitive", r.vertex_transitive},
          {"orbit_count", r.orbit_count},
          {"not_cayley", r.not_cayley},
          {"lifted_frames", to_json(r.lifted)}};
}

Json to_json(const ExampleSpec& spec) {
  Json params = Json::object();
  for (const auto& [k, v] : spec.params) params[k] = v;
  return {{"name", spec.name}, {"params", std::move(params)}};
}

Json to_json(const ExpectedProperties& p) {
  Json j = Json::object();
  if (p.trivial) j["trivial"] = *p.trivial;
  if (p.dvb) j["dvb"] = *p.dvb;
  if (p.transitive) j["transitive"] = *p.transitive;
  if (p.orbits) j["orbits"] = *p.orbits;
  if (p.s_ricci_flat) j["s_ricci_flat"] = *p.s_ricci_flat;
  if (p.four_loops_balanced) j["four_loops_balanced"] = *p.four_loops_balanced;
  return j;
}

ExpectedProperties expected_from_json(const Json& card) {
  const Json& e = card.contains("expected") ? card.at("expected") : card;
  if (!e.is_object()) throw Error(ErrorKind::kParse, "property card must be an object");
  ExpectedProperties p;
  auto flag = [&](const char* key, std::optional<bool>& out) {
    if (!e.contains(key) || e.at(key).is_null()) return;
    if (!e.at(key).is_boolean())
      throw Error(ErrorKind::kParse, std::string("card field ") + key + " must be a boolean");
    out = e.at(key).get<bool>();
  };
  flag("trivial", p.trivial);
  flag("dvb", p.dvb);
  flag("transitive", p.transitive);
  flag("s_ricci_flat", p.s_ricci_flat);
  flag("four_loops_balanced", p.four_loops_balanced);
  if (e.contains("orbits") && !e.at("orbits").is_null()) {
    if (!e.at("orbits").is_number_integer())
      throw Error(ErrorKind::kParse, "card field orbits must be an integer");
    p.orbits = e.at("orbits").get<int>();
  }
  return p;
}

}  // namespace gbundle
