#include "setlab/json_io.hpp"

#include <cmath>
#include <sstream>

namespace setlab {

namespace {

const Json& field(const Json& j, const std::string& path, const char* key) {
  if (!j.is_object()) throw JsonFormatError(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw JsonFormatError(path, std::string("missing required field '") + key + "'");
  return *it;
}

double number(const Json& j, const std::string& path) {
  if (!j.is_number()) throw JsonFormatError(path, "expected a number");
  return j.get<double>();
}

Json finite_or_null(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

std::string hex_mask(const std::vector<bool>& bits) {
  // Coordinate 0 is the least significant bit of the last hex digit.
  std::string out;
  const std::size_t digits = (bits.size() + 3) / 4;
  for (std::size_t d = digits; d-- > 0;) {
    int v = 0;
    for (int b = 3; b >= 0; --b) {
      const std::size_t i = 4 * d + static_cast<std::size_t>(b);
      v = 2 * v + (i < bits.size() && bits[i] ? 1 : 0);
    }
    out.push_back("0123456789abcdef"[v]);
  }
  return out;
}

}  // namespace

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Json to_json(const SpaceSpec& space) {
  return Json{{"dim", space.dim}, {"norm", std::string(to_string(space.norm))}};
}

SpaceSpec space_from_json(const Json& j, const std::string& path) {
  const Json& dim = field(j, path, "dim");
  const Json& tag = field(j, path, "norm");
  if (!dim.is_number_integer() || dim.get<std::int64_t>() < 1)
    throw JsonFormatError(path + "/dim", "expected a positive integer");
  if (!tag.is_string()) throw JsonFormatError(path + "/norm", "expected a string");
  try {
    return SpaceSpec(dim.get<Eigen::Index>(), norm_tag_from_string(tag.get<std::string>()));
  } catch (const std::invalid_argument& e) {
    throw JsonFormatError(path + "/norm", e.what());
  }
}

Json to_json(const Polytope<double>& p) {
  Json gens = Json::array();
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    Json point = Json::array();
    for (Eigen::Index r = 0; r < p.dim(); ++r) point.push_back(p.generators()(r, i));
    gens.push_back(std::move(point));
  }
  Json out{{"space", to_json(p.space())}, {"generators", std::move(gens)}};
  if (!p.tag().empty()) out["tag"] = p.tag();
  return out;
}

Polytope<double> polytope_from_json(const Json& j, const std::string& path) {
  const SpaceSpec space = space_from_json(field(j, path, "space"), path + "/space");
  const Json& gens = field(j, path, "generators");
  if (!gens.is_array() || gens.empty())
    throw JsonFormatError(path + "/generators", "expected a nonempty array of points");
  Matrix<double> g(space.dim, static_cast<Eigen::Index>(gens.size()));
  for (std::size_t i = 0; i < gens.size(); ++i) {
    const std::string p = path + "/generators/" + std::to_string(i);
    if (!gens[i].is_array() || static_cast<Eigen::Index>(gens[i].size()) != space.dim)
      throw JsonFormatError(p, "expected " + std::to_string(space.dim) + " coordinates");
    for (std::size_t r = 0; r < gens[i].size(); ++r)
      g(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(i)) =
          number(gens[i][r], p + "/" + std::to_string(r));
  }
  std::string tag;
  if (j.contains("tag") && j["tag"].is_string()) tag = j["tag"].get<std::string>();
  try {
    return Polytope<double>(space, std::move(g), std::move(tag));
  } catch (const std::invalid_argument& e) {
    throw JsonFormatError(path, e.what());
  }
}

Json to_json(const DirectionSet& d) {
  Json dirs = Json::array();
  for (Eigen::Index j = 0; j < d.size(); ++j) {
    Json v = Json::array();
    for (Eigen::Index r = 0; r < d.space().dim; ++r) v.push_back(d.directions()(r, j));
    dirs.push_back(std::move(v));
  }
  return Json{{"space", to_json(d.space())},
              {"provenance", to_string(d.provenance())},
              {"seed", d.seed()},
              {"directions", std::move(dirs)}};
}

DirectionSet direction_set_from_json(const Json& j, const std::string& path) {
  const SpaceSpec space = space_from_json(field(j, path, "space"), path + "/space");
  const Json& prov = field(j, path, "provenance");
  const Json& dirs = field(j, path, "directions");
  if (!prov.is_string()) throw JsonFormatError(path + "/provenance", "expected a string");
  if (!dirs.is_array() || dirs.empty())
    throw JsonFormatError(path + "/directions", "expected a nonempty array");
  Matrix<double> m(space.dim, static_cast<Eigen::Index>(dirs.size()));
  for (std::size_t i = 0; i < dirs.size(); ++i) {
    const std::string p = path + "/directions/" + std::to_string(i);
    if (!dirs[i].is_array() || static_cast<Eigen::Index>(dirs[i].size()) != space.dim)
      throw JsonFormatError(p, "expected " + std::to_string(space.dim) + " coordinates");
    for (std::size_t r = 0; r < dirs[i].size(); ++r)
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(i)) =
          number(dirs[i][r], p + "/" + std::to_string(r));
  }
  std::uint64_t seed = 0;
  if (j.contains("seed")) seed = j["seed"].get<std::uint64_t>();
  try {
    return DirectionSet(space, std::move(m), provenance_from_string(prov.get<std::string>()), seed);
  } catch (const std::invalid_argument& e) {
    throw JsonFormatError(path, e.what());
  }
}

Json to_json(const BlockFamily& family) {
  Json blocks = Json::array();
  for (const auto& b : family.blocks()) {
    Json masks = Json::array();
    const auto ground = b.family.ground_size();
    for (int k = 1; k <= b.family.n(); ++k) {
      std::vector<bool> bits(static_cast<std::size_t>(ground));
      for (std::uint64_t m = 0; m < ground; ++m) bits[static_cast<std::size_t>(m)] = b.family.contains(k, m);
      masks.push_back(hex_mask(bits));
    }
    blocks.push_back(Json{{"first_index", b.first_index},
                          {"size", b.family.n()},
                          {"offset", b.offset},
                          {"coordinates", ground},
                          {"membership_masks", std::move(masks)}});
  }
  return Json{{"n_max", family.n_max()},
              {"space", to_json(family.space())},
              {"sets", family.size()},
              {"blocks", std::move(blocks)}};
}

Json to_json(const ProcessSpec& spec) {
  return std::visit(
      [](const auto& s) -> Json {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, BernoulliScaled>) {
          return Json{{"kind", "bernoulli_scaled"}, {"v", to_json(s.v)}, {"p", s.p}};
        } else if constexpr (std::is_same_v<T, TwoSetMix>) {
          return Json{{"kind", "two_set_mix"}, {"v", to_json(s.v)}, {"w", to_json(s.w)}, {"p", s.p}};
        } else if constexpr (std::is_same_v<T, FdExpectationDemo>) {
          return Json{{"kind", "fd_expectation_demo"}, {"v", to_json(s.v)}, {"w", to_json(s.w)},
                      {"p", s.p}, {"noise_scale", s.noise_scale}, {"split", s.split}};
        } else {
          Json values = Json::array();
          for (const auto& v : s.distribution.values()) values.push_back(to_json(v));
          return Json{{"kind", "singleton_noise"},
                      {"probs", s.distribution.probs().probs()},
                      {"values", std::move(values)}};
        }
      },
      spec);
}

ProcessSpec process_from_json(const Json& j, const std::string& path) {
  const Json& kind_json = field(j, path, "kind");
  if (!kind_json.is_string()) throw JsonFormatError(path + "/kind", "expected a string");
  const std::string kind = kind_json.get<std::string>();
  auto poly = [&](const char* key) { return polytope_from_json(field(j, path, key), path + "/" + key); };
  auto real = [&](const char* key) { return number(field(j, path, key), path + "/" + key); };
  ProcessSpec spec = [&]() -> ProcessSpec {
    if (kind == "bernoulli_scaled") return BernoulliScaled{poly("v"), real("p")};
    if (kind == "two_set_mix") return TwoSetMix{poly("v"), poly("w"), real("p")};
    if (kind == "fd_expectation_demo") {
      const Json& split = field(j, path, "split");
      if (!split.is_number_integer()) throw JsonFormatError(path + "/split", "expected an integer");
      return FdExpectationDemo{poly("v"), poly("w"), real("p"), real("noise_scale"),
                               split.get<Eigen::Index>()};
    }
    if (kind == "singleton_noise") {
      const Json& probs = field(j, path, "probs");
      const Json& values = field(j, path, "values");
      if (!probs.is_array()) throw JsonFormatError(path + "/probs", "expected an array");
      if (!values.is_array() || values.empty())
        throw JsonFormatError(path + "/values", "expected a nonempty array");
      std::vector<double> ps;
      for (std::size_t i = 0; i < probs.size(); ++i)
        ps.push_back(number(probs[i], path + "/probs/" + std::to_string(i)));
      std::vector<Polytope<double>> vs;
      for (std::size_t i = 0; i < values.size(); ++i)
        vs.push_back(polytope_from_json(values[i], path + "/values/" + std::to_string(i)));
      try {
        return SingletonNoise{SimpleRandomSet(FiniteProbSpace(std::move(ps)), std::move(vs))};
      } catch (const std::invalid_argument& e) {
        throw JsonFormatError(path, e.what());
      }
    }
    throw JsonFormatError(path + "/kind", "unknown process kind '" + kind + "'");
  }();
  try {
    validate(spec);
  } catch (const std::invalid_argument& e) {
    throw JsonFormatError(path, e.what());
  }
  return spec;
}

Json to_json(const DecayFit& fit) {
  return Json{{"status", fit.status == DecayFit::Status::Ok ? "ok" : "insufficient_data"},
              {"slope", finite_or_null(fit.slope)},
              {"intercept", finite_or_null(fit.intercept)},
              {"residual", finite_or_null(fit.residual)},
              {"points", fit.points}};
}

Json to_json(const ExperimentReport& report) {
  Json series = Json::array();
  for (const auto& s : report.series) {
    Json summary = Json::array();
    for (const auto& c : s.summary)
      summary.push_back(Json{{"n", c.n},
                             {"median", finite_or_null(c.median)},
                             {"q10", finite_or_null(c.q10)},
                             {"q90", finite_or_null(c.q90)},
                             {"mean", finite_or_null(c.mean)}});
    series.push_back(Json{{"id", s.id}, {"fit", to_json(s.fit)}, {"summary", std::move(summary)}});
  }
  Json checks = Json::array();
  for (const auto& c : report.checks)
    checks.push_back(Json{{"name", c.name},
                          {"value", finite_or_null(c.value)},
                          {"lo", finite_or_null(c.lo)},
                          {"hi", finite_or_null(c.hi)},
                          {"status", to_string(c.status)}});
  Json trajectories = Json::array();
  for (std::size_t t = 0; t < report.trajectories.size(); ++t) {
    const auto& tr = report.trajectories[t];
    Json records = Json::array();
    for (const auto& r : tr.records) {
      Json rec{{"n", r.n},
               {"distance", r.distance},
               {"average_generators", r.average_generators},
               {"expectation_generators", r.expectation_generators}};
      if (!r.atom_counts.empty()) rec["atom_counts"] = r.atom_counts;
      if (!std::isnan(r.shift_norm)) rec["shift_norm"] = r.shift_norm;
      if (!std::isnan(r.body_distance)) rec["body_distance"] = r.body_distance;
      records.push_back(std::move(rec));
    }
    trajectories.push_back(
        Json{{"trajectory_id", t}, {"seed", tr.seed}, {"records", std::move(records)}});
  }
  return Json{{"experiment_id", report.experiment_id},
              {"kind", report.kind},
              {"mode", to_string(report.mode)},
              {"seed", report.seed},
              {"checkpoints", report.checkpoints},
              {"passed", report.passed()},
              {"checks", std::move(checks)},
              {"series", std::move(series)},
              {"trajectories", std::move(trajectories)}};
}

Json to_json(const CounterexampleReport& report) {
  Json patterns = Json::array();
  for (const auto& p : report.patterns) {
    Json row{{"psi", p.psi}, {"certificate", p.certificate}};
    if (p.exact) row["exact"] = *p.exact;
    patterns.push_back(std::move(row));
  }
  Json out{{"n_max", report.n_max},
           {"N", report.n},
           {"dim", report.dim},
           {"enumeration", report.enumeration},
           {"seed", report.seed},
           {"mode", to_string(report.mode)},
           {"floor", report.floor},
           {"min_certificate", report.min_certificate}};
  if (report.min_exact) out["min_exact"] = *report.min_exact;
  out["passed"] = report.passed();
  out["patterns"] = std::move(patterns);
  return out;
}

}  // namespace setlab
