#include "gittins/config.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "gittins/errors.hpp"
#include "json.hpp"

namespace gittins {

namespace {

using nlohmann::json;

class Problems {
 public:
  void add(std::string msg) { list_.push_back(std::move(msg)); }
  void raise_if_any() const {
    if (list_.empty()) return;
    std::string all = "invalid sweep config:";
    for (const auto& p : list_) all += "\n  " + p;
    throw ConfigError(all);
  }

 private:
  std::vector<std::string> list_;
};

bool positive_int(const json& j, const char* key, const std::string& where, Problems& probs,
                  long& out) {
  if (!j.contains(key)) {
    probs.add(where + key + ": missing");
    return false;
  }
  const json& v = j.at(key);
  if (!v.is_number_integer() || v.get<long>() < 1) {
    probs.add(where + key + ": must be an integer >= 1, got " + v.dump());
    return false;
  }
  out = v.get<long>();
  return true;
}

std::vector<double> parse_gaps(const json& g, const std::string& where, Problems& probs) {
  std::vector<double> gaps;
  if (g.is_array()) {
    for (std::size_t i = 0; i < g.size(); ++i) {
      if (!g[i].is_number() || g[i].get<double>() < 0.0)
        probs.add(where + "gaps[" + std::to_string(i) + "]: must be a number >= 0, got " +
                  g[i].dump());
      else
        gaps.push_back(g[i].get<double>());
    }
  } else if (g.is_object()) {
    const bool ok = g.contains("from") && g["from"].is_number() && g.contains("to") &&
                    g["to"].is_number() && g.contains("count") && g["count"].is_number_integer() &&
                    g["count"].get<long>() >= 1;
    if (!ok) {
      probs.add(where + "gaps: range form needs numeric from, to and integer count >= 1");
      return gaps;
    }
    const double a = g["from"].get<double>();
    const double b = g["to"].get<double>();
    const long k = g["count"].get<long>();
    if (a < 0.0 || b < a) probs.add(where + "gaps: need 0 <= from <= to");
    for (long i = 0; i < k; ++i) gaps.push_back(k == 1 ? a : a + (b - a) * double(i) / double(k - 1));
  } else {
    probs.add(where + "gaps: must be a list or a {from, to, count} range");
  }
  if (gaps.empty() && g.is_array()) probs.add(where + "gaps: empty");
  return gaps;
}

}  // namespace

std::vector<SweepConfig> parse_sweep_config(const std::string& text) {
  json root;
  try {
    root = json::parse(text, nullptr, true, true);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("invalid sweep config: ") + e.what());
  }
  Problems probs;
  if (!root.is_object()) throw ConfigError("invalid sweep config: top level must be an object");

  static const char* known[] = {"seed", "reps", "policies", "prior", "grids"};
  for (auto it = root.begin(); it != root.end(); ++it)
    if (std::find(std::begin(known), std::end(known), it.key()) == std::end(known))
      probs.add("unknown key '" + it.key() + "'");

  SweepConfig base;
  long reps = 0;
  if (positive_int(root, "reps", "", probs, reps)) base.reps = int(reps);
  if (root.contains("seed")) {
    if (!root["seed"].is_number_unsigned() && !(root["seed"].is_number_integer() && root["seed"].get<long>() >= 0))
      probs.add("seed: must be a non-negative integer");
    else
      base.seed = root["seed"].get<std::uint64_t>();
  }
  if (!root.contains("policies") || !root["policies"].is_array() || root["policies"].empty()) {
    probs.add("policies: must be a non-empty list of policy names");
  } else {
    for (const json& p : root["policies"]) {
      const auto kind = p.is_string() ? parse_policy(p.get<std::string>()) : std::nullopt;
      if (!kind)
        probs.add("policies: unknown policy " + p.dump() +
                  " (known: gittins, gittins-prior, gittins-approx, ucb, ocucb, thompson, bayes)");
      else
        base.policies.push_back(*kind);
    }
  }
  if (root.contains("prior")) {
    const json& p = root["prior"];
    if (!p.is_object() || !p.contains("mean") || !p["mean"].is_number() ||
        !p.contains("variance") || !p["variance"].is_number() || p["variance"].get<double>() <= 0.0)
      probs.add("prior: must be {\"mean\": number, \"variance\": number > 0}");
    else
      base.prior = {p["mean"].get<double>(), p["variance"].get<double>()};
  }

  std::vector<SweepConfig> out;
  if (!root.contains("grids") || !root["grids"].is_array() || root["grids"].empty()) {
    probs.add("grids: must be a non-empty list");
  } else {
    for (std::size_t i = 0; i < root["grids"].size(); ++i) {
      const json& g = root["grids"][i];
      const std::string where = "grids[" + std::to_string(i) + "].";
      if (!g.is_object()) {
        probs.add(where.substr(0, where.size() - 1) + ": must be an object");
        continue;
      }
      SweepConfig c = base;
      long n = 0;
      long d = 0;
      if (positive_int(g, "horizon", where, probs, n)) c.horizon = int(n);
      if (positive_int(g, "arms", where, probs, d)) c.arms = int(d);
      if (!g.contains("gaps"))
        probs.add(where + "gaps: missing");
      else
        c.gaps = parse_gaps(g["gaps"], where, probs);
      for (PolicyKind k : c.policies)
        if (k == PolicyKind::BayesTwoArm && d != 0 && d != 2)
          probs.add(where + "arms: policy bayes needs arms = 2");
      out.push_back(std::move(c));
    }
  }
  probs.raise_if_any();
  return out;
}

std::vector<SweepConfig> load_sweep_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read sweep config " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_sweep_config(buf.str());
}

}  // namespace gittins
