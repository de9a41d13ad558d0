// Copyright 2026 The moralsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "moralsim/config.hpp"

#include <climits>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "json.hpp"

namespace moralsim {

namespace {

using json = nlohmann::json;

struct Range {
  double lo = -HUGE_VAL;
  double hi = HUGE_VAL;
  bool lo_open = false;
  bool hi_open = false;

  bool Contains(double v) const {
    if (lo_open ? !(v > lo) : !(v >= lo)) return false;
    if (hi_open ? !(v < hi) : !(v <= hi)) return false;
    return true;
  }
  std::string ToString() const {
    std::ostringstream os;
    os << (lo_open ? "(" : "[");
    if (std::isinf(lo)) os << "-inf"; else os << lo;
    os << ", ";
    if (std::isinf(hi)) os << "inf"; else os << hi;
    os << (hi_open ? ")" : "]");
    return os.str();
  }
};

constexpr Range kAny{};
constexpr Range kUnit{0.0, 1.0};
constexpr Range kPositive{0.0, HUGE_VAL, true, false};
constexpr Range kNonNegative{0.0, HUGE_VAL};

std::string Join(const std::string& path, std::string_view key) {
  std::string escaped;
  for (char c : key) {
    if (c == '~') escaped += "~0";
    else if (c == '/') escaped += "~1";
    else escaped += c;
  }
  return path + "/" + escaped;
}

std::string Join(const std::string& path, std::size_t index) {
  return path + "/" + std::to_string(index);
}

std::string TypeName(const json& j) { return j.type_name(); }

// Collects issues while walking the document.
class Reader {
 public:
  void Issue(const std::string& path, std::string message) {
    issues_.push_back({path, std::move(message)});
  }
  const std::vector<ConfigIssue>& issues() const { return issues_; }

  bool RequireObject(const json& j, const std::string& path) {
    if (j.is_object()) return true;
    Issue(path, "expected an object, got " + TypeName(j));
    return false;
  }

  void CheckKeys(const json& obj, const std::string& path,
                 std::initializer_list<std::string_view> allowed) {
    for (const auto& [key, value] : obj.items()) {
      bool ok = false;
      for (auto a : allowed) ok = ok || key == a;
      if (!ok) {
        std::string list;
        for (auto a : allowed) list += (list.empty() ? "" : ", ") + std::string(a);
        Issue(Join(path, key), "unknown key (allowed: " + list + ")");
      }
    }
  }

  double Number(const json& obj, const std::string& path, std::string_view key,
                double fallback, Range range = kAny) {
    auto it = obj.find(key);
    if (it == obj.end()) return fallback;
    const std::string p = Join(path, key);
    if (!it->is_number()) {
      Issue(p, "expected a number, got " + TypeName(*it));
      return fallback;
    }
    const double v = it->get<double>();
    if (!std::isfinite(v) || !range.Contains(v)) {
      std::ostringstream os;
      os << "value " << v << " outside " << range.ToString();
      Issue(p, os.str());
      return fallback;
    }
    return v;
  }

  long long Integer(const json& obj, const std::string& path, std::string_view key,
                    long long fallback, long long lo, long long hi) {
    auto it = obj.find(key);
    if (it == obj.end()) return fallback;
    return IntegerValue(*it, Join(path, key), fallback, lo, hi);
  }

  long long IntegerValue(const json& j, const std::string& p, long long fallback,
                         long long lo, long long hi) {
    if (!j.is_number_integer()) {
      Issue(p, "expected an integer, got " + TypeName(j));
      return fallback;
    }
    const long long v = j.get<long long>();
    if (v < lo || v > hi) {
      Issue(p, "value " + std::to_string(v) + " outside [" + std::to_string(lo) + ", " +
                   std::to_string(hi) + "]");
      return fallback;
    }
    return v;
  }

  std::string String(const json& obj, const std::string& path, std::string_view key,
                     std::string fallback) {
    auto it = obj.find(key);
    if (it == obj.end()) return fallback;
    if (!it->is_string()) {
      Issue(Join(path, key), "expected a string, got " + TypeName(*it));
      return fallback;
    }
    return it->get<std::string>();
  }

  bool Bool(const json& obj, const std::string& path, std::string_view key, bool fallback) {
    auto it = obj.find(key);
    if (it == obj.end()) return fallback;
    if (!it->is_boolean()) {
      Issue(Join(path, key), "expected a boolean, got " + TypeName(*it));
      return fallback;
    }
    return it->get<bool>();
  }

 private:
  std::vector<ConfigIssue> issues_;
};

// ---------------------------------------------------------------------------
// Parsing

PayoffMatrix ReadGame(Reader& r, const json& root) {
  auto it = root.find("game");
  if (it == root.end()) return MakeGame("IPD");
  const std::string path = "/game";
  if (it->is_string()) {
    try {
      return MakeGame(it->get<std::string>());
    } catch (const Error& e) {
      r.Issue(path, e.what());
      return MakeGame("IPD");
    }
  }
  if (!r.RequireObject(*it, path)) return MakeGame("IPD");
  r.CheckKeys(*it, path, {"name", "payoffs"});
  const std::string name = r.String(*it, path, "name", "custom");
  auto pay = it->find("payoffs");
  if (pay == it->end()) {
    r.Issue(Join(path, "payoffs"), "custom game needs payoffs for CC, CD, DC and DD");
    return MakeGame("IPD");
  }
  const std::string pp = Join(path, "payoffs");
  if (!r.RequireObject(*pay, pp)) return MakeGame("IPD");
  r.CheckKeys(*pay, pp, {"CC", "CD", "DC", "DD"});
  PayoffMatrix::Entries entries{};
  bool ok = true;
  for (Action row : kAllActions) {
    for (Action col : kAllActions) {
      const std::string key{ActionChar(row), ActionChar(col)};
      auto e = pay->find(key);
      if (e == pay->end()) {
        r.Issue(Join(pp, key), "missing payoff pair");
        ok = false;
        continue;
      }
      if (!e->is_array() || e->size() != 2 || !(*e)[0].is_number() || !(*e)[1].is_number() ||
          !std::isfinite((*e)[0].get<double>()) || !std::isfinite((*e)[1].get<double>())) {
        r.Issue(Join(pp, key), "expected [row payoff, column payoff] as two finite numbers");
        ok = false;
        continue;
      }
      entries[Index(row)][Index(col)] = {(*e)[0].get<double>(), (*e)[1].get<double>()};
    }
  }
  if (!ok) return MakeGame("IPD");
  if (name == "IPD" || name == "IVD" || name == "ISH") {
    const PayoffMatrix preset = MakeGame(name);
    if (preset.entries() != entries) {
      r.Issue(Join(path, "name"), "custom game may not reuse the preset name '" + name + "'");
    }
  }
  return PayoffMatrix(name, entries);
}

LearnerConfig ReadLearner(Reader& r, const json& obj, const std::string& path,
                          const LearnerConfig& base) {
  LearnerConfig c = base;
  if (!r.RequireObject(obj, path)) return c;
  r.CheckKeys(obj, path, {"alpha", "gamma", "epsilon_start", "epsilon_end", "epsilon_decay",
                          "decay_fraction", "q_init"});
  c.learning_rate = r.Number(obj, path, "alpha", c.learning_rate, {0.0, 1.0, true, false});
  c.discount = r.Number(obj, path, "gamma", c.discount, {0.0, 1.0, false, true});
  c.epsilon_start = r.Number(obj, path, "epsilon_start", c.epsilon_start, kUnit);
  c.epsilon_end = r.Number(obj, path, "epsilon_end", c.epsilon_end, kUnit);
  c.decay_fraction =
      r.Number(obj, path, "decay_fraction", c.decay_fraction, {0.0, 1.0, true, false});
  c.q_init = r.Number(obj, path, "q_init", c.q_init);
  const std::string decay =
      r.String(obj, path, "epsilon_decay", std::string(EpsilonDecayName(c.decay)));
  if (auto d = ParseEpsilonDecay(decay)) {
    c.decay = *d;
  } else {
    r.Issue(Join(path, "epsilon_decay"),
            "unknown decay '" + decay + "' (allowed: linear, exponential)");
  }
  try {
    c.Validate();
  } catch (const Error& e) {
    r.Issue(path, e.what());
  }
  return c;
}

MoralRewardSpec ReadReward(Reader& r, const json& obj, const std::string& path,
                           const RewardParams& defaults, bool allow_composite) {
  if (!r.RequireObject(obj, path)) return MoralRewardSpec::Selfish();
  auto kind_it = obj.find("kind");
  if (kind_it == obj.end() || !kind_it->is_string()) {
    r.Issue(Join(path, "kind"), "required string; allowed kinds: " + RewardKindNames());
    return MoralRewardSpec::Selfish();
  }
  const std::string name = kind_it->get<std::string>();
  const auto kind = ParseRewardKind(name);
  if (!kind) {
    r.Issue(Join(path, "kind"),
            "unknown reward kind '" + name + "' (allowed: " + RewardKindNames() + ")");
    return MoralRewardSpec::Selfish();
  }
  RewardParams p = defaults;
  switch (*kind) {
    case RewardKind::kSelfish:
    case RewardKind::kUtilitarian:
    case RewardKind::kVirtueEquality:
    case RewardKind::kRawlsianMin:
      r.CheckKeys(obj, path, {"kind"});
      return {*kind, defaults};
    case RewardKind::kDeontological:
    case RewardKind::kVirtueKindness:
      r.CheckKeys(obj, path, {"kind", "xi"});
      p.xi = r.Number(obj, path, "xi", defaults.xi, kPositive);
      return {*kind, p};
    case RewardKind::kVirtueMixed:
      r.CheckKeys(obj, path, {"kind", "beta", "xi_hat"});
      p.beta = r.Number(obj, path, "beta", defaults.beta, kUnit);
      p.xi_hat = r.Number(obj, path, "xi_hat", defaults.xi_hat);
      return {*kind, p};
    case RewardKind::kAltruistic:
      r.CheckKeys(obj, path, {"kind", "weight_self", "weight_other"});
      p.weight_self = r.Number(obj, path, "weight_self", 0.0);
      p.weight_other = r.Number(obj, path, "weight_other", 1.0);
      return {*kind, p};
    case RewardKind::kInequityAverse:
      r.CheckKeys(obj, path, {"kind", "disadvantageous", "advantageous"});
      p.disadvantageous = r.Number(obj, path, "disadvantageous", 0.0, kNonNegative);
      p.advantageous = r.Number(obj, path, "advantageous", 0.0, kNonNegative);
      return {*kind, p};
    case RewardKind::kComposite: {
      r.CheckKeys(obj, path, {"kind", "components"});
      if (!allow_composite) {
        r.Issue(Join(path, "kind"), "composite components may not be composite");
        return MoralRewardSpec::Selfish();
      }
      auto comps = obj.find("components");
      const std::string cp = Join(path, "components");
      if (comps == obj.end() || !comps->is_array() || comps->empty()) {
        r.Issue(cp, "composite needs a non-empty array of {\"weight\", \"reward\"}");
        return MoralRewardSpec::Selfish();
      }
      std::vector<MoralRewardSpec::Term> terms;
      double weight_sum = 0.0;
      for (std::size_t i = 0; i < comps->size(); ++i) {
        const json& c = (*comps)[i];
        const std::string ip = Join(cp, i);
        if (!r.RequireObject(c, ip)) continue;
        r.CheckKeys(c, ip, {"weight", "reward"});
        const double w = r.Number(c, ip, "weight", 1.0);
        auto rw = c.find("reward");
        if (rw == c.end()) {
          r.Issue(Join(ip, "reward"), "missing component reward");
          continue;
        }
        terms.push_back({ReadReward(r, *rw, Join(ip, "reward"), defaults, false), w});
        weight_sum += w;
      }
      if (!terms.empty() && weight_sum == 0.0) {
        r.Issue(cp, "composite weights must not sum to zero");
      }
      return MoralRewardSpec::Composite(std::move(terms));
    }
  }
  return MoralRewardSpec::Selfish();
}

RewardParams ReadRewardDefaults(Reader& r, const json& root) {
  RewardParams p;
  auto it = root.find("reward_defaults");
  if (it == root.end()) return p;
  const std::string path = "/reward_defaults";
  if (!r.RequireObject(*it, path)) return p;
  r.CheckKeys(*it, path, {"xi", "beta", "xi_hat"});
  p.xi = r.Number(*it, path, "xi", p.xi, kPositive);
  p.beta = r.Number(*it, path, "beta", p.beta, kUnit);
  p.xi_hat = r.Number(*it, path, "xi_hat", p.xi_hat);
  return p;
}

std::map<std::string, Norm> ReadNorms(Reader& r, const json& root,
                                      std::vector<std::string>& order) {
  std::map<std::string, Norm> norms;
  auto it = root.find("norms");
  if (it == root.end()) return norms;
  const std::string path = "/norms";
  if (!it->is_array()) {
    r.Issue(path, "expected an array of norms");
    return norms;
  }
  for (std::size_t i = 0; i < it->size(); ++i) {
    const json& n = (*it)[i];
    const std::string np = Join(path, i);
    if (!r.RequireObject(n, np)) continue;
    r.CheckKeys(n, np, {"id", "when", "verdicts"});
    Norm norm;
    norm.id = r.String(n, np, "id", "");
    if (norm.id.empty()) r.Issue(Join(np, "id"), "norm needs a non-empty id");
    auto when = n.find("when");
    if (when == n.end() || !when->is_array()) {
      r.Issue(Join(np, "when"), "expected an array of states (init, CC, CD, DC, DD)");
    } else {
      for (std::size_t k = 0; k < when->size(); ++k) {
        const json& s = (*when)[k];
        auto state = s.is_string() ? GameState::Parse(s.get<std::string>()) : std::nullopt;
        if (!state) {
          r.Issue(Join(Join(np, "when"), k), "expected one of init, CC, CD, DC, DD");
        } else {
          norm.condition.Add(*state);
        }
      }
    }
    auto verdicts = n.find("verdicts");
    const std::string vp = Join(np, "verdicts");
    if (verdicts == n.end() || !verdicts->is_object()) {
      r.Issue(vp, "expected {\"C\": verdict, \"D\": verdict}");
    } else {
      r.CheckKeys(*verdicts, vp, {"C", "D"});
      for (Action a : kAllActions) {
        const std::string key(1, ActionChar(a));
        const std::string text = r.String(*verdicts, vp, key, "");
        auto v = ParseVerdict(text);
        if (!v) {
          r.Issue(Join(vp, key), "expected legal, permissible or forbidden");
        } else {
          norm.verdicts[Index(a)] = *v;
        }
      }
    }
    if (!norm.id.empty()) {
      if (norms.count(norm.id)) {
        r.Issue(Join(np, "id"), "duplicate norm id '" + norm.id + "'");
      } else {
        order.push_back(norm.id);
        norms.emplace(norm.id, norm);
      }
    }
  }
  return norms;
}

std::map<std::string, AgentSpec> ReadAgents(Reader& r, const json& root,
                                            const LearnerConfig& learner_defaults,
                                            const RewardParams& reward_defaults,
                                            const std::map<std::string, Norm>& norms) {
  std::map<std::string, AgentSpec> agents;
  auto it = root.find("agents");
  const std::string path = "/agents";
  if (it == root.end()) {
    r.Issue(path, "at least one agent is required");
    return agents;
  }
  if (!r.RequireObject(*it, path)) return agents;
  for (const auto& [id, a] : it->items()) {
    const std::string ap = Join(path, id);
    if (!r.RequireObject(a, ap)) continue;
    const std::string type = r.String(a, ap, "type", "");
    if (type == "scripted") {
      r.CheckKeys(a, ap, {"type", "policy", "p_cooperate"});
      const std::string name = r.String(a, ap, "policy", "");
      auto kind = ParseScriptedKind(name);
      if (!kind) {
        r.Issue(Join(ap, "policy"), "unknown policy '" + name + "' (allowed: AllC, AllD, TFT, Random)");
        continue;
      }
      ScriptedPolicy policy{*kind, 0.5};
      if (*kind == ScriptedKind::kRandom) {
        policy.p_cooperate = r.Number(a, ap, "p_cooperate", 0.5, kUnit);
      } else if (a.contains("p_cooperate")) {
        r.Issue(Join(ap, "p_cooperate"), "only Random policies take p_cooperate");
      } else {
        policy.p_cooperate = policy.CooperationProbability(GameState::Initial());
      }
      agents.emplace(id, AgentSpec::Scripted(id, policy));
    } else if (type == "learner") {
      r.CheckKeys(a, ap, {"type", "reward", "learner", "norms", "supervision"});
      LearnerAgent learner;
      auto lc = a.find("learner");
      learner.config = lc == a.end() ? learner_defaults
                                     : ReadLearner(r, *lc, Join(ap, "learner"), learner_defaults);
      auto rw = a.find("reward");
      if (rw == a.end()) {
        r.Issue(Join(ap, "reward"), "learner needs a reward; allowed kinds: " + RewardKindNames());
      } else {
        learner.reward = ReadReward(r, *rw, Join(ap, "reward"), reward_defaults, true);
      }
      auto nb = a.find("norms");
      if (nb != a.end()) {
        const std::string np = Join(ap, "norms");
        if (!nb->is_array()) {
          r.Issue(np, "expected an array of norm ids");
        } else {
          std::vector<Norm> book;
          for (std::size_t k = 0; k < nb->size(); ++k) {
            const json& ref = (*nb)[k];
            const std::string ref_id = ref.is_string() ? ref.get<std::string>() : "";
            auto found = norms.find(ref_id);
            if (found == norms.end()) {
              r.Issue(Join(np, k), "undefined norm '" + ref_id + "'");
            } else if (std::any_of(book.begin(), book.end(),
                                   [&](const Norm& n) { return n.id == ref_id; })) {
              r.Issue(Join(np, k), "norm '" + ref_id + "' listed twice");
            } else {
              book.push_back(found->second);
            }
          }
          learner.norms = NormBook(std::move(book));
        }
      }
      const std::string mode = r.String(a, ap, "supervision", "always");
      if (mode == "always") {
        learner.supervision = SupervisionMode::kAlways;
      } else if (mode == "deployment_only") {
        learner.supervision = SupervisionMode::kDeploymentOnly;
      } else {
        r.Issue(Join(ap, "supervision"), "expected always or deployment_only");
      }
      if (a.contains("supervision") && !learner.norms) {
        r.Issue(Join(ap, "supervision"), "supervision mode given but no norms");
      }
      agents.emplace(id, AgentSpec{id, std::move(learner)});
    } else {
      r.Issue(Join(ap, "type"), "expected learner or scripted");
    }
  }
  if (agents.empty() && r.issues().empty()) r.Issue(path, "at least one agent is required");
  return agents;
}

std::vector<Pairing> ReadPairings(Reader& r, const json& root,
                                  const std::map<std::string, AgentSpec>& agents) {
  std::vector<Pairing> pairings;
  auto it = root.find("pairings");
  const std::string path = "/pairings";
  if (it == root.end()) {
    r.Issue(path, "at least one pairing is required");
    return pairings;
  }
  auto lookup = [&](const std::string& id, const std::string& p) -> const AgentSpec* {
    auto found = agents.find(id);
    if (found == agents.end()) {
      r.Issue(p, "undefined agent '" + id + "'");
      return nullptr;
    }
    return &found->second;
  };
  auto add = [&](std::string id, const AgentSpec* m, const AgentSpec* o) {
    if (m && o) pairings.push_back({std::move(id), *m, *o});
  };

  if (it->is_object()) {
    r.CheckKeys(*it, path, {"round_robin", "self_play"});
    const bool self_play = r.Bool(*it, path, "self_play", false);
    auto ids = it->find("round_robin");
    const std::string rp = Join(path, "round_robin");
    if (ids == it->end() || !ids->is_array() || ids->empty()) {
      r.Issue(rp, "expected a non-empty array of agent ids");
      return pairings;
    }
    std::vector<std::pair<std::string, const AgentSpec*>> pool;
    for (std::size_t k = 0; k < ids->size(); ++k) {
      const json& v = (*ids)[k];
      const std::string id = v.is_string() ? v.get<std::string>() : "";
      pool.emplace_back(id, lookup(id, Join(rp, k)));
    }
    for (std::size_t i = 0; i < pool.size(); ++i) {
      for (std::size_t j = self_play ? i : i + 1; j < pool.size(); ++j) {
        add(pool[i].first + "_vs_" + pool[j].first, pool[i].second, pool[j].second);
      }
    }
    if (pool.size() == 1 && !self_play) {
      r.Issue(rp, "a round robin over one agent needs self_play");
    }
    return pairings;
  }
  if (!it->is_array() || it->empty()) {
    r.Issue(path, "expected a non-empty array of {\"M\", \"O\"} or a round_robin object");
    return pairings;
  }
  for (std::size_t k = 0; k < it->size(); ++k) {
    const json& p = (*it)[k];
    const std::string pp = Join(path, k);
    if (!r.RequireObject(p, pp)) continue;
    r.CheckKeys(p, pp, {"id", "M", "O"});
    const std::string m = r.String(p, pp, "M", "");
    const std::string o = r.String(p, pp, "O", "");
    const std::string id = r.String(p, pp, "id", m + "_vs_" + o);
    add(id, lookup(m, Join(pp, "M")), lookup(o, Join(pp, "O")));
  }
  return pairings;
}

std::vector<std::uint64_t> ReadSeeds(Reader& r, const json& root) {
  auto it = root.find("seeds");
  if (it == root.end()) return {0};
  const std::string path = "/seeds";
  std::vector<std::uint64_t> seeds;
  if (it->is_number_integer()) {
    const long long n = r.IntegerValue(*it, path, 1, 1, 1'000'000);
    for (long long s = 0; s < n; ++s) seeds.push_back(static_cast<std::uint64_t>(s));
    return seeds;
  }
  if (!it->is_array() || it->empty()) {
    r.Issue(path, "expected a seed count or a non-empty array of seeds");
    return {0};
  }
  std::set<std::uint64_t> seen;
  for (std::size_t k = 0; k < it->size(); ++k) {
    const json& v = (*it)[k];
    if (!v.is_number_unsigned()) {
      r.Issue(Join(path, k), "expected a non-negative integer seed");
      continue;
    }
    const auto s = v.get<std::uint64_t>();
    if (!seen.insert(s).second) r.Issue(Join(path, k), "duplicate seed " + std::to_string(s));
    seeds.push_back(s);
  }
  return seeds;
}

// ---------------------------------------------------------------------------
// Effective config

json LearnerToJson(const LearnerConfig& c) {
  return {{"alpha", c.learning_rate},
          {"gamma", c.discount},
          {"epsilon_start", c.epsilon_start},
          {"epsilon_end", c.epsilon_end},
          {"epsilon_decay", std::string(EpsilonDecayName(c.decay))},
          {"decay_fraction", c.decay_fraction},
          {"q_init", c.q_init}};
}

json RewardToJson(const MoralRewardSpec& spec) {
  json j = {{"kind", std::string(RewardKindName(spec.kind()))}};
  const RewardParams& p = spec.params();
  switch (spec.kind()) {
    case RewardKind::kDeontological:
    case RewardKind::kVirtueKindness:
      j["xi"] = p.xi;
      break;
    case RewardKind::kVirtueMixed:
      j["beta"] = p.beta;
      j["xi_hat"] = p.xi_hat;
      break;
    case RewardKind::kAltruistic:
      j["weight_self"] = p.weight_self;
      j["weight_other"] = p.weight_other;
      break;
    case RewardKind::kInequityAverse:
      j["disadvantageous"] = p.disadvantageous;
      j["advantageous"] = p.advantageous;
      break;
    case RewardKind::kComposite: {
      json comps = json::array();
      for (const auto& t : spec.terms()) {
        comps.push_back({{"weight", t.weight}, {"reward", RewardToJson(t.spec)}});
      }
      j["components"] = comps;
      break;
    }
    default:
      break;
  }
  return j;
}

json NormToJson(const Norm& n) {
  json when = json::array();
  for (GameState s : n.condition.States()) when.push_back(s.ToString());
  return {{"id", n.id},
          {"when", when},
          {"verdicts",
           {{"C", std::string(VerdictName(n.verdicts[0]))},
            {"D", std::string(VerdictName(n.verdicts[1]))}}}};
}

json AgentToJson(const AgentSpec& a) {
  if (!a.IsLearner()) {
    json j = {{"type", "scripted"}, {"policy", a.scripted().kind == ScriptedKind::kRandom
                                                   ? std::string("Random")
                                                   : a.scripted().Name()}};
    if (a.scripted().kind == ScriptedKind::kRandom) j["p_cooperate"] = a.scripted().p_cooperate;
    return j;
  }
  const LearnerAgent& l = a.learner();
  json j = {{"type", "learner"},
            {"learner", LearnerToJson(l.config)},
            {"reward", RewardToJson(l.reward)}};
  if (l.norms) {
    json ids = json::array();
    for (const Norm& n : l.norms->norms()) ids.push_back(n.id);
    j["norms"] = ids;
    j["supervision"] =
        l.supervision == SupervisionMode::kAlways ? "always" : "deployment_only";
  }
  return j;
}

json GameToJson(const PayoffMatrix& m) {
  json payoffs = json::object();
  for (Action row : kAllActions) {
    for (Action col : kAllActions) {
      const PayoffPair& p = m.At(row, col);
      payoffs[std::string{ActionChar(row), ActionChar(col)}] = {p.own, p.opp};
    }
  }
  return {{"name", m.name()}, {"payoffs", payoffs}};
}

std::pair<std::size_t, std::size_t> LineColumn(std::string_view text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < text.size() && i + 1 < byte; ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

json ParseJson(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    const auto [line, col] = LineColumn(text, e.byte);
    std::string what = e.what();
    // Drop nlohmann's "[json.exception.parse_error.101] parse error at ..." prefix.
    if (auto pos = what.find(": "); pos != std::string::npos) what = what.substr(pos + 2);
    throw ConfigError({{"", "parse error at line " + std::to_string(line) + ", column " +
                                std::to_string(col) + ": " + what}});
  }
}

std::string ToPointer(std::string_view field_path) {
  if (!field_path.empty() && field_path.front() == '/') return std::string(field_path);
  std::string out = "/";
  for (char c : field_path) {
    if (c == '.') out += '/';
    else if (c == '~') out += "~0";
    else if (c == '/') out += "~1";
    else out += c;
  }
  return out;
}

}  // namespace

ConfigError::ConfigError(std::vector<ConfigIssue> issues)
    : Error(ErrorKind::kInvalidConfig,
            [&] {
              std::string msg = std::to_string(issues.size()) + " problem(s)";
              for (const auto& i : issues) {
                msg += "\n  " + (i.path.empty() ? std::string("<document>") : i.path) + ": " +
                       i.message;
              }
              return msg;
            }()),
      issues_(std::move(issues)) {}

LoadedConfig ParseConfig(std::string_view text) {
  const json root = ParseJson(text);
  Reader r;
  if (!root.is_object()) {
    throw ConfigError(std::vector<ConfigIssue>{{"", "top level must be an object"}});
  }
  r.CheckKeys(root, "",
              {"game", "horizon", "master_seed", "seeds", "window_fraction",
               "exploring_start_prob", "output_dir", "learner_defaults", "reward_defaults",
               "norms", "agents", "pairings"});

  LoadedConfig out;
  ExperimentConfig& cfg = out.experiment;
  cfg.game = ReadGame(r, root);
  cfg.horizon = static_cast<int>(r.Integer(root, "", "horizon", cfg.horizon, 1, INT_MAX));
  cfg.master_seed = 0;
  if (auto it = root.find("master_seed"); it != root.end()) {
    if (it->is_number_unsigned()) {
      cfg.master_seed = it->get<std::uint64_t>();
    } else {
      r.Issue("/master_seed", "expected a non-negative integer");
    }
  }
  cfg.seeds = ReadSeeds(r, root);
  cfg.window_fraction =
      r.Number(root, "", "window_fraction", cfg.window_fraction, {0.0, 1.0, true, false});
  cfg.match_options.exploring_start_prob =
      r.Number(root, "", "exploring_start_prob", 0.0, kUnit);
  out.output_dir = r.String(root, "", "output_dir", "");

  LearnerConfig learner_defaults;
  if (auto it = root.find("learner_defaults"); it != root.end()) {
    learner_defaults = ReadLearner(r, *it, "/learner_defaults", learner_defaults);
  }
  const RewardParams reward_defaults = ReadRewardDefaults(r, root);
  std::vector<std::string> norm_order;
  const auto norms = ReadNorms(r, root, norm_order);
  const auto agents = ReadAgents(r, root, learner_defaults, reward_defaults, norms);
  cfg.pairings = ReadPairings(r, root, agents);

  if (r.issues().empty()) {
    try {
      cfg.Validate();
    } catch (const Error& e) {
      r.Issue("", e.what());
    }
  }
  if (!r.issues().empty()) throw ConfigError(r.issues());

  json eff = {{"game", GameToJson(cfg.game)},
              {"horizon", cfg.horizon},
              {"master_seed", cfg.master_seed},
              {"seeds", cfg.seeds},
              {"window_fraction", cfg.window_fraction},
              {"exploring_start_prob", cfg.match_options.exploring_start_prob},
              {"output_dir", out.output_dir},
              {"learner_defaults", LearnerToJson(learner_defaults)},
              {"reward_defaults",
               {{"xi", reward_defaults.xi},
                {"beta", reward_defaults.beta},
                {"xi_hat", reward_defaults.xi_hat}}}};
  json norms_json = json::array();
  for (const auto& id : norm_order) norms_json.push_back(NormToJson(norms.at(id)));
  eff["norms"] = norms_json;
  json agents_json = json::object();
  for (const auto& [id, a] : agents) agents_json[id] = AgentToJson(a);
  eff["agents"] = agents_json;
  json pairings_json = json::array();
  for (const Pairing& p : cfg.pairings) {
    pairings_json.push_back({{"id", p.id}, {"M", p.agent_m.id}, {"O", p.agent_o.id}});
  }
  eff["pairings"] = pairings_json;
  out.effective_json = eff.dump(2) + "\n";
  return out;
}

std::string ReadTextFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kIo, "cannot read '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

LoadedConfig LoadConfig(const std::filesystem::path& path) {
  return ParseConfig(ReadTextFile(path));
}

std::string SetNumericField(std::string_view text, std::string_view field_path,
                            double value) {
  if (!std::isfinite(value)) {
    throw Error(ErrorKind::kInvalidInput, "sweep values must be finite");
  }
  const json::json_pointer ptr(ToPointer(field_path));
  auto assign = [&](json& doc) {
    json& slot = doc.at(ptr);
    if (slot.is_number_integer() && std::floor(value) == value &&
        std::abs(value) < 9.0e15) {
      slot = static_cast<long long>(value);
    } else {
      slot = value;
    }
  };
  auto numeric_at = [&](const json& doc) {
    return doc.contains(ptr) && doc.at(ptr).is_number();
  };

  json raw = ParseJson(text);
  if (numeric_at(raw)) {
    assign(raw);
    return raw.dump(2) + "\n";
  }
  json effective = json::parse(ParseConfig(text).effective_json);
  if (numeric_at(effective)) {
    // Prefer adding the field to the original document, so a default such as
    // learner_defaults.gamma still reaches every agent that inherits it.
    try {
      json patched = raw;
      patched[ptr] = value;
      const std::string out = patched.dump(2) + "\n";
      ParseConfig(out);
      return out;
    } catch (const std::exception&) {
    }
    assign(effective);
    return effective.dump(2) + "\n";
  }
  const bool exists = raw.contains(ptr) || effective.contains(ptr);
  throw Error(ErrorKind::kInvalidInput,
              "'" + std::string(field_path) +
                  (exists ? "' is not a numeric config field" : "' is not a config field"));
}

}  // namespace moralsim
