#include "lwr/network.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "json.hpp"

namespace lwr {

using nlohmann::json;

std::vector<int> DistributionMatrix::rows_violating_distinctness() const {
  std::vector<int> bad;
  for (int j = 0; j < m; ++j) {
    for (int i = 0; i < n && std::find(bad.begin(), bad.end(), j) == bad.end();
         ++i)
      for (int k = i + 1; k < n; ++k)
        if (at(j, i) == at(j, k)) {
          bad.push_back(j);
          break;
        }
  }
  return bad;
}

const ScheduleEntry& JunctionSpec::entry_at(double t) const {
  double tl = t;
  if (period && *period > 0.0) tl = std::fmod(t, *period);
  // Right-continuous: the last entry with activation time <= tl.
  const ScheduleEntry* active = &schedule.front();
  for (const auto& e : schedule) {
    if (e.t <= tl + 1e-15) active = &e;
  }
  return *active;
}

namespace {

bool column_changed(const ScheduleEntry& a, const ScheduleEntry& b, int i) {
  for (int j = 0; j < a.matrix.m; ++j)
    if (a.matrix.at(j, i) != b.matrix.at(j, i)) return true;
  return false;
}

bool light_changed(const ScheduleEntry& a, const ScheduleEntry& b, int i) {
  int la = a.lights.empty() ? 1 : a.lights[i];
  int lb = b.lights.empty() ? 1 : b.lights[i];
  return la != lb;
}

}  // namespace

std::optional<double> JunctionSpec::next_jump_after(double t) const {
  if (schedule.size() < 2 && !period) return std::nullopt;
  // Candidate activation times, periodically extended.
  if (!period) {
    for (const auto& e : schedule)
      if (e.t > t + 1e-15) return e.t;
    return std::nullopt;
  }
  double p = *period;
  double base = std::floor(t / p) * p;
  for (int k = 0; k < 3; ++k) {
    for (const auto& e : schedule) {
      double cand = base + k * p + e.t;
      if (cand > t + 1e-15) {
        // A single-entry periodic schedule never actually changes.
        if (schedule.size() >= 2 || e.t != schedule.front().t) return cand;
        return std::nullopt;
      }
    }
  }
  return std::nullopt;
}

int JunctionSpec::jump_count(double t1, double t2) const {
  int count = 0;
  double t = t1;
  for (int guard = 0; guard < 1000000; ++guard) {
    auto next = next_jump_after(t);
    if (!next || *next > t2 + 1e-15) break;
    const ScheduleEntry& before = entry_at(*next - 1e-12);
    const ScheduleEntry& after = entry_at(*next);
    for (int i = 0; i < n(); ++i) {
      if (column_changed(before, after, i)) ++count;
      if (light_changed(before, after, i)) ++count;
    }
    t = *next;
  }
  return count;
}

FluxModel FluxParams::build() const {
  FluxModel base = FluxModel::smooth(fmax);
  if (family == "smooth") return base;
  if (family == "kinked") return FluxModel::kinked(base, nu);
  throw config_error("flux.family: unknown family '" + family + "'");
}

int NetworkSpec::road_index(const std::string& id) const {
  for (size_t k = 0; k < roads.size(); ++k)
    if (roads[k].id == id) return static_cast<int>(k);
  return -1;
}

NetworkSpec::Attachment NetworkSpec::downstream_of(int road) const {
  for (size_t j = 0; j < junctions.size(); ++j) {
    const auto& jn = junctions[j];
    for (size_t s = 0; s < jn.incoming.size(); ++s)
      if (jn.incoming[s] == roads[road].id)
        return {static_cast<int>(j), static_cast<int>(s)};
  }
  return {};
}

NetworkSpec::Attachment NetworkSpec::upstream_of(int road) const {
  for (size_t j = 0; j < junctions.size(); ++j) {
    const auto& jn = junctions[j];
    for (size_t s = 0; s < jn.outgoing.size(); ++s)
      if (jn.outgoing[s] == roads[road].id)
        return {static_cast<int>(j), static_cast<int>(s)};
  }
  return {};
}

void NetworkSpec::validate() {
  warnings.clear();
  std::set<std::string> ids;
  for (size_t k = 0; k < roads.size(); ++k) {
    const auto& r = roads[k];
    std::string path = "roads[" + std::to_string(k) + "]";
    if (r.id.empty()) throw config_error(path + ".id: empty identifier");
    if (!ids.insert(r.id).second)
      throw config_error(path + ".id: duplicate road id '" + r.id + "'");
    if (!(std::isfinite(r.a) && std::isfinite(r.b) && r.a < r.b))
      throw config_error(path + ": requires finite a < b");
    if (r.values.size() != r.breaks.size() + 1)
      throw config_error(path + ".initial: needs one more value than breaks");
    for (size_t i = 0; i < r.breaks.size(); ++i) {
      if (r.breaks[i] <= r.a || r.breaks[i] >= r.b)
        throw config_error(path + ".initial[" + std::to_string(i) +
                           "]: breakpoint outside (a,b)");
      if (i > 0 && r.breaks[i] <= r.breaks[i - 1])
        throw config_error(path + ".initial[" + std::to_string(i) +
                           "]: breakpoints must be strictly increasing");
    }
    for (size_t i = 0; i < r.values.size(); ++i)
      if (!(r.values[i] >= 0.0 && r.values[i] <= 1.0))
        throw config_error(path + ".initial[" + std::to_string(i) +
                           "]: density outside [0,1]");
  }

  std::set<std::string> used_in, used_out, jids;
  for (size_t k = 0; k < junctions.size(); ++k) {
    auto& jn = junctions[k];
    std::string path = "junctions[" + std::to_string(k) + "]";
    if (!jids.insert(jn.id).second)
      throw config_error(path + ".id: duplicate junction id '" + jn.id + "'");
    if (jn.n() < 1 || jn.n() > 3 || jn.m() < 1 || jn.m() > 3)
      throw config_error(path + ": incoming/outgoing counts must be in 1..3");
    for (const auto& rid : jn.incoming) {
      if (road_index(rid) < 0)
        throw config_error(path + ".incoming: unknown road id '" + rid + "'");
      if (!used_in.insert(rid).second)
        throw config_error(path + ".incoming: road '" + rid +
                           "' is incoming to more than one junction");
    }
    for (const auto& rid : jn.outgoing) {
      if (road_index(rid) < 0)
        throw config_error(path + ".outgoing: unknown road id '" + rid + "'");
      if (!used_out.insert(rid).second)
        throw config_error(path + ".outgoing: road '" + rid +
                           "' is outgoing from more than one junction");
    }
    if (jn.schedule.empty())
      throw config_error(path + ".schedule: at least one entry required");
    if (jn.schedule.front().t != 0.0)
      throw config_error(path + ".schedule[0].t: first entry must be at t=0");
    for (size_t e = 0; e < jn.schedule.size(); ++e) {
      auto& entry = jn.schedule[e];
      std::string epath = path + ".schedule[" + std::to_string(e) + "]";
      if (e > 0 && entry.t <= jn.schedule[e - 1].t)
        throw config_error(epath + ".t: activation times must increase");
      if (entry.matrix.m != jn.m() || entry.matrix.n != jn.n())
        throw config_error(epath + ".matrix: dimensions must be " +
                           std::to_string(jn.m()) + "x" +
                           std::to_string(jn.n()));
      for (int i = 0; i < jn.n(); ++i) {
        double col = 0.0;
        for (int j = 0; j < jn.m(); ++j) {
          double a = entry.matrix.at(j, i);
          if (!(a >= 0.0 && a <= 1.0))
            throw config_error(epath + ".matrix: entry (" + std::to_string(j) +
                               "," + std::to_string(i) + ") outside [0,1]");
          col += a;
        }
        if (std::abs(col - 1.0) > 1e-12)
          throw config_error(epath + ".matrix: column " + std::to_string(i) +
                             " sums to " + std::to_string(col));
      }
      if (!entry.lights.empty()) {
        if (static_cast<int>(entry.lights.size()) != jn.n())
          throw config_error(epath + ".lights: needs one gate per incoming");
        for (int g : entry.lights)
          if (g != 0 && g != 1)
            throw config_error(epath + ".lights: gates must be 0 or 1");
        if (jn.n() == 2 && entry.lights[0] + entry.lights[1] != 1)
          throw config_error(epath + ".lights: two-road lights must satisfy "
                             "chi1 + chi2 = 1");
      }
      for (int j : entry.matrix.rows_violating_distinctness())
        warnings.push_back(epath + ".matrix: row " + std::to_string(j) +
                           " has equal entries (uniqueness hypothesis "
                           "violated; lexicographic tie-break applies)");
    }
    if (jn.period) {
      if (!(*jn.period > 0.0))
        throw config_error(path + ".period: must be positive");
      if (jn.schedule.back().t >= *jn.period)
        throw config_error(path + ".period: last activation time must "
                           "precede the period");
    }
  }
  if (!(tracking.delta > 0.0))
    throw config_error("tracking.delta: must be positive");
  if (!(tracking.horizon >= 0.0))
    throw config_error("tracking.horizon: must be non-negative");
  flux.build();  // validates flux parameters
}

namespace {

DistributionMatrix matrix_from_json(const json& rows, int m, int n,
                                    const std::string& path) {
  DistributionMatrix A;
  A.m = m;
  A.n = n;
  A.entries.assign(static_cast<size_t>(m) * n, 0.0);
  if (!rows.is_array() || static_cast<int>(rows.size()) != m)
    throw config_error(path + ": expected " + std::to_string(m) + " rows");
  for (int j = 0; j < m; ++j) {
    if (!rows[j].is_array() || static_cast<int>(rows[j].size()) != n)
      throw config_error(path + "[" + std::to_string(j) + "]: expected " +
                         std::to_string(n) + " entries");
    for (int i = 0; i < n; ++i) A.at(j, i) = rows[j][i].get<double>();
  }
  return A;
}

}  // namespace

NetworkSpec parse_network(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw config_error(std::string("document: ") + e.what());
  }
  NetworkSpec spec;
  try {
    if (doc.value("spec_version", 1) != 1)
      throw config_error("spec_version: unsupported version");
    if (doc.contains("flux")) {
      const auto& f = doc["flux"];
      spec.flux.family = f.value("family", "smooth");
      spec.flux.fmax = f.value("fmax", 1.0);
      spec.flux.nu = f.value("nu", 0.05);
    }
    if (doc.contains("tracking")) {
      spec.tracking.delta = doc["tracking"].value("delta", 0.05);
      spec.tracking.horizon = doc["tracking"].value("horizon", 1.0);
    }
    for (const auto& r : doc.value("roads", json::array())) {
      RoadSpec road;
      road.id = r.at("id").get<std::string>();
      road.a = r.at("a").get<double>();
      road.b = r.at("b").get<double>();
      const auto& init = r.at("initial");
      // initial: [[x0, v0], [x1, v1], ...]; x0 is ignored (road start),
      // later x_k are interior breakpoints.
      if (!init.is_array() || init.empty())
        throw config_error("roads: initial must be a non-empty list");
      for (size_t k = 0; k < init.size(); ++k) {
        double x = init[k][0].get<double>();
        double v = init[k][1].get<double>();
        if (k > 0) road.breaks.push_back(x);
        road.values.push_back(v);
      }
      spec.roads.push_back(std::move(road));
    }
    for (const auto& j : doc.value("junctions", json::array())) {
      JunctionSpec jn;
      jn.id = j.at("id").get<std::string>();
      for (const auto& rid : j.at("incoming")) jn.incoming.push_back(rid);
      for (const auto& rid : j.at("outgoing")) jn.outgoing.push_back(rid);
      const auto& sched = j.at("schedule");
      for (size_t e = 0; e < sched.size(); ++e) {
        ScheduleEntry entry;
        entry.t = sched[e].value("t", 0.0);
        entry.matrix = matrix_from_json(
            sched[e].at("matrix"), jn.m(), jn.n(),
            "junctions." + jn.id + ".schedule[" + std::to_string(e) +
                "].matrix");
        if (sched[e].contains("lights"))
          for (const auto& g : sched[e]["lights"])
            entry.lights.push_back(g.get<int>());
        jn.schedule.push_back(std::move(entry));
      }
      if (j.contains("period")) jn.period = j["period"].get<double>();
      spec.junctions.push_back(std::move(jn));
    }
  } catch (const json::exception& e) {
    throw config_error(std::string("document: ") + e.what());
  }
  spec.validate();
  return spec;
}

std::string serialize_network(const NetworkSpec& spec) {
  json doc;
  doc["spec_version"] = 1;
  doc["flux"]["family"] = spec.flux.family;
  doc["flux"]["fmax"] = spec.flux.fmax;
  if (spec.flux.family == "kinked") doc["flux"]["nu"] = spec.flux.nu;
  doc["tracking"]["delta"] = spec.tracking.delta;
  doc["tracking"]["horizon"] = spec.tracking.horizon;
  doc["roads"] = json::array();
  for (const auto& r : spec.roads) {
    json jr;
    jr["id"] = r.id;
    jr["a"] = r.a;
    jr["b"] = r.b;
    json init = json::array();
    init.push_back({r.a, r.values[0]});
    for (size_t k = 0; k < r.breaks.size(); ++k)
      init.push_back({r.breaks[k], r.values[k + 1]});
    jr["initial"] = init;
    doc["roads"].push_back(jr);
  }
  doc["junctions"] = json::array();
  for (const auto& jn : spec.junctions) {
    json jj;
    jj["id"] = jn.id;
    jj["incoming"] = jn.incoming;
    jj["outgoing"] = jn.outgoing;
    jj["schedule"] = json::array();
    for (const auto& e : jn.schedule) {
      json je;
      je["t"] = e.t;
      json rows = json::array();
      for (int j = 0; j < e.matrix.m; ++j) {
        json row = json::array();
        for (int i = 0; i < e.matrix.n; ++i) row.push_back(e.matrix.at(j, i));
        rows.push_back(row);
      }
      je["matrix"] = rows;
      if (!e.lights.empty()) je["lights"] = e.lights;
      jj["schedule"].push_back(je);
    }
    if (jn.period) jj["period"] = *jn.period;
    doc["junctions"].push_back(jj);
  }
  return doc.dump(2);
}

}  // namespace lwr
