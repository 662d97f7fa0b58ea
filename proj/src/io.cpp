#include "lwr/io.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace lwr {

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << std::setprecision(17);
  return out;
}

std::string format_time_tag(double t) {
  std::ostringstream ss;
  ss << std::setprecision(12) << t;
  std::string tag = ss.str();
  for (auto& c : tag)
    if (c == '.') c = 'p';
  return tag;
}

void append_telemetry(std::ofstream& out, const FunctionalSample& s) {
  out << s.time << ',' << s.event_index << ',' << s.tv_density << ','
      << s.tv_flux << ',' << s.big_waves << ',' << s.mass << '\n';
}

}  // namespace

void write_snapshot_csv(const std::string& path, const NetworkSpec& spec,
                        const Snapshot& snap) {
  auto out = open_out(path);
  out << "road_id,x_left,x_right,rho\n";
  for (size_t r = 0; r < snap.roads.size(); ++r) {
    const auto& prof = snap.roads[r];
    for (size_t k = 0; k < prof.values.size(); ++k)
      out << spec.roads[r].id << ',' << prof.xs[k] << ',' << prof.xs[k + 1]
          << ',' << prof.values[k] << '\n';
  }
}

long run_with_outputs(Simulation& sim, double horizon,
                      const std::string& out_dir,
                      std::vector<double> snapshot_times) {
  namespace fs = std::filesystem;
  fs::create_directories(out_dir);
  auto in_dir = [&](const std::string& name) {
    return (fs::path(out_dir) / name).string();
  };

  {
    auto out = open_out(in_dir("spec_normalized.json"));
    out << serialize_network(sim.spec()) << '\n';
  }

  std::sort(snapshot_times.begin(), snapshot_times.end());
  snapshot_times.erase(
      std::remove_if(snapshot_times.begin(), snapshot_times.end(),
                     [&](double t) { return t < 0.0 || t > horizon; }),
      snapshot_times.end());
  snapshot_times.push_back(horizon);
  size_t next_snap = 0;

  auto telemetry = open_out(in_dir("telemetry.csv"));
  telemetry << "time,event_index,tv_density,tv_flux,big_waves,mass\n";

  sim.initialize();
  append_telemetry(telemetry, sample_functionals(sim.snapshot(), sim.spec(),
                                                 sim.flux(), 0));
  while (true) {
    auto ev = sim.next_event();
    double stop = ev && ev->time <= horizon ? ev->time : horizon;
    while (next_snap < snapshot_times.size() &&
           snapshot_times[next_snap] <= stop) {
      double t = snapshot_times[next_snap++];
      write_snapshot_csv(in_dir("snapshot_" + format_time_tag(t) + ".csv"),
                         sim.spec(), sim.snapshot_at(t));
    }
    if (!ev || ev->time > horizon) break;
    sim.advance();
    append_telemetry(telemetry,
                     sample_functionals(sim.snapshot(), sim.spec(),
                                        sim.flux(), sim.event_count()));
  }

  auto events = open_out(in_dir("events.csv"));
  events << "index,time,kind,road_id,junction_id,tv_flux_after,"
            "big_waves_after\n";
  for (const auto& rec : sim.event_log())
    events << rec.index << ',' << rec.time << ',' << to_string(rec.kind)
           << ',' << rec.road_id << ',' << rec.junction_id << ','
           << rec.tv_flux_after << ',' << rec.big_waves_after << '\n';

  return sim.event_count();
}

}  // namespace lwr
