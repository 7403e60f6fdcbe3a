#include <sstream>

#include "json.hpp"
#include "ltlsmc/smc.hpp"

namespace ltlsmc {

using json = nlohmann::ordered_json;

namespace {

json counts_json(const ProgramVerdict& v) {
  json c = json::object();
  for (Verdict k : {Verdict::True1, Verdict::False0, Verdict::PresumablyTrue, Verdict::PresumablyFalse}) {
    const auto it = v.counts.find(k);
    c[std::string(to_string(k))] = it == v.counts.end() ? 0 : it->second;
  }
  return c;
}

}  // namespace

std::string report_to_json(const ProgramReport& r) {
  json doc = json::object();
  doc["program"] = r.program;
  doc["depth_bound"] = r.depth_bound;
  doc["status"] = std::string(to_string(r.overall()));

  json props = json::array();
  for (std::size_t i = 0; i < r.properties.size(); ++i) {
    const ProgramVerdict& v = r.verdicts.at(i);
    json p = json::object();
    p["property"] = r.properties[i].text;
    p["class"] = std::string(to_string(r.properties[i].cls));
    p["status"] = std::string(to_string(v.status));
    p["counts"] = counts_json(v);
    if (v.first_failure) {
      p["first_failing_iteration"] = *v.first_failure;
      p["failing_schedule"] = format_schedule(r.iterations[*v.first_failure].schedule);
    } else {
      p["first_failing_iteration"] = nullptr;
      p["failing_schedule"] = nullptr;
    }
    props.push_back(std::move(p));
  }
  doc["properties"] = std::move(props);

  json iters = json::array();
  for (const IterationResult& it : r.iterations) {
    json j = json::object();
    j["schedule"] = format_schedule(it.schedule);
    j["termination"] = std::string(to_string(it.termination));
    json verdicts = json::array();
    for (std::size_t i = 0; i < it.verdicts.size(); ++i) {
      json v = json::object();
      v["verdict"] = std::string(to_string(it.verdicts[i]));
      if (it.resolved_at[i]) {
        v["resolved_at_state"] = *it.resolved_at[i];
      } else {
        v["resolved_at_state"] = nullptr;
      }
      verdicts.push_back(std::move(v));
    }
    j["verdicts"] = std::move(verdicts);
    iters.push_back(std::move(j));
  }
  doc["iterations"] = std::move(iters);
  doc["iteration_count"] = r.iterations.size();
  return doc.dump(2) + "\n";
}

std::string report_to_human(const ProgramReport& r, bool verbose) {
  std::ostringstream out;
  out << "program " << (r.program.empty() ? "<unnamed>" : r.program) << ": " << r.iterations.size()
      << " iteration(s), depth bound " << r.depth_bound << "\n";
  for (std::size_t i = 0; i < r.properties.size(); ++i) {
    const ProgramVerdict& v = r.verdicts.at(i);
    out << "  " << to_string(v.status) << "  " << r.properties[i].text << "  [" << to_string(r.properties[i].cls)
        << "]\n";
    out << "      ";
    bool first = true;
    for (const auto& [k, n] : v.counts) {
      if (!first) out << ", ";
      out << to_string(k) << "=" << n;
      first = false;
    }
    out << "\n";
    if (v.first_failure) {
      out << "      failing schedule: " << format_schedule(r.iterations[*v.first_failure].schedule) << "\n";
    }
  }
  if (verbose) {
    for (std::size_t i = 0; i < r.iterations.size(); ++i) {
      const IterationResult& it = r.iterations[i];
      out << "  #" << i << " " << (it.schedule.empty() ? "<empty>" : format_schedule(it.schedule)) << " ("
          << to_string(it.termination) << "):";
      for (Verdict v : it.verdicts) out << ' ' << to_string(v);
      out << "\n";
    }
  }
  out << "overall: " << to_string(r.overall()) << "\n";
  return out.str();
}

}  // namespace ltlsmc
