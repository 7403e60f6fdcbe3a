#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "json.hpp"
#include "ltlsmc/cli.hpp"
#include "ltlsmc/formula.hpp"
#include "ltlsmc/monitor.hpp"
#include "ltlsmc/smc.hpp"

namespace ltlsmc::cli {

using json = nlohmann::ordered_json;

namespace {

class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path, std::string_view what) {
  if (path.empty()) throw InputError("no " + std::string(what) + " file given");
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + std::string(what) + " file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::vector<PropertyLine> load_properties(const RunConfig& config) {
  const std::string text = read_file(config.properties, "property");
  try {
    return parse_property_file(text);
  } catch (const ParseError& e) {
    throw InputError(config.properties + ":" + std::to_string(e.line()) + ":" + std::to_string(e.column()) +
                     ": syntax error: " + std::string(e.what()).substr(std::string(e.what()).find(": ") + 2));
  }
}

json ast_json(const Formula& f, SubformulaId id) {
  const FormulaNode& n = f.node(id);
  json j = json::object();
  j["id"] = id;
  j["kind"] = std::string(to_string(n.kind));
  if (n.atom) j["atom"] = n.atom->text();
  if (arity(n.kind) > 0) {
    json children = json::array();
    for (std::size_t i = 0; i < arity(n.kind); ++i) children.push_back(ast_json(f, n.children[i]));
    j["children"] = std::move(children);
  }
  return j;
}

// Runs `body`, mapping input problems to exit code 2 with a message on `err`.
int guarded(std::ostream& err, const std::function<int()>& body) {
  try {
    return body();
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
  } catch (const ParseError& e) {
    err << "error: syntax error: " << e.what() << "\n";
  } catch (const UnsupportedClassError& e) {
    err << "error: " << e.what() << "\n";
  } catch (const SnapshotError& e) {
    err << "error: trace: " << e.what() << "\n";
  } catch (const ProgramError& e) {
    err << "error: program: " << e.what() << "\n";
  } catch (const ExecutionError& e) {
    err << "error: execution: " << e.what() << "\n";
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
  }
  return kExitInputError;
}

std::vector<APSnapshot> load_trace(const std::string& path) {
  const std::string text = read_file(path, "trace");
  std::vector<APSnapshot> out;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const std::string where = path + ":" + std::to_string(line_no) + ": ";
    json rec;
    try {
      rec = json::parse(line);
    } catch (const json::exception& e) {
      throw InputError(where + "malformed record: " + e.what());
    }
    if (!rec.is_object() || !rec.contains("state") || !rec["state"].is_number_unsigned() || !rec.contains("aps") ||
        !rec["aps"].is_object()) {
      throw InputError(where + "expected {\"state\": <index>, \"aps\": {...}}");
    }
    APSnapshot snap;
    snap.state = rec["state"].get<std::size_t>();
    if (snap.state != out.size()) {
      throw InputError(where + "state " + std::to_string(snap.state) + " out of order, expected " +
                       std::to_string(out.size()));
    }
    for (const auto& [key, value] : rec["aps"].items()) {
      if (!value.is_boolean()) throw InputError(where + "value of '" + key + "' must be a boolean");
      // Keys are read as atoms so that `a>0` and `a > 0` name the same one.
      Formula atom = Formula::truth();
      try {
        atom = parse_property(key);
      } catch (const ParseError&) {
        throw InputError(where + "'" + key + "' is not an atom");
      }
      if (atom.kind() != FormulaKind::Atom) throw InputError(where + "'" + key + "' is not an atom");
      snap.aps[atom.node(0).atom->text()] = value.get<bool>();
    }
    out.push_back(std::move(snap));
  }
  return out;
}

json record_json(const VerdictRecord& r) {
  json j = json::object();
  j["property"] = r.property;
  j["class"] = std::string(to_string(r.cls));
  j["verdict"] = std::string(to_string(r.verdict));
  if (r.resolved_at_state) {
    j["resolved_at_state"] = *r.resolved_at_state;
  } else {
    j["resolved_at_state"] = nullptr;
  }
  return j;
}

bool is_failure(Verdict v) { return v == Verdict::False0 || v == Verdict::PresumablyFalse; }

}  // namespace

int run_parse(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const auto props = load_properties(config);
    if (config.format == OutputFormat::Json) {
      json arr = json::array();
      for (const auto& p : props) {
        const Formula basis = rewrite_to_basis(p.formula);
        json j = json::object();
        j["line"] = p.line;
        j["property"] = p.text;
        j["ast"] = ast_json(p.formula, 0);
        j["basis"] = to_string(basis);
        j["basis_symbolic"] = to_string(basis, Notation::Symbolic);
        arr.push_back(std::move(j));
      }
      out << arr.dump(2) << "\n";
    } else {
      for (const auto& p : props) {
        const Formula basis = rewrite_to_basis(p.formula);
        out << "line " << p.line << ": " << p.text << "\n";
        out << dump_tree(p.formula);
        out << "basis: " << to_string(basis, Notation::Symbolic) << "\n";
        out << "       " << to_string(basis) << "\n";
      }
      out << props.size() << " formula(s)\n";
    }
    return kExitPass;
  });
}

int run_classify(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const auto props = load_properties(config);
    json arr = json::array();
    for (const auto& p : props) {
      const TemporalClass cls = classify(p.formula);
      if (config.format == OutputFormat::Json) {
        json j = json::object();
        j["line"] = p.line;
        j["property"] = p.text;
        j["class"] = std::string(to_string(cls));
        j["monitorable"] = is_monitorable(cls);
        arr.push_back(std::move(j));
      } else {
        out << to_string(cls) << "\t" << (is_monitorable(cls) ? "supported" : "not supported for monitoring")
            << "\t" << p.text << "\n";
      }
    }
    if (config.format == OutputFormat::Json) out << arr.dump(2) << "\n";
    return kExitPass;
  });
}

int run_monitor(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const auto props = load_properties(config);
    Master master;
    for (const auto& p : props) master.add(PropertyMonitor(p.text, p.formula));
    const auto trace = load_trace(config.trace);

    for (const APSnapshot& snap : trace) {
      const auto roots = master.step(snap);
      if (config.verbose && config.format == OutputFormat::Human) {
        out << "state " << snap.state << ":";
        for (const auto& m : roots) out << ' ' << to_string(m);
        out << "\n";
      }
    }

    bool failed = false;
    for (std::size_t i = 0; i < master.size(); ++i) {
      const VerdictRecord r = verdict_record(master[i]);
      failed = failed || is_failure(r.verdict);
      if (config.format == OutputFormat::Json) {
        out << record_json(r).dump() << "\n";
      } else {
        out << to_string(r.verdict) << "\t" << to_string(r.cls) << "\t" << r.property;
        if (r.resolved_at_state) out << "\t(resolved at state " << *r.resolved_at_state << ")";
        out << "\n";
      }
    }
    return failed ? kExitPropertyFailure : kExitPass;
  });
}

int run_check(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (config.depth < 1) throw InputError("--depth must be at least 1");
    const auto props = load_properties(config);
    std::vector<std::string> texts;
    for (const auto& p : props) {
      const TemporalClass cls = classify(p.formula);
      if (!is_monitorable(cls)) {
        throw InputError("property '" + p.text + "' is " + std::string(to_string(cls)) +
                         ", class not supported for monitoring");
      }
      texts.push_back(p.text);
    }
    const Program program = load_program(read_file(config.program, "program"));

    ProgramReport report;
    if (config.schedule) {
      const auto schedule = parse_schedule(*config.schedule);
      report = replay_report(program, texts, schedule, config.depth);
      if (config.verbose && config.format == OutputFormat::Human) {
        Master m;
        for (const auto& t : texts) m.add(PropertyMonitor(t));
        const ReplayResult rr = replay(program, schedule, m);
        for (const StateLog& s : rr.states) {
          out << "s" << s.state << " " << thread_name(s.thread) << ":";
          for (const auto& [atom, v] : s.snapshot.aps) out << ' ' << atom << '=' << (v ? "true" : "false");
          out << " |";
          for (const auto& msg : s.roots) out << ' ' << to_string(msg);
          out << "\n";
        }
      }
    } else {
      ExploreOptions opts;
      opts.depth_bound = config.depth;
      opts.jobs = config.jobs;
      report = explore(program, texts, opts);
    }

    if (config.format == OutputFormat::Json) {
      out << report_to_json(report);
    } else {
      out << report_to_human(report, config.verbose);
    }
    return report.overall() == ProgramStatus::Fail ? kExitPropertyFailure : kExitPass;
  });
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  switch (config.command) {
    case Command::Parse: return run_parse(config, out, err);
    case Command::Classify: return run_classify(config, out, err);
    case Command::Monitor: return run_monitor(config, out, err);
    case Command::Check: return run_check(config, out, err);
  }
  return kExitInputError;
}

}  // namespace ltlsmc::cli
