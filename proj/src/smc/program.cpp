#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "ltlsmc/program.hpp"

namespace ltlsmc {

using json = nlohmann::ordered_json;

std::optional<std::size_t> Program::var_index(std::string_view name) const {
  for (std::size_t i = 0; i < vars.size(); ++i) {
    if (vars[i].name == name) return i;
  }
  return std::nullopt;
}

const AtomicProposition* Program::find_ap(std::string_view name) const {
  for (const auto& ap : aps) {
    if (ap.name == name) return &ap;
  }
  return nullptr;
}

namespace {

// Rejects duplicate keys, which nlohmann would otherwise silently collapse.
json parse_strict(std::string_view text) {
  std::vector<std::set<std::string>> seen;
  std::vector<std::string> path;
  std::string pending_key;
  const auto callback = [&](int /*depth*/, json::parse_event_t event, json& parsed) {
    switch (event) {
      case json::parse_event_t::object_start:
        seen.emplace_back();
        path.push_back(pending_key);
        break;
      case json::parse_event_t::object_end:
        seen.pop_back();
        path.pop_back();
        break;
      case json::parse_event_t::key: {
        const std::string key = parsed.get<std::string>();
        if (!seen.back().insert(key).second) {
          if (path.size() == 2 && path.back() == "aps") throw ProgramError("duplicate AP name '" + key + "'");
          if (path.size() == 2 && path.back() == "vars") throw ProgramError("duplicate variable '" + key + "'");
          throw ProgramError("duplicate key '" + key + "'");
        }
        pending_key = key;
        break;
      }
      default:
        break;
    }
    return true;
  };
  try {
    return json::parse(text.begin(), text.end(), callback);
  } catch (const json::exception& e) {
    throw ProgramError(std::string("malformed program document: ") + e.what());
  }
}

[[noreturn]] void fail_at(const std::string& where, const std::string& what) {
  throw ProgramError(where + ": " + what);
}

template <typename F>
auto at(const std::string& where, F&& f) {
  try {
    return f();
  } catch (const ProgramError& e) {
    fail_at(where, e.what());
  }
}

}  // namespace

Program load_program(std::string_view json_text) {
  const json doc = parse_strict(json_text);
  if (!doc.is_object()) throw ProgramError("program document must be a JSON object");
  for (const auto& [key, _] : doc.items()) {
    if (key != "name" && key != "vars" && key != "aps" && key != "threads") {
      throw ProgramError("unknown top-level key '" + key + "'");
    }
  }

  Program p;
  if (doc.contains("name")) {
    if (!doc["name"].is_string()) throw ProgramError("'name' must be a string");
    p.name = doc["name"].get<std::string>();
  }

  if (!doc.contains("vars") || !doc["vars"].is_object()) throw ProgramError("'vars' must be an object");
  for (const auto& [name, value] : doc["vars"].items()) {
    if (value.is_boolean()) {
      p.vars.push_back({name, value.get<bool>()});
    } else if (value.is_number_integer()) {
      p.vars.push_back({name, value.get<std::int64_t>()});
    } else {
      throw ProgramError("vars." + name + ": initial value must be an integer or boolean");
    }
  }

  if (doc.contains("aps")) {
    if (!doc["aps"].is_object()) throw ProgramError("'aps' must be an object");
    for (const auto& [name, pred] : doc["aps"].items()) {
      const std::string where = "aps." + name;
      if (!pred.is_string()) fail_at(where, "predicate must be a string");
      Expr e = at(where, [&] { return parse_expression(pred.get<std::string>(), p.vars); });
      if (e.type() != ValueType::Bool) fail_at(where, "predicate must be boolean");
      p.aps.push_back({name, std::move(e)});
    }
  }

  if (!doc.contains("threads") || !doc["threads"].is_array()) throw ProgramError("'threads' must be an array");
  if (doc["threads"].empty()) throw ProgramError("program has no threads");
  std::size_t t = 0;
  for (const auto& thread_doc : doc["threads"]) {
    const std::string thread_where = "threads[" + std::to_string(t) + "]";
    if (!thread_doc.is_array()) fail_at(thread_where, "a thread is an array of locations");
    if (thread_doc.empty()) fail_at(thread_where, "empty thread");
    Thread thread;
    const std::size_t count = thread_doc.size();
    std::size_t k = 1;
    for (const auto& loc_doc : thread_doc) {
      const std::string where = thread_where + ".location " + std::to_string(k);
      if (!loc_doc.is_object()) fail_at(where, "a location is an object");
      Location loc;
      for (const auto& [key, value] : loc_doc.items()) {
        if (key == "guard") {
          if (!value.is_string()) fail_at(where, "guard must be a string");
          Expr g = at(where, [&] { return parse_expression(value.get<std::string>(), p.vars); });
          if (g.type() != ValueType::Bool) fail_at(where, "guard must be boolean");
          loc.guard = std::move(g);
        } else if (key == "body") {
          if (!value.is_array()) fail_at(where, "body must be an array of assignments");
          for (const auto& stmt : value) {
            if (!stmt.is_string()) fail_at(where, "assignment must be a string");
            loc.body.push_back(at(where, [&] { return parse_assignment(stmt.get<std::string>(), p.vars); }));
          }
        } else if (key == "next") {
          if (value.is_string() && value.get<std::string>() == "end") {
            loc.next = std::nullopt;
          } else if (value.is_number_integer()) {
            const auto target = value.get<std::int64_t>();
            if (target < 1 || static_cast<std::size_t>(target) > count) {
              fail_at(where, "next location " + std::to_string(target) + " does not exist");
            }
            loc.next = static_cast<std::size_t>(target);
          } else {
            fail_at(where, "next must be a location number or \"end\"");
          }
        } else {
          fail_at(where, "unknown key '" + key + "'");
        }
      }
      if (!loc_doc.contains("next")) loc.next = k < count ? std::optional<std::size_t>(k + 1) : std::nullopt;
      thread.locations.push_back(std::move(loc));
      ++k;
    }
    p.threads.push_back(std::move(thread));
    ++t;
  }
  return p;
}

Program load_program_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ProgramError("cannot open program file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_program(buf.str());
}

std::string thread_name(ThreadId t) { return "T" + std::to_string(t + 1); }

std::vector<ThreadId> parse_schedule(std::string_view text) {
  std::vector<ThreadId> out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t comma = text.find(',', pos);
    if (comma == std::string_view::npos) comma = text.size();
    std::string_view item = text.substr(pos, comma - pos);
    while (!item.empty() && std::isspace(static_cast<unsigned char>(item.front()))) item.remove_prefix(1);
    while (!item.empty() && std::isspace(static_cast<unsigned char>(item.back()))) item.remove_suffix(1);
    pos = comma + 1;
    if (item.empty() && comma == text.size() && out.empty()) break;
    if (item.size() < 2 || (item[0] != 'T' && item[0] != 't')) {
      throw ProgramError("bad schedule entry '" + std::string(item) + "', expected T<n>");
    }
    std::size_t n = 0;
    for (char c : item.substr(1)) {
      if (!std::isdigit(static_cast<unsigned char>(c))) {
        throw ProgramError("bad schedule entry '" + std::string(item) + "', expected T<n>");
      }
      n = n * 10 + static_cast<std::size_t>(c - '0');
    }
    if (n == 0) throw ProgramError("thread numbers start at T1");
    out.push_back(n - 1);
  }
  return out;
}

std::string format_schedule(const std::vector<ThreadId>& schedule) {
  std::string out;
  for (std::size_t i = 0; i < schedule.size(); ++i) {
    if (i) out += ',';
    out += thread_name(schedule[i]);
  }
  return out;
}

}  // namespace ltlsmc
