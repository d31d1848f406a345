#include "jetcheck/problemfile.hpp"

#include <algorithm>
#include <sstream>

#include "jetcheck/errors.hpp"
#include "jetcheck/parser.hpp"

namespace jetcheck {

const EquivalencePair& ProblemFile::pair(const std::string& name) const {
  auto it = pairs.find(name);
  if (it == pairs.end()) throw Error("no pair named '" + name + "'");
  return it->second;
}

const SystemPtr& ProblemFile::system(const std::string& name) const {
  auto it = systems.find(name);
  if (it == systems.end()) throw Error("no system named '" + name + "'");
  return it->second;
}

namespace {

struct Section {
  std::string kind;   // sampler | constants | system | map | pair
  std::string name;   // empty for sampler/constants
  std::size_t line;
  // key/value pairs in order of appearance
  std::vector<std::tuple<std::string, std::string, std::size_t>> entries;
};

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

std::string strip_comment(const std::string& line) {
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    if (line[i] == '"') quoted = !quoted;
    if (line[i] == '#' && !quoted) return line.substr(0, i);
  }
  return line;
}

std::vector<Section> split_sections(const std::string& text) {
  std::vector<Section> sections;
  std::istringstream in(text);
  std::string raw;
  std::size_t lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = trim(strip_comment(raw));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw FileFormatError("unterminated section header", lineno);
      std::string inner = trim(line.substr(1, line.size() - 2));
      std::istringstream hs(inner);
      Section s;
      hs >> s.kind;
      std::string rest;
      std::getline(hs, rest);
      s.name = trim(rest);
      s.line = lineno;
      if (s.kind != "sampler" && s.kind != "constants" && s.kind != "system" &&
          s.kind != "map" && s.kind != "pair")
        throw FileFormatError("unknown section kind '" + s.kind + "'", lineno);
      if ((s.kind == "system" || s.kind == "map" || s.kind == "pair") &&
          s.name.empty())
        throw FileFormatError("section [" + s.kind + "] needs a name", lineno);
      sections.push_back(std::move(s));
      continue;
    }
    std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw FileFormatError("expected 'key = value'", lineno);
    if (sections.empty())
      throw FileFormatError("entry outside of any section", lineno);
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty())
      throw FileFormatError("expected 'key = value'", lineno);
    sections.back().entries.emplace_back(key, value, lineno);
  }
  return sections;
}

std::string unquote(const std::string& v, std::size_t line) {
  if (v.size() >= 2 && v.front() == '"' && v.back() == '"')
    return v.substr(1, v.size() - 2);
  if (v.front() == '"' || v.back() == '"')
    throw FileFormatError("unbalanced quotes", line);
  return v;
}

std::vector<std::string> parse_list(const std::string& v, std::size_t line) {
  if (v.size() < 2 || v.front() != '[' || v.back() != ']')
    throw FileFormatError("expected a [..] list", line);
  std::vector<std::string> out;
  std::string token;
  for (char c : v.substr(1, v.size() - 2)) {
    if (c == ',') {
      out.push_back(trim(token));
      token.clear();
    } else {
      token += c;
    }
  }
  token = trim(token);
  if (!token.empty()) out.push_back(token);
  for (const auto& t : out)
    if (t.empty()) throw FileFormatError("empty list element", line);
  return out;
}

Variable parse_var_token(const std::string& token, VarKind kind,
                         std::size_t line) {
  std::size_t at = token.find('@');
  if (at == std::string::npos) return Variable{kind, token, 0};
  std::string name = token.substr(0, at);
  std::string ord = token.substr(at + 1);
  if (name.empty() || ord.empty() ||
      ord.find_first_not_of("0123456789") != std::string::npos)
    throw FileFormatError("malformed coordinate token '" + token + "'", line);
  return Variable{kind, name, std::stoi(ord)};
}

Rational parse_rational_value(const std::string& v, std::size_t line) {
  try {
    Expr e = parse_expr(unquote(v, line), Scope{});
    if (!e.is_constant())
      throw FileFormatError("constant does not fold to a rational", line);
    return e.constant_value();
  } catch (const ParseError& err) {
    throw FileFormatError(std::string("bad constant: ") + err.what(), line);
  }
}

double parse_number(const std::string& v, std::size_t line) {
  return parse_rational_value(v, line).to_double();
}

int parse_int(const std::string& v, std::size_t line) {
  try {
    std::size_t used = 0;
    int out = std::stoi(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return out;
  } catch (const std::exception&) {
    throw FileFormatError("expected an integer, got '" + v + "'", line);
  }
}

}  // namespace

ProblemFile parse_problem_file(const std::string& text) {
  std::vector<Section> sections = split_sections(text);
  ProblemFile file;
  std::map<std::string, Rational> global_constants;

  // sampler and global constants first so systems validate under them
  for (const auto& s : sections) {
    if (s.kind == "sampler") {
      for (const auto& [key, value, line] : s.entries) {
        if (key == "seed")
          file.sampler.seed = static_cast<std::uint64_t>(
              std::stoll(value));
        else if (key == "trials")
          file.sampler.trials = parse_int(value, line);
        else if (key == "box") {
          auto parts = parse_list(value, line);
          if (parts.size() != 2)
            throw FileFormatError("box needs [lo, hi]", line);
          file.sampler.box_lo = parse_number(parts[0], line);
          file.sampler.box_hi = parse_number(parts[1], line);
          if (!(file.sampler.box_lo < file.sampler.box_hi))
            throw FileFormatError("box needs lo < hi", line);
        } else {
          throw FileFormatError("unknown sampler key '" + key + "'", line);
        }
      }
    } else if (s.kind == "constants") {
      for (const auto& [key, value, line] : s.entries)
        global_constants[key] = parse_rational_value(value, line);
    }
  }

  for (const auto& s : sections) {
    if (s.kind == "system") {
      std::vector<Variable> states, controls;
      std::map<std::string, Rational> constants = global_constants;
      std::vector<std::tuple<std::string, std::string, std::size_t>> dyn;
      for (const auto& [key, value, line] : s.entries) {
        if (key == "states") {
          for (const auto& t : parse_list(value, line))
            states.push_back(parse_var_token(t, VarKind::State, line));
        } else if (key == "controls") {
          for (const auto& t : parse_list(value, line))
            controls.push_back(parse_var_token(t, VarKind::ControlJet, line));
        } else if (key.rfind("constant.", 0) == 0) {
          constants[key.substr(9)] = parse_rational_value(value, line);
        } else if (key.rfind("dynamics.", 0) == 0) {
          dyn.emplace_back(key.substr(9), value, line);
        } else {
          throw FileFormatError("unknown system key '" + key + "'", line);
        }
      }
      if (states.empty())
        throw FileFormatError("system '" + s.name + "' has no states", s.line);
      Scope scope;
      for (const auto& v : states) scope.add_variable(v);
      for (const auto& v : controls) scope.add_variable(v);
      for (const auto& [cname, cvalue] : constants)
        scope.add_constant(cname, cvalue);

      std::map<std::pair<std::string, int>, Expr> by_state;
      for (const auto& [tok, value, line] : dyn) {
        Variable sv = parse_var_token(tok, VarKind::State, line);
        try {
          by_state[{sv.name, sv.order}] =
              parse_expr(unquote(value, line), scope);
        } catch (const Error& err) {
          throw FileFormatError("dynamics." + tok + ": " + err.what(), line);
        }
      }
      std::vector<Expr> dynamics;
      for (const auto& v : states) {
        auto it = by_state.find({v.name, v.order});
        if (it == by_state.end())
          throw FileFormatError(
              "system '" + s.name + "' missing dynamics for " + v.str(),
              s.line);
        dynamics.push_back(it->second);
      }
      if (by_state.size() != states.size())
        throw FileFormatError(
            "system '" + s.name + "' has dynamics for non-states", s.line);
      if (file.systems.count(s.name))
        throw FileFormatError("duplicate system '" + s.name + "'", s.line);
      file.systems[s.name] = std::make_shared<const ControlSystem>(
          ControlSystem::make(s.name, states, controls, dynamics, file.sampler,
                              constants));
    } else if (s.kind == "map") {
      std::string from, to;
      int order = -1;
      std::vector<std::tuple<std::string, std::string, std::size_t, bool>>
          comps;  // token, expr, line, is_state
      for (const auto& [key, value, line] : s.entries) {
        if (key == "from")
          from = value;
        else if (key == "to")
          to = value;
        else if (key == "order")
          order = parse_int(value, line);
        else if (key.rfind("state.", 0) == 0)
          comps.emplace_back(key.substr(6), value, line, true);
        else if (key.rfind("control.", 0) == 0)
          comps.emplace_back(key.substr(8), value, line, false);
        else
          throw FileFormatError("unknown map key '" + key + "'", line);
      }
      if (from.empty() || to.empty() || order < 0)
        throw FileFormatError(
            "map '" + s.name + "' needs from, to and a nonnegative order",
            s.line);
      if (!file.systems.count(from) || !file.systems.count(to))
        throw FileFormatError("map '" + s.name +
                                  "' references an undefined system",
                              s.line);
      EquivalenceMap map;
      map.name = s.name;
      map.source = file.systems[from];
      map.target = file.systems[to];
      map.declared_order = order;
      Scope scope = map.source->scope(order);

      std::map<std::pair<std::string, int>, Expr> state_c, control_c;
      for (const auto& [tok, value, line, is_state] : comps) {
        Variable tv = parse_var_token(
            tok, is_state ? VarKind::State : VarKind::ControlJet, line);
        try {
          Expr e = parse_expr(unquote(value, line), scope);
          (is_state ? state_c : control_c)[{tv.name, tv.order}] = e;
        } catch (const Error& err) {
          throw FileFormatError("component " + tok + ": " + err.what(), line);
        }
      }
      for (const auto& v : map.target->states()) {
        auto it = state_c.find({v.name, v.order});
        if (it == state_c.end())
          throw FileFormatError("map '" + s.name +
                                    "' missing state component for " + v.str(),
                                s.line);
        map.state_components.push_back(it->second);
      }
      for (const auto& v : map.target->controls()) {
        auto it = control_c.find({v.name, v.order});
        if (it == control_c.end())
          throw FileFormatError(
              "map '" + s.name + "' missing control component for " + v.str(),
              s.line);
        map.control_components.push_back(it->second);
      }
      if (state_c.size() != map.target->states().size() ||
          control_c.size() != map.target->controls().size())
        throw FileFormatError(
            "map '" + s.name + "' has components for unknown coordinates",
            s.line);
      if (file.maps.count(s.name))
        throw FileFormatError("duplicate map '" + s.name + "'", s.line);
      file.maps[s.name] = std::move(map);
    } else if (s.kind == "pair") {
      std::string phi, psi;
      for (const auto& [key, value, line] : s.entries) {
        if (key == "phi")
          phi = value;
        else if (key == "psi")
          psi = value;
        else
          throw FileFormatError("unknown pair key '" + key + "'", line);
      }
      if (!file.maps.count(phi) || !file.maps.count(psi))
        throw FileFormatError(
            "pair '" + s.name + "' references an undefined map", s.line);
      EquivalencePair pair;
      pair.name = s.name;
      pair.phi = file.maps[phi];
      pair.psi = file.maps[psi];
      if (pair.phi.source.get() != pair.psi.target.get() ||
          pair.phi.target.get() != pair.psi.source.get())
        throw FileFormatError(
            "pair '" + s.name + "': phi and psi must connect the same "
            "two systems in opposite directions",
            s.line);
      if (file.pairs.count(s.name))
        throw FileFormatError("duplicate pair '" + s.name + "'", s.line);
      file.pairs[s.name] = std::move(pair);
    }
  }
  return file;
}

std::string render_system_section(const ControlSystem& sys) {
  std::ostringstream out;
  out << "[system " << sys.name() << "]\n";
  auto list = [](const std::vector<Variable>& vars) {
    std::string s = "[";
    for (std::size_t i = 0; i < vars.size(); ++i) {
      if (i) s += ", ";
      s += vars[i].str();
    }
    return s + "]";
  };
  out << "states = " << list(sys.states()) << "\n";
  out << "controls = " << list(sys.controls()) << "\n";
  for (const auto& [cname, value] : sys.constants())
    out << "constant." << cname << " = " << value.str() << "\n";
  for (int i = 0; i < sys.n(); ++i)
    out << "dynamics." << sys.states()[i].str() << " = \""
        << sys.dynamics()[i].str() << "\"\n";
  return out.str();
}

}  // namespace jetcheck
