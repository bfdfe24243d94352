#pragma once

// JSON instance formats and deterministic report output (JSON with sorted
// keys and 17-significant-digit floats, or CSV).

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "lcl/choice.hpp"
#include "lcl/digraph.hpp"
#include "lcl/family.hpp"
#include "lcl/lcl_engine.hpp"
#include "lcl/lll.hpp"
#include "lcl/probability.hpp"
#include "lcl/structures.hpp"

namespace lcl::io {

using Json = nlohmann::json;

inline std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace detail {

inline void write_string(std::ostream& os, const std::string& s) {
  os << Json(s).dump();
}

inline void write(std::ostream& os, const Json& j, int depth) {
  const std::string pad(2 * (depth + 1), ' ');
  const std::string close(2 * depth, ' ');
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        os << "{}";
        return;
      }
      os << "{\n";
      bool first = true;
      // nlohmann::json objects are std::map-backed, so iteration is key-sorted.
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) os << ",\n";
        first = false;
        os << pad;
        write_string(os, it.key());
        os << ": ";
        write(os, it.value(), depth + 1);
      }
      os << "\n" << close << "}";
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        os << "[]";
        return;
      }
      const bool flat = std::all_of(j.begin(), j.end(), [](const Json& x) { return x.is_primitive(); });
      if (flat) {
        os << "[";
        for (std::size_t i = 0; i < j.size(); ++i) {
          if (i) os << ", ";
          write(os, j[i], depth + 1);
        }
        os << "]";
        return;
      }
      os << "[\n";
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) os << ",\n";
        os << pad;
        write(os, j[i], depth + 1);
      }
      os << "\n" << close << "]";
      return;
    }
    case Json::value_t::number_float: {
      const double v = j.get<double>();
      if (std::isfinite(v)) {
        os << format_double(v);
      } else {
        write_string(os, format_double(v));
      }
      return;
    }
    default:
      os << j.dump();
  }
}

}  // namespace detail

/// Pretty JSON with sorted keys; floats use %.17g, non-finite floats become "inf", "-inf" or "nan".
inline std::string to_stable_json(const Json& j) {
  std::ostringstream os;
  detail::write(os, j, 0);
  os << "\n";
  return os.str();
}

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

inline std::string to_csv(const Table& t) {
  std::string out;
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out += ',';
      out += csv_field(cells[i]);
    }
    out += '\n';
  };
  line(t.header);
  for (const auto& r : t.rows) line(r);
  return out;
}

inline Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw InvalidArgument("malformed JSON in '" + path + "': " + e.what());
  }
}

inline void write_text(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::fwrite(text.data(), 1, text.size(), stdout);
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidArgument("cannot write '" + path + "'");
  out << text;
  if (!out) throw InvalidArgument("write to '" + path + "' failed");
}

// ---------------------------------------------------------------- instance formats

/// {"vertices":["x","y"],"edges":[{"id":"e1","tail":"x","head":"y"}]}
inline MultiDigraph parse_digraph(const Json& j) {
  MultiDigraph d;
  for (const auto& v : j.at("vertices")) d.add_vertex(v.get<std::string>());
  for (const auto& e : j.at("edges")) {
    d.add_edge(e.at("id").get<std::string>(), e.at("tail").get<std::string>(), e.at("head").get<std::string>());
  }
  return d;
}

/// Digraph plus {"risks":[{"edge":"e1","z":"v3","p":0.25}]}. Entries left out
/// default to p = 1, which is always a valid upper bound.
inline LclInstance parse_lcl_instance(const Json& j) {
  MultiDigraph d = parse_digraph(j);
  RiskTable risks = RiskTable::over(d, 1.0);
  if (j.contains("risks")) {
    for (const auto& r : j.at("risks")) {
      const std::size_t e = d.edge_index(r.at("edge").get<std::string>());
      const std::size_t z = d.vertex_index(r.at("z").get<std::string>());
      if (!risks.get(e, z)) {
        throw InvalidArgument("risk entry (" + d.edge(e).id + ", " + d.vertex_name(z) +
                              ") is outside the reachable domain");
      }
      risks.set(e, z, r.at("p").get<double>());
    }
  }
  return LclInstance(std::move(d), std::move(risks));
}

/// {"weights":[{"tail":"x","head":"y","w":1.5}]}, one entry per arc.
inline ArcWeights parse_arc_weights(const Json& j, const LclInstance& inst) {
  const auto& d = inst.digraph();
  ArcWeights w(inst.simple().arc_count(), 0.0);
  std::vector<bool> seen(w.size(), false);
  for (const auto& item : j) {
    const std::size_t x = d.vertex_index(item.at("tail").get<std::string>());
    const std::size_t y = d.vertex_index(item.at("head").get<std::string>());
    const auto a = inst.simple().arc_index(x, y);
    if (!a) throw InvalidArgument("weight given for a pair that is not an arc");
    w[*a] = item.at("w").get<double>();
    seen[*a] = true;
  }
  for (std::size_t a = 0; a < w.size(); ++a) {
    if (!seen[a]) throw InvalidArgument("no weight for arc " + d.vertex_name(inst.simple().arc(a).tail) + "->" +
                                        d.vertex_name(inst.simple().arc(a).head));
  }
  return w;
}

/// {"variables":[{"name":"a1","values":["a","b"],"weights":[0.5,0.5]}]}
inline ProductSpace parse_space(const Json& j) {
  std::vector<Variable> vars;
  for (const auto& v : j.at("variables")) {
    Variable var;
    var.name = v.at("name").get<std::string>();
    var.values = v.at("values").get<std::vector<std::string>>();
    if (v.contains("weights")) {
      var.weights = v.at("weights").get<std::vector<double>>();
    } else {
      var.weights.assign(var.values.size(), var.values.empty() ? 0.0 : 1.0 / static_cast<double>(var.values.size()));
    }
    vars.push_back(std::move(var));
  }
  return ProductSpace(std::move(vars));
}

/// {"n":2,"gamma":[[2],[1]],"p":[0.125,0.125],"mu":[0.25,0.25]}; Γ is 1-based, μ optional.
struct LllInput {
  std::size_t n = 0;
  std::vector<std::vector<std::size_t>> gamma;
  std::vector<double> probs;
  std::optional<std::vector<double>> mu;
};

inline LllInput parse_lll(const Json& j) {
  LllInput in;
  in.n = j.at("n").get<std::size_t>();
  for (const auto& row : j.at("gamma")) {
    std::vector<std::size_t> g;
    for (const auto& x : row) {
      const auto v = x.get<std::size_t>();
      if (v == 0 || v > in.n) throw InvalidArgument("gamma entries are 1-based event numbers");
      g.push_back(v - 1);
    }
    in.gamma.push_back(std::move(g));
  }
  in.probs = j.at("p").get<std::vector<double>>();
  if (j.contains("mu")) in.mu = j.at("mu").get<std::vector<double>>();
  if (in.gamma.size() != in.n || in.probs.size() != in.n || (in.mu && in.mu->size() != in.n)) {
    throw InvalidArgument("gamma, p and mu must have n entries");
  }
  return in;
}

/// {"ground":["1","2"],"events":[[{"name":"B1","witness":["1","2"],"p":0.1}], ...],"tau":[1.2,1.2]}
/// Events are listed per ground element in order; τ is optional.
struct FamilyInput {
  FamilyInstance instance;
  WitnessMap witnesses;
  std::optional<TauAssignment> tau;
};

inline FamilyInput parse_family(const Json& j) {
  FamilyInput in;
  in.instance.ground = j.at("ground").get<std::vector<std::string>>();
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < in.instance.ground.size(); ++i) {
    if (!index.emplace(in.instance.ground[i], i).second) throw InvalidArgument("repeated ground element");
  }
  const auto& events = j.at("events");
  if (events.size() != in.instance.size()) throw InvalidArgument("events must be listed for every ground element");
  for (const auto& row : events) {
    std::vector<FamilyEvent> evs;
    std::vector<Witness> ws;
    for (const auto& ev : row) {
      Witness w;
      for (const auto& x : ev.at("witness")) {
        auto it = index.find(x.get<std::string>());
        if (it == index.end()) throw InvalidArgument("witness references an unknown element");
        w.set.push_back(it->second);
      }
      std::sort(w.set.begin(), w.set.end());
      w.p_bound = ev.at("p").get<double>();
      if (!(*w.p_bound >= 0.0 && *w.p_bound <= 1.0)) throw InvalidArgument("p must lie in [0, 1]");
      evs.push_back(FamilyEvent{ev.value("name", std::string{}), {}});
      ws.push_back(std::move(w));
    }
    in.instance.events.push_back(std::move(evs));
    in.witnesses.push_back(std::move(ws));
  }
  if (j.contains("tau")) in.tau = j.at("tau").get<TauAssignment>();
  return in;
}

/// {"vertices":6,"edges":[[0,1,2],[2,3,4]]}
inline Hypergraph parse_hypergraph(const Json& j) {
  return Hypergraph(j.at("vertices").get<std::size_t>(), j.at("edges").get<std::vector<std::vector<std::size_t>>>());
}

/// {"vertices":4,"edges":[[0,1],[1,2]]}
inline Graph parse_graph(const Json& j) {
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (const auto& e : j.at("edges")) {
    if (e.size() != 2) throw InvalidArgument("graph edges have two endpoints");
    edges.emplace_back(e[0].get<std::size_t>(), e[1].get<std::size_t>());
  }
  return Graph(j.at("vertices").get<std::size_t>(), std::move(edges));
}

/// {"lists":[["a","b","c","d"], ...]}
inline ListAssignment parse_lists(const Json& j) {
  ListAssignment lists = j.at("lists").get<ListAssignment>();
  require_lists(lists);
  return lists;
}

/// {"universes":[["x1","x2"],["y1"]],"forbidden":[["x1","y1"]],"weights":{"x1":1,...},"multichoice":["x1"]}
struct ChoiceInput {
  ChoiceInstance instance;
  MarginalWeights weights;
  std::optional<ElementSet> multichoice;
};

inline ChoiceInput parse_choice(const Json& j) {
  ChoiceInstance inst(j.at("universes").get<std::vector<std::vector<std::string>>>(),
                      j.value("forbidden", std::vector<std::vector<std::string>>{}));
  MarginalWeights w(inst.element_count(), 1.0);
  if (j.contains("weights")) {
    std::vector<bool> seen(w.size(), false);
    for (auto it = j.at("weights").begin(); it != j.at("weights").end(); ++it) {
      const std::size_t e = inst.element_index(it.key());
      w[e] = it.value().get<double>();
      seen[e] = true;
    }
    for (std::size_t e = 0; e < w.size(); ++e) {
      if (!seen[e]) throw InvalidArgument("no weight for element '" + inst.element_name(e) + "'");
    }
  }
  std::optional<ElementSet> m;
  if (j.contains("multichoice")) m = inst.set_of(j.at("multichoice").get<std::vector<std::string>>());
  return ChoiceInput{std::move(inst), std::move(w), std::move(m)};
}

}  // namespace lcl::io
