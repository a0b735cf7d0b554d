// Copyright 2026 The mkcp-kit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "mkcp/instance_io.h"

#include <charconv>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

#include "json.hpp"
#include "mkcp/errors.h"

namespace mkcp {
namespace {

using nlohmann::json;

Rational NumberFrom(const json& j, const std::string& where) {
  if (j.is_number_integer()) {
    if (j.is_number_unsigned()) return Rational(mpz_class(std::to_string(j.get<uint64_t>())));
    return Rational(mpz_class(std::to_string(j.get<int64_t>())));
  }
  if (j.is_number_float()) {
    // Shortest round-trip text, so 0.1 means 1/10.
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), j.get<double>());
    if (ec != std::errc()) throw ParseError(where + ": bad number");
    return ParseRational(std::string_view(buf, end - buf));
  }
  if (j.is_string()) {
    try {
      return ParseRational(j.get<std::string>());
    } catch (const ParseError& e) {
      throw ParseError(where + ": " + e.what());
    }
  }
  throw ParseError(where + ": expected a number");
}

json NumberTo(const Rational& r) {
  if (r.get_den() == 1 && r.get_num().fits_slong_p()) {
    return json(static_cast<int64_t>(r.get_num().get_si()));
  }
  return json(FormatRational(r));
}

int IntFrom(const json& j, const std::string& where) {
  if (!j.is_number_integer()) throw ParseError(where + ": expected an integer");
  const int64_t v = j.get<int64_t>();
  if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max()) {
    throw ParseError(where + ": integer out of range");
  }
  return static_cast<int>(v);
}

const json& Field(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object()) throw ParseError(where + ": expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) throw ParseError(where + ": missing field '" + key + "'");
  return *it;
}

const json& ArrayField(const json& obj, const char* key, const std::string& where) {
  const json& a = Field(obj, key, where);
  if (!a.is_array()) throw ParseError(where + "." + key + ": expected a list");
  return a;
}

std::vector<Rational> Numbers(const json& a, const std::string& where) {
  std::vector<Rational> out;
  for (size_t k = 0; k < a.size(); ++k) {
    out.push_back(NumberFrom(a[k], where + "[" + std::to_string(k) + "]"));
  }
  return out;
}

ObjectiveSpec ParseObjective(const json& o, int n) {
  const std::string where = "objective";
  const json& kind_json = Field(o, "kind", where);
  if (!kind_json.is_string()) throw ParseError("objective.kind: expected a string");
  const std::string kind = kind_json.get<std::string>();
  if (kind == "modular") {
    ModularSpec s;
    s.offset = o.contains("offset") ? NumberFrom(o["offset"], "objective.offset") : Rational(0);
    s.profits = Numbers(ArrayField(o, "profits", where), "objective.profits");
    if (static_cast<int>(s.profits.size()) != n) {
      throw ParseError("objective.profits: expected " + std::to_string(n) + " entries");
    }
    return s;
  }
  if (kind == "coverage") {
    CoverageSpec s;
    s.element_weights = Numbers(ArrayField(o, "universe", where), "objective.universe");
    const json& covers = ArrayField(o, "covers", where);
    if (static_cast<int>(covers.size()) != n) {
      throw ParseError("objective.covers: expected " + std::to_string(n) + " entries");
    }
    for (size_t i = 0; i < covers.size(); ++i) {
      const std::string w = "objective.covers[" + std::to_string(i) + "]";
      if (!covers[i].is_array()) throw ParseError(w + ": expected a list");
      std::vector<int> c;
      for (size_t k = 0; k < covers[i].size(); ++k) {
        c.push_back(IntFrom(covers[i][k], w));
      }
      s.covers.push_back(std::move(c));
    }
    return s;
  }
  if (kind == "cut") {
    CutSpec s;
    s.num_vertices = o.contains("vertices") ? IntFrom(o["vertices"], "objective.vertices") : n;
    if (o.contains("item_vertex")) {
      const json& iv = ArrayField(o, "item_vertex", where);
      for (size_t k = 0; k < iv.size(); ++k) {
        s.item_vertex.push_back(IntFrom(iv[k], "objective.item_vertex"));
      }
    } else {
      for (int i = 0; i < n; ++i) s.item_vertex.push_back(i);
    }
    if (static_cast<int>(s.item_vertex.size()) != n) {
      throw ParseError("objective.item_vertex: expected " + std::to_string(n) + " entries");
    }
    const json& edges = ArrayField(o, "edges", where);
    for (size_t k = 0; k < edges.size(); ++k) {
      const std::string w = "objective.edges[" + std::to_string(k) + "]";
      if (!edges[k].is_array() || edges[k].size() < 2 || edges[k].size() > 3) {
        throw ParseError(w + ": expected [u, v] or [u, v, weight]");
      }
      CutEdge e;
      e.u = IntFrom(edges[k][0], w);
      e.v = IntFrom(edges[k][1], w);
      e.weight = edges[k].size() == 3 ? NumberFrom(edges[k][2], w) : Rational(1);
      s.edges.push_back(e);
    }
    return s;
  }
  if (kind == "table") {
    TableSpec s;
    s.num_items = n;
    s.values = Numbers(ArrayField(o, "values", where), "objective.values");
    return s;
  }
  throw ParseError("objective.kind: unknown kind '" + kind + "'");
}

AdditionalConstraint ParseAdditional(const json& a) {
  const json& kind_json = Field(a, "kind", "additional");
  if (!kind_json.is_string()) throw ParseError("additional.kind: expected a string");
  const std::string kind = kind_json.get<std::string>();
  if (kind == "free") return FreeConstraint{};
  if (kind == "uniform") return UniformMatroid{IntFrom(Field(a, "rank", "additional"), "additional.rank")};
  if (kind == "partition") {
    PartitionMatroid p;
    const json& classes = ArrayField(a, "classes", "additional");
    for (const json& c : classes) p.item_class.push_back(IntFrom(c, "additional.classes"));
    const json& caps = ArrayField(a, "caps", "additional");
    for (const json& c : caps) p.caps.push_back(IntFrom(c, "additional.caps"));
    return p;
  }
  if (kind == "matroid_intersection" || kind == "intersection" || kind == "matching") {
    throw ParseError("additional.kind '" + kind +
                     "' is not supported: only free, uniform and partition "
                     "constraints have a rounding scheme here");
  }
  throw ParseError("additional.kind: unknown kind '" + kind + "'");
}

json DumpObjective(const ObjectiveSpec& spec) {
  json o;
  if (auto* m = std::get_if<ModularSpec>(&spec)) {
    o["kind"] = "modular";
    o["offset"] = NumberTo(m->offset);
    o["profits"] = json::array();
    for (const Rational& p : m->profits) o["profits"].push_back(NumberTo(p));
  } else if (auto* c = std::get_if<CoverageSpec>(&spec)) {
    o["kind"] = "coverage";
    o["universe"] = json::array();
    for (const Rational& w : c->element_weights) o["universe"].push_back(NumberTo(w));
    o["covers"] = c->covers;
  } else if (auto* cut = std::get_if<CutSpec>(&spec)) {
    o["kind"] = "cut";
    o["vertices"] = cut->num_vertices;
    o["item_vertex"] = cut->item_vertex;
    o["edges"] = json::array();
    for (const CutEdge& e : cut->edges) {
      o["edges"].push_back(json::array({e.u, e.v, NumberTo(e.weight)}));
    }
  } else {
    const auto& t = std::get<TableSpec>(spec);
    o["kind"] = "table";
    o["values"] = json::array();
    for (const Rational& v : t.values) o["values"].push_back(NumberTo(v));
  }
  return o;
}

json DumpAdditional(const AdditionalConstraint& a) {
  json o;
  o["kind"] = std::string(KindName(a));
  if (auto* u = std::get_if<UniformMatroid>(&a)) o["rank"] = u->rank;
  if (auto* p = std::get_if<PartitionMatroid>(&a)) {
    o["classes"] = p->item_class;
    o["caps"] = p->caps;
  }
  return o;
}

json ParseJson(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
}

std::map<std::string, int> LabelIndex(const Instance& instance) {
  std::map<std::string, int> index;
  for (int i = 0; i < instance.num_items(); ++i) index[instance.labels[i]] = i;
  return index;
}

}  // namespace

Instance LoadInstance(std::string_view text) {
  const json root = ParseJson(text);
  Instance instance;
  const json& items = ArrayField(root, "items", "instance");
  std::map<std::string, int> seen;
  for (size_t i = 0; i < items.size(); ++i) {
    std::string label;
    if (items[i].is_string()) {
      label = items[i].get<std::string>();
    } else if (items[i].is_number_integer()) {
      label = std::to_string(items[i].get<int64_t>());
    } else {
      throw ParseError("items[" + std::to_string(i) + "]: expected a label");
    }
    if (!seen.emplace(label, static_cast<int>(i)).second) {
      throw ParseError("items: duplicate label '" + label + "'");
    }
    instance.labels.push_back(label);
  }
  const int n = instance.num_items();

  const json& constraints = ArrayField(root, "constraints", "instance");
  for (size_t t = 0; t < constraints.size(); ++t) {
    const std::string where = "constraints[" + std::to_string(t) + "]";
    MultiKnapsackConstraint k;
    k.weights = Numbers(ArrayField(constraints[t], "weights", where), where + ".weights");
    if (static_cast<int>(k.weights.size()) != n) {
      throw ParseError(where + ".weights: expected " + std::to_string(n) +
                       " entries, got " + std::to_string(k.weights.size()));
    }
    const json& bins = ArrayField(constraints[t], "bins", where);
    bool labelled = false;
    for (size_t b = 0; b < bins.size(); ++b) {
      const std::string bw = where + ".bins[" + std::to_string(b) + "]";
      if (bins[b].is_object()) {
        labelled = true;
        std::string label = bins[b].contains("label") && bins[b]["label"].is_string()
                                ? bins[b]["label"].get<std::string>()
                                : std::to_string(b);
        if (!bins[b].contains("capacity") || bins[b]["capacity"].is_null()) {
          throw ParseError(bw + ": bin '" + label + "' has no capacity");
        }
        k.capacities.push_back(NumberFrom(bins[b]["capacity"], bw + ".capacity"));
        k.bin_labels.push_back(label);
      } else {
        if (bins[b].is_null()) throw ParseError(bw + ": bin " + std::to_string(b) + " has no capacity");
        k.capacities.push_back(NumberFrom(bins[b], bw));
        k.bin_labels.push_back(std::to_string(b));
      }
    }
    if (!labelled) k.bin_labels.clear();
    instance.constraints.push_back(std::move(k));
  }

  instance.objective = Objective(ParseObjective(Field(root, "objective", "instance"), n));
  instance.additional = root.contains("additional")
                            ? ParseAdditional(root["additional"])
                            : AdditionalConstraint(FreeConstraint{});
  ValidateInstance(instance);
  return instance;
}

std::string SaveInstance(const Instance& instance) {
  json root;
  root["items"] = instance.labels;
  root["constraints"] = json::array();
  for (const MultiKnapsackConstraint& k : instance.constraints) {
    json c;
    c["weights"] = json::array();
    for (const Rational& w : k.weights) c["weights"].push_back(NumberTo(w));
    c["bins"] = json::array();
    for (int b = 0; b < k.num_bins(); ++b) {
      if (k.bin_labels.empty()) {
        c["bins"].push_back(NumberTo(k.capacities[b]));
      } else {
        c["bins"].push_back(json{{"label", k.bin_labels[b]},
                                 {"capacity", NumberTo(k.capacities[b])}});
      }
    }
    root["constraints"].push_back(std::move(c));
  }
  root["objective"] = DumpObjective(instance.objective.spec());
  root["additional"] = DumpAdditional(instance.additional);
  return root.dump(2) + "\n";
}

Solution LoadSolution(const Instance& instance, std::string_view text) {
  const json root = ParseJson(text);
  const auto index = LabelIndex(instance);
  auto lookup = [&](const json& j, const std::string& where) {
    std::string label = j.is_string() ? j.get<std::string>()
                        : j.is_number_integer() ? std::to_string(j.get<int64_t>())
                                                : throw ParseError(where + ": expected a label");
    auto it = index.find(label);
    if (it == index.end()) throw ReferenceError(where + ": unknown item '" + label + "'");
    return it->second;
  };
  Solution s;
  for (const json& j : ArrayField(root, "selected", "solution")) {
    s.selected.push_back(lookup(j, "selected"));
  }
  std::sort(s.selected.begin(), s.selected.end());
  const json& assignments = ArrayField(root, "assignments", "solution");
  for (size_t t = 0; t < assignments.size(); ++t) {
    const std::string where = "assignments[" + std::to_string(t) + "]";
    if (!assignments[t].is_array()) throw ParseError(where + ": expected a list of bins");
    Assignment a;
    for (const json& bin : assignments[t]) {
      if (!bin.is_array()) throw ParseError(where + ": expected a list of labels per bin");
      std::vector<int> items;
      for (const json& j : bin) items.push_back(lookup(j, where));
      a.bins.push_back(std::move(items));
    }
    s.assignments.push_back(std::move(a));
  }
  return s;
}

std::string SaveSolution(const Instance& instance, const Solution& solution) {
  json root;
  root["selected"] = json::array();
  for (int i : solution.selected) root["selected"].push_back(instance.labels.at(i));
  root["assignments"] = json::array();
  for (const Assignment& a : solution.assignments) {
    json bins = json::array();
    for (const auto& bin : a.bins) {
      json items = json::array();
      for (int i : bin) items.push_back(instance.labels.at(i));
      bins.push_back(std::move(items));
    }
    root["assignments"].push_back(std::move(bins));
  }
  root["value"] = FormatRational(instance.objective.Evaluate(solution.selected));
  return root.dump(2) + "\n";
}

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void WriteFile(const std::string& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot write '" + path + "'");
  out << contents;
}

}  // namespace mkcp
