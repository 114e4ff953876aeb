#include "vcdlab/io.hpp"

#include <fstream>
#include <stdexcept>

namespace vcdlab {

ModelFile model_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("universe"))
    throw std::invalid_argument("model file: missing \"universe\"");
  const int n = j.at("universe").get<int>();
  StructureBuilder b(n);
  if (j.contains("relations")) {
    for (const auto& [name, tuples] : j.at("relations").items()) {
      std::vector<std::vector<int>> ts;
      for (const auto& t : tuples) ts.push_back(t.get<std::vector<int>>());
      const int arity = ts.empty() ? 2 : static_cast<int>(ts.front().size());
      b.add_relation(name, arity, std::move(ts));
    }
  }
  if (j.contains("labels"))
    for (const auto& [label, idx] : j.at("labels").items()) b.set_label(idx.get<int>(), label);
  ModelFile out;
  out.structure = std::move(b).build();
  if (j.contains("sets"))
    for (const auto& [name, members] : j.at("sets").items())
      out.sets[name] = members.get<std::vector<int>>();
  for (const auto& [name, members] : out.sets)
    for (int e : members)
      if (e < 0 || e >= n)
        throw std::invalid_argument("model file: set \"" + name + "\" leaves the universe");
  return out;
}

nlohmann::json model_to_json(const FiniteStructure& s,
                             const std::map<std::string, std::vector<int>>& sets) {
  nlohmann::json j;
  j["universe"] = s.universe_size();
  j["relations"] = nlohmann::json::object();
  for (const auto& [name, arity] : s.signature()) j["relations"][name] = s.relation(name).tuples;
  if (!s.labels().empty()) {
    nlohmann::json labels = nlohmann::json::object();
    for (const auto& [label, idx] : s.labels()) labels[label] = idx;
    j["labels"] = std::move(labels);
  }
  if (!sets.empty()) {
    nlohmann::json sj = nlohmann::json::object();
    for (const auto& [name, members] : sets) sj[name] = members;
    j["sets"] = std::move(sj);
  }
  return j;
}

ModelFile read_model_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument("cannot parse '" + path + "': " + e.what());
  }
  return model_from_json(j);
}

void write_model_file(const std::string& path, const FiniteStructure& s,
                      const std::map<std::string, std::vector<int>>& sets) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot write '" + path + "'");
  out << model_to_json(s, sets).dump(2) << "\n";
}

nlohmann::json trace_to_json(const FormulaSet& delta, const ParamSet& B, const TypeTrace& t) {
  nlohmann::json j;
  j["delta"] = nlohmann::json::array();
  for (const Formula& f : delta.formulas) j["delta"].push_back(f.to_string());
  j["B"] = B.members;
  nlohmann::json positive = nlohmann::json::array();
  for (int i = 0; i < t.formula_count; ++i)
    for (int k = 0; k < t.b_size; ++k)
      if (t.positive_at(i, k)) positive.push_back({i, k});
  j["positive"] = std::move(positive);
  j["realizers"] = t.realizers;
  return j;
}

uint64_t fnv1a_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open '" + path + "'");
  uint64_t h = 1469598103934665603ull;
  char c;
  while (in.get(c)) {
    h ^= static_cast<unsigned char>(c);
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace vcdlab
