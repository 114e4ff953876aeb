#pragma once

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "vcdlab/structure.hpp"
#include "vcdlab/typespace.hpp"

namespace vcdlab {

/// A decoded model file: the structure plus any designated element sets
/// (for generated families these are, e.g., "B" and "A").
struct ModelFile {
  StructurePtr structure;
  std::map<std::string, std::vector<int>> sets;
};

/// Model file format:
///   { "universe": n,
///     "relations": { "<": [[a,b], ...], ... },
///     "labels":    { "x0c0": 0, ... },          // optional
///     "sets":      { "B": [...], "A": [...] }   // optional
///   }
ModelFile model_from_json(const nlohmann::json& j);
nlohmann::json model_to_json(const FiniteStructure& s,
                             const std::map<std::string, std::vector<int>>& sets = {});

ModelFile read_model_file(const std::string& path);
void write_model_file(const std::string& path, const FiniteStructure& s,
                      const std::map<std::string, std::vector<int>>& sets = {});

/// Trace wire format:
///   { "delta": ["..."], "B": [[...], ...], "positive": [[i,j], ...],
///     "realizers": [...] }
nlohmann::json trace_to_json(const FormulaSet& delta, const ParamSet& B, const TypeTrace& t);

/// FNV-1a over the raw bytes of a file; used to pin inputs inside reports.
uint64_t fnv1a_file(const std::string& path);

}  // namespace vcdlab
