#pragma once

// Architecture documents (JSON): strict/lenient parsing with positioned
// errors, canonical serialization, and the measures overlay format.

#include <cstddef>
#include <initializer_list>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "svcdep/errors.hpp"
#include "svcdep/model.hpp"

namespace svcdep {

using Json = nlohmann::json;

enum class SchemaMode { Strict, Lenient };

struct ParseOptions {
  SchemaMode mode = SchemaMode::Strict;
  /// Run validate() and throw InvalidArchitecture on violations.
  bool validate = true;
};

namespace detail {

class SchemaReader {
 public:
  SchemaReader(SchemaMode mode, std::vector<std::string>* warnings) : mode_(mode), warnings_(warnings) {}

  void allow_keys(const Json& obj, const std::string& path, std::initializer_list<std::string_view> keys) const {
    for (const auto& [key, value] : obj.items()) {
      bool known = false;
      for (auto k : keys) known = known || key == k;
      if (known) continue;
      std::string msg = path + ": unknown key '" + key + "'";
      if (mode_ == SchemaMode::Strict) throw SchemaError(msg);
      if (warnings_) warnings_->push_back(msg);
    }
  }

  static const Json& object(const Json& j, const std::string& path) {
    if (!j.is_object()) throw SchemaError(path + ": expected an object");
    return j;
  }

  static std::string string(const Json& j, const std::string& path) {
    if (!j.is_string()) throw SchemaError(path + ": expected a string");
    return j.get<std::string>();
  }

  static double number(const Json& j, const std::string& path) {
    if (!j.is_number()) throw SchemaError(path + ": expected a number");
    return j.get<double>();
  }

  template <typename Id>
  static std::set<Id> id_set(const Json& j, const std::string& path) {
    if (!j.is_array()) throw SchemaError(path + ": expected an array of strings");
    std::set<Id> out;
    for (std::size_t i = 0; i < j.size(); ++i) {
      out.insert(Id(string(j[i], path + "[" + std::to_string(i) + "]")));
    }
    return out;
  }

  template <typename Id>
  static std::map<Id, double> number_map(const Json& j, const std::string& path) {
    object(j, path);
    std::map<Id, double> out;
    for (const auto& [key, value] : j.items()) out.emplace(Id(key), number(value, path + "." + key));
    return out;
  }

  Thresholds thresholds(const Json& j, const std::string& path) const {
    object(j, path);
    allow_keys(j, path, {"high_load", "high_perf"});
    for (const char* k : {"high_load", "high_perf"}) {
      if (!j.contains(k)) throw SchemaError(path + ": missing key '" + k + "'");
    }
    return {number(j.at("high_load"), path + ".high_load"), number(j.at("high_perf"), path + ".high_perf")};
  }

  Service service(const Json& j, const std::string& path) const {
    object(j, path);
    allow_keys(j, path, {"id", "inputs", "outputs", "local_vars", "ideps", "wcet", "perf", "child_ids"});
    if (!j.contains("id")) throw SchemaError(path + ": missing key 'id'");
    Service svc;
    svc.id = ServiceId(string(j.at("id"), path + ".id"));
    const std::string where = path + " (" + svc.id.str() + ")";
    if (j.contains("inputs")) svc.inputs = id_set<ChannelId>(j.at("inputs"), where + ".inputs");
    if (j.contains("outputs")) svc.outputs = id_set<ChannelId>(j.at("outputs"), where + ".outputs");
    if (j.contains("local_vars")) svc.local_vars = id_set<LocalVarId>(j.at("local_vars"), where + ".local_vars");
    if (j.contains("ideps")) {
      const Json& ideps = object(j.at("ideps"), where + ".ideps");
      for (const auto& [output, deps] : ideps.items()) {
        const std::string dpath = where + ".ideps." + output;
        if (!deps.is_array()) throw SchemaError(dpath + ": expected an array");
        DepSet set;
        for (std::size_t i = 0; i < deps.size(); ++i) {
          const std::string epath = dpath + "[" + std::to_string(i) + "]";
          object(deps[i], epath);
          allow_keys(deps[i], epath, {"channel", "via"});
          if (!deps[i].contains("channel")) throw SchemaError(epath + ": missing key 'channel'");
          DepRef ref{ChannelId(string(deps[i].at("channel"), epath + ".channel")), std::nullopt};
          if (deps[i].contains("via") && !deps[i].at("via").is_null()) {
            ref.via = LocalVarId(string(deps[i].at("via"), epath + ".via"));
          }
          set.insert(std::move(ref));
        }
        svc.ideps.emplace(ChannelId(output), std::move(set));
      }
    }
    if (j.contains("wcet")) svc.wcet = number(j.at("wcet"), where + ".wcet");
    if (j.contains("perf")) svc.perf = number(j.at("perf"), where + ".perf");
    if (j.contains("child_ids")) {
      const Json& hints = object(j.at("child_ids"), where + ".child_ids");
      for (const auto& [output, child] : hints.items()) {
        svc.child_ids.emplace(ChannelId(output), ServiceId(string(child, where + ".child_ids." + output)));
      }
    }
    return svc;
  }

 private:
  SchemaMode mode_;
  std::vector<std::string>* warnings_;
};

inline std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t byte) {
  std::size_t line = 1;
  std::size_t column = 1;
  for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

}  // namespace detail

/// Parses JSON text, mapping syntax errors to ParseError with line/column.
inline Json parse_json(std::string_view text) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    auto [line, column] = detail::line_column(text, e.byte);
    throw ParseError("syntax error at line " + std::to_string(line) + ", column " + std::to_string(column) +
                         ": " + e.what(),
                     line, column);
  }
}

inline Architecture architecture_from_json(const Json& doc, const ParseOptions& opts = {},
                                           std::vector<std::string>* warnings = nullptr) {
  detail::SchemaReader reader(opts.mode, warnings);
  reader.object(doc, "$");
  reader.allow_keys(doc, "$", {"level", "services", "uplsize", "thresholds", "membership"});
  if (!doc.contains("services")) throw SchemaError("$: missing key 'services'");

  Architecture arch;
  if (doc.contains("level")) arch.level = reader.string(doc.at("level"), "$.level");
  const Json& services = doc.at("services");
  if (!services.is_array()) throw SchemaError("$.services: expected an array");
  for (std::size_t i = 0; i < services.size(); ++i) {
    Service svc = reader.service(services[i], "$.services[" + std::to_string(i) + "]");
    if (arch.contains(svc.id)) throw SchemaError("$.services: duplicate service id '" + svc.id.str() + "'");
    arch.put(std::move(svc));
  }
  if (doc.contains("uplsize")) arch.uplsize = reader.number_map<ChannelId>(doc.at("uplsize"), "$.uplsize");
  if (doc.contains("thresholds")) arch.thresholds = reader.thresholds(doc.at("thresholds"), "$.thresholds");
  if (doc.contains("membership")) {
    const Json& m = reader.object(doc.at("membership"), "$.membership");
    arch.membership.emplace();
    for (const auto& [composite, members] : m.items()) {
      (*arch.membership)[ServiceId(composite)] = reader.id_set<ServiceId>(members, "$.membership." + composite);
    }
  }
  if (opts.validate) require_valid(arch);
  return arch;
}

/// Reads an architecture document. Throws ParseError, SchemaError or
/// InvalidArchitecture.
inline Architecture parse_architecture(std::string_view text, const ParseOptions& opts = {},
                                       std::vector<std::string>* warnings = nullptr) {
  return architecture_from_json(parse_json(text), opts, warnings);
}

namespace detail {

template <typename Id>
Json id_array(const std::set<Id>& ids) {
  Json arr = Json::array();
  for (const auto& id : ids) arr.push_back(id.str());
  return arr;
}

}  // namespace detail

inline Json to_json(const Service& svc) {
  Json j = Json::object();
  j["id"] = svc.id.str();
  j["inputs"] = detail::id_array(svc.inputs);
  j["outputs"] = detail::id_array(svc.outputs);
  j["local_vars"] = detail::id_array(svc.local_vars);
  Json ideps = Json::object();
  for (const auto& [y, deps] : svc.ideps) {
    Json arr = Json::array();
    for (const auto& dep : deps) {
      Json e = {{"channel", dep.channel.str()}};
      if (dep.via) e["via"] = dep.via->str();
      arr.push_back(std::move(e));
    }
    ideps[y.str()] = std::move(arr);
  }
  j["ideps"] = std::move(ideps);
  if (svc.wcet) j["wcet"] = *svc.wcet;
  if (svc.perf) j["perf"] = *svc.perf;
  if (!svc.child_ids.empty()) {
    Json hints = Json::object();
    for (const auto& [y, child] : svc.child_ids) hints[y.str()] = child.str();
    j["child_ids"] = std::move(hints);
  }
  return j;
}

inline Json to_json(const Architecture& arch) {
  Json j = Json::object();
  j["level"] = arch.level;
  Json services = Json::array();
  for (const auto& [id, svc] : arch.services) services.push_back(to_json(svc));
  j["services"] = std::move(services);
  if (arch.uplsize) {
    Json m = Json::object();
    for (const auto& [c, v] : *arch.uplsize) m[c.str()] = v;
    j["uplsize"] = std::move(m);
  }
  if (arch.thresholds) {
    j["thresholds"] = {{"high_load", arch.thresholds->high_load}, {"high_perf", arch.thresholds->high_perf}};
  }
  if (arch.membership) {
    Json m = Json::object();
    for (const auto& [composite, members] : *arch.membership) m[composite.str()] = detail::id_array(members);
    j["membership"] = std::move(m);
  }
  return j;
}

/// Canonical text: sorted keys and sets, two-space indent, trailing newline.
inline std::string dump(const Json& j) { return j.dump(2) + "\n"; }

inline std::string serialize(const Architecture& arch) { return dump(to_json(arch)); }

/// Measures supplied separately from the architecture, keyed by service id or
/// channel. Entries for ids absent from a given architecture are ignored.
struct MeasureOverlay {
  std::map<ServiceId, double> wcet;
  std::map<ServiceId, double> perf;
  std::map<ChannelId, double> uplsize;
  std::optional<Thresholds> thresholds;
};

inline MeasureOverlay parse_measures(std::string_view text, SchemaMode mode = SchemaMode::Strict,
                                     std::vector<std::string>* warnings = nullptr) {
  Json doc = parse_json(text);
  detail::SchemaReader reader(mode, warnings);
  reader.object(doc, "$");
  reader.allow_keys(doc, "$", {"wcet", "perf", "uplsize", "thresholds"});
  MeasureOverlay m;
  if (doc.contains("wcet")) m.wcet = reader.number_map<ServiceId>(doc.at("wcet"), "$.wcet");
  if (doc.contains("perf")) m.perf = reader.number_map<ServiceId>(doc.at("perf"), "$.perf");
  if (doc.contains("uplsize")) m.uplsize = reader.number_map<ChannelId>(doc.at("uplsize"), "$.uplsize");
  if (doc.contains("thresholds")) m.thresholds = reader.thresholds(doc.at("thresholds"), "$.thresholds");
  return m;
}

inline Architecture apply_measures(Architecture arch, const MeasureOverlay& m) {
  for (auto& [id, svc] : arch.services) {
    if (auto it = m.wcet.find(id); it != m.wcet.end()) svc.wcet = it->second;
    if (auto it = m.perf.find(id); it != m.perf.end()) svc.perf = it->second;
  }
  if (!m.uplsize.empty()) {
    if (!arch.uplsize) arch.uplsize.emplace();
    for (const auto& [c, v] : m.uplsize) (*arch.uplsize)[c] = v;
  }
  if (m.thresholds) arch.thresholds = m.thresholds;
  return arch;
}

}  // namespace svcdep
