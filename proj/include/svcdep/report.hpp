#pragma once

// Machine-readable (JSON) and human-readable renderings of analysis results.

#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "svcdep/elementary.hpp"
#include "svcdep/impact.hpp"
#include "svcdep/io.hpp"
#include "svcdep/model.hpp"
#include "svcdep/partition.hpp"
#include "svcdep/scc.hpp"
#include "svcdep/slicing.hpp"

namespace svcdep {

template <typename Id>
std::string join(const std::set<Id>& ids, const char* sep = ", ") {
  std::string out;
  for (const auto& id : ids) out += (out.empty() ? "" : sep) + id.str();
  return out;
}

template <typename Id>
std::string braced(const std::set<Id>& ids) {
  return "{" + join(ids) + "}";
}

inline Json to_json(const Violation& v) {
  return {{"rule", v.rule}, {"subject", v.subject}, {"message", v.message}};
}

inline Json to_json(const Boundary& b) {
  return {{"system_inputs", detail::id_array(b.system_inputs)},
          {"system_outputs", detail::id_array(b.system_outputs)},
          {"local_channels", detail::id_array(b.local_channels)}};
}

inline std::string to_text(const Boundary& b) {
  return "system inputs:  " + braced(b.system_inputs) + "\nsystem outputs: " + braced(b.system_outputs) +
         "\nlocal channels: " + braced(b.local_channels) + "\n";
}

inline Json lint_to_json(const std::vector<std::pair<ServiceId, ChannelId>>& findings) {
  Json arr = Json::array();
  for (const auto& [s, c] : findings) arr.push_back({{"service", s.str()}, {"channel", c.str()}});
  return {{"unused_inputs", std::move(arr)}};
}

inline Json to_json(const SliceReport& r, const PropertySpec& prop) {
  Json diags = Json::array();
  for (const auto& d : r.diagnostics) diags.push_back({{"kind", to_string(d.kind)}, {"channel", d.channel.str()}});
  return {{"property", prop.name},
          {"in_channels", detail::id_array(prop.inputs)},
          {"out_channels", detail::id_array(prop.outputs)},
          {"out_components", detail::id_array(r.out_components)},
          {"services", detail::id_array(r.services)},
          {"idep_inputs", detail::id_array(r.idep_inputs)},
          {"local_refs", detail::id_array(r.local_refs)},
          {"diagnostics", std::move(diags)}};
}

inline std::string to_text(const SliceReport& r, const PropertySpec& prop) {
  std::ostringstream os;
  os << "property " << (prop.name.empty() ? "r" : prop.name) << ": in " << braced(prop.inputs) << ", out "
     << braced(prop.outputs) << "\n";
  os << "services needed: " << braced(r.services) << "\n";
  os << "dependent system inputs: " << braced(r.idep_inputs) << "\n";
  if (!r.local_refs.empty()) os << "local channels referenced: " << braced(r.local_refs) << "\n";
  for (const auto& d : r.diagnostics) {
    if (d.kind == DiagnosticKind::MissingInput) {
      os << "MISSING_INPUT " << d.channel << ": outputs depend on it; state that the property holds for any value\n";
    } else {
      os << "IRRELEVANT_INPUT " << d.channel << ": no output depends on it; the constraint is unnecessary\n";
    }
  }
  return os.str();
}

inline Json to_json(const ImpactReport& r) {
  Json j = Json::object();
  for (const auto& [id, e] : r) {
    j[id.str()] = {{"impact_number", e.impact_number}, {"impact_set", detail::id_array(e.impact_set)}};
  }
  return j;
}

inline std::string to_text(const ImpactReport& r) {
  std::ostringstream os;
  for (const auto& [id, e] : r) os << id << "  impact " << e.impact_number << "  " << braced(e.impact_set) << "\n";
  return os.str();
}

inline Json wcet_to_json(const WcetReport& r) {
  Json j = Json::object();
  for (const auto& [c, w] : r) j[c.str()] = w;
  return j;
}

inline std::string wcet_to_text(const WcetReport& r) {
  std::ostringstream os;
  for (const auto& [c, w] : r) os << c << "  " << w << "\n";
  return os.str();
}

inline Json to_json(const PartitionPlan& plan) {
  Json groups = Json::array();
  for (const auto& g : plan.groups) {
    groups.push_back({{"id", g.new_id.str()},
                      {"members", detail::id_array(g.members)},
                      {"deployment", to_string(g.deployment)},
                      {"reasons", g.reasons}});
  }
  return {{"groups", std::move(groups)}};
}

inline std::string to_text(const PartitionPlan& plan) {
  std::ostringstream os;
  for (const auto& g : plan.groups) {
    os << g.new_id << " = " << braced(g.members) << "  " << to_string(g.deployment);
    if (!g.reasons.empty()) {
      os << "  (";
      for (std::size_t i = 0; i < g.reasons.size(); ++i) os << (i ? ", " : "") << g.reasons[i];
      os << ")";
    }
    os << "\n";
  }
  return os.str();
}

inline Json steps_to_json(const std::vector<CondensationStep>& steps) {
  Json arr = Json::array();
  for (const auto& s : steps) {
    Json e = {{"id", s.new_id.str()}, {"members", detail::id_array(s.members)}, {"kind", to_string(s.kind)}};
    if (s.component) e["component"] = *s.component;
    arr.push_back(std::move(e));
  }
  return arr;
}

inline std::string steps_to_text(const std::vector<CondensationStep>& steps) {
  std::ostringstream os;
  for (const auto& s : steps) {
    os << s.new_id << " <- " << braced(s.members) << "  " << to_string(s.kind);
    if (s.component) os << "  (component " << *s.component + 1 << ")";
    os << "\n";
  }
  return os.str();
}

inline Json children_to_json(const std::map<ServiceId, std::set<ServiceId>>& children) {
  Json j = Json::object();
  for (const auto& [parent, kids] : children) j[parent.str()] = detail::id_array(kids);
  return j;
}

/// One line per service: interface and dependency sets.
inline std::string to_text(const Architecture& arch) {
  std::ostringstream os;
  os << "level " << (arch.level.empty() ? "-" : arch.level) << ", " << arch.services.size() << " service(s)\n";
  for (const auto& [id, svc] : arch.services) {
    os << "  " << id << ": in " << braced(svc.inputs) << ", out " << braced(svc.outputs);
    if (arch.membership) {
      if (auto it = arch.membership->find(id); it != arch.membership->end()) os << ", members " << braced(it->second);
    }
    os << "\n";
  }
  return os.str();
}

}  // namespace svcdep
