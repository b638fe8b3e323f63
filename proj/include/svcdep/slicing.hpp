#pragma once

// Property slicing: the smallest set of services needed to check a relation
// over system channels, plus diagnostics for over- or under-specified
// properties.

#include <set>
#include <string>
#include <utility>
#include <vector>

#include "svcdep/errors.hpp"
#include "svcdep/model.hpp"

namespace svcdep {

struct PropertySpec {
  std::string name;
  std::set<ChannelId> inputs;   // I_r
  std::set<ChannelId> outputs;  // O_r
};

enum class DiagnosticKind { MissingInput, IrrelevantInput };

inline const char* to_string(DiagnosticKind k) {
  return k == DiagnosticKind::MissingInput ? "MISSING_INPUT" : "IRRELEVANT_INPUT";
}

struct Diagnostic {
  DiagnosticKind kind;
  ChannelId channel;

  bool operator==(const Diagnostic&) const = default;
};

struct SliceReport {
  std::set<ServiceId> services;
  /// Producers of the property's outputs.
  std::set<ServiceId> out_components;
  /// System inputs the outputs depend on.
  std::set<ChannelId> idep_inputs;
  /// MissingInput entries first, then IrrelevantInput, each by channel.
  std::vector<Diagnostic> diagnostics;
  /// Local channels named by the property.
  std::set<ChannelId> local_refs;
};

/// Computes the slice by walking dependency sets backwards from the outputs.
/// A visited channel's producer joins the slice; each of its dependencies is
/// either a system input (recorded) or a produced channel (walked further).
inline SliceReport slice(const Architecture& arch, const PropertySpec& prop) {
  if (prop.outputs.empty()) throw InvalidArgument("property '" + prop.name + "' has no output channels");
  const std::set<ChannelId> known = arch.channels();
  const Boundary bounds = boundary(arch);
  ChannelIndex index(arch);

  SliceReport report;
  for (const auto* side : {&prop.inputs, &prop.outputs}) {
    for (const auto& c : *side) {
      if (!known.contains(c)) throw UnknownChannel(c.str());
      if (bounds.local_channels.contains(c)) report.local_refs.insert(c);
    }
  }

  std::vector<ChannelId> work;
  for (const auto& y : prop.outputs) {
    const ServiceId* p = index.producer(y);
    if (!p) throw InvalidArgument("property output '" + y.str() + "' has no producing service");
    report.out_components.insert(*p);
    work.push_back(y);
  }

  std::set<ChannelId> visited;
  while (!work.empty()) {
    ChannelId y = std::move(work.back());
    work.pop_back();
    if (!visited.insert(y).second) continue;
    const ServiceId& p = *index.producer(y);
    report.services.insert(p);
    for (const auto& dep : arch.service(p).dependencies(y)) {
      if (index.producer(dep.channel)) {
        work.push_back(dep.channel);
      } else {
        report.idep_inputs.insert(dep.channel);
      }
    }
  }

  for (const auto& x : report.idep_inputs) {
    if (!prop.inputs.contains(x)) report.diagnostics.push_back({DiagnosticKind::MissingInput, x});
  }
  for (const auto& x : prop.inputs) {
    if (!report.idep_inputs.contains(x)) report.diagnostics.push_back({DiagnosticKind::IrrelevantInput, x});
  }
  return report;
}

inline std::vector<Diagnostic> check_property_wellformed(const Architecture& arch, const PropertySpec& prop) {
  return slice(arch, prop).diagnostics;
}

}  // namespace svcdep
