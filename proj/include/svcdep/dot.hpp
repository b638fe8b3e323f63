#pragma once

// Graphviz DOT export. Local channels are solid edges; system inputs and
// outputs are dashed edges to point-shaped port nodes. A system input feeding
// several services gets one port node fanning out to all of them.

#include <set>
#include <sstream>
#include <string>

#include "svcdep/model.hpp"

namespace svcdep {

struct DotOptions {
  /// Show each service's per-output dependency sets in its node label.
  bool show_deps = false;
  /// Colour heavy channels red and thick, heavy services white, the rest
  /// blue. Needs thresholds; measures that are absent count as low.
  bool highlight = false;
};

namespace detail {

inline std::string dep_label(const Service& svc) {
  std::string label = svc.id.str();
  for (const auto& [y, deps] : svc.ideps) {
    label += "\\n" + y.str() + ": {";
    bool first = true;
    for (const auto& dep : deps) {
      label += (first ? "" : ", ") + dep.channel.str();
      if (dep.via) label += "^" + dep.via->str();
      first = false;
    }
    label += "}";
  }
  return label;
}

}  // namespace detail

inline std::string export_dot(const Architecture& arch, const DotOptions& opts = {}) {
  const bool colour = opts.highlight && arch.thresholds.has_value();
  auto heavy_channel = [&](const ChannelId& c) {
    if (!colour || !arch.uplsize) return false;
    auto it = arch.uplsize->find(c);
    return it != arch.uplsize->end() && it->second > arch.thresholds->high_load;
  };
  auto edge_style = [&](const ChannelId& c, bool dashed) {
    std::string attrs = "label=\"" + c.str() + "\"";
    if (dashed) attrs += ", style=dashed";
    if (colour) attrs += heavy_channel(c) ? ", color=red, penwidth=3" : ", color=blue";
    return attrs;
  };

  ChannelIndex index(arch);
  std::ostringstream os;
  os << "digraph \"" << (is_valid_identifier(arch.level) ? arch.level : "architecture") << "\" {\n";
  os << "  rankdir=LR;\n";
  os << "  node [shape=box];\n";

  for (const auto& [id, svc] : arch.services) {
    os << "  \"" << id << "\" [label=\"" << (opts.show_deps ? detail::dep_label(svc) : id.str()) << "\"";
    if (colour) {
      bool heavy = svc.perf && *svc.perf > arch.thresholds->high_perf;
      os << ", style=filled, fillcolor=" << (heavy ? "white" : "lightblue");
    }
    os << "];\n";
  }

  std::set<ChannelId> inputs_done;
  for (const auto& [id, svc] : arch.services) {
    for (const auto& x : svc.inputs) {
      if (index.producer(x) || !inputs_done.insert(x).second) continue;
      os << "  \"in_" << x << "\" [shape=point];\n";
      for (const auto& consumer : index.consumers(x)) {
        os << "  \"in_" << x << "\" -> \"" << consumer << "\" [" << edge_style(x, true) << "];\n";
      }
    }
  }
  for (const auto& [id, svc] : arch.services) {
    for (const auto& y : svc.outputs) {
      const auto& consumers = index.consumers(y);
      if (consumers.empty()) {
        os << "  \"out_" << y << "\" [shape=point];\n";
        os << "  \"" << id << "\" -> \"out_" << y << "\" [" << edge_style(y, true) << "];\n";
      }
      for (const auto& consumer : consumers) {
        os << "  \"" << id << "\" -> \"" << consumer << "\" [" << edge_style(y, false) << "];\n";
      }
    }
  }
  os << "}\n";
  return os.str();
}

}  // namespace svcdep
