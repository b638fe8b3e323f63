#pragma once

// Strongly connected services: the service graph of an architecture, trivial
// SCS classification, OWCTY peeling, forward-backward SCC decomposition and
// condensation into the next abstraction level.

#include <algorithm>
#include <iterator>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "svcdep/dependencies.hpp"
#include "svcdep/errors.hpp"
#include "svcdep/model.hpp"

namespace svcdep {

/// Producer -> consumer edge carried by a local channel.
struct SolidEdge {
  ServiceId from;
  ServiceId to;
  ChannelId channel;

  auto operator<=>(const SolidEdge&) const = default;
  bool operator==(const SolidEdge&) const = default;
};

/// Services as vertices, local channels as solid edges. System inputs and
/// outputs are kept as dashed ports on their vertices and take no part in
/// the graph algorithms.
class ServiceGraph {
 public:
  void add_vertex(const ServiceId& v) {
    vertices_.insert(v);
    succ_[v];
    pred_[v];
  }

  void add_edge(SolidEdge e) {
    add_vertex(e.from);
    add_vertex(e.to);
    succ_[e.from].insert(e.to);
    pred_[e.to].insert(e.from);
    edges_.insert(std::move(e));
  }

  void add_input_port(const ServiceId& v, const ChannelId& c) { inputs_[v].insert(c); }
  void add_output_port(const ServiceId& v, const ChannelId& c) { outputs_[v].insert(c); }

  [[nodiscard]] const std::set<ServiceId>& vertices() const noexcept { return vertices_; }
  [[nodiscard]] const std::set<SolidEdge>& edges() const noexcept { return edges_; }
  [[nodiscard]] const std::set<ServiceId>& successors(const ServiceId& v) const { return lookup(succ_, v); }
  [[nodiscard]] const std::set<ServiceId>& predecessors(const ServiceId& v) const { return lookup(pred_, v); }
  [[nodiscard]] const std::map<ServiceId, std::set<ChannelId>>& input_ports() const noexcept { return inputs_; }
  [[nodiscard]] const std::map<ServiceId, std::set<ChannelId>>& output_ports() const noexcept { return outputs_; }

  /// Subgraph on `keep`, with the edges and ports between kept vertices.
  [[nodiscard]] ServiceGraph induced(const std::set<ServiceId>& keep) const {
    ServiceGraph g;
    for (const auto& v : vertices_) {
      if (keep.contains(v)) g.add_vertex(v);
    }
    for (const auto& e : edges_) {
      if (keep.contains(e.from) && keep.contains(e.to)) g.add_edge(e);
    }
    for (const auto& [v, ports] : inputs_) {
      if (keep.contains(v)) g.inputs_[v] = ports;
    }
    for (const auto& [v, ports] : outputs_) {
      if (keep.contains(v)) g.outputs_[v] = ports;
    }
    return g;
  }

 private:
  static const std::set<ServiceId>& lookup(const std::map<ServiceId, std::set<ServiceId>>& m,
                                           const ServiceId& v) {
    auto it = m.find(v);
    if (it == m.end()) throw UnknownService(v.str());
    return it->second;
  }

  std::set<ServiceId> vertices_;
  std::set<SolidEdge> edges_;
  std::map<ServiceId, std::set<ServiceId>> succ_;
  std::map<ServiceId, std::set<ServiceId>> pred_;
  std::map<ServiceId, std::set<ChannelId>> inputs_;
  std::map<ServiceId, std::set<ChannelId>> outputs_;
};

inline ServiceGraph build_graph(const Architecture& arch) {
  ChannelIndex index(arch);
  ServiceGraph g;
  for (const auto& [id, svc] : arch.services) {
    g.add_vertex(id);
    for (const auto& x : svc.inputs) {
      if (const ServiceId* p = index.producer(x)) {
        g.add_edge({*p, id, x});
      } else {
        g.add_input_port(id, x);
      }
    }
    for (const auto& y : svc.outputs) {
      if (index.consumers(y).empty()) g.add_output_port(id, y);
    }
  }
  return g;
}

enum class TrivialClass { DT, LT, TT, T, NonTrivial };

inline const char* to_string(TrivialClass k) {
  switch (k) {
    case TrivialClass::DT: return "DT";
    case TrivialClass::LT: return "LT";
    case TrivialClass::TT: return "TT";
    case TrivialClass::T: return "T";
    case TrivialClass::NonTrivial: return "SCS";
  }
  return "?";
}

/// Disconnected trivial services: no solid predecessors and no solid successors.
inline std::set<ServiceId> classify_dt(const ServiceGraph& g) {
  std::set<ServiceId> out;
  for (const auto& v : g.vertices()) {
    if (g.predecessors(v).empty() && g.successors(v).empty()) out.insert(v);
  }
  return out;
}

struct Removal {
  ServiceId service;
  TrivialClass kind;  // LT or TT

  bool operator==(const Removal&) const = default;
};

struct OwctyResult {
  std::vector<Removal> removed;
  ServiceGraph core;
};

/// Peels leading and terminating trivial vertices. Each round removes every
/// vertex without remaining predecessors (LT), then every vertex without
/// remaining successors (TT), each batch in lexicographic order. Stops when
/// a round removes nothing; the rest is the core.
inline OwctyResult owcty_eliminate(const ServiceGraph& g) {
  std::set<ServiceId> alive = g.vertices();
  auto has_alive = [&alive](const std::set<ServiceId>& nbrs) {
    return std::any_of(nbrs.begin(), nbrs.end(), [&](const ServiceId& w) { return alive.contains(w); });
  };

  OwctyResult out;
  for (;;) {
    std::vector<ServiceId> leading;
    for (const auto& v : alive) {
      if (!has_alive(g.predecessors(v))) leading.push_back(v);
    }
    for (const auto& v : leading) {
      alive.erase(v);
      out.removed.push_back({v, TrivialClass::LT});
    }
    std::vector<ServiceId> terminating;
    for (const auto& v : alive) {
      if (!has_alive(g.successors(v))) terminating.push_back(v);
    }
    for (const auto& v : terminating) {
      alive.erase(v);
      out.removed.push_back({v, TrivialClass::TT});
    }
    if (leading.empty() && terminating.empty()) break;
  }
  out.core = g.induced(alive);
  return out;
}

namespace detail {

// Reflexive reachability from `start`, restricted to `within`.
template <typename Next>
std::set<ServiceId> reach_within(const ServiceId& start, const std::set<ServiceId>& within, Next&& next) {
  std::set<ServiceId> seen{start};
  std::vector<ServiceId> work{start};
  while (!work.empty()) {
    ServiceId v = std::move(work.back());
    work.pop_back();
    for (const auto& w : next(v)) {
      if (within.contains(w) && seen.insert(w).second) work.push_back(w);
    }
  }
  return seen;
}

}  // namespace detail

/// Forward-backward SCC decomposition. The pivot of each part is its smallest
/// vertex; forward ∩ backward closure of the pivot is one component and the
/// three remainders are decomposed independently. Components are returned
/// ordered by smallest member.
inline std::vector<std::set<ServiceId>> fb_scc(const ServiceGraph& g) {
  std::vector<std::set<ServiceId>> result;
  std::vector<std::set<ServiceId>> parts{g.vertices()};
  while (!parts.empty()) {
    std::set<ServiceId> part = std::move(parts.back());
    parts.pop_back();
    if (part.empty()) continue;
    const ServiceId pivot = *part.begin();
    auto fwd = detail::reach_within(pivot, part, [&](const ServiceId& v) -> const auto& { return g.successors(v); });
    auto bwd = detail::reach_within(pivot, part, [&](const ServiceId& v) -> const auto& { return g.predecessors(v); });

    std::set<ServiceId> scc;
    std::set<ServiceId> fwd_only;
    std::set<ServiceId> bwd_only;
    std::set<ServiceId> rest;
    for (const auto& v : part) {
      bool f = fwd.contains(v);
      bool b = bwd.contains(v);
      if (f && b) scc.insert(v);
      else if (f) fwd_only.insert(v);
      else if (b) bwd_only.insert(v);
      else rest.insert(v);
    }
    result.push_back(std::move(scc));
    parts.push_back(std::move(fwd_only));
    parts.push_back(std::move(bwd_only));
    parts.push_back(std::move(rest));
  }
  std::sort(result.begin(), result.end(),
            [](const auto& a, const auto& b) { return *a.begin() < *b.begin(); });
  return result;
}

/// Trivial-SCS label of every vertex in the whole graph.
inline std::map<ServiceId, TrivialClass> classify_vertices(const ServiceGraph& g) {
  std::map<ServiceId, TrivialClass> out;
  for (const auto& scc : fb_scc(g)) {
    for (const auto& v : scc) {
      bool no_pred = g.predecessors(v).empty();
      bool no_succ = g.successors(v).empty();
      if (scc.size() > 1) out[v] = TrivialClass::NonTrivial;
      else if (no_pred && no_succ) out[v] = TrivialClass::DT;
      else if (no_pred) out[v] = TrivialClass::LT;
      else if (no_succ) out[v] = TrivialClass::TT;
      else out[v] = TrivialClass::T;
    }
  }
  return out;
}

/// Connected components of the graph with edge directions ignored, ordered
/// by smallest member.
inline std::vector<std::set<ServiceId>> weak_components(const ServiceGraph& g) {
  std::vector<std::set<ServiceId>> out;
  std::set<ServiceId> assigned;
  for (const auto& v : g.vertices()) {
    if (assigned.contains(v)) continue;
    auto comp = detail::reach_within(v, g.vertices(), [&](const ServiceId& u) {
      std::set<ServiceId> nbrs = g.successors(u);
      nbrs.insert(g.predecessors(u).begin(), g.predecessors(u).end());
      return nbrs;
    });
    assigned.insert(comp.begin(), comp.end());
    out.push_back(std::move(comp));
  }
  return out;
}

struct CondensationStep {
  ServiceId new_id;
  std::set<ServiceId> members;
  TrivialClass kind;
  /// Index into the weak components after DT removal; DT steps have none.
  std::optional<std::size_t> component;
};

struct Condensation {
  Architecture arch;
  std::vector<CondensationStep> steps;
};

/// Expands each member through `membership` when present.
inline std::set<ServiceId> expand_members(const std::optional<Membership>& membership,
                                          const std::set<ServiceId>& members) {
  if (!membership) return members;
  std::set<ServiceId> out;
  for (const auto& m : members) {
    auto it = membership->find(m);
    if (it == membership->end()) out.insert(m);
    else out.insert(it->second.begin(), it->second.end());
  }
  return out;
}

namespace detail {

inline std::optional<double> sum_if_all(const Architecture& arch, const std::set<ServiceId>& members,
                                        std::optional<double> Service::*field) {
  double total = 0.0;
  for (const auto& m : members) {
    const auto& value = arch.service(m).*field;
    if (!value) return std::nullopt;
    total += *value;
  }
  return total;
}

}  // namespace detail

/// Condenses strongly connected services. DT vertices go first; the rest is
/// split into weakly connected components, each peeled by OWCTY and its core
/// decomposed by FB. Every removed vertex and every SCS becomes one service
/// named `<prefix><k>` in that order. Composite interfaces come from the
/// members' dependency sets; wcet and perf are summed when all members have them.
inline Condensation condense_to_l2(const Architecture& arch, const std::string& prefix = "S_",
                                   std::string level = "L2") {
  ServiceGraph g = build_graph(arch);
  Condensation out;
  auto add_step = [&](std::set<ServiceId> members, TrivialClass kind, std::optional<std::size_t> comp) {
    ServiceId id(prefix + std::to_string(out.steps.size() + 1));
    out.steps.push_back({std::move(id), std::move(members), kind, comp});
  };

  std::set<ServiceId> dt = classify_dt(g);
  for (const auto& v : dt) add_step({v}, TrivialClass::DT, std::nullopt);

  std::set<ServiceId> rest;
  std::set_difference(g.vertices().begin(), g.vertices().end(), dt.begin(), dt.end(),
                      std::inserter(rest, rest.end()));
  auto components = weak_components(g.induced(rest));
  for (std::size_t k = 0; k < components.size(); ++k) {
    OwctyResult peeled = owcty_eliminate(g.induced(components[k]));
    for (const auto& r : peeled.removed) add_step({r.service}, r.kind, k);
    for (auto& scc : fb_scc(peeled.core)) {
      TrivialClass kind = scc.size() > 1 ? TrivialClass::NonTrivial : TrivialClass::T;
      add_step(std::move(scc), kind, k);
    }
  }

  out.arch.level = std::move(level);
  out.arch.uplsize = arch.uplsize;
  out.arch.thresholds = arch.thresholds;
  out.arch.membership.emplace();
  for (const auto& step : out.steps) {
    Service svc;
    if (step.members.size() == 1) {
      svc = arch.service(*step.members.begin());
      svc.id = step.new_id;
      svc.child_ids.clear();
    } else {
      svc = compose_services(arch, step.members, step.new_id);
      svc.wcet = detail::sum_if_all(arch, step.members, &Service::wcet);
      svc.perf = detail::sum_if_all(arch, step.members, &Service::perf);
    }
    (*out.arch.membership)[step.new_id] = expand_members(arch.membership, step.members);
    out.arch.put(std::move(svc));
  }
  return out;
}

}  // namespace svcdep
