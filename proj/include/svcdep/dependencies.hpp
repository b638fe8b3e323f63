#pragma once

// Service-level dependency functions (direct sources, sources, acceptors),
// the channel-level dual of the dependency sets, and the dependency sets of
// composite services.

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "svcdep/errors.hpp"
#include "svcdep/model.hpp"

namespace svcdep {

/// Service graph induced by channel connectivity. Dependency sets are not
/// consulted: a producer of any input is a predecessor.
struct ServiceAdjacency {
  std::map<ServiceId, std::set<ServiceId>> successors;
  std::map<ServiceId, std::set<ServiceId>> predecessors;

  explicit ServiceAdjacency(const Architecture& arch) {
    ChannelIndex index(arch);
    for (const auto& [id, svc] : arch.services) {
      successors[id];
      predecessors[id];
    }
    for (const auto& [id, svc] : arch.services) {
      for (const auto& x : svc.inputs) {
        if (const ServiceId* p = index.producer(x)) {
          predecessors[id].insert(*p);
          successors[*p].insert(id);
        }
      }
    }
  }
};

namespace detail {

// Non-reflexive reachability: `start` is in the result only if it lies on a cycle.
inline std::set<ServiceId> reach(const std::map<ServiceId, std::set<ServiceId>>& next,
                                 const ServiceId& start) {
  std::set<ServiceId> seen;
  const auto& first = next.at(start);
  std::vector<ServiceId> work(first.begin(), first.end());
  while (!work.empty()) {
    ServiceId v = std::move(work.back());
    work.pop_back();
    if (!seen.insert(v).second) continue;
    for (const auto& w : next.at(v)) {
      if (!seen.contains(w)) work.push_back(w);
    }
  }
  return seen;
}

}  // namespace detail

/// Producers of the inputs of `c`.
inline std::set<ServiceId> direct_sources(const Architecture& arch, const ServiceId& c) {
  arch.require(c);
  return ServiceAdjacency(arch).predecessors.at(c);
}

/// Least fixed point of direct sources: every service with a non-empty path to `c`.
inline std::set<ServiceId> sources(const Architecture& arch, const ServiceId& c) {
  arch.require(c);
  return detail::reach(ServiceAdjacency(arch).predecessors, c);
}

/// Consumers of the outputs of `c`.
inline std::set<ServiceId> direct_acceptors(const Architecture& arch, const ServiceId& c) {
  arch.require(c);
  return ServiceAdjacency(arch).successors.at(c);
}

/// Every service whose inputs depend on the outputs of `c`: x is an acceptor
/// of c exactly when c is a source of x.
inline std::set<ServiceId> acceptors(const Architecture& arch, const ServiceId& c) {
  arch.require(c);
  return detail::reach(ServiceAdjacency(arch).successors, c);
}

struct SourceSet {
  ServiceId service;
  std::set<ServiceId> direct;
  std::set<ServiceId> transitive;
};

/// Sources of every service, computed over one shared adjacency.
inline std::map<ServiceId, SourceSet> all_sources(const Architecture& arch) {
  ServiceAdjacency adj(arch);
  std::map<ServiceId, SourceSet> out;
  for (const auto& [id, svc] : arch.services) {
    out.emplace(id, SourceSet{id, adj.predecessors.at(id), detail::reach(adj.predecessors, id)});
  }
  return out;
}

/// Outputs of `c` whose dependency set mentions input `x`.
inline std::set<ChannelId> output_dependents(const Architecture& arch, const ServiceId& c,
                                             const ChannelId& x) {
  const Service& svc = arch.service(c);
  if (!svc.inputs.contains(x)) {
    throw InvalidArgument("'" + x.str() + "' is not an input of '" + c.str() + "'");
  }
  std::set<ChannelId> out;
  for (const auto& [y, deps] : svc.ideps) {
    for (const auto& dep : deps) {
      if (dep.channel == x) {
        out.insert(y);
        break;
      }
    }
  }
  return out;
}

/// Inputs that no output depends on.
inline std::vector<std::pair<ServiceId, ChannelId>> lint_unused_inputs(const Architecture& arch) {
  std::vector<std::pair<ServiceId, ChannelId>> out;
  for (const auto& [id, svc] : arch.services) {
    for (const auto& x : svc.inputs) {
      if (output_dependents(arch, id, x).empty()) out.emplace_back(id, x);
    }
  }
  return out;
}

namespace detail {

struct MemberChannels {
  std::map<ChannelId, ServiceId> produced;  // channel -> member producing it
  std::set<ChannelId> consumed;
};

inline MemberChannels member_channels(const Architecture& arch, const std::set<ServiceId>& members) {
  MemberChannels mc;
  for (const auto& m : members) {
    const Service& svc = arch.service(m);
    for (const auto& y : svc.outputs) mc.produced.emplace(y, m);
    mc.consumed.insert(svc.inputs.begin(), svc.inputs.end());
  }
  return mc;
}

// A via-tag wins over a direct entry; the smaller variable wins among tags.
inline void merge_tag(std::map<ChannelId, std::optional<LocalVarId>>& found, const DepRef& dep) {
  auto [it, inserted] = found.emplace(dep.channel, dep.via);
  if (inserted || !dep.via) return;
  if (!it->second || *dep.via < *it->second) it->second = dep.via;
}

}  // namespace detail

/// Channels produced inside `members` that leave the group: consumed by a
/// non-member or by nobody.
inline std::set<ChannelId> composite_outputs(const Architecture& arch,
                                             const std::set<ServiceId>& members) {
  ChannelIndex index(arch);
  std::set<ChannelId> out;
  for (const auto& m : members) {
    for (const auto& y : arch.service(m).outputs) {
      const auto& who = index.consumers(y);
      bool leaves = who.empty() ||
                    std::any_of(who.begin(), who.end(), [&](const ServiceId& s) { return !members.contains(s); });
      if (leaves) out.insert(y);
    }
  }
  return out;
}

/// Channels consumed by `members` that no member produces.
inline std::set<ChannelId> composite_inputs(const Architecture& arch, const std::set<ServiceId>& members) {
  auto mc = detail::member_channels(arch, members);
  std::set<ChannelId> out;
  for (const auto& x : mc.consumed) {
    if (!mc.produced.contains(x)) out.insert(x);
  }
  return out;
}

/// Dependency sets of the composite formed by `members`: for each external
/// output, the external inputs reached backwards through member dependency
/// sets and internal channels. The via-tag of an entry is the tag of the
/// step at which the external input enters the composite.
inline std::map<ChannelId, DepSet> composite_ideps(const Architecture& arch,
                                                   const std::set<ServiceId>& members) {
  if (members.empty()) throw InvalidArgument("composite of an empty member set");
  auto mc = detail::member_channels(arch, members);
  std::map<ChannelId, DepSet> out;
  for (const auto& y : composite_outputs(arch, members)) {
    std::map<ChannelId, std::optional<LocalVarId>> found;
    std::set<ChannelId> visited;
    std::vector<ChannelId> work{y};
    while (!work.empty()) {
      ChannelId z = std::move(work.back());
      work.pop_back();
      if (!visited.insert(z).second) continue;
      const Service& producer = arch.service(mc.produced.at(z));
      for (const auto& dep : producer.dependencies(z)) {
        if (mc.produced.contains(dep.channel)) {
          work.push_back(dep.channel);
        } else {
          detail::merge_tag(found, dep);
        }
      }
    }
    DepSet deps;
    for (auto& [x, via] : found) deps.insert(DepRef{x, via});
    out.emplace(y, std::move(deps));
  }
  return out;
}

/// Builds the composite service `id` from `members`. Measures are left unset;
/// callers aggregate them.
inline Service compose_services(const Architecture& arch, const std::set<ServiceId>& members,
                                ServiceId id) {
  Service svc;
  svc.id = std::move(id);
  svc.inputs = composite_inputs(arch, members);
  svc.outputs = composite_outputs(arch, members);
  for (const auto& m : members) {
    const auto& vars = arch.service(m).local_vars;
    svc.local_vars.insert(vars.begin(), vars.end());
  }
  svc.ideps = composite_ideps(arch, members);
  return svc;
}

}  // namespace svcdep
