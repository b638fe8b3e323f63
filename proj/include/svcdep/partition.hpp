#pragma once

// Partitioning for remote computation: services joined by heavy channels are
// grouped together, and each group is deployed locally or in the cloud.

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "svcdep/dependencies.hpp"
#include "svcdep/elementary.hpp"
#include "svcdep/errors.hpp"
#include "svcdep/impact.hpp"
#include "svcdep/model.hpp"
#include "svcdep/scc.hpp"

namespace svcdep {

enum class Deployment { Local, Remote };

inline const char* to_string(Deployment d) { return d == Deployment::Local ? "LOCAL" : "REMOTE"; }

struct PartitionGroup {
  ServiceId new_id;
  std::set<ServiceId> members;
  Deployment deployment = Deployment::Local;
  /// "high_upload_input:<channel>" and "high_perf:<service>" tags.
  std::vector<std::string> reasons;

  bool operator==(const PartitionGroup&) const = default;
};

struct PartitionPlan {
  std::vector<PartitionGroup> groups;
};

struct Partition {
  Architecture arch;
  PartitionPlan plan;
};

inline const Thresholds& require_thresholds(const Architecture& arch) {
  if (!arch.thresholds) throw MissingMeasure("thresholds", arch.level.empty() ? "architecture" : arch.level);
  return *arch.thresholds;
}

/// Channels of `arch` whose upload size is strictly above high_load. Only
/// channels visible at this level count; channels hidden inside composite
/// services are gone from the architecture and ignored.
inline std::set<ChannelId> classify_channels(const Architecture& arch) {
  const Thresholds& limits = require_thresholds(arch);
  std::set<ChannelId> high;
  for (const auto& c : arch.channels()) {
    if (!arch.uplsize || !arch.uplsize->contains(c)) throw MissingMeasure("uplsize", c.str());
    if (arch.uplsize->at(c) > limits.high_load) high.insert(c);
  }
  return high;
}

/// Composite perf as the sum of its members' perf. With non-negative values a
/// composite with any high member is high itself.
inline std::map<ServiceId, double> aggregate_perf(const Membership& membership,
                                                  const std::map<ServiceId, double>& base) {
  return detail::sum_members(membership, base, "perf");
}

/// Groups the services of `arch` (normally L2): heavy local channels keep
/// producer and consumer together, and all consumers of a heavy system input
/// share a group. A group fed by a heavy system input stays LOCAL; otherwise
/// it goes REMOTE when a member's perf exceeds high_perf.
inline Partition partition_l3(const Architecture& arch, std::string level = "L3") {
  const Thresholds& limits = require_thresholds(arch);
  const std::set<ChannelId> high = classify_channels(arch);
  for (const auto& [id, svc] : arch.services) {
    if (!svc.perf) throw MissingMeasure("perf", id.str());
  }

  std::vector<ServiceId> ids;
  std::map<ServiceId, std::size_t> pos;
  for (const auto& [id, svc] : arch.services) {
    pos.emplace(id, ids.size());
    ids.push_back(id);
  }
  detail::DisjointSets sets(ids.size());
  ChannelIndex index(arch);
  for (const auto& c : high) {
    const auto& consumers = index.consumers(c);
    if (consumers.empty()) continue;
    const ServiceId* p = index.producer(c);
    const ServiceId& anchor = p ? *p : *consumers.begin();
    for (const auto& s : consumers) sets.unite(pos.at(anchor), pos.at(s));
  }

  std::map<std::size_t, std::set<ServiceId>> by_root;
  for (std::size_t i = 0; i < ids.size(); ++i) by_root[sets.find(i)].insert(ids[i]);

  Partition out;
  std::set<ServiceId> taken = arch.service_ids();
  for (auto& [root, members] : by_root) {
    PartitionGroup g;
    g.members = std::move(members);
    if (g.members.size() == 1) {
      g.new_id = *g.members.begin();
    } else {
      std::string name = g.members.begin()->str() + "p";
      while (taken.contains(ServiceId(name))) name += "p";
      g.new_id = ServiceId(name);
      taken.insert(g.new_id);
    }

    std::set<ChannelId> heavy_inputs;
    std::set<ServiceId> heavy_compute;
    for (const auto& m : g.members) {
      const Service& svc = arch.service(m);
      for (const auto& x : svc.inputs) {
        if (high.contains(x) && index.is_system_input(x)) heavy_inputs.insert(x);
      }
      if (*svc.perf > limits.high_perf) heavy_compute.insert(m);
    }
    for (const auto& x : heavy_inputs) g.reasons.push_back("high_upload_input:" + x.str());
    for (const auto& m : heavy_compute) g.reasons.push_back("high_perf:" + m.str());
    g.deployment = (heavy_inputs.empty() && !heavy_compute.empty()) ? Deployment::Remote : Deployment::Local;
    out.plan.groups.push_back(std::move(g));
  }

  out.arch.level = std::move(level);
  out.arch.uplsize = arch.uplsize;
  out.arch.thresholds = arch.thresholds;
  out.arch.membership.emplace();
  for (const auto& g : out.plan.groups) {
    Service svc;
    if (g.members.size() == 1) {
      svc = arch.service(*g.members.begin());
      svc.id = g.new_id;
    } else {
      svc = compose_services(arch, g.members, g.new_id);
      svc.wcet = detail::sum_if_all(arch, g.members, &Service::wcet);
      svc.perf = detail::sum_if_all(arch, g.members, &Service::perf);
    }
    (*out.arch.membership)[g.new_id] = expand_members(arch.membership, g.members);
    out.arch.put(std::move(svc));
  }
  return out;
}

}  // namespace svcdep
