#pragma once

// Failure impact (who is affected when a service fails) and worst-case
// execution time per output channel.

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "svcdep/dependencies.hpp"
#include "svcdep/errors.hpp"
#include "svcdep/model.hpp"
#include "svcdep/scc.hpp"

namespace svcdep {

struct ImpactEntry {
  std::set<ServiceId> impact_set;  // the service itself plus its acceptors
  std::size_t impact_number = 0;

  bool operator==(const ImpactEntry&) const = default;
};

using ImpactReport = std::map<ServiceId, ImpactEntry>;

inline ImpactReport impact(const Architecture& arch) {
  ServiceAdjacency adj(arch);
  ImpactReport out;
  for (const auto& [id, svc] : arch.services) {
    ImpactEntry e;
    e.impact_set = detail::reach(adj.successors, id);
    e.impact_set.insert(id);
    e.impact_number = e.impact_set.size();
    out.emplace(id, std::move(e));
  }
  return out;
}

using WcetMap = std::map<ServiceId, double>;
using WcetReport = std::map<ChannelId, double>;

namespace detail {

class WcetEvaluator {
 public:
  explicit WcetEvaluator(const Architecture& arch) : arch_(arch), index_(arch) {}

  // Longest sum of service WCETs along dependency paths ending at `y`.
  double of(const ChannelId& y) {
    if (auto it = memo_.find(y); it != memo_.end()) return it->second;
    const ServiceId* p = index_.producer(y);
    if (!p) throw InvalidArgument("channel '" + y.str() + "' has no producing service");
    if (!on_path_.insert(y).second) {
      throw CyclicGraph("dependency cycle through channel '" + y.str() + "'; condense first");
    }
    const Service& svc = arch_.service(*p);
    if (!svc.wcet) throw MissingMeasure("wcet", p->str());
    double upstream = 0.0;
    for (const auto& dep : svc.dependencies(y)) {
      if (index_.producer(dep.channel)) upstream = std::max(upstream, of(dep.channel));
    }
    on_path_.erase(y);
    return memo_[y] = *svc.wcet + upstream;
  }

 private:
  const Architecture& arch_;
  ChannelIndex index_;
  std::map<ChannelId, double> memo_;
  std::set<ChannelId> on_path_;
};

}  // namespace detail

/// WCET of every produced channel. The service graph must be acyclic; condense
/// cyclic architectures first and aggregate the WCETs of their SCSs.
inline WcetReport wcet_per_output(const Architecture& arch) {
  for (const auto& scc : fb_scc(build_graph(arch))) {
    if (scc.size() > 1) {
      std::string names;
      for (const auto& v : scc) names += (names.empty() ? "" : ", ") + v.str();
      throw CyclicGraph("service graph has a cycle through {" + names + "}; condense first");
    }
  }
  detail::WcetEvaluator eval(arch);
  WcetReport out;
  for (const auto& [id, svc] : arch.services) {
    for (const auto& y : svc.outputs) out[y] = eval.of(y);
  }
  return out;
}

/// WCET of a single output. Only the dependency closure of `y` has to be
/// acyclic, so this also works on architectures with cycles elsewhere.
inline double output_wcet(const Architecture& arch, const ChannelId& y) {
  if (!arch.channels().contains(y)) throw UnknownChannel(y.str());
  return detail::WcetEvaluator(arch).of(y);
}

namespace detail {

inline std::map<ServiceId, double> sum_members(const Membership& membership,
                                               const std::map<ServiceId, double>& base,
                                               const std::string& measure) {
  std::map<ServiceId, double> out;
  for (const auto& [composite, members] : membership) {
    if (members.empty()) throw InvalidArgument("service '" + composite.str() + "' has no members");
    double total = 0.0;
    for (const auto& m : members) {
      auto it = base.find(m);
      if (it == base.end()) throw MissingMeasure(measure, m.str());
      total += it->second;
    }
    out.emplace(composite, total);
  }
  return out;
}

}  // namespace detail

/// Composite WCET as the sum of its members' WCETs.
inline WcetMap aggregate_scs_wcet(const Membership& membership, const WcetMap& base) {
  return detail::sum_members(membership, base, "wcet");
}

/// WCET of every service that has one.
inline WcetMap service_wcets(const Architecture& arch) {
  WcetMap out;
  for (const auto& [id, svc] : arch.services) {
    if (svc.wcet) out.emplace(id, *svc.wcet);
  }
  return out;
}

}  // namespace svcdep
