#pragma once

// Decomposition of services into elementary subservices: one output each,
// unless several outputs share local state, in which case they stay together.

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "svcdep/errors.hpp"
#include "svcdep/model.hpp"

namespace svcdep {

struct ElementaryGroup {
  ServiceId new_id;
  std::set<ChannelId> outputs;
  std::set<ChannelId> inputs;
  std::set<LocalVarId> vars;

  bool operator==(const ElementaryGroup&) const = default;
};

struct ElementaryPlan {
  ServiceId parent;
  std::vector<ElementaryGroup> groups;
};

namespace detail {

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }

  std::size_t find(std::size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }

  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

 private:
  std::vector<std::size_t> parent_;
};

}  // namespace detail

/// Groups the outputs of `c`. Outputs depending on a common local variable
/// (transitively) form one group; every other output gets its own group.
/// Groups are ordered by their smallest output. A lone group keeps the parent
/// id; otherwise each group takes the `child_ids` hint of its outputs, or the
/// parent id followed by the group's ordinal.
inline ElementaryPlan plan_elementary(const Architecture& arch, const ServiceId& c) {
  const Service& svc = arch.service(c);
  std::vector<ChannelId> outs(svc.outputs.begin(), svc.outputs.end());

  detail::DisjointSets sets(outs.size());
  std::map<LocalVarId, std::size_t> first_user;
  for (std::size_t i = 0; i < outs.size(); ++i) {
    for (const auto& dep : svc.dependencies(outs[i])) {
      if (!dep.via) continue;
      auto [it, inserted] = first_user.emplace(*dep.via, i);
      if (!inserted) sets.unite(it->second, i);
    }
  }

  // Roots are the smallest index of each class, and outs is sorted, so
  // iterating roots in index order yields groups ordered by smallest output.
  std::map<std::size_t, ElementaryGroup> by_root;
  for (std::size_t i = 0; i < outs.size(); ++i) {
    ElementaryGroup& g = by_root[sets.find(i)];
    g.outputs.insert(outs[i]);
    for (const auto& dep : svc.dependencies(outs[i])) {
      g.inputs.insert(dep.channel);
      if (dep.via) g.vars.insert(*dep.via);
    }
  }

  ElementaryPlan plan{c, {}};
  for (auto& [root, g] : by_root) plan.groups.push_back(std::move(g));
  if (plan.groups.empty()) {
    // Output-free sink: nothing to split.
    plan.groups.push_back({c, {}, svc.inputs, svc.local_vars});
  }

  if (plan.groups.size() == 1) {
    plan.groups.front().new_id = c;
    return plan;
  }

  std::set<ServiceId> taken;
  std::vector<bool> hinted(plan.groups.size(), false);
  for (std::size_t k = 0; k < plan.groups.size(); ++k) {
    auto& g = plan.groups[k];
    for (const auto& y : g.outputs) {
      auto it = svc.child_ids.find(y);
      if (it == svc.child_ids.end()) continue;
      if (hinted[k] && g.new_id != it->second) {
        throw InvalidArgument("conflicting child names '" + g.new_id.str() + "' and '" +
                              it->second.str() + "' for one subservice of '" + c.str() + "'");
      }
      g.new_id = it->second;
      hinted[k] = true;
    }
    if (hinted[k] && !taken.insert(g.new_id).second) {
      throw InvalidArgument("child name '" + g.new_id.str() + "' used twice in '" + c.str() + "'");
    }
  }
  for (std::size_t k = 0; k < plan.groups.size(); ++k) {
    if (hinted[k]) continue;
    std::size_t ordinal = k + 1;
    ServiceId candidate(c.str() + std::to_string(ordinal));
    while (taken.contains(candidate)) candidate = ServiceId(c.str() + std::to_string(++ordinal));
    plan.groups[k].new_id = candidate;
    taken.insert(candidate);
  }
  return plan;
}

struct Decomposition {
  Architecture arch;
  /// Parent service -> its subservices.
  std::map<ServiceId, std::set<ServiceId>> children;
};

/// Replaces every service by its elementary subservices. Channel names are
/// kept; a lone group keeps the parent's id and measures.
inline Decomposition decompose_all(const Architecture& arch, std::string level = "L1") {
  Decomposition out;
  out.arch.level = std::move(level);
  out.arch.uplsize = arch.uplsize;
  out.arch.thresholds = arch.thresholds;

  for (const auto& [id, parent] : arch.services) {
    ElementaryPlan plan = plan_elementary(arch, id);
    auto& kids = out.children[id];
    for (auto& g : plan.groups) {
      Service child;
      if (plan.groups.size() == 1) {
        child = parent;
      } else {
        child.id = g.new_id;
        child.outputs = g.outputs;
        for (const auto& y : g.outputs) child.ideps[y] = parent.dependencies(y);
      }
      child.inputs = g.inputs;
      child.local_vars = g.vars;
      if (out.arch.contains(child.id)) {
        throw InvalidArgument("subservice name '" + child.id.str() + "' is not unique");
      }
      kids.insert(child.id);
      out.arch.put(std::move(child));
    }
  }
  return out;
}

}  // namespace svcdep
