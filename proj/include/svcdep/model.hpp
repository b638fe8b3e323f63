#pragma once

// Architecture data model: services, channels, per-output dependency sets
// and the measures used by the timing and partitioning analyses.

#include <algorithm>
#include <compare>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "svcdep/errors.hpp"

namespace svcdep {

/// String identifier tagged with its namespace so channel, service and
/// variable names cannot be mixed up.
template <typename Tag>
class Identifier {
 public:
  Identifier() = default;
  explicit Identifier(std::string value) : value_(std::move(value)) {}
  explicit Identifier(const char* value) : value_(value) {}

  [[nodiscard]] const std::string& str() const noexcept { return value_; }
  [[nodiscard]] bool empty() const noexcept { return value_.empty(); }

  friend auto operator<=>(const Identifier&, const Identifier&) = default;
  friend bool operator==(const Identifier&, const Identifier&) = default;
  friend std::ostream& operator<<(std::ostream& os, const Identifier& id) {
    return os << id.value_;
  }

 private:
  std::string value_;
};

struct ChannelTag {};
struct ServiceTag {};
struct LocalVarTag {};

using ChannelId = Identifier<ChannelTag>;
using ServiceId = Identifier<ServiceTag>;
using LocalVarId = Identifier<LocalVarTag>;

namespace literals {
inline ChannelId operator""_ch(const char* s, std::size_t n) { return ChannelId(std::string(s, n)); }
inline ServiceId operator""_svc(const char* s, std::size_t n) { return ServiceId(std::string(s, n)); }
inline LocalVarId operator""_var(const char* s, std::size_t n) { return LocalVarId(std::string(s, n)); }
}  // namespace literals

/// Identifiers are non-empty words over [A-Za-z0-9_].
inline bool is_valid_identifier(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_';
  });
}

/// One entry of a dependency set: the output depends on `channel`, either
/// directly or through the local variable `via`.
struct DepRef {
  ChannelId channel;
  std::optional<LocalVarId> via;

  auto operator<=>(const DepRef&) const = default;
  bool operator==(const DepRef&) const = default;
};

using DepSet = std::set<DepRef>;

struct Service {
  ServiceId id;
  std::set<ChannelId> inputs;
  std::set<ChannelId> outputs;
  std::set<LocalVarId> local_vars;
  std::map<ChannelId, DepSet> ideps;
  std::optional<double> wcet;
  std::optional<double> perf;
  /// Naming hints for elementary decomposition: output -> child id.
  std::map<ChannelId, ServiceId> child_ids;

  bool operator==(const Service&) const = default;

  /// Dependency set of `output`; empty when the output has none recorded.
  [[nodiscard]] const DepSet& dependencies(const ChannelId& output) const {
    static const DepSet kEmpty;
    auto it = ideps.find(output);
    return it == ideps.end() ? kEmpty : it->second;
  }
};

struct Thresholds {
  double high_load = 0.0;
  double high_perf = 0.0;

  bool operator==(const Thresholds&) const = default;
};

/// Composite service -> constituent services of a finer level.
using Membership = std::map<ServiceId, std::set<ServiceId>>;

struct Architecture {
  std::string level;
  std::map<ServiceId, Service> services;
  std::optional<std::map<ChannelId, double>> uplsize;
  std::optional<Thresholds> thresholds;
  std::optional<Membership> membership;

  bool operator==(const Architecture&) const = default;

  [[nodiscard]] bool contains(const ServiceId& id) const { return services.contains(id); }

  /// Throws UnknownService unless `id` names a service.
  void require(const ServiceId& id) const {
    if (!contains(id)) throw UnknownService(id.str());
  }

  [[nodiscard]] const Service& service(const ServiceId& id) const {
    auto it = services.find(id);
    if (it == services.end()) throw UnknownService(id.str());
    return it->second;
  }

  /// Inserts or replaces a service keyed by its own id.
  void put(Service svc) {
    ServiceId key = svc.id;
    services.insert_or_assign(std::move(key), std::move(svc));
  }

  /// Every channel mentioned as an input or output of some service.
  [[nodiscard]] std::set<ChannelId> channels() const {
    std::set<ChannelId> out;
    for (const auto& [id, svc] : services) {
      out.insert(svc.inputs.begin(), svc.inputs.end());
      out.insert(svc.outputs.begin(), svc.outputs.end());
    }
    return out;
  }

  [[nodiscard]] std::set<ServiceId> service_ids() const {
    std::set<ServiceId> out;
    for (const auto& [id, svc] : services) out.insert(id);
    return out;
  }
};

/// Producer and consumers of every channel. On an architecture violating the
/// single-producer rule, the lexicographically first producer is kept.
class ChannelIndex {
 public:
  explicit ChannelIndex(const Architecture& arch) {
    for (const auto& [id, svc] : arch.services) {
      for (const auto& y : svc.outputs) producer_.try_emplace(y, id);
      for (const auto& x : svc.inputs) consumers_[x].insert(id);
    }
  }

  [[nodiscard]] const ServiceId* producer(const ChannelId& c) const {
    auto it = producer_.find(c);
    return it == producer_.end() ? nullptr : &it->second;
  }

  [[nodiscard]] const std::set<ServiceId>& consumers(const ChannelId& c) const {
    static const std::set<ServiceId> kNone;
    auto it = consumers_.find(c);
    return it == consumers_.end() ? kNone : it->second;
  }

  [[nodiscard]] bool is_system_input(const ChannelId& c) const {
    return !producer_.contains(c) && consumers_.contains(c);
  }

 private:
  std::map<ChannelId, ServiceId> producer_;
  std::map<ChannelId, std::set<ServiceId>> consumers_;
};

struct Boundary {
  std::set<ChannelId> system_inputs;
  std::set<ChannelId> system_outputs;
  std::set<ChannelId> local_channels;

  bool operator==(const Boundary&) const = default;
};

/// Splits the channels of `arch` into system inputs (consumed, never
/// produced), system outputs (produced, never consumed) and local channels.
inline Boundary boundary(const Architecture& arch) {
  std::set<ChannelId> produced;
  std::set<ChannelId> consumed;
  for (const auto& [id, svc] : arch.services) {
    produced.insert(svc.outputs.begin(), svc.outputs.end());
    consumed.insert(svc.inputs.begin(), svc.inputs.end());
  }
  Boundary b;
  for (const auto& c : consumed) {
    (produced.contains(c) ? b.local_channels : b.system_inputs).insert(c);
  }
  for (const auto& c : produced) {
    if (!consumed.contains(c)) b.system_outputs.insert(c);
  }
  return b;
}

/// Checks every structural invariant of the model. An empty result means all
/// analyses are defined on `arch`.
inline std::vector<Violation> validate(const Architecture& arch) {
  std::vector<Violation> out;
  auto report = [&out](std::string rule, std::string subject, std::string message) {
    out.push_back({std::move(rule), std::move(subject), std::move(message)});
  };
  auto check_id = [&](const std::string& kind, const std::string& name, const std::string& owner) {
    if (!is_valid_identifier(name)) {
      report("identifier", owner, kind + " name '" + name + "' is not a non-empty [A-Za-z0-9_] word");
    }
  };
  auto check_measure = [&](const std::optional<double>& value, const std::string& kind,
                           const std::string& subject) {
    if (value && !(*value >= 0.0)) report("negative_measure", subject, kind + " must be >= 0");
  };

  std::map<ChannelId, std::vector<ServiceId>> producers;
  for (const auto& [key, svc] : arch.services) {
    const std::string& sid = key.str();
    if (key != svc.id) {
      report("service_key", sid, "stored under '" + sid + "' but named '" + svc.id.str() + "'");
    }
    check_id("service", sid, sid);
    for (const auto& x : svc.inputs) check_id("channel", x.str(), sid);
    for (const auto& y : svc.outputs) check_id("channel", y.str(), sid);
    for (const auto& v : svc.local_vars) check_id("variable", v.str(), sid);

    for (const auto& x : svc.inputs) {
      if (svc.outputs.contains(x)) {
        report("io_overlap", sid, "channel '" + x.str() + "' is both input and output");
      }
    }
    for (const auto& [y, deps] : svc.ideps) {
      if (!svc.outputs.contains(y)) {
        report("ideps_unknown_output", sid, "dependencies given for non-output '" + y.str() + "'");
      }
      std::set<ChannelId> seen;
      for (const auto& dep : deps) {
        if (!svc.inputs.contains(dep.channel)) {
          report("ideps_unknown_input", sid,
                 "output '" + y.str() + "' depends on non-input '" + dep.channel.str() + "'");
        }
        if (dep.via && !svc.local_vars.contains(*dep.via)) {
          report("ideps_unknown_var", sid,
                 "output '" + y.str() + "' depends via unknown variable '" + dep.via->str() + "'");
        }
        if (!seen.insert(dep.channel).second) {
          report("ideps_duplicate_channel", sid,
                 "output '" + y.str() + "' lists '" + dep.channel.str() + "' more than once");
        }
      }
    }
    for (const auto& y : svc.outputs) {
      producers[y].push_back(key);
      if (!svc.ideps.contains(y)) {
        report("ideps_missing_output", sid, "no dependency set for output '" + y.str() + "'");
      }
    }
    for (const auto& [y, child] : svc.child_ids) {
      if (!svc.outputs.contains(y)) {
        report("child_ids_unknown_output", sid, "naming hint for non-output '" + y.str() + "'");
      }
      check_id("child service", child.str(), sid);
    }
    check_measure(svc.wcet, "wcet", sid);
    check_measure(svc.perf, "perf", sid);
  }

  for (const auto& [channel, who] : producers) {
    if (who.size() > 1) {
      std::string names;
      for (const auto& s : who) names += (names.empty() ? "" : ", ") + s.str();
      report("single_producer", channel.str(), "produced by several services: " + names);
    }
  }

  if (arch.uplsize) {
    for (const auto& [c, value] : *arch.uplsize) {
      check_id("channel", c.str(), c.str());
      check_measure(value, "uplsize", c.str());
    }
  }
  if (arch.thresholds) {
    check_measure(arch.thresholds->high_load, "high_load threshold", "thresholds");
    check_measure(arch.thresholds->high_perf, "high_perf threshold", "thresholds");
  }
  if (arch.membership) {
    for (const auto& [composite, members] : *arch.membership) {
      if (!arch.contains(composite)) {
        report("membership_unknown_service", composite.str(), "membership entry for unknown service");
      }
      if (members.empty()) report("membership_empty", composite.str(), "empty member set");
      for (const auto& m : members) check_id("member", m.str(), composite.str());
    }
  }
  return out;
}

/// Throws InvalidArchitecture unless `arch` validates.
inline void require_valid(const Architecture& arch) {
  auto violations = validate(arch);
  if (!violations.empty()) throw InvalidArchitecture(std::move(violations));
}

}  // namespace svcdep
