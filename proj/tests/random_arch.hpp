#pragma once

// Random well-formed architectures for the property suites.

#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "svcdep/model.hpp"

namespace svcdep::testing {

struct RandomOptions {
  int max_services = 8;
  int max_channels = 20;
  /// Channels only flow from lower- to higher-numbered services.
  bool acyclic = false;
  /// Every input appears in some dependency set.
  bool lint_clean = false;
  /// Attach wcet, perf, uplsize and thresholds.
  bool measures = true;
};

inline std::string numbered(const char* prefix, int k) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%s%02d", prefix, k);
  return buf;
}

inline Architecture random_architecture(std::mt19937& rng, const RandomOptions& opts = {}) {
  auto uniform = [&rng](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  auto chance = [&rng](double p) { return std::bernoulli_distribution(p)(rng); };

  const int n = uniform(1, opts.max_services);
  const int m = uniform(1, opts.max_channels);
  Architecture arch;
  arch.level = "L0";
  std::vector<Service> svcs(n);
  for (int i = 0; i < n; ++i) {
    svcs[i].id = ServiceId(numbered("P", i));
    for (int v = 0, nv = uniform(0, 2); v < nv; ++v) svcs[i].local_vars.insert(LocalVarId(numbered("st", v)));
  }

  for (int k = 0; k < m; ++k) {
    ChannelId c(numbered("c", k));
    int producer = chance(0.25) ? -1 : uniform(0, n - 1);
    bool consumed = false;
    for (int i = 0; i < n; ++i) {
      if (i == producer) continue;
      if (opts.acyclic && producer >= 0 && i < producer) continue;
      if (chance(0.3)) {
        svcs[i].inputs.insert(c);
        consumed = true;
      }
    }
    if (producer >= 0) {
      svcs[producer].outputs.insert(c);
    } else if (!consumed) {
      svcs[uniform(0, n - 1)].inputs.insert(c);
    }
  }

  for (auto& svc : svcs) {
    std::vector<LocalVarId> vars(svc.local_vars.begin(), svc.local_vars.end());
    for (const auto& y : svc.outputs) {
      DepSet& deps = svc.ideps[y];
      for (const auto& x : svc.inputs) {
        if (!chance(0.5)) continue;
        DepRef ref{x, std::nullopt};
        if (!vars.empty() && chance(0.3)) ref.via = vars[uniform(0, static_cast<int>(vars.size()) - 1)];
        deps.insert(ref);
      }
    }
    if (opts.lint_clean) {
      std::vector<ChannelId> outs(svc.outputs.begin(), svc.outputs.end());
      for (const auto& x : std::set<ChannelId>(svc.inputs)) {
        bool used = false;
        for (const auto& [y, deps] : svc.ideps) {
          for (const auto& d : deps) used = used || d.channel == x;
        }
        if (used) continue;
        if (outs.empty()) {
          svc.inputs.erase(x);
        } else {
          svc.ideps[outs[uniform(0, static_cast<int>(outs.size()) - 1)]].insert({x, std::nullopt});
        }
      }
    }
    if (opts.measures) {
      svc.wcet = uniform(0, 9);
      svc.perf = uniform(0, 100);
    }
  }

  for (auto& svc : svcs) arch.put(std::move(svc));
  if (opts.measures) {
    arch.uplsize.emplace();
    for (const auto& c : arch.channels()) (*arch.uplsize)[c] = uniform(0, 200);
    arch.thresholds = Thresholds{100.0, 50.0};
  }
  return arch;
}

}  // namespace svcdep::testing
