#pragma once

#include <filesystem>
#include <fstream>
#include <iterator>
#include <set>
#include <string>

#include "svcdep/svcdep.hpp"

#ifndef SVCDEP_FIXTURE_DIR
#error "SVCDEP_FIXTURE_DIR must point at the fixtures directory"
#endif

namespace svcdep::testing {

inline std::filesystem::path fixture_path(const std::string& name) {
  return std::filesystem::path(SVCDEP_FIXTURE_DIR) / name;
}

inline std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline Architecture load_fixture(const std::string& name) {
  return parse_architecture(read_text(fixture_path(name)));
}

inline MeasureOverlay system_measures() {
  return parse_measures(read_text(fixture_path("system_s_measures.json")));
}

/// System S at L0, L1 (with measures) and L2.
inline Architecture system_l0() { return load_fixture("system_s_l0.json"); }

inline Architecture system_l1() {
  return apply_measures(decompose_all(system_l0()).arch, system_measures());
}

inline Architecture system_l2() { return condense_to_l2(system_l1()).arch; }

template <typename Id>
std::set<Id> ids(std::initializer_list<const char*> names) {
  std::set<Id> out;
  for (const char* n : names) out.insert(Id(n));
  return out;
}

inline std::set<ServiceId> svcs(std::initializer_list<const char*> names) { return ids<ServiceId>(names); }
inline std::set<ChannelId> chans(std::initializer_list<const char*> names) { return ids<ChannelId>(names); }

}  // namespace svcdep::testing
