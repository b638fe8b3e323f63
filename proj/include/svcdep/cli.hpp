#pragma once

// Command-line front end. Exit codes: 0 success, 1 analysis findings
// (violations, lint findings, slice diagnostics), 2 usage, parse, schema or
// measure errors.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "svcdep/dependencies.hpp"
#include "svcdep/dot.hpp"
#include "svcdep/elementary.hpp"
#include "svcdep/impact.hpp"
#include "svcdep/io.hpp"
#include "svcdep/model.hpp"
#include "svcdep/partition.hpp"
#include "svcdep/report.hpp"
#include "svcdep/scc.hpp"
#include "svcdep/slicing.hpp"

namespace svcdep {

namespace cli_detail {

struct Options {
  std::string arch_path;
  std::string format = "text";
  bool strict = true;
  std::string measures_path;
  std::string output_path;
  std::string service;
  std::vector<std::string> in_channels;
  std::vector<std::string> out_channels;
  std::string property_name = "r";
  std::string channel;
  std::string out_dir;
  bool show_deps = false;
  bool highlight = false;
};

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidArgument("cannot read '" + path + "'");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidArgument("cannot write '" + path.string() + "'");
  out << text;
}

class Runner {
 public:
  Runner(const Options& opts, std::ostream& out, std::ostream& err) : opts_(opts), out_(out), err_(err) {}

  [[nodiscard]] bool json() const { return opts_.format == "json"; }

  Architecture load(bool check = true) {
    std::vector<std::string> warnings;
    ParseOptions popts{opts_.strict ? SchemaMode::Strict : SchemaMode::Lenient, false};
    Architecture arch = parse_architecture(read_file(opts_.arch_path), popts, &warnings);
    for (const auto& w : warnings) err_ << "warning: " << w << "\n";
    if (!opts_.measures_path.empty()) {
      arch = apply_measures(arch, measures());
    }
    if (check) require_valid(arch);
    return arch;
  }

  MeasureOverlay measures() {
    std::vector<std::string> warnings;
    auto m = parse_measures(read_file(opts_.measures_path),
                            opts_.strict ? SchemaMode::Strict : SchemaMode::Lenient, &warnings);
    for (const auto& w : warnings) err_ << "warning: " << w << "\n";
    return m;
  }

  void emit(const Json& j, const std::string& text) { out_ << (json() ? dump(j) : text); }

  // Overlay entries apply to whichever level carries matching ids.
  Architecture with_measures(Architecture arch) {
    if (opts_.measures_path.empty()) return arch;
    arch = apply_measures(std::move(arch), measures());
    require_valid(arch);
    return arch;
  }

  void maybe_write_arch(const Architecture& arch) {
    if (!opts_.output_path.empty()) write_file(opts_.output_path, serialize(arch));
  }

  int validate_cmd() {
    Architecture arch = load(false);
    auto violations = validate(arch);
    Json arr = Json::array();
    std::ostringstream text;
    for (const auto& v : violations) {
      arr.push_back(to_json(v));
      text << v.rule << " [" << v.subject << "]: " << v.message << "\n";
    }
    if (violations.empty()) {
      text << "valid: " << arch.services.size() << " service(s), " << arch.channels().size() << " channel(s)\n";
    }
    emit({{"valid", violations.empty()}, {"violations", arr}}, text.str());
    return violations.empty() ? 0 : 1;
  }

  int boundary_cmd() {
    Boundary b = boundary(load());
    emit(to_json(b), to_text(b));
    return 0;
  }

  int sources_cmd(bool forward) {
    Architecture arch = load();
    ServiceId id(opts_.service);
    auto direct = forward ? direct_acceptors(arch, id) : direct_sources(arch, id);
    auto all = forward ? acceptors(arch, id) : sources(arch, id);
    const char* noun = forward ? "acceptors" : "sources";
    emit({{"service", id.str()},
          {std::string("direct_") + noun, detail::id_array(direct)},
          {noun, detail::id_array(all)}},
         std::string("direct ") + noun + " of " + id.str() + ": " + braced(direct) + "\n" + noun + " of " +
             id.str() + ": " + braced(all) + "\n");
    return 0;
  }

  int lint_cmd() {
    auto findings = lint_unused_inputs(load());
    std::ostringstream text;
    for (const auto& [s, c] : findings) text << "unused input " << c << " of " << s << "\n";
    if (findings.empty()) text << "no unused inputs\n";
    emit(lint_to_json(findings), text.str());
    return findings.empty() ? 0 : 1;
  }

  int elementary_cmd() {
    Decomposition d = decompose_all(load());
    d.arch = with_measures(std::move(d.arch));
    maybe_write_arch(d.arch);
    std::ostringstream text;
    text << to_text(d.arch);
    for (const auto& [parent, kids] : d.children) text << parent << " -> " << braced(kids) << "\n";
    emit({{"architecture", to_json(d.arch)}, {"children", children_to_json(d.children)}}, text.str());
    return 0;
  }

  int condense_cmd() {
    Condensation c = condense_to_l2(load());
    c.arch = with_measures(std::move(c.arch));
    maybe_write_arch(c.arch);
    emit({{"architecture", to_json(c.arch)}, {"steps", steps_to_json(c.steps)}},
         steps_to_text(c.steps) + to_text(c.arch));
    return 0;
  }

  int slice_cmd() {
    Architecture arch = load();
    PropertySpec prop{opts_.property_name, {}, {}};
    for (const auto& c : opts_.in_channels) prop.inputs.insert(ChannelId(c));
    for (const auto& c : opts_.out_channels) prop.outputs.insert(ChannelId(c));
    SliceReport r = slice(arch, prop);
    emit(to_json(r, prop), to_text(r, prop));
    return r.diagnostics.empty() ? 0 : 1;
  }

  int impact_cmd() {
    ImpactReport r = impact(load());
    emit(to_json(r), to_text(r));
    return 0;
  }

  int wcet_cmd() {
    Architecture arch = load();
    WcetReport r;
    if (!opts_.channel.empty()) {
      ChannelId y(opts_.channel);
      r[y] = output_wcet(arch, y);
    } else {
      r = wcet_per_output(arch);
    }
    emit(wcet_to_json(r), wcet_to_text(r));
    return 0;
  }

  int partition_cmd() {
    Partition p = partition_l3(load());
    p.arch = with_measures(std::move(p.arch));
    maybe_write_arch(p.arch);
    emit({{"architecture", to_json(p.arch)}, {"plan", to_json(p.plan)}}, to_text(p.plan) + to_text(p.arch));
    return 0;
  }

  int dot_cmd() {
    std::string dot = export_dot(load(), {opts_.show_deps, opts_.highlight});
    if (opts_.output_path.empty()) {
      out_ << dot;
    } else {
      write_file(opts_.output_path, dot);
    }
    return 0;
  }

  int pipeline_cmd() {
    namespace fs = std::filesystem;
    Architecture l0 = load();
    std::optional<MeasureOverlay> overlay;
    if (!opts_.measures_path.empty()) overlay = measures();

    fs::create_directories(opts_.out_dir);
    const fs::path dir(opts_.out_dir);

    Architecture l1 = decompose_all(l0).arch;
    if (overlay) l1 = apply_measures(l1, *overlay);
    require_valid(l1);
    write_file(dir / "L1.json", serialize(l1));

    Condensation l2 = condense_to_l2(l1);
    write_file(dir / "L2.json", serialize(l2.arch));

    Partition l3 = partition_l3(l2.arch);
    write_file(dir / "L3.json", serialize(l3.arch));
    write_file(dir / "partition.json", dump(to_json(l3.plan)));

    Json summary = {{"L0", l0.services.size()},
                    {"L1", l1.services.size()},
                    {"L2", l2.arch.services.size()},
                    {"L3", l3.arch.services.size()}};
    std::ostringstream text;
    text << "L0: " << l0.services.size() << " services\nL1: " << l1.services.size() << " services\nL2: "
         << l2.arch.services.size() << " services\nL3: " << l3.arch.services.size() << " services\n"
         << to_text(l3.plan) << "written to " << opts_.out_dir << "\n";
    emit({{"services_per_level", summary}, {"out_dir", opts_.out_dir}}, text.str());
    return 0;
  }

 private:
  const Options& opts_;
  std::ostream& out_;
  std::ostream& err_;
};

}  // namespace cli_detail

/// Runs the command line `argv` (argv[0] is the program name).
inline int run_cli(int argc, const char* const* argv, std::ostream& out = std::cout,
                   std::ostream& err = std::cerr) {
  using cli_detail::Options;
  Options opts;
  CLI::App app{"Service dependency analysis and architecture refinement", "svcdep"};
  app.require_subcommand(1);

  auto common = [&opts](CLI::App* sub) {
    sub->add_option("architecture", opts.arch_path, "Architecture document (JSON)")->required();
    sub->add_option("--format", opts.format, "Report format")->check(CLI::IsMember({"text", "json"}));
    sub->add_flag("--strict,!--lenient", opts.strict, "Reject (strict) or warn about (lenient) unknown keys");
    sub->add_option("--measures", opts.measures_path, "Measures overlay document (JSON)");
    return sub;
  };

  auto* validate_sub = common(app.add_subcommand("validate", "Check structural well-formedness"));
  auto* boundary_sub = common(app.add_subcommand("boundary", "System inputs, outputs and local channels"));
  auto* sources_sub = common(app.add_subcommand("sources", "Direct and transitive sources of a service"));
  sources_sub->add_option("service", opts.service, "Service id")->required();
  auto* acceptors_sub = common(app.add_subcommand("acceptors", "Direct and transitive acceptors of a service"));
  acceptors_sub->add_option("service", opts.service, "Service id")->required();
  auto* lint_sub = common(app.add_subcommand("lint", "Report inputs no output depends on"));
  auto* elementary_sub = common(app.add_subcommand("elementary", "Decompose into elementary services (L0 -> L1)"));
  elementary_sub->add_option("-o,--output", opts.output_path, "Write the resulting architecture here");
  auto* condense_sub = common(app.add_subcommand("condense", "Condense strongly connected services (L1 -> L2)"));
  condense_sub->add_option("-o,--output", opts.output_path, "Write the resulting architecture here");
  auto* slice_sub = common(app.add_subcommand("slice", "Services needed to check a property"));
  slice_sub->add_option("--in", opts.in_channels, "Input channels of the property")->delimiter(',');
  slice_sub->add_option("--out", opts.out_channels, "Output channels of the property")->delimiter(',')->required();
  slice_sub->add_option("--name", opts.property_name, "Property name");
  auto* impact_sub = common(app.add_subcommand("impact", "Failure impact numbers"));
  auto* wcet_sub = common(app.add_subcommand("wcet", "Worst-case execution time per output"));
  wcet_sub->add_option("--channel", opts.channel, "Only this output (cycles elsewhere are tolerated)");
  auto* partition_sub = common(app.add_subcommand("partition", "Partition for remote computation (L2 -> L3)"));
  partition_sub->add_option("-o,--output", opts.output_path, "Write the resulting architecture here");
  auto* dot_sub = common(app.add_subcommand("export-dot", "Graphviz DOT rendering"));
  dot_sub->add_option("-o,--output", opts.output_path, "Write DOT here instead of standard output");
  dot_sub->add_flag("--deps", opts.show_deps, "Show dependency sets in node labels");
  dot_sub->add_flag("--highlight", opts.highlight, "Colour heavy channels and services");
  auto* pipeline_sub = common(app.add_subcommand("pipeline", "Run L0 -> L1 -> L2 -> L3, writing every level"));
  pipeline_sub->add_option("--out-dir", opts.out_dir, "Directory for L1.json, L2.json, L3.json, partition.json")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  cli_detail::Runner run(opts, out, err);
  try {
    if (validate_sub->parsed()) return run.validate_cmd();
    if (boundary_sub->parsed()) return run.boundary_cmd();
    if (sources_sub->parsed()) return run.sources_cmd(false);
    if (acceptors_sub->parsed()) return run.sources_cmd(true);
    if (lint_sub->parsed()) return run.lint_cmd();
    if (elementary_sub->parsed()) return run.elementary_cmd();
    if (condense_sub->parsed()) return run.condense_cmd();
    if (slice_sub->parsed()) return run.slice_cmd();
    if (impact_sub->parsed()) return run.impact_cmd();
    if (wcet_sub->parsed()) return run.wcet_cmd();
    if (partition_sub->parsed()) return run.partition_cmd();
    if (dot_sub->parsed()) return run.dot_cmd();
    if (pipeline_sub->parsed()) return run.pipeline_cmd();
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

inline int run_cli(const std::vector<std::string>& args, std::ostream& out = std::cout,
                   std::ostream& err = std::cerr) {
  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  return run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace svcdep
