// Command-line front end: geometry, gauge, spectrum and validate pipelines.
//
// Exit codes: 0 success, 1 validation error, 2 I/O error, 3 hard-invariant failure.

#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mobius/config.hpp"
#include "mobius/errors.hpp"
#include "mobius/io.hpp"
#include "mobius/pipelines.hpp"

namespace {

struct Flags {
  std::string config;
  std::vector<std::string> sets;
  std::string format;
  std::string out;
};

void add_flags(CLI::App* sub, Flags& f) {
  sub->add_option("--config", f.config, "key=value configuration file");
  sub->add_option("--set", f.sets, "override one key, key=value (repeatable)");
  sub->add_option("--format", f.format, "output format")->check(CLI::IsMember({"csv", "json"}));
  sub->add_option("--out", f.out, "output path, - for stdout");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Geometry, gauge field and Dirac spectrum of twisted strips"};
  app.require_subcommand(1);
  Flags flags;
  for (const char* name : {"geometry", "gauge", "spectrum", "validate"}) {
    auto* sub = app.add_subcommand(name, std::string("run the ") + name + " pipeline");
    add_flags(sub, flags);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }
  const std::string name = app.get_subcommands().front()->get_name();

  try {
    std::vector<std::string> overrides = flags.sets;
    if (!flags.format.empty()) overrides.push_back("output.format=" + flags.format);
    if (!flags.out.empty()) overrides.push_back("output.path=" + flags.out);
    const mobius::RunConfig cfg = mobius::resolve_config(flags.config, overrides);

    const mobius::Artifact art = mobius::run_pipeline(name, cfg);
    mobius::write_artifact(cfg, art.table, art.summaries);
    if (cfg.path != "-") std::cout << art.summaries.dump(2) << "\n";
    if (art.hard_failure) {
      std::cerr << "error: hard invariant failed\n";
      return 3;
    }
    return 0;
  } catch (const mobius::IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const mobius::InvariantError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
