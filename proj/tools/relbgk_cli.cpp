// Command-line driver: relbgk <solve|scan|verify|moments> --config FILE [--out DIR]

#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "relbgk/config.hpp"
#include "relbgk/run.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Stationary relativistic BGK mixture solver for a slab"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  long long seed = 0;
  bool quiet = false;
  app.add_option("--config", config_path, "JSON run configuration")->required();
  app.add_option("--out", out_dir, "output directory (overrides output.directory)");
  app.add_option("--seed", seed, "reserved; the solver is deterministic");
  app.add_flag("--quiet", quiet, "suppress informational output");
  app.fallthrough();

  const std::pair<const char*, relbgk::RunMode> verbs[] = {
      {"solve", relbgk::RunMode::solve},
      {"scan", relbgk::RunMode::scan},
      {"verify", relbgk::RunMode::verify},
      {"moments", relbgk::RunMode::moments},
  };
  const char* help[] = {"solve for the fixed point and write profiles",
                        "run the omega-scale threshold scan",
                        "solve and certify every inequality and conservation law",
                        "print the constants derived from the boundary data"};
  std::optional<relbgk::RunMode> mode;
  for (std::size_t i = 0; i < 4; ++i) {
    auto* sub = app.add_subcommand(verbs[i].first, help[i]);
    const auto m = verbs[i].second;
    sub->callback([&mode, m] { mode = m; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : relbgk::kExitSchema;
  }

  const relbgk::Logger log(&std::cerr, quiet);
  relbgk::RunConfig config;
  try {
    config = relbgk::load_config(config_path);
  } catch (const relbgk::ConfigError& e) {
    log.error("schema", e.what(), e.path());
    return relbgk::kExitSchema;
  } catch (const relbgk::IoError& e) {
    log.error("io", e.what());
    return relbgk::kExitIo;
  }

  relbgk::RunOptions opts;
  opts.mode = mode;
  if (!out_dir.empty()) opts.output_dir = out_dir;
  opts.quiet = quiet;
  opts.diagnostics = &std::cerr;
  opts.console = &std::cout;
  return relbgk::run(config, opts);
}
