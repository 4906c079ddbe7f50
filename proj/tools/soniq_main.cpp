// soniq: sonify multichannel recordings and their simulated quantum analyses.

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <map>
#include <string>

#include "soniq/commands.hpp"
#include "soniq/error.hpp"
#include "soniq/number_format.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInternal = 1;
constexpr int kExitUsage = 2;

std::string dashed(std::string key) {
  for (auto& c : key) {
    if (c == '_') c = '-';
  }
  return key;
}

struct Subcommand {
  CLI::App* app{nullptr};
  std::map<std::string, std::string> values;
  std::map<std::string, bool> flags;
  std::string config_file;
  std::string output;  // synth only
  bool print_config{false};
};

void add_options(Subcommand& sub, bool takes_input) {
  auto* app = sub.app;
  app->add_option("--config", sub.config_file, "key=value configuration file");
  app->add_flag("--print-config", sub.print_config,
                "print the effective configuration and exit");
  if (takes_input) {
    app->add_option("input", sub.values["input"], "input CSV");
  }
  for (const auto& key : soniq::config_keys()) {
    if (key.name == "input") continue;
    if (key.is_flag) {
      app->add_flag("--" + dashed(key.name), sub.flags[key.name], key.help);
    } else if (key.name == "out_dir") {
      app->add_option("-o,--out,--out-dir", sub.values[key.name], key.help);
    } else {
      app->add_option("--" + dashed(key.name), sub.values[key.name], key.help);
    }
  }
}

soniq::RunConfig resolve(const Subcommand& sub) {
  soniq::RunConfig cfg;
  if (!sub.config_file.empty()) cfg.apply_file(sub.config_file);
  if (const char* env = std::getenv("SONIQ_OUT"); env && *env) cfg.out_dir = env;
  for (const auto& [key, value] : sub.values) {
    const auto* opt = sub.app->get_option_no_throw(key == "input" ? "input" : "--" + dashed(key));
    if (opt && opt->count() > 0) cfg.set(key, value);
  }
  for (const auto& [key, on] : sub.flags) {
    if (on) cfg.set(key, "true");
  }
  return cfg;
}

void list(const std::vector<std::filesystem::path>& files) {
  for (const auto& f : files) std::cout << f.string() << '\n';
}

int run(const std::string& name, const Subcommand& sub) {
  auto cfg = resolve(sub);
  if (sub.print_config) {
    std::cout << cfg.to_text();
    return kExitOk;
  }
  cfg.validate();
  if (name == "sonify") {
    const auto r = soniq::cmd_sonify(cfg);
    list(r.files);
    std::cerr << "sonified " << r.kept_samples << " notes per voice, "
              << soniq::format_double(r.audio.duration()) << " s\n";
  } else if (name == "qpam") {
    const auto r = soniq::cmd_qpam(cfg);
    list(r.files);
    std::cerr << r.series.size() << " windows, " << r.series.gap_count() << " degenerate";
    if (r.max_deviation) std::cerr << ", max oracle deviation " << *r.max_deviation;
    std::cerr << '\n';
  } else if (name == "ising") {
    const auto r = soniq::cmd_ising(cfg);
    list(r.files);
    for (auto c : r.build.flagged_channels) {
      std::cerr << "warning: coupling channel " << c << " has a zero baseline; scale 1 used\n";
    }
    if (r.exact) {
      std::cerr << "max |trotter - exact| = " << soniq::ising::max_abs_deviation(r.trace, *r.exact)
                << '\n';
    }
  } else if (name == "full") {
    list(soniq::cmd_full(cfg).files);
  } else if (name == "synth") {
    std::cout << soniq::cmd_synth(cfg, sub.output).string() << '\n';
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sonify multichannel recordings and simulated quantum analyses of them"};
  app.require_subcommand(1);

  std::map<std::string, Subcommand> subs;
  const std::pair<const char*, const char*> commands[] = {
      {"sonify", "render one pitch-mapped voice per channel"},
      {"qpam", "rolling moment of one channel via amplitude encoding"},
      {"ising", "trotterized transverse-field Ising evolution driven by the data"},
      {"full", "run every stage, including FM driven by the Ising marginals"},
      {"synth", "write a synthetic seizure recording"},
  };
  for (const auto& [name, help] : commands) {
    auto& sub = subs[name];
    sub.app = app.add_subcommand(name, help);
    const bool is_synth = std::string(name) == "synth";
    add_options(sub, !is_synth);
    if (is_synth) sub.app->add_option("output", sub.output, "output CSV path");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  for (auto& [name, sub] : subs) {
    if (!sub.app->parsed()) continue;
    try {
      return run(name, sub);
    } catch (const soniq::Error& e) {
      std::cerr << "error: " << e.what() << '\n';
      return kExitUsage;
    } catch (const std::exception& e) {
      std::cerr << "internal error: " << e.what() << '\n';
      return kExitInternal;
    }
  }
  return kExitUsage;
}
