#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "lzs/app/config.hpp"
#include "lzs/app/run.hpp"
#include "lzs/version.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Landau-Zener-Stueckelberg interference simulator"};
  app.set_version_flag("--version", std::string(lzs::kVersion));
  app.require_subcommand(1);

  std::string config_path;
  std::optional<std::string> out_dir;
  std::optional<std::size_t> workers;
  bool image = false;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "configuration file")->required()->check(CLI::ExistingFile);
    sub->add_option("--out", out_dir, "output directory (overrides [output] dir)");
    sub->add_option("--workers", workers, "worker threads (overrides [output] workers)")->check(CLI::PositiveNumber);
    sub->add_flag("--image", image, "also write 8-bit graymaps");
  };
  const std::pair<const char*, lzs::app::Command> commands[] = {
      {"sweep", lzs::app::Command::Sweep},
      {"ft", lzs::app::Command::Ft},
      {"darkstate", lzs::app::Command::Darkstate},
      {"lzcheck", lzs::app::Command::Lzcheck},
  };
  const char* help[] = {"interference patterns over (T, A)", "Fourier transform of an existing pattern file",
                        "dark-state spectrum report", "single-passage validation table"};
  std::optional<lzs::app::Command> chosen;
  for (std::size_t i = 0; i < std::size(commands); ++i) {
    auto* sub = app.add_subcommand(commands[i].first, help[i]);
    add_common(sub);
    sub->callback([&chosen, command = commands[i].second] { chosen = command; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    lzs::app::RunConfig config = lzs::app::load_config(config_path);
    if (out_dir) config.output.dir = *out_dir;
    if (workers) config.output.workers = *workers;
    if (image) config.output.image = true;
    const auto report = lzs::app::run(*chosen, config);
    for (const auto& message : report.messages) std::cout << message << '\n';
    for (const auto& file : report.files) std::cout << "wrote " << file << '\n';
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "lzs: " << e.what() << '\n';
    return lzs::app::exit_code_for(e);
  }
}
