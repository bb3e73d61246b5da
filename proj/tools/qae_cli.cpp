// Command-line front end. Talks to the toolkit exclusively through the
// C interface in qae/qae.h, so it doubles as a smoke test of the shared
// library boundary.

#include <qae/qae.h>

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <string>

namespace {

int report_failure() {
  std::fprintf(stderr, "error: %s\n", qae_last_error());
  return 1;
}

int print_and_free(char* json) {
  std::fputs(json, stdout);
  std::fputc('\n', stdout);
  qae_string_free(json);
  return 0;
}

int cmd_run(const std::string& config, const qae_run_options& opts) {
  char* summary = nullptr;
  if (qae_run(config.c_str(), &opts, &summary) != QAE_OK) return report_failure();
  return print_and_free(summary);
}

int cmd_encode(const std::string& config) {
  char* summary = nullptr;
  if (qae_encode_report(config.c_str(), &summary) != QAE_OK) return report_failure();
  return print_and_free(summary);
}

int cmd_bound(const std::string& config) {
  char* summary = nullptr;
  if (qae_bound_report(config.c_str(), &summary) != QAE_OK) return report_failure();
  return print_and_free(summary);
}

int cmd_gates(const std::string& out_dir) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) {
    std::fprintf(stderr, "error: cannot create %s: %s\n", out_dir.c_str(),
                 ec.message().c_str());
    return 1;
  }
  for (size_t i = 0; i < qae_gate_count(); ++i) {
    const char* name = qae_gate_name(i);
    qae_matrix* m = nullptr;
    if (qae_gate_matrix(name, &m) != QAE_OK) return report_failure();
    const std::string path = (std::filesystem::path(out_dir) / name).string() + ".txt";
    const qae_status rc = qae_matrix_save(m, path.c_str());
    qae_matrix_free(m);
    if (rc != QAE_OK) return report_failure();
    std::printf("%s %s\n", name, path.c_str());
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Photonic quantum autoencoder toolkit"};
  app.set_version_flag("--version", std::string(qae_version()));
  app.require_subcommand(1);

  std::string config;
  qae_run_options opts{};
  opts.jobs = 1;
  long shots = 0;
  unsigned long long seed = 0;
  std::string out_dir;

  CLI::App* run = app.add_subcommand("run", "Run an experiment config");
  run->add_option("config", config, "JSON config file")->required();
  CLI::Option* seed_opt =
      run->add_option("--seed", seed, "Override the config seed");
  CLI::Option* shots_opt =
      run->add_option("--shots", shots, "Sample overlaps with N shots")
          ->check(CLI::PositiveNumber);
  CLI::Option* exact_opt =
      run->add_flag("--exact", "Force exact overlaps")->excludes(shots_opt);
  run->add_option("--jobs", opts.jobs, "Parallel restarts")
      ->check(CLI::PositiveNumber);
  CLI::Option* out_opt = run->add_option("--out", out_dir, "Output directory");

  CLI::App* encode = app.add_subcommand(
      "encode", "Print the analytic perfect-encoder report for a config");
  encode->add_option("config", config, "JSON config file")->required();

  CLI::App* bound = app.add_subcommand(
      "bound", "Print the Helstrom bound report for a discriminate config");
  bound->add_option("config", config, "JSON config file")->required();

  std::string gates_dir = ".";
  CLI::App* gates =
      app.add_subcommand("gates", "Export the two-qubit gate library");
  gates->add_option("--out", gates_dir, "Output directory")
      ->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  if (run->parsed()) {
    opts.has_seed = seed_opt->count() > 0;
    opts.seed = seed;
    opts.has_shots = shots_opt->count() > 0;
    opts.shots = shots;
    opts.exact = exact_opt->count() > 0;
    if (out_opt->count() > 0) opts.out_dir = out_dir.c_str();
    return cmd_run(config, opts);
  }
  if (encode->parsed()) return cmd_encode(config);
  if (bound->parsed()) return cmd_bound(config);
  if (gates->parsed()) return cmd_gates(gates_dir);
  return 0;
}
