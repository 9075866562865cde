#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ctaoi/codes.hpp"
#include "ctaoi/config.hpp"
#include "ctaoi/error.hpp"
#include "ctaoi/experiments.hpp"
#include "ctaoi/io.hpp"
#include "ctaoi/simulator.hpp"

namespace fs = std::filesystem;
using namespace ctaoi;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitIo = 3;
constexpr int kExitNumeric = 4;

int exit_code(ErrorKind k) {
  switch (k) {
    case ErrorKind::Io: return kExitIo;
    case ErrorKind::SingularSystem:
    case ErrorKind::NoPeak:
    case ErrorKind::EdgePeak: return kExitNumeric;
    default: return kExitConfig;
  }
}

struct Common {
  std::string config_path;
  std::string output_dir;
  std::optional<std::uint64_t> seed;
};

RunConfig load(const Common& c) {
  RunConfig cfg = c.config_path.empty() ? RunConfig{} : load_run_config(c.config_path);
  if (c.seed) cfg.acquisition.seed = *c.seed;
  if (!c.output_dir.empty()) {
    cfg.output_dir = c.output_dir;
  } else if (cfg.output_dir.empty()) {
    const char* env = std::getenv("CTAOI_OUTPUT_DIR");
    cfg.output_dir = env && *env ? env : ".";
  }
  cfg.validate();
  return cfg;
}

fs::path prepare(const RunConfig& cfg) {
  const fs::path dir(cfg.output_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error(ErrorKind::Io, "cannot create " + dir.string() + ": " + ec.message());
  write_text((dir / "manifest.cfg").string(), format_run_config(cfg));
  return dir;
}

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("-c,--config", c.config_path, "Run configuration file")->check(CLI::ExistingFile);
  cmd->add_option("-o,--output-dir", c.output_dir, "Output directory (default: $CTAOI_OUTPUT_DIR or .)");
  cmd->add_option("--seed", c.seed, "Override the acquisition seed");
}

int gen_code(int order, const std::string& out_path, const std::string& output_dir) {
  const SSequence seq = generate_s_sequence(order);
  std::string path = out_path;
  if (path.empty()) {
    const char* env = std::getenv("CTAOI_OUTPUT_DIR");
    const fs::path dir = !output_dir.empty() ? fs::path(output_dir) : fs::path(env && *env ? env : ".");
    fs::create_directories(dir);
    path = (dir / ("s_sequence_" + std::to_string(order) + ".txt")).string();
  }
  write_sequence(path, seq);
  if (!satisfies_s_identity(read_sequence(path))) throw Error(ErrorKind::SingularSystem, "written sequence fails S identity");
  std::cout << seq.to_text() << "\n";
  return 0;
}

int simulate(const Common& c) {
  const RunConfig cfg = load(c);
  const fs::path dir = prepare(cfg);
  const SampledStream stream = simulate_stream(cfg.acquisition, cfg.phantom, cfg.resolved_axis());
  write_stream_binary((dir / "stream.bin").string(), stream);
  const ExtractOptions opts{cfg.experiment.rayleigh_correction
                                ? quadrature_noise_sigma(cfg.acquisition.noise_sigma, cfg.acquisition.subsets())
                                : 0.0};
  const DepthProfile demuxed = reconstruct(stream);
  write_profile_csv((dir / "demuxed.csv").string(), demuxed, "signal_au");
  const DepthProfile profile = extract_modulated(demuxed, cfg.acquisition.f_us, cfg.acquisition.f_s, opts);
  write_profile_csv((dir / "profile.csv").string(), profile, "amplitude_au");
  std::cout << "samples " << stream.samples.size() << "  peak " << format_number(profile.values.maxCoeff())
            << " au  -> " << dir.string() << "\n";
  return 0;
}

int demux(const std::string& in, const std::string& out, bool raw, double rayleigh_sigma) {
  const SampledStream stream = read_stream_binary(in);
  stream.config.validate();
  const DepthProfile demuxed = reconstruct(stream);
  if (raw) {
    write_profile_csv(out, demuxed, "signal_au");
  } else {
    write_profile_csv(out, extract_modulated(demuxed, stream.config.f_us, stream.f_s, ExtractOptions{rayleigh_sigma}),
                      "amplitude_au");
  }
  return 0;
}

int snr_sweep(const Common& c, const std::optional<std::string>& orders, std::optional<int> trials,
              const std::optional<std::string>& reference) {
  RunConfig cfg = load(c);
  if (orders) cfg.experiment.orders = parse_int_list(*orders);
  if (trials) cfg.experiment.trials = *trials;
  if (reference) cfg.experiment.reference = *reference == "max-rate" ? SinglePulseReference::MaxRate
                                                                     : SinglePulseReference::Matched;
  if (cfg.experiment.orders.empty()) throw Error(ErrorKind::InvalidConfig, "orders list is empty");
  if (cfg.experiment.trials < 2) throw Error(ErrorKind::InvalidConfig, "need at least 2 trials");
  const fs::path dir = prepare(cfg);
  const AdvantageCurve curve =
      multiplexing_advantage(cfg.acquisition, cfg.phantom, cfg.experiment.orders,
                             cfg.experiment.trials, cfg.experiment.reference,
                             SnrOptions{cfg.experiment.rayleigh_correction});
  write_advantage_csv((dir / "advantage.csv").string(), curve);
  write_snr_csv((dir / "snr.csv").string(), curve);
  write_text((dir / "advantage.svg").string(), advantage_svg(curve));
  for (std::size_t i = 0; i < curve.orders.size(); ++i)
    std::cout << "N=" << curve.orders[i] << "  gain " << format_number(curve.measured_gain[i]) << "  theory "
              << format_number(curve.theoretical_gain[i]) << "\n";
  return 0;
}

int scan2d(const Common& c) {
  const RunConfig cfg = load(c);
  const fs::path dir = prepare(cfg);
  const ExtractOptions opts{cfg.experiment.rayleigh_correction
                                ? quadrature_noise_sigma(cfg.acquisition.noise_sigma, cfg.acquisition.subsets())
                                : 0.0};
  const ScanResult scan = scan_2d(cfg.acquisition, cfg.phantom, cfg.scan, opts);
  write_map_csv((dir / "map_xy.csv").string(), scan.xy_peak, scan.ys, "y_m", scan.xs);
  std::vector<double> depths(static_cast<std::size_t>(scan.xz_slice.rows()));
  for (std::size_t i = 0; i < depths.size(); ++i) depths[i] = scan.depth_origin_m + scan.bin_width_m * i;
  write_map_csv((dir / "map_xz.csv").string(), scan.xz_slice, depths, "depth_m", scan.xs);
  write_text((dir / "map_xy.pgm").string(), to_pgm(scan.xy_peak));
  write_text((dir / "map_xy_db.pgm").string(), to_pgm(scan.xy_peak, true));
  write_text((dir / "map_xz.pgm").string(), to_pgm(scan.xz_slice));
  write_text((dir / "map_xz_db.pgm").string(), to_pgm(scan.xz_slice, true));
  std::cout << scan.xs.size() << "x" << scan.ys.size() << " positions  map snr "
            << format_number(map_snr(scan, cfg.phantom.depth_extent, cfg.acquisition.subsets())) << "  -> "
            << dir.string() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Coded-transmission acousto-optic imaging workbench"};
  app.require_subcommand(1);

  int order = 0;
  std::string code_out, code_dir;
  auto* gen = app.add_subcommand("gen-code", "Write an S-sequence of the given order");
  gen->add_option("order", order, "Prime code order N with N = 3 mod 4")->required();
  gen->add_option("-f,--file", code_out, "Output file (default: <dir>/s_sequence_<N>.txt)");
  gen->add_option("-o,--output-dir", code_dir, "Output directory");

  Common sim_opts;
  auto* sim = app.add_subcommand("simulate", "Simulate a stream and reconstruct its depth profile");
  add_common(sim, sim_opts);

  std::string demux_in, demux_out;
  bool demux_raw = false;
  double demux_rayleigh = 0.0;
  auto* dem = app.add_subcommand("demux", "Demultiplex a stream file into a depth profile CSV");
  dem->add_option("input", demux_in, "Stream file")->required()->check(CLI::ExistingFile);
  dem->add_option("output", demux_out, "Profile CSV")->required();
  dem->add_flag("--raw", demux_raw, "Write the demultiplexed signal before carrier extraction");
  dem->add_option("--rayleigh-sigma", demux_rayleigh, "Per-component noise std subtracted as Rayleigh bias (au)");

  Common sweep_opts;
  std::optional<std::string> sweep_orders, sweep_reference;
  std::optional<int> sweep_trials;
  auto* sweep = app.add_subcommand("snr-sweep", "Measure the multiplexing advantage against code order");
  add_common(sweep, sweep_opts);
  sweep->add_option("--orders", sweep_orders, "Comma-separated code orders");
  sweep->add_option("--trials", sweep_trials, "Monte-Carlo trials per order")->check(CLI::Range(2, 1 << 24));
  sweep->add_option("--reference", sweep_reference, "Single-pulse reference rate")
      ->check(CLI::IsMember({"matched", "max-rate"}));

  Common scan_opts;
  auto* scan = app.add_subcommand("scan2d", "Raster-scan the transducer and write fluence maps");
  add_common(scan, scan_opts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitConfig;
  }

  try {
    if (*gen) return gen_code(order, code_out, code_dir);
    if (*sim) return simulate(sim_opts);
    if (*dem) return demux(demux_in, demux_out, demux_raw, demux_rayleigh);
    if (*sweep) return snr_sweep(sweep_opts, sweep_orders, sweep_trials, sweep_reference);
    if (*scan) return scan2d(scan_opts);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code(e.kind());
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  }
  return 0;
}
