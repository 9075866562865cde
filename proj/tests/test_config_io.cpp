#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "ctaoi/config.hpp"
#include "ctaoi/error.hpp"
#include "ctaoi/io.hpp"
#include "ctaoi/simulator.hpp"
#include "doctest.h"

using namespace ctaoi;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "ctaoi_test_config_io";
  fs::create_directories(dir);
  return dir / name;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string first_line(const fs::path& p) {
  std::ifstream in(p);
  std::string line;
  std::getline(in, line);
  return line;
}

ErrorKind kind_of(const std::string& text) {
  try {
    parse_run_config(text);
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::Io;
}

}  // namespace

TEST_CASE("format_number round-trips random doubles") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-30.0, 30.0);
  for (int i = 0; i < 2000; ++i) {
    const double v = std::ldexp(u(rng), static_cast<int>(u(rng)));
    CHECK(std::stod(format_number(v)) == v);
  }
  CHECK(format_number(1.25e6) == "1250000");
}

TEST_CASE("parse_int_list") {
  CHECK(parse_int_list("7,19, 31 ,79") == std::vector<int>{7, 19, 31, 79});
  CHECK(parse_int_list("").empty());
  CHECK_THROWS_AS(parse_int_list("7,x"), Error);
}

TEST_CASE("default config formats and parses back to itself") {
  const RunConfig def;
  const std::string text = format_run_config(def);
  const RunConfig back = parse_run_config(text);
  CHECK(back.acquisition == def.acquisition);
  CHECK(format_run_config(back) == text);
}

TEST_CASE("random configs survive a text round trip") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.1, 3.0);
  const int orders[] = {3, 7, 11, 19, 79};
  for (int i = 0; i < 50; ++i) {
    RunConfig c;
    c.acquisition.f_us = 1.25e6 * u(rng);
    c.acquisition.f_s = 4.0 * c.acquisition.f_us;
    c.acquisition.code_order = orders[i % 5];
    c.acquisition.mode = i % 2 ? Mode::Coded : Mode::SinglePulse;
    c.acquisition.noise_sigma = u(rng) / 7.0;
    c.acquisition.seed = rng();
    c.phantom.mu_a = u(rng) / 10.0;
    c.phantom.model = i % 3 ? FluenceModel::SemiInfinite : FluenceModel::InfiniteMedium;
    c.experiment.trials = 2 + i;
    c.experiment.orders = {3, orders[i % 5]};
    c.experiment.reference = i % 2 ? SinglePulseReference::MaxRate : SinglePulseReference::Matched;
    c.scan.step = u(rng) * 1e-3;
    if (i % 4 == 0) c.axis_xy = Eigen::Vector2d(u(rng) * 1e-3, -u(rng) * 1e-3);
    c.output_dir = "out" + std::to_string(i);
    const RunConfig back = parse_run_config(format_run_config(c));
    CHECK(back.acquisition == c.acquisition);
    CHECK(back.phantom.mu_a == c.phantom.mu_a);
    CHECK(back.phantom.model == c.phantom.model);
    CHECK(back.experiment.orders == c.experiment.orders);
    CHECK(back.experiment.reference == c.experiment.reference);
    CHECK(back.scan.step == c.scan.step);
    CHECK(back.resolved_axis() == c.resolved_axis());
    CHECK(back.output_dir == c.output_dir);
  }
}

TEST_CASE("parser accepts comments and partial files") {
  const RunConfig c = parse_run_config(
      "# comment\n[acquisition]\ncode_order = 19  # inline\nnoise_sigma=0.5\n\n[experiment]\norders = 3, 7\n");
  CHECK(c.acquisition.code_order == 19);
  CHECK(c.acquisition.noise_sigma == 0.5);
  CHECK(c.acquisition.f_us == 1.25e6);
  CHECK(c.experiment.orders == std::vector<int>{3, 7});
}

TEST_CASE("parser rejects malformed input") {
  CHECK(kind_of("[nonsense]\n") == ErrorKind::InvalidConfig);
  CHECK(kind_of("[acquisition]\nbogus = 1\n") == ErrorKind::InvalidConfig);
  CHECK(kind_of("[acquisition]\ncode_order = 7\ncode_order = 19\n") == ErrorKind::InvalidConfig);
  CHECK(kind_of("[acquisition]\ncode_order = seven\n") == ErrorKind::InvalidConfig);
  CHECK(kind_of("[acquisition]\nmode = chirp\n") == ErrorKind::InvalidConfig);
  CHECK(kind_of("code_order = 7\n") == ErrorKind::InvalidConfig);
  CHECK(kind_of("[acquisition]\njust a line\n") == ErrorKind::InvalidConfig);
  CHECK(kind_of("[experiment]\nrayleigh_correction = maybe\n") == ErrorKind::InvalidConfig);
}

TEST_CASE("validate catches invalid acquisition values") {
  RunConfig c;
  c.acquisition.noise_sigma = -1.0;
  CHECK_THROWS_AS(c.validate(), Error);
  c = RunConfig{};
  c.acquisition.f_s = 4.3e6;
  CHECK_THROWS_AS(c.validate(), Error);
  CHECK_NOTHROW(RunConfig{}.validate());
}

TEST_CASE("load_run_config reports missing files as I/O errors") {
  try {
    load_run_config(scratch("absent.cfg").string() + ".nope");
    FAIL("expected Io");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Io);
  }
}

TEST_CASE("binary stream round trip is bit exact") {
  AcquisitionConfig cfg;
  cfg.duration_s = 0.2e-3;
  cfg.noise_sigma = 0.3;
  cfg.seed = 99;
  const SampledStream s = simulate_stream(cfg, Phantom{});
  const auto path = scratch("stream.bin");
  write_stream_binary(path.string(), s);
  const SampledStream r = read_stream_binary(path.string());
  REQUIRE(r.samples.size() == s.samples.size());
  CHECK(std::memcmp(r.samples.data(), s.samples.data(), sizeof(double) * s.samples.size()) == 0);
  CHECK(r.f_s == s.f_s);
  CHECK(r.t0 == s.t0);
  CHECK(r.config == s.config);
  CHECK(slurp(path).rfind("CTAOI-STREAM 1 ", 0) == 0);
}

TEST_CASE("truncated or foreign stream files are rejected") {
  AcquisitionConfig cfg;
  cfg.duration_s = 0.2e-3;
  const auto path = scratch("trunc.bin");
  write_stream_binary(path.string(), simulate_stream(cfg, Phantom{}));
  fs::resize_file(path, fs::file_size(path) - 3);
  CHECK_THROWS_AS(read_stream_binary(path.string()), Error);
  write_text(scratch("foreign.bin").string(), "hello\n");
  CHECK_THROWS_AS(read_stream_binary(scratch("foreign.bin").string()), Error);
  CHECK_THROWS_AS(read_stream_binary(scratch("none.bin").string()), Error);
}

TEST_CASE("sequence files round trip") {
  const SSequence s = generate_s_sequence(79);
  const auto path = scratch("seq.txt");
  write_sequence(path.string(), s);
  CHECK(read_sequence(path.string()) == s);
}

TEST_CASE("csv writers emit the documented headers") {
  AcquisitionConfig cfg;
  cfg.duration_s = 0.2e-3;
  const SampledStream s = simulate_stream(cfg, Phantom{});
  write_stream_csv(scratch("s.csv").string(), s);
  CHECK(first_line(scratch("s.csv")) == "sample_index,time_s,amplitude_au");

  DepthProfile p{Eigen::VectorXd::LinSpaced(4, 0, 1), 1e-4, 5e-5};
  write_profile_csv(scratch("p.csv").string(), p, "fluence_norm");
  CHECK(first_line(scratch("p.csv")) == "depth_m,fluence_norm");

  AdvantageCurve curve;
  curve.orders = {7};
  curve.measured_gain = {1.5};
  curve.theoretical_gain = {std::sqrt(7.0) / 2};
  SnrReport r{};
  r.order = 7;
  curve.coded = {r};
  curve.single = {r};
  write_snr_csv(scratch("snr.csv").string(), curve);
  CHECK(first_line(scratch("snr.csv")) ==
        "order,mode,pulse_interval_periods,n_trials,signal_mean_au,noise_std_au,snr,saturated");
  write_advantage_csv(scratch("adv.csv").string(), curve);
  CHECK(first_line(scratch("adv.csv")) == "order,measured_gain,theoretical_gain,snr_coded,snr_single");

  const std::string svg = advantage_svg(curve);
  CHECK(svg.find("<svg") != std::string::npos);
  CHECK(svg.find("</svg>") != std::string::npos);

  Eigen::MatrixXd m(2, 3);
  m << 1, 2, 3, 4, 5, 6;
  write_map_csv(scratch("m.csv").string(), m, {0.0, 1e-3}, "y_m", {-1e-3, 0.0, 1e-3});
  CHECK(first_line(scratch("m.csv")).rfind("y_m,x_m=", 0) == 0);
}

TEST_CASE("pgm encodes size and scaling") {
  Eigen::MatrixXd m(2, 2);
  m << 1.0, 0.5, 0.0, 0.01;
  const std::string lin = to_pgm(m);
  REQUIRE(lin.rfind("P5\n2 2\n255\n", 0) == 0);
  const std::string body = lin.substr(lin.size() - 4);
  CHECK(static_cast<unsigned char>(body[0]) == 255);
  CHECK(static_cast<unsigned char>(body[2]) == 0);
  const std::string db = to_pgm(m, true, 40.0);
  const std::string dbody = db.substr(db.size() - 4);
  CHECK(static_cast<unsigned char>(dbody[0]) == 255);
  CHECK(static_cast<unsigned char>(dbody[2]) == 0);
  CHECK(static_cast<unsigned char>(dbody[3]) == 0);  // -40 dB sits on the floor
}
