#include "ctaoi/io.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <map>
#include <sstream>

#include "ctaoi/config.hpp"
#include "ctaoi/error.hpp"

namespace ctaoi {

namespace {

constexpr const char* kStreamMagic = "CTAOI-STREAM";

std::ofstream open_out(const std::string& path, std::ios::openmode mode = std::ios::out) {
  std::ofstream out(path, mode | std::ios::trunc);
  if (!out) throw Error(ErrorKind::Io, "cannot write " + path);
  return out;
}

void finish(std::ofstream& out, const std::string& path) {
  out.flush();
  if (!out) throw Error(ErrorKind::Io, "write failed for " + path);
}

std::uint64_t to_little(std::uint64_t v) {
  if constexpr (std::endian::native == std::endian::big) {
    std::uint64_t r = 0;
    for (int i = 0; i < 8; ++i) r |= ((v >> (8 * i)) & 0xffu) << (8 * (7 - i));
    return r;
  }
  return v;
}

std::string stream_header(const SampledStream& s) {
  const auto& c = s.config;
  std::ostringstream h;
  h << kStreamMagic << " 1"
    << " f_s=" << format_number(s.f_s) << " t0=" << format_number(s.t0) << " length=" << s.samples.size()
    << " f_us=" << format_number(c.f_us) << " sound_speed=" << format_number(c.sound_speed)
    << " mode=" << (c.mode == Mode::Coded ? "coded" : "single") << " code_order=" << c.code_order
    << " pulse_interval=" << c.pulse_interval << " duration_s=" << format_number(c.duration_s)
    << " noise_sigma=" << format_number(c.noise_sigma)
    << " modulation_efficiency=" << format_number(c.modulation_efficiency)
    << " water_path_m=" << format_number(c.water_path_m)
    << " water_sound_speed=" << format_number(c.water_sound_speed) << " seed=" << c.seed;
  return h.str();
}

double header_number(const std::map<std::string, std::string>& kv, const std::string& key) {
  const auto it = kv.find(key);
  if (it == kv.end()) throw Error(ErrorKind::Io, "stream header lacks " + key);
  try {
    std::size_t used = 0;
    const double v = std::stod(it->second, &used);
    if (used != it->second.size()) throw std::invalid_argument(key);
    return v;
  } catch (const std::exception&) {
    throw Error(ErrorKind::Io, "stream header has a bad " + key);
  }
}

}  // namespace

void write_stream_binary(const std::string& path, const SampledStream& stream) {
  auto out = open_out(path, std::ios::binary);
  const std::string header = stream_header(stream) + "\n";
  out.write(header.data(), static_cast<std::streamsize>(header.size()));
  for (Eigen::Index i = 0; i < stream.samples.size(); ++i) {
    const std::uint64_t bits = to_little(std::bit_cast<std::uint64_t>(stream.samples[i]));
    char raw[8];
    std::memcpy(raw, &bits, 8);
    out.write(raw, 8);
  }
  finish(out, path);
}

SampledStream read_stream_binary(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot open " + path);
  std::string header;
  if (!std::getline(in, header)) throw Error(ErrorKind::Io, path + " is empty");
  std::istringstream tokens(header);
  std::string magic, version;
  tokens >> magic >> version;
  if (magic != kStreamMagic || version != "1") throw Error(ErrorKind::Io, path + " is not a stream file");
  std::map<std::string, std::string> kv;
  for (std::string tok; tokens >> tok;) {
    const auto eq = tok.find('=');
    if (eq == std::string::npos) throw Error(ErrorKind::Io, "bad header token '" + tok + "'");
    kv[tok.substr(0, eq)] = tok.substr(eq + 1);
  }
  SampledStream s;
  s.f_s = header_number(kv, "f_s");
  s.t0 = header_number(kv, "t0");
  auto& c = s.config;
  c.f_s = s.f_s;
  c.f_us = header_number(kv, "f_us");
  c.sound_speed = header_number(kv, "sound_speed");
  c.mode = kv["mode"] == "single" ? Mode::SinglePulse : Mode::Coded;
  c.code_order = static_cast<int>(header_number(kv, "code_order"));
  c.pulse_interval = static_cast<int>(header_number(kv, "pulse_interval"));
  c.duration_s = header_number(kv, "duration_s");
  c.noise_sigma = header_number(kv, "noise_sigma");
  c.modulation_efficiency = header_number(kv, "modulation_efficiency");
  c.water_path_m = header_number(kv, "water_path_m");
  c.water_sound_speed = header_number(kv, "water_sound_speed");
  c.seed = std::stoull(kv.count("seed") ? kv["seed"] : "0");
  const auto length = static_cast<Eigen::Index>(header_number(kv, "length"));
  if (length < 0) throw Error(ErrorKind::Io, "negative stream length");
  s.samples.resize(length);
  for (Eigen::Index i = 0; i < length; ++i) {
    char raw[8];
    if (!in.read(raw, 8)) throw Error(ErrorKind::Io, path + " is truncated");
    std::uint64_t bits = 0;
    std::memcpy(&bits, raw, 8);
    s.samples[i] = std::bit_cast<double>(to_little(bits));
  }
  return s;
}

void write_stream_csv(const std::string& path, const SampledStream& stream) {
  auto out = open_out(path);
  out << "sample_index,time_s,amplitude_au\n";
  for (Eigen::Index i = 0; i < stream.samples.size(); ++i)
    out << i << ',' << format_number(stream.t0 + static_cast<double>(i) / stream.f_s) << ','
        << format_number(stream.samples[i]) << '\n';
  finish(out, path);
}

void write_profile_csv(const std::string& path, const DepthProfile& profile, const std::string& column) {
  auto out = open_out(path);
  out << "depth_m," << column << '\n';
  for (Eigen::Index i = 0; i < profile.size(); ++i)
    out << format_number(profile.depth(i)) << ',' << format_number(profile.values[i]) << '\n';
  finish(out, path);
}

void write_sequence(const std::string& path, const SSequence& seq) { write_text(path, seq.to_text() + "\n"); }

SSequence read_sequence(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot open " + path);
  std::string line;
  std::getline(in, line);
  return SSequence::from_text(line);
}

void write_snr_csv(const std::string& path, const AdvantageCurve& curve) {
  auto out = open_out(path);
  out << "order,mode,pulse_interval_periods,n_trials,signal_mean_au,noise_std_au,snr,saturated\n";
  for (std::size_t i = 0; i < curve.orders.size(); ++i)
    for (const SnrReport* r : {&curve.coded[i], &curve.single[i]})
      out << curve.orders[i] << ',' << (r->mode == Mode::Coded ? "coded" : "single") << ',' << r->order << ','
          << r->n_trials << ',' << format_number(r->signal_mean) << ',' << format_number(r->noise_std) << ','
          << format_number(r->snr) << ',' << (r->saturated ? "true" : "false") << '\n';
  finish(out, path);
}

void write_advantage_csv(const std::string& path, const AdvantageCurve& curve) {
  auto out = open_out(path);
  out << "order,measured_gain,theoretical_gain,snr_coded,snr_single\n";
  for (std::size_t i = 0; i < curve.orders.size(); ++i)
    out << curve.orders[i] << ',' << format_number(curve.measured_gain[i]) << ','
        << format_number(curve.theoretical_gain[i]) << ',' << format_number(curve.coded[i].snr) << ','
        << format_number(curve.single[i].snr) << '\n';
  finish(out, path);
}

std::string advantage_svg(const AdvantageCurve& curve) {
  constexpr double W = 640, H = 420, L = 70, R = 20, T = 30, B = 60;
  const int max_n = curve.orders.empty() ? 1 : *std::max_element(curve.orders.begin(), curve.orders.end());
  double max_g = 1.0;
  for (double g : curve.measured_gain) max_g = std::max(max_g, g);
  for (double g : curve.theoretical_gain) max_g = std::max(max_g, g);
  max_g = std::ceil(max_g * 1.1);
  const double x_hi = max_n * 1.05;
  auto px = [&](double n) { return L + (W - L - R) * n / x_hi; };
  auto py = [&](double g) { return H - B - (H - T - B) * g / max_g; };
  auto fmt = [](double v) {
    char b[32];
    std::snprintf(b, sizeof b, "%.2f", v);
    return std::string(b);
  };

  std::ostringstream s;
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  s << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  s << "<line x1=\"" << L << "\" y1=\"" << H - B << "\" x2=\"" << W - R << "\" y2=\"" << H - B << "\" stroke=\"black\"/>\n";
  s << "<line x1=\"" << L << "\" y1=\"" << T << "\" x2=\"" << L << "\" y2=\"" << H - B << "\" stroke=\"black\"/>\n";
  for (int i = 0; i <= 5; ++i) {
    const double g = max_g * i / 5.0;
    s << "<text x=\"" << L - 8 << "\" y=\"" << fmt(py(g) + 4) << "\" text-anchor=\"end\">" << fmt(g) << "</text>\n";
    const double n = x_hi * i / 5.0;
    s << "<text x=\"" << fmt(px(n)) << "\" y=\"" << H - B + 18 << "\" text-anchor=\"middle\">" << fmt(n) << "</text>\n";
  }
  s << "<text x=\"" << (L + W - R) / 2 << "\" y=\"" << H - 15 << "\" text-anchor=\"middle\">code order N</text>\n";
  s << "<text x=\"18\" y=\"" << (T + H - B) / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 18 "
    << (T + H - B) / 2 << ")\">SNR gain (coded / single pulse)</text>\n";

  auto polyline = [&](const std::vector<double>& gains, const char* colour) {
    s << "<polyline fill=\"none\" stroke=\"" << colour << "\" stroke-width=\"2\" points=\"";
    for (std::size_t i = 0; i < curve.orders.size(); ++i)
      s << (i ? " " : "") << fmt(px(curve.orders[i])) << ',' << fmt(py(gains[i]));
    s << "\"/>\n";
    for (std::size_t i = 0; i < curve.orders.size(); ++i)
      s << "<circle cx=\"" << fmt(px(curve.orders[i])) << "\" cy=\"" << fmt(py(gains[i])) << "\" r=\"3\" fill=\""
        << colour << "\"/>\n";
  };
  polyline(curve.theoretical_gain, "blue");
  polyline(curve.measured_gain, "red");
  s << "<text x=\"" << L + 10 << "\" y=\"" << T + 5 << "\" fill=\"blue\">theory sqrt(N)/2</text>\n";
  s << "<text x=\"" << L + 10 << "\" y=\"" << T + 21 << "\" fill=\"red\">measured</text>\n";
  s << "</svg>\n";
  return s.str();
}

void write_map_csv(const std::string& path, const Eigen::MatrixXd& map, const std::vector<double>& row_coords,
                   const std::string& row_label, const std::vector<double>& col_coords) {
  if (static_cast<std::size_t>(map.rows()) != row_coords.size() ||
      static_cast<std::size_t>(map.cols()) != col_coords.size())
    throw Error(ErrorKind::LengthMismatch, "map coordinates do not match its shape");
  auto out = open_out(path);
  out << row_label;
  for (double c : col_coords) out << ",x_m=" << format_number(c);
  out << '\n';
  for (Eigen::Index r = 0; r < map.rows(); ++r) {
    out << format_number(row_coords[static_cast<std::size_t>(r)]);
    for (Eigen::Index c = 0; c < map.cols(); ++c) out << ',' << format_number(map(r, c));
    out << '\n';
  }
  finish(out, path);
}

std::string to_pgm(const Eigen::MatrixXd& normalized, bool decibel, double db_floor) {
  std::string out = "P5\n" + std::to_string(normalized.cols()) + " " + std::to_string(normalized.rows()) + "\n255\n";
  for (Eigen::Index r = 0; r < normalized.rows(); ++r)
    for (Eigen::Index c = 0; c < normalized.cols(); ++c) {
      double v = std::clamp(normalized(r, c), 0.0, 1.0);
      if (decibel) v = v > 0 ? std::clamp(1.0 + 20.0 * std::log10(v) / db_floor, 0.0, 1.0) : 0.0;
      out.push_back(static_cast<char>(static_cast<unsigned char>(std::lround(v * 255.0))));
    }
  return out;
}

void write_text(const std::string& path, const std::string& content) {
  auto out = open_out(path, std::ios::binary);
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  finish(out, path);
}

}  // namespace ctaoi
