#include "ctaoi/config.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "ctaoi/error.hpp"

namespace ctaoi {

std::string format_number(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void bad(std::string_view key, std::string_view value, std::string_view expected) {
  throw Error(ErrorKind::InvalidConfig,
              "bad value '" + std::string(value) + "' for " + std::string(key) + " (expected " + std::string(expected) + ")");
}

double to_double(std::string_view key, std::string_view v) {
  double out = 0;
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || ptr != v.data() + v.size()) bad(key, v, "a number");
  return out;
}

template <typename Int>
Int to_int(std::string_view key, std::string_view v) {
  Int out = 0;
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || ptr != v.data() + v.size()) bad(key, v, "an integer");
  return out;
}

bool to_bool(std::string_view key, std::string_view v) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  bad(key, v, "true or false");
}

struct Field {
  std::string section;
  std::string key;
  std::function<void(RunConfig&, std::string_view)> set;
  std::function<std::string(const RunConfig&)> get;
};

#define NUM_FIELD(sec, name, member)                                                        \
  Field {                                                                                   \
    sec, name, [](RunConfig& c, std::string_view v) { c.member = to_double(name, v); },     \
        [](const RunConfig& c) { return format_number(c.member); }                          \
  }

const std::vector<Field>& fields() {
  static const std::vector<Field> table = {
      NUM_FIELD("acquisition", "f_us_hz", acquisition.f_us),
      NUM_FIELD("acquisition", "f_s_hz", acquisition.f_s),
      NUM_FIELD("acquisition", "sound_speed_m_s", acquisition.sound_speed),
      Field{"acquisition", "mode",
            [](RunConfig& c, std::string_view v) {
              if (v == "coded") c.acquisition.mode = Mode::Coded;
              else if (v == "single") c.acquisition.mode = Mode::SinglePulse;
              else bad("mode", v, "coded or single");
            },
            [](const RunConfig& c) { return std::string(c.acquisition.mode == Mode::Coded ? "coded" : "single"); }},
      Field{"acquisition", "code_order",
            [](RunConfig& c, std::string_view v) { c.acquisition.code_order = to_int<int>("code_order", v); },
            [](const RunConfig& c) { return std::to_string(c.acquisition.code_order); }},
      Field{"acquisition", "pulse_interval",
            [](RunConfig& c, std::string_view v) { c.acquisition.pulse_interval = to_int<int>("pulse_interval", v); },
            [](const RunConfig& c) { return std::to_string(c.acquisition.pulse_interval); }},
      NUM_FIELD("acquisition", "duration_s", acquisition.duration_s),
      NUM_FIELD("acquisition", "noise_sigma", acquisition.noise_sigma),
      NUM_FIELD("acquisition", "modulation_efficiency", acquisition.modulation_efficiency),
      Field{"acquisition", "seed",
            [](RunConfig& c, std::string_view v) { c.acquisition.seed = to_int<std::uint64_t>("seed", v); },
            [](const RunConfig& c) { return std::to_string(c.acquisition.seed); }},
      NUM_FIELD("acquisition", "water_path_m", acquisition.water_path_m),
      NUM_FIELD("acquisition", "water_sound_speed_m_s", acquisition.water_sound_speed),

      NUM_FIELD("phantom", "mu_s_prime_per_cm", phantom.mu_s_prime),
      NUM_FIELD("phantom", "mu_a_per_cm", phantom.mu_a),
      NUM_FIELD("phantom", "src_x_m", phantom.src_pos.x()),
      NUM_FIELD("phantom", "src_y_m", phantom.src_pos.y()),
      NUM_FIELD("phantom", "src_z_m", phantom.src_pos.z()),
      NUM_FIELD("phantom", "det_x_m", phantom.det_pos.x()),
      NUM_FIELD("phantom", "det_y_m", phantom.det_pos.y()),
      NUM_FIELD("phantom", "det_z_m", phantom.det_pos.z()),
      NUM_FIELD("phantom", "depth_extent_m", phantom.depth_extent),
      NUM_FIELD("phantom", "lateral_half_width_m", phantom.lateral_half_width),
      Field{"phantom", "fluence_model",
            [](RunConfig& c, std::string_view v) {
              if (v == "semi-infinite") c.phantom.model = FluenceModel::SemiInfinite;
              else if (v == "infinite") c.phantom.model = FluenceModel::InfiniteMedium;
              else bad("fluence_model", v, "semi-infinite or infinite");
            },
            [](const RunConfig& c) {
              return std::string(c.phantom.model == FluenceModel::SemiInfinite ? "semi-infinite" : "infinite");
            }},
      Field{"phantom", "axis_x_m",
            [](RunConfig& c, std::string_view v) {
              Eigen::Vector2d a = c.resolved_axis();
              a.x() = to_double("axis_x_m", v);
              c.axis_xy = a;
            },
            [](const RunConfig& c) { return format_number(c.resolved_axis().x()); }},
      Field{"phantom", "axis_y_m",
            [](RunConfig& c, std::string_view v) {
              Eigen::Vector2d a = c.resolved_axis();
              a.y() = to_double("axis_y_m", v);
              c.axis_xy = a;
            },
            [](const RunConfig& c) { return format_number(c.resolved_axis().y()); }},

      Field{"experiment", "trials",
            [](RunConfig& c, std::string_view v) { c.experiment.trials = to_int<int>("trials", v); },
            [](const RunConfig& c) { return std::to_string(c.experiment.trials); }},
      Field{"experiment", "orders",
            [](RunConfig& c, std::string_view v) { c.experiment.orders = parse_int_list(v); },
            [](const RunConfig& c) {
              std::string out;
              for (std::size_t i = 0; i < c.experiment.orders.size(); ++i)
                out += (i ? "," : "") + std::to_string(c.experiment.orders[i]);
              return out;
            }},
      Field{"experiment", "reference",
            [](RunConfig& c, std::string_view v) {
              if (v == "matched") c.experiment.reference = SinglePulseReference::Matched;
              else if (v == "max-rate") c.experiment.reference = SinglePulseReference::MaxRate;
              else bad("reference", v, "matched or max-rate");
            },
            [](const RunConfig& c) {
              return std::string(c.experiment.reference == SinglePulseReference::Matched ? "matched" : "max-rate");
            }},
      Field{"experiment", "rayleigh_correction",
            [](RunConfig& c, std::string_view v) { c.experiment.rayleigh_correction = to_bool("rayleigh_correction", v); },
            [](const RunConfig& c) { return std::string(c.experiment.rayleigh_correction ? "true" : "false"); }},

      NUM_FIELD("scan", "x_min_m", scan.x_min),
      NUM_FIELD("scan", "x_max_m", scan.x_max),
      NUM_FIELD("scan", "y_min_m", scan.y_min),
      NUM_FIELD("scan", "y_max_m", scan.y_max),
      NUM_FIELD("scan", "step_m", scan.step),

      Field{"output", "dir", [](RunConfig& c, std::string_view v) { c.output_dir = std::string(v); },
            [](const RunConfig& c) { return c.output_dir; }},
  };
  return table;
}

#undef NUM_FIELD

}  // namespace

std::vector<int> parse_int_list(std::string_view text) {
  std::vector<int> out;
  text = trim(text);
  if (text.empty()) return out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    const auto item = trim(text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
    out.push_back(to_int<int>("orders", item));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

void RunConfig::validate() const {
  acquisition.validate();
  phantom.validate();
  if (phantom.sound_speed != acquisition.sound_speed)
    throw Error(ErrorKind::InvalidConfig, "phantom and acquisition sound speeds differ");
  if (experiment.trials < 2) throw Error(ErrorKind::InvalidConfig, "trials must be at least 2");
  if (!(scan.step > 0)) throw Error(ErrorKind::InvalidConfig, "scan step must be positive");
}

RunConfig parse_run_config(std::string_view text) {
  RunConfig cfg;
  std::map<std::pair<std::string, std::string>, const Field*> index;
  std::set<std::string> sections;
  for (const auto& f : fields()) {
    index[{f.section, f.key}] = &f;
    sections.insert(f.section);
  }
  std::set<std::pair<std::string, std::string>> seen;
  std::string section;
  std::size_t line_no = 0;
  std::istringstream in{std::string(text)};
  std::string raw;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = raw;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const std::string where = "line " + std::to_string(line_no) + ": ";
    if (line.front() == '[') {
      if (line.back() != ']') throw Error(ErrorKind::InvalidConfig, where + "unterminated section header");
      section = std::string(trim(line.substr(1, line.size() - 2)));
      if (!sections.count(section)) throw Error(ErrorKind::InvalidConfig, where + "unknown section [" + section + "]");
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw Error(ErrorKind::InvalidConfig, where + "expected key = value");
    const std::string key(trim(line.substr(0, eq)));
    const auto value = trim(line.substr(eq + 1));
    if (section.empty()) throw Error(ErrorKind::InvalidConfig, where + "key outside of a section");
    const auto it = index.find({section, key});
    if (it == index.end()) throw Error(ErrorKind::InvalidConfig, where + "unknown key " + section + "." + key);
    if (!seen.insert({section, key}).second)
      throw Error(ErrorKind::InvalidConfig, where + "duplicate key " + section + "." + key);
    it->second->set(cfg, value);
  }
  cfg.phantom.sound_speed = cfg.acquisition.sound_speed;
  cfg.validate();
  return cfg;
}

RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot open config " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_run_config(buf.str());
}

std::string format_run_config(const RunConfig& cfg) {
  std::string out;
  std::string section;
  for (const auto& f : fields()) {
    if (f.section != section) {
      if (!section.empty()) out += '\n';
      section = f.section;
      out += "[" + section + "]\n";
    }
    out += f.key + " = " + f.get(cfg) + "\n";
  }
  return out;
}

}  // namespace ctaoi
