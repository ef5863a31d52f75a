#include "uavnoma/config_file.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <istream>
#include <map>
#include <stdexcept>

namespace uavnoma {

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

double to_double(const std::string& key, const std::string& value) {
  double out = 0.0;
  const auto res = std::from_chars(value.data(), value.data() + value.size(), out);
  if (res.ec != std::errc{} || res.ptr != value.data() + value.size() || !std::isfinite(out))
    throw std::invalid_argument("config key '" + key + "': not a number: " + value);
  return out;
}

std::uint64_t to_uint(const std::string& key, const std::string& value) {
  std::uint64_t out = 0;
  const auto res = std::from_chars(value.data(), value.data() + value.size(), out);
  if (res.ec != std::errc{} || res.ptr != value.data() + value.size())
    throw std::invalid_argument("config key '" + key + "': not a non-negative integer: " + value);
  return out;
}

bool to_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1" || value == "yes") return true;
  if (value == "false" || value == "0" || value == "no") return false;
  throw std::invalid_argument("config key '" + key + "': not a boolean: " + value);
}

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= value.size()) {
    const auto comma = value.find(',', start);
    const auto end = comma == std::string::npos ? value.size() : comma;
    const std::string item = trim(std::string_view(value).substr(start, end - start));
    if (!item.empty()) out.push_back(item);
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

using Setter = std::function<void(ExperimentSpec&, const std::string&, const std::string&)>;

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table = {
      {"num_users", [](auto& s, auto& k, auto& v) { s.num_users = to_uint(k, v); }},
      {"realizations", [](auto& s, auto& k, auto& v) { s.num_realizations = to_uint(k, v); }},
      {"master_seed", [](auto& s, auto& k, auto& v) { s.master_seed = to_uint(k, v); }},
      {"threads", [](auto& s, auto& k, auto& v) { s.threads = to_uint(k, v); }},
      {"record_wall_time", [](auto& s, auto& k, auto& v) { s.record_wall_time = to_bool(k, v); }},
      {"schemes",
       [](auto& s, auto&, auto& v) {
         s.schemes.clear();
         for (const auto& name : split_list(v)) s.schemes.push_back(parse_scheme(name));
       }},
      {"sweep", [](auto& s, auto&, auto& v) { s.sweep = parse_sweep_variable(v); }},
      {"sweep_values",
       [](auto& s, auto& k, auto& v) {
         s.sweep_values.clear();
         for (const auto& item : split_list(v)) s.sweep_values.push_back(to_double(k, item));
       }},
      {"area_policy", [](auto& s, auto&, auto& v) { s.area_policy = parse_area_policy(v); }},
      {"area_side_m", [](auto& s, auto& k, auto& v) { s.area_side_m = to_double(k, v); }},
      {"uav_altitude_m", [](auto& s, auto& k, auto& v) { s.uav_altitude_m = to_double(k, v); }},
      {"max_power_mw",
       [](auto& s, auto& k, auto& v) { s.system.max_total_power_w = to_double(k, v) * 1e-3; }},
      {"noise_dbm",
       [](auto& s, auto& k, auto& v) { s.system.noise_power_w = dbm_to_watts(to_double(k, v)); }},
      {"dc_offset", [](auto& s, auto& k, auto& v) { s.system.dc_offset = to_double(k, v); }},
      {"peak_intensity", [](auto& s, auto& k, auto& v) { s.system.peak_intensity = to_double(k, v); }},
      {"pam_coefficient",
       [](auto& s, auto& k, auto& v) { s.system.pam_coefficient = to_double(k, v); }},
      {"min_sic_gap", [](auto& s, auto& k, auto& v) { s.system.min_sic_gap = to_double(k, v); }},
      {"qos_min_rate", [](auto& s, auto& k, auto& v) { s.system.qos_min_rate = to_double(k, v); }},
      {"bandwidth_mhz",
       [](auto& s, auto& k, auto& v) { s.system.bandwidth_hz = to_double(k, v) * 1e6; }},
      {"cell_radius_m", [](auto& s, auto& k, auto& v) { s.system.cell_radius_m = to_double(k, v); }},
      {"semiangle_deg",
       [](auto& s, auto& k, auto& v) { s.vlc.semiangle_half_power_deg = to_double(k, v); }},
      {"fov_deg", [](auto& s, auto& k, auto& v) { s.vlc.fov_deg = to_double(k, v); }},
      {"detection_area_cm2",
       [](auto& s, auto& k, auto& v) { s.vlc.detection_area_m2 = to_double(k, v) * 1e-4; }},
      {"optical_filter_gain",
       [](auto& s, auto& k, auto& v) { s.vlc.optical_filter_gain = to_double(k, v); }},
      {"refractive_index", [](auto& s, auto& k, auto& v) { s.vlc.refractive_index = to_double(k, v); }},
      {"population", [](auto& s, auto& k, auto& v) { s.hho.population = to_uint(k, v); }},
      {"iterations", [](auto& s, auto& k, auto& v) { s.hho.max_iterations = to_uint(k, v); }},
      {"levy_beta", [](auto& s, auto& k, auto& v) { s.hho.levy_beta = to_double(k, v); }},
      {"penalty_mu", [](auto& s, auto& k, auto& v) { s.penalty.mu = to_double(k, v); }},
  };
  return table;
}

}  // namespace

KeyValues parse_key_values(std::istream& in) {
  KeyValues out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    const std::string body = trim(std::string_view(line).substr(0, hash));
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config line " + std::to_string(line_no) + ": expected key = value");
    std::string key = trim(std::string_view(body).substr(0, eq));
    std::string value = trim(std::string_view(body).substr(eq + 1));
    if (key.empty() || value.empty())
      throw std::invalid_argument("config line " + std::to_string(line_no) + ": empty key or value");
    out.emplace_back(std::move(key), std::move(value));
  }
  return out;
}

void apply_config(ExperimentSpec& spec, const KeyValues& pairs) {
  const auto& table = setters();
  for (const auto& [key, value] : pairs) {
    const auto it = table.find(key);
    if (it == table.end()) throw std::invalid_argument("unknown config key: " + key);
    it->second(spec, key, value);
  }
}

ExperimentSpec load_experiment_config(const std::filesystem::path& path, ExperimentSpec base) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read config file " + path.string());
  apply_config(base, parse_key_values(in));
  return base;
}

KeyValues describe_config(const ExperimentSpec& spec) {
  auto list = [](const auto& items, auto&& fmt) {
    std::string out;
    for (const auto& item : items) {
      if (!out.empty()) out += ',';
      out += fmt(item);
    }
    return out;
  };
  const double noise_dbm = 10.0 * std::log10(spec.system.noise_power_w) + 30.0;
  return {
      {"num_users", std::to_string(spec.num_users)},
      {"realizations", std::to_string(spec.num_realizations)},
      {"master_seed", std::to_string(spec.master_seed)},
      {"threads", std::to_string(spec.threads)},
      {"record_wall_time", spec.record_wall_time ? "true" : "false"},
      {"schemes", list(spec.schemes, [](SchemeId s) { return std::string(to_string(s)); })},
      {"sweep", std::string(to_string(spec.sweep))},
      {"sweep_values", list(spec.sweep_values, [](double v) { return format_double(v); })},
      {"area_policy", std::string(to_string(spec.area_policy))},
      {"area_side_m", format_double(spec.area_side_m)},
      {"uav_altitude_m", format_double(spec.uav_altitude_m)},
      {"max_power_mw", format_double(spec.system.max_total_power_w * 1e3)},
      {"noise_dbm", format_double(noise_dbm)},
      {"dc_offset", format_double(spec.system.dc_offset)},
      {"peak_intensity", format_double(spec.system.peak_intensity)},
      {"pam_coefficient", format_double(spec.system.pam_coefficient)},
      {"min_sic_gap", format_double(spec.system.min_sic_gap)},
      {"qos_min_rate", format_double(spec.system.qos_min_rate)},
      {"bandwidth_mhz", format_double(spec.system.bandwidth_hz * 1e-6)},
      {"cell_radius_m", format_double(spec.system.cell_radius_m)},
      {"semiangle_deg", format_double(spec.vlc.semiangle_half_power_deg)},
      {"fov_deg", format_double(spec.vlc.fov_deg)},
      {"detection_area_cm2", format_double(spec.vlc.detection_area_m2 * 1e4)},
      {"optical_filter_gain", format_double(spec.vlc.optical_filter_gain)},
      {"refractive_index", format_double(spec.vlc.refractive_index)},
      {"population", std::to_string(spec.hho.population)},
      {"iterations", std::to_string(spec.hho.max_iterations)},
      {"levy_beta", format_double(spec.hho.levy_beta)},
      {"penalty_mu", format_double(spec.penalty.mu)},
  };
}

}  // namespace uavnoma
