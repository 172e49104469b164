#include "afc/app/config.hpp"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace afc::app {
namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::optional<double> to_double(const std::string& raw) {
  const std::string s = trim(raw);
  if (s.empty()) return std::nullopt;
  const char* first = s.data();
  if (*first == '+') ++first;
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(first, s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v)) return std::nullopt;
  return v;
}

std::string quote_if_needed(const std::string& s) {
  const bool plain = !s.empty() && std::all_of(s.begin(), s.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.' || c == '/';
  });
  if (plain) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string render_number(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return ec == std::errc() ? std::string(buf, ptr) : std::string("nan");
}

std::vector<double> parse_number_list(const std::string& text, const std::string& what) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto v = to_double(item);
    if (!v) throw ConfigError(what, "not a number: '" + trim(item) + "'");
    out.push_back(*v);
  }
  if (out.empty()) throw ConfigError(what, "empty list");
  return out;
}

Config Config::parse(const std::string& text) {
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::Exception& e) {
    throw ConfigError("", std::string("malformed config: ") + e.what());
  }
  Config cfg;
  if (root.IsNull()) return cfg;
  if (!root.IsMap()) throw ConfigError("", "config must be a flat key: value mapping");
  for (const auto& kv : root) {
    if (!kv.first.IsScalar()) throw ConfigError("", "keys must be scalars");
    const auto key = kv.first.as<std::string>();
    if (cfg.entries_.count(key)) throw ConfigError(key, "duplicate key");
    Entry entry;
    if (kv.second.IsScalar()) {
      entry.items.push_back(kv.second.as<std::string>());
    } else if (kv.second.IsSequence()) {
      entry.is_list = true;
      for (const auto& item : kv.second) {
        if (!item.IsScalar()) throw ConfigError(key, "list items must be scalars");
        entry.items.push_back(item.as<std::string>());
      }
    } else {
      throw ConfigError(key, "value must be a scalar or a flat list");
    }
    cfg.entries_[key] = std::move(entry);
  }
  return cfg;
}

Config Config::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("", "cannot read config file " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

void Config::set(const std::string& key, const std::string& value) {
  Entry entry;
  entry.items.push_back(value);
  entries_[key] = std::move(entry);
}

const Config::Entry* Config::find(const std::string& key) const {
  const auto it = entries_.find(key);
  return it == entries_.end() ? nullptr : &it->second;
}

void Config::record(const std::string& key, const std::string& rendered) const { resolved_[key] = rendered; }

double Config::number(const std::string& key) const {
  const Entry* e = find(key);
  if (!e) throw ConfigError(key, "required key is missing");
  if (e->is_list) throw ConfigError(key, "expected a number, got a list");
  const auto v = to_double(e->items.front());
  if (!v) throw ConfigError(key, "expected a number, got '" + e->items.front() + "'");
  record(key, render_number(*v));
  return *v;
}

double Config::number(const std::string& key, double fallback) const {
  if (!find(key)) {
    record(key, render_number(fallback));
    return fallback;
  }
  return number(key);
}

std::int64_t Config::integer(const std::string& key) const {
  const Entry* e = find(key);
  if (!e) throw ConfigError(key, "required key is missing");
  if (e->is_list) throw ConfigError(key, "expected an integer, got a list");
  const std::string s = trim(e->items.front());
  std::int64_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size())
    throw ConfigError(key, "expected an integer, got '" + s + "'");
  record(key, std::to_string(v));
  return v;
}

std::int64_t Config::integer(const std::string& key, std::int64_t fallback) const {
  if (!find(key)) {
    record(key, std::to_string(fallback));
    return fallback;
  }
  return integer(key);
}

std::string Config::text(const std::string& key) const {
  const Entry* e = find(key);
  if (!e) throw ConfigError(key, "required key is missing");
  if (e->is_list) throw ConfigError(key, "expected a string, got a list");
  record(key, quote_if_needed(e->items.front()));
  return e->items.front();
}

std::string Config::text(const std::string& key, const std::string& fallback) const {
  if (!find(key)) {
    record(key, quote_if_needed(fallback));
    return fallback;
  }
  return text(key);
}

bool Config::flag(const std::string& key, bool fallback) const {
  if (!find(key)) {
    record(key, fallback ? "true" : "false");
    return fallback;
  }
  const std::string s = text(key);
  bool v = false;
  if (s == "true" || s == "1") {
    v = true;
  } else if (s != "false" && s != "0") {
    throw ConfigError(key, "expected true or false, got '" + s + "'");
  }
  record(key, v ? "true" : "false");
  return v;
}

std::vector<double> Config::numbers(const std::string& key) const {
  const Entry* e = find(key);
  if (!e) throw ConfigError(key, "required key is missing");
  std::vector<double> out;
  for (const auto& item : e->items) {
    const auto v = to_double(item);
    if (!v) throw ConfigError(key, "expected numbers, got '" + item + "'");
    out.push_back(*v);
  }
  if (out.empty()) throw ConfigError(key, "empty list");
  std::string rendered = "[";
  for (std::size_t i = 0; i < out.size(); ++i) rendered += (i ? ", " : "") + render_number(out[i]);
  record(key, rendered + "]");
  return out;
}

std::optional<std::vector<double>> Config::numbers_if(const std::string& key) const {
  if (!find(key)) return std::nullopt;
  return numbers(key);
}

std::vector<std::string> Config::unused_keys() const {
  std::vector<std::string> out;
  for (const auto& [key, entry] : entries_) {
    if (!resolved_.count(key)) out.push_back(key);
  }
  return out;
}

std::string Config::resolved_text() const {
  std::string out;
  for (const auto& [key, value] : resolved_) out += key + ": " + value + "\n";
  return out;
}

}  // namespace afc::app
