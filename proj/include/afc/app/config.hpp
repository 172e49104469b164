// Flat experiment configuration: one YAML mapping of dotted keys to scalars or flow lists,
// e.g. `grid.span_hz: 4.0e8`. Every value read is recorded for the manifest echo.

#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace afc::app {

class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string key, const std::string& message)
      : std::runtime_error(key.empty() ? message : key + ": " + message), key_(std::move(key)) {}
  const std::string& key() const noexcept { return key_; }

 private:
  std::string key_;
};

class Config {
 public:
  struct Entry {
    bool is_list = false;
    std::vector<std::string> items;
  };

  static Config parse(const std::string& text);
  static Config load(const std::filesystem::path& path);

  bool has(const std::string& key) const { return entries_.count(key) != 0; }
  // Replaces (or adds) a scalar value.
  void set(const std::string& key, const std::string& value);

  double number(const std::string& key) const;
  double number(const std::string& key, double fallback) const;
  std::int64_t integer(const std::string& key) const;
  std::int64_t integer(const std::string& key, std::int64_t fallback) const;
  std::string text(const std::string& key) const;
  std::string text(const std::string& key, const std::string& fallback) const;
  bool flag(const std::string& key, bool fallback) const;
  std::vector<double> numbers(const std::string& key) const;
  std::optional<std::vector<double>> numbers_if(const std::string& key) const;

  // Keys present in the file that nothing has read.
  std::vector<std::string> unused_keys() const;
  // Every value read, defaults included, as `key: value` lines sorted by key.
  std::string resolved_text() const;
  const std::map<std::string, std::string>& resolved() const noexcept { return resolved_; }

 private:
  const Entry* find(const std::string& key) const;
  void record(const std::string& key, const std::string& rendered) const;

  std::map<std::string, Entry> entries_;
  mutable std::map<std::string, std::string> resolved_;
};

// Parses a comma-separated list of numbers ("1e-9, 2e-9").
std::vector<double> parse_number_list(const std::string& text, const std::string& what);

std::string render_number(double value);

}  // namespace afc::app
