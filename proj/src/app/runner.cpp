#include "afc/app/runner.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <ostream>
#include <sstream>

#include "afc/app/config.hpp"
#include "afc/app/experiments.hpp"
#include "afc/diagnostics.hpp"

namespace fs = std::filesystem;

namespace afc::app {
namespace {

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream os(path, std::ios::binary);
  os << content;
  if (!os) throw std::runtime_error("cannot write " + path.string());
}

std::string utc_now() {
  const auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

// Writes into a hidden sibling directory and renames it over the target on success.
class StagedDir {
 public:
  explicit StagedDir(fs::path target)
      : target_(std::move(target)), staging_(target_.parent_path() / ("." + target_.filename().string() + ".staging")) {
    fs::remove_all(staging_);
    fs::create_directories(staging_);
  }
  ~StagedDir() {
    std::error_code ec;
    if (!committed_) fs::remove_all(staging_, ec);
  }
  StagedDir(const StagedDir&) = delete;
  StagedDir& operator=(const StagedDir&) = delete;

  const fs::path& path() const noexcept { return staging_; }
  void commit() {
    fs::remove_all(target_);
    fs::rename(staging_, target_);
    committed_ = true;
  }

 private:
  fs::path target_;
  fs::path staging_;
  bool committed_ = false;
};

std::string manifest(const Config& cfg, const std::vector<std::pair<std::string, std::string>>& checksums) {
  std::string m = "# afcsim manifest; replay with `afcsim run <this file>`\n# created_utc: " + utc_now() + "\n";
  m += cfg.resolved_text();
  for (const auto& [name, sum] : checksums) m += "# sha256 " + sum + "  " + name + "\n";
  return m;
}

std::string summary(const std::string& experiment, const Outcome& o, const std::vector<std::string>& warnings) {
  std::string s = "experiment: " + experiment + "\n";
  s += std::string("status: ") + (o.status == 0 ? "ok" : "no echo or no comb") + "\n";
  for (const auto& [k, v] : o.metrics) s += k + " = " + fmt(v) + "\n";
  for (const auto& n : o.notes) s += "note: " + n + "\n";
  for (const auto& w : warnings) s += "warning: " + w + "\n";
  return s;
}

// Runs one prepared experiment into dir: data files, summary.txt, manifest.yaml.
Outcome execute_into(const Config& cfg, const PreparedExperiment& exp, const fs::path& dir, std::ostream& err) {
  std::vector<std::string> warnings;
  Outcome o;
  {
    ScopedWarningSink sink([&](std::string_view msg) {
      warnings.emplace_back(msg);
      err << "warning: " << msg << '\n';
    });
    o = exp.execute();
  }
  std::vector<std::pair<std::string, std::string>> sums;
  auto emit = [&](const std::string& name, const std::string& content) {
    write_file(dir / name, content);
    sums.emplace_back(name, sha256_hex(content));
  };
  for (const auto& f : o.files) {
    if (f.name == "plot.gp" && !cfg.flag("output.plot", true)) continue;
    emit(f.name, f.content);
  }
  emit("summary.txt", summary(exp.name, o, warnings));
  write_file(dir / "manifest.yaml", manifest(cfg, sums));
  return o;
}

template <typename F>
int guarded(std::ostream& err, F&& body) {
  try {
    return body();
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kNumericalFailure;
  } catch (const UnreachableTargetError& e) {
    err << "numerical failure: " << e.what() << " (max achievable " << e.max_achievable() << ")\n";
    return kNumericalFailure;
  } catch (const NotACombError& e) {
    err << "not a comb: " << e.what() << '\n';
    return kNoEchoOrComb;
  } catch (const std::invalid_argument& e) {
    err << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const std::exception& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kNumericalFailure;
  }
}

}  // namespace

std::string sha256_hex(const std::string& data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1)
    throw std::runtime_error("sha256 failed");
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[digest[i] >> 4];
    out += hex[digest[i] & 15];
  }
  return out;
}

fs::path resolve_output_dir(const std::string& configured) {
  fs::path dir(configured);
  if (dir.is_absolute()) return dir;
  const char* root = std::getenv(kOutputRootEnv);
  return (root && *root ? fs::path(root) : fs::current_path()) / dir;
}

int run_command(const fs::path& config_path, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const auto cfg = Config::load(config_path);
    const auto exp = prepare(cfg);
    const auto target = resolve_output_dir(cfg.text("output.dir", kDefaultOutputDir));
    StagedDir staged(target);
    const auto o = execute_into(cfg, exp, staged.path(), err);
    staged.commit();
    out << summary(exp.name, o, {}) << "output: " << target.string() << '\n';
    return o.status == 0 ? kOk : kNoEchoOrComb;
  });
}

int sweep_command(const fs::path& config_path, const std::string& param, const std::string& values, std::ostream& out,
                  std::ostream& err) {
  return guarded(err, [&] {
    const auto base = Config::load(config_path);
    const auto points = parse_number_list(values, "--values");
    prepare(base);
    const auto it = base.resolved().find(param);
    if (it == base.resolved().end())
      throw ConfigError(param, "parameter path does not resolve to a field of this experiment");
    const auto target = resolve_output_dir(base.text("output.dir", kDefaultOutputDir));

    struct Point {
      Config cfg;
      PreparedExperiment exp;
    };
    std::vector<Point> prepared;
    for (double v : points) {
      Config cfg = base;
      cfg.set(param, render_number(v));
      auto exp = prepare(cfg);
      cfg.text("output.dir", kDefaultOutputDir);
      prepared.push_back({std::move(cfg), std::move(exp)});
    }

    StagedDir staged(target);
    std::vector<Outcome> outcomes;
    for (std::size_t i = 0; i < prepared.size(); ++i) {
      const auto dir = staged.path() / ("point_" + std::to_string(i));
      fs::create_directories(dir);
      outcomes.push_back(execute_into(prepared[i].cfg, prepared[i].exp, dir, err));
    }

    std::vector<std::string> columns;
    for (const auto& o : outcomes) {
      for (const auto& [k, v] : o.metrics) {
        if (std::find(columns.begin(), columns.end(), k) == columns.end()) columns.push_back(k);
      }
    }
    std::ostringstream table;
    table << "# sweep " << param << " over " << points.size() << " values\n" << param << ",status";
    for (const auto& c : columns) table << ',' << c;
    table << '\n';
    int status = kOk;
    for (std::size_t i = 0; i < outcomes.size(); ++i) {
      table << render_number(points[i]) << ',' << outcomes[i].status;
      for (const auto& c : columns) {
        table << ',';
        const auto& m = outcomes[i].metrics;
        const auto hit = std::find_if(m.begin(), m.end(), [&](const auto& kv) { return kv.first == c; });
        table << (hit == m.end() ? std::string("nan") : render_number(hit->second));
      }
      table << '\n';
      if (outcomes[i].status != 0) status = kNoEchoOrComb;
    }
    const auto table_text = table.str();
    write_file(staged.path() / "sweep.csv", table_text);
    std::string m = manifest(base, {{"sweep.csv", sha256_hex(table_text)}});
    m += "# sweep_param: " + param + "\n# sweep_values: " + values + "\n";
    write_file(staged.path() / "manifest.yaml", m);
    staged.commit();
    out << table_text << "output: " << target.string() << '\n';
    return status;
  });
}

int validate_command(const fs::path& config_path, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const auto cfg = Config::load(config_path);
    const auto exp = prepare(cfg);
    out << "ok: " << exp.name << '\n' << cfg.resolved_text();
    return kOk;
  });
}

}  // namespace afc::app
