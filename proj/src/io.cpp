#include "modgrowth/io.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <ctime>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "modgrowth/error.hpp"

namespace modgrowth::io {

namespace {

std::string strip(std::string_view s) {
  std::string out;
  for (char ch : s) {
    if (ch != ' ' && ch != '\t' && ch != '\r' && ch != '\n') out.push_back(ch);
  }
  return out;
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

std::int64_t parse_int(std::string_view s, std::string_view what) {
  if (s.size() > 1 && s[0] == '+' && s[1] != '-') s.remove_prefix(1);
  std::int64_t v = 0;
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (s.empty() || ec != std::errc{} || ptr != end) {
    throw UsageError("bad " + std::string(what) + ": '" + std::string(s) + "'");
  }
  return v;
}

double parse_real(std::string_view s, std::string_view what) {
  const std::string t = trim(s);
  double v = 0;
  const auto* end = t.data() + t.size();
  auto [ptr, ec] = std::from_chars(t.data(), end, v);
  if (t.empty() || ec != std::errc{} || ptr != end || !std::isfinite(v)) {
    throw UsageError("bad " + std::string(what) + ": '" + std::string(s) + "'");
  }
  return v;
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.emplace_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const std::string s = strip(text);
  if (s.empty()) throw UsageError("empty number");
  try {
    if (const auto slash = s.find('/'); slash != std::string::npos) {
      const auto num = parse_int(std::string_view(s).substr(0, slash), "numerator");
      const auto den = parse_int(std::string_view(s).substr(slash + 1), "denominator");
      if (den == 0) throw UsageError("zero denominator in '" + s + "'");
      return {num, den};
    }
    if (const auto dot = s.find('.'); dot != std::string::npos) {
      std::string_view whole = std::string_view(s).substr(0, dot);
      const std::string_view frac = std::string_view(s).substr(dot + 1);
      bool negative = false;
      if (!whole.empty() && (whole[0] == '-' || whole[0] == '+')) {
        negative = whole[0] == '-';
        whole.remove_prefix(1);
      }
      if ((whole.empty() && frac.empty()) || frac.size() > 15 ||
          frac.find_first_not_of("0123456789") != std::string_view::npos) {
        throw UsageError("bad decimal: '" + s + "'");
      }
      std::int64_t den = 1;
      for (std::size_t k = 0; k < frac.size(); ++k) den *= 10;
      const Rational w = whole.empty() ? Rational(0) : Rational(parse_int(whole, "integer part"));
      const Rational f = frac.empty() ? Rational(0) : Rational(parse_int(frac, "fraction"), den);
      const Rational v = w + f;
      return negative ? -v : v;
    }
    return {parse_int(s, "integer")};
  } catch (const OverflowError&) {
    throw UsageError("number out of range: '" + s + "'");
  }
}

RationalPoint parse_point(std::string_view text) {
  std::string s = strip(text);
  if (s.empty() || s.back() != 'i') throw UsageError("point must have the form x+y*i: '" + std::string(text) + "'");
  s.pop_back();
  if (!s.empty() && s.back() == '*') s.pop_back();

  // The imaginary coefficient starts at the last sign not in front.
  std::size_t split_at = std::string::npos;
  for (std::size_t k = s.size(); k-- > 1;) {
    if ((s[k] == '+' || s[k] == '-') && s[k - 1] != '/') {
      split_at = k;
      break;
    }
  }
  Rational re(0);
  std::string im = s;
  if (split_at != std::string::npos) {
    re = parse_rational(s.substr(0, split_at));
    im = s.substr(split_at);
  }
  Rational y(1);
  if (im.empty() || im == "+") y = Rational(1);
  else if (im == "-") y = Rational(-1);
  else y = parse_rational(im);
  if (y <= Rational(0)) throw UsageError("point must lie in the upper half-plane: '" + std::string(text) + "'");
  return {re, y};
}

GroupElement parse_element(std::string_view text) {
  const auto parts = split(strip(text), ',');
  if (parts.size() != 4) throw UsageError("matrix must be a,b,c,d: '" + std::string(text) + "'");
  std::int64_t v[4];
  for (int k = 0; k < 4; ++k) v[k] = parse_int(parts[static_cast<std::size_t>(k)], "matrix entry");
  try {
    return GroupElement::normalize(v[0], v[1], v[2], v[3]);
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }
}

std::vector<double> parse_radii(std::string_view text) {
  const std::string s = strip(text);
  std::vector<double> out;
  if (s.find(':') != std::string::npos) {
    const auto parts = split(s, ':');
    if (parts.size() != 3) throw UsageError("range must be start:stop:step");
    const double lo = parse_real(parts[0], "range start");
    const double hi = parse_real(parts[1], "range stop");
    const double step = parse_real(parts[2], "range step");
    if (!(step > 0) || hi < lo) throw UsageError("range needs step > 0 and stop >= start");
    const auto n = static_cast<long>(std::floor((hi - lo) / step + 1e-9));
    if (n > 1'000'000) throw UsageError("range has too many points");
    // lo + k*step, not repeated addition, so every value is reproducible.
    for (long k = 0; k <= n; ++k) out.push_back(lo + static_cast<double>(k) * step);
  } else {
    for (const auto& p : split(s, ',')) out.push_back(parse_real(p, "radius"));
  }
  for (double r : out) {
    if (r < 0) throw UsageError("radii must be nonnegative");
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  if (out.empty()) throw UsageError("no radii given");
  return out;
}

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return {buf, ptr};
}

Config parse_config(std::string_view text) {
  Config cfg;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (trim(line).empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw UsageError("config line " + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(std::string_view(line).substr(0, eq));
    const std::string value = trim(std::string_view(line).substr(eq + 1));
    if (key == "units") {
      try {
        cfg.units = parse_units(value);
      } catch (const std::exception& e) {
        throw UsageError("config line " + std::to_string(lineno) + ": " + e.what());
      }
    } else if (key == "tolerance") {
      cfg.tolerance = parse_real(value, "tolerance");
      if (!(cfg.tolerance > 0)) throw UsageError("config: tolerance must be positive");
    } else if (key == "cache_dir") {
      cfg.cache_dir = value;
    } else if (key == "threads") {
      const auto t = parse_int(value, "threads");
      if (t < 1 || t > 1024) throw UsageError("config: threads must be in 1..1024");
      cfg.threads = static_cast<unsigned>(t);
    } else {
      throw UsageError("config line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    }
  }
  return cfg;
}

Config load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read config file " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

Config resolve_config(const std::optional<std::filesystem::path>& explicit_path) {
  if (explicit_path) return load_config(*explicit_path);
  if (const char* env = std::getenv("MODGROWTH_CONFIG"); env != nullptr && *env != '\0') return load_config(env);
  return {};
}

std::string format_csv(std::vector<CsvRow> rows) {
  std::stable_sort(rows.begin(), rows.end(), [](const CsvRow& a, const CsvRow& b) {
    return a.variant < b.variant || (a.variant == b.variant && a.radius < b.radius);
  });
  std::string out = "R,units,count,variant\n";
  for (const auto& r : rows) {
    out += format_double(r.radius) + "," + to_string(r.units) + "," + std::to_string(r.count) + "," + r.variant + "\n";
  }
  return out;
}

std::vector<CsvRow> parse_csv(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  if (!std::getline(in, line) || trim(line) != "R,units,count,variant") {
    throw UsageError("CSV header must be R,units,count,variant");
  }
  std::vector<CsvRow> rows;
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    const auto f = split(trim(line), ',');
    if (f.size() != 4) throw UsageError("bad CSV row: '" + line + "'");
    Units u{};
    try {
      u = parse_units(f[1]);
    } catch (const std::exception& e) {
      throw UsageError(e.what());
    }
    rows.push_back({parse_real(f[0], "radius"), u, parse_int(f[2], "count"), f[3]});
  }
  return rows;
}

std::vector<CsvRow> read_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_csv(ss.str());
}

GrowthSeries series_from_rows(const std::vector<CsvRow>& rows, std::string_view variant) {
  GrowthSeries s;
  bool first = true;
  for (const auto& r : rows) {
    if (r.variant != variant) continue;
    if (first) s.units = r.units;
    else if (r.units != s.units) throw UsageError("CSV mixes units within variant " + std::string(variant));
    first = false;
    s.points.push_back({r.radius, r.count});
  }
  std::sort(s.points.begin(), s.points.end(), [](const SeriesPoint& a, const SeriesPoint& b) { return a.radius < b.radius; });
  if (s.points.empty()) throw UsageError("CSV has no rows with variant " + std::string(variant));
  return s;
}

std::string sha256_hex(std::string_view data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("SHA-256 failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  for (unsigned int k = 0; k < len; ++k) {
    out.push_back(kHex[md[k] >> 4U]);
    out.push_back(kHex[md[k] & 15U]);
  }
  return out;
}

namespace {

std::optional<std::string> slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

std::string sha256_file(const std::filesystem::path& path) {
  const auto data = slurp(path);
  if (!data) throw UsageError("cannot read " + path.string());
  return sha256_hex(*data);
}

bool write_if_changed(const std::filesystem::path& path, std::string_view content) {
  if (const auto old = slurp(path); old && sha256_hex(*old) == sha256_hex(content)) return false;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw UsageError("cannot write " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw UsageError("write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
  return true;
}

std::vector<GroupElement> cached_norm_ball(std::int64_t max_norm_sq, const std::filesystem::path& cache_dir,
                                           unsigned threads) {
  if (cache_dir.empty()) return enumerate_norm_ball(max_norm_sq, threads);
  const auto path = cache_dir / ("norm_ball_" + std::to_string(max_norm_sq) + ".txt");
  if (std::ifstream in(path); in) return read_norm_ball_cache(in, max_norm_sq);
  auto ball = enumerate_norm_ball(max_norm_sq, threads);
  std::ostringstream os;
  write_norm_ball_cache(os, max_norm_sq, ball);
  write_if_changed(path, os.str());
  return ball;
}

OutputDigest digest_output(const std::filesystem::path& path) {
  return {path.string(), sha256_file(path), std::filesystem::file_size(path)};
}

std::string utc_now() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string RunManifest::to_json() const {
  nlohmann::ordered_json j;
  j["tool_version"] = tool_version;
  j["command"] = command;
  auto opt = [&j](const char* key, const auto& v) {
    if (v) j[key] = *v;
    else j[key] = nullptr;
  };
  opt("phi", phi);
  opt("X", X);
  opt("Y", Y);
  j["units"] = units;
  j["radii"] = radii;
  opt("A", A);
  opt("L", L);
  opt("N", N);
  opt("h", h);
  opt("seed", seed);
  j["threads"] = threads;
  j["started"] = started;
  j["finished"] = finished;
  j["boundary_hits"] = boundary_hits;
  auto outs = nlohmann::ordered_json::array();
  for (const auto& o : outputs) outs.push_back({{"path", o.path}, {"sha256", o.sha256}, {"bytes", o.bytes}});
  j["outputs"] = outs;
  return j.dump(2) + "\n";
}

}  // namespace modgrowth::io
