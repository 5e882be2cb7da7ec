#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "modgrowth/group.hpp"
#include "modgrowth/growth.hpp"
#include "modgrowth/hyperbolic.hpp"

namespace modgrowth::io {

/// Thrown for malformed user input (maps to exit code 1).
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::string_view kToolVersion = "0.3.0";

/// Parses an exact decimal or fraction: "3", "-7/2", "0.125".
Rational parse_rational(std::string_view s);

/// Parses a point of the upper half-plane written x+y*i with rational x and
/// y > 0: "i", "2i", "1/2+i", "-1/2+5/3*i", "0.5+2.25i". Whitespace is
/// ignored.
RationalPoint parse_point(std::string_view s);

/// "a,b,c,d" with ad - bc = 1.
GroupElement parse_element(std::string_view s);

/// Comma list ("1,2.5,3") or inclusive range "start:stop:step". The result
/// is ascending and duplicate-free.
std::vector<double> parse_radii(std::string_view s);

/// Shortest decimal string that reads back to the same double.
std::string format_double(double v);

struct Config {
  Units units = Units::Hyperbolic;
  double tolerance = 1e-9;  // dedup tolerance for irrational points
  std::filesystem::path cache_dir;
  unsigned threads = 1;
};

/// key = value lines, '#' comments. Keys: units, tolerance, cache_dir,
/// threads. Unknown keys and bad values throw UsageError.
Config parse_config(std::string_view text);
Config load_config(const std::filesystem::path& path);

/// Explicit path wins, then $MODGROWTH_CONFIG; otherwise defaults.
Config resolve_config(const std::optional<std::filesystem::path>& explicit_path);

struct CsvRow {
  double radius;
  Units units;
  std::int64_t count;
  std::string variant;
};

/// Header "R,units,count,variant" then one line per row, rows sorted by
/// (variant, R).
std::string format_csv(std::vector<CsvRow> rows);
std::vector<CsvRow> parse_csv(std::string_view text);
std::vector<CsvRow> read_csv(const std::filesystem::path& path);

/// Series of one variant out of a CSV table, in its recorded units.
GrowthSeries series_from_rows(const std::vector<CsvRow>& rows, std::string_view variant);

/// Lowercase hex SHA-256.
std::string sha256_hex(std::string_view data);
std::string sha256_file(const std::filesystem::path& path);

/// Writes `content` to `path` unless the file already holds exactly that
/// content. Returns true when the file was (re)written. Replacement goes
/// through a temporary file and rename.
bool write_if_changed(const std::filesystem::path& path, std::string_view content);

struct OutputDigest {
  std::string path;
  std::string sha256;
  std::uintmax_t bytes;
};

/// Everything needed to rerun a command and check its outputs.
struct RunManifest {
  std::string tool_version{kToolVersion};
  std::vector<std::string> command;
  std::optional<std::string> phi;
  std::optional<std::string> X;
  std::optional<std::string> Y;
  std::string units;
  std::vector<double> radii;
  std::optional<double> A, L, N, h;
  std::optional<std::uint64_t> seed;
  unsigned threads = 1;
  std::string started;
  std::string finished;
  std::vector<OutputDigest> outputs;
  std::size_t boundary_hits = 0;

  std::string to_json() const;
};

/// ISO-8601 UTC timestamp.
std::string utc_now();

/// Norm ball of radius M read from `<cache_dir>/norm_ball_<M>.txt`, or
/// enumerated and stored there when missing. An empty cache_dir disables
/// caching.
std::vector<GroupElement> cached_norm_ball(std::int64_t max_norm_sq, const std::filesystem::path& cache_dir,
                                           unsigned threads = 1);

/// Digest of an output file already on disk.
OutputDigest digest_output(const std::filesystem::path& path);

}  // namespace modgrowth::io
