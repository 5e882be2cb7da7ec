#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

namespace modgrowth {

/// Nielsen-Thurston type of an element, read off from |trace|.
enum class ElementClass { Elliptic, Parabolic, Hyperbolic };

std::string to_string(ElementClass cls);

/// An element of PSL(2,Z), stored as the sign-normalized representative
/// (a b; c d) with ad - bc = 1 and either c > 0, or c = 0 and a > 0.
///
/// Construction always goes through normalize(), so two elements compare
/// equal exactly when they act identically on the upper half-plane.
/// Arithmetic is checked: anything that would overflow int64 throws
/// OverflowError.
class GroupElement {
 public:
  GroupElement() = default;  // identity

  /// Normalizes (a b; c d); throws DomainError unless ad - bc = 1.
  static GroupElement normalize(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d);
  static GroupElement identity() { return {}; }

  std::int64_t a() const { return a_; }
  std::int64_t b() const { return b_; }
  std::int64_t c() const { return c_; }
  std::int64_t d() const { return d_; }

  std::int64_t trace() const;
  ElementClass classify() const;
  std::int64_t frobenius_norm_sq() const;

  GroupElement inverse() const;
  GroupElement operator*(const GroupElement& rhs) const;
  /// this^k for any integer k (negative powers use the inverse).
  GroupElement pow(std::int64_t k) const;

  bool is_identity() const { return a_ == 1 && b_ == 0 && c_ == 0 && d_ == 1; }

  friend auto operator<=>(const GroupElement&, const GroupElement&) = default;
  friend bool operator==(const GroupElement&, const GroupElement&) = default;

  std::string str() const;

 private:
  GroupElement(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d)
      : a_(a), b_(b), c_(c), d_(d) {}

  std::int64_t a_ = 1;
  std::int64_t b_ = 0;
  std::int64_t c_ = 0;
  std::int64_t d_ = 1;
};

std::ostream& operator<<(std::ostream& os, const GroupElement& g);

inline GroupElement compose(const GroupElement& g, const GroupElement& h) { return g * h; }
inline GroupElement inverse(const GroupElement& g) { return g.inverse(); }
/// f * phi * f^-1.
GroupElement conjugate(const GroupElement& f, const GroupElement& phi);
inline std::int64_t trace(const GroupElement& g) { return g.trace(); }
inline ElementClass classify(const GroupElement& g) { return g.classify(); }
inline std::int64_t frobenius_norm_sq(const GroupElement& g) { return g.frobenius_norm_sq(); }

/// Largest norm bound accepted by the enumerators. Beyond it the squared
/// norms of candidate entries no longer fit in int64.
inline constexpr std::int64_t kMaxNormBound = std::int64_t{1} << 60;

/// All elements with a^2+b^2+c^2+d^2 <= max_norm_sq, sorted by (a,b,c,d).
///
/// Walks coprime bottom rows (c, d) and, for each, the one-parameter family
/// (a0 + kc, b0 + kd) of top rows from an extended-Euclid base solution.
/// Cost is linear in the output. `threads` partitions the bottom-row range;
/// the merged, sorted result does not depend on it.
std::vector<GroupElement> enumerate_norm_ball(std::int64_t max_norm_sq, unsigned threads = 1);

/// Reference enumeration: scans every integer quadruple with entries in
/// [-ceil(sqrt M), ceil(sqrt M)]. Cubic-ish; for tests and small M only.
std::vector<GroupElement> enumerate_norm_ball_scan(std::int64_t max_norm_sq);

// Norm-ball cache file: "# norm_ball M=<M> version=<v>" then "a b c d" lines.
inline constexpr int kNormBallCacheVersion = 1;
void write_norm_ball_cache(std::ostream& os, std::int64_t max_norm_sq,
                           const std::vector<GroupElement>& elements);
/// Throws std::runtime_error on a malformed file or a header for another M
/// or version.
std::vector<GroupElement> read_norm_ball_cache(std::istream& is, std::int64_t max_norm_sq);

}  // namespace modgrowth

template <>
struct std::hash<modgrowth::GroupElement> {
  std::size_t operator()(const modgrowth::GroupElement& g) const noexcept {
    std::uint64_t h = 0x9e3779b97f4a7c15ULL;
    for (std::int64_t v : {g.a(), g.b(), g.c(), g.d()}) {
      h ^= static_cast<std::uint64_t>(v) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return static_cast<std::size_t>(h);
  }
};
